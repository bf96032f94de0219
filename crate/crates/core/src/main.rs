use std::io::Read as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use fqchol::census::{run_census, run_census_shard, Shard, DEFAULT_BUDGET};
use fqchol::cholesky::{factor, factor_tpm, nonuniqueness_witness, transition};
use fqchol::cones::{
    canonical_anchor, inverse_pattern, map_inverse_cone, map_inverse_cone_tpm, sign_pattern_lpm, sign_pattern_tpm,
    AnchorPair,
};
use fqchol::entrywise::{classify_preservers, ScanMode, ScanOptions};
use fqchol::groups::{
    all_in_cone, all_lpm, boxdot, boxdot_inverse, circledast, circledast_inverse, sym_key, CayleyTable, TriLaw,
};
use fqchol::textio::{format_field, format_matrix, parse_sym};
use fqchol::{Error, Field, Result, SignPattern, SymMatrix};

const MATRIX_GRAMMAR: &str = "\
Matrix files:
  line 1        p k n
  line 2        c_0 c_1 .. c_k   modulus coefficients, lowest degree first;
                                 present only when k > 1
  next n lines  n element codes separated by single spaces

An element sum a_i x^i of F_{p^k} has code sum a_i p^i, written in decimal.
Blank lines and text after '#' are ignored. A file name of '-' reads stdin.
Sign patterns are comma-separated '+' and '-' tokens, e.g. +,-,+.

Exit status: 0 on success, 2 on a domain error (the message starts with a
stable code such as E_NONDEFINITE, E_ZERO_MINOR, E_PATTERN_MISMATCH,
E_SINGULAR), 1 on usage or input errors.";

#[derive(Parser)]
#[command(name = "fqchol", version, about = "Cholesky factorization and sign-pattern cones over F_{p^k}")]
#[command(after_help = MATRIX_GRAMMAR)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct FieldArgs {
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    k: u32,
}

impl FieldArgs {
    fn field(&self) -> Result<Field> {
        Field::new(self.p, self.k)
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Order, class, modulus and squares of F_{p^k}.
    FieldInfo {
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Sign pattern of the leading (or trailing) principal minors.
    Classify {
        matrix: String,
        #[arg(long)]
        tpm: bool,
    },
    /// Lower triangular L with A = L anchor L^T.
    Factor {
        matrix: String,
        /// Anchor matrix; defaults to the diagonal anchor of A's pattern.
        #[arg(long)]
        anchor: Option<String>,
    },
    /// Upper triangular U with A = U anchor U^T, for trailing cones.
    FactorTpm {
        matrix: String,
        #[arg(long)]
        anchor: Option<String>,
    },
    /// Moves A to another cone keeping its Cholesky factor.
    Transition {
        matrix: String,
        /// Source anchor; defaults to the diagonal anchor of A's pattern.
        #[arg(long)]
        from: Option<String>,
        #[arg(long, conflicts_with = "to_pattern", required_unless_present = "to_pattern")]
        to: Option<String>,
        /// Target the diagonal anchor of this pattern.
        #[arg(long)]
        to_pattern: Option<SignPattern>,
    },
    /// A^{-1}, with the pattern it lands in.
    InverseMap {
        matrix: String,
        /// Treat A as a member of a trailing cone.
        #[arg(long)]
        tpm: bool,
    },
    /// Counts every cone in Sym_n(F_{p^k}).
    Census {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Only the shard i of m, written i/m.
        #[arg(long)]
        shard: Option<Shard>,
    },
    /// Entrywise maps sending LPM_n(eps') into LPM_n(eps).
    Preservers {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
        /// Target pattern.
        #[arg(long, allow_hyphen_values = true)]
        eps: SignPattern,
        /// Source pattern; defaults to --eps.
        #[arg(long, allow_hyphen_values = true)]
        eps_prime: Option<SignPattern>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Random tables tried when the full scan exceeds the budget.
        #[arg(long, default_value_t = 20_000)]
        samples: u64,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
    /// Transported group law on LPM_n, or the internal law on A's cone.
    GroupOp {
        #[arg(long, default_value = "prod")]
        law: TriLaw,
        a: String,
        b: Option<String>,
        /// A combined with itself.
        #[arg(long)]
        square: bool,
        /// Use the internal law of A's cone.
        #[arg(long)]
        internal: bool,
        /// Print the whole multiplication table of LPM_n (or of A's cone
        /// with --internal).
        #[arg(long)]
        cayley: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Two distinct factorizations of one matrix over a non-definite field.
    WitnessNonunique {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        n: usize,
    },
}

fn read_sym(path: &str) -> Result<SymMatrix> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Parse { line: 0, msg: format!("stdin: {e}") })?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::Parse { line: 0, msg: format!("{path}: {e}") })?
    };
    parse_sym(&text)
}

fn anchor_or_default(path: Option<&str>, a: &SymMatrix, tpm: bool) -> Result<SymMatrix> {
    match path {
        Some(p) => read_sym(p),
        None if tpm => Ok(canonical_anchor(a.field(), &sign_pattern_tpm(a)?.clone()).reverse()),
        None => Ok(canonical_anchor(a.field(), &sign_pattern_lpm(a)?)),
    }
}

fn run(cmd: Cmd) -> Result<String> {
    let mut out = String::new();
    match cmd {
        Cmd::FieldInfo { field } => {
            let f = field.field()?;
            let pair = AnchorPair::canonical(&f);
            let squares: Vec<String> =
                f.elements().filter(|&e| f.is_positive(e)).map(|e| e.code().to_string()).collect();
            out += &format!("field {}\n", format_field(&f));
            out += &format!("order {}\n", f.order());
            out += &format!("class {}\n", f.class());
            out += &format!("omega_plus {}\n", pair.omega_plus);
            out += &format!("omega_minus {}\n", pair.omega_minus.map_or("none".to_string(), |e| e.to_string()));
            out += &format!("positive {}\n", squares.join(" "));
        }
        Cmd::Classify { matrix, tpm } => {
            let a = read_sym(&matrix)?;
            let eps = if tpm { sign_pattern_tpm(&a)? } else { sign_pattern_lpm(&a)? };
            out += &format!("{eps}\n");
        }
        Cmd::Factor { matrix, anchor } => {
            let a = read_sym(&matrix)?;
            let e = anchor_or_default(anchor.as_deref(), &a, false)?;
            let fact = factor(&a, &e)?;
            out += &format_matrix(fact.l.as_matrix());
            out += &format!("pattern {}\n", fact.eps);
        }
        Cmd::FactorTpm { matrix, anchor } => {
            let a = read_sym(&matrix)?;
            let e = anchor_or_default(anchor.as_deref(), &a, true)?;
            let fact = factor_tpm(&a, &e)?;
            out += &format_matrix(fact.u.as_matrix());
            out += &format!("pattern {}\n", fact.eps);
        }
        Cmd::Transition { matrix, from, to, to_pattern } => {
            let a = read_sym(&matrix)?;
            let from = anchor_or_default(from.as_deref(), &a, false)?;
            let to = match (to, to_pattern) {
                (Some(path), _) => read_sym(&path)?,
                (None, Some(eps)) => {
                    if eps.len() != a.n() {
                        return Err(Error::SizeMismatch(format!("pattern of length {} for n = {}", eps.len(), a.n())));
                    }
                    canonical_anchor(a.field(), &eps)
                }
                (None, None) => unreachable!("clap requires --to or --to-pattern"),
            };
            let b = transition(&a, &from, &to)?;
            out += &format_matrix(b.as_matrix());
            out += &format!("pattern {}\n", sign_pattern_lpm(&b)?);
        }
        Cmd::InverseMap { matrix, tpm } => {
            let a = read_sym(&matrix)?;
            let (inv, from, to) = if tpm {
                let eps = sign_pattern_tpm(&a)?;
                (map_inverse_cone_tpm(&a)?, format!("tpm {eps}"), format!("lpm {}", inverse_pattern(&eps)))
            } else {
                let eps = sign_pattern_lpm(&a)?;
                (map_inverse_cone(&a)?, format!("lpm {eps}"), format!("tpm {}", inverse_pattern(&eps)))
            };
            out += &format_matrix(inv.as_matrix());
            out += &format!("pattern {from} -> {to}\n");
        }
        Cmd::Census { field, n, budget, shard } => {
            let f = field.field()?;
            let report = match shard {
                Some(s) => run_census_shard(&f, n, budget, s)?,
                None => run_census(&f, n, budget)?,
            };
            out += &report.render();
        }
        Cmd::Preservers { field, n, s, eps, eps_prime, budget, samples, seed } => {
            let f = field.field()?;
            let from = eps_prime.unwrap_or_else(|| eps.clone());
            let opts = ScanOptions { budget, samples, seed, ..ScanOptions::default() };
            let rep = classify_preservers(&f, n, s, &from, &eps, &opts)?;
            let mode = match rep.mode {
                ScanMode::Full => "full".to_string(),
                ScanMode::Restricted { samples } => format!("restricted+{samples}"),
            };
            out += &format!("scan {mode} members {} from {} to {}\n", rep.members_checked, rep.eps_from, rep.eps_to);
            for g in &rep.preservers {
                out += &format!("f {g}\n");
            }
            out += &format!("preservers {} family {} verdict {}\n", rep.preservers.len(), rep.frobenius_family.len(), rep.verdict);
        }
        Cmd::GroupOp { law, a, b, square, internal, cayley, budget } => {
            let a = read_sym(&a)?;
            let eps = sign_pattern_lpm(&a)?;
            if cayley {
                let els = if internal { all_in_cone(a.field(), &eps, budget)? } else { all_lpm(a.field(), a.n(), budget)? };
                let table = if internal {
                    CayleyTable::from_elements(&els, sym_key, |x, y| circledast(law, x, y, &eps))
                } else {
                    CayleyTable::from_elements(&els, sym_key, |x, y| boxdot(law, x, y))
                };
                for (i, e) in els.iter().enumerate() {
                    let codes: Vec<String> = e.codes().iter().map(|c| c.to_string()).collect();
                    out += &format!("{i} {}\n", codes.join(" "));
                }
                out += &table.render();
                let ax = table.check_group_axioms();
                out += &format!(
                    "group {} abelian {} order {}\n",
                    ax.is_group(),
                    ax.abelian,
                    table.order
                );
                return Ok(out);
            }
            let result = match (b, square) {
                (Some(path), false) => {
                    let b = read_sym(&path)?;
                    if internal { circledast(law, &a, &b, &eps)? } else { boxdot(law, &a, &b)? }
                }
                (None, true) => {
                    if internal { circledast(law, &a, &a, &eps)? } else { boxdot(law, &a, &a)? }
                }
                (None, false) => {
                    if internal { circledast_inverse(law, &a, &eps)? } else { boxdot_inverse(law, &a)? }
                }
                (Some(_), true) => {
                    return Err(Error::Parse { line: 0, msg: "--square takes a single matrix".into() });
                }
            };
            out += &format_matrix(result.as_matrix());
            out += &format!("pattern {}\n", sign_pattern_lpm(&result)?);
        }
        Cmd::WitnessNonunique { field, n } => {
            let f = field.field()?;
            let w = nonuniqueness_witness(&f, n)?;
            out += "first\n";
            out += &format_matrix(w.first.as_matrix());
            out += "second\n";
            out += &format_matrix(w.second.as_matrix());
            out += "anchor\n";
            out += &format_matrix(w.anchor.as_matrix());
            out += "image\n";
            out += &format_matrix(w.image.as_matrix());
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.cmd) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}: {e}", e.code());
            ExitCode::from(if e.is_domain_error() { 2 } else { 1 })
        }
    }
}
