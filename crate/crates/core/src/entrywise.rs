//! Entrywise transforms `f[A] = (f(a_ij))` and the search for transforms that
//! map one LPM cone into another.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::census::{enumerate_sym, DEFAULT_BUDGET};
use crate::cholesky::{psi, psi_inv, LowerPosTri};
use crate::cones::{canonical_anchor, sign_pattern_lpm, SignPattern};
use crate::error::{Error, Result};
use crate::gf::{Elem, Field, FieldClass};
use crate::matfq::{leading_minor_chain, Matrix, SymMatrix};

/// A function `F_q -> F_q` stored as its value on every element code.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FuncTable {
    field: Field,
    table: Vec<Elem>,
}

impl FuncTable {
    pub fn new(field: &Field, table: Vec<Elem>) -> Result<FuncTable> {
        if table.len() != field.order() as usize {
            return Err(Error::SizeMismatch(format!("table has {} entries, field has {}", table.len(), field.order())));
        }
        if let Some(bad) = table.iter().find(|e| e.code() >= field.order()) {
            return Err(Error::ElementOutOfRange { code: bad.code() as u64, q: field.order() });
        }
        Ok(FuncTable { field: field.clone(), table })
    }

    pub fn from_fn(field: &Field, f: impl Fn(Elem) -> Elem) -> FuncTable {
        FuncTable { field: field.clone(), table: field.elements().map(f).collect() }
    }

    pub fn identity(field: &Field) -> FuncTable {
        FuncTable::from_fn(field, |a| a)
    }

    pub fn constant(field: &Field, c: Elem) -> FuncTable {
        FuncTable::from_fn(field, |_| c)
    }

    /// The `index`-th table in the scan order: base-`q` digits of `index`,
    /// `f(0)` most significant.
    pub fn from_index(field: &Field, mut index: u64) -> FuncTable {
        let q = field.order() as u64;
        let mut table = vec![Elem::ZERO; q as usize];
        for slot in table.iter_mut().rev() {
            *slot = Elem((index % q) as u32);
            index /= q;
        }
        FuncTable { field: field.clone(), table }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    pub fn eval(&self, a: Elem) -> Elem {
        self.table[a.code() as usize]
    }

    /// `f[A]`.
    pub fn apply(&self, a: &Matrix) -> Result<Matrix> {
        if a.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        Ok(a.map(|x| self.eval(x)))
    }

    pub fn apply_sym(&self, a: &SymMatrix) -> Result<SymMatrix> {
        if a.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        Ok(a.map(|x| self.eval(x)))
    }
}

/// Output codes separated by spaces.
impl fmt::Display for FuncTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let codes: Vec<String> = self.table.iter().map(|e| e.code().to_string()).collect();
        f.write_str(&codes.join(" "))
    }
}

/// `a -> c * a^(p^ell)`.
pub fn frob_table(field: &Field, c: Elem, ell: u32) -> FuncTable {
    FuncTable::from_fn(field, |a| field.mul(c, field.frobenius(a, ell)))
}

/// `Frob^ell[A]`.
pub fn frob_matrix(a: &Matrix, ell: u32) -> Matrix {
    let f = a.field();
    a.map(|x| f.frobenius(x, ell))
}

pub fn frob_sym(a: &SymMatrix, ell: u32) -> SymMatrix {
    let f = a.field();
    a.map(|x| f.frobenius(x, ell))
}

fn frob_tri(l: &LowerPosTri, ell: u32) -> LowerPosTri {
    LowerPosTri::new(frob_matrix(l.as_matrix(), ell)).expect("Frobenius preserves triangularity and positivity")
}

/// `Frob^ell[AB] == Frob^ell[A] Frob^ell[B]`.
pub fn frobenius_multiplicative(a: &Matrix, b: &Matrix, ell: u32) -> Result<bool> {
    Ok(frob_matrix(&a.mul(b)?, ell) == frob_matrix(a, ell).mul(&frob_matrix(b, ell))?)
}

/// Patterns collapse to all `+` in characteristic 2.
fn effective(field: &Field, eps: &SignPattern) -> SignPattern {
    if field.p() == 2 {
        SignPattern::all_plus(eps.len())
    } else {
        eps.clone()
    }
}

/// Members of `LPM_n(eps)` as row-major entry vectors.
fn cone_members(field: &Field, eps: &SignPattern, budget: u64) -> Result<Vec<Vec<Elem>>> {
    let eps = effective(field, eps);
    Ok(enumerate_sym(field, eps.len(), budget)?
        .filter(|a| sign_pattern_lpm(a).is_ok_and(|s| s == eps))
        .map(|a| a.entries().to_vec())
        .collect())
}

fn maps_into(field: &Field, table: &[Elem], members: &[Vec<Elem>], n: usize, target: &SignPattern, scratch: &mut [Elem]) -> bool {
    members.iter().all(|m| {
        for (s, x) in scratch.iter_mut().zip(m) {
            *s = table[x.code() as usize];
        }
        match leading_minor_chain(field, scratch, n) {
            Ok(minors) => minors.iter().zip(target.signs()).all(|(&d, &e)| field.chi(d) == e),
            Err(_) => false,
        }
    })
}

/// Whether `f[A]` lies in `LPM_n(eps_to)` for every `A` in `LPM_n(eps_from)`,
/// by enumerating `Sym_n(F_q)`.
pub fn is_preserver(f: &FuncTable, n: usize, eps_from: &SignPattern, eps_to: &SignPattern, budget: u64) -> Result<bool> {
    check_patterns(n, eps_from, eps_to)?;
    let field = &f.field;
    let members = cone_members(field, eps_from, budget)?;
    let mut scratch = vec![Elem::ZERO; n * n];
    Ok(maps_into(field, &f.table, &members, n, &effective(field, eps_to), &mut scratch))
}

fn check_patterns(n: usize, eps_from: &SignPattern, eps_to: &SignPattern) -> Result<()> {
    if eps_from.len() != n || eps_to.len() != n {
        return Err(Error::SizeMismatch(format!(
            "patterns of length {} and {} for n = {n}",
            eps_from.len(),
            eps_to.len()
        )));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanMode {
    /// All `q^q` functions.
    Full,
    /// The family `c * Frob^ell`, `c != 0`, plus this many random tables.
    Restricted { samples: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// The preservers are exactly `{ c * Frob^ell : c positive }`.
    MatchesFrobeniusFamily,
    /// No preservers, as expected for distinct patterns.
    Empty,
    /// The hypothesis holds but the preservers differ from the prediction.
    Mismatch,
    /// Outside the hypothesis; findings are reported only.
    NoClaim,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::MatchesFrobeniusFamily => "matches-frobenius-family",
            Verdict::Empty => "empty",
            Verdict::Mismatch => "MISMATCH",
            Verdict::NoClaim => "no-claim",
        })
    }
}

#[derive(Clone, Debug)]
pub struct PreserverReport {
    pub field: Field,
    pub n: usize,
    pub s: usize,
    pub eps_from: SignPattern,
    pub eps_to: SignPattern,
    pub mode: ScanMode,
    pub members_checked: usize,
    /// Preservers found, in scan order.
    pub preservers: Vec<FuncTable>,
    /// `{ c * Frob^ell : c positive }`, in scan order.
    pub frobenius_family: Vec<FuncTable>,
    pub hypothesis_met: bool,
    pub verdict: Verdict,
}

#[derive(Clone, Copy, Debug)]
pub struct ScanOptions {
    /// Cap on both `q^(n(n+1)/2)` and the number of scanned functions.
    pub budget: u64,
    /// Random tables tried in restricted mode.
    pub samples: u64,
    pub seed: u64,
    pub threads: usize,
}

impl Default for ScanOptions {
    fn default() -> ScanOptions {
        ScanOptions {
            budget: DEFAULT_BUDGET,
            samples: 20_000,
            seed: 0x5eed,
            threads: std::thread::available_parallelism().map_or(1, |w| w.get()),
        }
    }
}

/// Whether the classification results apply: `s <= n`, both patterns start
/// with `s` plus signs, and `s >= 2` on a definite field, `s >= 3` on a
/// non-definite field (`s >= 2` if the order is a square).
pub fn hypothesis_met(field: &Field, n: usize, s: usize, eps_from: &SignPattern, eps_to: &SignPattern) -> bool {
    let leading_plus = |e: &SignPattern| s <= e.len() && e.signs()[..s].iter().all(|&x| x == 1);
    let s_ok = match field.class() {
        FieldClass::EvenChar => false,
        FieldClass::Definite => s >= 2,
        FieldClass::NonDefinite => s >= 3 || (s >= 2 && field.k().is_multiple_of(2)),
    };
    s_ok && s <= n && leading_plus(eps_from) && leading_plus(eps_to)
}

fn frobenius_family(field: &Field) -> Vec<FuncTable> {
    let mut out: Vec<FuncTable> = field
        .elements()
        .filter(|&c| field.is_positive(c))
        .flat_map(|c| (0..field.k()).map(move |ell| frob_table(field, c, ell)))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Finds the entrywise maps sending `LPM_n(eps_from)` into `LPM_n(eps_to)`.
///
/// Scans all `q^q` functions when that fits the budget, otherwise the
/// nonzero multiples of the Frobenius powers plus a seeded random sample. The
/// verdict compares against the Frobenius family only when
/// [`hypothesis_met`] holds.
pub fn classify_preservers(
    field: &Field,
    n: usize,
    s: usize,
    eps_from: &SignPattern,
    eps_to: &SignPattern,
    opts: &ScanOptions,
) -> Result<PreserverReport> {
    check_patterns(n, eps_from, eps_to)?;
    let members = cone_members(field, eps_from, opts.budget)?;
    let target = effective(field, eps_to);
    let q = field.order() as u128;
    let total = q.checked_pow(q as u32);
    let full = total.is_some_and(|t| t <= opts.budget as u128);

    let mut preservers = if full {
        full_scan(field, &members, n, &target, total.unwrap() as u64, opts.threads.max(1))
    } else {
        let mut scratch = vec![Elem::ZERO; n * n];
        let mut found: Vec<FuncTable> = field
            .elements()
            .filter(|c| !c.is_zero())
            .flat_map(|c| (0..field.k()).map(move |ell| frob_table(field, c, ell)))
            .filter(|f| maps_into(field, &f.table, &members, n, &target, &mut scratch))
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        for _ in 0..opts.samples {
            let table: Vec<Elem> = (0..field.order()).map(|_| Elem(rng.random_range(0..field.order()))).collect();
            if maps_into(field, &table, &members, n, &target, &mut scratch) {
                found.push(FuncTable { field: field.clone(), table });
            }
        }
        found
    };
    preservers.sort();
    preservers.dedup();

    let family = frobenius_family(field);
    let hyp = hypothesis_met(field, n, s, eps_from, eps_to);
    let verdict = if !hyp {
        Verdict::NoClaim
    } else if eps_from == eps_to {
        if preservers == family {
            Verdict::MatchesFrobeniusFamily
        } else {
            Verdict::Mismatch
        }
    } else if preservers.is_empty() {
        Verdict::Empty
    } else {
        Verdict::Mismatch
    };
    Ok(PreserverReport {
        field: field.clone(),
        n,
        s,
        eps_from: eps_from.clone(),
        eps_to: eps_to.clone(),
        mode: if full { ScanMode::Full } else { ScanMode::Restricted { samples: opts.samples } },
        members_checked: members.len(),
        preservers,
        frobenius_family: family,
        hypothesis_met: hyp,
        verdict,
    })
}

fn full_scan(field: &Field, members: &[Vec<Elem>], n: usize, target: &SignPattern, total: u64, threads: usize) -> Vec<FuncTable> {
    let threads = if total < 10_000 { 1 } else { threads as u64 };
    let q = field.order();
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                let lo = total * t / threads;
                let hi = total * (t + 1) / threads;
                scope.spawn(move || {
                    let mut scratch = vec![Elem::ZERO; n * n];
                    let mut table = FuncTable::from_index(field, lo).table;
                    let mut found = Vec::new();
                    for _ in lo..hi {
                        if maps_into(field, &table, members, n, target, &mut scratch) {
                            found.push(FuncTable { field: field.clone(), table: table.clone() });
                        }
                        // Increment the base-q counter, f(q-1) least significant.
                        for slot in table.iter_mut().rev() {
                            slot.0 += 1;
                            if slot.0 < q {
                                break;
                            }
                            slot.0 = 0;
                        }
                    }
                    found
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("scan worker panicked")).collect()
    })
}

/// Outcome of the Cholesky compatibility checks for one `(A, L, c, ell)`.
///
/// Writing `g = c * Frob^ell`, `E` for the anchor and `r = sqrt(c)`:
///
/// ```text
/// inverse_middle:  Psi_E^{-1}(g[A]) == Frob^ell[Psi_{c Frob^ell[E]}^{-1}(A)]
/// inverse_right:   Psi_E^{-1}(g[A]) == r Frob^ell[Psi_{Frob^ell[E]}^{-1}(A)]
/// forward_middle:  g[Psi_E(L)] == Psi_{c Frob^ell[E]}(Frob^ell[L])
/// forward_right:   g[Psi_E(L)] == Psi_{Frob^ell[E]}(r Frob^ell[L])
/// inverse_twisted: Psi_E^{-1}(g[A]) == Frob^ell[Psi_{c' Frob^-ell[E]}^{-1}(A)],  c' = Frob^-ell(1/c)
/// ```
///
/// `commutation` is `Some` when `E` is the canonical diagonal anchor of its
/// pattern and records `Psi^{+-1} o Frob = Frob o Psi^{+-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CompatibilityReport {
    pub inverse_middle: bool,
    pub inverse_right: bool,
    pub forward_middle: bool,
    pub forward_right: bool,
    pub inverse_twisted: bool,
    pub commutation: Option<bool>,
}

impl CompatibilityReport {
    /// All identities as displayed, including the commutation when checked.
    pub fn displayed_all(&self) -> bool {
        self.inverse_middle && self.inverse_right && self.forward_middle && self.forward_right && self.commutation != Some(false)
    }
}

/// Evaluates every compatibility identity for `A` in the cone of `anchor` and
/// `L` positive lower triangular.
pub fn check_compatibility(anchor: &SymMatrix, c: Elem, ell: u32, a: &SymMatrix, l: &LowerPosTri) -> Result<CompatibilityReport> {
    let f = anchor.field();
    if a.field() != f || l.field() != f {
        return Err(Error::FieldMismatch);
    }
    if !f.is_positive(c) {
        return Err(Error::NotASquare);
    }
    let k = f.k();
    let r = f.positive_sqrt(c)?;
    let g = frob_table(f, c, ell);
    let fe = frob_sym(anchor, ell);
    let c_fe = fe.scale(c);

    let lhs_inv = psi_inv(anchor, &g.apply_sym(a)?)?;
    let inverse_middle = lhs_inv.as_matrix() == &frob_matrix(psi_inv(&c_fe, a)?.as_matrix(), ell);
    let inverse_right = lhs_inv.as_matrix() == &frob_matrix(psi_inv(&fe, a)?.as_matrix(), ell).scale(r);
    let back = (k - ell % k) % k;
    let c_twist = f.frobenius(f.inv(c)?, back);
    let twisted_anchor = frob_sym(anchor, back).scale(c_twist);
    let inverse_twisted = lhs_inv.as_matrix() == &frob_matrix(psi_inv(&twisted_anchor, a)?.as_matrix(), ell);

    let lhs_fwd = g.apply_sym(&psi(anchor, l)?)?;
    let fl = frob_tri(l, ell);
    let forward_middle = lhs_fwd == psi(&c_fe, &fl)?;
    let forward_right = lhs_fwd == psi(&fe, &LowerPosTri::new(fl.as_matrix().scale(r))?)?;

    let eps = sign_pattern_lpm(anchor)?;
    let commutation = (anchor == &canonical_anchor(f, &eps)).then(|| -> Result<bool> {
        let inv_ok = psi_inv(anchor, &frob_sym(a, 1))? == frob_tri(&psi_inv(anchor, a)?, 1);
        let fwd_ok = psi(anchor, &frob_tri(l, 1))? == frob_sym(&psi(anchor, l)?, 1);
        Ok(inv_ok && fwd_ok)
    });
    let commutation = commutation.transpose()?;

    Ok(CompatibilityReport { inverse_middle, inverse_right, forward_middle, forward_right, inverse_twisted, commutation })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample;

    fn sp(s: &str) -> SignPattern {
        s.parse().unwrap()
    }

    #[test]
    fn apply_examples() {
        let f7 = Field::new(7, 1).unwrap();
        let d = SymMatrix::diagonal(&f7, &[Elem(1), Elem(3)]);
        assert_eq!(FuncTable::identity(&f7).apply_sym(&d).unwrap(), d);
        let doubled = frob_table(&f7, Elem(2), 0).apply_sym(&d).unwrap();
        assert_eq!(doubled, SymMatrix::diagonal(&f7, &[Elem(2), Elem(6)]));
        let zero = FuncTable::constant(&f7, Elem::ZERO).apply(&d).unwrap();
        assert_eq!(zero, Matrix::zeros(&f7, 2, 2));
        let f3 = Field::new(3, 1).unwrap();
        assert_eq!(FuncTable::identity(&f3).apply(&d), Err(Error::FieldMismatch));
        assert!(FuncTable::new(&f3, vec![Elem(0), Elem(1)]).is_err());
        assert!(FuncTable::new(&f3, vec![Elem(0), Elem(1), Elem(3)]).is_err());
    }

    #[test]
    fn frobenius_tables() {
        let f9 = Field::new(3, 2).unwrap();
        assert_eq!(frob_table(&f9, Elem::ONE, 0), FuncTable::identity(&f9));
        // 1 + x -> 1 + 2x
        assert_eq!(frob_table(&f9, Elem::ONE, 1).eval(Elem(4)), Elem(7));
        let f7 = Field::new(7, 1).unwrap();
        let t = frob_table(&f7, Elem(2), 0);
        assert!(f7.elements().all(|a| t.eval(a) == f7.mul(Elem(2), a)));
    }

    #[test]
    fn scan_index_order() {
        let f3 = Field::new(3, 1).unwrap();
        assert_eq!(FuncTable::from_index(&f3, 0).to_string(), "0 0 0");
        assert_eq!(FuncTable::from_index(&f3, 5).to_string(), "0 1 2");
        assert_eq!(FuncTable::from_index(&f3, 9).to_string(), "1 0 0");
    }

    #[test]
    fn is_preserver_examples() {
        let f3 = Field::new(3, 1).unwrap();
        let pp = sp("+,+");
        assert!(is_preserver(&FuncTable::identity(&f3), 2, &pp, &pp, DEFAULT_BUDGET).unwrap());
        assert!(!is_preserver(&FuncTable::constant(&f3, Elem::ONE), 2, &pp, &pp, DEFAULT_BUDGET).unwrap());
        let f7 = Field::new(7, 1).unwrap();
        assert!(is_preserver(&frob_table(&f7, Elem(2), 0), 2, &pp, &pp, DEFAULT_BUDGET).unwrap());
        assert_eq!(cone_members(&f7, &pp, DEFAULT_BUDGET).unwrap().len(), 63);
        assert!(matches!(
            is_preserver(&FuncTable::identity(&f7), 4, &sp("+,+,+,+"), &sp("+,+,+,+"), 1000),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn classify_small_fields() {
        let f3 = Field::new(3, 1).unwrap();
        let opts = ScanOptions::default();
        let r = classify_preservers(&f3, 2, 2, &sp("+,+"), &sp("+,+"), &opts).unwrap();
        assert_eq!(r.mode, ScanMode::Full);
        assert_eq!(r.preservers, vec![FuncTable::identity(&f3)]);
        assert_eq!(r.verdict, Verdict::MatchesFrobeniusFamily);
        let r = classify_preservers(&f3, 2, 2, &sp("+,+"), &sp("+,-"), &opts).unwrap();
        assert!(r.preservers.is_empty());
        assert_eq!(r.verdict, Verdict::NoClaim);
        let r = classify_preservers(&f3, 3, 2, &sp("+,+,+"), &sp("+,+,-"), &opts).unwrap();
        assert!(r.hypothesis_met);
        assert_eq!(r.verdict, Verdict::Empty);
    }

    #[test]
    fn frobenius_family_preserves_on_definite_and_nondefinite_fields() {
        for (p, k, n, s) in [(3, 1, 3, 2), (7, 1, 2, 2), (3, 3, 2, 2), (5, 1, 3, 3), (3, 2, 2, 2)] {
            let f = Field::new(p, k).unwrap();
            let eps = SignPattern::all_plus(n);
            assert!(hypothesis_met(&f, n, s, &eps, &eps));
            for g in frobenius_family(&f) {
                assert!(is_preserver(&g, n, &eps, &eps, DEFAULT_BUDGET).unwrap(), "{p}^{k} {g}");
            }
        }
        let f5 = Field::new(5, 1).unwrap();
        assert!(!hypothesis_met(&f5, 2, 2, &sp("+,+"), &sp("+,+")));
    }

    #[test]
    fn restricted_scan_over_f27() {
        let f27 = Field::new(3, 3).unwrap();
        let opts = ScanOptions { samples: 200, ..ScanOptions::default() };
        let r = classify_preservers(&f27, 2, 2, &sp("+,+"), &sp("+,+"), &opts).unwrap();
        assert_eq!(r.mode, ScanMode::Restricted { samples: 200 });
        assert_eq!(r.frobenius_family.len(), 13 * 3);
        assert_eq!(r.verdict, Verdict::MatchesFrobeniusFamily);
    }

    #[test]
    fn frobenius_is_multiplicative() {
        let f4 = Field::new(2, 2).unwrap();
        let all: Vec<Matrix> =
            (0..256u64).map(|i| Matrix::from_codes(&f4, 2, 2, &[i % 4, i / 4 % 4, i / 16 % 4, i / 64]).unwrap()).collect();
        for a in &all {
            for b in &all {
                assert!(frobenius_multiplicative(a, b, 1).unwrap());
            }
        }
    }

    #[test]
    fn compatibility_on_canonical_anchor() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (p, k) in [(7, 1), (3, 3)] {
            let f = Field::new(p, k).unwrap();
            for _ in 0..40 {
                let eps = sample::pattern(&mut rng, 2);
                let anchor = canonical_anchor(&f, &eps);
                let a = sample::lpm_member(&mut rng, &f, &eps);
                let l = sample::lower_pos_tri(&mut rng, &f, 2);
                let ell = rng.random_range(0..k);
                let rep = check_compatibility(&anchor, Elem::ONE, ell, &a, &l).unwrap();
                assert!(rep.displayed_all(), "{rep:?}");
                let c = sample::positive(&mut rng, &f);
                let rep = check_compatibility(&anchor, c, ell, &a, &l).unwrap();
                assert!(rep.inverse_right && rep.forward_middle && rep.forward_right && rep.inverse_twisted);
                assert_eq!(rep.commutation, Some(true));
            }
        }
    }

    #[test]
    fn middle_inverse_identity_needs_twisted_anchor() {
        let f7 = Field::new(7, 1).unwrap();
        let one = SymMatrix::identity(&f7, 1);
        let l = LowerPosTri::identity(&f7, 1);
        let rep = check_compatibility(&one, Elem(2), 0, &one, &l).unwrap();
        assert!(!rep.inverse_middle);
        assert!(rep.inverse_twisted && rep.inverse_right && rep.forward_middle);
    }

    #[test]
    fn twisted_identity_on_general_anchors() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let f = Field::new(3, 3).unwrap();
        for _ in 0..40 {
            let eps = sample::pattern(&mut rng, 3);
            let anchor = sample::lpm_member(&mut rng, &f, &eps);
            let a = sample::lpm_member(&mut rng, &f, &eps);
            let l = sample::lower_pos_tri(&mut rng, &f, 3);
            let c = sample::positive(&mut rng, &f);
            let rep = check_compatibility(&anchor, c, rng.random_range(0..3), &a, &l).unwrap();
            assert!(rep.inverse_twisted && rep.forward_middle && rep.forward_right);
        }
    }
}
