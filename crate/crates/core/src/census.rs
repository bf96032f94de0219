//! Exhaustive enumeration of symmetric matrices and cone counts.
//!
//! Over any finite field the number of `n x n` symmetric matrices with all
//! leading (or all trailing) principal minors nonzero is
//! `(q-1)^n q^(n(n-1)/2)`; for odd `q` the `2^n` sign-pattern cones split that
//! count evenly. The census enumerates `Sym_n(F_q)` and checks both claims.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use crate::cones::SignPattern;
use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::matfq::{det_in_place, leading_minor_chain, SymMatrix};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// `q^(n(n+1)/2)`, the number of symmetric `n x n` matrices.
pub fn sym_count(q: u32, n: usize) -> u128 {
    (q as u128).pow((n * (n + 1) / 2) as u32)
}

/// `(q-1)^n q^(n(n-1)/2)`.
pub fn lpm_formula(q: u32, n: usize) -> u128 {
    (q as u128 - 1).pow(n as u32) * (q as u128).pow((n * (n.saturating_sub(1)) / 2) as u32)
}

fn check_budget(q: u32, n: usize, budget: u64) -> Result<u64> {
    let needed = sym_count(q, n);
    if needed > budget as u128 {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    Ok(needed as u64)
}

/// Shard `index` of `count`: the matrices whose first row, read as a base-`q`
/// number, lies in `[index * R / count, (index + 1) * R / count)` with
/// `R = q^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shard {
    pub index: u64,
    pub count: u64,
}

impl Shard {
    pub const WHOLE: Shard = Shard { index: 0, count: 1 };

    pub fn new(index: u64, count: u64) -> Result<Shard> {
        if count == 0 || index >= count {
            return Err(Error::Parse { line: 0, msg: format!("invalid shard {index}/{count}") });
        }
        Ok(Shard { index, count })
    }

    fn first_row_range(&self, q: u32, n: usize) -> (u64, u64) {
        let r = (q as u128).pow(n as u32);
        let lo = r * self.index as u128 / self.count as u128;
        let hi = r * (self.index as u128 + 1) / self.count as u128;
        (lo as u64, hi as u64)
    }
}

/// `i/m`
impl FromStr for Shard {
    type Err = Error;

    fn from_str(s: &str) -> Result<Shard> {
        let bad = || Error::Parse { line: 0, msg: format!("shard must look like i/m, got {s:?}") };
        let (i, m) = s.split_once('/').ok_or_else(bad)?;
        Shard::new(i.trim().parse().map_err(|_| bad())?, m.trim().parse().map_err(|_| bad())?)
    }
}

/// Streams the symmetric matrices of a shard in increasing order of their
/// upper triangle `(a11, a12, .., a1n, a22, .., ann)`, first entry most
/// significant.
pub struct SymIter {
    field: Field,
    n: usize,
    digits: Vec<u32>,
    end_first_row: u64,
    done: bool,
}

impl SymIter {
    fn new(field: &Field, n: usize, shard: Shard) -> SymIter {
        let q = field.order();
        let (lo, hi) = shard.first_row_range(q, n);
        let m = n * (n + 1) / 2;
        let mut digits = vec![0u32; m];
        let mut x = lo;
        for i in (0..n).rev() {
            digits[i] = (x % q as u64) as u32;
            x /= q as u64;
        }
        SymIter { field: field.clone(), n, digits, end_first_row: hi, done: lo >= hi }
    }

    fn first_row_code(&self) -> u64 {
        let q = self.field.order() as u64;
        self.digits[..self.n].iter().fold(0, |acc, &d| acc * q + d as u64)
    }

    /// Current upper triangle, then advance. Avoids building a matrix.
    fn next_upper(&mut self) -> Option<&[u32]> {
        if self.done {
            return None;
        }
        Some(&self.digits)
    }

    fn advance(&mut self) {
        let q = self.field.order();
        for i in (0..self.digits.len()).rev() {
            self.digits[i] += 1;
            if self.digits[i] < q {
                if self.first_row_code() >= self.end_first_row {
                    self.done = true;
                }
                return;
            }
            self.digits[i] = 0;
        }
        self.done = true;
    }
}

impl Iterator for SymIter {
    type Item = SymMatrix;

    fn next(&mut self) -> Option<SymMatrix> {
        let upper: Vec<Elem> = self.next_upper()?.iter().map(|&c| Elem(c)).collect();
        let out = SymMatrix::from_upper(&self.field, self.n, &upper);
        self.advance();
        Some(out)
    }
}

/// Every symmetric `n x n` matrix over `field`, each exactly once.
pub fn enumerate_sym(field: &Field, n: usize, budget: u64) -> Result<SymIter> {
    check_budget(field.order(), n, budget)?;
    Ok(SymIter::new(field, n, Shard::WHOLE))
}

pub fn enumerate_sym_shard(field: &Field, n: usize, budget: u64, shard: Shard) -> Result<SymIter> {
    check_budget(field.order(), n, budget)?;
    Ok(SymIter::new(field, n, shard))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusReport {
    pub field: Field,
    pub n: usize,
    /// `q^(n(n+1)/2)`.
    pub total_sym: u64,
    /// Matrices actually visited (less than `total_sym` for a shard).
    pub enumerated: u64,
    pub lpm_total: u64,
    pub tpm_total: u64,
    pub lpm_per_pattern: BTreeMap<SignPattern, u64>,
    pub tpm_per_pattern: BTreeMap<SignPattern, u64>,
    /// `(q-1)^n q^(n(n-1)/2)`.
    pub formula_value: u64,
}

impl CensusReport {
    fn empty(field: &Field, n: usize) -> CensusReport {
        let q = field.order();
        CensusReport {
            field: field.clone(),
            n,
            total_sym: sym_count(q, n) as u64,
            enumerated: 0,
            lpm_total: 0,
            tpm_total: 0,
            lpm_per_pattern: BTreeMap::new(),
            tpm_per_pattern: BTreeMap::new(),
            formula_value: lpm_formula(q, n) as u64,
        }
    }

    /// Adds the counts of another shard of the same census.
    pub fn merge(&mut self, other: &CensusReport) {
        assert!(self.field == other.field && self.n == other.n, "merging censuses of different shapes");
        self.enumerated += other.enumerated;
        self.lpm_total += other.lpm_total;
        self.tpm_total += other.tpm_total;
        for (k, v) in &other.lpm_per_pattern {
            *self.lpm_per_pattern.entry(k.clone()).or_default() += v;
        }
        for (k, v) in &other.tpm_per_pattern {
            *self.tpm_per_pattern.entry(k.clone()).or_default() += v;
        }
    }

    /// `(lpm_total, total_sym)`.
    pub fn density(&self) -> (u64, u64) {
        (self.lpm_total, self.total_sym)
    }

    pub fn density_f64(&self) -> f64 {
        self.lpm_total as f64 / self.total_sym as f64
    }

    /// Whether `lpm_total / total_sym == (1 - 1/q)^n` exactly.
    pub fn density_identity_holds(&self) -> bool {
        let q = self.field.order() as u128;
        let n = self.n as u32;
        self.lpm_total as u128 * q.pow(n) == self.total_sym as u128 * (q - 1).pow(n)
    }

    /// Checks the count formula, the equal split over patterns (odd `q`) or
    /// the single cone (even `q`), and the density identity.
    pub fn verify(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::CensusAssertion(msg));
        if self.enumerated != self.total_sym {
            return fail(format!("enumerated {} of {} matrices", self.enumerated, self.total_sym));
        }
        if self.lpm_total != self.formula_value || self.tpm_total != self.formula_value {
            return fail(format!(
                "lpm_total {} / tpm_total {} differ from (q-1)^n q^C(n,2) = {}",
                self.lpm_total, self.tpm_total, self.formula_value
            ));
        }
        let patterns: Vec<SignPattern> = if self.field.p() == 2 {
            vec![SignPattern::all_plus(self.n)]
        } else {
            SignPattern::all(self.n).collect()
        };
        let share = self.lpm_total / patterns.len() as u64;
        if share * patterns.len() as u64 != self.lpm_total {
            return fail(format!("lpm_total {} not divisible by {}", self.lpm_total, patterns.len()));
        }
        for (label, map) in [("LPM", &self.lpm_per_pattern), ("TPM", &self.tpm_per_pattern)] {
            if map.len() != patterns.len() {
                return fail(format!("{label}: {} patterns occur, expected {}", map.len(), patterns.len()));
            }
            for eps in &patterns {
                let got = map.get(eps).copied().unwrap_or(0);
                if got != share {
                    return fail(format!("{label} pattern {eps}: count {got}, expected {share}"));
                }
            }
        }
        if !self.density_identity_holds() {
            return fail(format!("density {}/{} differs from (1-1/q)^n", self.lpm_total, self.total_sym));
        }
        Ok(())
    }

    /// Fixed-column text table.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let q = self.field.order();
        writeln!(out, "field {} q {} n {}", self.field, q, self.n).unwrap();
        writeln!(out, "{:<16}{:>14}{:>14}", "pattern", "lpm", "tpm").unwrap();
        let keys: std::collections::BTreeSet<&SignPattern> =
            self.lpm_per_pattern.keys().chain(self.tpm_per_pattern.keys()).collect();
        for eps in keys {
            let l = self.lpm_per_pattern.get(eps).copied().unwrap_or(0);
            let t = self.tpm_per_pattern.get(eps).copied().unwrap_or(0);
            writeln!(out, "{:<16}{:>14}{:>14}", eps.to_string(), l, t).unwrap();
        }
        writeln!(out, "{:<16}{:>14}{:>14}", "total", self.lpm_total, self.tpm_total).unwrap();
        writeln!(out, "{:<16}{:>14}", "sym", self.total_sym).unwrap();
        writeln!(out, "{:<16}{:>14}", "enumerated", self.enumerated).unwrap();
        let complete = self.enumerated == self.total_sym;
        let verdict = |ok: bool| if !complete { "partial" } else if ok { "ok" } else { "FAIL" };
        let formula_ok = self.lpm_total == self.formula_value && self.tpm_total == self.formula_value;
        writeln!(out, "{:<16}{:>14}{:>14}", "formula", self.formula_value, verdict(formula_ok)).unwrap();
        writeln!(out, "{:<16}{:>14}{:>14}", "equal-split", "", verdict(self.verify().is_ok())).unwrap();
        writeln!(
            out,
            "{:<16}{:>14}{:>14}",
            "density",
            format!("{:.6}", self.density_f64()),
            verdict(self.density_identity_holds())
        )
        .unwrap();
        out
    }
}

fn census_shard(field: &Field, n: usize, shard: Shard) -> CensusReport {
    let mut report = CensusReport::empty(field, n);
    let mut it = SymIter::new(field, n, shard);
    let mut full = vec![Elem::ZERO; n * n];
    let mut scratch = vec![Elem::ZERO; n * n];
    while let Some(upper) = it.next_upper() {
        let mut idx = 0;
        for r in 0..n {
            for c in r..n {
                full[r * n + c] = Elem(upper[idx]);
                full[c * n + r] = Elem(upper[idx]);
                idx += 1;
            }
        }
        report.enumerated += 1;
        scratch.copy_from_slice(&full);
        if let Ok(minors) = leading_minor_chain(field, &mut scratch, n) {
            report.lpm_total += 1;
            let eps = SignPattern::from_chis(minors.iter().map(|&d| field.chi(d)));
            *report.lpm_per_pattern.entry(eps).or_default() += 1;
        }
        for (i, v) in scratch.iter_mut().enumerate() {
            *v = full[n * n - 1 - i];
        }
        if let Ok(minors) = leading_minor_chain(field, &mut scratch, n) {
            report.tpm_total += 1;
            let eps = SignPattern::from_chis(minors.iter().map(|&d| field.chi(d)));
            *report.tpm_per_pattern.entry(eps).or_default() += 1;
        }
        it.advance();
    }
    report
}

/// Counts one shard without verifying.
pub fn run_census_shard(field: &Field, n: usize, budget: u64, shard: Shard) -> Result<CensusReport> {
    check_budget(field.order(), n, budget)?;
    Ok(census_shard(field, n, shard))
}

/// Full census, fanned out over worker threads and verified.
pub fn run_census(field: &Field, n: usize, budget: u64) -> Result<CensusReport> {
    let total = check_budget(field.order(), n, budget)?;
    let workers = if total < 4096 {
        1
    } else {
        std::thread::available_parallelism().map_or(1, |w| w.get()).min(16) as u64
    };
    let parts: Vec<CensusReport> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|i| s.spawn(move || census_shard(field, n, Shard { index: i, count: workers })))
            .collect();
        handles.into_iter().map(|h| h.join().expect("census worker panicked")).collect()
    });
    let mut report = CensusReport::empty(field, n);
    for part in &parts {
        report.merge(part);
    }
    report.verify()?;
    Ok(report)
}

/// Whether `x -> det [[A, u], [u^T, x]]` is a bijection of the field, for
/// invertible `A`.
pub fn verify_extension_bijection(a: &SymMatrix, u: &[Elem]) -> Result<bool> {
    let f = a.field();
    let m = a.n();
    if u.len() != m {
        return Err(Error::SizeMismatch(format!("border of length {} for a {m}x{m} block", u.len())));
    }
    if a.det()?.is_zero() {
        return Err(Error::Singular);
    }
    let n = m + 1;
    let mut seen = vec![false; f.order() as usize];
    for x in f.elements() {
        let mut buf = vec![Elem::ZERO; n * n];
        for r in 0..m {
            for c in 0..m {
                buf[r * n + c] = a.get(r, c);
            }
            buf[r * n + m] = u[r];
            buf[m * n + r] = u[r];
        }
        buf[m * n + m] = x;
        let d = det_in_place(f, &mut buf, n);
        if std::mem::replace(&mut seen[d.code() as usize], true) {
            return Ok(false);
        }
    }
    Ok(seen.iter().all(|&s| s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cones::sign_pattern_lpm;

    #[test]
    fn enumeration_counts_and_order() {
        let f2 = Field::new(2, 1).unwrap();
        assert_eq!(enumerate_sym(&f2, 1, DEFAULT_BUDGET).unwrap().count(), 2);
        let f3 = Field::new(3, 1).unwrap();
        let all: Vec<SymMatrix> = enumerate_sym(&f3, 2, DEFAULT_BUDGET).unwrap().collect();
        assert_eq!(all.len(), 27);
        let uppers: Vec<(u32, u32, u32)> =
            all.iter().map(|a| (a.get(0, 0).code(), a.get(0, 1).code(), a.get(1, 1).code())).collect();
        let mut sorted = uppers.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(uppers, sorted);
        let f7 = Field::new(7, 1).unwrap();
        assert_eq!(enumerate_sym(&f7, 3, DEFAULT_BUDGET).unwrap().count(), 117_649);
        assert!(matches!(enumerate_sym(&f7, 3, 1000), Err(Error::BudgetExceeded { needed: 117_649, .. })));
    }

    #[test]
    fn shards_partition_the_enumeration() {
        let f3 = Field::new(3, 1).unwrap();
        let whole: Vec<SymMatrix> = enumerate_sym(&f3, 3, DEFAULT_BUDGET).unwrap().collect();
        let mut pieces = Vec::new();
        for i in 0..5 {
            pieces.extend(enumerate_sym_shard(&f3, 3, DEFAULT_BUDGET, Shard::new(i, 5).unwrap()).unwrap());
        }
        assert_eq!(whole, pieces);
        assert!("3/2".parse::<Shard>().is_err());
        assert_eq!("1/4".parse::<Shard>().unwrap(), Shard { index: 1, count: 4 });
    }

    #[test]
    fn census_examples() {
        let f3 = Field::new(3, 1).unwrap();
        let r = run_census(&f3, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.lpm_total, 12);
        assert_eq!(r.lpm_per_pattern.len(), 4);
        assert!(r.lpm_per_pattern.values().all(|&c| c == 3));
        for (p, k) in [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2)] {
            let field = Field::new(p, k).unwrap();
            assert_eq!(run_census(&field, 1, DEFAULT_BUDGET).unwrap().lpm_total, field.order() as u64 - 1);
        }
        let f4 = Field::new(2, 2).unwrap();
        let r = run_census(&f4, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.lpm_total, 36);
        assert_eq!(r.lpm_per_pattern.len(), 1);
    }

    #[test]
    fn fast_counts_match_per_matrix_classification() {
        let f5 = Field::new(5, 1).unwrap();
        let r = run_census(&f5, 2, DEFAULT_BUDGET).unwrap();
        let mut by_matrix: BTreeMap<SignPattern, u64> = BTreeMap::new();
        for a in enumerate_sym(&f5, 2, DEFAULT_BUDGET).unwrap() {
            if let Ok(eps) = sign_pattern_lpm(&a) {
                *by_matrix.entry(eps).or_default() += 1;
            }
        }
        assert_eq!(r.lpm_per_pattern, by_matrix);
    }

    #[test]
    fn sharded_census_merges_to_full() {
        let f3 = Field::new(3, 1).unwrap();
        let full = run_census(&f3, 3, DEFAULT_BUDGET).unwrap();
        let mut merged = run_census_shard(&f3, 3, DEFAULT_BUDGET, Shard::new(0, 3).unwrap()).unwrap();
        assert!(merged.verify().is_err());
        for i in 1..3 {
            merged.merge(&run_census_shard(&f3, 3, DEFAULT_BUDGET, Shard::new(i, 3).unwrap()).unwrap());
        }
        assert_eq!(merged, full);
        assert!(merged.verify().is_ok());
    }

    #[test]
    fn bordered_determinant_bijection() {
        let f3 = Field::new(3, 1).unwrap();
        let one = SymMatrix::identity(&f3, 1);
        assert!(verify_extension_bijection(&one, &[Elem(0)]).unwrap());
        assert!(verify_extension_bijection(&one, &[Elem(1)]).unwrap());
        let zero = SymMatrix::diagonal(&f3, &[Elem(0)]);
        assert_eq!(verify_extension_bijection(&zero, &[Elem(1)]), Err(Error::Singular));
        let f7 = Field::new(7, 1).unwrap();
        let a = SymMatrix::from_upper(&f7, 2, &[Elem(3), Elem(5), Elem(1)]);
        assert!(verify_extension_bijection(&a, &[Elem(2), Elem(6)]).unwrap());
    }

    #[test]
    fn render_has_fixed_columns() {
        let f3 = Field::new(3, 1).unwrap();
        let text = run_census(&f3, 2, DEFAULT_BUDGET).unwrap().render();
        assert!(text.contains(&format!("{:<16}{:>14}{:>14}", "total", 12, 12)));
        assert!(text.contains(&format!("{:<16}{:>14}{:>14}", "+,-", 3, 3)));
        assert!(text.contains(&format!("{:<16}{:>14}{:>14}", "formula", 12, "ok")));
    }
}
