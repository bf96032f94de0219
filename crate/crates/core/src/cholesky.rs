//! Generalized Cholesky factorization `A = L * A_eps * L^T`.
//!
//! `A_eps` is any fixed member of the cone `LPM_n(eps)` (the anchor) and `L`
//! ranges over lower triangular matrices whose diagonal entries are nonzero
//! squares. Congruence by an invertible lower triangular matrix multiplies the
//! `k`-th leading minor by a square, so it never leaves the cone. Over definite
//! fields and in characteristic 2 the positive square root is unique, and the
//! factor `L` is unique as well.

use crate::cones::{canonical_anchor, sign_pattern_lpm, SignPattern};
use crate::error::{Error, Result};
use crate::gf::{Elem, Field, FieldClass};
use crate::matfq::{Matrix, SymMatrix};

/// Lower triangular matrix with positive (nonzero square) diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerPosTri(Matrix);

impl LowerPosTri {
    pub fn new(m: Matrix) -> Result<LowerPosTri> {
        if !m.is_lower_triangular() {
            return Err(Error::NotLowerTriangular);
        }
        check_positive_diag(&m)?;
        Ok(LowerPosTri(m))
    }

    pub(crate) fn new_unchecked(m: Matrix) -> LowerPosTri {
        debug_assert!(m.is_lower_triangular());
        LowerPosTri(m)
    }

    pub fn identity(field: &Field, n: usize) -> LowerPosTri {
        LowerPosTri(Matrix::identity(field, n))
    }

    pub fn n(&self) -> usize {
        self.0.rows()
    }

    pub fn field(&self) -> &Field {
        self.0.field()
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }

    /// `R L R` with `R` the reversal permutation; upper triangular.
    pub fn reverse(&self) -> UpperPosTri {
        UpperPosTri(self.0.reverse())
    }
}

/// Upper triangular matrix with positive diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpperPosTri(Matrix);

impl UpperPosTri {
    pub fn new(m: Matrix) -> Result<UpperPosTri> {
        if !m.is_upper_triangular() {
            return Err(Error::SizeMismatch("matrix is not upper triangular".into()));
        }
        check_positive_diag(&m)?;
        Ok(UpperPosTri(m))
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }
}

fn check_positive_diag(m: &Matrix) -> Result<()> {
    let f = m.field();
    match m.diag().iter().position(|&d| f.chi(d) != 1) {
        Some(i) => Err(Error::NonPositiveDiagonal { index: i + 1 }),
        None => Ok(()),
    }
}

/// `A = L * anchor * L^T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub l: LowerPosTri,
    pub anchor: SymMatrix,
    pub eps: SignPattern,
}

impl Factorization {
    pub fn reconstruct(&self) -> SymMatrix {
        self.anchor.congruence_by(self.l.as_matrix()).expect("sizes agree by construction")
    }
}

/// `A = U * anchor * U^T` with `U` upper triangular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpperFactorization {
    pub u: UpperPosTri,
    pub anchor: SymMatrix,
    pub eps: SignPattern,
}

impl UpperFactorization {
    pub fn reconstruct(&self) -> SymMatrix {
        self.anchor.congruence_by(self.u.as_matrix()).expect("sizes agree by construction")
    }
}

fn same_shape(a: &SymMatrix, b: &SymMatrix) -> Result<()> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    if a.n() != b.n() {
        return Err(Error::SizeMismatch(format!("{}x{} vs {}x{}", a.n(), a.n(), b.n(), b.n())));
    }
    Ok(())
}

fn require_unique_roots(field: &Field) -> Result<()> {
    if field.class() == FieldClass::NonDefinite {
        Err(Error::NonDefiniteField { q: field.order() })
    } else {
        Ok(())
    }
}

/// `L * anchor * L^T` for any invertible lower triangular `L`.
pub fn congruence(l: &Matrix, anchor: &SymMatrix) -> Result<SymMatrix> {
    if l.field() != anchor.field() {
        return Err(Error::FieldMismatch);
    }
    if !l.is_lower_triangular() {
        return Err(Error::NotLowerTriangular);
    }
    if l.rows() != anchor.n() {
        return Err(Error::SizeMismatch(format!("L is {}x{}, anchor is {}x{}", l.rows(), l.rows(), anchor.n(), anchor.n())));
    }
    if l.diag().iter().any(|d| d.is_zero()) {
        return Err(Error::Singular);
    }
    let eps = sign_pattern_lpm(anchor)?;
    let out = anchor.congruence_by(l)?;
    debug_assert_eq!(sign_pattern_lpm(&out).ok(), Some(eps));
    Ok(out)
}

/// Solves `A = L * anchor * L^T` for the unique `L` with positive diagonal.
///
/// Row `j` of `L` is `(p^T, s)` where, writing the leading `(j+1)`-blocks as
/// `A = [[B, b], [b^T, c]]`, `anchor = [[B_e, u], [u^T, v]]` and `K` for the
/// rows of `L` already computed,
///
/// ```text
/// s^2 = (det A * det B_e) / (det B * det anchor)      (leading blocks)
/// p   = B_e^{-1} (K^{-1} b - s u)
/// ```
///
/// `B_e^{-1}` is grown one border at a time, so the whole factorization costs
/// `O(n^3)` field operations.
pub fn factor(a: &SymMatrix, anchor: &SymMatrix) -> Result<Factorization> {
    same_shape(a, anchor)?;
    let f = a.field().clone();
    require_unique_roots(&f)?;
    let n = a.n();
    let da = a.leading_minors()?;
    let de = anchor.leading_minors()?;
    let eps_a = SignPattern::from_chis(da.iter().map(|&d| f.chi(d)));
    let eps_e = SignPattern::from_chis(de.iter().map(|&d| f.chi(d)));
    if let Some(index) = eps_a.first_difference(&eps_e) {
        return Err(Error::PatternMismatch { index, left: eps_a.get(index), right: eps_e.get(index) });
    }

    let mut l = Matrix::zeros(&f, n, n);
    // Inverse of the leading j x j block of the anchor, row-major j*j.
    let mut be_inv: Vec<Elem> = Vec::new();
    for j in 0..n {
        let (da_prev, de_prev) = if j == 0 { (Elem::ONE, Elem::ONE) } else { (da[j - 1], de[j - 1]) };
        let s_sq = f.div(f.mul(da[j], de_prev), f.mul(da_prev, de[j]))?;
        let s = f.positive_sqrt(s_sq)?;

        let u: Vec<Elem> = (0..j).map(|i| anchor.get(i, j)).collect();
        if j > 0 {
            // y = K^{-1} b by forward substitution on the rows of L built so far.
            let mut y = vec![Elem::ZERO; j];
            for r in 0..j {
                let mut acc = a.get(r, j);
                for c in 0..r {
                    acc = f.sub(acc, f.mul(l.get(r, c), y[c]));
                }
                y[r] = f.div(acc, l.get(r, r))?;
            }
            let rhs: Vec<Elem> = (0..j).map(|i| f.sub(y[i], f.mul(s, u[i]))).collect();
            for r in 0..j {
                let pr = (0..j).fold(Elem::ZERO, |acc, c| f.add(acc, f.mul(be_inv[r * j + c], rhs[c])));
                l.set(j, r, pr);
            }
        }
        l.set(j, j, s);

        // Border B_e^{-1} with (u, v): sigma = v - u^T B_e^{-1} u = D_{j+1} / D_j.
        let sigma = f.div(de[j], de_prev)?;
        let sigma_inv = f.inv(sigma)?;
        let w: Vec<Elem> = (0..j)
            .map(|r| (0..j).fold(Elem::ZERO, |acc, c| f.add(acc, f.mul(be_inv[r * j + c], u[c]))))
            .collect();
        let m = j + 1;
        let mut next = vec![Elem::ZERO; m * m];
        for r in 0..j {
            for c in 0..j {
                let corr = f.mul(f.mul(w[r], w[c]), sigma_inv);
                next[r * m + c] = f.add(be_inv[r * j + c], corr);
            }
            let edge = f.neg(f.mul(w[r], sigma_inv));
            next[r * m + j] = edge;
            next[j * m + r] = edge;
        }
        next[j * m + j] = sigma_inv;
        be_inv = next;
    }

    let fact = Factorization { l: LowerPosTri::new_unchecked(l), anchor: anchor.clone(), eps: eps_a };
    debug_assert_eq!(&fact.reconstruct(), a);
    Ok(fact)
}

/// Solves `A = U * anchor * U^T` with `U` upper triangular with positive
/// diagonal, for `A` and `anchor` in the same trailing cone.
///
/// Computed as `U = R L R` where `L` factors `R A R` against `R anchor R`.
pub fn factor_tpm(a: &SymMatrix, anchor: &SymMatrix) -> Result<UpperFactorization> {
    let lower = factor(&a.reverse(), &anchor.reverse())?;
    Ok(UpperFactorization { u: lower.l.reverse(), anchor: anchor.clone(), eps: lower.eps })
}

/// `L -> L * anchor * L^T` on positive-diagonal lower triangular matrices.
pub fn psi(anchor: &SymMatrix, l: &LowerPosTri) -> Result<SymMatrix> {
    congruence(l.as_matrix(), anchor)
}

/// Inverse of [`psi`]: the Cholesky factor of `a` against `anchor`.
pub fn psi_inv(anchor: &SymMatrix, a: &SymMatrix) -> Result<LowerPosTri> {
    Ok(factor(a, anchor)?.l)
}

/// `psi(to, psi_inv(from, a))`: moves `a` from the cone of `from` to the cone
/// of `to` while keeping its Cholesky coordinates.
pub fn transition(a: &SymMatrix, from: &SymMatrix, to: &SymMatrix) -> Result<SymMatrix> {
    same_shape(a, to)?;
    psi(to, &psi_inv(from, a)?)
}

/// Two distinct positive-diagonal factors with the same congruence image.
#[derive(Clone, Debug)]
pub struct NonUniqueness {
    pub first: LowerPosTri,
    pub second: LowerPosTri,
    pub anchor: SymMatrix,
    pub image: SymMatrix,
}

/// On a non-definite field `-1` is a square, so `L` and `L * D` with
/// `D = d * I`, `d^2 = 1`, `d != 1` both have positive diagonals and give the
/// same `L * A * L^T`. Returns the witness for `L = I` against the all-plus
/// canonical anchor, with `d` found by search.
pub fn nonuniqueness_witness(field: &Field, n: usize) -> Result<NonUniqueness> {
    if field.class().admits_unique_sqrt() {
        return Err(Error::DefiniteField { q: field.order() });
    }
    let d = field
        .elements()
        .find(|&d| d != Elem::ONE && field.chi(d) == 1 && field.mul(d, d) == Elem::ONE)
        .expect("-1 is a positive element of a non-definite field");
    let anchor = canonical_anchor(field, &SignPattern::all_plus(n));
    let first = LowerPosTri::identity(field, n);
    let second = LowerPosTri::new(Matrix::diagonal(field, &vec![d; n]))?;
    let image = psi(&anchor, &first)?;
    let other = psi(&anchor, &second)?;
    debug_assert_eq!(image, other);
    debug_assert_ne!(first, second);
    Ok(NonUniqueness { first, second, anchor, image })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cones::in_lpm;

    fn mat(field: &Field, n: usize, codes: &[u64]) -> Matrix {
        Matrix::from_codes(field, n, n, codes).unwrap()
    }

    fn sym(field: &Field, n: usize, codes: &[u64]) -> SymMatrix {
        SymMatrix::new(mat(field, n, codes)).unwrap()
    }

    #[test]
    fn congruence_examples() {
        let f3 = Field::new(3, 1).unwrap();
        let f7 = Field::new(7, 1).unwrap();
        let i2 = SymMatrix::identity(&f3, 2);
        assert_eq!(congruence(&Matrix::identity(&f3, 2), &i2).unwrap(), i2);
        assert_eq!(congruence(&mat(&f3, 2, &[1, 0, 1, 1]), &i2).unwrap(), sym(&f3, 2, &[1, 1, 1, 2]));
        let d = sym(&f7, 2, &[1, 0, 0, 3]);
        let out = congruence(&mat(&f7, 2, &[3, 0, 0, 1]), &d).unwrap();
        assert_eq!(out, sym(&f7, 2, &[2, 0, 0, 3]));
        assert_eq!(sign_pattern_lpm(&out).unwrap().to_string(), "+,-");
        assert_eq!(congruence(&mat(&f7, 2, &[0, 0, 1, 1]), &d), Err(Error::Singular));
        assert_eq!(congruence(&mat(&f7, 2, &[1, 1, 0, 1]), &d), Err(Error::NotLowerTriangular));
        assert_eq!(
            congruence(&Matrix::identity(&f7, 2), &sym(&f7, 2, &[0, 1, 1, 0])),
            Err(Error::ZeroMinor { k: 1 })
        );
    }

    #[test]
    fn factor_examples() {
        let f3 = Field::new(3, 1).unwrap();
        let f7 = Field::new(7, 1).unwrap();
        let i3 = SymMatrix::identity(&f7, 3);
        assert_eq!(factor(&i3, &i3).unwrap().l, LowerPosTri::identity(&f7, 3));
        let fac = factor(&sym(&f3, 2, &[1, 1, 1, 2]), &SymMatrix::identity(&f3, 2)).unwrap();
        assert_eq!(fac.l.as_matrix(), &mat(&f3, 2, &[1, 0, 1, 1]));
        let fac = factor(&sym(&f7, 2, &[2, 0, 0, 3]), &sym(&f7, 2, &[1, 0, 0, 3])).unwrap();
        assert_eq!(fac.l.as_matrix(), &mat(&f7, 2, &[4, 0, 0, 1]));
        assert_eq!(fac.eps.to_string(), "+,-");
    }

    #[test]
    fn factor_is_the_unique_positive_solution_over_f3() {
        // Enumerate all 3 * 1 * 3 = 9 candidates with positive diagonal.
        let f3 = Field::new(3, 1).unwrap();
        let a = sym(&f3, 2, &[1, 1, 1, 2]);
        let anchor = SymMatrix::identity(&f3, 2);
        let mut solutions = Vec::new();
        for l21 in 0..3 {
            let l = mat(&f3, 2, &[1, 0, l21, 1]);
            if congruence(&l, &anchor).unwrap() == a {
                solutions.push(l);
            }
        }
        assert_eq!(solutions, vec![factor(&a, &anchor).unwrap().l.into_matrix()]);
    }

    #[test]
    fn factor_errors() {
        let f7 = Field::new(7, 1).unwrap();
        let f5 = Field::new(5, 1).unwrap();
        let f9 = Field::new(3, 2).unwrap();
        let err = factor(&SymMatrix::identity(&f5, 2), &SymMatrix::identity(&f5, 2)).unwrap_err();
        assert_eq!(err, Error::NonDefiniteField { q: 5 });
        assert_eq!(err.code(), "E_NONDEFINITE");
        assert!(matches!(
            factor(&SymMatrix::identity(&f9, 1), &SymMatrix::identity(&f9, 1)),
            Err(Error::NonDefiniteField { q: 9 })
        ));
        assert_eq!(
            factor(&sym(&f7, 2, &[1, 0, 0, 3]), &SymMatrix::identity(&f7, 2)),
            Err(Error::PatternMismatch { index: 2, left: -1, right: 1 })
        );
        assert_eq!(
            factor(&sym(&f7, 2, &[1, 1, 1, 1]), &SymMatrix::identity(&f7, 2)),
            Err(Error::ZeroMinor { k: 2 })
        );
        assert_eq!(
            factor(&SymMatrix::identity(&f7, 2), &SymMatrix::identity(&f7, 3)).unwrap_err().code(),
            "E_SIZE_MISMATCH"
        );
    }

    #[test]
    fn factor_tpm_examples() {
        let f3 = Field::new(3, 1).unwrap();
        let f7 = Field::new(7, 1).unwrap();
        let i2 = SymMatrix::identity(&f7, 2);
        assert_eq!(factor_tpm(&i2, &i2).unwrap().u.as_matrix(), &Matrix::identity(&f7, 2));
        let up = factor_tpm(&sym(&f3, 2, &[2, 1, 1, 1]), &SymMatrix::identity(&f3, 2)).unwrap();
        assert_eq!(up.u.as_matrix(), &mat(&f3, 2, &[1, 1, 0, 1]));
        assert_eq!(up.reconstruct(), sym(&f3, 2, &[2, 1, 1, 1]));
        let up = factor_tpm(&sym(&f7, 2, &[3, 0, 0, 2]), &sym(&f7, 2, &[3, 0, 0, 1])).unwrap();
        assert_eq!(up.u.as_matrix(), &mat(&f7, 2, &[1, 0, 0, 4]));
    }

    #[test]
    fn psi_and_transition_examples() {
        let f3 = Field::new(3, 1).unwrap();
        let i2 = SymMatrix::identity(&f3, 2);
        assert_eq!(psi(&i2, &LowerPosTri::identity(&f3, 2)).unwrap(), i2);
        let l = psi_inv(&i2, &sym(&f3, 2, &[1, 2, 2, 2])).unwrap();
        assert_eq!(l.as_matrix(), &mat(&f3, 2, &[1, 0, 2, 1]));
        let a = sym(&f3, 2, &[1, 1, 1, 2]);
        assert_eq!(transition(&a, &i2, &i2).unwrap(), a);
        let to = sym(&f3, 2, &[1, 0, 0, 2]);
        let moved = transition(&a, &i2, &to).unwrap();
        assert_eq!(moved, sym(&f3, 2, &[1, 1, 1, 0]));
        assert_eq!(sign_pattern_lpm(&moved).unwrap().to_string(), "+,-");
        assert_eq!(transition(&moved, &to, &i2).unwrap(), a);
    }

    #[test]
    fn lower_pos_tri_validation() {
        let f7 = Field::new(7, 1).unwrap();
        assert_eq!(LowerPosTri::new(mat(&f7, 2, &[1, 2, 0, 1])), Err(Error::NotLowerTriangular));
        assert_eq!(
            LowerPosTri::new(mat(&f7, 2, &[1, 0, 5, 3])),
            Err(Error::NonPositiveDiagonal { index: 2 })
        );
        assert!(LowerPosTri::new(mat(&f7, 2, &[2, 0, 5, 4])).is_ok());
    }

    #[test]
    fn witness_examples() {
        let f5 = Field::new(5, 1).unwrap();
        let w = nonuniqueness_witness(&f5, 1).unwrap();
        assert_eq!(w.first.as_matrix().codes(), vec![1]);
        assert_eq!(w.second.as_matrix().codes(), vec![4]);
        let w = nonuniqueness_witness(&f5, 2).unwrap();
        assert_eq!(w.second.as_matrix(), &mat(&f5, 2, &[4, 0, 0, 4]));
        assert_eq!(w.image, SymMatrix::identity(&f5, 2));
        let f9 = Field::new(3, 2).unwrap();
        let w = nonuniqueness_witness(&f9, 1).unwrap();
        // -1 = 2 lies in the prime subfield, hence is a square in F_9.
        assert_eq!(w.second.as_matrix().codes(), vec![2]);
        assert_eq!(psi(&w.anchor, &w.second).unwrap(), psi(&w.anchor, &w.first).unwrap());
        let f7 = Field::new(7, 1).unwrap();
        assert_eq!(nonuniqueness_witness(&f7, 2).unwrap_err(), Error::DefiniteField { q: 7 });
        assert!(nonuniqueness_witness(&Field::new(2, 2).unwrap(), 2).is_err());
    }

    #[test]
    fn reconstruction_exhaustive_small() {
        for (p, k, nmax) in [(3, 1, 3), (7, 1, 2), (2, 1, 3), (2, 2, 3)] {
            let field = Field::new(p, k).unwrap();
            let elems: Vec<Elem> = field.elements().collect();
            for n in 1..=nmax {
                let m = n * (n + 1) / 2;
                let total = elems.len().pow(m as u32);
                let mut sample_anchor: std::collections::HashMap<SignPattern, SymMatrix> = Default::default();
                for idx in 0..total {
                    let mut x = idx;
                    let upper: Vec<Elem> = (0..m)
                        .map(|_| {
                            let e = elems[x % elems.len()];
                            x /= elems.len();
                            e
                        })
                        .collect();
                    let a = SymMatrix::from_upper(&field, n, &upper);
                    let Ok(eps) = sign_pattern_lpm(&a) else { continue };
                    let other = sample_anchor.entry(eps.clone()).or_insert_with(|| a.clone()).clone();
                    for anchor in [canonical_anchor(&field, &eps), other] {
                        let fac = factor(&a, &anchor).unwrap();
                        assert_eq!(fac.reconstruct(), a);
                        assert!(in_lpm(&a, &eps));
                        assert!(fac.l.as_matrix().diag().iter().all(|&d| field.chi(d) == 1));
                    }
                }
            }
        }
    }
}
