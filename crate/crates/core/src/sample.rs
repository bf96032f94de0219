//! Random field elements and matrices for randomized checks.

use rand::Rng;

use crate::cholesky::LowerPosTri;
use crate::cones::{sign_pattern_lpm, SignPattern};
use crate::gf::{Elem, Field};
use crate::matfq::{Matrix, SymMatrix};

pub fn elem<R: Rng + ?Sized>(rng: &mut R, field: &Field) -> Elem {
    Elem(rng.random_range(0..field.order()))
}

pub fn nonzero<R: Rng + ?Sized>(rng: &mut R, field: &Field) -> Elem {
    Elem(rng.random_range(1..field.order()))
}

/// Uniform over the nonzero squares.
pub fn positive<R: Rng + ?Sized>(rng: &mut R, field: &Field) -> Elem {
    loop {
        let e = nonzero(rng, field);
        if field.chi(e) == 1 {
            return e;
        }
    }
}

pub fn sym<R: Rng + ?Sized>(rng: &mut R, field: &Field, n: usize) -> SymMatrix {
    let upper: Vec<Elem> = (0..n * (n + 1) / 2).map(|_| elem(rng, field)).collect();
    SymMatrix::from_upper(field, n, &upper)
}

/// Uniform over `LPM_n(eps)` by rejection from the symmetric matrices.
pub fn lpm_member<R: Rng + ?Sized>(rng: &mut R, field: &Field, eps: &SignPattern) -> SymMatrix {
    let target = if field.p() == 2 { SignPattern::all_plus(eps.len()) } else { eps.clone() };
    loop {
        let a = sym(rng, field, eps.len());
        if sign_pattern_lpm(&a).is_ok_and(|s| s == target) {
            return a;
        }
    }
}

/// Uniform over `LPM_n`.
pub fn lpm_any<R: Rng + ?Sized>(rng: &mut R, field: &Field, n: usize) -> SymMatrix {
    loop {
        let a = sym(rng, field, n);
        if sign_pattern_lpm(&a).is_ok() {
            return a;
        }
    }
}

pub fn pattern<R: Rng + ?Sized>(rng: &mut R, n: usize) -> SignPattern {
    SignPattern::new((0..n).map(|_| if rng.random_bool(0.5) { 1 } else { -1 }).collect())
        .expect("entries are +1 or -1")
}

/// Uniform over lower triangular matrices with positive diagonal.
pub fn lower_pos_tri<R: Rng + ?Sized>(rng: &mut R, field: &Field, n: usize) -> LowerPosTri {
    let m = Matrix::from_fn(field, n, n, |r, c| match r.cmp(&c) {
        std::cmp::Ordering::Less => Elem::ZERO,
        std::cmp::Ordering::Equal => positive(rng, field),
        std::cmp::Ordering::Greater => elem(rng, field),
    });
    LowerPosTri::new_unchecked(m)
}
