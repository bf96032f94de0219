//! Sign patterns, LPM/TPM cone membership and canonical anchors.
//!
//! `LPM_n(eps)` is the set of symmetric `n x n` matrices whose `k`-th leading
//! principal minor has quadratic character `eps_k`; `TPM_n(eps)` uses trailing
//! minors instead. In characteristic 2 the character of every nonzero element
//! is `+1`, so all cones of a given size coincide.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gf::{Elem, Field, FieldClass};
use crate::matfq::{leading_minor_chain, SymMatrix};

/// A vector of `+1` / `-1` labels, one per nested principal minor.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignPattern(Vec<i8>);

impl SignPattern {
    pub fn new(signs: Vec<i8>) -> Result<SignPattern> {
        if signs.is_empty() {
            return Err(Error::InvalidPattern("empty pattern".into()));
        }
        if let Some(bad) = signs.iter().find(|&&s| s != 1 && s != -1) {
            return Err(Error::InvalidPattern(format!("entry {bad} is not +1 or -1")));
        }
        Ok(SignPattern(signs))
    }

    pub fn all_plus(n: usize) -> SignPattern {
        SignPattern(vec![1; n])
    }

    /// All `2^n` patterns of length `n`, `+` before `-`, first entry most
    /// significant.
    pub fn all(n: usize) -> impl Iterator<Item = SignPattern> {
        (0..1u32 << n).map(move |bits| {
            SignPattern((0..n).map(|i| if bits >> (n - 1 - i) & 1 == 0 { 1 } else { -1 }).collect())
        })
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn signs(&self) -> &[i8] {
        &self.0
    }

    /// Entry `k`, 1-based.
    pub fn get(&self, k: usize) -> i8 {
        self.0[k - 1]
    }

    pub fn is_all_plus(&self) -> bool {
        self.0.iter().all(|&s| s == 1)
    }

    /// Entrywise product.
    pub fn product(&self, other: &SignPattern) -> SignPattern {
        SignPattern(self.0.iter().zip(&other.0).map(|(a, b)| a * b).collect())
    }

    /// First position (1-based) where the patterns differ.
    pub fn first_difference(&self, other: &SignPattern) -> Option<usize> {
        if self.len() != other.len() {
            return Some(self.len().min(other.len()) + 1);
        }
        self.0.iter().zip(&other.0).position(|(a, b)| a != b).map(|i| i + 1)
    }

    pub(crate) fn from_chis(chis: impl IntoIterator<Item = i8>) -> SignPattern {
        SignPattern(chis.into_iter().collect())
    }
}

/// Comma separated `+` / `-` tokens, e.g. `+,-,+`.
impl fmt::Display for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<&str> = self.0.iter().map(|&s| if s == 1 { "+" } else { "-" }).collect();
        f.write_str(&toks.join(","))
    }
}

impl FromStr for SignPattern {
    type Err = Error;

    /// Accepts `+`, `-`, the Unicode minus sign, `+1` and `-1`.
    fn from_str(s: &str) -> Result<SignPattern> {
        let signs = s
            .split(',')
            .map(|tok| match tok.trim() {
                "+" | "+1" | "1" => Ok(1),
                "-" | "\u{2212}" | "-1" | "\u{2212}1" => Ok(-1),
                other => Err(Error::InvalidPattern(format!("bad token {other:?} in {s:?}"))),
            })
            .collect::<Result<Vec<i8>>>()?;
        SignPattern::new(signs)
    }
}

fn pattern_of_minors(field: &Field, minors: &[Elem]) -> SignPattern {
    SignPattern::from_chis(minors.iter().map(|&d| field.chi(d)))
}

/// Characters of the leading principal minors.
///
/// Fails with `ZeroMinor { k }` at the first vanishing minor.
pub fn sign_pattern_lpm(a: &SymMatrix) -> Result<SignPattern> {
    let n = a.n();
    let minors = leading_minor_chain(a.field(), &mut a.entries().to_vec(), n)?;
    Ok(pattern_of_minors(a.field(), &minors))
}

/// Characters of the trailing principal minors, `k = 1` being the
/// bottom-right entry.
pub fn sign_pattern_tpm(a: &SymMatrix) -> Result<SignPattern> {
    sign_pattern_lpm(&a.reverse())
}

pub fn in_lpm(a: &SymMatrix, eps: &SignPattern) -> bool {
    matches!(sign_pattern_lpm(a), Ok(ref s) if s == eps)
}

pub fn in_tpm(a: &SymMatrix, eps: &SignPattern) -> bool {
    matches!(sign_pattern_tpm(a), Ok(ref s) if s == eps)
}

/// A positive and a negative element used to build diagonal anchors.
///
/// In characteristic 2 there are no negative elements and `omega_minus` is
/// `None`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AnchorPair {
    pub omega_plus: Elem,
    pub omega_minus: Option<Elem>,
}

impl AnchorPair {
    pub fn new(field: &Field, omega_plus: Elem, omega_minus: Elem) -> Result<AnchorPair> {
        if field.chi(omega_plus) != 1 {
            return Err(Error::InvalidPattern(format!("omega_+ = {omega_plus} is not positive")));
        }
        if field.chi(omega_minus) != -1 {
            return Err(Error::InvalidPattern(format!("omega_- = {omega_minus} is not negative")));
        }
        Ok(AnchorPair { omega_plus, omega_minus: Some(omega_minus) })
    }

    /// `omega_+ = 1`; `omega_- = -1` on definite fields, otherwise the
    /// non-square with the smallest code.
    pub fn canonical(field: &Field) -> AnchorPair {
        let omega_minus = match field.class() {
            FieldClass::EvenChar => None,
            FieldClass::Definite => Some(field.minus_one()),
            FieldClass::NonDefinite => field.elements().find(|&a| field.chi(a) == -1),
        };
        AnchorPair { omega_plus: Elem::ONE, omega_minus }
    }
}

/// `diag(w_1, w_1 w_2, .., w_{n-1} w_n)` with `chi(w_k) = eps_k`.
///
/// Its `k`-th leading minor is `w_1^2 .. w_{k-1}^2 w_k`, so it lies in
/// `LPM_n(eps)`. In characteristic 2 the result is the identity for every
/// pattern.
pub fn anchor_diag(field: &Field, eps: &SignPattern, anchors: &AnchorPair) -> SymMatrix {
    let n = eps.len();
    let Some(minus) = anchors.omega_minus.filter(|_| field.p() != 2) else {
        return SymMatrix::identity(field, n);
    };
    let omega: Vec<Elem> = eps.signs().iter().map(|&s| if s == 1 { anchors.omega_plus } else { minus }).collect();
    let mut diag = Vec::with_capacity(n);
    diag.push(omega[0]);
    for k in 1..n {
        diag.push(field.mul(omega[k - 1], omega[k]));
    }
    SymMatrix::diagonal(field, &diag)
}

/// The canonical anchor `D_eps = anchor_diag(eps, canonical pair)`.
pub fn canonical_anchor(field: &Field, eps: &SignPattern) -> SymMatrix {
    anchor_diag(field, eps, &AnchorPair::canonical(field))
}

/// The reversal of [`anchor_diag`]; a member of `TPM_n(eps)`.
pub fn anchor_tpm(field: &Field, eps: &SignPattern, anchors: &AnchorPair) -> SymMatrix {
    anchor_diag(field, eps, anchors).reverse()
}

/// Pattern of the trailing minors of `A^{-1}` for `A` in `LPM_n(eps)`:
/// `(eps_n eps_{n-1}, eps_n eps_{n-2}, .., eps_n eps_1, eps_n)`.
///
/// The same map sends the trailing pattern of `A` to the leading pattern of
/// `A^{-1}`, and it is an involution.
pub fn inverse_pattern(eps: &SignPattern) -> SignPattern {
    let n = eps.len();
    let last = eps.get(n);
    SignPattern::from_chis((1..=n).map(|k| if k < n { last * eps.get(n - k) } else { last }))
}

/// `A -> A^{-1}`, mapping `LPM_n(eps)` onto `TPM_n(inverse_pattern(eps))`.
pub fn map_inverse_cone(a: &SymMatrix) -> Result<SymMatrix> {
    let eps = sign_pattern_lpm(a)?;
    let inv = a.inverse()?;
    debug_assert_eq!(sign_pattern_tpm(&inv).ok(), Some(inverse_pattern(&eps)));
    Ok(inv)
}

/// `A -> A^{-1}`, mapping `TPM_n(eps)` onto `LPM_n(inverse_pattern(eps))`.
pub fn map_inverse_cone_tpm(a: &SymMatrix) -> Result<SymMatrix> {
    let eps = sign_pattern_tpm(a)?;
    let inv = a.inverse()?;
    debug_assert_eq!(sign_pattern_lpm(&inv).ok(), Some(inverse_pattern(&eps)));
    Ok(inv)
}
