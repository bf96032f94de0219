//! Group laws on positive lower triangular matrices and the laws they induce
//! on LPM cones through Cholesky coordinates.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::census::enumerate_sym;
use crate::cholesky::{factor, psi, LowerPosTri};
use crate::cones::{canonical_anchor, sign_pattern_lpm, SignPattern};
use crate::error::{Error, Result};
use crate::gf::{Elem, Field, FieldClass};
use crate::matfq::{Matrix, SymMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TriLaw {
    /// `L K`.
    Prod,
    /// Strict lower parts add, diagonals multiply.
    CholAdd,
}

impl std::str::FromStr for TriLaw {
    type Err = Error;

    fn from_str(s: &str) -> Result<TriLaw> {
        match s {
            "prod" => Ok(TriLaw::Prod),
            "choladd" => Ok(TriLaw::CholAdd),
            _ => Err(Error::Parse { line: 0, msg: format!("unknown law {s:?}, expected prod or choladd") }),
        }
    }
}

fn same_tri(l: &LowerPosTri, k: &LowerPosTri) -> Result<()> {
    if l.field() != k.field() {
        return Err(Error::FieldMismatch);
    }
    if l.n() != k.n() {
        return Err(Error::SizeMismatch(format!("{}x{} and {}x{}", l.n(), l.n(), k.n(), k.n())));
    }
    Ok(())
}

pub fn tri_op(law: TriLaw, l: &LowerPosTri, k: &LowerPosTri) -> Result<LowerPosTri> {
    same_tri(l, k)?;
    let f = l.field();
    let (a, b) = (l.as_matrix(), k.as_matrix());
    let out = match law {
        TriLaw::Prod => a.mul(b)?,
        TriLaw::CholAdd => Matrix::from_fn(f, l.n(), l.n(), |r, c| match r.cmp(&c) {
            std::cmp::Ordering::Less => Elem::ZERO,
            std::cmp::Ordering::Equal => f.mul(a.get(r, r), b.get(r, r)),
            std::cmp::Ordering::Greater => f.add(a.get(r, c), b.get(r, c)),
        }),
    };
    Ok(LowerPosTri::new_unchecked(out))
}

pub fn tri_inv(law: TriLaw, l: &LowerPosTri) -> LowerPosTri {
    let f = l.field();
    let a = l.as_matrix();
    let out = match law {
        TriLaw::Prod => a.inverse().expect("positive diagonal makes L invertible"),
        TriLaw::CholAdd => Matrix::from_fn(f, l.n(), l.n(), |r, c| match r.cmp(&c) {
            std::cmp::Ordering::Less => Elem::ZERO,
            std::cmp::Ordering::Equal => f.inv(a.get(r, r)).expect("positive diagonal is nonzero"),
            std::cmp::Ordering::Greater => f.neg(a.get(r, c)),
        }),
    };
    LowerPosTri::new_unchecked(out)
}

/// The transported laws need the canonical anchors `diag(+-1 products)`,
/// which exist with unique factorizations on definite fields and, trivially,
/// in characteristic 2.
fn require_group_field(field: &Field) -> Result<()> {
    match field.class() {
        FieldClass::NonDefinite => Err(Error::NonDefiniteField { q: field.order() }),
        _ => Ok(()),
    }
}

/// Cholesky coordinates against the canonical anchor of the detected cone.
fn coords(a: &SymMatrix) -> Result<(LowerPosTri, SignPattern)> {
    require_group_field(a.field())?;
    let eps = sign_pattern_lpm(a)?;
    let fact = factor(a, &canonical_anchor(a.field(), &eps))?;
    Ok((fact.l, eps))
}

/// `A [] B = (L o K) (D_eps D_eps') (L o K)^T` for `A = L D_eps L^T`,
/// `B = K D_eps' K^T`.
pub fn boxdot(law: TriLaw, a: &SymMatrix, b: &SymMatrix) -> Result<SymMatrix> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    let (l, eps) = coords(a)?;
    let (k, eps2) = coords(b)?;
    let f = a.field();
    let d = canonical_anchor(f, &eps).as_matrix().mul(canonical_anchor(f, &eps2).as_matrix())?;
    let d = SymMatrix::new(d)?;
    let prod = eps.product(&eps2);
    assert_eq!(d, canonical_anchor(f, &prod), "product of canonical anchors is the anchor of the product pattern");
    psi(&d, &tri_op(law, &l, &k)?)
}

/// `L^{-1} D_eps L^{-T}` with the law's inverse.
pub fn boxdot_inverse(law: TriLaw, a: &SymMatrix) -> Result<SymMatrix> {
    let (l, eps) = coords(a)?;
    psi(&canonical_anchor(a.field(), &eps), &tri_inv(law, &l))
}

/// `A * B = (L o K) D_eps (L o K)^T` inside the single cone `LPM_n(eps)`.
pub fn circledast(law: TriLaw, a: &SymMatrix, b: &SymMatrix, eps: &SignPattern) -> Result<SymMatrix> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    let l = cone_coords(a, eps)?;
    let k = cone_coords(b, eps)?;
    psi(&canonical_anchor(a.field(), eps), &tri_op(law, &l, &k)?)
}

pub fn circledast_inverse(law: TriLaw, a: &SymMatrix, eps: &SignPattern) -> Result<SymMatrix> {
    let l = cone_coords(a, eps)?;
    psi(&canonical_anchor(a.field(), eps), &tri_inv(law, &l))
}

fn cone_coords(a: &SymMatrix, eps: &SignPattern) -> Result<LowerPosTri> {
    require_group_field(a.field())?;
    if eps.len() != a.n() {
        return Err(Error::SizeMismatch(format!("pattern of length {} for a {}x{} matrix", eps.len(), a.n(), a.n())));
    }
    let eps = if a.field().p() == 2 { SignPattern::all_plus(eps.len()) } else { eps.clone() };
    Ok(factor(a, &canonical_anchor(a.field(), &eps))?.l)
}

/// Every `n x n` lower triangular matrix with positive diagonal, in
/// increasing row-major code order.
pub fn all_lower_pos_tri(field: &Field, n: usize) -> Vec<LowerPosTri> {
    let pos: Vec<Elem> = field.elements().filter(|&e| field.is_positive(e)).collect();
    let all: Vec<Elem> = field.elements().collect();
    let mut slots: Vec<(usize, usize, &[Elem])> = Vec::new();
    for r in 0..n {
        for c in 0..=r {
            slots.push((r, c, if r == c { &pos } else { &all }));
        }
    }
    let mut out = Vec::new();
    let mut digits = vec![0usize; slots.len()];
    loop {
        let mut m = Matrix::zeros(field, n, n);
        for (&(r, c, vals), &d) in slots.iter().zip(&digits) {
            m.set(r, c, vals[d]);
        }
        out.push(LowerPosTri::new_unchecked(m));
        let mut i = slots.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < slots[i].2.len() {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// Every member of `LPM_n`, in enumeration order.
pub fn all_lpm(field: &Field, n: usize, budget: u64) -> Result<Vec<SymMatrix>> {
    Ok(enumerate_sym(field, n, budget)?.filter(|a| sign_pattern_lpm(a).is_ok()).collect())
}

/// Every member of `LPM_n(eps)`, in enumeration order.
pub fn all_in_cone(field: &Field, eps: &SignPattern, budget: u64) -> Result<Vec<SymMatrix>> {
    let eps = if field.p() == 2 { SignPattern::all_plus(eps.len()) } else { eps.clone() };
    Ok(enumerate_sym(field, eps.len(), budget)?.filter(|a| sign_pattern_lpm(a).is_ok_and(|s| s == eps)).collect())
}

/// Multiplication table of a finite set under a binary operation.
///
/// `table[i * order + j]` is the index of `e_i . e_j`, or `None` when the
/// product fails or falls outside the set.
#[derive(Clone, Debug)]
pub struct CayleyTable {
    pub order: usize,
    pub table: Vec<Option<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroupAxioms {
    pub closure: bool,
    pub associativity: bool,
    pub identity: Option<usize>,
    pub inverses: bool,
    pub abelian: bool,
}

impl GroupAxioms {
    pub fn is_group(&self) -> bool {
        self.closure && self.associativity && self.identity.is_some() && self.inverses
    }
}

impl CayleyTable {
    /// Builds the table, splitting rows across threads.
    pub fn from_elements<T, K, O>(elements: &[T], key: K, op: O) -> CayleyTable
    where
        T: Sync,
        K: Fn(&T) -> Vec<u32> + Sync,
        O: Fn(&T, &T) -> Result<T> + Sync,
    {
        let order = elements.len();
        let index: HashMap<Vec<u32>, usize> = elements.iter().enumerate().map(|(i, e)| (key(e), i)).collect();
        let workers = std::thread::available_parallelism().map_or(1, |w| w.get()).min(order.max(1));
        let chunk = order.div_ceil(workers.max(1)).max(1);
        let (index, key, op) = (&index, &key, &op);
        let table = std::thread::scope(|s| {
            let handles: Vec<_> = (0..order)
                .step_by(chunk)
                .map(|lo| {
                    s.spawn(move || {
                        let mut rows = Vec::with_capacity(chunk * order);
                        for a in &elements[lo..(lo + chunk).min(order)] {
                            for b in elements {
                                rows.push(op(a, b).ok().and_then(|c| index.get(&key(&c)).copied()));
                            }
                        }
                        rows
                    })
                })
                .collect();
            handles.into_iter().flat_map(|h| h.join().expect("cayley worker panicked")).collect()
        });
        CayleyTable { order, table }
    }

    pub fn get(&self, i: usize, j: usize) -> Option<usize> {
        self.table[i * self.order + j]
    }

    pub fn check_group_axioms(&self) -> GroupAxioms {
        let n = self.order;
        let closure = self.table.iter().all(Option::is_some);
        if !closure {
            return GroupAxioms { closure, associativity: false, identity: None, inverses: false, abelian: false };
        }
        let t = |i: usize, j: usize| self.table[i * n + j].unwrap();
        let associativity = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| t(t(a, b), c) == t(a, t(b, c)))));
        let identity = (0..n).find(|&e| (0..n).all(|a| t(e, a) == a && t(a, e) == a));
        let inverses = identity.is_some_and(|e| (0..n).all(|a| (0..n).any(|b| t(a, b) == e && t(b, a) == e)));
        let abelian = (0..n).all(|a| (0..n).all(|b| t(a, b) == t(b, a)));
        GroupAxioms { closure, associativity, identity, inverses, abelian }
    }

    /// First `(i, j)` in row-major order with `e_i e_j != e_j e_i`.
    pub fn noncommuting_pair(&self) -> Option<(usize, usize)> {
        let n = self.order;
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| self.get(i, j) != self.get(j, i))
    }

    /// One row per element, entries are element indices (`-` for a product
    /// outside the set).
    pub fn render(&self) -> String {
        let width = self.order.to_string().len().max(1) + 1;
        let mut out = String::new();
        for i in 0..self.order {
            for j in 0..self.order {
                let cell = self.get(i, j).map_or("-".to_string(), |v| v.to_string());
                write!(out, "{cell:>width$}").unwrap();
            }
            out.push('\n');
        }
        out
    }
}

pub fn tri_key(l: &LowerPosTri) -> Vec<u32> {
    l.as_matrix().codes()
}

pub fn sym_key(a: &SymMatrix) -> Vec<u32> {
    a.codes()
}
