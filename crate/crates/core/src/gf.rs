//! Arithmetic in the finite field `F_{p^k}`.
//!
//! Elements are stored by their canonical integer code: the coefficient vector
//! `(c_0, .., c_{k-1})` of the polynomial representative, read as a base-`p`
//! number with the constant term least significant. For `k = 1` the code is the
//! residue itself.
//!
//! Small fields (`q <= TABLE_LIMIT`) precompute full addition and
//! multiplication tables at construction; larger fields fall back to
//! polynomial arithmetic on the digit vectors.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported extension degree.
pub const K_MAX: u32 = 4;

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 20;

const TABLE_LIMIT: u32 = 256;

/// An element of a finite field, identified by its canonical code.
///
/// An `Elem` does not remember its field; every operation goes through a
/// [`Field`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Elem(pub(crate) u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn code(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Arithmetic type of a field as far as square roots are concerned.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldClass {
    /// `p = 2`: every nonzero element is a square with a unique square root.
    EvenChar,
    /// `q = 3 (mod 4)`: `-1` is a non-square.
    Definite,
    /// `q = 1 (mod 4)`: `-1` is a square.
    NonDefinite,
}

impl FieldClass {
    /// Whether the positive square root, and hence the Cholesky factorization,
    /// is unique.
    pub fn admits_unique_sqrt(self) -> bool {
        !matches!(self, FieldClass::NonDefinite)
    }
}

impl fmt::Display for FieldClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FieldClass::EvenChar => "even-characteristic",
            FieldClass::Definite => "definite",
            FieldClass::NonDefinite => "non-definite",
        })
    }
}

struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

struct Inner {
    p: u32,
    k: u32,
    q: u32,
    /// Monic modulus, `k + 1` coefficients, constant term first.
    modulus: Vec<u32>,
    /// Quadratic character of every element, indexed by code.
    chi: Vec<i8>,
    tables: Option<Tables>,
}

/// The finite field `F_{p^k}` together with a fixed irreducible modulus.
///
/// Cloning is cheap; all clones share the same precomputed data.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.k == other.0.k && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

/// Orders by `(p, k, modulus)`.
impl PartialOrd for Field {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Field {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.0.p, self.0.k, &self.0.modulus).cmp(&(other.0.p, other.0.k, &other.0.modulus))
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self)
    }
}

/// `p^k modulus c_0,c_1,..,c_k`
impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs: Vec<String> = self.0.modulus.iter().map(|c| c.to_string()).collect();
        write!(f, "{}^{} modulus {}", self.0.p, self.0.k, coeffs.join(","))
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn checked_order(p: u64, k: u32) -> Result<u32> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k == 0 || k > K_MAX {
        return Err(Error::DegreeUnsupported { k, max: K_MAX });
    }
    match p.checked_pow(k) {
        Some(q) if q <= MAX_ORDER => Ok(q as u32),
        _ => Err(Error::FieldTooLarge { p, k, max: MAX_ORDER }),
    }
}

// Polynomials over F_p as coefficient vectors, constant term first.

fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = mod_pow(m[dm] as u64, (p - 2) as u64, p as u64);
    while r.len() > dm {
        let top = r.len() - 1;
        let factor = (r[top] as u64 * lead_inv) % p as u64;
        let shift = top - dm;
        for (i, &mi) in m.iter().enumerate() {
            let sub = (factor * mi as u64) % p as u64;
            r[shift + i] = ((r[shift + i] as u64 + p as u64 - sub) % p as u64) as u32;
        }
        poly_trim(&mut r);
    }
    r
}

fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// Irreducibility of a monic polynomial of degree at most `K_MAX` by trial
/// division with every monic polynomial of degree up to half its degree.
fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    if deg <= 1 {
        return deg == 1;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut divisor = digits_of(code, p, d);
            divisor.push(1);
            if poly_rem(poly, &divisor, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn digits_of(mut code: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((code % p as u64) as u32);
        code /= p as u64;
    }
    out
}

impl Field {
    /// Builds `F_{p^k}` with the first irreducible monic modulus in scan order.
    ///
    /// Candidates `x^k + c_{k-1} x^{k-1} + .. + c_0` are scanned in increasing
    /// order of `sum c_i p^i`. For `k = 1` the modulus is `x`.
    pub fn new(p: u64, k: u32) -> Result<Field> {
        let q = checked_order(p, k)?;
        let p32 = p as u32;
        if k == 1 {
            return Ok(Field::build(p32, 1, q, vec![0, 1]));
        }
        let count = (p32 as u64).pow(k);
        for code in 0..count {
            let mut poly = digits_of(code, p32, k as usize);
            poly.push(1);
            if is_irreducible(&poly, p32) {
                return Ok(Field::build(p32, k, q, poly));
            }
        }
        unreachable!("an irreducible polynomial of every degree exists")
    }

    /// Builds `F_{p^k}` from an explicit monic modulus, constant term first.
    pub fn with_modulus(p: u64, modulus: &[u32]) -> Result<Field> {
        if modulus.len() < 2 {
            return Err(Error::InvalidModulus("degree must be at least 1".into()));
        }
        let k = (modulus.len() - 1) as u32;
        let q = checked_order(p, k)?;
        let p32 = p as u32;
        if let Some(&c) = modulus.iter().find(|&&c| c >= p32) {
            return Err(Error::InvalidModulus(format!("coefficient {c} not reduced mod {p}")));
        }
        if modulus[k as usize] != 1 {
            return Err(Error::InvalidModulus("modulus is not monic".into()));
        }
        if k == 1 {
            // Elements are plain residues whatever the constant term.
            return Ok(Field::build(p32, 1, q, vec![0, 1]));
        }
        if !is_irreducible(modulus, p32) {
            return Err(Error::InvalidModulus("modulus is reducible".into()));
        }
        Ok(Field::build(p32, k, q, modulus.to_vec()))
    }

    fn build(p: u32, k: u32, q: u32, modulus: Vec<u32>) -> Field {
        let bare = Field(Arc::new(Inner { p, k, q, modulus, chi: Vec::new(), tables: None }));
        let chi = (0..q).map(|c| bare.chi_slow(Elem(c))).collect();
        let tables = (q <= TABLE_LIMIT).then(|| {
            let qs = q as usize;
            let mut add = vec![0; qs * qs];
            let mut mul = vec![0; qs * qs];
            for a in 0..q {
                for b in 0..q {
                    add[a as usize * qs + b as usize] = bare.add_slow(Elem(a), Elem(b)).0;
                    mul[a as usize * qs + b as usize] = bare.mul_slow(Elem(a), Elem(b)).0;
                }
            }
            let neg = (0..q).map(|a| bare.neg_slow(Elem(a)).0).collect();
            let inv = (0..q)
                .map(|a| if a == 0 { 0 } else { bare.pow_slow(Elem(a), q as u64 - 2).0 })
                .collect();
            Tables { add, mul, neg, inv }
        });
        let inner = Arc::into_inner(bare.0).expect("sole owner during construction");
        Field(Arc::new(Inner { chi, tables, ..inner }))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn k(&self) -> u32 {
        self.0.k
    }

    /// The field order `q = p^k`.
    pub fn order(&self) -> u32 {
        self.0.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn class(&self) -> FieldClass {
        classify(self)
    }

    /// The element with the given canonical code.
    pub fn elem(&self, code: u64) -> Result<Elem> {
        if code < self.0.q as u64 {
            Ok(Elem(code as u32))
        } else {
            Err(Error::ElementOutOfRange { code, q: self.0.q })
        }
    }

    /// The image of an integer under `Z -> F_p -> F_q`.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.0.p as i64) as u32)
    }

    /// All elements in increasing code order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.0.q).map(Elem)
    }

    /// Coefficients `(c_0, .., c_{k-1})` of the polynomial representative.
    pub fn coeffs(&self, a: Elem) -> Vec<u32> {
        digits_of(a.0 as u64, self.0.p, self.0.k as usize)
    }

    /// Element from a coefficient vector (constant term first); extra
    /// coefficients beyond degree `k - 1` are reduced by the modulus.
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Elem {
        let p = self.0.p;
        let reduced: Vec<u32> = coeffs.iter().map(|c| c % p).collect();
        let r = if self.0.k == 1 {
            vec![reduced.first().copied().unwrap_or(0)]
        } else {
            poly_rem(&reduced, &self.0.modulus, p)
        };
        self.pack(&r)
    }

    fn pack(&self, digits: &[u32]) -> Elem {
        let p = self.0.p as u64;
        let code = digits.iter().rev().fold(0u64, |acc, &d| acc * p + d as u64);
        Elem(code as u32)
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    /// The field element `-1`.
    pub fn minus_one(&self) -> Elem {
        self.neg(Elem::ONE)
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.0.tables {
            Some(t) => Elem(t.add[a.0 as usize * self.0.q as usize + b.0 as usize]),
            None => self.add_slow(a, b),
        }
    }

    pub fn neg(&self, a: Elem) -> Elem {
        match &self.0.tables {
            Some(t) => Elem(t.neg[a.0 as usize]),
            None => self.neg_slow(a),
        }
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.0.tables {
            Some(t) => Elem(t.mul[a.0 as usize * self.0.q as usize + b.0 as usize]),
            None => self.mul_slow(a, b),
        }
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.0.tables {
            Some(t) => Elem(t.inv[a.0 as usize]),
            None => self.pow_slow(a, self.0.q as u64 - 2),
        })
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` by square-and-multiply; `0^0 = 1`.
    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = Elem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Quadratic character: `0` at zero, `+1` on nonzero squares, `-1`
    /// otherwise. In characteristic 2 every nonzero element is a square.
    pub fn chi(&self, a: Elem) -> i8 {
        self.0.chi[a.0 as usize]
    }

    pub fn is_positive(&self, a: Elem) -> bool {
        self.chi(a) == 1
    }

    /// `a^(p^ell)`. `ell` is taken modulo `k` since `Frob^k` is the identity.
    pub fn frobenius(&self, a: Elem, ell: u32) -> Elem {
        let mut x = a;
        for _ in 0..ell % self.0.k {
            x = self.pow(x, self.0.p as u64);
        }
        x
    }

    /// The unique square root of `a` that is itself positive.
    ///
    /// Defined on definite fields (`b = a^((q+1)/4)`, negated if it is not a
    /// square) and in characteristic 2 (`b = a^(q/2)`). Zero maps to zero.
    pub fn positive_sqrt(&self, a: Elem) -> Result<Elem> {
        let q = self.0.q as u64;
        match self.class() {
            FieldClass::NonDefinite => Err(Error::NonDefiniteField { q: self.0.q }),
            FieldClass::EvenChar => Ok(self.pow(a, q / 2)),
            FieldClass::Definite => {
                if a.is_zero() {
                    return Ok(a);
                }
                if self.chi(a) != 1 {
                    return Err(Error::NotASquare);
                }
                let r = self.pow(a, (q + 1) / 4);
                Ok(if self.chi(r) == 1 { r } else { self.neg(r) })
            }
        }
    }

    // Table-free arithmetic on digit vectors.

    fn add_slow(&self, a: Elem, b: Elem) -> Elem {
        let p = self.0.p;
        let da = self.coeffs(a);
        let db = self.coeffs(b);
        let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
        self.pack(&sum)
    }

    fn neg_slow(&self, a: Elem) -> Elem {
        let p = self.0.p;
        let d: Vec<u32> = self.coeffs(a).iter().map(|&x| (p - x) % p).collect();
        self.pack(&d)
    }

    fn mul_slow(&self, a: Elem, b: Elem) -> Elem {
        let p = self.0.p as u64;
        let k = self.0.k as usize;
        if k == 1 {
            return Elem(((a.0 as u64 * b.0 as u64) % p) as u32);
        }
        let da = self.coeffs(a);
        let db = self.coeffs(b);
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
        let r = poly_rem(&prod, &self.0.modulus, self.0.p);
        self.pack(&r)
    }

    fn pow_slow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = Elem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    fn chi_slow(&self, a: Elem) -> i8 {
        if a.is_zero() {
            return 0;
        }
        if self.0.p == 2 {
            return 1;
        }
        let e = self.pow_slow(a, (self.0.q as u64 - 1) / 2);
        if e == Elem::ONE {
            1
        } else {
            -1
        }
    }

    #[cfg(test)]
    pub(crate) fn mul_untabled(&self, a: Elem, b: Elem) -> Elem {
        self.mul_slow(a, b)
    }

    #[cfg(test)]
    pub(crate) fn add_untabled(&self, a: Elem, b: Elem) -> Elem {
        self.add_slow(a, b)
    }
}

/// `EvenChar` iff `p = 2`; `Definite` iff `q = 3 (mod 4)`; otherwise
/// `NonDefinite`.
pub fn classify(field: &Field) -> FieldClass {
    if field.p() == 2 {
        FieldClass::EvenChar
    } else if field.order() % 4 == 3 {
        FieldClass::Definite
    } else {
        FieldClass::NonDefinite
    }
}
