//! Dense matrices over a [`Field`].

use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[{}]", self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|e| e.to_string()).collect();
            write!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field: field.clone(), rows, cols, data: vec![Elem::ZERO; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        Matrix::diagonal(field, &vec![Elem::ONE; n])
    }

    pub fn diagonal(field: &Field, diag: &[Elem]) -> Matrix {
        let n = diag.len();
        let mut m = Matrix::zeros(field, n, n);
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    pub fn from_fn(field: &Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Elem) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { field: field.clone(), rows, cols, data }
    }

    /// Builds a matrix from row-major canonical element codes.
    pub fn from_codes(field: &Field, rows: usize, cols: usize, codes: &[u64]) -> Result<Matrix> {
        if codes.len() != rows * cols {
            return Err(Error::SizeMismatch(format!(
                "{} codes for a {rows}x{cols} matrix",
                codes.len()
            )));
        }
        let data = codes.iter().map(|&c| field.elem(c)).collect::<Result<Vec<_>>>()?;
        Ok(Matrix { field: field.clone(), rows, cols, data })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Elem] {
        &self.data
    }

    pub fn codes(&self) -> Vec<u32> {
        self.data.iter().map(|e| e.code()).collect()
    }

    pub fn diag(&self) -> Vec<Elem> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.field, self.cols, self.rows, |r, c| self.get(c, r))
    }

    /// Applies `f` to every entry.
    pub fn map(&self, mut f: impl FnMut(Elem) -> Elem) -> Matrix {
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&e| f(e)).collect(),
        }
    }

    pub fn scale(&self, c: Elem) -> Matrix {
        let field = self.field.clone();
        self.map(|e| field.mul(c, e))
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|r| (0..r).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn is_lower_triangular(&self) -> bool {
        self.is_square() && (0..self.rows).all(|r| (r + 1..self.cols).all(|c| self.get(r, c).is_zero()))
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.is_square() && (0..self.rows).all(|r| (0..r).all(|c| self.get(r, c).is_zero()))
    }

    fn check_field(&self, other: &Matrix) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NonSquare { rows: self.rows, cols: self.cols })
        }
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        self.check_field(rhs)?;
        if self.cols != rhs.rows {
            return Err(Error::SizeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let f = &self.field;
        Ok(Matrix::from_fn(f, self.rows, rhs.cols, |r, c| {
            (0..self.cols).fold(Elem::ZERO, |acc, i| f.add(acc, f.mul(self.get(r, i), rhs.get(i, c))))
        }))
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.check_field(rhs)?;
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::SizeMismatch("cannot add matrices of different shapes".into()));
        }
        let f = &self.field;
        Ok(Matrix::from_fn(f, self.rows, self.cols, |r, c| f.add(self.get(r, c), rhs.get(r, c))))
    }

    /// `self * m * self^T`.
    pub fn congruence(&self, m: &Matrix) -> Result<Matrix> {
        self.mul(m)?.mul(&self.transpose())
    }

    /// Determinant by Gaussian elimination with first-nonzero pivoting.
    pub fn det(&self) -> Result<Elem> {
        let n = self.require_square()?;
        Ok(det_in_place(&self.field, &mut self.data.clone(), n))
    }

    pub fn inverse(&self) -> Result<Matrix> {
        let n = self.require_square()?;
        let f = &self.field;
        let w = 2 * n;
        let mut a = vec![Elem::ZERO; n * w];
        for r in 0..n {
            for c in 0..n {
                a[r * w + c] = self.get(r, c);
            }
            a[r * w + n + r] = Elem::ONE;
        }
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r * w + col].is_zero()).ok_or(Error::Singular)?;
            if pivot != col {
                for c in 0..w {
                    a.swap(pivot * w + c, col * w + c);
                }
            }
            let pinv = f.inv(a[col * w + col])?;
            for c in 0..w {
                a[col * w + c] = f.mul(a[col * w + c], pinv);
            }
            for r in 0..n {
                if r == col || a[r * w + col].is_zero() {
                    continue;
                }
                let factor = a[r * w + col];
                for c in 0..w {
                    let sub = f.mul(factor, a[col * w + c]);
                    a[r * w + c] = f.sub(a[r * w + c], sub);
                }
            }
        }
        Ok(Matrix::from_fn(f, n, n, |r, c| a[r * w + n + c]))
    }

    /// Submatrix on the given (0-based) rows and columns.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<Matrix> {
        for &i in rows {
            if i >= self.rows {
                return Err(Error::IndexOutOfRange { index: i + 1, max: self.rows });
            }
        }
        for &j in cols {
            if j >= self.cols {
                return Err(Error::IndexOutOfRange { index: j + 1, max: self.cols });
            }
        }
        Ok(Matrix::from_fn(&self.field, rows.len(), cols.len(), |r, c| self.get(rows[r], cols[c])))
    }

    /// Determinant of the submatrix on the given (0-based) index sets.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<Elem> {
        if rows.len() != cols.len() || rows.is_empty() {
            return Err(Error::SizeMismatch(format!(
                "minor needs equal nonempty index sets, got {} and {}",
                rows.len(),
                cols.len()
            )));
        }
        self.submatrix(rows, cols)?.det()
    }

    /// Determinant of the leading `k x k` block, `1 <= k <= n`.
    pub fn leading_minor(&self, k: usize) -> Result<Elem> {
        let n = self.require_square()?;
        if k == 0 || k > n {
            return Err(Error::IndexOutOfRange { index: k, max: n });
        }
        let idx: Vec<usize> = (0..k).collect();
        self.minor(&idx, &idx)
    }

    /// Determinant of the trailing `k x k` block, `1 <= k <= n`.
    pub fn trailing_minor(&self, k: usize) -> Result<Elem> {
        let n = self.require_square()?;
        if k == 0 || k > n {
            return Err(Error::IndexOutOfRange { index: k, max: n });
        }
        let idx: Vec<usize> = (n - k..n).collect();
        self.minor(&idx, &idx)
    }

    /// All leading principal minors `D_1, .., D_n` in one elimination pass
    /// without pivoting. Fails with `ZeroMinor { k }` at the first vanishing
    /// minor.
    pub fn leading_minors(&self) -> Result<Vec<Elem>> {
        let n = self.require_square()?;
        leading_minor_chain(&self.field, &mut self.data.clone(), n)
    }

    /// Rows and columns simultaneously reversed: `R A R` with `R` the
    /// reversal permutation.
    pub fn reverse(&self) -> Matrix {
        let (r0, c0) = (self.rows, self.cols);
        Matrix::from_fn(&self.field, r0, c0, |r, c| self.get(r0 - 1 - r, c0 - 1 - c))
    }
}

/// Gaussian elimination on a scratch buffer; returns the determinant.
pub(crate) fn det_in_place(f: &Field, a: &mut [Elem], n: usize) -> Elem {
    let mut det = Elem::ONE;
    let mut negate = false;
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
            return Elem::ZERO;
        };
        if pivot != col {
            for c in col..n {
                a.swap(pivot * n + c, col * n + c);
            }
            negate = !negate;
        }
        let pv = a[col * n + col];
        det = f.mul(det, pv);
        let pinv = f.inv(pv).expect("pivot is nonzero");
        for r in col + 1..n {
            let lead = a[r * n + col];
            if lead.is_zero() {
                continue;
            }
            let factor = f.mul(lead, pinv);
            for c in col..n {
                let sub = f.mul(factor, a[col * n + c]);
                a[r * n + c] = f.sub(a[r * n + c], sub);
            }
        }
    }
    if negate {
        f.neg(det)
    } else {
        det
    }
}

/// Leading principal minors via elimination without row exchanges.
///
/// Without exchanges the `k`-th pivot equals `D_k / D_{k-1}`, so the first
/// zero pivot marks the first vanishing leading minor.
pub(crate) fn leading_minor_chain(f: &Field, a: &mut [Elem], n: usize) -> Result<Vec<Elem>> {
    let mut minors = Vec::with_capacity(n);
    let mut acc = Elem::ONE;
    for col in 0..n {
        let pv = a[col * n + col];
        if pv.is_zero() {
            return Err(Error::ZeroMinor { k: col + 1 });
        }
        acc = f.mul(acc, pv);
        minors.push(acc);
        let pinv = f.inv(pv)?;
        for r in col + 1..n {
            let lead = a[r * n + col];
            if lead.is_zero() {
                continue;
            }
            let factor = f.mul(lead, pinv);
            for c in col..n {
                let sub = f.mul(factor, a[col * n + c]);
                a[r * n + c] = f.sub(a[r * n + c], sub);
            }
        }
    }
    Ok(minors)
}

/// A square matrix with `A[i][j] = A[j][i]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymMatrix(Matrix);

impl SymMatrix {
    pub fn new(m: Matrix) -> Result<SymMatrix> {
        if !m.is_square() {
            return Err(Error::NonSquare { rows: m.rows(), cols: m.cols() });
        }
        for r in 0..m.rows() {
            for c in 0..r {
                if m.get(r, c) != m.get(c, r) {
                    return Err(Error::NotSymmetric { row: r + 1, col: c + 1 });
                }
            }
        }
        Ok(SymMatrix(m))
    }

    pub fn identity(field: &Field, n: usize) -> SymMatrix {
        SymMatrix(Matrix::identity(field, n))
    }

    pub fn diagonal(field: &Field, diag: &[Elem]) -> SymMatrix {
        SymMatrix(Matrix::diagonal(field, diag))
    }

    /// Builds a symmetric matrix from its upper triangle listed row by row:
    /// `a11, a12, .., a1n, a22, .., ann`.
    pub fn from_upper(field: &Field, n: usize, upper: &[Elem]) -> SymMatrix {
        assert_eq!(upper.len(), n * (n + 1) / 2, "upper triangle length");
        let mut m = Matrix::zeros(field, n, n);
        let mut it = upper.iter();
        for r in 0..n {
            for c in r..n {
                let v = *it.next().unwrap();
                m.set(r, c, v);
                m.set(c, r, v);
            }
        }
        SymMatrix(m)
    }

    pub fn n(&self) -> usize {
        self.0.rows()
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }

    pub fn reverse(&self) -> SymMatrix {
        SymMatrix(self.0.reverse())
    }

    pub fn inverse(&self) -> Result<SymMatrix> {
        Ok(SymMatrix(self.0.inverse()?))
    }

    pub fn map(&self, f: impl FnMut(Elem) -> Elem) -> SymMatrix {
        SymMatrix(self.0.map(f))
    }

    pub fn scale(&self, c: Elem) -> SymMatrix {
        SymMatrix(self.0.scale(c))
    }

    /// `l * self * l^T`, which is again symmetric.
    pub fn congruence_by(&self, l: &Matrix) -> Result<SymMatrix> {
        Ok(SymMatrix(l.congruence(&self.0)?))
    }
}

impl Deref for SymMatrix {
    type Target = Matrix;

    fn deref(&self) -> &Matrix {
        &self.0
    }
}

impl From<SymMatrix> for Matrix {
    fn from(s: SymMatrix) -> Matrix {
        s.0
    }
}
