//! Plain-text matrix format.
//!
//! ```text
//! p k n
//! c_0 c_1 .. c_k        (modulus, only when k > 1)
//! a_11 a_12 .. a_1n
//! ..
//! a_n1 a_n2 .. a_nn
//! ```
//!
//! Entries are canonical element codes `sum c_i p^i` in decimal. Output uses
//! single spaces and a trailing newline; input tolerates extra whitespace,
//! blank lines and `#` comments.

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::matfq::{Matrix, SymMatrix};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn numbers(line_no: usize, text: &str) -> Result<Vec<u64>> {
    text.split_whitespace()
        .map(|t| t.parse::<u64>().map_err(|_| parse_err(line_no, format!("not a non-negative integer: {t:?}"))))
        .collect()
}

/// Parses a square matrix in the text format.
pub fn parse_matrix(text: &str) -> Result<Matrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hl, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let head = numbers(hl, header)?;
    let [p, k, n] = head[..] else {
        return Err(parse_err(hl, "header must be \"p k n\""));
    };
    if k == 0 || k > u32::MAX as u64 {
        return Err(parse_err(hl, format!("bad extension degree {k}")));
    }
    let field = if k == 1 {
        Field::new(p, 1)?
    } else {
        let (ml, mtext) = lines.next().ok_or_else(|| parse_err(hl + 1, "missing modulus line"))?;
        let modulus = numbers(ml, mtext)?;
        if modulus.len() as u64 != k + 1 {
            return Err(parse_err(ml, format!("modulus needs {} coefficients, got {}", k + 1, modulus.len())));
        }
        let modulus: Vec<u32> = modulus
            .iter()
            .map(|&c| u32::try_from(c).map_err(|_| parse_err(ml, format!("coefficient {c} too large"))))
            .collect::<Result<_>>()?;
        Field::with_modulus(p, &modulus)?
    };
    let n = n as usize;
    let mut codes = Vec::with_capacity(n * n);
    for row in 0..n {
        let (rl, rtext) = lines.next().ok_or_else(|| parse_err(0, format!("expected {n} rows, got {row}")))?;
        let vals = numbers(rl, rtext)?;
        if vals.len() != n {
            return Err(parse_err(rl, format!("expected {n} entries, got {}", vals.len())));
        }
        codes.extend(vals);
    }
    if let Some((xl, _)) = lines.next() {
        return Err(parse_err(xl, "trailing data after matrix"));
    }
    Matrix::from_codes(&field, n, n, &codes)
}

/// Parses and checks symmetry.
pub fn parse_sym(text: &str) -> Result<SymMatrix> {
    SymMatrix::new(parse_matrix(text)?)
}

/// Writes a square matrix in the text format.
pub fn format_matrix(m: &Matrix) -> String {
    let f = m.field();
    let mut out = format!("{} {} {}\n", f.p(), f.k(), m.rows());
    if f.k() > 1 {
        let coeffs: Vec<String> = f.modulus().iter().map(|c| c.to_string()).collect();
        out.push_str(&coeffs.join(" "));
        out.push('\n');
    }
    for r in 0..m.rows() {
        let row: Vec<String> = m.row(r).iter().map(|e| e.code().to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// `p^k` followed by the modulus coefficients.
pub fn format_field(f: &Field) -> String {
    let coeffs: Vec<String> = f.modulus().iter().map(|c| c.to_string()).collect();
    format!("{}^{} [{}]", f.p(), f.k(), coeffs.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn prime_field_round_trip() {
        let text = "7 1 2\n1 0\n0 3\n";
        let m = parse_matrix(text).unwrap();
        assert_eq!(m.codes(), vec![1, 0, 0, 3]);
        assert_eq!(format_matrix(&m), text);
    }

    #[test]
    fn extension_field_round_trip() {
        let text = "3 2 2\n1 0 1\n7 1\n1 8\n";
        let m = parse_matrix(text).unwrap();
        assert_eq!(m.field(), &Field::new(3, 2).unwrap());
        assert_eq!(format_matrix(&m), text);
        assert_eq!(format_field(m.field()), "3^2 [1,0,1]");
    }

    #[test]
    fn lenient_input() {
        let m = parse_matrix("# comment\n  5 1 1  \n\n 4 \n").unwrap();
        assert_eq!(m.codes(), vec![4]);
    }

    #[test]
    fn malformed_input() {
        for bad in [
            "",
            "7 1",
            "7 1 2\n1 0\n",
            "7 1 2\n1 0 0\n0 3\n",
            "7 1 2\n1 x\n0 3\n",
            "7 1 1\n9\n",
            "6 1 1\n1\n",
            "3 2 1\n1 0\n1\n",
            "3 2 1\n1 0 0\n1\n",
            "7 1 1\n1\n2\n",
        ] {
            assert!(parse_matrix(bad).is_err(), "{bad:?}");
        }
        assert!(matches!(parse_sym("7 1 2\n1 2\n0 3\n"), Err(Error::NotSymmetric { .. })));
    }

    #[test]
    fn random_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (p, k) in [(2, 1), (3, 1), (2, 2), (3, 3), (7, 1)] {
            let f = Field::new(p, k).unwrap();
            for n in 1..5 {
                let a = sample::sym(&mut rng, &f, n);
                assert_eq!(&parse_matrix(&format_matrix(&a)).unwrap(), a.as_matrix());
            }
        }
    }
}
