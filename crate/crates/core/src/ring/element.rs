use std::fmt;

use serde_json::Value;

/// Canonical value inside one [`FiniteRing`](super::FiniteRing).
///
/// The variant mirrors the constructor of the owning ring. Every element has
/// exactly one representation, so structural equality is ring equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingElement {
    /// Residue in `[0, n)` of `Zmod(n)`.
    Residue(u64),
    /// Coefficients over `Z/p^m`, constant term first, of an element of a
    /// Galois ring (or field, with `m = 1`).
    Coeffs(Vec<u64>),
    /// Row-major `d x d` entries; upper triangular rings keep explicit zeros
    /// below the diagonal.
    Matrix(Vec<RingElement>),
    /// Coefficient of `x^j` at slot `j` of a truncated polynomial.
    Trunc(Vec<RingElement>),
    /// Components of a product ring.
    Tuple(Vec<RingElement>),
}

impl RingElement {
    /// JSON rendering: residues as numbers, everything else as (nested) lists,
    /// matrices row-major.
    pub fn to_json(&self) -> Value {
        match self {
            RingElement::Residue(r) => Value::from(*r),
            RingElement::Coeffs(c) => Value::from(c.clone()),
            RingElement::Matrix(entries) => {
                let d = (entries.len() as f64).sqrt().round() as usize;
                Value::Array(
                    entries
                        .chunks(d)
                        .map(|row| Value::Array(row.iter().map(Self::to_json).collect()))
                        .collect(),
                )
            }
            RingElement::Trunc(xs) | RingElement::Tuple(xs) => {
                Value::Array(xs.iter().map(Self::to_json).collect())
            }
        }
    }
}

/// `sum c_i var^i`, highest power first; `terms` holds rendered `c_i`.
fn polynomial(terms: &[String], var: &str) -> String {
    let mut out = Vec::new();
    for (i, c) in terms.iter().enumerate().rev() {
        if c == "0" {
            continue;
        }
        let power = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        out.push(match (i, c.as_str()) {
            (0, _) => c.clone(),
            (_, "1") => power,
            _ if c.contains(' ') => format!("({c}){power}"),
            _ => format!("{c}{power}"),
        });
    }
    if out.is_empty() {
        "0".into()
    } else {
        out.join(" + ")
    }
}

/// Human rendering: Galois elements as polynomials in `y`, truncated
/// polynomials in `x`, matrices as nested rows, products as tuples.
impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let all = |xs: &[RingElement]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        match self {
            RingElement::Residue(r) => write!(f, "{r}"),
            RingElement::Coeffs(c) => {
                let terms: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                write!(f, "{}", polynomial(&terms, "y"))
            }
            RingElement::Matrix(entries) => {
                let d = (entries.len() as f64).sqrt().round() as usize;
                let rows: Vec<String> = entries
                    .chunks(d.max(1))
                    .map(|row| format!("[{}]", all(row).join(", ")))
                    .collect();
                write!(f, "[{}]", rows.join(", "))
            }
            RingElement::Trunc(xs) => write!(f, "{}", polynomial(&all(xs), "x")),
            RingElement::Tuple(xs) => write!(f, "({})", all(xs).join(", ")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_examples() {
        let c = |v: &[u64]| RingElement::Coeffs(v.to_vec());
        assert_eq!(c(&[1]).to_string(), "1");
        assert_eq!(c(&[1, 1]).to_string(), "y + 1");
        assert_eq!(c(&[0, 2, 3]).to_string(), "3y^2 + 2y");
        assert_eq!(c(&[0, 0]).to_string(), "0");
        let t = RingElement::Trunc(vec![c(&[1]), c(&[1, 1])]);
        assert_eq!(t.to_string(), "(y + 1)x + 1");
        let m = RingElement::Matrix(vec![c(&[1]), c(&[0]), c(&[0]), c(&[1])]);
        assert_eq!(m.to_string(), "[[1, 0], [0, 1]]");
        let p = RingElement::Tuple(vec![RingElement::Residue(2), c(&[0, 1])]);
        assert_eq!(p.to_string(), "(2, y)");
    }
}
