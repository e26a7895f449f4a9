use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::Poly;
use crate::error::{Error, Result};
use crate::ntheory::prime_power;
use crate::ring::{FiniteRing, RingElement, RingSpec};

/// `(T^q - T)^a` over `ring`, which must have `q` dividing into its
/// characteristic structure (normally `GF(q)` or a ring containing it).
pub fn artin_schreier_power(ring: &Arc<FiniteRing>, q: u64, a: u64) -> Poly {
    let mut base = vec![ring.zero(); q as usize + 1];
    base[1] = ring.from_int(-1);
    base[q as usize] = ring.one();
    Poly::from_trusted(ring, base).pow(a)
}

/// Expands `sum_a c_a (T^q - T)^a` into a dense polynomial over `GF(q)`.
pub fn expand_in_artin_schreier(q: u64, terms: &BTreeMap<u64, u64>) -> Result<Poly> {
    let ring = FiniteRing::build_uncapped(&RingSpec::Gf(q))?;
    Ok(expand_over(&ring, q, terms))
}

/// Like [`expand_in_artin_schreier`] over an arbitrary ring, coefficients
/// mapped through `Z -> R`.
pub(crate) fn expand_over(ring: &Arc<FiniteRing>, q: u64, terms: &BTreeMap<u64, u64>) -> Poly {
    terms.iter().fold(Poly::zero(ring), |acc, (&a, &c)| {
        let term = artin_schreier_power(ring, q, a).mul_int(c);
        acc.add_trusted(&term)
    })
}

/// `sum_a c_a U^a` with `U = (T^q - T)^{-1}` and coefficients in F_p.
///
/// Kept symbolic; compare by coefficients or evaluate in an extension field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentInU {
    p: u64,
    q: u64,
    terms: BTreeMap<u64, u64>,
}

impl LaurentInU {
    /// Reduces coefficients mod p and drops zeros. Exponents must be positive.
    pub fn new(q: u64, terms: impl IntoIterator<Item = (u64, u64)>) -> Result<Self> {
        let (p, _) = prime_power(q)
            .ok_or_else(|| Error::InvalidArgument(format!("{q} is not a prime power")))?;
        let mut out = BTreeMap::new();
        for (a, c) in terms {
            if a == 0 {
                return Err(Error::InvalidArgument("exponents of U must be positive".into()));
            }
            let slot = out.entry(a).or_insert(0);
            *slot = (*slot + c % p) % p;
        }
        out.retain(|_, c| *c != 0);
        Ok(LaurentInU { p, q, terms: out })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn terms(&self) -> &BTreeMap<u64, u64> {
        &self.terms
    }

    /// Value at `t` in a finite field containing `GF(q)`, given `t^q != t`.
    pub fn eval(&self, field: &FiniteRing, t: &RingElement) -> Result<RingElement> {
        field.check_element(t)?;
        let as_value = field.sub(&field.pow(t, self.q), t);
        if field.is_zero(&as_value) {
            return Err(Error::InvalidArgument(format!(
                "{t} lies in GF({}); (T^q - T)^-1 is undefined there",
                self.q
            )));
        }
        let u = field_inverse(field, &as_value)?;
        Ok(self.terms.iter().fold(field.zero(), |acc, (&a, &c)| {
            field.add(&acc, &field.mul_int(&field.pow(&u, a), c))
        }))
    }
}

/// Inverse in a finite field via `a^(|F| - 2)`.
pub(crate) fn field_inverse(field: &FiniteRing, a: &RingElement) -> Result<RingElement> {
    let is_field = matches!(field.spec(), RingSpec::Gf(_))
        || matches!(field.spec(), RingSpec::Zmod(n) if crate::ntheory::is_prime(*n));
    if !is_field {
        return Err(Error::Unsupported(format!("inversion in {}", field.spec())));
    }
    if field.is_zero(a) {
        return Err(Error::InvalidArgument("zero is not invertible".into()));
    }
    Ok(field.pow(a, (field.order() - 2) as u64))
}

impl fmt::Display for LaurentInU {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&a, &c)| {
                let u = if a == 1 { "U".to_string() } else { format!("U^{a}") };
                if c == 1 {
                    u
                } else {
                    format!("{c}*{u}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn artin_schreier_expansion() {
        let f2 = FiniteRing::parse("GF(2)").unwrap();
        let p = expand_in_artin_schreier(2, &BTreeMap::from([(1, 1), (0, 1)])).unwrap();
        assert_eq!(p, Poly::from_ints(&f2, &[1, 1, 1]));

        let f3 = FiniteRing::parse("GF(3)").unwrap();
        let p = expand_in_artin_schreier(3, &BTreeMap::from([(1, 2)])).unwrap();
        assert_eq!(p, Poly::from_ints(&f3, &[0, 1, 0, 2]));

        assert!(expand_in_artin_schreier(2, &BTreeMap::new()).unwrap().is_zero());
    }

    #[test]
    fn laurent_canonical_form() {
        let l = LaurentInU::new(3, [(1, 5), (2, 3)]).unwrap();
        assert_eq!(l.terms(), &BTreeMap::from([(1, 2)]));
        assert!(LaurentInU::new(3, [(0, 1)]).is_err());
        assert_eq!(l.to_string(), "2*U");
    }
}
