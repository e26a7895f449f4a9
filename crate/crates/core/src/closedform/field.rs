//! Power sums over `F_q` as polynomials in `T^q - T`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::waring::{factorial, waring_power_sum};
use crate::error::{Error, Result};
use crate::ntheory::prime_power;
use crate::poly::binomial::binomial_mod_char;
use crate::poly::laurent::expand_over;
use crate::poly::{LaurentInU, Poly};
use crate::ring::{FiniteRing, RingElement, RingSpec};

fn prime_of(q: u64) -> Result<u64> {
    prime_power(q)
        .map(|(p, _)| p)
        .ok_or_else(|| Error::InvalidArgument(format!("{q} is not a prime power")))
}

/// `(alpha + beta - 1)! k / (alpha! beta!) mod p`.
fn mixed_coefficient(alpha: u64, beta: u64, k: u64, p: u64) -> u64 {
    let num = factorial(alpha + beta - 1) * k;
    let den = factorial(alpha) * factorial(beta);
    debug_assert!((&num % &den) == BigUint::from(0u32));
    ((num / den) % p).to_u64().unwrap()
}

fn insert_mod(terms: &mut BTreeMap<u64, u64>, exponent: u64, c: u64, p: u64) {
    let slot = terms.entry(exponent).or_insert(0);
    *slot = (*slot + c % p) % p;
    if *slot == 0 {
        terms.remove(&exponent);
    }
}

/// Value of the elementary symmetric polynomial `Sigma_k` in the `q`
/// variables `T + r`, `r in F_q` (negative `k`: in their inverses).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SigmaValue {
    Zero,
    MinusOne,
    /// `T^q - T`
    ArtinSchreier,
    /// `1 / (T^q - T)`
    InverseArtinSchreier,
    /// `-1 / (T^q - T)`
    NegInverseArtinSchreier,
}

impl SigmaValue {
    /// The value as a polynomial over `ring` (characteristic `p`), if it is one.
    pub fn to_poly(self, ring: &Arc<FiniteRing>, q: u64) -> Option<Poly> {
        match self {
            SigmaValue::Zero => Some(Poly::zero(ring)),
            SigmaValue::MinusOne => Some(Poly::constant(ring, ring.from_int(-1))),
            SigmaValue::ArtinSchreier => Some(expand_over(ring, q, &BTreeMap::from([(1, 1)]))),
            _ => None,
        }
    }

    /// The value as an element of `F_p[U]`, `U = (T^q - T)^{-1}`, if it is one.
    pub fn to_laurent(self, q: u64) -> Option<LaurentInU> {
        let p = prime_power(q)?.0;
        match self {
            SigmaValue::Zero => LaurentInU::new(q, []).ok(),
            SigmaValue::InverseArtinSchreier => LaurentInU::new(q, [(1, 1)]).ok(),
            SigmaValue::NegInverseArtinSchreier => LaurentInU::new(q, [(1, p - 1)]).ok(),
            _ => None,
        }
    }
}

/// `Sigma_k` over `F_q` for `1 <= |k| <= q`.
pub fn sigma_closed_form(q: u64, k: i64) -> Result<SigmaValue> {
    prime_of(q)?;
    let qi = q as i64;
    if k == 0 || k.unsigned_abs() > q {
        return Err(Error::InvalidArgument(format!("need 1 <= |k| <= {q}, got {k}")));
    }
    Ok(match k {
        k if k == qi - 1 => SigmaValue::MinusOne,
        k if k == qi => SigmaValue::ArtinSchreier,
        -1 => SigmaValue::NegInverseArtinSchreier,
        k if k == -qi => SigmaValue::InverseArtinSchreier,
        _ => SigmaValue::Zero,
    })
}

/// `P_k` over `F_q` as `{a: c_a}` meaning `sum c_a (T^q - T)^a`:
/// `-sum_{floor(k/q) < g <= floor(k/(q-1))} C(g-1, k-(q-1)g) (T^q-T)^{k-(q-1)g}`.
pub fn power_sum_fq_terms(q: u64, k: u64) -> Result<BTreeMap<u64, u64>> {
    let p = prime_of(q)?;
    let mut terms = BTreeMap::new();
    for g in k / q + 1..=k / (q - 1) {
        let a = k - (q - 1) * g;
        let c = binomial_mod_char(g - 1, a, p);
        insert_mod(&mut terms, a, (p - c) % p, p);
    }
    Ok(terms)
}

/// `P_k` over `F_q` via the two-index form
/// `sum_{(q-1) alpha + q beta = k} (alpha+beta-1)! k / (alpha! beta!) (T^q-T)^beta`.
pub fn power_sum_fq_intermediate_terms(q: u64, k: u64) -> Result<BTreeMap<u64, u64>> {
    let p = prime_of(q)?;
    let mut terms = BTreeMap::new();
    if k == 0 {
        return Ok(terms);
    }
    for beta in 0..=k / q {
        let rest = k - q * beta;
        if !rest.is_multiple_of(q - 1) {
            continue;
        }
        let alpha = rest / (q - 1);
        insert_mod(&mut terms, beta, mixed_coefficient(alpha, beta, k, p), p);
    }
    Ok(terms)
}

/// `P_k` over `F_q` by substituting the `Sigma` table into Waring's formula
/// in `q` variables; terms with a positive power of a vanishing `Sigma_j`
/// are dropped.
pub fn power_sum_fq_waring_terms(q: u64, k: u64) -> Result<BTreeMap<u64, u64>> {
    let p = prime_of(q)?;
    let mut terms = BTreeMap::new();
    if k == 0 {
        return Ok(terms);
    }
    let n = q as usize;
    for t in waring_power_sum(k, n)? {
        let mut coeff = t.coefficient.clone();
        let mut exponent = 0;
        let mut vanishes = false;
        for (j, &i) in (1..).zip(&t.exponents) {
            if i == 0 {
                continue;
            }
            match sigma_closed_form(q, j)? {
                SigmaValue::Zero => vanishes = true,
                SigmaValue::MinusOne if i % 2 == 1 => coeff = -coeff,
                SigmaValue::MinusOne => {}
                SigmaValue::ArtinSchreier => exponent += i,
                other => unreachable!("positive index gave {other:?}"),
            }
        }
        if !vanishes {
            let c = mod_p(&coeff, p);
            insert_mod(&mut terms, exponent, c, p);
        }
    }
    Ok(terms)
}

fn mod_p(c: &BigInt, p: u64) -> u64 {
    c.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

/// `P_k` over `GF(q)`, expanded.
pub fn power_sum_fq_poly(q: u64, k: u64) -> Result<Poly> {
    let ring = FiniteRing::build_uncapped(&RingSpec::Gf(q))?;
    Ok(expand_over(&ring, q, &power_sum_fq_terms(q, k)?))
}

/// `sum_{r in F_q} (T + r)^{-k}` for `k >= 1`, as a polynomial in
/// `U = (T^q - T)^{-1}`:
/// `sum_{0 <= b < ceil(k/q)} C(k-(q-1)b-1, b) (-1)^{k-qb} U^{k-(q-1)b}`.
pub fn power_sum_fq_negative(q: u64, k: u64) -> Result<LaurentInU> {
    let p = prime_of(q)?;
    if k == 0 {
        return Err(Error::InvalidArgument("negative power sums need k >= 1".into()));
    }
    let terms = (0..k.div_ceil(q)).map(|b| {
        let c = binomial_mod_char(k - (q - 1) * b - 1, b, p);
        let signed = if (k - q * b) % 2 == 1 { (p - c) % p } else { c };
        (k - (q - 1) * b, signed)
    });
    LaurentInU::new(q, terms)
}

/// The same sum via `sum_{alpha + q beta = k} (alpha+beta-1)! k / (alpha! beta!)
/// (-1)^alpha U^{alpha+beta}`.
pub fn power_sum_fq_negative_intermediate(q: u64, k: u64) -> Result<LaurentInU> {
    let p = prime_of(q)?;
    if k == 0 {
        return Err(Error::InvalidArgument("negative power sums need k >= 1".into()));
    }
    let terms = (0..=k / q).map(|beta| {
        let alpha = k - q * beta;
        let c = mixed_coefficient(alpha, beta, k, p);
        let signed = if alpha % 2 == 1 { (p - c) % p } else { c };
        (alpha + beta, signed)
    });
    LaurentInU::new(q, terms)
}

/// `sum_{A in M_n(F_q)} A^k`: the identity when `n = q = 2`, `k > 1` and
/// `k = -1, 0, 1 mod 6`, zero otherwise.
pub fn bcl_power_sum(n: usize, q: u64, k: u64) -> Result<RingElement> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("need n >= 2, got {n}")));
    }
    let ring = FiniteRing::build_uncapped(&RingSpec::mat(n, RingSpec::Gf(q)))?;
    Ok(if n == 2 && q == 2 && k > 1 && matches!(k % 6, 0 | 1 | 5) {
        ring.one()
    } else {
        ring.zero()
    })
}
