//! Ground truth by exhaustive enumeration.
//!
//! Everything here sums over every element of a ring. Sums are split into
//! index ranges that may run in parallel; partial results are combined in
//! range order so the output never depends on the split.

mod invariant;
pub mod linear;

use std::ops::Range;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly::binomial::binomial_mod_char;
use crate::poly::laurent::field_inverse;
use crate::poly::Poly;
use crate::ring::galois::FieldEmbedding;
use crate::ring::{FiniteRing, RingElement};

pub use invariant::{
    invariant_polys_bruteforce, invariant_polys_with, InvariantMethod, InvariantOptions,
    InvariantSpaceReport, DEFAULT_EXHAUSTIVE_CAP,
};
pub(crate) use invariant::DifferenceMap;

const DEFAULT_PARTS: u128 = 64;

fn index_ranges(order: u128, parts: u128) -> Vec<Range<u128>> {
    let parts = parts.clamp(1, order.max(1));
    let step = order.div_ceil(parts);
    (0..parts)
        .map(|i| (i * step).min(order)..((i + 1) * step).min(order))
        .filter(|r| !r.is_empty())
        .collect()
}

fn sum_vectors(ring: &FiniteRing, partials: Vec<Vec<RingElement>>, len: usize) -> Vec<RingElement> {
    partials.into_iter().fold(vec![ring.zero(); len], |acc, part| {
        acc.iter().zip(&part).map(|(a, b)| ring.add(a, b)).collect()
    })
}

/// `[zeta(0), ..., zeta(-kmax)]` with `zeta(-j) = sum_r r^j`, the enumeration
/// split into `parts` index ranges.
pub fn zeta_table_partitioned(ring: &FiniteRing, kmax: u64, parts: u128) -> Result<Vec<RingElement>> {
    ring.check_enumerable()?;
    let len = kmax as usize + 1;
    let partials: Vec<Vec<RingElement>> = index_ranges(ring.order(), parts)
        .into_par_iter()
        .map(|range| {
            let mut acc = vec![ring.zero(); len];
            for r in ring.elements_in(range) {
                let mut pw = ring.one();
                for slot in acc.iter_mut() {
                    *slot = ring.add(slot, &pw);
                    pw = ring.mul(&pw, &r);
                }
            }
            acc
        })
        .collect();
    Ok(sum_vectors(ring, partials, len))
}

/// `[zeta(0), ..., zeta(-kmax)]`.
pub fn zeta_table(ring: &FiniteRing, kmax: u64) -> Result<Vec<RingElement>> {
    zeta_table_partitioned(ring, kmax, DEFAULT_PARTS)
}

/// `sum_{r in R} r^k`; `k = 0` gives `|R| * 1`.
pub fn zeta_bruteforce(ring: &FiniteRing, k: u64) -> Result<RingElement> {
    ring.check_enumerable()?;
    let partials: Vec<Vec<RingElement>> = index_ranges(ring.order(), DEFAULT_PARTS)
        .into_par_iter()
        .map(|range| {
            let s = ring
                .elements_in(range)
                .fold(ring.zero(), |acc, r| ring.add(&acc, &ring.pow(&r, k)));
            vec![s]
        })
        .collect();
    Ok(sum_vectors(ring, partials, 1).pop().unwrap())
}

/// `sum_j C(k, j) zeta(-j) T^{k-j}` from a zeta table covering `0..=k`.
pub fn power_sum_from_zeta(ring: &Arc<FiniteRing>, k: u64, zetas: &[RingElement]) -> Poly {
    assert!(zetas.len() > k as usize, "zeta table too short for k = {k}");
    let n = ring.characteristic();
    let mut coeffs = vec![ring.zero(); k as usize + 1];
    for j in 0..=k {
        let c = binomial_mod_char(k, j, n);
        coeffs[(k - j) as usize] = ring.mul_int(&zetas[j as usize], c);
    }
    Poly::from_trusted(ring, coeffs)
}

/// `P_k(T) = sum_{r in R} (T + r)^k`, expanded through the zeta values.
pub fn power_sum_bruteforce(ring: &Arc<FiniteRing>, k: u64) -> Result<Poly> {
    let zetas = zeta_table(ring, k)?;
    Ok(power_sum_from_zeta(ring, k, &zetas))
}

/// `[P_0, ..., P_kmax]` from a single enumeration.
pub fn power_sum_table(ring: &Arc<FiniteRing>, kmax: u64) -> Result<Vec<Poly>> {
    let zetas = zeta_table(ring, kmax)?;
    Ok((0..=kmax).map(|k| power_sum_from_zeta(ring, k, &zetas)).collect())
}

/// `P_k(T)` by summing the translates `(T + r)^k` directly.
pub fn power_sum_direct(ring: &Arc<FiniteRing>, k: u64) -> Result<Poly> {
    ring.check_enumerable()?;
    let tk = Poly::monomial(ring, ring.one(), k as usize);
    let partials: Vec<Poly> = index_ranges(ring.order(), DEFAULT_PARTS)
        .into_par_iter()
        .map(|range| {
            ring.elements_in(range)
                .fold(Poly::zero(ring), |acc, r| acc.add_trusted(&tk.translate_trusted(&r)))
        })
        .collect();
    Ok(partials
        .into_iter()
        .fold(Poly::zero(ring), |acc, p| acc.add_trusted(&p)))
}

/// `[Sigma_0, ..., Sigma_|R|]`: the elementary symmetric polynomials in the
/// variables `T + r`, `r in R`, for a commutative ring.
pub fn elementary_symmetric_bruteforce(ring: &Arc<FiniteRing>) -> Result<Vec<Poly>> {
    ring.check_enumerable()?;
    if !ring.is_commutative() {
        return Err(Error::Unsupported(format!(
            "elementary symmetric polynomials over non-commutative {}",
            ring.spec()
        )));
    }
    let n = ring.order() as usize;
    let mut e = vec![Poly::zero(ring); n + 1];
    e[0] = Poly::constant(ring, ring.one());
    for (seen, r) in ring.elements()?.enumerate() {
        let lin = Poly::from_trusted(ring, vec![r, ring.one()]);
        for j in (1..=seen + 1).rev() {
            e[j] = e[j].add_trusted(&e[j - 1].mul_trusted(&lin));
        }
    }
    Ok(e)
}

/// `sum_{r in GF(q)} (t + r)^{-k}` evaluated in `GF(q^s)`, for `t` outside
/// `GF(q)`.
pub fn negative_power_sum_eval(q: u64, k: u64, s: u32, t: &RingElement) -> Result<RingElement> {
    negative_power_sum_eval_with(&FieldEmbedding::new(q, s)?, k, t)
}

/// [`negative_power_sum_eval`] with a prebuilt embedding.
pub fn negative_power_sum_eval_with(
    emb: &FieldEmbedding,
    k: u64,
    t: &RingElement,
) -> Result<RingElement> {
    let ext = emb.ext();
    ext.check_element(t)?;
    if emb.in_base(t) {
        return Err(Error::InvalidArgument(format!(
            "{t} lies in GF({}); some t + r is not invertible",
            emb.base().order()
        )));
    }
    let mut acc = ext.zero();
    for r in emb.base().elements()? {
        let inv = field_inverse(ext, &ext.add(t, &emb.apply(&r)))?;
        acc = ext.add(&acc, &ext.pow(&inv, k));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{decompose, RingSpec};

    fn ring(s: &str) -> Arc<FiniteRing> {
        FiniteRing::parse(s).unwrap()
    }

    #[test]
    fn zeta_examples() {
        let f3 = ring("GF(3)");
        assert_eq!(zeta_bruteforce(&f3, 2).unwrap(), f3.from_int(2));
        assert!(f3.is_zero(&zeta_bruteforce(&f3, 3).unwrap()));
        let m = ring("Mat(2,GF(2))");
        assert_eq!(zeta_bruteforce(&m, 5).unwrap(), m.one());
        let z6 = ring("Zmod(6)");
        assert_eq!(zeta_bruteforce(&z6, 0).unwrap(), z6.zero());
    }

    #[test]
    fn power_sum_examples() {
        let f2 = ring("GF(2)");
        assert_eq!(power_sum_bruteforce(&f2, 3).unwrap(), Poly::from_ints(&f2, &[1, 1, 1]));
        let z4 = ring("Zmod(4)");
        assert_eq!(power_sum_bruteforce(&z4, 3).unwrap(), Poly::from_ints(&z4, &[0, 2, 2]));
        let nil = ring("Nil(GF(2),2)");
        let x = nil.additive_generators()[1].clone();
        assert_eq!(power_sum_bruteforce(&nil, 3).unwrap(), Poly::constant(&nil, x));
    }

    #[test]
    fn modes_agree() {
        for s in [
            "GF(2)", "GF(4)", "GF(8)", "Zmod(6)", "Zmod(8)", "Nil(GF(2),2)", "UT(2,GF(2))",
            "Mat(2,GF(2))", "Prod(GF(2),GF(3))", "GR(2,2,2)", "Nil(GF(3),2)", "Zmod(12)",
        ] {
            let r = ring(s);
            let table = power_sum_table(&r, 24).unwrap();
            for k in 0..=24u64 {
                assert_eq!(table[k as usize], power_sum_direct(&r, k).unwrap(), "{s} k={k}");
            }
        }
    }

    #[test]
    fn partition_independence() {
        for s in ["Zmod(9)", "UT(2,GF(3))", "Nil(GF(4),2)"] {
            let r = ring(s);
            let reference = zeta_table_partitioned(&r, 12, 1).unwrap();
            for parts in [2, 3, 7, 64, r.order()] {
                assert_eq!(zeta_table_partitioned(&r, 12, parts).unwrap(), reference, "{s}");
            }
        }
    }

    #[test]
    fn product_zeta_is_componentwise() {
        let r = ring("Prod(GF(4),Zmod(9),UT(2,GF(2)))");
        let RingSpec::Prod(fs) = r.spec().clone() else { unreachable!() };
        for k in 0..10 {
            let z = zeta_bruteforce(&r, k).unwrap();
            for (i, f) in fs.iter().enumerate() {
                let fr = FiniteRing::build(f).unwrap();
                // each factor is counted |R|/|R_i| times
                let mult = (r.order() / fr.order()) as u64;
                let expect = fr.mul_int(&zeta_bruteforce(&fr, k).unwrap(), mult);
                assert_eq!(decompose::project_component(&r, i, &z), expect);
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let r = FiniteRing::build_uncapped(&RingSpec::parse("Mat(3,GF(9))").unwrap()).unwrap();
        assert!(matches!(zeta_bruteforce(&r, 1), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn negative_power_examples() {
        let emb = FieldEmbedding::new(2, 2).unwrap();
        let y = RingElement::Coeffs(vec![0, 1]);
        assert_eq!(negative_power_sum_eval_with(&emb, 1, &y).unwrap(), emb.ext().one());
        for q in [2u64, 3, 4] {
            let emb = FieldEmbedding::new(q, 2).unwrap();
            let ext = emb.ext();
            for t in ext.elements().unwrap().filter(|t| !emb.in_base(t)) {
                let got = negative_power_sum_eval_with(&emb, 1, &t).unwrap();
                let as_t = ext.sub(&ext.pow(&t, q), &t);
                let expect = ext.neg(&field_inverse(ext, &as_t).unwrap());
                assert_eq!(got, expect);
            }
        }
        assert!(negative_power_sum_eval_with(&emb, 1, &emb.ext().one()).is_err());
    }

    #[test]
    fn elementary_symmetric_over_small_fields() {
        let f3 = ring("GF(3)");
        let e = elementary_symmetric_bruteforce(&f3).unwrap();
        assert!(e[1].is_zero());
        assert_eq!(e[2], Poly::from_ints(&f3, &[-1]));
        assert_eq!(e[3], Poly::from_ints(&f3, &[0, -1, 0, 1]));
    }
}
