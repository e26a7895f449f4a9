//! Power sums from closed formulas, dispatched on the shape of the ring.
//!
//! | shape | result |
//! |---|---|
//! | direct product `R_1 x ... x R_l` | `sum_i (|R|/|R_i|) P_k^{R_i}` |
//! | `F_q` | polynomial in `T^q - T`, see [`field`] |
//! | `Z/p^m`, `p` odd or `k` even | `p^{m-1} P_k^{F_p}` |
//! | `Z/2^m`, `k` odd | `2^{m-1} (P_k^{F_2} + P_{k-1}^{F_2})` |
//! | `F_2[x]/(x^2)`, `UT(2, F_2)` | `x sum_{1<j odd} C(k,j) T^{k-j}` for odd `k`, else 0 |
//! | `M_2(F_2)` | `Id sum_{1<j = 0,±1 mod 6} C(k,j) T^{k-j}` |
//! | other matrix, triangular, truncated and Galois rings | 0 |
//!
//! `GF(p)`, `Zmod(p)` and `GR(p,1,e)` all count as fields, `GR(p,m,1)` as
//! `Zmod(p^m)`, and `Mat(1, R)`, `UT(1, R)` as `R`. Any other shape is
//! refused with [`Error::NoClosedForm`].

pub mod field;
pub mod waring;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ntheory::{is_prime, prime_power};
use crate::poly::binomial::binomial_mod_char;
use crate::poly::laurent::expand_over;
use crate::poly::Poly;
use crate::ring::decompose::{components, inject_component};
use crate::ring::finite::Kind;
use crate::ring::{FiniteRing, RingElement, RingSpec};

pub use field::{
    bcl_power_sum, power_sum_fq_intermediate_terms, power_sum_fq_negative,
    power_sum_fq_negative_intermediate, power_sum_fq_poly, power_sum_fq_terms,
    power_sum_fq_waring_terms, sigma_closed_form, SigmaValue,
};
pub use waring::{elementary_symmetric, evaluate, waring_power_sum, WaringTerm};

/// Which formula produced a [`PowerSumResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Case {
    Product,
    Field,
    Cyclic,
    CyclicTwoOdd,
    NilF2,
    UpperTriangularF2,
    MatrixF2,
    Zero,
}

impl Case {
    pub fn name(self) -> &'static str {
        match self {
            Case::Product => "product",
            Case::Field => "field",
            Case::Cyclic => "cyclic",
            Case::CyclicTwoOdd => "cyclic-2-odd",
            Case::NilF2 => "nil-f2",
            Case::UpperTriangularF2 => "ut2-f2",
            Case::MatrixF2 => "mat2-f2",
            Case::Zero => "zero",
        }
    }
}

/// `P_k^R(T)` together with the formula used.
#[derive(Debug, Clone)]
pub struct PowerSumResult {
    pub spec: RingSpec,
    pub k: u64,
    pub case: Case,
    pub poly: Poly,
    /// For fields: `{a: c_a}` with `P_k = sum c_a (T^q - T)^a`.
    pub symbolic: Option<BTreeMap<u64, u64>>,
}

impl PowerSumResult {
    pub fn to_json(&self) -> Value {
        let symbolic = self
            .symbolic
            .as_ref()
            .map(|t| t.iter().map(|(&a, &c)| json!([c, a])).collect::<Vec<_>>());
        json!({
            "ring": self.spec.to_string(),
            "k": self.k,
            "case": self.case.name(),
            "poly": self.poly.to_json(),
            "symbolic": symbolic,
        })
    }
}

/// `P_k` over `GF(q)` with its expansion in `T^q - T`.
pub fn power_sum_fq(q: u64, k: u64) -> Result<PowerSumResult> {
    let ring = FiniteRing::build_uncapped(&RingSpec::Gf(q))?;
    power_sum_closed_in(&ring, k)
}

/// Closed-form `P_k` for `spec`; no enumeration happens, so `spec` may be
/// arbitrarily large.
pub fn power_sum_closed(spec: &RingSpec, k: u64) -> Result<PowerSumResult> {
    let ring = FiniteRing::build_uncapped(spec)?;
    power_sum_closed_in(&ring, k)
}

/// [`power_sum_closed`] over an already built ring.
pub fn power_sum_closed_in(ring: &Arc<FiniteRing>, k: u64) -> Result<PowerSumResult> {
    let (case, poly, symbolic) = dispatch(ring, k)?;
    Ok(PowerSumResult {
        spec: ring.spec().clone(),
        k,
        case,
        poly,
        symbolic,
    })
}

/// `q` when `spec` is a field.
fn field_order(spec: &RingSpec) -> Option<u64> {
    match spec {
        RingSpec::Gf(q) => Some(*q),
        RingSpec::Zmod(p) if is_prime(*p) => Some(*p),
        RingSpec::Gr { p, m: 1, e } => Some(p.pow(*e)),
        _ => None,
    }
}

/// `(p, m)` with `m >= 2` when `spec` is `Z/p^m`.
fn cyclic_order(spec: &RingSpec) -> Option<(u64, u32)> {
    match spec {
        RingSpec::Zmod(n) => prime_power(*n).filter(|&(_, m)| m >= 2),
        RingSpec::Gr { p, m, e: 1 } if *m >= 2 => Some((*p, *m)),
        _ => None,
    }
}

/// Galois rings in any presentation.
fn is_galois(spec: &RingSpec) -> bool {
    field_order(spec).is_some() || cyclic_order(spec).is_some() || matches!(spec, RingSpec::Gr { .. })
}

/// Shapes whose power sums all vanish.
fn vanishes(spec: &RingSpec) -> bool {
    match spec {
        RingSpec::Mat(d, inner) | RingSpec::Ut(d, inner) => *d >= 2 && is_galois(inner),
        RingSpec::Nil(inner, _) => is_galois(inner),
        RingSpec::Gr { m, e, .. } => *m >= 2 && *e >= 2,
        _ => false,
    }
}

/// Coefficients mod `p` of `P_k` over `F_p`, constant term first.
fn prime_field_coefficients(p: u64, k: u64) -> Result<Vec<u64>> {
    let fp = FiniteRing::build_uncapped(&RingSpec::Zmod(p))?;
    let poly = expand_over(&fp, p, &power_sum_fq_terms(p, k)?);
    Ok(poly
        .coeffs()
        .iter()
        .map(|c| match c {
            RingElement::Residue(r) => *r,
            _ => unreachable!(),
        })
        .collect())
}

/// `p^{m-1} lift(P_k^{F_p})`, plus `p^{m-1} lift(P_{k-1}^{F_2})` for
/// `p = 2` and odd `k`. Coefficients lift to `c + shift * p`.
pub(crate) fn cyclic_poly(ring: &Arc<FiniteRing>, p: u64, m: u32, k: u64, shift: u64) -> Result<Poly> {
    let scale = p.pow(m - 1) as i128;
    let lift = |c: u64| (c + shift * p) as i128;
    let mut coeffs = vec![ring.zero(); k as usize + 1];
    let mut add = |cs: Vec<u64>| {
        for (j, c) in cs.into_iter().enumerate() {
            coeffs[j] = ring.add(&coeffs[j], &ring.from_int(scale * lift(c)));
        }
    };
    add(prime_field_coefficients(p, k)?);
    if p == 2 && k % 2 == 1 {
        add(prime_field_coefficients(2, k - 1)?);
    }
    Ok(Poly::from_trusted(ring, coeffs))
}

/// `x sum_{j in js} C(k, j) T^{k-j}` with binomials mod 2.
fn binomial_series(ring: &Arc<FiniteRing>, x: RingElement, k: u64, keep: impl Fn(u64) -> bool) -> Poly {
    let mut coeffs = vec![ring.zero(); k as usize + 1];
    for j in (2..=k).filter(|&j| keep(j)) {
        if binomial_mod_char(k, j, 2) == 1 {
            coeffs[(k - j) as usize] = x.clone();
        }
    }
    Poly::from_trusted(ring, coeffs)
}

type Dispatched = (Case, Poly, Option<BTreeMap<u64, u64>>);

fn dispatch(ring: &Arc<FiniteRing>, k: u64) -> Result<Dispatched> {
    let spec = ring.spec();
    if let Some(parts) = components(spec) {
        let n = ring.characteristic();
        let mut acc = Poly::zero(ring);
        for (i, part) in parts.iter().enumerate() {
            let fr = FiniteRing::build_uncapped(part)?;
            let (_, pi, _) = dispatch(&fr, k)?;
            let mult = ((ring.order() / fr.order()) % n as u128) as u64;
            let coeffs = pi
                .coeffs()
                .iter()
                .map(|c| ring.mul_int(&inject_component(ring, i, c), mult))
                .collect();
            acc = acc.add_trusted(&Poly::from_trusted(ring, coeffs));
        }
        return Ok((Case::Product, acc, None));
    }
    if let Kind::Matrix { d: 1, inner, .. } = &ring.kind {
        let (case, pi, symbolic) = dispatch(inner, k)?;
        let coeffs = pi
            .coeffs()
            .iter()
            .map(|c| RingElement::Matrix(vec![c.clone()]))
            .collect();
        return Ok((case, Poly::from_trusted(ring, coeffs), symbolic));
    }
    if let Some(q) = field_order(spec) {
        let terms = power_sum_fq_terms(q, k)?;
        let poly = expand_over(ring, q, &terms);
        return Ok((Case::Field, poly, Some(terms)));
    }
    if let Some((p, m)) = cyclic_order(spec) {
        let case = if p == 2 && k % 2 == 1 {
            Case::CyclicTwoOdd
        } else {
            Case::Cyclic
        };
        return Ok((case, cyclic_poly(ring, p, m, k, 0)?, None));
    }
    let odd = |j: u64| j % 2 == 1;
    match (spec, &ring.kind) {
        (RingSpec::Nil(inner, 2), Kind::Nil { inner: ir, .. }) if field_order(inner) == Some(2) => {
            let x = RingElement::Trunc(vec![ir.zero(), ir.one()]);
            Ok((Case::NilF2, binomial_series(ring, x, k, odd), None))
        }
        (RingSpec::Ut(2, inner), Kind::Matrix { inner: ir, .. }) if field_order(inner) == Some(2) => {
            let x = RingElement::Matrix(vec![ir.zero(), ir.one(), ir.zero(), ir.zero()]);
            Ok((Case::UpperTriangularF2, binomial_series(ring, x, k, odd), None))
        }
        (RingSpec::Mat(2, inner), _) if field_order(inner) == Some(2) => {
            let series = binomial_series(ring, ring.one(), k, |j| matches!(j % 6, 0 | 1 | 5));
            Ok((Case::MatrixF2, series, None))
        }
        _ if vanishes(spec) => Ok((Case::Zero, Poly::zero(ring), None)),
        _ => Err(Error::NoClosedForm(spec.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::power_sum_bruteforce;

    fn ring(s: &str) -> Arc<FiniteRing> {
        FiniteRing::parse(s).unwrap()
    }

    fn closed(s: &str, k: u64) -> PowerSumResult {
        power_sum_closed(&RingSpec::parse(s).unwrap(), k).unwrap()
    }

    #[test]
    fn dispatch_examples() {
        let z4 = ring("Zmod(4)");
        let r = closed("Zmod(4)", 3);
        assert_eq!(r.case, Case::CyclicTwoOdd);
        assert_eq!(r.poly, Poly::from_ints(&z4, &[0, 2, 2]));

        let z6 = ring("Zmod(6)");
        let r = closed("Zmod(6)", 3);
        assert_eq!(r.case, Case::Product);
        assert_eq!(r.poly, Poly::from_ints(&z6, &[3, 3, 3]));

        let ut = ring("UT(2,GF(2))");
        let r = closed("UT(2,GF(2))", 3);
        assert_eq!(r.case, Case::UpperTriangularF2);
        let x = RingElement::Matrix(vec![
            RingElement::Coeffs(vec![0]),
            RingElement::Coeffs(vec![1]),
            RingElement::Coeffs(vec![0]),
            RingElement::Coeffs(vec![0]),
        ]);
        assert_eq!(r.poly, Poly::constant(&ut, x));

        let r = closed("Mat(2,GF(3))", 8);
        assert_eq!(r.case, Case::Zero);
        assert!(r.poly.is_zero());

        let m = ring("Mat(2,GF(2))");
        let r = closed("Mat(2,GF(2))", 7);
        assert_eq!(r.poly, power_sum_bruteforce(&m, 7).unwrap());
        assert_eq!(r.poly, Poly::from_ints(&m, &[1, 1, 1]));
    }

    #[test]
    fn symbolic_form_expands_to_poly() {
        for q in [2u64, 3, 4, 8, 9] {
            for k in 0..30 {
                let r = power_sum_fq(q, k).unwrap();
                let expanded = expand_over(r.poly.ring(), q, r.symbolic.as_ref().unwrap());
                assert_eq!(expanded, r.poly);
            }
        }
    }

    #[test]
    fn presentations_of_the_same_ring_agree() {
        let coords = |s: &str, k: u64| {
            let p = closed(s, k).poly;
            p.coeffs().iter().map(|c| p.ring().coords(c)).collect::<Vec<_>>()
        };
        for k in 0..20 {
            let a = coords("GF(3)", k);
            assert_eq!(coords("Zmod(3)", k), a);
            assert_eq!(coords("GR(3,1,1)", k), a);
            assert_eq!(coords("GR(2,1,2)", k), coords("GF(4)", k));
            assert_eq!(coords("GR(2,3,1)", k), coords("Zmod(8)", k));
        }
    }

    #[test]
    fn agrees_with_enumeration_on_assorted_shapes() {
        for s in [
            "Mat(1,Nil(GF(2),2))", "UT(1,Zmod(4))", "Nil(Zmod(2),2)", "UT(2,Zmod(2))",
            "Mat(2,Zmod(2))", "Prod(Zmod(4),GF(3))", "Mat(2,Prod(GF(2),GF(3)))",
            "GR(2,3,1)", "Nil(Zmod(9),2)", "Prod(Zmod(6),Nil(GF(2),2))", "UT(3,GF(2))",
        ] {
            let r = ring(s);
            for k in 0..=16 {
                let c = power_sum_closed_in(&r, k).unwrap();
                assert_eq!(c.poly, power_sum_bruteforce(&r, k).unwrap(), "{s} k={k}");
            }
        }
    }

    #[test]
    fn lift_independence() {
        for (p, m) in [(2u64, 2u32), (2, 3), (3, 2), (5, 2), (2, 5)] {
            let r = FiniteRing::build(&RingSpec::Zmod(p.pow(m))).unwrap();
            for k in 0..=30 {
                let base = cyclic_poly(&r, p, m, k, 0).unwrap();
                for shift in [1, 3] {
                    assert_eq!(cyclic_poly(&r, p, m, k, shift).unwrap(), base);
                }
            }
        }
    }

    #[test]
    fn even_powers_vanish_on_exceptional_rings() {
        for s in ["Nil(GF(2),2)", "UT(2,GF(2))"] {
            for k in (0..=40).step_by(2) {
                assert!(closed(s, k).poly.is_zero(), "{s} k={k}");
            }
        }
    }

    #[test]
    fn unknown_shapes_are_refused() {
        for s in ["Mat(2,Nil(GF(2),2))", "Nil(UT(2,GF(2)),2)"] {
            assert!(matches!(
                power_sum_closed(&RingSpec::parse(s).unwrap(), 3),
                Err(Error::NoClosedForm(_))
            ));
        }
    }

    #[test]
    fn large_rings_need_no_enumeration() {
        let r = closed("Mat(4,GF(49))", 10);
        assert_eq!(r.case, Case::Zero);
        let r = closed("Zmod(1000000)", 5);
        assert_eq!(r.case, Case::Product);
    }
}
