//! The generator family of translation-invariant polynomials over
//! `R = GR(p,m,e)[x]/(x^k)`, `k <= p`, with `q = p^e` and maximal ideal part
//! `𝔪 = (x)`:
//!
//! ```text
//! ⊕_{n>=0} R (T^q - T)^{n p^m}  ⊕  ⊕_{0<=i<m} ⊕_{p ∤ n} p^{m-1-i} Ann_R(p^{m-1} 𝔪) (T^q - T)^{n p^i}
//! ```

use std::collections::HashSet;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::{annihilator, is_translation_invariant};
use crate::error::{Error, Result};
use crate::ntheory::{is_prime, prime_power, valuation};
use crate::oracle::{
    invariant_polys_with, DifferenceMap, InvariantMethod, InvariantOptions, InvariantSpaceReport,
};
use crate::poly::{artin_schreier_power, Poly};
use crate::ring::galois::{canonical_lift, reduction_mod_p_spec};
use crate::ring::{FiniteRing, RingElement, RingSpec};

/// Spans up to this size are enumerated element by element.
const SPAN_ENUMERATION_CAP: u128 = 1 << 20;

/// `(p, m, e, k)` for `GR(p,m,e)` (also written `GF(q)` or `Zmod(p^m)`), or
/// `Nil` of such a ring with nilpotence class `k`; bare rings have `k = 1`.
pub fn twitt_parameters(spec: &RingSpec) -> Result<(u64, u32, u32, usize)> {
    fn base(spec: &RingSpec) -> Option<(u64, u32, u32)> {
        match spec {
            RingSpec::Gf(q) => prime_power(*q).map(|(p, e)| (p, 1, e)),
            RingSpec::Zmod(n) => prime_power(*n).map(|(p, m)| (p, m, 1)),
            RingSpec::Gr { p, m, e } => Some((*p, *m, *e)),
            _ => None,
        }
    }
    let (inner, k) = match spec {
        RingSpec::Nil(inner, k) => (inner.as_ref(), *k),
        other => (other, 1),
    };
    let (p, m, e) = base(inner).ok_or_else(|| {
        Error::Unsupported(format!(
            "{spec} is not a Galois ring or a truncated polynomial ring over one"
        ))
    })?;
    if k as u64 > p {
        return Err(Error::InvalidArgument(format!(
            "nilpotence class {k} of {spec} exceeds p = {p}"
        )));
    }
    Ok((p, m, e, k))
}

/// `q p^m`, capped at 64.
pub fn default_degree_bound(spec: &RingSpec) -> Result<usize> {
    let (p, m, e, _) = twitt_parameters(spec)?;
    let bound = (p as u128).saturating_pow(m + e);
    Ok(bound.min(64) as usize)
}

/// Shape of a coefficient set, comparable across nilpotence classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoefficientPattern {
    /// The whole ring.
    Full,
    /// Elements `c x^{k-1}` with `c` ranging over the listed inner elements.
    TopSlot(Vec<RingElement>),
    /// Any other subgroup, by size.
    Other(usize),
}

impl CoefficientPattern {
    fn classify(ring: &FiniteRing, set: &[RingElement]) -> Self {
        if set.len() as u128 == ring.order() {
            return CoefficientPattern::Full;
        }
        let top: Option<Vec<RingElement>> = set
            .iter()
            .map(|c| match c {
                RingElement::Trunc(xs) => {
                    let (last, rest) = xs.split_last()?;
                    let RingElement::Trunc(zs) = ring.zero() else { return None };
                    rest.iter().zip(&zs).all(|(a, z)| a == z).then(|| last.clone())
                }
                _ => None,
            })
            .collect();
        match top {
            Some(values) => CoefficientPattern::TopSlot(values),
            None => CoefficientPattern::Other(set.len()),
        }
    }

    /// Short human description, e.g. `R` or `x^(k-1)*{0,2}`.
    pub fn describe(&self) -> String {
        match self {
            CoefficientPattern::Full => "R".into(),
            CoefficientPattern::TopSlot(v) => format!(
                "x^(k-1)*{{{}}}",
                v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
            ),
            CoefficientPattern::Other(n) => format!("subgroup of order {n}"),
        }
    }
}

/// `C * (T^q - T)^exponent` for the coefficient set `C`.
#[derive(Debug, Clone)]
pub struct TwittGenerator {
    /// Branch index: `i = m` for the full-coefficient branch.
    pub i: u32,
    pub n: u64,
    /// `n p^i`, the power of `T^q - T`.
    pub exponent: u64,
    /// The coefficient set, in index order.
    pub coefficients: Vec<RingElement>,
    pub pattern: CoefficientPattern,
    pub poly: Poly,
}

impl TwittGenerator {
    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap_or(0)
    }

    /// `(i, n, exponent, pattern)`, equal for rings whose families agree
    /// structurally.
    pub fn signature(&self) -> (u32, u64, u64, CoefficientPattern) {
        (self.i, self.n, self.exponent, self.pattern.clone())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "i": self.i,
            "n": self.n,
            "exponent": self.exponent,
            "degree": self.degree(),
            "coefficients": self.pattern.describe(),
            "coefficient_count": self.coefficients.len(),
            "poly": self.poly.to_json(),
        })
    }
}

/// The family with `deg <= d`, in increasing exponent.
pub fn twitt_generators(ring: &Arc<FiniteRing>, d: usize) -> Result<Vec<TwittGenerator>> {
    let (p, m, e, k) = twitt_parameters(ring.spec())?;
    let q = p.pow(e);
    let elements: Vec<RingElement> = ring.elements()?.collect();
    // p^{m-1} 𝔪 with 𝔪 = (x); empty for a bare Galois ring
    let pm1 = p.pow(m - 1);
    let scaled_ideal: Vec<RingElement> = if k > 1 {
        let mut s: Vec<RingElement> = elements
            .iter()
            .filter(|a| matches!(a, RingElement::Trunc(xs) if ring_inner_zero(ring, &xs[0])))
            .map(|a| ring.mul_int(a, pm1))
            .filter(|a| !ring.is_zero(a))
            .collect();
        s.sort();
        s.dedup();
        s
    } else {
        Vec::new()
    };
    let ann = annihilator(ring, &scaled_ideal)?;
    let sorted_set = |set: Vec<RingElement>| {
        let mut v: Vec<RingElement> = set;
        v.sort_by_key(|a| ring.index_of(a));
        v.dedup();
        v
    };
    let max_exponent = d as u64 / q;
    (0..=max_exponent)
        .map(|a| {
            let v = if a == 0 { m } else { valuation(a, p).min(m) };
            let (i, n, coefficients) = if v >= m {
                (m, a / p.pow(m), elements.clone())
            } else {
                let mult = p.pow(m - 1 - v);
                let set = ann.iter().map(|c| ring.mul_int(c, mult)).collect();
                (v, a / p.pow(v), sorted_set(set))
            };
            let pattern = CoefficientPattern::classify(ring, &coefficients);
            Ok(TwittGenerator {
                i,
                n,
                exponent: a,
                coefficients,
                pattern,
                poly: artin_schreier_power(ring, q, a),
            })
        })
        .collect()
}

fn ring_inner_zero(ring: &FiniteRing, a: &RingElement) -> bool {
    match ring.zero() {
        RingElement::Trunc(zs) => zs[0] == *a,
        _ => false,
    }
}

/// The additive group generated by a generator family.
#[derive(Debug, Clone)]
pub struct TwittModule {
    pub ring: Arc<FiniteRing>,
    pub q: u64,
    pub generators: Vec<TwittGenerator>,
    sets: Vec<HashSet<RingElement>>,
}

impl TwittModule {
    pub fn new(ring: &Arc<FiniteRing>, d: usize) -> Result<Self> {
        let (p, _, e, _) = twitt_parameters(ring.spec())?;
        let generators = twitt_generators(ring, d)?;
        let sets = generators
            .iter()
            .map(|g| g.coefficients.iter().cloned().collect())
            .collect();
        Ok(TwittModule {
            ring: ring.clone(),
            q: p.pow(e),
            generators,
            sets,
        })
    }

    /// `prod |C_g|`; the sum is direct because the generators are monic of
    /// distinct degrees.
    pub fn span_size(&self) -> BigUint {
        self.generators
            .iter()
            .fold(BigUint::one(), |acc, g| acc * g.coefficients.len())
    }

    /// Membership by peeling off the top generator degree by degree.
    pub fn contains(&self, f: &Poly) -> bool {
        if f.ring().spec() != self.ring.spec() {
            return false;
        }
        let mut rest = f.clone();
        for (g, set) in self.generators.iter().zip(&self.sets).rev() {
            let c = rest.coeff(g.degree());
            if !set.contains(&c) {
                return false;
            }
            if !self.ring.is_zero(&c) {
                rest = rest.add_trusted(&g.poly.scale_trusted(&c).neg());
            }
        }
        rest.is_zero()
    }

    /// Every element of the span, or `None` beyond the enumeration cap.
    pub fn elements(&self) -> Option<Vec<Poly>> {
        let size = self.span_size();
        if size > BigUint::from(SPAN_ENUMERATION_CAP) {
            return None;
        }
        let size: usize = size.try_into().ok()?;
        let radices: Vec<usize> = self.generators.iter().map(|g| g.coefficients.len()).collect();
        Some(
            (0..size)
                .into_par_iter()
                .map(|mut idx| {
                    let mut f = Poly::zero(&self.ring);
                    for (g, &r) in self.generators.iter().zip(&radices) {
                        let c = &g.coefficients[idx % r];
                        idx /= r;
                        if !self.ring.is_zero(c) {
                            f = f.add_trusted(&g.poly.scale_trusted(c));
                        }
                    }
                    f
                })
                .collect(),
        )
    }
}

/// Result of comparing the generated module with the true invariant space.
#[derive(Debug, Clone)]
pub struct TwittSpanReport {
    pub ring: RingSpec,
    pub degree_bound: usize,
    pub method: InvariantMethod,
    pub invariant_count: BigUint,
    pub span_count: BigUint,
    /// Every generated polynomial is invariant.
    pub forward: bool,
    /// Every invariant polynomial is generated.
    pub backward: bool,
    /// Whether `forward` was checked on every span element rather than on
    /// each coefficient-generator product.
    pub span_enumerated: bool,
    pub generators: Vec<TwittGenerator>,
}

impl TwittSpanReport {
    pub fn passed(&self) -> bool {
        self.forward && self.backward && self.invariant_count == self.span_count
    }

    pub fn signature(&self) -> Vec<(u32, u64, u64, CoefficientPattern)> {
        self.generators.iter().map(TwittGenerator::signature).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "ring": self.ring.to_string(),
            "D": self.degree_bound,
            "method": self.method.name(),
            "invariant_count": self.invariant_count.to_string(),
            "span_count": self.span_count.to_string(),
            "forward": self.forward,
            "backward": self.backward,
            "generators": self.generators.iter().map(TwittGenerator::to_json).collect::<Vec<_>>(),
        })
    }
}

pub fn verify_twitt_span(ring: &Arc<FiniteRing>, d: usize) -> Result<TwittSpanReport> {
    verify_twitt_span_with(ring, d, InvariantOptions::default())
}

pub fn verify_twitt_span_with(
    ring: &Arc<FiniteRing>,
    d: usize,
    opts: InvariantOptions,
) -> Result<TwittSpanReport> {
    let module = TwittModule::new(ring, d)?;
    let mut forward = true;
    for g in &module.generators {
        for c in &g.coefficients {
            forward &= is_translation_invariant(ring, &g.poly.scale_trusted(c))?;
        }
    }
    let mut span_count = module.span_size();
    let mut span_enumerated = false;
    if let Some(all) = module.elements() {
        let map = DifferenceMap::new(ring, d);
        forward &= all.par_iter().all(|f| map.annihilates(&map.coords_of(f)));
        let distinct: HashSet<&Poly> = all.iter().collect();
        span_count = BigUint::from(distinct.len());
        span_enumerated = true;
    }
    let space: InvariantSpaceReport = invariant_polys_with(ring, d, opts)?;
    let backward = space.polys.par_iter().all(|f| module.contains(f));
    Ok(TwittSpanReport {
        ring: ring.spec().clone(),
        degree_bound: d,
        method: space.method,
        invariant_count: space.count,
        span_count,
        forward,
        backward,
        span_enumerated,
        generators: module.generators,
    })
}

fn residue_canon(spec: &RingSpec) -> RingSpec {
    match spec {
        RingSpec::Gf(q) if is_prime(*q) => RingSpec::Zmod(*q),
        RingSpec::Gr { p, m: 1, e: 1 } => RingSpec::Zmod(*p),
        RingSpec::Gr { p, m: 1, e } => RingSpec::Gf(p.pow(*e)),
        RingSpec::Nil(inner, k) => RingSpec::nil(residue_canon(inner), *k),
        other => other.clone(),
    }
}

/// `p^{m-1-i} * lift(a1)^{p^i}` for `a1` invariant over `R/pR`.
pub fn lift_invariant(ring: &Arc<FiniteRing>, a1: &Poly, i: u32) -> Result<Poly> {
    let (p, m, _, _) = twitt_parameters(ring.spec())?;
    if i >= m {
        return Err(Error::InvalidArgument(format!("need 0 <= i < m = {m}, got {i}")));
    }
    let reduced_spec = reduction_mod_p_spec(ring.spec()).expect("Galois-type ring");
    if residue_canon(a1.ring().spec()) != residue_canon(&reduced_spec) {
        return Err(Error::RingMismatch {
            left: reduced_spec.to_string(),
            right: a1.ring().spec().to_string(),
        });
    }
    let reduced = FiniteRing::build(&reduced_spec)?;
    let a1 = Poly::from_coeffs(
        &reduced,
        a1.coeffs()
            .iter()
            .map(|c| reduced.from_coords(&a1.ring().coords(c)))
            .collect(),
    )?;
    if !is_translation_invariant(&reduced, &a1)? {
        return Err(Error::InvalidArgument(format!(
            "{a1} is not translation-invariant over {reduced_spec}"
        )));
    }
    let lifted = Poly::from_coeffs(
        ring,
        a1.coeffs()
            .iter()
            .map(|c| canonical_lift(ring, &reduced, c))
            .collect(),
    )?;
    Ok(lifted.pow(p.pow(i)).mul_int(p.pow(m - 1 - i)))
}
