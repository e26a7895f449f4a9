//! Frobenius, Teichmüller lifts and reduction modulo `p` for Galois rings.
//!
//! `Zmod(p^m)` is accepted wherever a Galois ring with `e = 1` is.

use std::sync::Arc;

use super::finite::Kind;
use super::{FiniteRing, RingElement, RingSpec};
use crate::error::{Error, Result};
use crate::ntheory::prime_power;
use crate::poly::CoefficientEmbedding;

/// `(p, m, e)` for `GF`, `GR` and prime-power `Zmod` rings.
pub fn galois_parameters(ring: &FiniteRing) -> Option<(u64, u32, usize)> {
    match &ring.kind {
        Kind::Galois(g) => Some((g.p, g.m, g.e)),
        Kind::Zmod(n) => prime_power(*n).map(|(p, m)| (p, m, 1)),
        _ => None,
    }
}

/// `a -> a^p`.
pub fn frobenius(ring: &FiniteRing, a: &RingElement) -> Result<RingElement> {
    let (p, _, _) = galois_parameters(ring).ok_or_else(|| {
        Error::Unsupported(format!("Frobenius on {} (needs GF, GR or Zmod(p^m))", ring.spec()))
    })?;
    ring.check_element(a)?;
    Ok(ring.pow(a, p))
}

/// Spec of the residue field `R/pR` of a Galois ring.
pub fn residue_field_spec(ring: &FiniteRing) -> Option<RingSpec> {
    let (p, _, e) = galois_parameters(ring)?;
    Some(RingSpec::Gf(p.pow(e as u32)))
}

/// Coordinate-wise lift of a residue given as coefficients over F_p (constant
/// term first) or, for `e = 1`, a bare residue.
fn lift_residue(ring: &FiniteRing, residue: &RingElement) -> Result<RingElement> {
    let (p, _, e) = galois_parameters(ring).expect("caller checked");
    let coeffs = match residue {
        RingElement::Residue(r) => vec![*r],
        RingElement::Coeffs(c) => c.clone(),
        _ => return Err(Error::InvalidArgument(format!("{residue} is not a residue"))),
    };
    if coeffs.len() != e || coeffs.iter().any(|&c| c >= p) {
        return Err(Error::InvalidArgument(format!(
            "{residue} is not an element of GF({})",
            p.pow(e as u32)
        )));
    }
    Ok(match &ring.kind {
        Kind::Zmod(_) => RingElement::Residue(coeffs[0]),
        _ => RingElement::Coeffs(coeffs),
    })
}

/// Teichmüller representative of `residue in GF(p^e)`: the unique lift that is
/// zero or a `(q-1)`-st root of unity. Obtained by iterating `x -> x^q` from
/// the coordinate-wise lift until it stabilizes.
pub fn teichmuller_lift(ring: &FiniteRing, residue: &RingElement) -> Result<RingElement> {
    let (p, m, e) = galois_parameters(ring).ok_or_else(|| {
        Error::Unsupported(format!("Teichmüller lift into {}", ring.spec()))
    })?;
    let q = p.pow(e as u32);
    let mut x = lift_residue(ring, residue)?;
    for _ in 0..=m {
        let next = ring.pow(&x, q);
        if next == x {
            return Ok(x);
        }
        x = next;
    }
    unreachable!("x -> x^q stabilizes after at most m steps in {}", ring.spec())
}

/// Spec of `R/pR` for Galois rings, prime-power `Zmod`, and truncated
/// polynomial rings over those.
pub fn reduction_mod_p_spec(spec: &RingSpec) -> Option<RingSpec> {
    match spec {
        RingSpec::Gf(_) => Some(spec.clone()),
        RingSpec::Zmod(n) => prime_power(*n).map(|(p, _)| RingSpec::Zmod(p)),
        RingSpec::Gr { p, e, .. } => Some(if *e == 1 {
            RingSpec::Zmod(*p)
        } else {
            RingSpec::Gf(p.pow(*e))
        }),
        RingSpec::Nil(inner, k) => reduction_mod_p_spec(inner).map(|r| RingSpec::nil(r, *k)),
        _ => None,
    }
}

/// Canonical coordinate-wise lift from `R/pR` (as built from
/// [`reduction_mod_p_spec`]) to `R`: residues map to representatives in `[0, p)`.
pub fn canonical_lift(ring: &FiniteRing, reduced: &FiniteRing, a: &RingElement) -> RingElement {
    let coords = reduced.coords(a);
    debug_assert_eq!(coords.len(), ring.radices().len());
    ring.from_coords(&coords)
}

/// Reduction `R -> R/pR`, inverse to [`canonical_lift`] on representatives.
pub fn reduce_mod_p(ring: &FiniteRing, reduced: &FiniteRing, a: &RingElement) -> RingElement {
    let coords: Vec<u64> = ring
        .coords(a)
        .iter()
        .zip(reduced.radices())
        .map(|(&c, &r)| c % r)
        .collect();
    reduced.from_coords(&coords)
}

/// The embedding `GF(q) -> GF(q^s)` sending the generator `y` of `GF(q)` to
/// the root of its defining polynomial with the smallest index in `GF(q^s)`.
#[derive(Debug, Clone)]
pub struct FieldEmbedding {
    base: Arc<FiniteRing>,
    ext: Arc<FiniteRing>,
    root: RingElement,
}

impl FieldEmbedding {
    pub fn new(q: u64, s: u32) -> Result<Self> {
        if s == 0 {
            return Err(Error::InvalidArgument("extension degree must be positive".into()));
        }
        let base = FiniteRing::build(&RingSpec::Gf(q))?;
        let qs = q
            .checked_pow(s)
            .ok_or_else(|| Error::Infeasible(format!("GF({q}^{s}) is too large")))?;
        let ext = FiniteRing::build(&RingSpec::Gf(qs))?;
        let defining = base.galois().expect("GF ring").defining.clone();
        let root = ext
            .elements()?
            .find(|t| {
                let v = defining.iter().rev().fold(ext.zero(), |acc, &c| {
                    ext.add(&ext.mul(&acc, t), &ext.from_int(c as i128))
                });
                ext.is_zero(&v)
            })
            .expect("GF(q) embeds in GF(q^s)");
        Ok(FieldEmbedding { base, ext, root })
    }

    pub fn base(&self) -> &Arc<FiniteRing> {
        &self.base
    }

    pub fn ext(&self) -> &Arc<FiniteRing> {
        &self.ext
    }

    /// Image of the generator `y` of the base field.
    pub fn root(&self) -> &RingElement {
        &self.root
    }

    pub fn apply(&self, a: &RingElement) -> RingElement {
        let coeffs = match a {
            RingElement::Coeffs(c) => c,
            _ => panic!("{a} is not an element of {}", self.base.spec()),
        };
        coeffs.iter().rev().fold(self.ext.zero(), |acc, &c| {
            self.ext.add(&self.ext.mul(&acc, &self.root), &self.ext.from_int(c as i128))
        })
    }

    /// Whether `t` lies in the image of the base field.
    pub fn in_base(&self, t: &RingElement) -> bool {
        let q = self.base.order() as u64;
        self.ext.pow(t, q) == *t
    }
}

impl CoefficientEmbedding for FieldEmbedding {
    fn source(&self) -> &FiniteRing {
        &self.base
    }

    fn target(&self) -> &FiniteRing {
        &self.ext
    }

    fn embed(&self, a: &RingElement) -> RingElement {
        self.apply(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frobenius_examples() {
        let gf4 = FiniteRing::parse("GF(4)").unwrap();
        let y = RingElement::Coeffs(vec![0, 1]);
        assert_eq!(frobenius(&gf4, &y).unwrap(), RingElement::Coeffs(vec![1, 1]));
        let gf2 = FiniteRing::parse("GF(2)").unwrap();
        let one = gf2.one();
        assert_eq!(frobenius(&gf2, &one).unwrap(), one);
        let z9 = FiniteRing::parse("Zmod(9)").unwrap();
        assert_eq!(
            frobenius(&z9, &RingElement::Residue(2)).unwrap(),
            RingElement::Residue(8)
        );
        let m = FiniteRing::parse("Mat(2,GF(2))").unwrap();
        assert!(matches!(frobenius(&m, &m.one()), Err(Error::Unsupported(_))));
    }

    #[test]
    fn teichmuller_examples() {
        let z4 = FiniteRing::parse("GR(2,2,1)").unwrap();
        assert_eq!(
            teichmuller_lift(&z4, &RingElement::Residue(1)).unwrap(),
            RingElement::Coeffs(vec![1])
        );
        let z9 = FiniteRing::parse("Zmod(9)").unwrap();
        assert_eq!(
            teichmuller_lift(&z9, &RingElement::Residue(2)).unwrap(),
            RingElement::Residue(8)
        );
        // integer oracle: 8 = 2 mod 3 and 8^3 = 512 = 8 mod 9
        assert_eq!(8 % 3, 2);
        assert_eq!(512 % 9, 8);
        let gr = FiniteRing::parse("GR(2,3,2)").unwrap();
        assert_eq!(
            teichmuller_lift(&gr, &RingElement::Coeffs(vec![0, 0])).unwrap(),
            gr.zero()
        );
    }

    #[test]
    fn field_embedding_is_a_homomorphism() {
        for (q, s) in [(2u64, 2u32), (4, 2), (3, 2), (2, 3)] {
            let emb = FieldEmbedding::new(q, s).unwrap();
            let base = emb.base().clone();
            let els: Vec<_> = base.elements().unwrap().collect();
            for a in &els {
                assert!(emb.in_base(&emb.apply(a)));
                for b in &els {
                    let ext = emb.ext();
                    assert_eq!(emb.apply(&base.mul(a, b)), ext.mul(&emb.apply(a), &emb.apply(b)));
                    assert_eq!(emb.apply(&base.add(a, b)), ext.add(&emb.apply(a), &emb.apply(b)));
                }
            }
        }
    }

    #[test]
    fn teichmuller_is_multiplicative_and_injective() {
        for s in ["GR(2,2,2)", "GR(3,2,2)", "GR(2,3,3)", "Zmod(27)", "GR(5,2,1)"] {
            let ring = FiniteRing::parse(s).unwrap();
            let field = FiniteRing::build(&residue_field_spec(&ring).unwrap()).unwrap();
            let lifts: Vec<_> = field
                .elements()
                .unwrap()
                .map(|a| teichmuller_lift(&ring, &a).unwrap())
                .collect();
            let mut sorted = lifts.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), lifts.len(), "{s}");
            let els: Vec<_> = field.elements().unwrap().collect();
            for (i, a) in els.iter().enumerate() {
                for (j, b) in els.iter().enumerate() {
                    let ab = field.mul(a, b);
                    let lhs = teichmuller_lift(&ring, &ab).unwrap();
                    assert_eq!(lhs, ring.mul(&lifts[i], &lifts[j]), "{s}");
                }
            }
        }
    }
}
