//! Splitting rings into direct factors.
//!
//! Two splittings are provided. [`decompose_by_characteristic`] groups a ring
//! into factors of pairwise coprime prime-power characteristic. [`components`]
//! is the finest syntactic splitting: `Prod` factors, the prime-power parts of
//! `Zmod(n)`, and matrix/truncated-polynomial constructors distributed over a
//! split inner ring. Both come with projections and injections that are ring
//! homomorphisms onto and (non-unitally) into the factors.

use std::sync::Arc;

use super::finite::Kind;
use super::{FiniteRing, RingElement, RingSpec};
use crate::error::Result;
use crate::ntheory::{crt, factorize};

/// One factor of [`decompose_by_characteristic`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharFactor {
    pub prime: u64,
    pub spec: RingSpec,
    /// `|R| / |R_i|`
    pub multiplier: u128,
}

/// The `p`-primary part of `spec`, or `None` if `p` does not divide its
/// characteristic.
pub fn prime_part(spec: &RingSpec, p: u64) -> Option<RingSpec> {
    match spec {
        RingSpec::Zmod(n) => factorize(*n)
            .into_iter()
            .find(|&(q, _)| q == p)
            .map(|(q, e)| RingSpec::Zmod(q.pow(e))),
        RingSpec::Gf(q) => (q % p == 0).then(|| spec.clone()),
        RingSpec::Gr { p: q, .. } => (*q == p).then(|| spec.clone()),
        RingSpec::Mat(d, inner) => prime_part(inner, p).map(|x| RingSpec::mat(*d, x)),
        RingSpec::Ut(d, inner) => prime_part(inner, p).map(|x| RingSpec::ut(*d, x)),
        RingSpec::Nil(inner, k) => prime_part(inner, p).map(|x| RingSpec::nil(x, *k)),
        RingSpec::Prod(fs) => {
            let parts: Vec<_> = fs.iter().filter_map(|f| prime_part(f, p)).collect();
            match parts.len() {
                0 => None,
                1 => parts.into_iter().next(),
                _ => Some(RingSpec::Prod(parts)),
            }
        }
    }
}

/// Factors of pairwise coprime prime-power characteristic with the index
/// multipliers `|R|/|R_i|`, in increasing prime order. A ring of prime-power
/// characteristic returns itself with multiplier 1.
pub fn decompose_by_characteristic(ring: &FiniteRing) -> Vec<CharFactor> {
    factorize(ring.characteristic())
        .into_iter()
        .map(|(p, _)| {
            let spec = prime_part(ring.spec(), p).expect("p divides the characteristic");
            let order = super::finite::spec_order(&spec).expect("factor of a valid ring");
            CharFactor {
                prime: p,
                spec,
                multiplier: ring.order() / order,
            }
        })
        .collect()
}

/// Projection `R -> R_p` onto the `p`-primary part.
pub fn project_prime(ring: &FiniteRing, p: u64, a: &RingElement) -> RingElement {
    match (&ring.kind, a) {
        (Kind::Zmod(n), RingElement::Residue(r)) => {
            let pe = p_part_modulus(*n, p);
            RingElement::Residue(r % pe)
        }
        (Kind::Galois(_), _) => a.clone(),
        (Kind::Matrix { inner, .. }, RingElement::Matrix(es)) => {
            RingElement::Matrix(es.iter().map(|x| project_prime(inner, p, x)).collect())
        }
        (Kind::Nil { inner, .. }, RingElement::Trunc(xs)) => {
            RingElement::Trunc(xs.iter().map(|x| project_prime(inner, p, x)).collect())
        }
        (Kind::Product(fs), RingElement::Tuple(xs)) => {
            let parts: Vec<_> = fs
                .iter()
                .zip(xs)
                .filter(|(f, _)| f.characteristic() % p == 0)
                .map(|(f, x)| project_prime(f, p, x))
                .collect();
            if parts.len() == 1 {
                parts.into_iter().next().unwrap()
            } else {
                RingElement::Tuple(parts)
            }
        }
        _ => panic!("element {a} does not belong to {}", ring.spec()),
    }
}

/// Injection `R_p -> R` sending a factor element to the element with that
/// `p`-part and zero elsewhere.
pub fn inject_prime(ring: &FiniteRing, p: u64, a: &RingElement) -> RingElement {
    match (&ring.kind, a) {
        (Kind::Zmod(n), RingElement::Residue(r)) => {
            let pe = p_part_modulus(*n, p);
            RingElement::Residue(crt(&[(*r, pe), (0, n / pe)]))
        }
        (Kind::Galois(_), _) => a.clone(),
        (Kind::Matrix { inner, .. }, RingElement::Matrix(es)) => {
            RingElement::Matrix(es.iter().map(|x| inject_prime(inner, p, x)).collect())
        }
        (Kind::Nil { inner, .. }, RingElement::Trunc(xs)) => {
            RingElement::Trunc(xs.iter().map(|x| inject_prime(inner, p, x)).collect())
        }
        (Kind::Product(fs), _) => {
            let carriers: Vec<usize> = (0..fs.len())
                .filter(|&i| fs[i].characteristic() % p == 0)
                .collect();
            let parts: Vec<RingElement> = if carriers.len() == 1 {
                vec![a.clone()]
            } else {
                match a {
                    RingElement::Tuple(xs) => xs.clone(),
                    _ => panic!("element {a} is not a tuple"),
                }
            };
            let mut out: Vec<_> = fs.iter().map(|f| f.zero()).collect();
            for (&i, x) in carriers.iter().zip(parts) {
                out[i] = inject_prime(&fs[i], p, &x);
            }
            RingElement::Tuple(out)
        }
        _ => panic!("element {a} does not fit {}", ring.spec()),
    }
}

fn p_part_modulus(n: u64, p: u64) -> u64 {
    let mut pe = 1;
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
        pe *= p;
    }
    pe
}

/// The finest syntactic direct-product splitting of `spec`, if any.
pub fn components(spec: &RingSpec) -> Option<Vec<RingSpec>> {
    match spec {
        RingSpec::Prod(fs) => Some(fs.clone()),
        RingSpec::Zmod(n) => {
            let f = factorize(*n);
            (f.len() > 1).then(|| f.iter().map(|&(p, e)| RingSpec::Zmod(p.pow(e))).collect())
        }
        RingSpec::Mat(d, inner) => {
            components(inner).map(|cs| cs.into_iter().map(|c| RingSpec::mat(*d, c)).collect())
        }
        RingSpec::Ut(d, inner) => {
            components(inner).map(|cs| cs.into_iter().map(|c| RingSpec::ut(*d, c)).collect())
        }
        RingSpec::Nil(inner, k) => {
            components(inner).map(|cs| cs.into_iter().map(|c| RingSpec::nil(c, *k)).collect())
        }
        RingSpec::Gf(_) | RingSpec::Gr { .. } => None,
    }
}

/// Projection of `a` onto component `i` of [`components`].
pub fn project_component(ring: &FiniteRing, i: usize, a: &RingElement) -> RingElement {
    match (&ring.kind, a) {
        (Kind::Product(_), RingElement::Tuple(xs)) => xs[i].clone(),
        (Kind::Zmod(n), RingElement::Residue(r)) => {
            let (p, e) = factorize(*n)[i];
            RingElement::Residue(r % p.pow(e))
        }
        (Kind::Matrix { inner, .. }, RingElement::Matrix(es)) => {
            RingElement::Matrix(es.iter().map(|x| project_component(inner, i, x)).collect())
        }
        (Kind::Nil { inner, .. }, RingElement::Trunc(xs)) => {
            RingElement::Trunc(xs.iter().map(|x| project_component(inner, i, x)).collect())
        }
        _ => panic!("{} has no component {i}", ring.spec()),
    }
}

/// Injection of a component-`i` element into the ring (zero elsewhere).
pub fn inject_component(ring: &FiniteRing, i: usize, a: &RingElement) -> RingElement {
    match (&ring.kind, a) {
        (Kind::Product(fs), _) => {
            let mut out: Vec<_> = fs.iter().map(|f| f.zero()).collect();
            out[i] = a.clone();
            RingElement::Tuple(out)
        }
        (Kind::Zmod(n), RingElement::Residue(r)) => {
            let (p, e) = factorize(*n)[i];
            let pe = p.pow(e);
            RingElement::Residue(crt(&[(*r, pe), (0, n / pe)]))
        }
        (Kind::Matrix { inner, .. }, RingElement::Matrix(es)) => {
            RingElement::Matrix(es.iter().map(|x| inject_component(inner, i, x)).collect())
        }
        (Kind::Nil { inner, .. }, RingElement::Trunc(xs)) => {
            RingElement::Trunc(xs.iter().map(|x| inject_component(inner, i, x)).collect())
        }
        _ => panic!("{} has no component {i}", ring.spec()),
    }
}

/// Builds the component rings of [`components`].
pub fn component_rings(ring: &FiniteRing) -> Result<Option<Vec<Arc<FiniteRing>>>> {
    match components(ring.spec()) {
        None => Ok(None),
        Some(cs) => cs
            .iter()
            .map(|c| FiniteRing::build_with_cap(c, ring.cap()))
            .collect::<Result<Vec<_>>>()
            .map(Some),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: &str) -> RingSpec {
        RingSpec::parse(s).unwrap()
    }

    #[test]
    fn characteristic_factors_with_multipliers() {
        let r = FiniteRing::parse("Zmod(6)").unwrap();
        let f = decompose_by_characteristic(&r);
        assert_eq!(
            f.iter().map(|c| (c.spec.clone(), c.multiplier)).collect::<Vec<_>>(),
            vec![(spec("Zmod(2)"), 3), (spec("Zmod(3)"), 2)]
        );
        let r = FiniteRing::parse("Mat(2,Zmod(6))").unwrap();
        let f = decompose_by_characteristic(&r);
        assert_eq!(
            f.iter().map(|c| (c.spec.clone(), c.multiplier)).collect::<Vec<_>>(),
            vec![(spec("Mat(2,Zmod(2))"), 81), (spec("Mat(2,Zmod(3))"), 16)]
        );
        let r = FiniteRing::parse("GF(8)").unwrap();
        let f = decompose_by_characteristic(&r);
        assert_eq!(f.len(), 1);
        assert_eq!((f[0].spec.clone(), f[0].multiplier), (spec("GF(8)"), 1));
    }

    #[test]
    fn product_prime_parts() {
        let r = FiniteRing::parse("Prod(GF(4),Zmod(9),Zmod(2))").unwrap();
        let f = decompose_by_characteristic(&r);
        assert_eq!(f[0].spec, spec("Prod(GF(4),Zmod(2))"));
        assert_eq!(f[1].spec, spec("Zmod(9)"));
        assert_eq!(f[0].multiplier, 9);
        assert_eq!(f[1].multiplier, 8);
    }

    #[test]
    fn components_distribute() {
        assert_eq!(
            components(&spec("Mat(2,Zmod(12))")),
            Some(vec![spec("Mat(2,Zmod(4))"), spec("Mat(2,Zmod(3))")])
        );
        assert_eq!(components(&spec("Zmod(8)")), None);
        assert_eq!(components(&spec("GF(4)")), None);
    }

    #[test]
    fn crt_reassembly_reproduces_every_element() {
        for s in ["Zmod(12)", "Mat(2,Zmod(6))", "Prod(GF(4),Zmod(9))", "Nil(Zmod(10),2)"] {
            let r = FiniteRing::parse(s).unwrap();
            let factors = decompose_by_characteristic(&r);
            let chars: Vec<u64> = factors
                .iter()
                .map(|f| FiniteRing::build(&f.spec).unwrap().characteristic())
                .collect();
            assert_eq!(chars.iter().product::<u64>(), r.characteristic());
            for a in r.elements().unwrap() {
                let back = factors.iter().fold(r.zero(), |acc, f| {
                    let part = project_prime(&r, f.prime, &a);
                    r.add(&acc, &inject_prime(&r, f.prime, &part))
                });
                assert_eq!(back, a, "{s}");
            }
        }
    }

    #[test]
    fn projections_are_multiplicative() {
        let r = FiniteRing::parse("Mat(2,Zmod(6))").unwrap();
        let r2 = FiniteRing::parse("Mat(2,Zmod(2))").unwrap();
        for i in (0..r.order()).step_by(37) {
            for j in (0..r.order()).step_by(53) {
                let (a, b) = (r.element_at(i), r.element_at(j));
                let lhs = project_prime(&r, 2, &r.mul(&a, &b));
                let rhs = r2.mul(&project_prime(&r, 2, &a), &project_prime(&r, 2, &b));
                assert_eq!(lhs, rhs);
            }
        }
    }
}
