//! Structural properties of rings, polynomials and power sums.

use std::sync::Arc;

use proptest::prelude::*;
use ringsums::invariance::{is_translation_invariant, verify_twitt_span};
use ringsums::oracle::power_sum_table;
use ringsums::ring::galois::residue_field_spec;
use ringsums::ring::{decompose_by_characteristic, teichmuller_lift};
use ringsums::{FiniteRing, Poly, RingElement};

const CATALOG: [&str; 15] = [
    "Zmod(12)",
    "GF(8)",
    "GF(9)",
    "GR(2,3,2)",
    "GR(3,2,2)",
    "Mat(2,Zmod(4))",
    "Mat(2,GF(4))",
    "UT(3,Zmod(3))",
    "Nil(GF(4),3)",
    "Nil(Zmod(9),2)",
    "Prod(GF(4),Zmod(9))",
    "Mat(2,Prod(GF(2),GF(3)))",
    "Mat(1,Nil(GF(2),2))",
    "UT(2,Nil(GF(2),2))",
    "Prod(UT(2,GF(2)),Zmod(3))",
];

fn ring(s: &str) -> Arc<FiniteRing> {
    FiniteRing::parse(s).unwrap()
}

fn pick(r: &FiniteRing, seed: u64) -> RingElement {
    r.element_at(seed as u128 % r.order())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(which in 0..CATALOG.len(), x in any::<u64>(), y in any::<u64>(), z in any::<u64>()) {
        let r = ring(CATALOG[which]);
        let (a, b, c) = (pick(&r, x), pick(&r, y), pick(&r, z));
        prop_assert_eq!(r.add(&r.add(&a, &b), &c), r.add(&a, &r.add(&b, &c)));
        prop_assert_eq!(r.mul(&r.mul(&a, &b), &c), r.mul(&a, &r.mul(&b, &c)));
        prop_assert_eq!(r.mul(&a, &r.add(&b, &c)), r.add(&r.mul(&a, &b), &r.mul(&a, &c)));
        prop_assert_eq!(r.mul(&r.add(&a, &b), &c), r.add(&r.mul(&a, &c), &r.mul(&b, &c)));
        prop_assert_eq!(r.add(&a, &b), r.add(&b, &a));
        prop_assert_eq!(r.add(&a, &r.neg(&a)), r.zero());
        prop_assert_eq!(r.mul(&a, &r.one()), a.clone());
        prop_assert_eq!(r.mul(&r.one(), &a), a.clone());
        if r.is_commutative() {
            prop_assert_eq!(r.mul(&a, &b), r.mul(&b, &a));
        }
    }

    #[test]
    fn pow_matches_iterated_multiplication(which in 0..CATALOG.len(), x in any::<u64>(), k in 0u64..=16) {
        let r = ring(CATALOG[which]);
        let a = pick(&r, x);
        let iterated = (0..k).fold(r.one(), |acc, _| r.mul(&acc, &a));
        prop_assert_eq!(r.pow(&a, k), iterated);
    }

    #[test]
    fn degree_of_product_over_a_field(
        f in proptest::collection::vec(0i128..9, 1..8),
        g in proptest::collection::vec(0i128..9, 1..8),
    ) {
        let r = ring("GF(9)");
        let (f, g) = (Poly::from_ints(&r, &f), Poly::from_ints(&r, &g));
        let fg = f.mul(&g).unwrap();
        match (f.degree(), g.degree()) {
            (Some(a), Some(b)) => prop_assert_eq!(fg.degree(), Some(a + b)),
            _ => prop_assert!(fg.is_zero()),
        }
    }
}

#[test]
fn commutativity_flag_matches_the_multiplication_table() {
    for s in CATALOG {
        let r = ring(s);
        let all: Vec<RingElement> = if r.order() <= 256 {
            r.elements().unwrap().collect()
        } else {
            r.additive_generators().into_iter().chain([r.one()]).collect()
        };
        let commutes = all
            .iter()
            .all(|a| all.iter().all(|b| r.mul(a, b) == r.mul(b, a)));
        assert_eq!(r.is_commutative(), commutes, "{s}");
    }
}

#[test]
fn characteristic_is_additive_order_of_one() {
    for s in CATALOG {
        let r = ring(s);
        let mut acc = r.one();
        let mut n = 1u64;
        while !r.is_zero(&acc) {
            acc = r.add(&acc, &r.one());
            n += 1;
        }
        assert_eq!(r.characteristic(), n, "{s}");
        assert_eq!(r.order() % n as u128, 0, "{s}");
    }
}

#[test]
fn enumeration_is_a_bijection_onto_indices() {
    for s in ["Nil(GF(4),3)", "UT(3,Zmod(3))", "Prod(GF(4),Zmod(9))"] {
        let r = ring(s);
        let all: Vec<RingElement> = r.elements().unwrap().collect();
        assert_eq!(all.len() as u128, r.order());
        let distinct: std::collections::HashSet<_> = all.iter().collect();
        assert_eq!(distinct.len(), all.len(), "{s}");
    }
}

#[test]
fn teichmuller_roots_of_unity_split_t_q_minus_1() {
    for s in ["GR(2,2,2)", "GR(3,2,1)", "GR(2,3,2)", "GR(5,2,1)", "GR(3,2,2)", "Zmod(27)"] {
        let r = ring(s);
        let residue = FiniteRing::build(&residue_field_spec(&r).unwrap()).unwrap();
        let q = residue.order() as usize;
        let mut prod = Poly::constant(&r, r.one());
        for a in residue.elements().unwrap().filter(|a| !residue.is_zero(a)) {
            let w = teichmuller_lift(&r, &a).unwrap();
            prod = prod
                .mul(&Poly::from_coeffs(&r, vec![r.neg(&w), r.one()]).unwrap())
                .unwrap();
        }
        let mut expect = vec![0i128; q];
        expect[0] = -1;
        expect[q - 1] += 1;
        assert_eq!(prod, Poly::from_ints(&r, &expect), "{s}");
    }
}

#[test]
fn characteristic_factors_are_coprime_and_multiply_out() {
    for s in ["Zmod(30)", "Mat(2,Zmod(6))", "Prod(GF(4),Zmod(9))", "Nil(Zmod(12),2)", "GF(8)"] {
        let r = ring(s);
        let factors = decompose_by_characteristic(&r);
        let chars: Vec<u64> = factors
            .iter()
            .map(|f| FiniteRing::build_uncapped(&f.spec).unwrap().characteristic())
            .collect();
        assert_eq!(chars.iter().product::<u64>(), r.characteristic(), "{s}");
        for (i, a) in chars.iter().enumerate() {
            for b in &chars[i + 1..] {
                assert_eq!(num_integer::gcd(*a, *b), 1, "{s}");
            }
        }
    }
}

#[test]
fn power_sums_are_translation_invariant() {
    for s in [
        "Zmod(12)",
        "GF(8)",
        "GF(9)",
        "GR(2,2,2)",
        "Nil(GF(4),2)",
        "Nil(Zmod(9),2)",
        "Prod(GF(4),Zmod(9))",
        "Zmod(25)",
    ] {
        let r = ring(s);
        for (k, p) in power_sum_table(&r, 24).unwrap().iter().enumerate() {
            assert!(is_translation_invariant(&r, p).unwrap(), "{s}, k = {k}");
        }
    }
}

#[test]
fn span_equality_over_truncated_z9() {
    let r = ring("Nil(Zmod(9),2)");
    let rep = verify_twitt_span(&r, 18).unwrap();
    assert!(rep.forward && rep.backward, "{:?}", rep.to_json());
    assert_eq!(rep.invariant_count, rep.span_count);
}
