//! Deterministic choice of irreducible polynomials over prime fields.

use crate::ntheory::{mul_mod, sub_mod};

/// Monic polynomial of degree `deg` with index `idx` in the mixed-radix order
/// of its lower coefficients (constant term least significant).
fn monic_from_index(p: u64, deg: usize, mut idx: u64) -> Vec<u64> {
    let mut c = vec![0u64; deg + 1];
    for slot in c.iter_mut().take(deg) {
        *slot = idx % p;
        idx /= p;
    }
    c[deg] = 1;
    c
}

/// Remainder of `a` modulo the monic polynomial `m`, coefficients over F_p.
fn rem_monic(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let dm = m.len() - 1;
    let mut r = a.to_vec();
    while r.len() > dm {
        let lead = r.pop().unwrap();
        if lead != 0 {
            let shift = r.len() - dm;
            for (i, &mc) in m[..dm].iter().enumerate() {
                r[shift + i] = sub_mod(r[shift + i], mul_mod(lead, mc, p), p);
            }
        }
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    r
}

/// True when the monic polynomial `f` over F_p has no monic factor of degree
/// `1..=deg(f)/2`, checked by trial division.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let e = f.len() - 1;
    debug_assert_eq!(f[e], 1);
    for d in 1..=e / 2 {
        let count = p.pow(d as u32);
        for idx in 0..count {
            let g = monic_from_index(p, d, idx);
            if rem_monic(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// The smallest monic irreducible polynomial of degree `e` over F_p, where
/// polynomials are ordered by the integer `sum c_i p^i` of their lower
/// coefficients. Coefficients are returned constant term first.
pub fn find_irreducible(p: u64, e: usize) -> Vec<u64> {
    assert!(e >= 1);
    if e == 1 {
        return vec![0, 1];
    }
    let count = p.pow(e as u32);
    (0..count)
        .map(|idx| monic_from_index(p, e, idx))
        .find(|f| f[0] != 0 && is_irreducible(f, p))
        .expect("an irreducible polynomial of every degree exists")
}

#[cfg(test)]
fn has_root(f: &[u64], p: u64) -> bool {
    (0..p).any(|x| {
        f.iter()
            .rev()
            .fold(0u64, |acc, &c| (mul_mod(acc, x, p) + c) % p)
            == 0
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_irreducibles() {
        assert_eq!(find_irreducible(2, 1), vec![0, 1]);
        assert_eq!(find_irreducible(2, 2), vec![1, 1, 1]);
        assert_eq!(find_irreducible(3, 2), vec![1, 0, 1]);
        assert_eq!(find_irreducible(2, 3), vec![1, 1, 0, 1]);
        assert_eq!(find_irreducible(2, 4), vec![1, 1, 0, 0, 1]);
    }

    #[test]
    fn brute_force_oracle_for_small_degrees() {
        // Degree 2 and 3 polynomials are irreducible iff they have no root.
        for p in [2u64, 3, 5, 7] {
            for e in [2usize, 3] {
                let f = find_irreducible(p, e);
                assert!(!has_root(&f, p));
                let value = |g: &[u64]| g[..e].iter().rev().fold(0u64, |a, &c| a * p + c);
                for idx in 0..value(&f) {
                    let g = monic_from_index(p, e, idx);
                    assert!(has_root(&g, p), "p={p} e={e} missed {g:?}");
                }
            }
        }
    }
}
