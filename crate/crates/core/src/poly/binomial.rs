use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::ntheory::is_prime;

/// Exact `C(k, j)`; zero when `j > k`.
pub fn binomial_big(k: u64, j: u64) -> BigUint {
    if j > k {
        return BigUint::from(0u32);
    }
    let j = j.min(k - j);
    let mut acc = BigUint::one();
    for i in 0..j {
        acc *= k - i;
        acc /= i + 1;
    }
    acc
}

/// `C(k, j) mod p` for a prime `p` by Lucas' theorem.
pub fn binomial_lucas(mut k: u64, mut j: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while j > 0 || k > 0 {
        let (kd, jd) = (k % p, j % p);
        if jd > kd {
            return 0;
        }
        let digit = binomial_big(kd, jd) % p;
        acc = acc * digit.to_u64().unwrap() % p;
        k /= p;
        j /= p;
    }
    acc % p
}

/// `C(k, j) mod n` for `n >= 2`; zero when `j > k`.
///
/// Prime moduli go through Lucas' theorem, everything else through the exact
/// big-integer binomial.
pub fn binomial_mod_char(k: u64, j: u64, n: u64) -> u64 {
    assert!(n >= 2, "modulus must be at least 2");
    if j > k {
        return 0;
    }
    if is_prime(n) {
        binomial_lucas(k, j, n)
    } else {
        (binomial_big(k, j) % n).to_u64().unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert_eq!(binomial_mod_char(10, 2, 2), 1); // 45 mod 2
        assert_eq!(binomial_mod_char(4, 1, 2), 0);
        assert_eq!(binomial_mod_char(3, 3, 2), 1);
        assert_eq!(binomial_mod_char(3, 5, 7), 0);
        assert_eq!(binomial_mod_char(10, 3, 12), 0); // 120
        assert_eq!(binomial_mod_char(10, 2, 9), 0); // 45
        assert_eq!(binomial_mod_char(10, 2, 4), 1);
    }

    #[test]
    fn pascal_rule() {
        for n in [2u64, 3, 4, 6, 8, 9, 12, 25] {
            for k in 1..=64u64 {
                for j in 1..=k {
                    let lhs = binomial_mod_char(k, j, n);
                    let rhs =
                        (binomial_mod_char(k - 1, j - 1, n) + binomial_mod_char(k - 1, j, n)) % n;
                    assert_eq!(lhs, rhs, "n={n} k={k} j={j}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn lucas_agrees_with_big_integers(k in 0u64..10_000, frac in 0.0f64..1.0, pi in 0usize..6) {
            let p = [2u64, 3, 5, 7, 11, 13][pi];
            let j = (k as f64 * frac) as u64;
            let big = (binomial_big(k, j) % p).to_u64().unwrap();
            prop_assert_eq!(binomial_lucas(k, j, p), big);
        }
    }
}
