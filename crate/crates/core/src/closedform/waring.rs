//! Power sums in terms of elementary symmetric polynomials.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// One summand `coefficient * prod_j sigma_j^{i_j}` of `p_k`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct WaringTerm {
    /// `(i_1, ..., i_n)` with `sum_j j i_j = k`.
    pub exponents: Vec<u64>,
    pub coefficient: BigInt,
}

pub(crate) fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// `(-1)^{i_2 + i_4 + ...} (i_1 + ... + i_n - 1)! k / (i_1! ... i_n!)`.
fn coefficient(k: u64, exponents: &[u64]) -> BigInt {
    let total: u64 = exponents.iter().sum();
    let num = factorial(total - 1) * k;
    let den = exponents
        .iter()
        .fold(BigUint::one(), |acc, &i| acc * factorial(i));
    let (quot, rem) = num.div_rem(&den);
    assert!(rem.is_zero(), "Waring coefficient is not integral");
    let even_parts: u64 = exponents.iter().skip(1).step_by(2).sum();
    let c = BigInt::from(quot);
    if even_parts % 2 == 1 {
        -c
    } else {
        c
    }
}

/// Every term of `p_k = x_1^k + ... + x_n^k` written in `sigma_1..sigma_n`.
/// Terms come in lexicographic order of their exponent vectors.
pub fn waring_power_sum(k: u64, n: usize) -> Result<Vec<WaringTerm>> {
    if k == 0 || n == 0 {
        return Err(Error::InvalidArgument(format!(
            "Waring's formula needs k >= 1 and n >= 1, got k = {k}, n = {n}"
        )));
    }
    let mut out = Vec::new();
    let mut current = vec![0u64; n];
    fill(k, n, 0, &mut current, &mut out);
    out.sort();
    Ok(out)
}

fn fill(remaining: u64, n: usize, slot: usize, current: &mut Vec<u64>, out: &mut Vec<WaringTerm>) {
    if slot == n {
        if remaining == 0 {
            out.push(WaringTerm {
                coefficient: coefficient(current.iter().zip(1..).map(|(&i, j)| i * j).sum(), current),
                exponents: current.clone(),
            });
        }
        return;
    }
    let j = slot as u64 + 1;
    for i in 0..=remaining / j {
        current[slot] = i;
        fill(remaining - i * j, n, slot + 1, current, out);
    }
    current[slot] = 0;
}

/// `sum coefficient * prod sigma_j^{i_j}` with `sigmas[j - 1] = sigma_j`.
pub fn evaluate(terms: &[WaringTerm], sigmas: &[BigInt]) -> BigInt {
    terms
        .iter()
        .map(|t| {
            t.exponents
                .iter()
                .zip(sigmas)
                .fold(t.coefficient.clone(), |acc, (&i, s)| acc * s.pow(i as u32))
        })
        .sum()
}

/// `[sigma_1, ..., sigma_n]` of the values `xs`.
pub fn elementary_symmetric(xs: &[BigInt]) -> Vec<BigInt> {
    let mut e = vec![BigInt::zero(); xs.len() + 1];
    e[0] = BigInt::one();
    for (seen, x) in xs.iter().enumerate() {
        for j in (1..=seen + 1).rev() {
            let add = &e[j - 1] * x;
            e[j] += add;
        }
    }
    e.remove(0);
    e
}
