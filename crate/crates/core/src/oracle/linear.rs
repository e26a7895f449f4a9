//! Kernels of linear maps between finite abelian `p`-groups.
//!
//! The source is `S = ⊕ Z/n_c` and the target `⊕ Z/m_t`, every `n_c`, `m_t`
//! dividing `N = p^M`. Rows are rescaled by `N/m_t` so the system lives over
//! `Z/N`; its solutions in `(Z/N)^C` are diagonalized by valuation pivoting
//! (Smith form) and then pushed down to `S`.

use num_bigint::BigUint;

use crate::ntheory::{inv_mod, mul_mod, sub_mod, valuation};

/// Solution set of a homogeneous system, described by generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Kernel {
    /// Generators in source coordinates, each reduced mod its `n_c`.
    pub generators: Vec<Vec<u64>>,
    /// The kernel has `p^log_size` elements.
    pub log_size: u64,
    pub p: u64,
}

impl Kernel {
    pub fn size(&self) -> BigUint {
        BigUint::from(self.p).pow(self.log_size as u32)
    }
}

/// Kernel of `x -> (sum_c a[t][c] x_c mod m_t)_t` on `⊕ Z/n_c`.
///
/// `p^big_m` must be a common multiple of all `n_c` and `m_t`, and the map
/// must be well defined (`a[t][c] * n_c = 0 mod m_t`).
pub fn kernel(
    a: &[Vec<u64>],
    src_moduli: &[u64],
    tgt_moduli: &[u64],
    p: u64,
    big_m: u32,
) -> Kernel {
    let n = p.pow(big_m);
    let cols = src_moduli.len();
    let mut b: Vec<Vec<u64>> = a
        .iter()
        .zip(tgt_moduli)
        .map(|(row, &mt)| {
            debug_assert_eq!(row.len(), cols);
            row.iter().map(|&x| mul_mod(x % mt, n / mt, n)).collect()
        })
        .filter(|row: &Vec<u64>| row.iter().any(|&x| x != 0))
        .collect();
    // column transform, b * c stays diagonalized; c[row][col]
    let mut c: Vec<Vec<u64>> = (0..cols)
        .map(|i| (0..cols).map(|j| u64::from(i == j)).collect())
        .collect();
    let rows = b.len();
    let mut pivots: Vec<u32> = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let best = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| b[i][j] != 0)
            .min_by_key(|&(i, j)| valuation(b[i][j], p));
        let Some((pi, pj)) = best else { break };
        b.swap(t, pi);
        for row in b.iter_mut().chain(c.iter_mut()) {
            row.swap(t, pj);
        }
        let v = valuation(b[t][t], p);
        let pv = p.pow(v);
        let unit = b[t][t] / pv;
        let uinv = inv_mod(unit % n, n).expect("pivot unit");
        for x in b[t].iter_mut() {
            *x = mul_mod(*x, uinv, n);
        }
        let pivot_row = b[t].clone();
        for (i, row) in b.iter_mut().enumerate() {
            if i != t && row[t] != 0 {
                let f = row[t] / pv;
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = sub_mod(*x, mul_mod(f, y, n), n);
                }
            }
        }
        for j in 0..cols {
            if j != t && b[t][j] != 0 {
                let f = b[t][j] / pv;
                for row in b.iter_mut().chain(c.iter_mut()) {
                    let d = mul_mod(f, row[t], n);
                    row[j] = sub_mod(row[j], d, n);
                }
            }
        }
        pivots.push(v);
        t += 1;
    }
    let rank = pivots.len();
    // solutions over Z/N: y_t in p^{M - v_t} Z/N for pivot columns, free otherwise
    let mut log_lifted: u64 = 0;
    let mut generators = Vec::new();
    for col in 0..cols {
        let scale = if col < rank {
            let v = pivots[col].min(big_m);
            log_lifted += v as u64;
            if v == 0 {
                continue;
            }
            p.pow(big_m - v)
        } else {
            log_lifted += big_m as u64;
            1
        };
        let g: Vec<u64> = (0..cols)
            .map(|i| mul_mod(c[i][col], scale, n) % src_moduli[i])
            .collect();
        if g.iter().any(|&x| x != 0) {
            generators.push(g);
        }
    }
    // the surjection (Z/N)^C -> S has kernel of size prod N/n_c, all inside
    // the lifted solution set
    let log_fibre: u64 = src_moduli
        .iter()
        .map(|&nc| (big_m - valuation(nc, p)) as u64)
        .sum();
    Kernel {
        generators,
        log_size: log_lifted - log_fibre,
        p,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeSet;

    /// All solutions by enumeration.
    fn brute(a: &[Vec<u64>], src: &[u64], tgt: &[u64]) -> BTreeSet<Vec<u64>> {
        let total: u64 = src.iter().product();
        (0..total)
            .map(|mut idx| {
                src.iter()
                    .map(|&n| {
                        let x = idx % n;
                        idx /= n;
                        x
                    })
                    .collect::<Vec<u64>>()
            })
            .filter(|x| {
                a.iter().zip(tgt).all(|(row, &m)| {
                    row.iter().zip(x).map(|(&r, &v)| r * v).sum::<u64>() % m == 0
                })
            })
            .collect()
    }

    /// Subgroup generated by `gens`.
    fn span(gens: &[Vec<u64>], src: &[u64]) -> BTreeSet<Vec<u64>> {
        let mut set: BTreeSet<Vec<u64>> = BTreeSet::from([vec![0; src.len()]]);
        loop {
            let mut grew = false;
            let current: Vec<_> = set.iter().cloned().collect();
            for x in &current {
                for g in gens {
                    let y: Vec<u64> = x.iter().zip(g).zip(src).map(|((a, b), n)| (a + b) % n).collect();
                    grew |= set.insert(y);
                }
            }
            if !grew {
                return set;
            }
        }
    }

    fn check(a: Vec<Vec<u64>>, src: Vec<u64>, tgt: Vec<u64>, p: u64, big_m: u32) {
        let k = kernel(&a, &src, &tgt, p, big_m);
        let expect = brute(&a, &src, &tgt);
        assert_eq!(k.size(), BigUint::from(expect.len()));
        assert_eq!(span(&k.generators, &src), expect);
    }

    #[test]
    fn small_systems_match_enumeration() {
        check(vec![vec![2]], vec![4], vec![4], 2, 2);
        check(vec![vec![1, 1], vec![0, 2]], vec![4, 4], vec![4, 4], 2, 2);
        check(vec![vec![1, 3, 0], vec![2, 0, 4]], vec![8, 8, 2], vec![8, 8], 2, 3);
        check(vec![vec![3, 6, 3]], vec![9, 9, 3], vec![9], 3, 2);
        check(vec![vec![2, 2], vec![1, 0]], vec![2, 4], vec![4, 2], 2, 2);
        check(vec![], vec![3, 9], vec![], 3, 2);
    }

    #[test]
    fn random_systems_match_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(12345);
        let mut next = |m: u64| rng.gen_range(0..m);
        for _ in 0..40 {
            let cols = 1 + next(4) as usize;
            let rows = next(4) as usize;
            let src: Vec<u64> = (0..cols).map(|_| [2, 4, 8][next(3) as usize]).collect();
            let tgt: Vec<u64> = (0..rows).map(|_| [2, 4, 8][next(3) as usize]).collect();
            // entries chosen so the map is well defined: a * n_c = 0 mod m_t
            let a: Vec<Vec<u64>> = tgt
                .iter()
                .map(|&m| {
                    src.iter()
                        .map(|&n| {
                            let step = m / crate::ntheory::gcd(m, n);
                            step * next(m) % m
                        })
                        .collect()
                })
                .collect();
            check(a, src, tgt, 2, 3);
        }
    }
}
