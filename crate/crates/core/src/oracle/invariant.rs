//! The translation-invariant polynomials of degree at most `D`.

use std::sync::Arc;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::linear;
use crate::error::{Error, Result};
use crate::invariance::is_translation_invariant;
use crate::poly::Poly;
use crate::ring::{FiniteRing, RingSpec};

/// Largest number of coefficient vectors the exhaustive method will visit.
pub const DEFAULT_EXHAUSTIVE_CAP: u128 = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvariantMethod {
    Exhaustive,
    LinearSolve,
}

impl InvariantMethod {
    pub fn name(self) -> &'static str {
        match self {
            InvariantMethod::Exhaustive => "exhaustive",
            InvariantMethod::LinearSolve => "linear-solve",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct InvariantOptions {
    pub exhaustive_cap: u128,
    /// Force a method instead of choosing by size.
    pub method: Option<InvariantMethod>,
}

impl Default for InvariantOptions {
    fn default() -> Self {
        InvariantOptions {
            exhaustive_cap: DEFAULT_EXHAUSTIVE_CAP,
            method: None,
        }
    }
}

/// All translation-invariant `f` with `deg f <= D`.
#[derive(Debug, Clone)]
pub struct InvariantSpaceReport {
    pub ring: RingSpec,
    pub degree_bound: usize,
    pub method: InvariantMethod,
    /// Exhaustive: every invariant polynomial, in index order. Linear-solve:
    /// generators of the solution module.
    pub polys: Vec<Poly>,
    pub count: BigUint,
}

impl InvariantSpaceReport {
    pub fn to_json(&self) -> Value {
        let key = match self.method {
            InvariantMethod::Exhaustive => "polys",
            InvariantMethod::LinearSolve => "generators",
        };
        json!({
            "ring": self.ring.to_string(),
            "D": self.degree_bound,
            "method": self.method.name(),
            "count": self.count.to_string(),
            key: self.polys.iter().map(Poly::to_json).collect::<Vec<_>>(),
        })
    }
}

/// The additive map `f -> (f(T + g) - f(T))_g` over the generators `g` of
/// `(R, +)`, in coordinates. Source coordinates are those of the
/// coefficients of `T^0..T^D`; `columns[c]` is the image of the `c`-th unit.
pub(crate) struct DifferenceMap {
    pub ring: Arc<FiniteRing>,
    pub degree_bound: usize,
    pub src_moduli: Vec<u64>,
    pub tgt_moduli: Vec<u64>,
    pub columns: Vec<Vec<u64>>,
}

impl DifferenceMap {
    pub fn new(ring: &Arc<FiniteRing>, degree_bound: usize) -> Self {
        let units = ring.additive_generators();
        let width = ring.radices().len();
        let src_moduli = ring.radices().repeat(degree_bound + 1);
        let tgt_moduli = src_moduli.repeat(units.len());
        let columns = (0..=degree_bound)
            .flat_map(|j| units.iter().map(move |u| (j, u)))
            .map(|(j, u)| {
                let f = Poly::monomial(ring, u.clone(), j);
                let mut col = Vec::with_capacity(tgt_moduli.len());
                for g in &units {
                    let diff = f.translate_trusted(g).add_trusted(&f.neg());
                    for d in 0..=degree_bound {
                        col.extend(ring.coords(&diff.coeff(d)));
                    }
                }
                debug_assert_eq!(col.len(), width * (degree_bound + 1) * units.len());
                col
            })
            .collect();
        DifferenceMap {
            ring: ring.clone(),
            degree_bound,
            src_moduli,
            tgt_moduli,
            columns,
        }
    }

    /// Coordinates of `f`, which must have degree at most `D`.
    pub fn coords_of(&self, f: &Poly) -> Vec<u64> {
        (0..=self.degree_bound)
            .flat_map(|d| self.ring.coords(&f.coeff(d)))
            .collect()
    }

    pub fn poly_of(&self, coords: &[u64]) -> Poly {
        let w = self.ring.radices().len();
        let coeffs = coords.chunks(w).map(|c| self.ring.from_coords(c)).collect();
        Poly::from_trusted(&self.ring, coeffs)
    }

    /// Whether `coords` lies in the kernel, i.e. its polynomial is invariant
    /// under every additive generator.
    pub fn annihilates(&self, coords: &[u64]) -> bool {
        let mut image = vec![0u64; self.tgt_moduli.len()];
        for (col, &x) in self.columns.iter().zip(coords) {
            if x != 0 {
                for ((slot, &v), &m) in image.iter_mut().zip(col).zip(&self.tgt_moduli) {
                    *slot = ((*slot as u128 + v as u128 * x as u128) % m as u128) as u64;
                }
            }
        }
        image.iter().all(|&v| v == 0)
    }

    /// Every kernel vector with mixed-radix index in `range`, by odometer.
    fn scan(&self, range: std::ops::Range<u128>) -> Vec<Vec<u64>> {
        let mut out = Vec::new();
        if range.is_empty() {
            return out;
        }
        let mut idx = range.start;
        let mut x: Vec<u64> = self
            .src_moduli
            .iter()
            .map(|&n| {
                let c = (idx % n as u128) as u64;
                idx /= n as u128;
                c
            })
            .collect();
        let mut image = vec![0u64; self.tgt_moduli.len()];
        for (col, &c) in self.columns.iter().zip(&x) {
            for ((slot, &v), &m) in image.iter_mut().zip(col).zip(&self.tgt_moduli) {
                *slot = ((*slot as u128 + v as u128 * c as u128) % m as u128) as u64;
            }
        }
        let mut nonzero = image.iter().filter(|&&v| v != 0).count();
        for _ in range {
            if nonzero == 0 {
                out.push(x.clone());
            }
            // increment; a coordinate wrapping from n-1 to 0 adds n * column = 0
            // minus (n-1) * column, i.e. the column once more
            for (c, xc) in x.iter_mut().enumerate() {
                *xc += 1;
                let wrapped = *xc == self.src_moduli[c];
                if wrapped {
                    *xc = 0;
                }
                for ((slot, &v), &m) in image.iter_mut().zip(&self.columns[c]).zip(&self.tgt_moduli) {
                    if v != 0 {
                        let was = *slot != 0;
                        *slot = (*slot + v) % m;
                        match (was, *slot != 0) {
                            (true, false) => nonzero -= 1,
                            (false, true) => nonzero += 1,
                            _ => {}
                        }
                    }
                }
                if !wrapped {
                    break;
                }
            }
        }
        out
    }
}

/// All translation-invariant polynomials over `ring` of degree at most `d`.
pub fn invariant_polys_bruteforce(ring: &Arc<FiniteRing>, d: usize) -> Result<InvariantSpaceReport> {
    invariant_polys_with(ring, d, InvariantOptions::default())
}

pub fn invariant_polys_with(
    ring: &Arc<FiniteRing>,
    d: usize,
    opts: InvariantOptions,
) -> Result<InvariantSpaceReport> {
    if !ring.is_commutative() {
        return Err(Error::Unsupported(format!(
            "translation invariance over non-commutative {}",
            ring.spec()
        )));
    }
    ring.check_enumerable()?;
    let candidates = ring.order().checked_pow(d as u32 + 1);
    let fits = candidates.is_some_and(|c| c <= opts.exhaustive_cap);
    let method = match opts.method {
        Some(m) => m,
        None if fits => InvariantMethod::Exhaustive,
        None => InvariantMethod::LinearSolve,
    };
    let map = DifferenceMap::new(ring, d);
    match method {
        InvariantMethod::Exhaustive => {
            let total = candidates
                .filter(|_| fits)
                .ok_or_else(|| {
                    Error::Infeasible(format!(
                        "{}^{} coefficient vectors exceed the exhaustive cap {}",
                        ring.order(),
                        d + 1,
                        opts.exhaustive_cap
                    ))
                })?;
            let parts = 256u128.min(total);
            let step = total.div_ceil(parts);
            let found: Vec<Vec<Vec<u64>>> = (0..parts)
                .into_par_iter()
                .map(|i| map.scan((i * step).min(total)..((i + 1) * step).min(total)))
                .collect();
            let polys: Vec<Poly> = found.into_iter().flatten().map(|x| map.poly_of(&x)).collect();
            // confirm every survivor against all translations
            for f in &polys {
                if !is_translation_invariant(ring, f)? {
                    return Err(Error::Infeasible(format!(
                        "generator filter accepted a non-invariant polynomial {f}"
                    )));
                }
            }
            let count = BigUint::from(polys.len());
            Ok(InvariantSpaceReport {
                ring: ring.spec().clone(),
                degree_bound: d,
                method,
                polys,
                count,
            })
        }
        InvariantMethod::LinearSolve => {
            let (p, big_m) = ring.prime_power_characteristic().ok_or_else(|| {
                Error::Infeasible(format!(
                    "linear solve needs prime-power characteristic, {} has {}",
                    ring.spec(),
                    ring.characteristic()
                ))
            })?;
            let rows: Vec<Vec<u64>> = (0..map.tgt_moduli.len())
                .map(|t| map.columns.iter().map(|col| col[t]).collect())
                .collect();
            let k = linear::kernel(&rows, &map.src_moduli, &map.tgt_moduli, p, big_m);
            let polys: Vec<Poly> = k.generators.iter().map(|g| map.poly_of(g)).collect();
            for f in &polys {
                if !is_translation_invariant(ring, f)? {
                    return Err(Error::Infeasible(format!(
                        "solution generator {f} is not invariant"
                    )));
                }
            }
            Ok(InvariantSpaceReport {
                ring: ring.spec().clone(),
                degree_bound: d,
                method,
                polys,
                count: k.size(),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(s: &str) -> Arc<FiniteRing> {
        FiniteRing::parse(s).unwrap()
    }

    #[test]
    fn exhaustive_examples() {
        let f2 = ring("GF(2)");
        let r = invariant_polys_bruteforce(&f2, 2).unwrap();
        assert_eq!(r.method, InvariantMethod::Exhaustive);
        let expect: Vec<Poly> = [vec![], vec![1], vec![0, 1, 1], vec![1, 1, 1]]
            .iter()
            .map(|c| Poly::from_ints(&f2, c))
            .collect();
        assert_eq!(r.polys, expect);
        assert_eq!(r.count, BigUint::from(4u32));

        let z4 = ring("Zmod(4)");
        let r = invariant_polys_bruteforce(&z4, 2).unwrap();
        // c2 in {0, 2}, c1 = -c2, c0 free
        assert_eq!(r.count, BigUint::from(8u32));
        for f in &r.polys {
            let c2 = f.coeff(2);
            assert!(c2 == z4.zero() || c2 == z4.from_int(2));
            assert_eq!(f.coeff(1), z4.neg(&c2));
        }

        let f3 = ring("GF(3)");
        let r = invariant_polys_bruteforce(&f3, 2).unwrap();
        assert_eq!(r.count, BigUint::from(3u32));
        assert!(r.polys.iter().all(|f| f.degree().unwrap_or(0) == 0));
    }

    #[test]
    fn methods_agree_on_counts() {
        for (s, d) in [
            ("GF(2)", 6),
            ("GF(4)", 5),
            ("Zmod(4)", 6),
            ("Zmod(8)", 4),
            ("Zmod(9)", 4),
            ("Nil(GF(2),2)", 5),
            ("GF(3)", 7),
            ("Prod(GF(2),GF(2))", 4),
        ] {
            let r = ring(s);
            let force = |m| InvariantOptions {
                method: Some(m),
                ..Default::default()
            };
            let ex = invariant_polys_with(&r, d, force(InvariantMethod::Exhaustive)).unwrap();
            let ls = invariant_polys_with(&r, d, force(InvariantMethod::LinearSolve)).unwrap();
            assert_eq!(ex.count, ls.count, "{s} D={d}");
        }
    }

    #[test]
    fn non_commutative_rejected() {
        assert!(invariant_polys_bruteforce(&ring("UT(2,GF(2))"), 2).is_err());
    }
}
