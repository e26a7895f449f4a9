use std::sync::Arc;

use serde_json::Value;

use super::irreducible::find_irreducible;
use super::{RingElement, RingSpec};
use crate::error::{Error, Result};
use crate::ntheory::{add_mod, lcm, mul_mod, prime_power, sub_mod};

/// Default bound on the number of elements a ring may have.
pub const DEFAULT_CAP: u128 = 1 << 20;

/// Arithmetic data of a Galois ring `(Z/p^m)[y]/(f)`; fields use `m = 1`.
#[derive(Debug, Clone)]
pub(crate) struct Galois {
    pub p: u64,
    pub m: u32,
    pub e: usize,
    /// `p^m`
    pub modulus: u64,
    /// Monic defining polynomial, constant term first, length `e + 1`.
    pub defining: Vec<u64>,
}

#[derive(Debug)]
pub(crate) enum Kind {
    Zmod(u64),
    Galois(Galois),
    Matrix {
        d: usize,
        upper: bool,
        inner: Arc<FiniteRing>,
    },
    Nil {
        k: usize,
        inner: Arc<FiniteRing>,
    },
    Product(Vec<Arc<FiniteRing>>),
}

/// A realized finite unital ring: element codec plus exact arithmetic.
///
/// Elements are indexed `0..order` by a mixed-radix code over their canonical
/// coordinates, first coordinate least significant. Enumeration follows index
/// order.
#[derive(Debug)]
pub struct FiniteRing {
    spec: RingSpec,
    pub(crate) kind: Kind,
    order: u128,
    characteristic: u64,
    radices: Vec<u64>,
    cap: u128,
}

/// Number of elements described by `spec`, or `None` on overflow.
pub fn spec_order(spec: &RingSpec) -> Option<u128> {
    match spec {
        RingSpec::Zmod(n) | RingSpec::Gf(n) => Some(*n as u128),
        RingSpec::Gr { p, m, e } => (*p as u128).checked_pow(m.checked_mul(*e)?),
        RingSpec::Mat(d, inner) => spec_order(inner)?.checked_pow((d * d) as u32),
        RingSpec::Ut(d, inner) => spec_order(inner)?.checked_pow((d * (d + 1) / 2) as u32),
        RingSpec::Nil(inner, k) => spec_order(inner)?.checked_pow(*k as u32),
        RingSpec::Prod(fs) => fs
            .iter()
            .try_fold(1u128, |acc, f| acc.checked_mul(spec_order(f)?)),
    }
}

impl FiniteRing {
    /// Builds a ring, refusing anything with more than [`DEFAULT_CAP`] elements.
    pub fn build(spec: &RingSpec) -> Result<Arc<Self>> {
        Self::build_with_cap(spec, DEFAULT_CAP)
    }

    pub fn build_with_cap(spec: &RingSpec, cap: u128) -> Result<Arc<Self>> {
        spec.validate()?;
        let order = spec_order(spec)
            .ok_or_else(|| Error::Infeasible(format!("order of {spec} overflows")))?;
        if order > cap {
            return Err(Error::CapExceeded { order, cap });
        }
        Ok(Arc::new(Self::construct(spec, cap)))
    }

    /// Builds a ring without an enumeration cap; enumeration still refuses
    /// rings larger than [`DEFAULT_CAP`].
    pub fn build_uncapped(spec: &RingSpec) -> Result<Arc<Self>> {
        spec.validate()?;
        spec_order(spec).ok_or_else(|| Error::Infeasible(format!("order of {spec} overflows")))?;
        Ok(Arc::new(Self::construct(spec, DEFAULT_CAP)))
    }

    pub fn parse(text: &str) -> Result<Arc<Self>> {
        Self::build(&RingSpec::parse(text)?)
    }

    fn construct(spec: &RingSpec, cap: u128) -> Self {
        let (kind, characteristic) = match spec {
            RingSpec::Zmod(n) => (Kind::Zmod(*n), *n),
            RingSpec::Gf(q) => {
                let (p, e) = prime_power(*q).expect("validated");
                let g = Galois {
                    p,
                    m: 1,
                    e: e as usize,
                    modulus: p,
                    defining: find_irreducible(p, e as usize),
                };
                (Kind::Galois(g), p)
            }
            RingSpec::Gr { p, m, e } => {
                let modulus = p.pow(*m);
                let g = Galois {
                    p: *p,
                    m: *m,
                    e: *e as usize,
                    modulus,
                    defining: find_irreducible(*p, *e as usize),
                };
                (Kind::Galois(g), modulus)
            }
            RingSpec::Mat(d, inner) | RingSpec::Ut(d, inner) => {
                let inner = Arc::new(Self::construct(inner, cap));
                let c = inner.characteristic;
                let upper = matches!(spec, RingSpec::Ut(..));
                (Kind::Matrix { d: *d, upper, inner }, c)
            }
            RingSpec::Nil(inner, k) => {
                let inner = Arc::new(Self::construct(inner, cap));
                let c = inner.characteristic;
                (Kind::Nil { k: *k, inner }, c)
            }
            RingSpec::Prod(fs) => {
                let factors: Vec<_> = fs.iter().map(|f| Arc::new(Self::construct(f, cap))).collect();
                let c = factors.iter().fold(1, |acc, f| lcm(acc, f.characteristic));
                (Kind::Product(factors), c)
            }
        };
        let radices = match &kind {
            Kind::Zmod(n) => vec![*n],
            Kind::Galois(g) => vec![g.modulus; g.e],
            Kind::Matrix { d, upper, inner } => {
                let slots = if *upper { d * (d + 1) / 2 } else { d * d };
                inner.radices.repeat(slots)
            }
            Kind::Nil { k, inner } => inner.radices.repeat(*k),
            Kind::Product(fs) => fs.iter().flat_map(|f| f.radices.clone()).collect(),
        };
        FiniteRing {
            spec: spec.clone(),
            kind,
            order: spec_order(spec).expect("checked by caller"),
            characteristic,
            radices,
            cap,
        }
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn cap(&self) -> u128 {
        self.cap
    }

    /// Moduli of the canonical additive coordinates, in codec order.
    pub fn radices(&self) -> &[u64] {
        &self.radices
    }

    pub(crate) fn galois(&self) -> Option<&Galois> {
        match &self.kind {
            Kind::Galois(g) => Some(g),
            _ => None,
        }
    }

    /// `(p, m)` when the characteristic is the prime power `p^m`.
    pub fn prime_power_characteristic(&self) -> Option<(u64, u32)> {
        prime_power(self.characteristic)
    }

    pub fn is_commutative(&self) -> bool {
        match &self.kind {
            Kind::Zmod(_) | Kind::Galois(_) => true,
            Kind::Matrix { d, inner, .. } => *d == 1 && inner.is_commutative(),
            Kind::Nil { inner, .. } => inner.is_commutative(),
            Kind::Product(fs) => fs.iter().all(|f| f.is_commutative()),
        }
    }

    /// Errors unless the ring may be enumerated.
    pub fn check_enumerable(&self) -> Result<()> {
        if self.order > self.cap {
            return Err(Error::CapExceeded {
                order: self.order,
                cap: self.cap,
            });
        }
        Ok(())
    }

    // ---------------------------------------------------------------------
    // codec

    fn matrix_slots(d: usize, upper: bool) -> impl Iterator<Item = usize> {
        (0..d * d).filter(move |&s| !upper || s / d <= s % d)
    }

    /// Canonical additive coordinates of `a`, matching [`radices`](Self::radices).
    pub fn coords(&self, a: &RingElement) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.radices.len());
        self.push_coords(a, &mut out);
        out
    }

    fn push_coords(&self, a: &RingElement, out: &mut Vec<u64>) {
        match (&self.kind, a) {
            (Kind::Zmod(_), RingElement::Residue(r)) => out.push(*r),
            (Kind::Galois(_), RingElement::Coeffs(c)) => out.extend_from_slice(c),
            (Kind::Matrix { d, upper, inner }, RingElement::Matrix(es)) => {
                for s in Self::matrix_slots(*d, *upper) {
                    inner.push_coords(&es[s], out);
                }
            }
            (Kind::Nil { inner, .. }, RingElement::Trunc(xs)) => {
                xs.iter().for_each(|x| inner.push_coords(x, out))
            }
            (Kind::Product(fs), RingElement::Tuple(xs)) => {
                fs.iter().zip(xs).for_each(|(f, x)| f.push_coords(x, out))
            }
            _ => panic!("element {a} does not belong to {}", self.spec),
        }
    }

    /// Inverse of [`coords`](Self::coords); coordinates must be in range.
    pub fn from_coords(&self, coords: &[u64]) -> RingElement {
        let mut it = coords.iter().copied();
        let a = self.pull_coords(&mut it);
        debug_assert!(it.next().is_none());
        a
    }

    fn pull_coords(&self, it: &mut impl Iterator<Item = u64>) -> RingElement {
        match &self.kind {
            Kind::Zmod(_) => RingElement::Residue(it.next().unwrap()),
            Kind::Galois(g) => RingElement::Coeffs(it.take(g.e).collect()),
            Kind::Matrix { d, upper, inner } => {
                let mut es = vec![inner.zero(); d * d];
                for s in Self::matrix_slots(*d, *upper) {
                    es[s] = inner.pull_coords(it);
                }
                RingElement::Matrix(es)
            }
            Kind::Nil { k, inner } => {
                RingElement::Trunc((0..*k).map(|_| inner.pull_coords(it)).collect())
            }
            Kind::Product(fs) => RingElement::Tuple(fs.iter().map(|f| f.pull_coords(it)).collect()),
        }
    }

    /// The element with mixed-radix index `index < order`.
    pub fn element_at(&self, mut index: u128) -> RingElement {
        debug_assert!(index < self.order);
        let coords: Vec<u64> = self
            .radices
            .iter()
            .map(|&r| {
                let c = (index % r as u128) as u64;
                index /= r as u128;
                c
            })
            .collect();
        self.from_coords(&coords)
    }

    pub fn index_of(&self, a: &RingElement) -> u128 {
        self.coords(a)
            .iter()
            .zip(&self.radices)
            .rev()
            .fold(0u128, |acc, (&c, &r)| acc * r as u128 + c as u128)
    }

    /// All elements in index order.
    pub fn elements(&self) -> Result<impl Iterator<Item = RingElement> + '_> {
        self.check_enumerable()?;
        Ok(self.elements_in(0..self.order))
    }

    /// Elements with indices in `range`, in index order.
    pub fn elements_in(
        &self,
        range: std::ops::Range<u128>,
    ) -> impl Iterator<Item = RingElement> + '_ {
        range.map(move |i| self.element_at(i))
    }

    /// Generators of the additive group: one per canonical coordinate.
    pub fn additive_generators(&self) -> Vec<RingElement> {
        (0..self.radices.len())
            .map(|i| {
                let mut c = vec![0u64; self.radices.len()];
                c[i] = 1;
                self.from_coords(&c)
            })
            .collect()
    }

    /// Whether `a` is a canonical element of this ring.
    pub fn contains(&self, a: &RingElement) -> bool {
        match (&self.kind, a) {
            (Kind::Zmod(n), RingElement::Residue(r)) => r < n,
            (Kind::Galois(g), RingElement::Coeffs(c)) => {
                c.len() == g.e && c.iter().all(|&x| x < g.modulus)
            }
            (Kind::Matrix { d, upper, inner }, RingElement::Matrix(es)) => {
                es.len() == d * d
                    && es.iter().enumerate().all(|(s, x)| {
                        if *upper && s / d > s % d {
                            inner.is_zero(x) && inner.contains(x)
                        } else {
                            inner.contains(x)
                        }
                    })
            }
            (Kind::Nil { k, inner }, RingElement::Trunc(xs)) => {
                xs.len() == *k && xs.iter().all(|x| inner.contains(x))
            }
            (Kind::Product(fs), RingElement::Tuple(xs)) => {
                fs.len() == xs.len() && fs.iter().zip(xs).all(|(f, x)| f.contains(x))
            }
            _ => false,
        }
    }

    pub fn check_element(&self, a: &RingElement) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::NotAnElement {
                element: a.to_string(),
                ring: self.spec.to_string(),
            })
        }
    }

    // ---------------------------------------------------------------------
    // arithmetic

    pub fn zero(&self) -> RingElement {
        match &self.kind {
            Kind::Zmod(_) => RingElement::Residue(0),
            Kind::Galois(g) => RingElement::Coeffs(vec![0; g.e]),
            Kind::Matrix { d, inner, .. } => RingElement::Matrix(vec![inner.zero(); d * d]),
            Kind::Nil { k, inner } => RingElement::Trunc(vec![inner.zero(); *k]),
            Kind::Product(fs) => RingElement::Tuple(fs.iter().map(|f| f.zero()).collect()),
        }
    }

    pub fn one(&self) -> RingElement {
        self.from_int(1)
    }

    /// Image of the integer `n` under `Z -> R`.
    pub fn from_int(&self, n: i128) -> RingElement {
        match &self.kind {
            Kind::Zmod(m) => RingElement::Residue(n.rem_euclid(*m as i128) as u64),
            Kind::Galois(g) => {
                let mut c = vec![0; g.e];
                c[0] = n.rem_euclid(g.modulus as i128) as u64;
                RingElement::Coeffs(c)
            }
            Kind::Matrix { d, inner, .. } => {
                let mut es = vec![inner.zero(); d * d];
                for i in 0..*d {
                    es[i * d + i] = inner.from_int(n);
                }
                RingElement::Matrix(es)
            }
            Kind::Nil { k, inner } => {
                let mut xs = vec![inner.zero(); *k];
                xs[0] = inner.from_int(n);
                RingElement::Trunc(xs)
            }
            Kind::Product(fs) => RingElement::Tuple(fs.iter().map(|f| f.from_int(n)).collect()),
        }
    }

    pub fn is_zero(&self, a: &RingElement) -> bool {
        match a {
            RingElement::Residue(r) => *r == 0,
            RingElement::Coeffs(c) => c.iter().all(|&x| x == 0),
            RingElement::Matrix(xs) | RingElement::Trunc(xs) | RingElement::Tuple(xs) => match &self.kind {
                Kind::Matrix { inner, .. } | Kind::Nil { inner, .. } => xs.iter().all(|x| inner.is_zero(x)),
                Kind::Product(fs) => fs.iter().zip(xs).all(|(f, x)| f.is_zero(x)),
                _ => false,
            },
        }
    }

    pub fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        match (&self.kind, a, b) {
            (Kind::Zmod(n), RingElement::Residue(x), RingElement::Residue(y)) => {
                RingElement::Residue(add_mod(*x, *y, *n))
            }
            (Kind::Galois(g), RingElement::Coeffs(x), RingElement::Coeffs(y)) => RingElement::Coeffs(
                x.iter().zip(y).map(|(&u, &v)| add_mod(u, v, g.modulus)).collect(),
            ),
            (Kind::Matrix { inner, .. }, RingElement::Matrix(x), RingElement::Matrix(y)) => {
                RingElement::Matrix(x.iter().zip(y).map(|(u, v)| inner.add(u, v)).collect())
            }
            (Kind::Nil { inner, .. }, RingElement::Trunc(x), RingElement::Trunc(y)) => {
                RingElement::Trunc(x.iter().zip(y).map(|(u, v)| inner.add(u, v)).collect())
            }
            (Kind::Product(fs), RingElement::Tuple(x), RingElement::Tuple(y)) => RingElement::Tuple(
                fs.iter().zip(x.iter().zip(y)).map(|(f, (u, v))| f.add(u, v)).collect(),
            ),
            _ => panic!("operands {a}, {b} do not belong to {}", self.spec),
        }
    }

    pub fn neg(&self, a: &RingElement) -> RingElement {
        match (&self.kind, a) {
            (Kind::Zmod(n), RingElement::Residue(x)) => RingElement::Residue(sub_mod(0, *x, *n)),
            (Kind::Galois(g), RingElement::Coeffs(x)) => {
                RingElement::Coeffs(x.iter().map(|&u| sub_mod(0, u, g.modulus)).collect())
            }
            (Kind::Matrix { inner, .. }, RingElement::Matrix(x)) => {
                RingElement::Matrix(x.iter().map(|u| inner.neg(u)).collect())
            }
            (Kind::Nil { inner, .. }, RingElement::Trunc(x)) => {
                RingElement::Trunc(x.iter().map(|u| inner.neg(u)).collect())
            }
            (Kind::Product(fs), RingElement::Tuple(x)) => {
                RingElement::Tuple(fs.iter().zip(x).map(|(f, u)| f.neg(u)).collect())
            }
            _ => panic!("operand {a} does not belong to {}", self.spec),
        }
    }

    pub fn sub(&self, a: &RingElement, b: &RingElement) -> RingElement {
        self.add(a, &self.neg(b))
    }

    /// `n * a` for a nonnegative integer `n`.
    pub fn mul_int(&self, a: &RingElement, n: u64) -> RingElement {
        let coords: Vec<u64> = self
            .coords(a)
            .iter()
            .zip(&self.radices)
            .map(|(&c, &r)| mul_mod(c, n % r, r))
            .collect();
        self.from_coords(&coords)
    }

    pub fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        match (&self.kind, a, b) {
            (Kind::Zmod(n), RingElement::Residue(x), RingElement::Residue(y)) => {
                RingElement::Residue(mul_mod(*x, *y, *n))
            }
            (Kind::Galois(g), RingElement::Coeffs(x), RingElement::Coeffs(y)) => {
                RingElement::Coeffs(g.mul(x, y))
            }
            (Kind::Matrix { d, upper, inner }, RingElement::Matrix(x), RingElement::Matrix(y)) => {
                let d = *d;
                let mut out = vec![inner.zero(); d * d];
                for i in 0..d {
                    for j in 0..d {
                        if *upper && i > j {
                            continue;
                        }
                        let range = if *upper { i..j + 1 } else { 0..d };
                        let mut acc = inner.zero();
                        for l in range {
                            acc = inner.add(&acc, &inner.mul(&x[i * d + l], &y[l * d + j]));
                        }
                        out[i * d + j] = acc;
                    }
                }
                RingElement::Matrix(out)
            }
            (Kind::Nil { k, inner }, RingElement::Trunc(x), RingElement::Trunc(y)) => {
                let mut out = vec![inner.zero(); *k];
                for (i, u) in x.iter().enumerate() {
                    if inner.is_zero(u) {
                        continue;
                    }
                    for (j, v) in y.iter().enumerate().take(k - i) {
                        out[i + j] = inner.add(&out[i + j], &inner.mul(u, v));
                    }
                }
                RingElement::Trunc(out)
            }
            (Kind::Product(fs), RingElement::Tuple(x), RingElement::Tuple(y)) => RingElement::Tuple(
                fs.iter().zip(x.iter().zip(y)).map(|(f, (u, v))| f.mul(u, v)).collect(),
            ),
            _ => panic!("operands {a}, {b} do not belong to {}", self.spec),
        }
    }

    /// `a^k` by repeated squaring, with `a^0 = 1` for every `a`.
    pub fn pow(&self, a: &RingElement, mut k: u64) -> RingElement {
        let mut acc = self.one();
        let mut base = a.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Checked arithmetic entry point: validates membership of every operand.
    pub fn arith(&self, op: ArithOp, operands: &[&RingElement]) -> Result<RingElement> {
        for a in operands {
            self.check_element(a)?;
        }
        let arity = match op {
            ArithOp::Add | ArithOp::Mul => 2,
            ArithOp::Neg | ArithOp::Pow(_) => 1,
        };
        if operands.len() != arity {
            return Err(Error::InvalidArgument(format!(
                "{op:?} takes {arity} operand(s), got {}",
                operands.len()
            )));
        }
        Ok(match op {
            ArithOp::Add => self.add(operands[0], operands[1]),
            ArithOp::Mul => self.mul(operands[0], operands[1]),
            ArithOp::Neg => self.neg(operands[0]),
            ArithOp::Pow(k) => self.pow(operands[0], k),
        })
    }

    // ---------------------------------------------------------------------
    // JSON

    /// Parses an element rendering produced by [`RingElement::to_json`].
    pub fn element_from_json(&self, v: &Value) -> Result<RingElement> {
        let bad = || Error::Json(format!("{v} is not an element of {}", self.spec));
        let list = |v: &Value| v.as_array().cloned().ok_or_else(bad);
        let a = match &self.kind {
            Kind::Zmod(_) => RingElement::Residue(v.as_u64().ok_or_else(bad)?),
            Kind::Galois(_) => RingElement::Coeffs(
                list(v)?
                    .iter()
                    .map(|c| c.as_u64().ok_or_else(bad))
                    .collect::<Result<_>>()?,
            ),
            Kind::Matrix { inner, .. } => {
                let mut es = Vec::new();
                for row in list(v)? {
                    for x in list(&row)? {
                        es.push(inner.element_from_json(&x)?);
                    }
                }
                RingElement::Matrix(es)
            }
            Kind::Nil { inner, .. } => RingElement::Trunc(
                list(v)?
                    .iter()
                    .map(|x| inner.element_from_json(x))
                    .collect::<Result<_>>()?,
            ),
            Kind::Product(fs) => {
                let xs = list(v)?;
                if xs.len() != fs.len() {
                    return Err(bad());
                }
                RingElement::Tuple(
                    fs.iter()
                        .zip(&xs)
                        .map(|(f, x)| f.element_from_json(x))
                        .collect::<Result<_>>()?,
                )
            }
        };
        self.check_element(&a)?;
        Ok(a)
    }
}

/// Operations accepted by [`FiniteRing::arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Neg,
    Mul,
    Pow(u64),
}

impl Galois {
    /// Product of two residues modulo the defining polynomial.
    pub fn mul(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let (e, md) = (self.e, self.modulus);
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, &u) in x.iter().enumerate() {
            if u == 0 {
                continue;
            }
            for (j, &v) in y.iter().enumerate() {
                prod[i + j] = add_mod(prod[i + j], mul_mod(u, v, md), md);
            }
        }
        for deg in (e..prod.len()).rev() {
            let lead = prod[deg];
            if lead == 0 {
                continue;
            }
            for (i, &f) in self.defining[..e].iter().enumerate() {
                let t = deg - e + i;
                prod[t] = sub_mod(prod[t], mul_mod(lead, f, md), md);
            }
        }
        prod.truncate(e);
        prod
    }
}
