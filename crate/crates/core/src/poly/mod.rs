//! Dense univariate polynomials in a central indeterminate `T`.

pub mod binomial;
pub(crate) mod laurent;

use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

pub use binomial::{binomial_big, binomial_lucas, binomial_mod_char};
pub use laurent::{expand_in_artin_schreier, artin_schreier_power, LaurentInU};

use crate::error::{Error, Result};
use crate::ring::{FiniteRing, RingElement, RingSpec};

/// Polynomial over a [`FiniteRing`], coefficients indexed by degree.
///
/// Canonical form: the last coefficient is nonzero, and the zero polynomial
/// has no coefficients.
#[derive(Clone, Debug)]
pub struct Poly {
    ring: Arc<FiniteRing>,
    coeffs: Vec<RingElement>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.ring.spec() == other.ring.spec() && self.coeffs == other.coeffs
    }
}

impl Eq for Poly {}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl Poly {
    pub fn zero(ring: &Arc<FiniteRing>) -> Self {
        Poly {
            ring: ring.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<FiniteRing>, c: RingElement) -> Self {
        Self::monomial(ring, c, 0)
    }

    /// `c * T^deg`
    pub fn monomial(ring: &Arc<FiniteRing>, c: RingElement, deg: usize) -> Self {
        let mut coeffs = vec![ring.zero(); deg];
        coeffs.push(c);
        Self::from_trusted(ring, coeffs)
    }

    /// The indeterminate `T`.
    pub fn t(ring: &Arc<FiniteRing>) -> Self {
        Self::monomial(ring, ring.one(), 1)
    }

    /// Validates every coefficient and normalizes.
    pub fn from_coeffs(ring: &Arc<FiniteRing>, coeffs: Vec<RingElement>) -> Result<Self> {
        for c in &coeffs {
            ring.check_element(c)?;
        }
        Ok(Self::from_trusted(ring, coeffs))
    }

    pub(crate) fn from_trusted(ring: &Arc<FiniteRing>, mut coeffs: Vec<RingElement>) -> Self {
        while coeffs.last().is_some_and(|c| ring.is_zero(c)) {
            coeffs.pop();
        }
        Poly {
            ring: ring.clone(),
            coeffs,
        }
    }

    /// From integer coefficients, degree ascending, via `Z -> R`.
    pub fn from_ints(ring: &Arc<FiniteRing>, coeffs: &[i128]) -> Self {
        Self::from_trusted(ring, coeffs.iter().map(|&c| ring.from_int(c)).collect())
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn coeffs(&self) -> &[RingElement] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<RingElement> {
        self.coeffs
    }

    /// Coefficient of `T^j` (zero past the degree).
    pub fn coeff(&self, j: usize) -> RingElement {
        self.coeffs.get(j).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn same_ring(&self, other: &Poly) -> Result<()> {
        if self.ring.spec() == other.ring.spec() {
            Ok(())
        } else {
            Err(Error::RingMismatch {
                left: self.ring.spec().to_string(),
                right: other.ring.spec().to_string(),
            })
        }
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.same_ring(other)?;
        Ok(self.add_trusted(other))
    }

    pub(crate) fn add_trusted(&self, other: &Poly) -> Poly {
        let r = &self.ring;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|j| match (self.coeffs.get(j), other.coeffs.get(j)) {
                (Some(a), Some(b)) => r.add(a, b),
                (Some(a), None) | (None, Some(a)) => a.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::from_trusted(r, coeffs)
    }

    pub fn neg(&self) -> Poly {
        let coeffs = self.coeffs.iter().map(|c| self.ring.neg(c)).collect();
        Self::from_trusted(&self.ring, coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.same_ring(other)?;
        Ok(self.add_trusted(&other.neg()))
    }

    /// Full convolution; coefficient products keep operand order
    /// (`self` on the left).
    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.same_ring(other)?;
        Ok(self.mul_trusted(other))
    }

    pub(crate) fn mul_trusted(&self, other: &Poly) -> Poly {
        let r = &self.ring;
        if self.is_zero() || other.is_zero() {
            return Poly::zero(r);
        }
        let mut out = vec![r.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if r.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = r.add(&out[i + j], &r.mul(a, b));
            }
        }
        Self::from_trusted(r, out)
    }

    /// `c * f`
    pub fn scale(&self, c: &RingElement) -> Result<Poly> {
        self.ring.check_element(c)?;
        Ok(self.scale_trusted(c))
    }

    pub(crate) fn scale_trusted(&self, c: &RingElement) -> Poly {
        let coeffs = self.coeffs.iter().map(|a| self.ring.mul(c, a)).collect();
        Self::from_trusted(&self.ring, coeffs)
    }

    /// `n * f` for an integer `n >= 0`.
    pub fn mul_int(&self, n: u64) -> Poly {
        let coeffs = self.coeffs.iter().map(|a| self.ring.mul_int(a, n)).collect();
        Self::from_trusted(&self.ring, coeffs)
    }

    pub fn pow(&self, mut k: u64) -> Poly {
        let mut acc = Poly::constant(&self.ring, self.ring.one());
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_trusted(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_trusted(&base);
            }
        }
        acc
    }

    /// `f(T + r)`, expanded by Horner's rule on `T + r`.
    pub fn translate(&self, r: &RingElement) -> Result<Poly> {
        self.ring.check_element(r)?;
        Ok(self.translate_trusted(r))
    }

    pub(crate) fn translate_trusted(&self, r: &RingElement) -> Poly {
        let ring = &self.ring;
        let mut acc: Vec<RingElement> = Vec::with_capacity(self.coeffs.len());
        for c in self.coeffs.iter().rev() {
            // acc <- acc * (T + r) + c
            let mut next = Vec::with_capacity(acc.len() + 1);
            next.push(ring.zero());
            next.extend(acc.iter().cloned());
            for (j, a) in acc.iter().enumerate() {
                next[j] = ring.add(&next[j], &ring.mul(a, r));
            }
            next[0] = ring.add(&next[0], c);
            acc = next;
        }
        Self::from_trusted(ring, acc)
    }

    /// Horner evaluation at `t` in the coefficient ring.
    pub fn eval(&self, t: &RingElement) -> Result<RingElement> {
        self.ring.check_element(t)?;
        let r = &self.ring;
        Ok(self
            .coeffs
            .iter()
            .rev()
            .fold(r.zero(), |acc, c| r.add(&r.mul(&acc, t), c)))
    }

    /// Horner evaluation at `t` in another ring, mapping coefficients through
    /// `embedding`.
    pub fn eval_in(&self, embedding: &dyn CoefficientEmbedding, t: &RingElement) -> Result<RingElement> {
        if embedding.source().spec() != self.ring.spec() {
            return Err(Error::Unsupported(format!(
                "no embedding of {} is available (given one from {})",
                self.ring.spec(),
                embedding.source().spec()
            )));
        }
        let target = embedding.target();
        target.check_element(t)?;
        Ok(self.coeffs.iter().rev().fold(target.zero(), |acc, c| {
            target.add(&target.mul(&acc, t), &embedding.embed(c))
        }))
    }

    /// Coefficient-wise image under a map into `target`.
    pub fn map_coeffs(
        &self,
        target: &Arc<FiniteRing>,
        f: impl Fn(&RingElement) -> RingElement,
    ) -> Poly {
        Self::from_trusted(target, self.coeffs.iter().map(f).collect())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "ring": self.ring.spec().to_string(),
            "coeffs": self.coeffs.iter().map(RingElement::to_json).collect::<Vec<_>>(),
        })
    }

    /// Parses `{"ring": spec, "coeffs": [...]}` (degree ascending).
    pub fn from_json(v: &Value) -> Result<Poly> {
        let spec = v
            .get("ring")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Json("missing \"ring\"".into()))?;
        let ring = FiniteRing::build_uncapped(&RingSpec::parse(spec)?)?;
        Self::from_json_in(&ring, v)
    }

    pub fn from_json_in(ring: &Arc<FiniteRing>, v: &Value) -> Result<Poly> {
        let coeffs = v
            .get("coeffs")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Json("missing \"coeffs\"".into()))?
            .iter()
            .map(|c| ring.element_from_json(c))
            .collect::<Result<Vec<_>>>()?;
        let p = Self::from_trusted(ring, coeffs);
        Ok(p)
    }
}

/// Degree-descending human rendering, e.g. `T^2 + 2*T + 1`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let one = self.ring.one();
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            if self.ring.is_zero(c) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono = match j {
                0 => String::new(),
                1 => "T".to_string(),
                _ => format!("T^{j}"),
            };
            if j == 0 {
                write!(f, "{c}")?;
            } else if *c == one {
                write!(f, "{mono}")?;
            } else if c.to_string().contains(' ') {
                write!(f, "({c})*{mono}")?;
            } else {
                write!(f, "{c}*{mono}")?;
            }
        }
        Ok(())
    }
}

/// A ring homomorphism used to evaluate polynomials outside their
/// coefficient ring.
pub trait CoefficientEmbedding {
    fn source(&self) -> &FiniteRing;
    fn target(&self) -> &FiniteRing;
    fn embed(&self, a: &RingElement) -> RingElement;
}
