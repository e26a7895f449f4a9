//! Translation-invariant polynomials: `f(T + r) = f(T)` for all `r in R`.

mod twitt;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ring::decompose::{component_rings, project_component};
use crate::ring::{FiniteRing, RingElement, RingSpec};

pub use twitt::{
    default_degree_bound, lift_invariant, twitt_generators, twitt_parameters, CoefficientPattern,
    TwittGenerator, TwittModule, TwittSpanReport, verify_twitt_span, verify_twitt_span_with,
};

/// Rings up to this order are also checked against every translation.
pub const FULL_CHECK_ORDER: u128 = 256;

fn require_commutative(ring: &FiniteRing) -> Result<()> {
    if ring.is_commutative() {
        Ok(())
    } else {
        Err(Error::Unsupported(format!(
            "translation invariance over non-commutative {}",
            ring.spec()
        )))
    }
}

/// Whether `f(T + r) = f(T)` for every `r`. Invariance under the additive
/// generators suffices; small rings are additionally checked exhaustively.
pub fn is_translation_invariant(ring: &FiniteRing, f: &Poly) -> Result<bool> {
    require_commutative(ring)?;
    if f.ring().spec() != ring.spec() {
        return Err(Error::RingMismatch {
            left: ring.spec().to_string(),
            right: f.ring().spec().to_string(),
        });
    }
    let fixed = |r: &RingElement| f.translate_trusted(r) == *f;
    if !ring.additive_generators().iter().all(fixed) {
        return Ok(false);
    }
    if ring.order() <= FULL_CHECK_ORDER {
        return Ok(ring.elements()?.all(|r| fixed(&r)));
    }
    Ok(true)
}

/// `{a in R : a s = 0 for all s in S}`, in index order.
pub fn annihilator(ring: &FiniteRing, s: &[RingElement]) -> Result<Vec<RingElement>> {
    require_commutative(ring)?;
    for x in s {
        ring.check_element(x)?;
    }
    Ok(ring
        .elements()?
        .filter(|a| s.iter().all(|x| ring.is_zero(&ring.mul(a, x))))
        .collect())
}

/// One factor of [`split_product_invariance`].
#[derive(Debug, Clone)]
pub struct ComponentInvariance {
    pub factor: RingSpec,
    pub component: Poly,
    pub invariant: bool,
}

#[derive(Debug, Clone)]
pub struct SplitInvariance {
    pub components: Vec<ComponentInvariance>,
    /// Invariance of `f` itself, checked directly over the product.
    pub overall: bool,
}

/// Splits `f` along the direct factors of `ring` and checks each piece.
pub fn split_product_invariance(ring: &Arc<FiniteRing>, f: &Poly) -> Result<SplitInvariance> {
    require_commutative(ring)?;
    let factors = component_rings(ring)?.ok_or_else(|| {
        Error::InvalidArgument(format!("{} is not a direct product", ring.spec()))
    })?;
    let overall = is_translation_invariant(ring, f)?;
    let components = factors
        .iter()
        .enumerate()
        .map(|(i, fr)| {
            let coeffs = f
                .coeffs()
                .iter()
                .map(|c| project_component(ring, i, c))
                .collect();
            let component = Poly::from_coeffs(fr, coeffs)?;
            Ok(ComponentInvariance {
                factor: fr.spec().clone(),
                invariant: is_translation_invariant(fr, &component)?,
                component,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SplitInvariance { components, overall })
}
