//! Power-sum polynomials `sum_{r in R} (T + r)^k` over finite unital rings.
//!
//! The crate computes these polynomials two ways: by exhaustive enumeration
//! ([`oracle`]) and by closed formulas ([`closedform`]), and classifies
//! translation-invariant polynomials over Galois rings and their truncated
//! polynomial extensions ([`invariance`]). Rings are described by a small
//! constructor grammar, see [`RingSpec`].

pub mod closedform;
pub mod error;
pub mod invariance;
pub mod ntheory;
pub mod oracle;
pub mod poly;
pub mod ring;
pub mod verify;

pub use error::{Error, Result, SpecError};
pub use poly::{LaurentInU, Poly};
pub use ring::{FiniteRing, RingElement, RingSpec};
