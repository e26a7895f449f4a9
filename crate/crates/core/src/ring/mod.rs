//! Finite unital rings built from a small constructor grammar.

pub mod decompose;
mod element;
pub(crate) mod finite;
pub mod galois;
pub mod irreducible;
mod spec;

pub use decompose::{decompose_by_characteristic, CharFactor};
pub use element::RingElement;
pub use finite::{spec_order, ArithOp, FiniteRing, DEFAULT_CAP};
pub use galois::{frobenius, teichmuller_lift};
pub use irreducible::find_irreducible;
pub use spec::RingSpec;
