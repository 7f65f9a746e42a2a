//! Exact arithmetic in ℤ[A±1] and in the classifying rings of abelian racks,
//! quandles, involutary racks and kei.

mod kei;
mod laurent;
mod rack;
pub(crate) mod text;

pub use kei::{KeiRingElem, KeiVariant};
pub use laurent::LaurentPoly;
pub use rack::RackRingElem;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("cannot evaluate at A = 0: A is a unit")]
    ZeroEvaluation,
    #[error("cannot combine elements of {0} and {1}")]
    MixedQuotient(KeiVariant, KeiVariant),
    #[error("cannot parse polynomial `{input}`: {reason}")]
    Parse { input: String, reason: String },
}
