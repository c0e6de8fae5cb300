//! Exact rationals, canonical slopes and rational interval enclosures.
//!
//! Every inequality decided by this crate goes through these types. Nothing
//! here touches floating point; integers are arbitrary precision.

mod interval;
mod rational;
mod slope;

pub use interval::{pi_enclosure, PiEnclosure, RationalInterval};
pub use rational::Rational;
pub use slope::{rational_normalize, Slope};

use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("invalid slope {p}/{q}: the only slope with q = 0 is the meridian 1/0")]
    InvalidSlope { p: BigInt, q: BigInt },
    #[error("cannot parse {input:?} as a rational: {reason}")]
    Parse { input: String, reason: &'static str },
    #[error("empty interval: lower {lower} exceeds upper {upper}")]
    EmptyInterval { lower: String, upper: String },
    #[error("interval divisor [{lower}, {upper}] contains zero")]
    DivisorContainsZero { lower: String, upper: String },
}
