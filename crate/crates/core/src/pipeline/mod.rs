//! The proof engine: exclusion of every low-volume alternative, synthesis of
//! the characterizing-slope region, and per-slope verdicts.
//!
//! The engine is generic over the target record, but only targets whose
//! preconditions all check out (volume known, L-space knot, every census
//! alternative excluded in every context) produce a region.

mod exclusion;
mod region;
mod verdict;

pub use exclusion::{
    exclusion_report, hypothesis_cap, Exclusion, ExclusionContext, ExclusionReport, Mechanism,
    MechanismKind,
};
pub use region::{characterizing_region, derive_region, Region, RegionDerivation};
pub use verdict::{check_slope, Condition, Relation, Status, TraceStep, Verdict};

use thiserror::Error;

use crate::bounds::BoundsError;
use crate::exactnum::Rational;

/// Grid on which certified length caps are reported (`14.17`, `27.34`).
pub fn cap_resolution() -> Rational {
    Rational::new(1, 100).expect("nonzero")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error("target knot {0:?} is not in the census")]
    TargetNotInCensus(String),
    #[error("{context}: alternative {alternative:?} survives every obstruction ({reason})")]
    ExclusionIncomplete {
        context: ExclusionContext,
        alternative: String,
        reason: String,
    },
    #[error("{claim}: knot {knot:?} has no recorded volume")]
    MissingVolume { claim: &'static str, knot: String },
    #[error("{claim}: knot {knot:?} is not an L-space knot")]
    NotLSpaceKnot { claim: &'static str, knot: String },
    #[error("{claim}: volume upper bound {volume} of {knot:?} is not below the census threshold {threshold}")]
    VolumeAboveThreshold {
        claim: &'static str,
        knot: String,
        volume: Rational,
        threshold: Rational,
    },
    #[error("{claim}: certified length {length} is below the hypothesis cap {cap}")]
    RedundancyFailed {
        claim: &'static str,
        length: Rational,
        cap: Rational,
    },
    #[error("{claim}: {reason}")]
    Precondition { claim: &'static str, reason: String },
    #[error(transparent)]
    Bounds(#[from] BoundsError),
}
