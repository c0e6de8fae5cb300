//! Exact-arithmetic engine for characterizing slopes of knots.
//!
//! The crate re-derives, from lemma-level inputs, which Dehn surgery slopes
//! `p/q` are certified to be characterizing for a target knot in a small
//! low-volume census, and emits non-characterizing-slope certificates from
//! the two-component twisting construction. Every decision is made with
//! exact rationals; the only transcendental, pi, enters through a
//! compiled-in rational enclosure.

// Errors carry exact rationals for diagnostics; they sit on cold paths.
#![allow(clippy::result_large_err)]

pub mod bounds;
pub mod census;
pub mod exactnum;
pub mod laurent;
pub mod obstructions;
pub mod pipeline;
pub mod twist;

pub use bounds::{CoefficientMode, LengthBoundConstants};
pub use census::{builtin_census, load_census, Census, KnotRecord};
pub use exactnum::{Rational, RationalInterval, Slope};
pub use laurent::{AlexanderPoly, LaurentPoly};
pub use pipeline::{
    characterizing_region, check_slope, exclusion_report, ExclusionContext, ExclusionReport,
    PipelineError, Region, Status, Verdict,
};
pub use twist::{family_certificate, twist_surgery_slope, TwistCertificate};
