//! Non-characterizing slopes from twisting along unknotted components.
//!
//! Let `C' ∪ K'` be a link of two unknots with linking number `ω`. Doing
//! `1/n`-surgery on both components gives a manifold that is
//! `(nω² + 1/n)`-surgery on each of the two images `K` and `C`. When `C`
//! bounds a genus one surface disjoint from `K'` while `K` has genus at
//! least two, the two knots differ and the slope is non-characterizing.
//!
//! This module emits such claims as checkable records. The genus facts are
//! recorded inputs, not computed from diagrams.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TwistError {
    #[error("twist count n must be nonzero")]
    ZeroTwist,
    #[error("family parameter q must be at least 1, got {0}")]
    FamilyParameter(i64),
    #[error("certificate for q = {q} is inconsistent: {reason}")]
    Inconsistent { q: i64, reason: String },
}

/// The common surgery slope `nω² + 1/n = (n²ω² + 1)/n`.
pub fn twist_surgery_slope(omega: i64, n: i64) -> Result<Rational, TwistError> {
    if n == 0 {
        return Err(TwistError::ZeroTwist);
    }
    let n = BigInt::from(n);
    let w = BigInt::from(omega);
    let numer = &n * &n * &w * &w + 1;
    Ok(Rational::new(numer, n).expect("n is nonzero"))
}

/// A claim that `slope` is non-characterizing for `knot_name`.
///
/// `q` is the signed twist count; the slope is always `1/q` since the
/// relevant links have linking number zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistCertificate {
    pub q: i64,
    pub slope: Rational,
    #[serde(rename = "knot")]
    pub knot_name: String,
    pub knot_genus: u32,
    pub companion_genus_cap: u32,
    pub conclusion: String,
    pub citations: Vec<String>,
}

const GENUS_SEPARATION: &str = "the twisting circle bounds a disk meeting the knot in two \
oppositely oriented points; tubing along an arc gives a genus one surface disjoint from the knot, \
so the companion has genus at most one";

impl TwistCertificate {
    fn build(
        q: i64,
        knot_name: String,
        knot_genus: u32,
        citations: Vec<String>,
    ) -> Result<Self, TwistError> {
        let slope = twist_surgery_slope(0, q)?;
        let conclusion = format!(
            "{slope} is non-characterizing for {knot_name}: surgery on a companion of genus <= 1 \
             gives the same manifold, and {knot_name} has genus {knot_genus} > 1"
        );
        let cert = TwistCertificate {
            q,
            slope,
            knot_name,
            knot_genus,
            companion_genus_cap: 1,
            conclusion,
            citations,
        };
        cert.check()?;
        Ok(cert)
    }

    /// Re-checks the arithmetic and the genus separation.
    pub fn check(&self) -> Result<(), TwistError> {
        let fail = |reason: &str| {
            Err(TwistError::Inconsistent {
                q: self.q,
                reason: reason.into(),
            })
        };
        if self.q == 0 {
            return fail("q is zero");
        }
        if self.slope != twist_surgery_slope(0, self.q)? {
            return fail("slope is not 1/q");
        }
        if self.companion_genus_cap != 1 {
            return fail("companion genus cap must be 1");
        }
        if self.knot_genus < 2 {
            return fail("knot genus must be at least 2");
        }
        if self.knot_genus <= self.companion_genus_cap {
            return fail("genera do not separate the knots");
        }
        Ok(())
    }
}

impl fmt::Display for TwistCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "knot: {}", self.knot_name)?;
        writeln!(f, "slope: {}", self.slope)?;
        writeln!(f, "knot genus: {}", self.knot_genus)?;
        writeln!(f, "companion genus <= {}", self.companion_genus_cap)?;
        write!(f, "{}", self.conclusion)
    }
}

/// Certificate that `1/q` is non-characterizing for the genus two
/// two-bridge knot `K_q`, unknotted by `q` positive full twists on two
/// oppositely oriented strands.
pub fn family_certificate(q: i64) -> Result<TwistCertificate, TwistError> {
    if q < 1 {
        return Err(TwistError::FamilyParameter(q));
    }
    TwistCertificate::build(
        q,
        "K_q two-bridge".into(),
        2,
        vec![
            format!("K_{q}: alternating two-bridge diagram of the twisting family; Seifert's algorithm on an alternating diagram gives a minimal genus surface, genus 2"),
            GENUS_SEPARATION.into(),
        ],
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CrossingSign {
    Positive,
    Negative,
}

/// Certificate for a knot of genus at least two with unknotting number one:
/// changing a positive (negative) crossing makes `+1` (`-1`) non-characterizing.
pub fn crossing_change_certificate(sign: CrossingSign) -> TwistCertificate {
    let (q, label) = match sign {
        CrossingSign::Positive => (1, "positive"),
        CrossingSign::Negative => (-1, "negative"),
    };
    TwistCertificate::build(
        q,
        format!("genus >= 2 knot unknotted by a {label} crossing change"),
        2,
        vec![
            "a crossing change is a full twist on two oppositely oriented strands".into(),
            GENUS_SEPARATION.into(),
        ],
    )
    .expect("fixed parameters are consistent")
}
