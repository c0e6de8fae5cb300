use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::exclusion::{exclusion_report, hypothesis_cap, ExclusionContext, ExclusionReport};
use super::verdict::{Relation, TraceStep};
use super::{cap_resolution, PipelineError};
use crate::bounds::{
    fkp_minimal_bound, max_p_from_length, max_q_from_length, min_length_from_slope,
    LengthBoundConstants,
};
use crate::census::{Census, KnotRecord};
use crate::exactnum::{pi_enclosure, Rational, Slope};
use crate::obstructions::quadratic_dominates_linear;

/// Negative-side genus rigidity holds for `p <= min(2q - 12 - 4q², -10q)`;
/// the region uses the dominating quadratic `4q² - 2q + 12`.
const NEG_QUADRATIC: [i64; 3] = [4, -2, 12];
const NEG_LINEAR: i64 = 10;

/// Slopes `p/q` certified characterizing:
///
/// 1. `q >= q_min`;
/// 2. `p >= max(pos_slope_coeff·q, pos_p_min)`;
/// 3. `q >= 2` and `p <= -max(a·q² + b·q + c, pos_p_min)` with `(a, b, c) = neg_quadratic`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Region {
    pub q_min: i64,
    pub pos_slope_coeff: i64,
    pub pos_p_min: i64,
    pub neg_quadratic: [i64; 3],
}

/// A region together with the intermediate quantities it was derived from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionDerivation {
    pub target: String,
    pub constants: LengthBoundConstants,
    /// Length hypothesis on the target's slope that excludes smaller-volume knots.
    pub hypothesis_cap: Rational,
    /// Length bound for surgeries on knots above the census volume threshold.
    pub alternative_cap: Rational,
    pub region: Region,
    pub reports: Vec<ExclusionReport>,
    pub checks: Vec<TraceStep>,
}

fn to_i64(n: BigInt, what: &'static str) -> Result<i64, PipelineError> {
    n.to_i64().ok_or(PipelineError::Precondition {
        claim: what,
        reason: "value does not fit in 64 bits".into(),
    })
}

pub fn characterizing_region(
    target: &KnotRecord,
    census: &Census,
    constants: &LengthBoundConstants,
) -> Result<Region, PipelineError> {
    derive_region(target, census, constants).map(|d| d.region)
}

pub fn derive_region(
    target: &KnotRecord,
    census: &Census,
    constants: &LengthBoundConstants,
) -> Result<RegionDerivation, PipelineError> {
    constants.validate()?;
    let volume = target.volume.as_ref().ok_or(PipelineError::MissingVolume {
        claim: "hyperbolic alternative length bound",
        knot: target.name.clone(),
    })?;
    let reports = ExclusionContext::ALL
        .iter()
        .map(|&ctx| exclusion_report(target, census, ctx))
        .collect::<Result<Vec<_>, _>>()?;
    if !target.is_lspace_knot {
        return Err(PipelineError::NotLSpaceKnot {
            claim: "satellite bound above 2g - 1",
            knot: target.name.clone(),
        });
    }
    if target.genus == 0 {
        return Err(PipelineError::Precondition {
            claim: "length to slope conversion",
            reason: "target genus must be at least 1".into(),
        });
    }
    let threshold = census.volume_threshold();
    if volume.upper() >= threshold {
        return Err(PipelineError::VolumeAboveThreshold {
            claim: "hyperbolic alternative length bound",
            knot: target.name.clone(),
            volume: volume.upper().clone(),
            threshold: threshold.clone(),
        });
    }

    // With no smaller-volume census knot, the hypothesis only has to
    // exceed 2π (hyperbolic filling).
    let hypothesis_cap = match hypothesis_cap(target, census)? {
        Some(cap) => cap,
        None => {
            let res = cap_resolution();
            let two_pi = Rational::from(2) * pi_enclosure().upper();
            Rational::from((&two_pi / &res).floor() + 1) * res
        }
    };
    let alternative_cap = fkp_minimal_bound(volume.upper(), threshold, &cap_resolution())?;

    let genus = target.genus;
    let q_min: BigInt = max_q_from_length(&alternative_cap, constants) + 1;
    let pos_p_min: BigInt = max_p_from_length(&alternative_cap, genus, constants)? + 1;
    let pos_slope_coeff = BigInt::from(4 * u64::from(genus) + 4);

    let mut checks = Vec::new();
    let mut require = |step: TraceStep, err: PipelineError| {
        let ok = step.holds;
        checks.push(step);
        if ok {
            Ok(())
        } else {
            Err(err)
        }
    };

    // positive region must lie in the L-space surgery range p/q >= 2g - 1
    let lspace_floor = Rational::from(2 * u64::from(genus) - 1);
    require(
        TraceStep::new(
            "genus-rigid coefficient 4g+4 >= 2g-1",
            None,
            Rational::from(pos_slope_coeff.clone()),
            Relation::Ge,
            lspace_floor,
        ),
        PipelineError::Precondition {
            claim: "L-space satellite bound",
            reason: "genus-rigid range is not inside the L-space surgery range".into(),
        },
    )?;

    for (claim, slope) in [
        (
            "condition (i) length redundancy",
            Slope::new(1, q_min.clone()).expect("q_min >= 1"),
        ),
        (
            "condition (ii)/(iii) length redundancy",
            Slope::integer(pos_p_min.clone()),
        ),
    ] {
        let length = min_length_from_slope(&slope, genus, constants)?;
        require(
            TraceStep::new(
                format!("certified length of {slope} >= hypothesis cap"),
                None,
                length.clone(),
                Relation::Ge,
                hypothesis_cap.clone(),
            ),
            PipelineError::RedundancyFailed {
                claim,
                length,
                cap: hypothesis_cap.clone(),
            },
        )?;
    }

    let [a, b, c] = NEG_QUADRATIC;
    let dominates = quadratic_dominates_linear(a, b, c, NEG_LINEAR);
    // discriminant of (a q² + (b - 10) q + c) must be negative
    let disc = (b - NEG_LINEAR) * (b - NEG_LINEAR) - 4 * a * c;
    require(
        TraceStep::new(
            "discriminant of 4q² - 12q + 12 < 0",
            None,
            Rational::from(disc),
            Relation::Lt,
            Rational::from(0),
        ),
        PipelineError::Precondition {
            claim: "negative genus rigidity",
            reason: "quadratic bound does not dominate 10q".into(),
        },
    )?;
    debug_assert!(dominates);

    let region = Region {
        q_min: to_i64(q_min, "q_min")?,
        pos_slope_coeff: to_i64(pos_slope_coeff, "pos_slope_coeff")?,
        pos_p_min: to_i64(pos_p_min, "pos_p_min")?,
        neg_quadratic: NEG_QUADRATIC,
    };
    Ok(RegionDerivation {
        target: target.name.clone(),
        constants: constants.clone(),
        hypothesis_cap,
        alternative_cap,
        region,
        reports,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::builtin_census;

    fn theorem_region() -> Region {
        Region {
            q_min: 49,
            pos_slope_coeff: 24,
            pos_p_min: 441,
            neg_quadratic: [4, -2, 12],
        }
    }

    #[test]
    fn regenerates_region_in_both_modes() {
        let census = builtin_census();
        let target = census.lookup("12n242").unwrap();
        for constants in [
            LengthBoundConstants::rigorous(),
            LengthBoundConstants::paper_mode(),
        ] {
            let d = derive_region(target, &census, &constants).unwrap();
            assert_eq!(d.region, theorem_region());
            assert_eq!(d.hypothesis_cap, "14.17".parse().unwrap());
            assert_eq!(d.alternative_cap, "27.34".parse().unwrap());
            assert!(d.checks.iter().all(|s| s.holds && s.replay()));
            assert_eq!(d.reports.len(), 3);
        }
    }

    #[test]
    fn genus_one_variant() {
        let census = builtin_census();
        let mut records = census.records().to_vec();
        let k = records.iter_mut().find(|r| r.name == "12n242").unwrap();
        // genus 1 with a degree-1 polynomial of the same Δ''(1)
        k.genus = 1;
        k.nu_plus = 1;
        k.alexander = "12t^-1 - 23 + 12t".parse().unwrap();
        let census = Census::new(records, census.volume_threshold().clone()).unwrap();
        let target = census.lookup("12n242").unwrap();
        let region =
            characterizing_region(target, &census, &LengthBoundConstants::rigorous()).unwrap();
        // floor(27.34 · 120/67) + 1
        assert_eq!(region.pos_p_min, 49);
        assert_eq!(region.q_min, 49);
        assert_eq!(region.pos_slope_coeff, 8);
    }

    #[test]
    fn preconditions_are_named() {
        let census = builtin_census();
        let err = characterizing_region(
            census.lookup("5_2").unwrap(),
            &census,
            &LengthBoundConstants::rigorous(),
        )
        .unwrap_err();
        assert!(
            matches!(err, PipelineError::MissingVolume { ref knot, .. } if knot == "5_2"),
            "{err}"
        );
    }
}
