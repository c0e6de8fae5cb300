use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{cap_resolution, PipelineError};
use crate::bounds::{fkp_bound_holds, fkp_minimal_bound};
use crate::census::{mirror_name, Census, KnotRecord};
use crate::exactnum::Rational;
use crate::obstructions::{cable_solutions, complete_s_max, cw_excludes, nu_plus_excludes_mirror};

/// Which role the unknown knot plays when comparing against the census.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExclusionContext {
    /// `K'` itself is a hyperbolic knot with the same surgery.
    HyperbolicAlternative,
    /// `K'` is a cable (`q >= 2`) of a hyperbolic companion `J`.
    CableCompanionQge2,
    /// `K'` is a satellite whose companion `J` has an L-space surgery.
    LSpaceCompanion,
}

impl ExclusionContext {
    pub const ALL: [ExclusionContext; 3] = [
        ExclusionContext::HyperbolicAlternative,
        ExclusionContext::CableCompanionQge2,
        ExclusionContext::LSpaceCompanion,
    ];
}

impl fmt::Display for ExclusionContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExclusionContext::HyperbolicAlternative => "hyperbolic alternative",
            ExclusionContext::CableCompanionQge2 => "cable companion (q >= 2)",
            ExclusionContext::LSpaceCompanion => "L-space companion",
        })
    }
}

/// The obstruction used for one alternative, with the exact values compared.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mechanism", rename_all = "kebab-case")]
pub enum Mechanism {
    VolumeLength {
        smaller_volume_upper: Rational,
        target_volume_lower: Rational,
        cap: Rational,
    },
    CassonWalker {
        target_delta2: Rational,
        alternative_delta2: Rational,
    },
    CableCassonWalker {
        target_delta2: Rational,
        companion_delta2: Rational,
        s_max: u64,
    },
    NuPlusMirror {
        nu_plus: u32,
        nu_plus_mirror: u32,
    },
    NotLSpaceKnot,
    IsTargetItself {
        delta2: Option<Rational>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MechanismKind {
    VolumeLength,
    CassonWalker,
    CableCassonWalker,
    NuPlusMirror,
    NotLSpaceKnot,
    IsTargetItself,
}

impl fmt::Display for MechanismKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Mechanism {
    pub fn kind(&self) -> MechanismKind {
        match self {
            Mechanism::VolumeLength { .. } => MechanismKind::VolumeLength,
            Mechanism::CassonWalker { .. } => MechanismKind::CassonWalker,
            Mechanism::CableCassonWalker { .. } => MechanismKind::CableCassonWalker,
            Mechanism::NuPlusMirror { .. } => MechanismKind::NuPlusMirror,
            Mechanism::NotLSpaceKnot => MechanismKind::NotLSpaceKnot,
            Mechanism::IsTargetItself { .. } => MechanismKind::IsTargetItself,
        }
    }

    /// Re-evaluates the recorded comparison.
    pub fn holds(&self) -> bool {
        match self {
            Mechanism::VolumeLength {
                smaller_volume_upper,
                target_volume_lower,
                cap,
            } => fkp_bound_holds(smaller_volume_upper, target_volume_lower, cap) == Ok(true),
            Mechanism::CassonWalker {
                target_delta2,
                alternative_delta2,
            } => cw_excludes(target_delta2, alternative_delta2),
            Mechanism::CableCassonWalker {
                target_delta2,
                companion_delta2,
                s_max,
            } => {
                let search = cable_solutions(target_delta2, companion_delta2, *s_max);
                search.solutions.is_empty() && search.complete
            }
            Mechanism::NuPlusMirror {
                nu_plus,
                nu_plus_mirror,
            } => nu_plus_excludes_mirror(*nu_plus, *nu_plus_mirror),
            Mechanism::NotLSpaceKnot => true,
            Mechanism::IsTargetItself { delta2 } => delta2.as_ref().is_none_or(|d| !d.is_zero()),
        }
    }

    pub fn detail(&self) -> String {
        match self {
            Mechanism::VolumeLength {
                smaller_volume_upper,
                target_volume_lower,
                cap,
            } => format!(
                "volume ratio ({smaller_volume_upper})/({target_volume_lower}) forces length < {cap}, below the hypothesis"
            ),
            Mechanism::CassonWalker {
                target_delta2,
                alternative_delta2,
            } => format!("Δ''(1): {target_delta2} != {alternative_delta2}"),
            Mechanism::CableCassonWalker {
                target_delta2,
                companion_delta2,
                s_max,
            } => format!(
                "{target_delta2} = (r²-1)(s²-1)/12 + {companion_delta2}·s² has no solution with s >= 2 (complete up to s = {s_max})"
            ),
            Mechanism::NuPlusMirror {
                nu_plus,
                nu_plus_mirror,
            } => format!("nu+(K) = {nu_plus} > 0 and nu+(mK) = {nu_plus_mirror}"),
            Mechanism::NotLSpaceKnot => "not an L-space knot".to_string(),
            Mechanism::IsTargetItself { delta2: None } => "the target itself".to_string(),
            Mechanism::IsTargetItself { delta2: Some(d) } => {
                format!("Δ''(1) = {d} != 0 rules out the target as its own companion")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exclusion {
    pub alternative: String,
    #[serde(flatten)]
    pub mechanism: Mechanism,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExclusionReport {
    pub target: String,
    pub context: ExclusionContext,
    pub entries: Vec<Exclusion>,
}

impl ExclusionReport {
    pub fn find(&self, alternative: &str) -> Option<&Exclusion> {
        self.entries.iter().find(|e| e.alternative == alternative)
    }

    /// Checks every recorded mechanism against the census values it cites
    /// and that each census knot is accounted for exactly once.
    pub fn replay(&self, census: &Census) -> bool {
        let Some(target) = census.lookup(&self.target) else {
            return false;
        };
        let names: HashSet<&str> = self
            .entries
            .iter()
            .map(|e| e.alternative.as_str())
            .collect();
        if names.len() != self.entries.len() || names.len() != census.records().len() {
            return false;
        }
        self.entries.iter().all(|e| {
            census.lookup(&e.alternative).is_some_and(|alt| {
                cites_census_values(&e.mechanism, target, alt) && e.mechanism.holds()
            })
        })
    }
}

fn cites_census_values(m: &Mechanism, target: &KnotRecord, alt: &KnotRecord) -> bool {
    match m {
        Mechanism::VolumeLength {
            smaller_volume_upper,
            target_volume_lower,
            ..
        } => {
            alt.volume.as_ref().map(|v| v.upper()) == Some(smaller_volume_upper)
                && target.volume.as_ref().map(|v| v.lower()) == Some(target_volume_lower)
        }
        Mechanism::CassonWalker {
            target_delta2,
            alternative_delta2,
        } => target_delta2 == &target.delta2() && alternative_delta2 == &alt.delta2(),
        Mechanism::CableCassonWalker {
            target_delta2,
            companion_delta2,
            ..
        } => target_delta2 == &target.delta2() && companion_delta2 == &alt.delta2(),
        Mechanism::NuPlusMirror {
            nu_plus,
            nu_plus_mirror,
        } => {
            alt.name == mirror_name(&target.name)
                && *nu_plus == target.nu_plus
                && *nu_plus_mirror == target.nu_plus_mirror
        }
        Mechanism::NotLSpaceKnot => !alt.is_lspace_knot,
        Mechanism::IsTargetItself { delta2 } => {
            alt.name == target.name && delta2.as_ref().is_none_or(|d| d == &target.delta2())
        }
    }
}

/// The least length cap, on the reporting grid, that excludes every census
/// knot of smaller volume than the target by the volume–length bound.
/// `None` when no census knot has a smaller certified volume.
pub fn hypothesis_cap(
    target: &KnotRecord,
    census: &Census,
) -> Result<Option<Rational>, PipelineError> {
    let Some(target_volume) = &target.volume else {
        return Ok(None);
    };
    let mut cap: Option<Rational> = None;
    for alt in smaller_volume_alternatives(target, census) {
        let upper = alt.volume.as_ref().expect("filtered").upper();
        let b = fkp_minimal_bound(upper, target_volume.lower(), &cap_resolution())?;
        cap = Some(match cap {
            Some(c) => c.max(b),
            None => b,
        });
    }
    Ok(cap)
}

fn smaller_volume_alternatives<'a>(
    target: &'a KnotRecord,
    census: &'a Census,
) -> impl Iterator<Item = &'a KnotRecord> + 'a {
    let target_lower = target.volume.as_ref().map(|v| v.lower().clone());
    census.records().iter().filter(move |alt| {
        alt.name != target.name
            && match (&alt.volume, &target_lower) {
                (Some(v), Some(lower)) => v.upper() < lower,
                _ => false,
            }
    })
}

fn volume_length(
    target: &KnotRecord,
    alt: &KnotRecord,
    cap: Option<&Rational>,
) -> Option<Mechanism> {
    let (cap, tv, av) = (cap?, target.volume.as_ref()?, alt.volume.as_ref()?);
    if av.upper() >= tv.lower() {
        return None;
    }
    let m = Mechanism::VolumeLength {
        smaller_volume_upper: av.upper().clone(),
        target_volume_lower: tv.lower().clone(),
        cap: cap.clone(),
    };
    m.holds().then_some(m)
}

fn casson_walker(target: &KnotRecord, alt: &KnotRecord) -> Option<Mechanism> {
    let m = Mechanism::CassonWalker {
        target_delta2: target.delta2(),
        alternative_delta2: alt.delta2(),
    };
    m.holds().then_some(m)
}

fn nu_plus_mirror(target: &KnotRecord, alt: &KnotRecord) -> Option<Mechanism> {
    if alt.name != mirror_name(&target.name) {
        return None;
    }
    let m = Mechanism::NuPlusMirror {
        nu_plus: target.nu_plus,
        nu_plus_mirror: target.nu_plus_mirror,
    };
    m.holds().then_some(m)
}

fn cable_casson_walker(target: &KnotRecord, alt: &KnotRecord) -> Option<Mechanism> {
    let (t, c) = (target.delta2(), alt.delta2());
    let s_max = complete_s_max(&t, &c)?;
    let m = Mechanism::CableCassonWalker {
        target_delta2: t,
        companion_delta2: c,
        s_max,
    };
    m.holds().then_some(m)
}

/// Assigns to every census knot the first obstruction that rules it out in
/// the given context. Fails, naming the knot, if any alternative survives.
pub fn exclusion_report(
    target: &KnotRecord,
    census: &Census,
    context: ExclusionContext,
) -> Result<ExclusionReport, PipelineError> {
    if census.lookup(&target.name) != Some(target) {
        return Err(PipelineError::TargetNotInCensus(target.name.clone()));
    }
    let cap = hypothesis_cap(target, census)?;
    let mut entries = Vec::with_capacity(census.records().len());
    for alt in census.records() {
        let is_target = alt.name == target.name;
        let mechanism = match context {
            ExclusionContext::HyperbolicAlternative => {
                if is_target {
                    Some(Mechanism::IsTargetItself { delta2: None })
                } else {
                    volume_length(target, alt, cap.as_ref())
                        .or_else(|| casson_walker(target, alt))
                        .or_else(|| nu_plus_mirror(target, alt))
                }
            }
            ExclusionContext::CableCompanionQge2 => volume_length(target, alt, cap.as_ref())
                .or_else(|| cable_casson_walker(target, alt)),
            ExclusionContext::LSpaceCompanion => {
                if is_target {
                    let m = Mechanism::IsTargetItself {
                        delta2: Some(target.delta2()),
                    };
                    m.holds().then_some(m)
                } else if !alt.is_lspace_knot {
                    Some(Mechanism::NotLSpaceKnot)
                } else {
                    None
                }
            }
        };
        let Some(mechanism) = mechanism else {
            return Err(PipelineError::ExclusionIncomplete {
                context,
                alternative: alt.name.clone(),
                reason: survival_reason(context, target, alt),
            });
        };
        entries.push(Exclusion {
            alternative: alt.name.clone(),
            detail: mechanism.detail(),
            mechanism,
        });
    }
    Ok(ExclusionReport {
        target: target.name.clone(),
        context,
        entries,
    })
}

fn survival_reason(context: ExclusionContext, target: &KnotRecord, alt: &KnotRecord) -> String {
    match context {
        ExclusionContext::HyperbolicAlternative => format!(
            "no smaller certified volume, Δ''(1) = {} on both, and no nu+ mirror obstruction",
            alt.delta2()
        ),
        ExclusionContext::CableCompanionQge2 => format!(
            "cable equation {} = (r²-1)(s²-1)/12 + {}·s² is not excluded",
            target.delta2(),
            alt.delta2()
        ),
        ExclusionContext::LSpaceCompanion if alt.name == target.name => {
            "Δ''(1) = 0 does not rule out the target as its own companion".to_string()
        }
        ExclusionContext::LSpaceCompanion => "it is an L-space knot".to_string(),
    }
}
