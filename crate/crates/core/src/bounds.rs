//! Rigorous decisions for the hyperbolic length inequalities.
//!
//! The volume–length bound says that if `K'` has smaller volume than `K` and
//! the two share a surgery along `r`, then
//!
//! ```text
//! ℓ_K(r) < 2π / sqrt(1 - (vol K' / vol K)^(2/3)).
//! ```
//!
//! Deciding whether the right-hand side sits below a rational cap is done by
//! squaring and cubing both sides, so only one irrational quantity remains:
//! pi, replaced by the upper end of its enclosure.

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::{pi_enclosure, Rational, Slope};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("volumes must satisfy 0 < smaller ({small}) < larger ({big})")]
    InvalidVolumes { small: Rational, big: Rational },
    #[error("cap {0} does not exceed 2π, so the length bound is vacuous")]
    VacuousCap(Rational),
    #[error("tolerance must be positive, got {0}")]
    NonPositiveTolerance(Rational),
    #[error("genus must be at least 1")]
    ZeroGenus,
    #[error("invalid length-bound constants: {0}")]
    InvalidConstants(&'static str),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoefficientMode {
    /// `q_coefficient = meridian_length_cap / area_constant` exactly.
    Rigorous,
    /// The rounded decimal `1.79`.
    Paper,
}

/// Constants turning a slope-length bound into bounds on `|p|` and `|q|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LengthBoundConstants {
    pub area_constant: Rational,
    pub meridian_length_cap: Rational,
    pub q_coefficient: Rational,
    pub mode: CoefficientMode,
}

impl LengthBoundConstants {
    /// Cusp area at least 3.35, meridian length at most 6, coefficient `6/3.35 = 120/67`.
    pub fn rigorous() -> Self {
        let area: Rational = "3.35".parse().unwrap();
        let cap = Rational::from(6);
        LengthBoundConstants {
            q_coefficient: &cap / &area,
            area_constant: area,
            meridian_length_cap: cap,
            mode: CoefficientMode::Rigorous,
        }
    }

    /// Same as [`rigorous`](Self::rigorous) but with the rounded coefficient `179/100`.
    pub fn paper_mode() -> Self {
        LengthBoundConstants {
            q_coefficient: "1.79".parse().unwrap(),
            mode: CoefficientMode::Paper,
            ..Self::rigorous()
        }
    }

    pub fn for_mode(mode: CoefficientMode) -> Self {
        match mode {
            CoefficientMode::Rigorous => Self::rigorous(),
            CoefficientMode::Paper => Self::paper_mode(),
        }
    }

    pub fn validate(&self) -> Result<(), BoundsError> {
        if !self.area_constant.is_positive() {
            return Err(BoundsError::InvalidConstants(
                "area constant must be positive",
            ));
        }
        if !self.meridian_length_cap.is_positive() || !self.q_coefficient.is_positive() {
            return Err(BoundsError::InvalidConstants(
                "caps and coefficients must be positive",
            ));
        }
        let exact = &self.meridian_length_cap / &self.area_constant;
        match self.mode {
            CoefficientMode::Rigorous if self.q_coefficient != exact => Err(
                BoundsError::InvalidConstants("rigorous coefficient must equal cap / area"),
            ),
            _ => Ok(()),
        }
    }
}

impl Default for LengthBoundConstants {
    fn default() -> Self {
        Self::rigorous()
    }
}

/// Geometric intersection number `|p_a q_b - q_a p_b|`.
pub fn slope_distance(a: &Slope, b: &Slope) -> BigInt {
    (a.p() * b.q() - a.q() * b.p()).abs()
}

/// Decides whether `2π / sqrt(1 - (v'/v)^(2/3)) < cap` for every
/// `v' <= small_upper` and `v >= big_lower`.
///
/// Equivalent to `(v'/v)² < (1 - (2π/cap)²)³` once `cap > 2π`; the worst case
/// is `v'/v = small_upper / big_lower`.
pub fn fkp_bound_holds(
    small_upper: &Rational,
    big_lower: &Rational,
    cap: &Rational,
) -> Result<bool, BoundsError> {
    if !small_upper.is_positive() || small_upper >= big_lower {
        return Err(BoundsError::InvalidVolumes {
            small: small_upper.clone(),
            big: big_lower.clone(),
        });
    }
    let two_pi = Rational::from(2) * pi_enclosure().upper();
    if cap <= &two_pi {
        return Err(BoundsError::VacuousCap(cap.clone()));
    }
    let ratio = small_upper / big_lower;
    let margin = Rational::from(1) - (&two_pi / cap).pow(2);
    Ok(ratio.pow(2) < margin.pow(3))
}

// Vacuous caps count as "does not hold".
fn holds_or_false(small: &Rational, big: &Rational, cap: &Rational) -> Result<bool, BoundsError> {
    match fkp_bound_holds(small, big, cap) {
        Ok(b) => Ok(b),
        Err(BoundsError::VacuousCap(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

/// The least multiple `B` of `tolerance` for which [`fkp_bound_holds`] is
/// true; `B - tolerance` fails.
///
/// Brackets by doubling upward from the first grid point above `2π`, then
/// bisects on the grid.
pub fn fkp_minimal_bound(
    small_upper: &Rational,
    big_lower: &Rational,
    tolerance: &Rational,
) -> Result<Rational, BoundsError> {
    if !tolerance.is_positive() {
        return Err(BoundsError::NonPositiveTolerance(tolerance.clone()));
    }
    let at = |n: &BigInt| Rational::from(n.clone()) * tolerance;
    let two_pi = Rational::from(2) * pi_enclosure().upper();
    // grid index whose cap is still <= 2π: known failing
    let mut lo = (&two_pi / tolerance).floor();
    let mut step = BigInt::from(1);
    let mut hi = &lo + &step;
    while !holds_or_false(small_upper, big_lower, &at(&hi))? {
        lo = hi.clone();
        step *= 2;
        hi = &lo + &step;
    }
    while &hi - &lo > BigInt::from(1) {
        let mid: BigInt = (&lo + &hi) / 2;
        if holds_or_false(small_upper, big_lower, &at(&mid))? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(at(&hi))
}

/// `floor(q_coefficient · cap)`: any slope of length below `cap` has `|q|`
/// at most this. Negative caps are treated as zero.
pub fn max_q_from_length(cap: &Rational, constants: &LengthBoundConstants) -> BigInt {
    if cap.is_negative() {
        return BigInt::from(0);
    }
    (&constants.q_coefficient * cap).floor()
}

/// `floor(q_coefficient · cap · (2g - 1))`.
pub fn max_p_from_length(
    cap: &Rational,
    genus: u32,
    constants: &LengthBoundConstants,
) -> Result<BigInt, BoundsError> {
    if genus == 0 {
        return Err(BoundsError::ZeroGenus);
    }
    if cap.is_negative() {
        return Ok(BigInt::from(0));
    }
    let factor = Rational::from(2 * u64::from(genus) - 1);
    Ok((&constants.q_coefficient * cap * factor).floor())
}

/// Certified lower bound on the length of `slope`, inverting both bounds:
/// `max(q / c, |p| / (c(2g - 1)))`.
pub fn min_length_from_slope(
    slope: &Slope,
    genus: u32,
    constants: &LengthBoundConstants,
) -> Result<Rational, BoundsError> {
    if genus == 0 {
        return Err(BoundsError::ZeroGenus);
    }
    let c = &constants.q_coefficient;
    let from_q = Rational::from(slope.q().clone()) / c;
    let from_p = Rational::from(slope.p().abs()) / (c * Rational::from(2 * u64::from(genus) - 1));
    Ok(from_q.max(from_p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn slope(s: &str) -> Slope {
        s.parse().unwrap()
    }

    #[test]
    fn distance_examples() {
        assert_eq!(slope_distance(&Slope::meridian(), &slope("7/3")), 3.into());
        assert_eq!(slope_distance(&slope("0"), &slope("-7/3")), 7.into());
        assert_eq!(slope_distance(&slope("3/2"), &slope("3/2")), 0.into());
    }

    #[test]
    fn fkp_examples() {
        assert_eq!(
            fkp_bound_holds(&r("2.0299"), &r("2.82"), &r("14.17")),
            Ok(true)
        );
        assert_eq!(
            fkp_bound_holds(&r("2.83"), &r("3.07"), &r("27.34")),
            Ok(true)
        );
        assert_eq!(
            fkp_bound_holds(&r("2.0988"), &r("2.82"), &r("14.17")),
            Ok(false)
        );
        assert_eq!(
            fkp_bound_holds(&r("2.0299"), &r("2.82"), &r("14.16")),
            Ok(false)
        );
        assert_eq!(
            fkp_bound_holds(&r("2.83"), &r("3.07"), &r("27.33")),
            Ok(false)
        );
    }

    #[test]
    fn fkp_errors() {
        assert!(matches!(
            fkp_bound_holds(&r("2"), &r("3"), &r("6.28")),
            Err(BoundsError::VacuousCap(_))
        ));
        assert!(matches!(
            fkp_bound_holds(&r("3"), &r("3"), &r("20")),
            Err(BoundsError::InvalidVolumes { .. })
        ));
        assert!(matches!(
            fkp_bound_holds(&r("0"), &r("3"), &r("20")),
            Err(BoundsError::InvalidVolumes { .. })
        ));
        assert!(fkp_minimal_bound(&r("1"), &r("2"), &r("0")).is_err());
    }

    #[test]
    fn minimal_bound_examples() {
        let tol = r("1/1000");
        let b = fkp_minimal_bound(&r("2.0299"), &r("2.82"), &tol).unwrap();
        assert!(b > r("14.16") && b <= r("14.17"), "{b}");
        assert_eq!(fkp_bound_holds(&r("2.0299"), &r("2.82"), &b), Ok(true));
        assert_eq!(
            fkp_bound_holds(&r("2.0299"), &r("2.82"), &(&b - &tol)),
            Ok(false)
        );

        let b = fkp_minimal_bound(&r("2.83"), &r("3.07"), &tol).unwrap();
        assert!(b > r("27.33") && b <= r("27.34"), "{b}");

        let hundredth = r("1/100");
        assert_eq!(
            fkp_minimal_bound(&r("2.0299"), &r("2.82"), &hundredth),
            Ok(r("14.17"))
        );
        assert_eq!(
            fkp_minimal_bound(&r("2.83"), &r("3.07"), &hundredth),
            Ok(r("27.34"))
        );
    }

    #[test]
    fn minimal_bound_matches_direct_evaluation() {
        // 2π (1 - (1/8)^(2/3))^(-1/2) = 2π / sqrt(3/4) = 7.2551974569368...
        let b = fkp_minimal_bound(&r("1"), &r("8"), &r("1/100")).unwrap();
        let exact = r("7.2551974569368");
        assert!((&b - &exact).abs() <= r("1/100"), "{b}");
        assert!(b >= exact);
    }

    #[test]
    fn q_and_p_bounds() {
        let rig = LengthBoundConstants::rigorous();
        let paper = LengthBoundConstants::paper_mode();
        assert_eq!(rig.q_coefficient, r("120/67"));
        assert!(rig.validate().is_ok() && paper.validate().is_ok());
        let cap = r("27.34");
        assert_eq!(max_q_from_length(&cap, &rig), 48.into());
        assert_eq!(max_q_from_length(&cap, &paper), 48.into());
        assert_eq!(max_q_from_length(&r("0"), &rig), 0.into());
        assert_eq!(max_p_from_length(&cap, 5, &rig), Ok(440.into()));
        assert_eq!(max_p_from_length(&cap, 1, &rig), Ok(48.into()));
        assert_eq!(max_p_from_length(&cap, 5, &paper), Ok(440.into()));
        assert_eq!(
            max_p_from_length(&cap, 0, &paper),
            Err(BoundsError::ZeroGenus)
        );
        let bad = LengthBoundConstants {
            mode: CoefficientMode::Rigorous,
            ..LengthBoundConstants::paper_mode()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn length_inversion_examples() {
        let rig = LengthBoundConstants::rigorous();
        let l = min_length_from_slope(&slope("1/49"), 5, &rig).unwrap();
        assert_eq!(l, r("3283/120"));
        assert!(l > r("14.17"));
        let l = min_length_from_slope(&slope("441"), 5, &rig).unwrap();
        assert_eq!(l, r("441") * r("67/1080"));
        assert!(l > r("14.17"));
        // q = 1 still forces length at least 1/c
        assert_eq!(
            min_length_from_slope(&slope("0"), 3, &rig).unwrap(),
            r("67/120")
        );
    }

    fn positive(max: i64) -> impl Strategy<Value = Rational> {
        (1i64..max, 1i64..1000).prop_map(|(n, d)| Rational::new(n, d).unwrap())
    }

    proptest! {
        #[test]
        fn fkp_monotonicity(
            small in positive(3000), gap in positive(3000),
            cap in positive(50_000), bump in positive(5000),
        ) {
            let big = &small + &gap;
            let cap = Rational::from(7) + cap;
            if let Ok(true) = fkp_bound_holds(&small, &big, &cap) {
                let bigger_cap = &cap + &bump;
                prop_assert_eq!(fkp_bound_holds(&small, &big, &bigger_cap), Ok(true));
                prop_assert_eq!(fkp_bound_holds(&small, &(&big + &bump), &cap), Ok(true));
                let smaller = &small / &(Rational::from(1) + &bump);
                prop_assert_eq!(fkp_bound_holds(&smaller, &big, &cap), Ok(true));
            }
        }

        #[test]
        fn q_bound_is_p_bound_at_genus_one(n in 0i64..100_000, d in 1i64..1000) {
            let cap = Rational::new(n, d).unwrap();
            for c in [LengthBoundConstants::rigorous(), LengthBoundConstants::paper_mode()] {
                prop_assert_eq!(max_q_from_length(&cap, &c), max_p_from_length(&cap, 1, &c).unwrap());
            }
        }

        #[test]
        fn inversion_consistency(p in -3000i64..3000, q in 1i64..200, n in 1i64..10_000, g in 1u32..8) {
            let s = crate::exactnum::rational_normalize(p, q).unwrap();
            let cap = Rational::new(n, 100).unwrap();
            let c = LengthBoundConstants::rigorous();
            if s.q() > &max_q_from_length(&cap, &c) {
                prop_assert!(min_length_from_slope(&s, g, &c).unwrap() > cap);
            }
            if s.p().abs() > max_p_from_length(&cap, g, &c).unwrap() {
                prop_assert!(min_length_from_slope(&s, g, &c).unwrap() > cap);
            }
        }
    }
}
