//! Obstructions to two knots sharing a surgery.
//!
//! * Casson–Walker: equal surgeries force equal `Δ''(1)`, and for cables the
//!   composition law `Δ''_{K''}(1) = (r²-1)(s²-1)/12 + s²Δ''_{K'}(1)`.
//! * Ni–Wu d-invariant sums and the ν⁺ mirror obstruction.
//! * Satellite slope and genus bookkeeping, and the genus-rigidity ranges.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::{rational_normalize, Rational, Slope};
use crate::laurent::{torus_alexander, AlexanderPoly, PolyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ObstructionError {
    #[error("slope {0} does not give a rational homology sphere")]
    ZeroSlope(Slope),
    #[error("the meridian is not a surgery slope here")]
    Meridian,
    #[error("winding number must be at least 2, got {0}")]
    WindingTooSmall(u64),
    #[error(
        "V-sequence must be non-increasing: V_{index} = {next} exceeds V_{prev_index} = {prev}"
    )]
    Increasing {
        prev_index: usize,
        index: usize,
        prev: u64,
        next: u64,
    },
    #[error("d-invariant sum needs p >= 1 and q >= 1, got p = {p}, q = {q}")]
    NonPositive { p: u64, q: u64 },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// `q·Δ''(1) / 2p`, the knot-dependent term of the Casson–Walker surgery formula.
pub fn cw_correction_term(slope: &Slope, delta2: &Rational) -> Result<Rational, ObstructionError> {
    if slope.is_meridian() {
        return Err(ObstructionError::Meridian);
    }
    if slope.is_zero() {
        return Err(ObstructionError::ZeroSlope(slope.clone()));
    }
    let coeff = Rational::new(slope.q().clone(), BigInt::from(2) * slope.p()).expect("p != 0");
    Ok(coeff * delta2)
}

/// True when no nonzero slope can relate the two knots, i.e. their
/// `Δ''(1)` values differ.
pub fn cw_excludes(delta2_a: &Rational, delta2_b: &Rational) -> bool {
    delta2_a != delta2_b
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CableSolution {
    pub r: u64,
    pub s: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CableSearch {
    pub solutions: Vec<CableSolution>,
    pub s_max: u64,
    /// No solution can exist with `s > s_max`.
    pub complete: bool,
}

/// All coprime `(r, s)` with `r >= 1` and `2 <= s <= s_max` such that
/// `target = (r²-1)(s²-1)/12 + s²·companion`.
///
/// `(-r, s)` is identified with `(r, s)`; `r = 1` is admitted.
pub fn cable_solutions(target: &Rational, companion: &Rational, s_max: u64) -> CableSearch {
    let mut solutions = Vec::new();
    for s in 2..=s_max {
        let s2 = Rational::from(BigInt::from(s) * BigInt::from(s));
        // r² = 1 + 12(target - companion·s²)/(s² - 1)
        let r2 = Rational::one()
            + Rational::from(12) * (target - companion * &s2) / (&s2 - Rational::one());
        if !r2.is_integer() || r2 < Rational::one() {
            continue;
        }
        let r2 = r2.numer();
        let r = r2.sqrt();
        if &(&r * &r) != r2 {
            continue;
        }
        if r.gcd(&BigInt::from(s)).is_one() {
            let r = u64::try_from(r).expect("r bounded by target");
            solutions.push(CableSolution { r, s });
        }
    }
    CableSearch {
        solutions,
        s_max,
        complete: cable_search_complete(target, companion, s_max),
    }
}

// For s² > target/companion the right-hand side exceeds target for every r >= 1.
fn cable_search_complete(target: &Rational, companion: &Rational, s_max: u64) -> bool {
    if !companion.is_positive() {
        return false;
    }
    let s2 = Rational::from(BigInt::from(s_max) * BigInt::from(s_max));
    s2 > target / companion
}

/// Smallest `s_max >= 2` for which [`cable_solutions`] can report completeness,
/// or `None` when the companion value is not positive.
pub fn complete_s_max(target: &Rational, companion: &Rational) -> Option<u64> {
    if !companion.is_positive() {
        return None;
    }
    let bound = (target / companion).floor();
    let mut s = if bound.is_positive() {
        u64::try_from(bound.sqrt()).ok()?
    } else {
        2
    };
    s = s.max(2);
    while !cable_search_complete(target, companion, s) {
        s += 1;
    }
    Some(s)
}

/// `Δ_{K'}(t^s) · Δ_{T(r,s)}(t)`, the Alexander polynomial of the `(r, s)` cable.
pub fn cable_alexander(
    companion: &AlexanderPoly,
    r: i64,
    s: i64,
) -> Result<AlexanderPoly, ObstructionError> {
    if s < 2 {
        return Err(PolyError::WindingTooSmall(s).into());
    }
    let torus = torus_alexander(r, s)?;
    let winding = u32::try_from(s).map_err(|_| PolyError::Overflow("cable winding number"))?;
    Ok(companion.substitute_power(winding).multiply(&torus))
}

/// A non-increasing sequence `V_0 >= V_1 >= ... >= 0`, implicitly zero past its end.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct VSequence(Vec<u64>);

impl VSequence {
    pub fn new(values: Vec<u64>) -> Result<Self, ObstructionError> {
        for (i, w) in values.windows(2).enumerate() {
            if w[1] > w[0] {
                return Err(ObstructionError::Increasing {
                    prev_index: i,
                    index: i + 1,
                    prev: w[0],
                    next: w[1],
                });
            }
        }
        Ok(VSequence(values))
    }

    pub fn get(&self, i: u64) -> u64 {
        usize::try_from(i)
            .ok()
            .and_then(|i| self.0.get(i))
            .copied()
            .unwrap_or(0)
    }

    pub fn values(&self) -> &[u64] {
        &self.0
    }

    /// Least index with `V_i = 0`.
    pub fn nu_plus(&self) -> u64 {
        self.0.iter().position(|&v| v == 0).unwrap_or(self.0.len()) as u64
    }
}

impl TryFrom<Vec<u64>> for VSequence {
    type Error = ObstructionError;
    fn try_from(values: Vec<u64>) -> Result<Self, Self::Error> {
        VSequence::new(values)
    }
}

impl From<VSequence> for Vec<u64> {
    fn from(v: VSequence) -> Self {
        v.0
    }
}

/// `Σ_{i=0}^{p-1} max(V_{⌊i/q⌋}, V_{⌈(p-i)/q⌉})`: half the total drop in
/// d-invariants between `p/q` surgery on the unknot and on the knot.
pub fn d_gap_sum(v: &VSequence, p: u64, q: u64) -> Result<u128, ObstructionError> {
    if p == 0 || q == 0 {
        return Err(ObstructionError::NonPositive { p, q });
    }
    let total = (0..p)
        .map(|i| {
            let lo = v.get(i / q);
            let hi = v.get((p - i).div_ceil(q));
            u128::from(lo.max(hi))
        })
        .sum();
    Ok(total)
}

/// True when `ν⁺(K) > 0` and `ν⁺(mK) = 0`, which rules out `K` and `mK`
/// sharing any nonzero oriented surgery.
pub fn nu_plus_excludes_mirror(nu_plus: u32, nu_plus_mirror: u32) -> bool {
    nu_plus > 0 && nu_plus_mirror == 0
}

/// `p/q` surgery on a satellite with winding number `w` is `p/(q·w²)`
/// surgery on the companion.
pub fn satellite_slope_transform(slope: &Slope, w: u64) -> Result<Slope, ObstructionError> {
    if w < 2 {
        return Err(ObstructionError::WindingTooSmall(w));
    }
    if slope.is_meridian() {
        return Err(ObstructionError::Meridian);
    }
    let w = BigInt::from(w);
    Ok(rational_normalize(slope.p().clone(), slope.q() * &w * &w).expect("q·w² > 0"))
}

/// Schubert's formula `g(P(J)) = g(P) + w·g(J)`.
pub fn schubert_genus(pattern_genus: u64, w: u64, companion_genus: u64) -> u128 {
    u128::from(pattern_genus) + u128::from(w) * u128::from(companion_genus)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GenusRigidity {
    /// `p/q >= 4g + 4`: any knot with the same surgery has the same genus.
    PositiveRigid,
    /// `q >= 2` and `p <= min(2q - 12 - 4q², -10q)`.
    NegativeRigid,
    NotRigid,
}

pub fn genus_rigidity(slope: &Slope, g: u32) -> GenusRigidity {
    if slope.is_meridian() {
        return GenusRigidity::NotRigid;
    }
    let (p, q) = (slope.p(), slope.q());
    if p >= &(BigInt::from(4 * u64::from(g) + 4) * q) {
        return GenusRigidity::PositiveRigid;
    }
    if q >= &BigInt::from(2) {
        let quadratic: BigInt = BigInt::from(2) * q - 12 - BigInt::from(4) * q * q;
        let linear: BigInt = BigInt::from(-10) * q;
        if p <= &quadratic.min(linear) {
            return GenusRigidity::NegativeRigid;
        }
    }
    GenusRigidity::NotRigid
}

/// Whether `a·q² + b·q + c > k·q` for every real `q`, decided by the sign
/// of the leading coefficient and the discriminant.
pub fn quadratic_dominates_linear(a: i64, b: i64, c: i64, k: i64) -> bool {
    let (a, b, c) = (BigInt::from(a), BigInt::from(b) - k, BigInt::from(c));
    a.is_positive() && (&b * &b - BigInt::from(4) * &a * &c).is_negative()
}
