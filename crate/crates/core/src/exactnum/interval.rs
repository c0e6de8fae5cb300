use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::{NumError, Rational};

/// A closed interval `[lower, upper]` with rational endpoints.
///
/// Endpoints are exact, so the outward-rounded result of each operation is
/// simply the hull of the endpoint combinations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawInterval")]
pub struct RationalInterval {
    lower: Rational,
    upper: Rational,
}

#[derive(Deserialize)]
struct RawInterval {
    lower: Rational,
    upper: Rational,
}

impl TryFrom<RawInterval> for RationalInterval {
    type Error = NumError;

    fn try_from(raw: RawInterval) -> Result<Self, Self::Error> {
        RationalInterval::new(raw.lower, raw.upper)
    }
}

impl RationalInterval {
    pub fn new(lower: Rational, upper: Rational) -> Result<Self, NumError> {
        if lower > upper {
            return Err(NumError::EmptyInterval {
                lower: lower.to_string(),
                upper: upper.to_string(),
            });
        }
        Ok(RationalInterval { lower, upper })
    }

    pub fn point(x: Rational) -> Self {
        RationalInterval {
            lower: x.clone(),
            upper: x,
        }
    }

    pub fn lower(&self) -> &Rational {
        &self.lower
    }

    pub fn upper(&self) -> &Rational {
        &self.upper
    }

    pub fn width(&self) -> Rational {
        &self.upper - &self.lower
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lower <= x && x <= &self.upper
    }

    pub fn contains_zero(&self) -> bool {
        !self.lower.is_positive() && !self.upper.is_negative()
    }

    pub fn add(&self, rhs: &RationalInterval) -> RationalInterval {
        RationalInterval {
            lower: &self.lower + &rhs.lower,
            upper: &self.upper + &rhs.upper,
        }
    }

    pub fn sub(&self, rhs: &RationalInterval) -> RationalInterval {
        RationalInterval {
            lower: &self.lower - &rhs.upper,
            upper: &self.upper - &rhs.lower,
        }
    }

    pub fn neg(&self) -> RationalInterval {
        RationalInterval {
            lower: -&self.upper,
            upper: -&self.lower,
        }
    }

    pub fn mul(&self, rhs: &RationalInterval) -> RationalInterval {
        let products = [
            &self.lower * &rhs.lower,
            &self.lower * &rhs.upper,
            &self.upper * &rhs.lower,
            &self.upper * &rhs.upper,
        ];
        Self::hull(products)
    }

    /// Fails when the divisor contains zero; unbounded results are never produced.
    pub fn div(&self, rhs: &RationalInterval) -> Result<RationalInterval, NumError> {
        if rhs.contains_zero() {
            return Err(NumError::DivisorContainsZero {
                lower: rhs.lower.to_string(),
                upper: rhs.upper.to_string(),
            });
        }
        let recip = RationalInterval {
            lower: rhs.upper.recip().expect("nonzero"),
            upper: rhs.lower.recip().expect("nonzero"),
        };
        Ok(self.mul(&recip))
    }

    fn hull(values: [Rational; 4]) -> RationalInterval {
        let [a, b, c, d] = values;
        let lower = a.clone().min(b.clone()).min(c.clone()).min(d.clone());
        let upper = a.max(b).max(c).max(d);
        RationalInterval { lower, upper }
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lower, self.upper)
    }
}

// 32 decimals of pi, truncated down and rounded up.
const PI_LOWER: &str = "3.14159265358979323846264338327950";
const PI_UPPER: &str = "3.14159265358979323846264338327951";

/// A compiled-in rational enclosure of pi.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiEnclosure {
    pub interval: RationalInterval,
}

impl PiEnclosure {
    pub fn lower(&self) -> &Rational {
        self.interval.lower()
    }

    pub fn upper(&self) -> &Rational {
        self.interval.upper()
    }
}

pub fn pi_enclosure() -> &'static PiEnclosure {
    static PI: OnceLock<PiEnclosure> = OnceLock::new();
    PI.get_or_init(|| PiEnclosure {
        interval: RationalInterval::new(
            PI_LOWER.parse().expect("pi literal"),
            PI_UPPER.parse().expect("pi literal"),
        )
        .expect("ordered pi literals"),
    })
}
