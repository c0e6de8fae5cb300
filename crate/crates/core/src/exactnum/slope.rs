use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{NumError, Rational};

/// A Dehn surgery slope `p/q` with `gcd(|p|, q) = 1` and `q >= 1`, or the
/// meridian `1/0`, which is the only slope allowed to have `q = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Slope {
    p: BigInt,
    q: BigInt,
}

/// Reduces `p/q` to the canonical coprime form with a positive denominator.
///
/// `q = 0` is accepted only for `p = ±1`, which gives the meridian.
pub fn rational_normalize(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Slope, NumError> {
    let (p, q) = (p.into(), q.into());
    if q.is_zero() {
        return if p.abs().is_one() {
            Ok(Slope::meridian())
        } else {
            Err(NumError::InvalidSlope { p, q })
        };
    }
    let g = p.gcd(&q);
    let (mut p, mut q) = (p / &g, q / &g);
    if q.is_negative() {
        p = -p;
        q = -q;
    }
    Ok(Slope { p, q })
}

impl Slope {
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self, NumError> {
        rational_normalize(p, q)
    }

    pub fn integer(p: impl Into<BigInt>) -> Self {
        Slope {
            p: p.into(),
            q: BigInt::one(),
        }
    }

    pub fn meridian() -> Self {
        Slope {
            p: BigInt::one(),
            q: BigInt::zero(),
        }
    }

    pub fn is_meridian(&self) -> bool {
        self.q.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero()
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    /// `None` for the meridian.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.is_meridian() {
            None
        } else {
            Some(Rational::new(self.p.clone(), self.q.clone()).expect("q >= 1"))
        }
    }
}

impl From<&Rational> for Slope {
    fn from(r: &Rational) -> Self {
        Slope {
            p: r.numer().clone(),
            q: r.denom().clone(),
        }
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Slope {
    type Err = NumError;

    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let s = input.trim();
        let err = |reason| NumError::Parse {
            input: input.to_string(),
            reason,
        };
        match s.split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().map_err(|_| err("bad slope numerator"))?;
                let q: BigInt = q.trim().parse().map_err(|_| err("bad slope denominator"))?;
                rational_normalize(p, q)
            }
            None => {
                let p: BigInt = s.parse().map_err(|_| err("bad integer slope"))?;
                Ok(Slope::integer(p))
            }
        }
    }
}

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Slope {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
