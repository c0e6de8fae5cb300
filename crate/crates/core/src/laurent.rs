//! Laurent polynomials in `t` with half-integer exponents.
//!
//! Exponents are stored doubled, so `t^(1/2)` has key `1` and `t^-5` has key
//! `-10`. Alexander polynomials of knots only ever use even keys; the
//! half-integer keys exist for the symmetrized geometric sums `Q_k`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::ser::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::exactnum::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("division leaves a nonzero remainder")]
    NonzeroRemainder,
    #[error("torus knot parameters ({r}, {s}) are not coprime")]
    NotCoprime { r: i64, s: i64 },
    #[error("torus knot parameter must be nonzero")]
    ZeroParameter,
    #[error("cable winding number must be at least 2, got {0}")]
    WindingTooSmall(i64),
    #[error("Alexander polynomial has a half-integer exponent t^({0}/2)")]
    HalfIntegerExponent(i64),
    #[error("Alexander polynomial is not symmetric under t -> 1/t")]
    NotPalindromic,
    #[error("Alexander polynomial evaluates to {0} at t = 1, expected 1")]
    ValueAtOne(BigInt),
    #[error("parameter too large: {0}")]
    Overflow(&'static str),
    #[error("cannot parse polynomial {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    // doubled exponent -> nonzero coefficient
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        LaurentPoly::monomial(0, c)
    }

    /// `c * t^(doubled_exp / 2)`.
    pub fn monomial(doubled_exp: i64, c: impl Into<BigInt>) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(doubled_exp, c.into());
        p
    }

    /// Builds a polynomial from `(doubled exponent, coefficient)` pairs,
    /// merging repeated exponents.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// Convenience constructor from integer-exponent coefficients:
    /// `coeffs[i]` is the coefficient of `t^(lowest + i)`.
    pub fn from_coeffs(lowest: i64, coeffs: &[i64]) -> Self {
        LaurentPoly::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| (2 * (lowest + i as i64), c)),
        )
    }

    fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// Iterates `(doubled exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff(&self, doubled_exp: i64) -> BigInt {
        self.terms.get(&doubled_exp).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_doubled_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_doubled_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn value_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn first_derivative_at_one(&self) -> Rational {
        let twice: BigInt = self.terms.iter().map(|(&e, c)| c * e).sum();
        Rational::new(twice, 2).expect("nonzero denominator")
    }

    /// Exact value of `d²/dt²` at `t = 1`, i.e. the sum of `c·e·(e-1)`.
    pub fn second_derivative_at_one(&self) -> Rational {
        // with d = 2e: e(e-1) = d(d-2)/4
        let four_times: BigInt = self
            .terms
            .iter()
            .map(|(&d, c)| c * BigInt::from(d) * BigInt::from(d - 2))
            .sum();
        Rational::new(four_times, 4).expect("nonzero denominator")
    }

    pub fn is_palindromic(&self) -> bool {
        self.terms
            .iter()
            .all(|(&e, c)| self.terms.get(&-e) == Some(c))
    }

    /// Replaces `t` by `t^s`.
    ///
    /// # Panics
    /// If `s == 0`.
    pub fn substitute_power(&self, s: u32) -> LaurentPoly {
        assert!(s >= 1, "substitute_power needs s >= 1");
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e * i64::from(s), c.clone()))
                .collect(),
        }
    }

    /// Exact division. Any nonzero remainder is an error rather than being
    /// discarded.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Result<LaurentPoly, PolyError> {
        let (Some(div_lo), Some(div_hi)) = (
            divisor.min_doubled_exponent(),
            divisor.max_doubled_exponent(),
        ) else {
            return Err(PolyError::DivisionByZero);
        };
        let lead = &divisor.terms[&div_hi];
        let mut rem = self.clone();
        let mut quotient = LaurentPoly::zero();
        while let (Some(lo), Some(hi)) = (rem.min_doubled_exponent(), rem.max_doubled_exponent()) {
            // the remaining span cannot host the divisor
            if hi - lo < div_hi - div_lo {
                return Err(PolyError::NonzeroRemainder);
            }
            let (q, r) = rem.terms[&hi].div_rem(lead);
            if !r.is_zero() {
                return Err(PolyError::NonzeroRemainder);
            }
            let shift = hi - div_hi;
            for (&e, c) in &divisor.terms {
                rem.add_term(e + shift, -(c * &q));
            }
            quotient.add_term(shift, q);
        }
        Ok(quotient)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&ea, ca) in &self.terms {
            for (&eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

pub fn multiply(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    a * b
}

pub fn substitute_power(a: &LaurentPoly, s: u32) -> LaurentPoly {
    a.substitute_power(s)
}

pub fn second_derivative_at_one(a: &LaurentPoly) -> Rational {
    a.second_derivative_at_one()
}

/// `Q_k(t) = t^((1-k)/2) (1 + t + ... + t^(k-1))`.
///
/// # Panics
/// If `k == 0`.
pub fn q_poly(k: u64) -> LaurentPoly {
    assert!(k >= 1, "q_poly needs k >= 1");
    let k = i64::try_from(k).expect("k fits in i64");
    LaurentPoly::from_terms((0..k).map(|i| (2 * i + 1 - k, 1)))
}

/// Symmetrized Alexander polynomial of the `(r, s)` torus knot, computed as
/// `Q_{rs} / (Q_r Q_s)`. Signs of `r` and `s` are ignored (mirrors share Δ),
/// and `|r| = 1` gives the unknot.
pub fn torus_alexander(r: i64, s: i64) -> Result<AlexanderPoly, PolyError> {
    if r == 0 || s == 0 {
        return Err(PolyError::ZeroParameter);
    }
    let (ra, sa) = (r.unsigned_abs(), s.unsigned_abs());
    if ra.gcd(&sa) != 1 {
        return Err(PolyError::NotCoprime { r, s });
    }
    let rs = ra
        .checked_mul(sa)
        .filter(|&k| k <= 1 << 24)
        .ok_or(PolyError::Overflow("torus knot r·s"))?;
    let denominator = &q_poly(ra) * &q_poly(sa);
    let delta = q_poly(rs).div_exact(&denominator)?;
    AlexanderPoly::try_from(delta)
}

/// Closed form `(r² - 1)(s² - 1) / 12` for the second derivative at 1 of
/// the torus knot Alexander polynomial.
pub fn torus_second_derivative(r: i64, s: i64) -> Rational {
    let r2 = BigInt::from(r) * BigInt::from(r) - 1;
    let s2 = BigInt::from(s) * BigInt::from(s) - 1;
    Rational::new(r2 * s2, 12).expect("nonzero denominator")
}

/// A Laurent polynomial known to be a normalized Alexander polynomial:
/// integer exponents, `Δ(1) = 1` and `Δ(t) = Δ(1/t)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlexanderPoly(LaurentPoly);

impl AlexanderPoly {
    pub fn unknot() -> Self {
        AlexanderPoly(LaurentPoly::one())
    }

    /// Builds from symmetric integer-exponent coefficients; see
    /// [`LaurentPoly::from_coeffs`].
    pub fn from_coeffs(lowest: i64, coeffs: &[i64]) -> Result<Self, PolyError> {
        AlexanderPoly::try_from(LaurentPoly::from_coeffs(lowest, coeffs))
    }

    pub fn as_poly(&self) -> &LaurentPoly {
        &self.0
    }

    pub fn into_poly(self) -> LaurentPoly {
        self.0
    }

    pub fn degree(&self) -> i64 {
        self.0.max_doubled_exponent().unwrap_or(0) / 2
    }

    pub fn second_derivative_at_one(&self) -> Rational {
        self.0.second_derivative_at_one()
    }

    pub fn substitute_power(&self, s: u32) -> AlexanderPoly {
        AlexanderPoly(self.0.substitute_power(s))
    }

    pub fn multiply(&self, other: &AlexanderPoly) -> AlexanderPoly {
        AlexanderPoly(&self.0 * &other.0)
    }
}

impl TryFrom<LaurentPoly> for AlexanderPoly {
    type Error = PolyError;

    fn try_from(p: LaurentPoly) -> Result<Self, Self::Error> {
        if let Some((e, _)) = p.terms().find(|(e, _)| e % 2 != 0) {
            return Err(PolyError::HalfIntegerExponent(e));
        }
        if !p.is_palindromic() {
            return Err(PolyError::NotPalindromic);
        }
        let v = p.value_at_one();
        if !v.is_one() {
            return Err(PolyError::ValueAtOne(v));
        }
        Ok(AlexanderPoly(p))
    }
}

impl fmt::Display for AlexanderPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for AlexanderPoly {
    type Err = PolyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AlexanderPoly::try_from(s.parse::<LaurentPoly>()?)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&d, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            match (i, sign) {
                (0, "-") => f.write_str("-")?,
                (0, _) => {}
                _ => write!(f, " {sign} ")?,
            }
            let mag = c.abs();
            if d == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match d {
                0 => {}
                2 => f.write_str("t")?,
                d if d % 2 == 0 => write!(f, "t^{}", d / 2)?,
                d => write!(f, "t^({d}/2)")?,
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = PolyError;

    /// Parses the text form produced by `Display`, e.g.
    /// `t^-5 - t^-4 + t^-2 - t^-1 + 1 - t + t^2 - t^4 + t^5` or
    /// `t^(-1/2) + t^(1/2)`.
    fn from_str(input: &str) -> Result<Self, Self::Err> {
        TermParser::new(input).parse()
    }
}

struct TermParser<'a> {
    input: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> TermParser<'a> {
    fn new(input: &'a str) -> Self {
        TermParser {
            input,
            chars: input.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
        }
    }

    fn fail<T>(&self, reason: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Parse {
            input: self.input.to_string(),
            reason: reason.into(),
        })
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        self.chars[start..self.pos]
            .iter()
            .collect::<String>()
            .parse()
            .ok()
    }

    fn signed_integer(&mut self) -> Option<i64> {
        let negative = self.eat('-');
        if !negative {
            self.eat('+');
        }
        let n = self.integer()?.to_i64()?;
        Some(if negative { -n } else { n })
    }

    fn parse(mut self) -> Result<LaurentPoly, PolyError> {
        if self.chars.is_empty() {
            return self.fail("empty input");
        }
        let mut poly = LaurentPoly::zero();
        let mut first = true;
        while self.pos < self.chars.len() {
            let negative = if self.eat('-') {
                true
            } else if self.eat('+') || first {
                false
            } else {
                return self.fail(format!("expected + or - at offset {}", self.pos));
            };
            first = false;
            let coeff = self.integer();
            let doubled = if self.eat('t') {
                if self.eat('^') {
                    if self.eat('(') {
                        let Some(num) = self.signed_integer() else {
                            return self.fail("bad fractional exponent");
                        };
                        if !(self.eat('/') && self.eat('2') && self.eat(')')) {
                            return self.fail("fractional exponents must be written (n/2)");
                        }
                        num
                    } else {
                        match self.signed_integer() {
                            Some(n) => 2 * n,
                            None => return self.fail("missing exponent after ^"),
                        }
                    }
                } else {
                    2
                }
            } else {
                if coeff.is_none() {
                    return self.fail(format!("expected a term at offset {}", self.pos));
                }
                0
            };
            let mut c = coeff.unwrap_or_else(BigInt::one);
            if negative {
                c = -c;
            }
            poly.add_term(doubled, c);
        }
        Ok(poly)
    }
}

#[derive(Serialize, Deserialize)]
struct Pair(i64, BigIntJson);

// JSON coefficients are plain integers.
struct BigIntJson(BigInt);

impl Serialize for BigIntJson {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => serializer.serialize_i64(v),
            None => Err(S::Error::custom("coefficient exceeds 64 bits")),
        }
    }
}

impl<'de> Deserialize<'de> for BigIntJson {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        Ok(BigIntJson(BigInt::from(i64::deserialize(deserializer)?)))
    }
}

impl Serialize for LaurentPoly {
    /// JSON form: array of `[doubled exponent, coefficient]` pairs.
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(
            self.terms
                .iter()
                .map(|(&e, c)| Pair(e, BigIntJson(c.clone()))),
        )
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let pairs = Vec::<Pair>::deserialize(deserializer)?;
        Ok(LaurentPoly::from_terms(
            pairs.into_iter().map(|Pair(e, c)| (e, c.0)),
        ))
    }
}

impl Serialize for AlexanderPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for AlexanderPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let p = LaurentPoly::deserialize(deserializer)?;
        AlexanderPoly::try_from(p).map_err(D::Error::custom)
    }
}
