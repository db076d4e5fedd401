//! Exact extended-value arithmetic.
//!
//! [`Rational`] is an exact rational number that stays on a machine-integer
//! representation while the value is an `i64` integer and transparently
//! promotes to an arbitrary-precision fraction on overflow or division.
//! [`Bound`] adjoins `-inf` and `+inf` to it and is used both as a constraint
//! weight and as a path distance.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which subgroup of the reals time values live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TimeModel {
    /// Integer time.
    Discrete,
    /// Continuous time, represented by exact rationals.
    Dense,
}

impl TimeModel {
    pub fn admits(self, value: &Rational) -> bool {
        match self {
            TimeModel::Discrete => value.is_integer(),
            TimeModel::Dense => true,
        }
    }

    pub fn admits_bound(self, bound: &Bound) -> bool {
        match bound {
            Bound::Finite(v) => self.admits(v),
            _ => true,
        }
    }

    /// Checks that `bound` belongs to this model.
    pub fn check(self, bound: &Bound) -> Result<()> {
        if self.admits_bound(bound) {
            Ok(())
        } else {
            Err(Error::ModelMismatch {
                value: bound.to_string(),
                model: self,
            })
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            TimeModel::Discrete => "discrete",
            TimeModel::Dense => "dense",
        }
    }
}

impl fmt::Display for TimeModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An exact rational number.
///
/// Integers that fit in an `i64` are always stored inline, everything else as
/// a reduced [`BigRational`]. Because the representation is canonical, the
/// derived equality and hashing agree with numeric equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Int(i64),
    Big(Box<BigRational>),
}

impl Rational {
    pub const ZERO: Rational = Rational(Repr::Int(0));
    pub const ONE: Rational = Rational(Repr::Int(1));

    pub const fn from_i64(value: i64) -> Self {
        Rational(Repr::Int(value))
    }

    /// `numer / denom`, or `None` when `denom` is zero.
    pub fn new(numer: BigInt, denom: BigInt) -> Option<Self> {
        if denom.is_zero() {
            return None;
        }
        Some(Self::from_big(BigRational::new(numer, denom)))
    }

    pub fn from_bigint(value: BigInt) -> Self {
        match value.to_i64() {
            Some(v) => Rational(Repr::Int(v)),
            None => Rational(Repr::Big(Box::new(BigRational::from_integer(value)))),
        }
    }

    pub fn from_big(value: BigRational) -> Self {
        if value.is_integer() {
            if let Some(v) = value.numer().to_i64() {
                return Rational(Repr::Int(v));
            }
        }
        Rational(Repr::Big(Box::new(value)))
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Int(v) => BigRational::from_integer(BigInt::from(*v)),
            Repr::Big(b) => (**b).clone(),
        }
    }

    /// The value as an `i64`, if it is an integer in range.
    pub fn as_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Int(v) => Some(*v),
            Repr::Big(_) => None,
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Int(v) => BigInt::from(*v),
            Repr::Big(b) => b.numer().clone(),
        }
    }

    /// Denominator in lowest terms; always positive.
    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Int(_) => BigInt::one(),
            Repr::Big(b) => b.denom().clone(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Int(_) => true,
            Repr::Big(b) => b.is_integer(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Int(0))
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Int(v) => *v < 0,
            Repr::Big(b) => b.is_negative(),
        }
    }

    pub fn is_positive(&self) -> bool {
        match &self.0 {
            Repr::Int(v) => *v > 0,
            Repr::Big(b) => b.is_positive(),
        }
    }

    pub fn abs(&self) -> Rational {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Largest integer not exceeding the value.
    pub fn floor(&self) -> Rational {
        match &self.0 {
            Repr::Int(_) => self.clone(),
            Repr::Big(b) => Rational::from_bigint(b.floor().to_integer()),
        }
    }

    /// Least common multiple of the denominators of `values` (1 for none).
    pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
        values
            .into_iter()
            .fold(BigInt::one(), |acc, v| acc.lcm(&v.denom()))
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::ZERO
    }
}

impl From<i64> for Rational {
    fn from(value: i64) -> Self {
        Rational::from_i64(value)
    }
}

impl From<BigInt> for Rational {
    fn from(value: BigInt) -> Self {
        Rational::from_bigint(value)
    }
}

impl From<BigRational> for Rational {
    fn from(value: BigRational) -> Self {
        Rational::from_big(value)
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Int(a), Repr::Int(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Rational {
    type Output = Rational;

    fn add(self, rhs: &Rational) -> Rational {
        if let (Repr::Int(a), Repr::Int(b)) = (&self.0, &rhs.0) {
            if let Some(sum) = a.checked_add(*b) {
                return Rational(Repr::Int(sum));
            }
        }
        Rational::from_big(self.to_big() + rhs.to_big())
    }
}

impl Sub for &Rational {
    type Output = Rational;

    fn sub(self, rhs: &Rational) -> Rational {
        if let (Repr::Int(a), Repr::Int(b)) = (&self.0, &rhs.0) {
            if let Some(diff) = a.checked_sub(*b) {
                return Rational(Repr::Int(diff));
            }
        }
        Rational::from_big(self.to_big() - rhs.to_big())
    }
}

impl Mul for &Rational {
    type Output = Rational;

    fn mul(self, rhs: &Rational) -> Rational {
        if let (Repr::Int(a), Repr::Int(b)) = (&self.0, &rhs.0) {
            if let Some(prod) = a.checked_mul(*b) {
                return Rational(Repr::Int(prod));
            }
        }
        Rational::from_big(self.to_big() * rhs.to_big())
    }
}

impl Neg for &Rational {
    type Output = Rational;

    fn neg(self) -> Rational {
        if let Repr::Int(a) = &self.0 {
            if let Some(n) = a.checked_neg() {
                return Rational(Repr::Int(n));
            }
        }
        Rational::from_big(-self.to_big())
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -&self
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Int(v) => write!(f, "{v}"),
            Repr::Big(b) if b.is_integer() => write!(f, "{}", b.numer()),
            Repr::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An element of the extended time-difference domain.
///
/// The derived order is the intended one: `NegInf` < every `Finite` < `PosInf`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bound {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl Bound {
    pub const ZERO: Bound = Bound::Finite(Rational::ZERO);

    pub fn finite(value: impl Into<Rational>) -> Self {
        Bound::Finite(value.into())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Bound::Finite(_))
    }

    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            Bound::Finite(v) => Some(v),
            _ => None,
        }
    }

    /// Extended addition. Fails only for `-inf + inf`.
    pub fn add(&self, other: &Bound) -> Result<Bound> {
        match (self, other) {
            (Bound::NegInf, Bound::PosInf) | (Bound::PosInf, Bound::NegInf) => {
                Err(Error::IndeterminateSum)
            }
            (Bound::Finite(a), Bound::Finite(b)) => Ok(Bound::Finite(a + b)),
            (Bound::PosInf, _) | (_, Bound::PosInf) => Ok(Bound::PosInf),
            (Bound::NegInf, _) | (_, Bound::NegInf) => Ok(Bound::NegInf),
        }
    }

    /// Parses the textual bound syntax: an optionally signed decimal integer,
    /// `p/q`, or `inf` / `+inf` / `-inf` (case-insensitive).
    ///
    /// Under [`TimeModel::Discrete`] a non-integer value is a
    /// [`Error::ModelMismatch`].
    pub fn parse(text: &str, model: TimeModel) -> Result<Bound> {
        let bound = parse_bound_syntax(text)?;
        model.check(&bound)?;
        Ok(bound)
    }
}

impl From<Rational> for Bound {
    fn from(value: Rational) -> Self {
        Bound::Finite(value)
    }
}

impl From<i64> for Bound {
    fn from(value: i64) -> Self {
        Bound::Finite(Rational::from_i64(value))
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::NegInf => f.write_str("-inf"),
            Bound::Finite(v) => fmt::Display::fmt(v, f),
            Bound::PosInf => f.write_str("inf"),
        }
    }
}

impl fmt::Debug for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_bound_syntax(text: &str) -> Result<Bound> {
    let malformed = || Error::Parse(format!("malformed bound `{text}`"));
    let trimmed = text.trim();
    let (negative, body) = match trimmed.as_bytes().first() {
        Some(b'-') => (true, &trimmed[1..]),
        Some(b'+') => (false, &trimmed[1..]),
        _ => (false, trimmed),
    };
    if body.eq_ignore_ascii_case("inf") {
        return Ok(if negative { Bound::NegInf } else { Bound::PosInf });
    }
    let (numer, denom) = match body.split_once('/') {
        Some((p, q)) => (p, Some(q)),
        None => (body, None),
    };
    let digits = |s: &str| -> Result<BigInt> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(malformed());
        }
        BigInt::parse_bytes(s.as_bytes(), 10).ok_or_else(malformed)
    };
    let mut numer = digits(numer)?;
    if negative {
        numer = -numer;
    }
    let denom = match denom {
        Some(q) => digits(q)?,
        None => BigInt::one(),
    };
    Rational::new(numer, denom)
        .map(Bound::Finite)
        .ok_or_else(|| Error::Parse(format!("zero denominator in `{text}`")))
}
