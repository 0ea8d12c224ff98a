//! Numeric backends and the extended (min-plus) value type.
//!
//! Two backends implement [`Scalar`]: [`Rational`] (arbitrary precision, all
//! identities hold exactly) and `f64` (every equality test goes through a
//! relative-absolute tolerance). Costs and potentials live in
//! [`Ext`], which adjoins the absorbing element `+inf`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Result, WkamError};

pub type Rational = BigRational;

/// Default tolerance of float mode.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + MinPlus
{
    /// Whether arithmetic is exact; the tolerance is ignored when it is.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(v: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn from_rational(r: &Rational) -> Self;
    /// Exact rational value; floats convert through their binary expansion.
    fn to_rational(&self) -> Option<Rational>;
    fn to_f64(&self) -> f64;
    fn is_nan(&self) -> bool;
    fn abs_val(&self) -> Self;
    fn parse_value(s: &str) -> Result<Self>;
    /// Serialized form: `"p/q"` strings for rationals, numbers for floats.
    fn to_json(&self) -> serde_json::Value;
    /// Equality up to the relative-absolute tolerance `tol` (exact when `EXACT`).
    fn eq_tol(&self, other: &Self, tol: f64) -> bool;

    fn min_of(a: Self, b: Self) -> Self {
        if b < a {
            b
        } else {
            a
        }
    }

    fn max_of(a: Self, b: Self) -> Self {
        if b > a {
            b
        } else {
            a
        }
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_int(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn is_nan(&self) -> bool {
        false
    }
    fn abs_val(&self) -> Self {
        self.abs()
    }
    fn parse_value(s: &str) -> Result<Self> {
        parse_rational(s)
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(self.to_string())
    }
    fn eq_tol(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_int(v: i64) -> Self {
        v as f64
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
    fn from_rational(r: &Rational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }
    fn to_rational(&self) -> Option<Rational> {
        Rational::from_float(*self)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_nan(&self) -> bool {
        f64::is_nan(*self)
    }
    fn abs_val(&self) -> Self {
        self.abs()
    }
    fn parse_value(s: &str) -> Result<Self> {
        let t = normalize_sign(s);
        if t.contains('/') {
            return parse_rational(&t).map(|r| Scalar::to_f64(&r));
        }
        let v: f64 = t
            .parse()
            .map_err(|_| WkamError::Parse(format!("not a number: {s:?}")))?;
        if !v.is_finite() {
            return Err(WkamError::Parse(format!("not a finite number: {s:?}")));
        }
        Ok(v)
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::Number::from_f64(*self)
            .map(serde_json::Value::Number)
            .unwrap_or(serde_json::Value::Null)
    }
    fn eq_tol(&self, other: &Self, tol: f64) -> bool {
        let scale = 1f64.max(self.abs()).max(other.abs());
        (self - other).abs() <= tol * scale
    }
}

fn normalize_sign(s: &str) -> String {
    s.trim().replace('\u{2212}', "-")
}

/// Parses `"p/q"`, integers and decimal literals (with optional exponent)
/// into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = normalize_sign(s);
    let bad = || WkamError::Parse(format!("not a rational: {s:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(WkamError::Parse(format!("zero denominator: {s:?}")));
        }
        return Ok(Rational::new(p, q));
    }
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(i) => {
            let e: i32 = t[i + 1..].parse().map_err(|_| bad())?;
            (&t[..i], e)
        }
        None => (t.as_str(), 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all: String = format!("{int_part}{frac_part}");
    let numer: BigInt = all.parse().map_err(|_| bad())?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut value = if scale >= 0 {
        Rational::from_integer(numer * num::pow(ten, scale as usize))
    } else {
        Rational::new(numer, num::pow(ten, (-scale) as usize))
    };
    if negative {
        value = -value;
    }
    Ok(value)
}

/// Tolerance context for comparisons; ignored by exact backends.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tol(pub f64);

impl Tol {
    pub fn eq<T: Scalar>(self, a: &T, b: &T) -> bool {
        a.eq_tol(b, self.0)
    }
    pub fn le<T: Scalar>(self, a: &T, b: &T) -> bool {
        a <= b || a.eq_tol(b, self.0)
    }
    pub fn lt<T: Scalar>(self, a: &T, b: &T) -> bool {
        a < b && !a.eq_tol(b, self.0)
    }
    pub fn ge<T: Scalar>(self, a: &T, b: &T) -> bool {
        self.le(b, a)
    }
    pub fn gt<T: Scalar>(self, a: &T, b: &T) -> bool {
        self.lt(b, a)
    }
    pub fn is_zero<T: Scalar>(self, a: &T) -> bool {
        self.eq(a, &T::zero())
    }
    pub fn eq_slices<T: Scalar>(self, a: &[T], b: &[T]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| self.eq(x, y))
    }
    pub fn le_slices<T: Scalar>(self, a: &[T], b: &[T]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| self.le(x, y))
    }
}

/// A value of the min-plus semiring: a finite scalar or `+inf`.
#[derive(Clone, Debug, PartialEq)]
pub enum Ext<T> {
    Fin(T),
    Inf,
}

impl<T: Scalar> Ext<T> {
    pub fn zero() -> Self {
        Ext::Fin(T::zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Ext::Fin(_))
    }

    pub fn finite(&self) -> Option<&T> {
        match self {
            Ext::Fin(v) => Some(v),
            Ext::Inf => None,
        }
    }

    pub fn into_finite(self) -> Option<T> {
        match self {
            Ext::Fin(v) => Some(v),
            Ext::Inf => None,
        }
    }

    /// Tropical product: ordinary addition with `+inf` absorbing.
    pub fn plus(&self, other: &Self) -> Self {
        match (self, other) {
            (Ext::Fin(a), Ext::Fin(b)) => Ext::Fin(a.clone() + b.clone()),
            _ => Ext::Inf,
        }
    }

    pub fn plus_scalar(&self, k: &T) -> Self {
        match self {
            Ext::Fin(a) => Ext::Fin(a.clone() + k.clone()),
            Ext::Inf => Ext::Inf,
        }
    }

    /// Negation; fails on `+inf` since `-inf` is not representable.
    pub fn checked_neg(&self) -> Result<Self> {
        match self {
            Ext::Fin(a) => Ok(Ext::Fin(-a.clone())),
            Ext::Inf => Err(WkamError::NegativeInfinity),
        }
    }

    pub fn eq_tol(&self, other: &Self, tol: Tol) -> bool {
        match (self, other) {
            (Ext::Fin(a), Ext::Fin(b)) => tol.eq(a, b),
            (Ext::Inf, Ext::Inf) => true,
            _ => false,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Ext::Fin(v) => v.to_json(),
            Ext::Inf => serde_json::Value::String("inf".into()),
        }
    }
}

impl<T: Scalar> PartialOrd for Ext<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Ext::Fin(a), Ext::Fin(b)) => a.partial_cmp(b),
            (Ext::Fin(_), Ext::Inf) => Some(Ordering::Less),
            (Ext::Inf, Ext::Fin(_)) => Some(Ordering::Greater),
            (Ext::Inf, Ext::Inf) => Some(Ordering::Equal),
        }
    }
}

impl<T: Scalar> fmt::Display for Ext<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ext::Fin(v) => write!(f, "{v}"),
            Ext::Inf => f.write_str("inf"),
        }
    }
}

impl<T: Scalar> From<T> for Ext<T> {
    fn from(v: T) -> Self {
        Ext::Fin(v)
    }
}

/// Min-plus semiring operations shared by the finite and extended kernels.
pub trait MinPlus: Clone + PartialOrd {
    fn tropical_mul(&self, other: &Self) -> Self;
}

impl MinPlus for f64 {
    fn tropical_mul(&self, other: &Self) -> Self {
        self + other
    }
}

impl MinPlus for Rational {
    fn tropical_mul(&self, other: &Self) -> Self {
        self + other
    }
}

impl<T: Scalar> MinPlus for Ext<T> {
    fn tropical_mul(&self, other: &Self) -> Self {
        self.plus(other)
    }
}

/// Convenience constructor used throughout tests and generators.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rational_forms() {
        assert_eq!(parse_rational("-1/2").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("\u{2212}1/2").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("3").unwrap(), rat(3, 1));
        assert_eq!(parse_rational("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("-1.5e1").unwrap(), rat(-15, 1));
        assert_eq!(parse_rational("2.5e-1").unwrap(), rat(1, 4));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("NaN").is_err());
    }

    #[test]
    fn rational_display_round_trips() {
        let r = rat(-1, 2);
        assert_eq!(r.to_string(), "-1/2");
        assert_eq!(parse_rational(&r.to_string()).unwrap(), r);
        assert_eq!(rat(4, 2).to_string(), "2");
    }

    #[test]
    fn float_tolerance_is_hybrid() {
        let t = Tol(1e-9);
        assert!(t.eq(&1e12, &(1e12 + 1.0)));
        assert!(!t.eq(&1.0, &1.001));
        assert!(t.eq(&0.0, &1e-10));
        assert!(t.lt(&0.0, &1e-3));
        assert!(!t.lt(&0.0, &1e-12));
    }

    #[test]
    fn infinity_absorbs_and_orders_last() {
        let inf: Ext<Rational> = Ext::Inf;
        let two = Ext::Fin(rat(2, 1));
        assert_eq!(inf.plus(&two), Ext::Inf);
        assert!(two < inf);
        assert!(inf.checked_neg().is_err());
        assert_eq!(two.checked_neg().unwrap(), Ext::Fin(rat(-2, 1)));
    }

    #[test]
    fn float_parse_rejects_nan() {
        assert!(<f64 as Scalar>::parse_value("NaN").is_err());
        assert!(<f64 as Scalar>::parse_value("inf").is_err());
        assert_eq!(<f64 as Scalar>::parse_value("1/4").unwrap(), 0.25);
    }
}
