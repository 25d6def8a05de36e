//! Number backends.
//!
//! Everything in the crate is generic over [`Scalar`], which is implemented
//! by [`Rational`] (exact, arbitrary precision) and `f64` (IEEE double).
//! There is no mixed-backend arithmetic: converting a rational to a float
//! goes through [`Scalar::to_f64`] and is lossy, and there is no conversion
//! in the other direction.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use dashu_int::ops::Abs;
use dashu_int::{IBig, Sign, UBig};
use dashu_ratio::RBig;

use crate::error::{Error, Result};

/// Which number backend a computation runs on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    Rational,
    Float,
}

impl Backend {
    pub fn as_str(self) -> &'static str {
        match self {
            Backend::Rational => "rational",
            Backend::Float => "float",
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Arithmetic contract shared by the rational and float backends.
///
/// `+`, `-`, `*` and negation go through the std operator traits; division
/// is [`Scalar::checked_div`] so that the rational backend can report
/// division by an exact zero. The float backend follows plain IEEE
/// semantics and never errors on division.
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    const BACKEND: Backend;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(value: i64) -> Self;

    /// Exact zero test (`== 0.0` on floats).
    fn is_zero(&self) -> bool;
    fn abs(&self) -> Self;

    fn checked_div(&self, rhs: &Self) -> Result<Self>;

    fn to_f64(&self) -> f64;

    /// Borrow the exact value, if this is the rational backend.
    fn as_rational(&self) -> Option<&Rational> {
        None
    }

    /// Textual form used in CSV output and on the command line.
    fn to_text(&self) -> String;
    fn parse_text(text: &str) -> Result<Self>;

    /// Whether `value` counts as a zero denominator given the magnitudes of
    /// the terms it was summed from. Exact backend: `value == 0`.
    fn vanishes(value: &Self, terms: &[Self]) -> bool;

    fn is_exact() -> bool {
        Self::BACKEND == Backend::Rational
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// `self^exponent` by binary exponentiation.
    fn pow_int(&self, exponent: i64) -> Result<Self> {
        if exponent < 0 {
            if self.is_zero() {
                return Err(Error::DivisionByZero { context: "pow_int" });
            }
            let positive = self.pow_u64(exponent.unsigned_abs());
            return Self::one().checked_div(&positive);
        }
        Ok(self.pow_u64(exponent as u64))
    }

    fn pow_u64(&self, mut exponent: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exponent > 0 {
            if exponent & 1 == 1 {
                acc = acc * base.clone();
            }
            exponent >>= 1;
            if exponent > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    /// One step of the recurrence, `x_n x_lag / (x_window (a + x_n x_lag))`,
    /// or `None` when the denominator [vanishes](Scalar::vanishes).
    fn recurrence_step(a: &Self, x_n: &Self, x_lag: &Self, x_window: &Self) -> Option<Self> {
        let pair = x_n.clone() * x_lag.clone();
        let denominator = x_window.clone() * (a.clone() + pair.clone());
        let terms = [a.clone() * x_window.clone(), pair.clone() * x_window.clone()];
        if Self::vanishes(&denominator, &terms) {
            return None;
        }
        pair.checked_div(&denominator).ok()
    }
}

/// Exact rational number, always in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(RBig);

impl Rational {
    pub fn from_integer(value: i64) -> Self {
        Rational(RBig::from(value))
    }

    /// `numer / denom`, reduced.
    pub fn ratio(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::DivisionByZero {
                context: "Rational::ratio",
            });
        }
        Ok(Rational(RBig::from_parts_signed(
            IBig::from(numer),
            IBig::from(denom),
        )))
    }

    pub fn from_big(value: RBig) -> Self {
        Rational(value)
    }

    pub fn inner(&self) -> &RBig {
        &self.0
    }

    pub fn numer(&self) -> &IBig {
        self.0.numerator()
    }

    pub fn denom(&self) -> &UBig {
        self.0.denominator()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_int()
    }

    pub fn is_positive(&self) -> bool {
        !self.0.is_zero() && self.0.sign() == Sign::Positive
    }

    pub fn is_negative(&self) -> bool {
        self.0.sign() == Sign::Negative
    }

    /// The integer value, if this is an integer that fits in `i64`.
    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            i64::try_from(self.numer()).ok()
        } else {
            None
        }
    }

    pub fn recip(&self) -> Result<Self> {
        if self.0.is_zero() {
            return Err(Error::DivisionByZero {
                context: "Rational::recip",
            });
        }
        Ok(Rational(RBig::ONE / &self.0))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denominator().is_one() {
            write!(f, "{}", self.0.numerator())
        } else {
            write!(f, "{}/{}", self.0.numerator(), self.0.denominator())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_rational(s)
    }
}

fn parse_error(input: &str, reason: &str) -> Error {
    Error::Parse {
        input: input.to_string(),
        reason: reason.to_string(),
    }
}

fn parse_rational(input: &str) -> Result<Rational> {
    let text = input.trim();
    if text.is_empty() {
        return Err(parse_error(input, "empty"));
    }
    if let Some((numer, denom)) = text.split_once('/') {
        let numer = parse_integer(numer.trim()).ok_or_else(|| parse_error(input, "bad numerator"))?;
        let denom = parse_integer(denom.trim()).ok_or_else(|| parse_error(input, "bad denominator"))?;
        if denom.is_zero() {
            return Err(parse_error(input, "zero denominator"));
        }
        return Ok(Rational(RBig::from_parts_signed(numer, denom)));
    }
    parse_decimal(text).ok_or_else(|| parse_error(input, "expected p/q, an integer or a decimal literal"))
}

fn parse_integer(text: &str) -> Option<IBig> {
    let digits = text.strip_prefix(['+', '-']).unwrap_or(text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    text.strip_prefix('+').unwrap_or(text).parse().ok()
}

/// Decimal literal with optional sign, fraction and exponent, converted
/// exactly: "0.5" -> 1/2, "-1.25e-1" -> -1/8.
fn parse_decimal(text: &str) -> Option<Rational> {
    let (negative, unsigned) = match text.as_bytes().first()? {
        b'-' => (true, &text[1..]),
        b'+' => (false, &text[1..]),
        _ => (false, text),
    };
    let (mantissa, exponent) = match unsigned.find(['e', 'E']) {
        Some(pos) => {
            let exp_text = &unsigned[pos + 1..];
            let exp_digits = exp_text.strip_prefix(['+', '-']).unwrap_or(exp_text);
            if exp_digits.is_empty() || !exp_digits.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            (&unsigned[..pos], exp_text.parse::<i32>().ok()?)
        }
        None => (unsigned, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part
        .bytes()
        .chain(frac_part.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let digits: IBig = format!("{int_part}{frac_part}").parse().ok()?;
    let scale = exponent.checked_sub(i32::try_from(frac_part.len()).ok()?)?;
    let ten = UBig::from(10u8);
    let value = if scale >= 0 {
        RBig::from(digits * IBig::from(ten.pow(scale as usize)))
    } else {
        RBig::from_parts(digits, ten.pow(scale.unsigned_abs() as usize))
    };
    Some(Rational(if negative { -value } else { value }))
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        Rational(self.0 + rhs.0)
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        Rational(self.0 - rhs.0)
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        Rational(self.0 * rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Scalar for Rational {
    const BACKEND: Backend = Backend::Rational;

    fn zero() -> Self {
        Rational(RBig::ZERO)
    }

    fn one() -> Self {
        Rational(RBig::ONE)
    }

    fn from_i64(value: i64) -> Self {
        Rational::from_integer(value)
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn abs(&self) -> Self {
        Rational(self.0.clone().abs())
    }

    fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.0.is_zero() {
            return Err(Error::DivisionByZero { context: "div" });
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    fn to_f64(&self) -> f64 {
        // Correctly rounded even when numerator and denominator overflow f64
        // individually.
        self.0.to_f64().value()
    }

    fn as_rational(&self) -> Option<&Rational> {
        Some(self)
    }

    fn to_text(&self) -> String {
        self.to_string()
    }

    fn parse_text(text: &str) -> Result<Self> {
        parse_rational(text)
    }

    /// Same value as the default, normalized once: with `a = alpha/beta`,
    /// `x_n x_lag = N/M` and `x_window = c/d` (all unreduced),
    /// `x_{n+1} = N beta d / (c (alpha M + beta N))`.
    fn recurrence_step(a: &Self, x_n: &Self, x_lag: &Self, x_window: &Self) -> Option<Self> {
        let n = x_n.numer() * x_lag.numer();
        let m = IBig::from(x_n.denom() * x_lag.denom());
        let beta = IBig::from(a.denom().clone());
        let kernel = a.numer() * &m + &beta * &n;
        let denom = x_window.numer() * kernel;
        if denom.is_zero() {
            return None;
        }
        let numer = n * beta * IBig::from(x_window.denom().clone());
        Some(Rational(RBig::from_parts_signed(numer, denom)))
    }

    fn vanishes(value: &Self, _terms: &[Self]) -> bool {
        value.is_zero()
    }
}

/// Relative cutoff used by the float backend to call a denominator zero.
pub const FLOAT_SINGULAR_REL_TOL: f64 = 1e-12;

impl Scalar for f64 {
    const BACKEND: Backend = Backend::Float;

    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn from_i64(value: i64) -> Self {
        value as f64
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self / rhs)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    /// Shortest round-trip decimal; exponent notation outside 1e-5..1e16.
    fn to_text(&self) -> String {
        let text = format!("{self:?}");
        match text.strip_suffix(".0") {
            Some(integral) => integral.to_string(),
            None => text,
        }
    }

    /// Accepts anything `f64::from_str` does, plus `p/q` (rounded once).
    fn parse_text(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        let value = if trimmed.contains('/') {
            parse_rational(trimmed)?.to_f64()
        } else {
            trimmed
                .parse::<f64>()
                .map_err(|e| parse_error(text, &e.to_string()))?
        };
        if !value.is_finite() {
            return Err(parse_error(text, "not a finite number"));
        }
        Ok(value)
    }

    fn vanishes(value: &Self, terms: &[Self]) -> bool {
        let scale = terms
            .iter()
            .map(|t| f64::abs(*t))
            .fold(f64::MIN_POSITIVE, f64::max);
        f64::abs(*value) < FLOAT_SINGULAR_REL_TOL * scale
    }
}

/// Total order helper for scalars that are known not to be NaN.
pub(crate) fn cmp_scalar<T: Scalar>(lhs: &T, rhs: &T) -> Ordering {
    lhs.partial_cmp(rhs).unwrap_or(Ordering::Equal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(text: &str) -> Rational {
        text.parse().unwrap()
    }

    #[test]
    fn exact_division() {
        let third = Rational::one().checked_div(&Rational::from_integer(3)).unwrap();
        assert_eq!(third, q("1/3"));
        assert_eq!(third.to_string(), "1/3");
    }

    #[test]
    fn products_are_normalized() {
        let product = q("-4/3") * q("3/2");
        assert_eq!(product.to_string(), "-2");
        assert!(product.denom().is_one());
        assert_eq!(q("2/3") + q("1/3"), Rational::one());
    }

    #[test]
    fn division_by_exact_zero() {
        let err = Rational::one().checked_div(&Rational::zero()).unwrap_err();
        assert!(matches!(err, Error::DivisionByZero { .. }));
        assert!(1.0f64.checked_div(&0.0).unwrap().is_infinite());
    }

    #[test]
    fn integer_powers() {
        assert_eq!(Rational::from_integer(2).pow_int(3).unwrap(), q("8"));
        assert_eq!(q("1/2").pow_int(2).unwrap(), q("1/4"));
        assert_eq!(q("7/5").pow_int(0).unwrap(), Rational::one());
        assert_eq!(q("2/3").pow_int(-2).unwrap(), q("9/4"));
        assert!(matches!(
            Rational::zero().pow_int(-1),
            Err(Error::DivisionByZero { .. })
        ));
        assert_eq!(Rational::zero().pow_int(0).unwrap(), Rational::one());
    }

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(q("0.5"), q("1/2"));
        assert_eq!(q("-1.25e-1"), q("-1/8"));
        assert_eq!(q(".75"), q("3/4"));
        assert_eq!(q("6/-4"), q("-3/2"));
        assert_eq!(q("+12"), Rational::from_integer(12));
        assert_eq!(q("2E3"), Rational::from_integer(2000));
        for bad in ["", "1/0", "abc", "1.2.3", "--1", "1e", "/2", "1/ 2x", "."] {
            assert!(bad.parse::<Rational>().is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn float_text_format() {
        assert_eq!(1.0f64.to_text(), "1");
        assert_eq!(0.1f64.to_text(), "0.1");
        assert_eq!(1e-7f64.to_text(), "1e-7");
        assert_eq!((-2.5f64).to_text(), "-2.5");
        assert_eq!(f64::parse_text("1/3").unwrap(), 1.0 / 3.0);
        assert!(f64::parse_text("inf").is_err());
        assert!(f64::parse_text("NaN").is_err());
    }

    #[test]
    fn float_vanishing_is_relative() {
        assert!(f64::vanishes(&1e-20, &[1.0, 1.0]));
        assert!(!f64::vanishes(&1e-20, &[1e-15, 1e-15]));
        assert!(f64::vanishes(&0.0, &[0.0]));
        assert!(!f64::vanishes(&1e-300, &[1e-300]));
    }

    fn rational() -> impl Strategy<Value = Rational> {
        (-10_000i64..10_000, 1i64..10_000).prop_map(|(n, d)| Rational::ratio(n, d).unwrap())
    }

    proptest! {
        #[test]
        fn text_round_trip(x in rational()) {
            prop_assert_eq!(Rational::parse_text(&x.to_text()).unwrap(), x);
        }

        #[test]
        fn float_text_round_trip(x in any::<f64>().prop_filter("finite", |v| v.is_finite())) {
            prop_assert_eq!(f64::parse_text(&x.to_text()).unwrap(), x);
        }

        #[test]
        fn field_axioms(a in rational(), b in rational(), c in rational()) {
            prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
            prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
            prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c);
            if !b.is_zero() {
                prop_assert_eq!(a.checked_div(&b).unwrap() * b, a);
            }
        }

        #[test]
        fn power_law(a in rational(), m in -6i64..8, n in -6i64..8) {
            prop_assume!(!a.is_zero());
            let lhs = a.pow_int(m + n).unwrap();
            let rhs = a.pow_int(m).unwrap() * a.pow_int(n).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn fused_step_matches_generic(a in rational(), x in rational(), lag in rational(), w in rational()) {
            prop_assume!(!a.is_zero());
            let pair = x.clone() * lag.clone();
            let denominator = w.clone() * (a.clone() + pair.clone());
            let expected = pair.checked_div(&denominator).ok();
            prop_assert_eq!(Rational::recurrence_step(&a, &x, &lag, &w), expected);
        }

        #[test]
        fn always_lowest_terms(a in rational(), b in rational()) {
            let value = a * b;
            let g = dashu_int::ops::Gcd::gcd(value.numer(), value.denom());
            prop_assert!(g.is_one());
            prop_assert!(!value.denom().is_zero());
        }
    }
}
