//! Scalar fields shared by the evaluators: `f64`, exact `BigRational`, and a
//! configurable-precision binary float.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use dashu_float::ops::{Abs, SquareRoot};
use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::IBig;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

/// Environment variable overriding the default mantissa width.
pub const PRECISION_ENV: &str = "QGS_PRECISION_BITS";

/// Mantissa width, in bits, of high-precision evaluations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Precision(pub usize);

impl Precision {
    pub const DEFAULT: Precision = Precision(128);

    /// Reads `QGS_PRECISION_BITS`, falling back to the 128-bit default when the
    /// variable is unset or unparsable.
    pub fn from_env() -> Precision {
        std::env::var(PRECISION_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<usize>().ok())
            .filter(|&b| b >= 53)
            .map(Precision)
            .unwrap_or(Precision::DEFAULT)
    }

    pub fn bits(self) -> usize {
        self.0
    }

    pub fn plus(self, extra: usize) -> Precision {
        Precision(self.0 + extra)
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision::DEFAULT
    }
}

/// The arithmetic the Chebyshev recurrences need. Constants are created
/// "like" an existing value so that precision is carried along.
pub trait Field:
    Clone
    + PartialOrd
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn int_like(&self, v: i64) -> Self;
    fn to_f64(&self) -> f64;
    fn is_zero(&self) -> bool;
}

impl Field for f64 {
    fn int_like(&self, v: i64) -> Self {
        v as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
}

impl Field for BigRational {
    fn int_like(&self, v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

type Raw = FBig<HalfEven, 2>;

/// Binary floating point number with a fixed mantissa width.
#[derive(Clone, PartialEq, Eq)]
pub struct HpFloat {
    value: Raw,
    precision: usize,
}

fn bigint_to_ibig(v: &BigInt) -> IBig {
    IBig::from_str(&v.to_string()).expect("decimal integer round-trips")
}

impl HpFloat {
    fn wrap(value: Raw, precision: usize) -> Self {
        let value = value.with_precision(precision).value();
        HpFloat { value, precision }
    }

    pub fn from_i64(v: i64, prec: Precision) -> Self {
        Self::wrap(Raw::from(v), prec.bits())
    }

    /// Exact conversion of the binary double, then rounding to `prec`.
    pub fn from_f64(v: f64, prec: Precision) -> Self {
        let raw = Raw::try_from(v).expect("finite f64");
        Self::wrap(raw, prec.bits())
    }

    pub fn from_ratio(r: &BigRational, prec: Precision) -> Self {
        let p = prec.bits();
        let num = Raw::from(bigint_to_ibig(r.numer())).with_precision(p).value();
        let den = Raw::from(bigint_to_ibig(r.denom())).with_precision(p).value();
        Self::wrap(num / den, p)
    }

    pub fn precision(&self) -> Precision {
        Precision(self.precision)
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64().value()
    }

    pub fn sqrt(&self) -> Self {
        Self::wrap(self.value.sqrt(), self.precision)
    }

    pub fn ln(&self) -> Self {
        Self::wrap(self.value.ln(), self.precision)
    }

    pub fn exp(&self) -> Self {
        Self::wrap(self.value.exp(), self.precision)
    }

    pub fn abs(&self) -> Self {
        Self::wrap(self.value.clone().abs(), self.precision)
    }

    pub fn powi(&self, exp: i64) -> Self {
        Self::wrap(self.value.powi(IBig::from(exp)), self.precision)
    }

    pub fn recip(&self) -> Self {
        self.int_like(1) / self.clone()
    }

    pub fn is_negative(&self) -> bool {
        self.value < Raw::ZERO
    }

    /// Natural logarithm of `|self|` as a double; usable when the value itself
    /// is outside the `f64` range.
    pub fn ln_abs_f64(&self) -> f64 {
        if Field::is_zero(self) {
            return f64::NEG_INFINITY;
        }
        self.abs().ln().to_f64()
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }
}

impl fmt::Debug for HpFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HpFloat({:e} @{}b)", self.to_f64(), self.precision)
    }
}

impl fmt::Display for HpFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value.to_decimal().value())
    }
}

impl PartialOrd for HpFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.value.partial_cmp(&other.value)
    }
}

macro_rules! hp_binop {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr for HpFloat {
            type Output = HpFloat;
            fn $method(self, rhs: HpFloat) -> HpFloat {
                let p = self.precision.max(rhs.precision);
                HpFloat::wrap(self.value $op rhs.value, p)
            }
        }
        impl<'a> $tr<&'a HpFloat> for &'a HpFloat {
            type Output = HpFloat;
            fn $method(self, rhs: &'a HpFloat) -> HpFloat {
                let p = self.precision.max(rhs.precision);
                HpFloat::wrap(&self.value $op &rhs.value, p)
            }
        }
    };
}

hp_binop!(Add, add, +);
hp_binop!(Sub, sub, -);
hp_binop!(Mul, mul, *);
hp_binop!(Div, div, /);

impl Neg for HpFloat {
    type Output = HpFloat;
    fn neg(self) -> HpFloat {
        HpFloat {
            value: -self.value,
            precision: self.precision,
        }
    }
}

impl Field for HpFloat {
    fn int_like(&self, v: i64) -> Self {
        HpFloat::from_i64(v, Precision(self.precision))
    }
    fn to_f64(&self) -> f64 {
        HpFloat::to_f64(self)
    }
    fn is_zero(&self) -> bool {
        self.value == Raw::ZERO
    }
}

/// Parses a decimal (`0.25`, `2.5e-1`) or fraction (`1/4`) literal exactly.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).ok()?;
        let d = BigInt::from_str(d.trim()).ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut numer = BigInt::from_str(if all_digits.is_empty() { "0" } else { &all_digits }).ok()?;
    if negative {
        numer = -numer;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let r = if scale >= 0 {
        BigRational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    Some(r)
}

/// Compensated (Neumaier) summation of a sequence of doubles.
pub fn neumaier_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimal_and_fraction_literals() {
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(parse_rational("0.5"), Some(half.clone()));
        assert_eq!(parse_rational("1/2"), Some(half.clone()));
        assert_eq!(parse_rational("5e-1"), Some(half));
        assert_eq!(
            parse_rational("0.381966"),
            Some(BigRational::new(381966.into(), 1000000.into()))
        );
        assert_eq!(parse_rational("-2.5"), Some(BigRational::new((-5).into(), 2.into())));
        assert_eq!(parse_rational("abc"), None);
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("."), None);
    }

    #[test]
    fn hp_arithmetic_keeps_precision() {
        let p = Precision(256);
        let three = HpFloat::from_i64(3, p);
        let r = three.sqrt() * HpFloat::from_i64(3, p).sqrt();
        assert!((r.to_f64() - 3.0).abs() < 1e-15);
        assert_eq!(r.precision(), p);
        let x = HpFloat::from_ratio(&BigRational::new(1.into(), 3.into()), p);
        let back = x.clone() * x.int_like(3);
        assert!((back.to_f64() - 1.0).abs() < 1e-30);
    }

    #[test]
    fn hp_handles_values_beyond_double_range() {
        let q = HpFloat::from_f64(0.05, Precision(512));
        let tiny = q.powi(400);
        assert_eq!(tiny.to_f64(), 0.0);
        let expected = 400.0 * 0.05f64.ln();
        assert!((tiny.ln_abs_f64() - expected).abs() < 1e-9);
    }

    #[test]
    fn neumaier_recovers_cancelled_terms() {
        let s = neumaier_sum([1e16, 1.0, -1e16, 1.0]);
        assert_eq!(s, 2.0);
    }
}
