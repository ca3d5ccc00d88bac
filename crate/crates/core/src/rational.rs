//! Exact rational numbers over arbitrary-precision integers.
//!
//! [`Rational`] wraps [`num_rational::BigRational`], which reduces to lowest
//! terms with a positive denominator after every operation, so two values are
//! equal exactly when their numerators and denominators are equal.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Result, UrnError};

/// Canonical exact fraction. Serializes as the string `"num/den"`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

/// Builds the reduced fraction `num/den`.
pub fn rat(num: i64, den: i64) -> Result<Rational> {
    Rational::new(num, den)
}

impl Rational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(UrnError::domain("zero denominator"));
        }
        Ok(Self(BigRational::new(num.into(), den)))
    }

    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    pub fn one() -> Self {
        Self(BigRational::one())
    }

    pub fn integer(value: impl Into<BigInt>) -> Self {
        Self(BigRational::from_integer(value.into()))
    }

    /// `num/den` for non-negative machine integers; `den` must be non-zero.
    pub(crate) fn ratio(num: u64, den: u64) -> Self {
        debug_assert!(den != 0);
        Self(BigRational::new(num.into(), den.into()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Rational> {
        if rhs.is_zero() {
            return Err(UrnError::domain("division by zero"));
        }
        Ok(Self(&self.0 / &rhs.0))
    }

    pub fn recip(&self) -> Result<Rational> {
        Self::one().checked_div(self)
    }

    /// Nearest `f64`; exact values stay authoritative.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Decimal rendering rounded half away from zero to `digits` significant digits.
    ///
    /// The rounding is done on the exact value, never through `f64`.
    pub fn to_significant(&self, digits: usize) -> String {
        assert!(digits > 0, "need at least one significant digit");
        if self.is_zero() {
            return "0".to_string();
        }
        let negative = self.is_negative();
        let num = self.numer().magnitude().clone();
        let den = self.denom().magnitude().clone();

        // Decimal exponent e such that 10^e <= |self| < 10^(e+1).
        let mut exp = num.to_string().len() as i64 - den.to_string().len() as i64;
        if scaled_cmp(&num, &den, exp) == std::cmp::Ordering::Less {
            exp -= 1;
        }

        // Shift so the integer part carries exactly `digits` digits, then round.
        let shift = digits as i64 - 1 - exp;
        let (mut n, mut d) = (num, den);
        if shift >= 0 {
            n *= pow10(shift as u32);
        } else {
            d *= pow10((-shift) as u32);
        }
        let (q, r) = n.div_rem(&d);
        let mut mantissa = if r * 2u32 >= d { q + 1u32 } else { q };
        let mut shift = shift;
        if mantissa.to_string().len() > digits {
            // Rounded up to the next power of ten.
            mantissa /= 10u32;
            shift -= 1;
        }

        let digits_str = mantissa.to_string();
        let body = place_decimal_point(&digits_str, shift);
        if negative {
            format!("-{body}")
        } else {
            body
        }
    }
}

fn pow10(exp: u32) -> BigUint {
    BigUint::from(10u32).pow(exp)
}

/// Compares `num/den` against `10^exp`.
fn scaled_cmp(num: &BigUint, den: &BigUint, exp: i64) -> std::cmp::Ordering {
    if exp >= 0 {
        num.cmp(&(den * pow10(exp as u32)))
    } else {
        (num * pow10((-exp) as u32)).cmp(den)
    }
}

/// Renders `digits * 10^(-shift)` in plain decimal notation, trimming trailing zeros.
fn place_decimal_point(digits: &str, shift: i64) -> String {
    let mut out = if shift <= 0 {
        let mut s = digits.to_string();
        s.extend(std::iter::repeat_n('0', (-shift) as usize));
        return s;
    } else if (shift as usize) >= digits.len() {
        let zeros = shift as usize - digits.len();
        format!("0.{}{}", "0".repeat(zeros), digits)
    } else {
        let split = digits.len() - shift as usize;
        format!("{}.{}", &digits[..split], &digits[split..])
    };
    while out.ends_with('0') {
        out.pop();
    }
    if out.ends_with('.') {
        out.pop();
    }
    out
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = UrnError;

    /// Accepts `"p/q"` or a bare integer `"p"`.
    fn from_str(s: &str) -> Result<Self> {
        let parse = |t: &str| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|e| UrnError::domain(format!("invalid fraction {s:?}: {e}")))
        };
        match s.split_once('/') {
            Some((n, d)) => Rational::new(parse(n)?, parse(d)?),
            None => Ok(Rational::integer(parse(s)?)),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<u64> for Rational {
    fn from(v: u64) -> Self {
        Self::integer(v)
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Self::integer(v)
    }
}

impl From<BigInt> for Rational {
    fn from(v: BigInt) -> Self {
        Self::integer(v)
    }
}

impl From<BigUint> for Rational {
    fn from(v: BigUint) -> Self {
        Self::integer(BigInt::from_biguint(Sign::Plus, v))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl<'a> $trait<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
        impl<'a, 'b> $trait<&'b Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'b Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
// Panics on a zero divisor, like the integer types; use `checked_div` otherwise.
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}
