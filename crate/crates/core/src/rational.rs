//! Exact rationals and values of the form `a*pi + b`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An exact rational number, always kept in lowest terms with a positive
/// denominator.
///
/// Renders as `p/q`, or just `p` when the denominator is one.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    /// Panics if `den` is zero.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        Rational(BigRational::new(num.into(), den.into()))
    }

    /// `1 / 2^k`.
    pub fn inverse_power_of_two(k: usize) -> Self {
        Rational(BigRational::new(BigInt::one(), BigInt::one() << k))
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

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// The integer value, if the denominator is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.to_integer())
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

/// Error returned when a `p/q` string does not parse.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal {0:?}")]
pub struct ParseRationalError(String);

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseRationalError(s.to_string());
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        Ok(Rational::new(num, den))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((self.0).$method(rhs.0))
            }
        }

        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }

        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl AddAssign for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        self.0 += rhs.0;
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

/// A closed-form real number `pi_coefficient * pi + constant`.
///
/// Equality is componentwise, which is sound because pi is irrational.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct ExactValue {
    pub pi_coefficient: Rational,
    pub constant: Rational,
}

impl ExactValue {
    pub fn zero() -> Self {
        ExactValue::default()
    }

    pub fn new(pi_coefficient: Rational, constant: Rational) -> Self {
        ExactValue {
            pi_coefficient,
            constant,
        }
    }

    pub fn pi_multiple(pi_coefficient: Rational) -> Self {
        ExactValue::new(pi_coefficient, Rational::zero())
    }

    pub fn rational(constant: Rational) -> Self {
        ExactValue::new(Rational::zero(), constant)
    }

    pub fn is_zero(&self) -> bool {
        self.pi_coefficient.is_zero() && self.constant.is_zero()
    }

    pub fn scale(&self, k: &Rational) -> Self {
        ExactValue::new(&self.pi_coefficient * k, &self.constant * k)
    }

    pub fn to_f64(&self) -> f64 {
        self.pi_coefficient.to_f64() * std::f64::consts::PI + self.constant.to_f64()
    }
}

impl Add for ExactValue {
    type Output = ExactValue;
    fn add(self, rhs: ExactValue) -> ExactValue {
        ExactValue::new(
            self.pi_coefficient + rhs.pi_coefficient,
            self.constant + rhs.constant,
        )
    }
}

impl Sub for ExactValue {
    type Output = ExactValue;
    fn sub(self, rhs: ExactValue) -> ExactValue {
        ExactValue::new(
            self.pi_coefficient - rhs.pi_coefficient,
            self.constant - rhs.constant,
        )
    }
}

impl AddAssign<&ExactValue> for ExactValue {
    fn add_assign(&mut self, rhs: &ExactValue) {
        self.pi_coefficient += &rhs.pi_coefficient;
        self.constant += &rhs.constant;
    }
}

impl Neg for ExactValue {
    type Output = ExactValue;
    fn neg(self) -> ExactValue {
        ExactValue::new(-self.pi_coefficient, -self.constant)
    }
}

/// Renders as `a*pi + b`, dropping zero components; the zero value is `0`.
impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.pi_coefficient.is_zero(), self.constant.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}*pi", self.pi_coefficient),
            (true, false) => write!(f, "{}", self.constant),
            (false, false) => {
                if self.constant.numer().is_negative() {
                    write!(f, "{}*pi - {}", self.pi_coefficient, self.constant.abs())
                } else {
                    write!(f, "{}*pi + {}", self.pi_coefficient, self.constant)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn lowest_terms_positive_denominator() {
        let x = r(6, -8);
        assert_eq!(x.numer(), &BigInt::from(-3));
        assert_eq!(x.denom(), &BigInt::from(4));
        assert_eq!(x.to_string(), "-3/4");
        assert_eq!(r(4, 2).to_string(), "2");
        assert_eq!(Rational::zero().to_string(), "0");
    }

    #[test]
    fn parse_display_round_trip() {
        for s in [
            "0",
            "1",
            "-7",
            "1/2",
            "-3/8",
            "123456789012345678901234567891/7",
        ] {
            let x: Rational = s.parse().unwrap();
            assert_eq!(x.to_string(), s);
        }
        assert_eq!("2/4".parse::<Rational>().unwrap(), r(1, 2));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
    }

    #[test]
    fn inverse_powers_of_two_are_exact_beyond_64_bits() {
        let tiny = Rational::inverse_power_of_two(200);
        let back = &tiny * &Rational::from_integer(BigInt::one() << 200usize);
        assert_eq!(back, Rational::one());
    }

    #[test]
    fn exact_value_rendering() {
        assert_eq!(ExactValue::zero().to_string(), "0");
        assert_eq!(ExactValue::pi_multiple(r(1, 4)).to_string(), "1/4*pi");
        assert_eq!(ExactValue::pi_multiple(r(2, 1)).to_string(), "2*pi");
        assert_eq!(ExactValue::rational(r(2, 1)).to_string(), "2");
        assert_eq!(
            ExactValue::new(r(1, 4), r(2, 3)).to_string(),
            "1/4*pi + 2/3"
        );
        assert_eq!(
            ExactValue::new(r(-1, 4), r(-2, 3)).to_string(),
            "-1/4*pi - 2/3"
        );
    }

    #[test]
    fn exact_value_float() {
        let v = ExactValue::new(r(1, 4), r(1, 2));
        assert!((v.to_f64() - (std::f64::consts::FRAC_PI_4 + 0.5)).abs() <= f64::EPSILON);
    }

    fn rational() -> impl Strategy<Value = Rational> {
        (any::<i64>(), 1i64..=i64::MAX).prop_map(|(n, d)| r(n, d))
    }

    proptest! {
        #[test]
        fn add_sub_and_mul_div_round_trip(a in rational(), b in rational()) {
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            if !b.is_zero() {
                prop_assert_eq!(&(&a * &b) / &b, a);
            }
        }

        #[test]
        fn exact_value_addition_is_componentwise(
            a in rational(), b in rational(), c in rational(), d in rational(), k in rational()
        ) {
            let x = ExactValue::new(a, b);
            let y = ExactValue::new(c, d);
            prop_assert_eq!(x.clone() + y.clone(), y.clone() + x.clone());
            let lhs = (x.clone() + y.clone()).scale(&k);
            let rhs = x.scale(&k) + y.scale(&k);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
