//! Exact counting of sign assignments `±b1 ± ... ± bn = b0`.
//!
//! Three independent engines are provided:
//!
//! * [`brute_force_count`] enumerates all `2^n` sign vectors,
//! * [`dp_count`] runs the `O(n * weight)` dynamic program over achievable sums,
//! * [`count_via_expansion`] reads the constant term of the cosine-product
//!   expansion and scales it by `2^n`.
//!
//! The parity-restricted count (even number of `+` signs among `b1..bm`) has a
//! brute-force and a DP variant.

mod brute;
mod dp;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Result;
use crate::instance::{check_cutoff, Instance};
use crate::limits::Limits;
use crate::werner;

pub use brute::{brute_force_count, brute_force_filtered, brute_force_parity_count, PrefixParity};
pub use dp::{dp_count, dp_parity_count};

/// Exact number of sign vectors; never negative, never truncated.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Count(BigUint);

impl Count {
    pub fn zero() -> Self {
        Count(BigUint::zero())
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn into_inner(self) -> BigUint {
        self.0
    }

    pub fn to_bigint(&self) -> BigInt {
        BigInt::from(self.0.clone())
    }

    /// `2^n`, the number of sign vectors of length `n`.
    pub fn all_signs(n: usize) -> Self {
        Count(BigUint::one() << n)
    }
}

impl From<u64> for Count {
    fn from(v: u64) -> Self {
        Count(BigUint::from(v))
    }
}

impl From<BigUint> for Count {
    fn from(v: BigUint) -> Self {
        Count(v)
    }
}

impl PartialEq<u64> for Count {
    fn eq(&self, other: &u64) -> bool {
        self.0 == BigUint::from(*other)
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for Count {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Count {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map(Count).map_err(serde::de::Error::custom)
    }
}

/// An instance plus the prefix length `m` whose `+` signs must be even in
/// number. `m = -1` and `m = 0` both mean an empty prefix, so the condition
/// holds vacuously.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParityQuery {
    instance: Instance,
    m: i64,
}

impl ParityQuery {
    pub fn new(instance: Instance, m: i64) -> Result<Self> {
        check_cutoff(&instance, m)?;
        Ok(ParityQuery { instance, m })
    }

    pub fn instance(&self) -> &Instance {
        &self.instance
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    /// Number of leading coefficients under the parity constraint.
    pub fn prefix_len(&self) -> usize {
        self.m.max(0) as usize
    }
}

/// Counts solutions from the constant cosine coefficient `c0` of the
/// expansion of `cos(b0 x) cos(b1 x) ... cos(bn x)`: the count is `2^n * c0`.
pub fn count_via_expansion(instance: &Instance, limits: &Limits) -> Result<Count> {
    let poly = werner::expand_cos_product(instance, limits)?;
    let scaled =
        poly.constant_term() * &crate::Rational::from_integer(BigInt::one() << instance.n());
    let Some(int) = scaled.to_integer() else {
        panic!("2^n * c0 = {scaled} is not an integer for {instance}");
    };
    let Some(count) = int.to_biguint() else {
        panic!("2^n * c0 = {int} is negative for {instance}");
    };
    Ok(Count(count))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(t: i64, c: &[i64]) -> Instance {
        Instance::new(t, c.to_vec())
    }

    #[test]
    fn expansion_engine_examples() {
        let l = Limits::default();
        assert_eq!(count_via_expansion(&x(0, &[1, 2, 3]), &l).unwrap(), 2);
        assert_eq!(count_via_expansion(&x(9, &[1, 2, 3]), &l).unwrap(), 0);
        assert_eq!(count_via_expansion(&x(3, &[1, 1, 1, 1, 1]), &l).unwrap(), 5);
        assert_eq!(count_via_expansion(&x(0, &[]), &l).unwrap(), 1);
        assert_eq!(count_via_expansion(&x(4, &[]), &l).unwrap(), 0);
    }

    #[test]
    fn parity_query_range() {
        assert!(ParityQuery::new(x(0, &[1, 2, 3]), -1).is_ok());
        assert!(ParityQuery::new(x(0, &[1, 2, 3]), 3).is_ok());
        assert!(ParityQuery::new(x(0, &[1, 2, 3]), 4).is_err());
        assert!(ParityQuery::new(x(0, &[1, 2, 3]), -2).is_err());
    }

    #[test]
    fn count_serializes_as_decimal_string() {
        let c = Count::all_signs(100);
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(json, "\"1267650600228229401496703205376\"");
        assert_eq!(serde_json::from_str::<Count>(&json).unwrap(), c);
    }
}
