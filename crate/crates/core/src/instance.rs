//! Target-sum instances and the sine/cosine product specs built on them.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A target `b0` together with the coefficient list `b1..bn`.
///
/// Zero and negative entries are allowed everywhere.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Instance {
    pub target: i64,
    pub coeffs: Vec<i64>,
}

impl Instance {
    pub fn new(target: i64, coeffs: impl Into<Vec<i64>>) -> Self {
        Instance {
            target,
            coeffs: coeffs.into(),
        }
    }

    /// Number of coefficients, excluding the target.
    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    /// Sum of `|bi|` over the coefficients; the target is not included.
    pub fn weight(&self) -> u128 {
        self.coeffs.iter().map(|b| b.unsigned_abs() as u128).sum()
    }

    /// All `n + 1` entries, target first.
    pub fn entries(&self) -> impl Iterator<Item = i64> + '_ {
        std::iter::once(self.target).chain(self.coeffs.iter().copied())
    }

    /// Exchanges the target with the `k`th coefficient (1-based).
    ///
    /// The number of sign assignments is unchanged by this exchange.
    pub fn swap(&self, k: usize) -> Result<Instance> {
        if k == 0 || k > self.n() {
            return Err(Error::range("k", k, format!("[1, {}]", self.n())));
        }
        let mut out = self.clone();
        std::mem::swap(&mut out.target, &mut out.coeffs[k - 1]);
        Ok(out)
    }

    /// The same coefficients aiming at `-b0`.
    pub fn negated_target(&self) -> Instance {
        Instance::new(-self.target, self.coeffs.clone())
    }
}

/// Canonical text form `b0; b1,b2,...,bn`. An empty list renders as `b0; `.
impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}; ", self.target)?;
        for (i, b) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl FromStr for Instance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let Some(semi) = s.find(';') else {
            return Err(Error::Parse {
                position: s.len(),
                message: "expected ';' separating the target from the coefficient list".into(),
            });
        };
        let target = parse_int(&s[..semi], 0)?;
        let rest = &s[semi + 1..];
        let offset = semi + 1;
        let mut coeffs = Vec::new();
        if !rest.trim().is_empty() {
            let mut start = 0;
            for piece in rest.split(',') {
                coeffs.push(parse_int(piece, offset + start)?);
                start += piece.len() + 1;
            }
        }
        Ok(Instance { target, coeffs })
    }
}

fn parse_int(token: &str, base: usize) -> Result<i64> {
    let lead = token.len() - token.trim_start().len();
    let trimmed = token.trim();
    if trimmed.is_empty() {
        return Err(Error::Parse {
            position: base + lead,
            message: "expected an integer".into(),
        });
    }
    trimmed.parse().map_err(|_| Error::Parse {
        position: base + lead,
        message: format!("{trimmed:?} is not a 64-bit integer"),
    })
}

/// An instance whose factors `0..=m` are sines and `m+1..=n` are cosines:
/// `sin(b0 x)...sin(bm x) cos(b(m+1) x)...cos(bn x)`.
///
/// `m = -1` is the pure cosine product.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProductSpec {
    instance: Instance,
    m: i64,
}

impl ProductSpec {
    pub fn new(instance: Instance, m: i64) -> Result<Self> {
        check_cutoff(&instance, m)?;
        Ok(ProductSpec { instance, m })
    }

    pub fn cosines(instance: Instance) -> Self {
        ProductSpec { instance, m: -1 }
    }

    pub fn instance(&self) -> &Instance {
        &self.instance
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    /// Whether factor `i` (0-based over `b0..bn`) is a sine.
    pub fn is_sine(&self, i: usize) -> bool {
        (i as i64) <= self.m
    }

    /// Evaluates the product directly in floating point.
    pub fn evaluate(&self, x: f64) -> f64 {
        self.instance
            .entries()
            .enumerate()
            .map(|(i, b)| {
                let arg = b as f64 * x;
                if self.is_sine(i) {
                    arg.sin()
                } else {
                    arg.cos()
                }
            })
            .product()
    }

    /// Largest frequency the expanded product can contain: `sum |bi|` over
    /// all `n + 1` entries.
    pub fn max_frequency(&self) -> u128 {
        self.instance.weight() + self.instance.target.unsigned_abs() as u128
    }
}

pub(crate) fn check_cutoff(instance: &Instance, m: i64) -> Result<()> {
    let n = instance.n() as i64;
    if m < -1 || m > n {
        return Err(Error::range("m", m, format!("[-1, {n}]")));
    }
    Ok(())
}

/// A choice of signs `e1..en`, each `+1` or `-1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignVector(Vec<i8>);

impl SignVector {
    /// Bit `i` of `mask` set means `e(i+1) = +1`.
    pub fn from_mask(mask: u64, n: usize) -> Self {
        SignVector(
            (0..n)
                .map(|i| if mask >> i & 1 == 1 { 1 } else { -1 })
                .collect(),
        )
    }

    pub fn signs(&self) -> &[i8] {
        &self.0
    }

    /// `sum ei * bi`.
    pub fn applied_sum(&self, instance: &Instance) -> i128 {
        self.0
            .iter()
            .zip(&instance.coeffs)
            .map(|(&e, &b)| e as i128 * b as i128)
            .sum()
    }

    /// Number of `+1` entries among the first `len` signs.
    pub fn positives_in_prefix(&self, len: usize) -> usize {
        self.0[..len].iter().filter(|&&e| e > 0).count()
    }

    /// `e1 * ... * e_len`.
    pub fn prefix_product(&self, len: usize) -> i8 {
        self.0[..len].iter().product()
    }
}
