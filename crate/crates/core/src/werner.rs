//! Exact expansion of `sin(b0 x)...sin(bm x) cos(b(m+1) x)...cos(bn x)` into a
//! finite sum of `cos(kx)` and `sin(kx)` terms with rational coefficients.
//!
//! Two independent constructions are provided. [`expand_mixed_product`] folds
//! one factor at a time with the two-factor product-to-sum identities.
//! [`expand_by_enumeration`] sums the closed form over all sign vectors
//! `e in {+1,-1}^n`:
//!
//! ```text
//! (-1)^floor((m+1)/2) / 2^n * sum_e  (e1 * ... * em) * cos((b0 + e1 b1 + ... + en bn) x)   m odd
//! (-1)^floor((m+1)/2) / 2^n * sum_e  (e1 * ... * em) * sin((b0 + e1 b1 + ... + en bn) x)   m even
//! ```
//!
//! Both produce the canonical form, so they can be compared structurally.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{Instance, ProductSpec};
use crate::limits::Limits;
use crate::rational::Rational;

/// Cosine and sine coefficients at one frequency.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Coefficients {
    pub cos: Rational,
    pub sin: Rational,
}

impl Coefficients {
    fn is_zero(&self) -> bool {
        self.cos.is_zero() && self.sin.is_zero()
    }
}

/// `sum_k (ck cos(kx) + sk sin(kx))` over nonnegative integer frequencies `k`.
///
/// Canonical form: frequencies are nonnegative, the sine coefficient at
/// frequency zero is zero, and no stored term is entirely zero. Two
/// polynomials are equal as functions iff they are equal as values.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TrigPolynomial {
    terms: BTreeMap<u64, Coefficients>,
}

impl TrigPolynomial {
    pub fn zero() -> Self {
        TrigPolynomial::default()
    }

    pub fn one() -> Self {
        let mut p = TrigPolynomial::zero();
        p.add_cos(0, &Rational::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored frequencies.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending frequency.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &Coefficients)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn get(&self, freq: u64) -> Option<&Coefficients> {
        self.terms.get(&freq)
    }

    /// The cosine coefficient at frequency zero.
    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&0)
            .map(|c| c.cos.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn max_frequency(&self) -> Option<u64> {
        self.terms.keys().next_back().copied()
    }

    /// Sum of absolute values of all coefficients.
    pub fn coefficient_mass(&self) -> Rational {
        let mut total = Rational::zero();
        for c in self.terms.values() {
            total += c.cos.abs();
            total += c.sin.abs();
        }
        total
    }

    /// Adds `c * cos(freq x)` at a signed frequency.
    pub fn add_cos(&mut self, freq: i128, c: &Rational) {
        self.add_term(freq, c, &Rational::zero());
    }

    /// Adds `s * sin(freq x)` at a signed frequency.
    pub fn add_sin(&mut self, freq: i128, s: &Rational) {
        self.add_term(freq, &Rational::zero(), s);
    }

    /// Adds `c cos(freq x) + s sin(freq x)`, folding negative frequencies with
    /// `cos(-kx) = cos(kx)` and `sin(-kx) = -sin(kx)`.
    fn add_term(&mut self, freq: i128, c: &Rational, s: &Rational) {
        let k = u64::try_from(freq.unsigned_abs()).expect("frequency exceeds u64");
        let entry = self.terms.entry(k).or_default();
        entry.cos += c;
        if k != 0 {
            if freq < 0 {
                entry.sin += -s;
            } else {
                entry.sin += s;
            }
        }
        if entry.is_zero() {
            self.terms.remove(&k);
        }
    }

    /// `self * cos(b x)` or `self * sin(b x)`, via
    ///
    /// ```text
    /// cos a cos b = (cos(a-b) + cos(a+b)) / 2
    /// sin a cos b = (sin(a+b) + sin(a-b)) / 2
    /// cos a sin b = (sin(a+b) - sin(a-b)) / 2
    /// sin a sin b = (cos(a-b) - cos(a+b)) / 2
    /// ```
    fn times_factor(&self, b: i64, sine: bool, term_cap: usize) -> Result<TrigPolynomial> {
        let half = Rational::new(1, 2);
        let b = b as i128;
        let mut out = TrigPolynomial::zero();
        for (&k, coef) in &self.terms {
            let k = k as i128;
            let c = &coef.cos * &half;
            let s = &coef.sin * &half;
            if sine {
                out.add_sin(k + b, &c);
                out.add_sin(k - b, &-&c);
                out.add_cos(k - b, &s);
                out.add_cos(k + b, &-&s);
            } else {
                out.add_cos(k - b, &c);
                out.add_cos(k + b, &c);
                out.add_sin(k + b, &s);
                out.add_sin(k - b, &s);
            }
            check_terms(out.len(), term_cap)?;
        }
        Ok(out)
    }

    /// Evaluates `sum ck cos(kx) + sk sin(kx)` in floating point.
    pub fn evaluate(&self, x: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&k, c)| {
                let arg = k as f64 * x;
                c.cos.to_f64() * arg.cos() + c.sin.to_f64() * arg.sin()
            })
            .sum()
    }

    /// LaTeX rendering, ascending frequency, cosine before sine at equal
    /// frequency. The zero polynomial renders as `0`.
    pub fn to_latex(&self) -> String {
        let mut out = String::new();
        let mut first = true;
        for (&k, c) in &self.terms {
            for (coef, func) in [(&c.cos, "\\cos"), (&c.sin, "\\sin")] {
                if coef.is_zero() {
                    continue;
                }
                let negative = coef.numer().is_negative();
                if first {
                    if negative {
                        out.push('-');
                    }
                } else {
                    out.push_str(if negative { " - " } else { " + " });
                }
                first = false;
                let mag = coef.abs();
                if k == 0 {
                    out.push_str(&latex_rational(&mag));
                    continue;
                }
                if !mag.numer().is_one() || !mag.denom().is_one() {
                    out.push_str(&latex_rational(&mag));
                }
                let arg = if k == 1 {
                    "x".to_string()
                } else {
                    format!("{k}x")
                };
                let _ = write!(out, "{func}({arg})");
            }
        }
        if first {
            out.push('0');
        }
        out
    }

    /// Rows for the JSON form, sorted by frequency.
    pub fn to_rows(&self) -> Vec<TermRow> {
        self.terms
            .iter()
            .map(|(&freq, c)| TermRow {
                freq,
                cos: c.cos.clone(),
                sin: c.sin.clone(),
            })
            .collect()
    }

    /// Rebuilds a polynomial from JSON rows, re-canonicalizing.
    pub fn from_rows(rows: &[TermRow]) -> Self {
        let mut p = TrigPolynomial::zero();
        for row in rows {
            p.add_term(row.freq as i128, &row.cos, &row.sin);
        }
        p
    }
}

fn latex_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", r.numer(), r.denom())
    }
}

/// One term of the JSON form: `{"freq": k, "cos": "p/q", "sin": "p/q"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRow {
    pub freq: u64,
    pub cos: Rational,
    pub sin: Rational,
}

impl Serialize for TrigPolynomial {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TrigPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows = Vec::<TermRow>::deserialize(deserializer)?;
        Ok(TrigPolynomial::from_rows(&rows))
    }
}

fn check_terms(len: usize, cap: usize) -> Result<()> {
    if len > cap {
        return Err(Error::resource(
            "expansion term count",
            len as u128,
            cap as u128,
        ));
    }
    Ok(())
}

/// Expansion of `cos(b0 x) cos(b1 x) ... cos(bn x)`.
pub fn expand_cos_product(instance: &Instance, limits: &Limits) -> Result<TrigPolynomial> {
    fold_factors(&ProductSpec::cosines(instance.clone()), limits)
}

/// Expansion of the mixed sine/cosine product, built by multiplying in one
/// factor at a time starting from `b0`.
pub fn expand_mixed_product(spec: &ProductSpec, limits: &Limits) -> Result<TrigPolynomial> {
    fold_factors(spec, limits)
}

fn fold_factors(spec: &ProductSpec, limits: &Limits) -> Result<TrigPolynomial> {
    // 1 * cos(b0 x) and 1 * sin(b0 x) fold back to the factor itself.
    let mut poly = TrigPolynomial::one();
    for (i, b) in spec.instance().entries().enumerate() {
        poly = poly.times_factor(b, spec.is_sine(i), limits.term_cap)?;
        if poly.is_zero() {
            break;
        }
    }
    Ok(poly)
}

/// Knobs for [`expand_by_enumeration_with`].
#[doc(hidden)]
#[derive(Clone, Copy, Debug, Default)]
pub struct EnumerationFault {
    /// Flip the global sign for odd `m`. Only used to check that the
    /// cross-checks catch a wrong sign convention.
    pub flip_odd_sign: bool,
}

/// Expansion by direct summation over all `2^n` sign vectors.
pub fn expand_by_enumeration(spec: &ProductSpec, limits: &Limits) -> Result<TrigPolynomial> {
    expand_by_enumeration_with(spec, limits, EnumerationFault::default())
}

#[doc(hidden)]
pub fn expand_by_enumeration_with(
    spec: &ProductSpec,
    limits: &Limits,
    fault: EnumerationFault,
) -> Result<TrigPolynomial> {
    let instance = spec.instance();
    let n = instance.n();
    let cap = limits.enumeration_cap.min(63);
    if n > cap {
        return Err(Error::resource(
            "enumeration length n",
            n as u128,
            cap as u128,
        ));
    }
    let m = spec.m();
    let weighted_prefix = m.max(0) as usize;

    // Integer multiplicities per signed frequency, scaled once at the end.
    let mut weights: HashMap<i128, i64> = HashMap::new();
    for mask in 0..1u64 << n {
        let mut freq = instance.target as i128;
        let mut weight = 1i64;
        for (i, &b) in instance.coeffs.iter().enumerate() {
            let plus = mask >> i & 1 == 1;
            freq += if plus { b as i128 } else { -(b as i128) };
            if i < weighted_prefix && !plus {
                weight = -weight;
            }
        }
        *weights.entry(freq).or_insert(0) += weight;
    }

    let mut flips = (m + 1).div_euclid(2);
    if fault.flip_odd_sign && m.rem_euclid(2) == 1 {
        flips += 1;
    }
    let mut scale = Rational::inverse_power_of_two(n);
    if flips % 2 == 1 {
        scale = -scale;
    }
    let cosine_typed = m.rem_euclid(2) == 1;

    let mut freqs: Vec<_> = weights.into_iter().filter(|&(_, w)| w != 0).collect();
    freqs.sort_unstable();
    let mut poly = TrigPolynomial::zero();
    for (freq, w) in freqs {
        let c = &scale * &Rational::from_integer(BigInt::from(w));
        if cosine_typed {
            poly.add_cos(freq, &c);
        } else {
            poly.add_sin(freq, &c);
        }
        check_terms(poly.len(), limits.term_cap)?;
    }
    Ok(poly)
}
