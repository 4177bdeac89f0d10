//! Composite Gauss-Legendre quadrature for sine/cosine products.
//!
//! The integrand is band-limited by `sum |bi|`, so the panel count is chosen
//! up front from that frequency and the interval length.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::ProductSpec;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub panels_per_unit_frequency: usize,
    pub nodes_per_panel: usize,
    pub absolute_tolerance: f64,
    /// Largest allowed `max_frequency * (upper - lower)`.
    pub oscillation_cap: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            panels_per_unit_frequency: 8,
            nodes_per_panel: 16,
            absolute_tolerance: 1e-9,
            oscillation_cap: 1e6,
        }
    }
}

impl QuadratureConfig {
    fn validate(&self) -> Result<()> {
        if self.panels_per_unit_frequency == 0 {
            return Err(Error::range("panels_per_unit_frequency", 0, "[1, inf)"));
        }
        if self.nodes_per_panel == 0 {
            return Err(Error::range("nodes_per_panel", 0, "[1, inf)"));
        }
        if self.absolute_tolerance.is_nan() || self.absolute_tolerance <= 0.0 {
            return Err(Error::range(
                "absolute_tolerance",
                self.absolute_tolerance,
                "(0, inf)",
            ));
        }
        if self.oscillation_cap.is_nan() || self.oscillation_cap <= 0.0 {
            return Err(Error::range(
                "oscillation_cap",
                self.oscillation_cap,
                "(0, inf)",
            ));
        }
        Ok(())
    }

    /// `max(16, ppuf * max_frequency * length / pi)`, rounded up.
    pub fn panel_count(&self, max_frequency: f64, length: f64) -> usize {
        let scaled = self.panels_per_unit_frequency as f64 * max_frequency * length / PI;
        (scaled.ceil() as usize).max(16)
    }
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`, by Newton iteration on the
/// Legendre polynomial from Chebyshev initial guesses.
pub fn gauss_legendre(order: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; order];
    let mut weights = vec![0.0; order];
    let n = order as f64;
    for i in 0..order.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // p1 = P_n(x), p0 = P_(n-1)(x).
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=order {
                let k = k as f64;
                let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() <= 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[order - 1 - i] = x;
        weights[i] = w;
        weights[order - 1 - i] = w;
    }
    (nodes, weights)
}

/// Numerical integral of the product over `[lower, upper]`.
///
/// Deterministic for a fixed config: panels may be evaluated in parallel but
/// are summed in order.
pub fn integrate_product(
    spec: &ProductSpec,
    lower: f64,
    upper: f64,
    config: &QuadratureConfig,
) -> Result<f64> {
    config.validate()?;
    if !lower.is_finite() || !upper.is_finite() || lower > upper {
        return Err(Error::range(
            "bounds",
            format!("[{lower}, {upper}]"),
            "lower <= upper",
        ));
    }
    let max_frequency = spec.max_frequency() as f64;
    let length = upper - lower;
    let oscillation = max_frequency * length;
    if oscillation > config.oscillation_cap {
        return Err(Error::resource(
            "oscillation max_frequency * length",
            oscillation.ceil() as u128,
            config.oscillation_cap as u128,
        ));
    }
    if length == 0.0 {
        return Ok(0.0);
    }

    let panels = config.panel_count(max_frequency, length);
    let (nodes, weights) = gauss_legendre(config.nodes_per_panel);
    let h = length / panels as f64;
    let per_panel: Vec<f64> = (0..panels)
        .into_par_iter()
        .map(|j| {
            let a = lower + j as f64 * h;
            let mid = a + 0.5 * h;
            let half = 0.5 * h;
            nodes
                .iter()
                .zip(&weights)
                .map(|(&t, &w)| w * spec.evaluate(mid + half * t))
                .sum::<f64>()
                * half
        })
        .collect();
    Ok(per_panel.iter().sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Instance;

    fn spec(t: i64, c: &[i64], m: i64) -> ProductSpec {
        ProductSpec::new(Instance::new(t, c.to_vec()), m).unwrap()
    }

    #[test]
    fn rule_integrates_polynomials_exactly() {
        for order in [1, 2, 3, 5, 16, 24] {
            let (x, w) = gauss_legendre(order);
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-13, "order {order}");
            for deg in 0..2 * order {
                let got: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg as i32)).sum();
                let want = if deg % 2 == 1 {
                    0.0
                } else {
                    2.0 / (deg as f64 + 1.0)
                };
                assert!((got - want).abs() < 1e-12, "order {order} degree {deg}");
            }
        }
    }

    #[test]
    fn examples() {
        let c = QuadratureConfig::default();
        let got = integrate_product(&spec(0, &[], -1), 0.0, PI, &c).unwrap();
        assert!((got - PI).abs() < 1e-9);
        let got = integrate_product(&spec(0, &[1, 2, 3], -1), 0.0, PI, &c).unwrap();
        assert!((got - 0.25 * PI).abs() < 1e-9);
        let got = integrate_product(&spec(2, &[1, 2, 3], 1), -PI, PI, &c).unwrap();
        assert!((got - 0.25 * PI).abs() < 1e-9);
    }

    #[test]
    fn errors() {
        let c = QuadratureConfig::default();
        assert!(matches!(
            integrate_product(&spec(0, &[1], 0), 1.0, 0.0, &c),
            Err(Error::Range { .. })
        ));
        assert!(matches!(
            integrate_product(&spec(1000, &[1000], 0), 0.0, 1000.0, &c),
            Err(Error::ResourceLimit { .. })
        ));
        let bad = QuadratureConfig {
            nodes_per_panel: 0,
            ..c
        };
        assert!(integrate_product(&spec(0, &[1], 0), 0.0, 1.0, &bad).is_err());
    }

    #[test]
    fn additivity_and_zero_integrand() {
        let c = QuadratureConfig::default();
        let s = spec(3, &[1, -2, 5], 1);
        let whole = integrate_product(&s, -1.0, 2.5, &c).unwrap();
        let left = integrate_product(&s, -1.0, 0.4, &c).unwrap();
        let right = integrate_product(&s, 0.4, 2.5, &c).unwrap();
        assert!((whole - left - right).abs() <= 2.0 * c.absolute_tolerance);

        let zero = spec(3, &[0, 2], 1);
        assert!(integrate_product(&zero, -2.0, 7.0, &c).unwrap().abs() <= c.absolute_tolerance);
    }

    #[test]
    fn deterministic() {
        let c = QuadratureConfig::default();
        let s = spec(7, &[3, 1, 4, 1, 5], 2);
        let a = integrate_product(&s, -3.0, 11.0, &c).unwrap();
        let b = integrate_product(&s, -3.0, 11.0, &c).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
    }
}
