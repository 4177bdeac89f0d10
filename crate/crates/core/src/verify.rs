//! Seeded randomized cross-checks between the engines.
//!
//! Every property compares two computations that do not share an
//! implementation path, and the first failing case is kept as a
//! counterexample.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::counting::{
    brute_force_count, brute_force_filtered, count_via_expansion, dp_count, dp_parity_count, Count,
    ParityQuery, PrefixParity,
};
use crate::error::Result;
use crate::instance::{Instance, ProductSpec, SignVector};
use crate::integral::{closed_form_integral, count_by_integration, exact_integral, PiBounds};
use crate::limits::Limits;
use crate::rational::ExactValue;
use crate::werner::{expand_by_enumeration_with, expand_mixed_product, EnumerationFault};

/// Interval choices (p, q) with p + q even used by the closed-form checks.
pub const EVEN_SPAN_BOUNDS: [(i64, i64); 4] = [(1, 1), (2, 0), (2, 2), (3, 1)];

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    pub trials: usize,
    pub max_n: usize,
    pub max_abs: i64,
    /// Random points per trial for the pointwise check.
    pub points: usize,
    pub limits: Limits,
    #[doc(hidden)]
    pub fault: EnumerationFault,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 0,
            trials: 200,
            max_n: 10,
            max_abs: 9,
            points: 8,
            limits: Limits::default(),
            fault: EnumerationFault::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyOutcome {
    pub name: String,
    pub checked: usize,
    pub passed: bool,
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub properties: Vec<PropertyOutcome>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.properties.iter().all(|p| p.passed)
    }
}

/// Draws `n` uniformly from `0..=max_n` and coefficients from
/// `[-max_abs, max_abs]`. Half of the targets are the signed sum of a random
/// sign vector, so that nonzero counts are common; the rest are uniform over
/// `[-weight - 1, weight + 1]`.
pub fn random_instance(rng: &mut impl Rng, max_n: usize, max_abs: i64) -> Instance {
    let n = rng.random_range(0..=max_n);
    let coeffs: Vec<i64> = (0..n)
        .map(|_| rng.random_range(-max_abs..=max_abs))
        .collect();
    let weight = coeffs.iter().map(|b| b.abs()).sum::<i64>();
    let target = if rng.random_bool(0.5) {
        coeffs
            .iter()
            .map(|&b| if rng.random_bool(0.5) { b } else { -b })
            .sum()
    } else {
        rng.random_range(-weight - 1..=weight + 1)
    };
    Instance::new(target, coeffs)
}

/// A random instance with a sine cutoff drawn from `[min_m, n]`.
pub fn random_spec(rng: &mut impl Rng, max_n: usize, max_abs: i64, min_m: i64) -> ProductSpec {
    loop {
        let instance = random_instance(rng, max_n, max_abs);
        let n = instance.n() as i64;
        if n < min_m {
            continue;
        }
        let m = rng.random_range(min_m..=n);
        return ProductSpec::new(instance, m).expect("cutoff drawn in range");
    }
}

struct Tracker {
    outcome: PropertyOutcome,
}

impl Tracker {
    fn new(name: &str) -> Self {
        Tracker {
            outcome: PropertyOutcome {
                name: name.to_string(),
                checked: 0,
                passed: true,
                counterexample: None,
            },
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.outcome.checked += 1;
        if !ok && self.outcome.passed {
            self.outcome.passed = false;
            self.outcome.counterexample = Some(describe());
        }
    }
}

/// Runs the whole battery. Errors only if an engine refuses an input, which
/// the size bounds should prevent.
pub fn run(options: &VerifyOptions) -> Result<VerifyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let limits = &options.limits;
    let max_n = options.max_n.min(limits.enumeration_cap);

    let mut agreement = Tracker::new("engine-agreement");
    let mut swap = Tracker::new("swap-invariance");
    let mut negation = Tracker::new("negation-symmetry");
    let mut bound = Tracker::new("count-bound");
    let mut parity_engines = Tracker::new("parity-engines");
    let mut parity_split = Tracker::new("parity-split");
    let mut sign_product = Tracker::new("odd-prefix-sign-product");
    let mut paths = Tracker::new("expansion-paths");
    let mut pointwise = Tracker::new("pointwise-soundness");
    let mut closed = Tracker::new("closed-form-integral");
    let mut vanishing = Tracker::new("even-m-vanishing");
    let mut stated = Tracker::new("pi-less-form-differs-by-pi");

    for _ in 0..options.trials {
        let x = random_instance(&mut rng, max_n, options.max_abs);
        let n = x.n();

        let brute = brute_force_count(&x, limits)?;
        let dp = dp_count(&x)?;
        let via_expansion = count_via_expansion(&x, limits)?;
        let by_integration = count_by_integration(&x, limits)?;
        agreement.check(
            brute == dp && dp == via_expansion && via_expansion == by_integration,
            || {
                format!(
                    "{x}: brute={brute} dp={dp} expansion={via_expansion} integration={by_integration}"
                )
            },
        );
        bound.check(dp <= Count::all_signs(n), || format!("{x}: {dp} > 2^{n}"));

        for k in 1..=n {
            let swapped = x.swap(k)?;
            let c = dp_count(&swapped)?;
            swap.check(c == dp, || format!("{x}, k={k}: {c} != {dp}"));
        }

        let neg = dp_count(&x.negated_target())?;
        negation.check(neg == dp, || format!("{x}: {neg} != {dp}"));

        let m = rng.random_range(-1..=n as i64);
        let query = ParityQuery::new(x.clone(), m)?;
        let even_brute = brute_force_filtered(&x, query.prefix_len(), PrefixParity::Even, limits)?;
        let even_dp = dp_parity_count(&query)?;
        parity_engines.check(even_brute == even_dp, || {
            format!("{x}, m={m}: brute={even_brute} dp={even_dp}")
        });
        let odd = brute_force_filtered(&x, query.prefix_len(), PrefixParity::Odd, limits)?;
        let total = Count::from(even_brute.value() + odd.value());
        parity_split.check(total == brute, || {
            format!("{x}, m={m}: even={even_brute} + odd={odd} != {brute}")
        });
        if m >= 1 && m % 2 == 1 {
            let negative_products = (0..1u64 << n)
                .map(|mask| SignVector::from_mask(mask, n))
                .filter(|e| e.applied_sum(&x) == x.target as i128)
                .filter(|e| e.prefix_product(m as usize) == -1)
                .count() as u64;
            sign_product.check(even_dp == negative_products, || {
                format!("{x}, m={m}: even-prefix={even_dp}, product -1 count={negative_products}")
            });
        }

        let spec = ProductSpec::new(x.clone(), m)?;
        let folded = expand_mixed_product(&spec, limits)?;
        let enumerated = expand_by_enumeration_with(&spec, limits, options.fault)?;
        paths.check(folded == enumerated, || {
            format!("{x}, m={m}: folded and enumerated expansions differ")
        });

        let tol = 1e-12 * (n as f64 + 1.0);
        for _ in 0..options.points {
            let t = rng.random_range(-std::f64::consts::PI..=std::f64::consts::PI);
            let err = (folded.evaluate(t) - spec.evaluate(t)).abs();
            pointwise.check(err <= tol, || format!("{x}, m={m}, x={t}: error {err:e}"));
        }

        if m >= 0 {
            let (p, q) = EVEN_SPAN_BOUNDS[rng.random_range(0..EVEN_SPAN_BOUNDS.len())];
            let bounds = PiBounds::new(p, q)?;
            let exact = exact_integral(&folded, bounds);
            let formula = closed_form_integral(&spec, bounds)?;
            closed.check(formula.value == exact, || {
                format!(
                    "{x}, m={m}, p={p}, q={q}: closed form {} != {exact}",
                    formula.value
                )
            });
            if !exact.is_zero() {
                // Read without the factor pi, the count expression is a
                // rational number; the integral is that number times pi.
                let pi_less = ExactValue::rational(formula.without_pi.clone());
                let scaled = ExactValue::pi_multiple(formula.without_pi.clone());
                stated.check(pi_less != exact && scaled == exact, || {
                    format!(
                        "{x}, m={m}, p={p}, q={q}: pi-less {} vs {exact}",
                        formula.without_pi
                    )
                });
            }
            if m % 2 == 0 {
                vanishing.check(exact.is_zero(), || {
                    format!("{x}, m={m}, p={p}, q={q}: integral {exact}")
                });
            }
        }
    }

    Ok(VerifyReport {
        properties: [
            agreement,
            swap,
            negation,
            bound,
            parity_engines,
            parity_split,
            sign_product,
            paths,
            pointwise,
            closed,
            stated,
            vanishing,
        ]
        .into_iter()
        .map(|t| t.outcome)
        .collect(),
    })
}
