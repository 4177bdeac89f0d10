//! Wall-clock comparison of the counting engines over a size grid.

use std::hint::black_box;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::counting::{brute_force_count, count_via_expansion, dp_count};
use crate::error::Result;
use crate::instance::Instance;
use crate::limits::Limits;

pub const ENGINES: [&str; 3] = ["brute", "dp", "integral"];

#[derive(Clone, Debug)]
pub struct BenchOptions {
    pub max_n: usize,
    pub repetitions: usize,
    /// Coefficients are drawn from `1..=max_abs`.
    pub max_abs: i64,
    pub seed: u64,
    pub limits: Limits,
}

impl Default for BenchOptions {
    fn default() -> Self {
        BenchOptions {
            max_n: 20,
            repetitions: 3,
            max_abs: 10,
            seed: 0,
            limits: Limits::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub n: usize,
    pub s: u128,
    pub engine: String,
    pub mean_ns: u128,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Skipped {
    pub n: usize,
    pub engine: String,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    pub skipped: Vec<Skipped>,
}

/// The instance timed at size `n`: positive coefficients and a reachable
/// target.
pub fn grid_instance(rng: &mut impl Rng, n: usize, max_abs: i64) -> Instance {
    let coeffs: Vec<i64> = (0..n)
        .map(|_| rng.random_range(1..=max_abs.max(1)))
        .collect();
    let target = coeffs
        .iter()
        .map(|&b| if rng.random_bool(0.5) { b } else { -b })
        .sum();
    Instance::new(target, coeffs)
}

/// Times every engine for `n = 1..=max_n`. Engines that refuse an input (for
/// example brute force past its cap) are listed under `skipped`.
pub fn run(options: &BenchOptions) -> BenchReport {
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let reps = options.repetitions.max(1);
    let mut report = BenchReport::default();
    for n in 1..=options.max_n {
        let instance = grid_instance(&mut rng, n, options.max_abs);
        for engine in ENGINES {
            match time_engine(engine, &instance, &options.limits, reps) {
                Ok(mean_ns) => report.rows.push(BenchRow {
                    n,
                    s: instance.weight(),
                    engine: engine.to_string(),
                    mean_ns,
                }),
                Err(e) => report.skipped.push(Skipped {
                    n,
                    engine: engine.to_string(),
                    reason: e.to_string(),
                }),
            }
        }
    }
    report
}

fn time_engine(engine: &str, instance: &Instance, limits: &Limits, reps: usize) -> Result<u128> {
    let mut total = 0u128;
    for _ in 0..reps {
        let start = Instant::now();
        let count = match engine {
            "brute" => brute_force_count(black_box(instance), limits)?,
            "dp" => dp_count(black_box(instance))?,
            _ => count_via_expansion(black_box(instance), limits)?,
        };
        total += start.elapsed().as_nanos();
        black_box(count);
    }
    Ok(total / reps as u128)
}
