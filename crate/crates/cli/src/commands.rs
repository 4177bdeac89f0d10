use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::{json, Value};
use signsum::counting::{
    brute_force_count, brute_force_parity_count, count_via_expansion, dp_count, dp_parity_count,
};
use signsum::integral::{closed_form_integral, exact_integral};
use signsum::quadrature::integrate_product;
use signsum::werner::{expand_mixed_product, EnumerationFault};
use signsum::{
    bench, verify, Count, ExactValue, Instance, Limits, ParityQuery, PiBounds, ProductSpec,
    QuadratureConfig,
};

use crate::config::FileConfig;
use crate::error::CliError;
use crate::output::{OutputEnvelope, Report};
use crate::{CountEngine, ExpandFormat, IntegrateEngine, ParityEngine};

/// Absolute agreement required between quadrature and the exact engines.
const QUADRATURE_AGREEMENT: f64 = 1e-8;

pub struct Settings {
    pub seed: u64,
    pub limits: Limits,
    pub quadrature: QuadratureConfig,
}

impl Settings {
    pub fn resolve(file: &FileConfig, seed: Option<u64>, enumeration_cap: Option<usize>) -> Self {
        let mut limits = Limits::default();
        if let Some(cap) = enumeration_cap.or(file.enumeration_cap) {
            limits.enumeration_cap = cap;
        }
        if let Some(cap) = file.term_cap {
            limits.term_cap = cap;
        }
        let mut quadrature = QuadratureConfig::default();
        if let Some(v) = file.panels_per_unit_frequency {
            quadrature.panels_per_unit_frequency = v;
        }
        if let Some(v) = file.nodes_per_panel {
            quadrature.nodes_per_panel = v;
        }
        if let Some(v) = file.absolute_tolerance {
            quadrature.absolute_tolerance = v;
        }
        if let Some(v) = file.oscillation_cap {
            quadrature.oscillation_cap = v;
        }
        Settings {
            seed: seed.or(file.seed).unwrap_or(0),
            limits,
            quadrature,
        }
    }
}

fn parse_instance(text: &str) -> Result<Instance, CliError> {
    text.parse::<Instance>()
        .map_err(|e| CliError::Parse(format!("instance {text:?}: {e}")))
}

fn verdict(all_equal: bool) -> &'static str {
    if all_equal {
        "match"
    } else {
        "mismatch"
    }
}

/// Runs each named engine, then reports either the single result or every
/// result plus a verdict.
fn engine_table(
    command: &str,
    instance: &Instance,
    engine_name: &str,
    results: Vec<(&'static str, Count)>,
) -> Report {
    let input = instance.to_string();
    if let [(_, count)] = results.as_slice() {
        let envelope = OutputEnvelope::new(
            command,
            input,
            engine_name,
            true,
            json!({ "count": count.to_string() }),
        );
        return Report::ok(envelope, count.to_string());
    }
    let agree = results.windows(2).all(|w| w[0].1 == w[1].1);
    let counts: BTreeMap<&str, String> = results
        .iter()
        .map(|(name, c)| (*name, c.to_string()))
        .collect();
    let mut text = String::new();
    for (name, c) in &results {
        let _ = writeln!(text, "{name:<10}{c}");
    }
    let _ = write!(text, "{:<10}{}", "verdict", verdict(agree));
    let envelope = OutputEnvelope::new(
        command,
        input.clone(),
        engine_name,
        true,
        json!({ "counts": counts, "verdict": verdict(agree) }),
    );
    Report {
        envelope,
        text,
        failure: (!agree).then(|| CliError::Mismatch(format!("engines disagree on {input}"))),
    }
}

pub fn count(s: &Settings, text: &str, engine: CountEngine) -> Result<Report, CliError> {
    let instance = parse_instance(text)?;
    let mut results = Vec::new();
    if matches!(engine, CountEngine::Brute | CountEngine::All) {
        results.push(("brute", brute_force_count(&instance, &s.limits)?));
    }
    if matches!(engine, CountEngine::Dp | CountEngine::All) {
        results.push(("dp", dp_count(&instance)?));
    }
    if matches!(engine, CountEngine::Integral | CountEngine::All) {
        results.push(("integral", count_via_expansion(&instance, &s.limits)?));
    }
    let name = match engine {
        CountEngine::Brute => "brute",
        CountEngine::Dp => "dp",
        CountEngine::Integral => "integral",
        CountEngine::All => "all",
    };
    Ok(engine_table("count", &instance, name, results))
}

pub fn parity_count(
    s: &Settings,
    text: &str,
    m: i64,
    engine: ParityEngine,
) -> Result<Report, CliError> {
    let instance = parse_instance(text)?;
    let query = ParityQuery::new(instance.clone(), m)?;
    let mut results = Vec::new();
    if matches!(engine, ParityEngine::Brute | ParityEngine::All) {
        results.push(("brute", brute_force_parity_count(&query, &s.limits)?));
    }
    if matches!(engine, ParityEngine::Dp | ParityEngine::All) {
        results.push(("dp", dp_parity_count(&query)?));
    }
    let name = match engine {
        ParityEngine::Brute => "brute",
        ParityEngine::Dp => "dp",
        ParityEngine::All => "all",
    };
    let mut report = engine_table("parity-count", &instance, name, results);
    report.envelope.input = format!("{instance} m={m}");
    Ok(report)
}

pub fn expand(s: &Settings, text: &str, m: i64, format: ExpandFormat) -> Result<Report, CliError> {
    let instance = parse_instance(text)?;
    let spec = ProductSpec::new(instance.clone(), m)?;
    let poly = expand_mixed_product(&spec, &s.limits)?;
    let input = format!("{instance} m={m}");
    let report = match format {
        ExpandFormat::Latex => {
            let latex = poly.to_latex();
            let env = OutputEnvelope::new(
                "expand",
                input,
                "fold",
                true,
                json!({ "format": "latex", "latex": latex }),
            );
            Report::ok(env, latex)
        }
        ExpandFormat::Json => {
            let terms = serde_json::to_value(&poly).expect("polynomial serializes");
            let text = serde_json::to_string(&poly).expect("polynomial serializes");
            let env = OutputEnvelope::new(
                "expand",
                input,
                "fold",
                true,
                json!({ "format": "json", "terms": terms }),
            );
            Report::ok(env, text)
        }
    };
    Ok(report)
}

fn exact_json(v: &ExactValue) -> Value {
    json!({
        "value": v.to_string(),
        "pi_coefficient": v.pi_coefficient.to_string(),
        "constant": v.constant.to_string(),
        "float": v.to_f64(),
    })
}

pub fn integrate(
    s: &Settings,
    text: &str,
    m: i64,
    p: i64,
    q: i64,
    engine: IntegrateEngine,
) -> Result<Report, CliError> {
    let instance = parse_instance(text)?;
    let spec = ProductSpec::new(instance.clone(), m)?;
    let bounds = PiBounds::new(p, q)?;
    let input = format!("{instance} m={m} p={p} q={q}");

    let exact = || -> Result<ExactValue, CliError> {
        let poly = expand_mixed_product(&spec, &s.limits)?;
        Ok(exact_integral(&poly, bounds))
    };
    let quadrature = || -> Result<f64, CliError> {
        Ok(integrate_product(
            &spec,
            bounds.lower(),
            bounds.upper(),
            &s.quadrature,
        )?)
    };

    match engine {
        IntegrateEngine::Exact => {
            let v = exact()?;
            let env = OutputEnvelope::new("integrate", input, "exact", true, exact_json(&v));
            Ok(Report::ok(env, format!("{v}  (~ {})", v.to_f64())))
        }
        IntegrateEngine::Quadrature => {
            let v = quadrature()?;
            let env = OutputEnvelope::new(
                "integrate",
                input,
                "quadrature",
                false,
                json!({ "float": v }),
            );
            Ok(Report::ok(env, format!("{v}")))
        }
        IntegrateEngine::ClosedForm => {
            let closed = closed_form_integral(&spec, bounds)?;
            let mut result = exact_json(&closed.value);
            extend_closed_form(&mut result, &closed);
            let env = OutputEnvelope::new("integrate", input, "closed-form", true, result);
            let text = format!(
                "{}  (~ {})\nwithout pi factor: {}",
                closed.value,
                closed.value.to_f64(),
                closed.without_pi
            );
            Ok(Report::ok(env, text))
        }
        IntegrateEngine::All => {
            let v = exact()?;
            let quad = quadrature()?;
            let quad_ok = (quad - v.to_f64()).abs() <= QUADRATURE_AGREEMENT;
            let mut engines = serde_json::Map::new();
            engines.insert("exact".into(), exact_json(&v));
            engines.insert("quadrature".into(), json!({ "float": quad }));
            let mut text = format!(
                "{:<12}{v}  (~ {})\n{:<12}{quad}\n",
                "exact",
                v.to_f64(),
                "quadrature"
            );
            let mut agree = quad_ok;
            match closed_form_integral(&spec, bounds) {
                Ok(closed) => {
                    agree &= closed.value == v;
                    let mut result = exact_json(&closed.value);
                    extend_closed_form(&mut result, &closed);
                    engines.insert("closed-form".into(), result);
                    let _ = writeln!(text, "{:<12}{}", "closed-form", closed.value);
                }
                Err(e) => {
                    engines.insert("closed-form".into(), json!({ "skipped": e.to_string() }));
                    let _ = writeln!(text, "{:<12}skipped: {e}", "closed-form");
                }
            }
            let _ = write!(text, "{:<12}{}", "verdict", verdict(agree));
            let mut result = exact_json(&v);
            result["engines"] = Value::Object(engines);
            result["verdict"] = json!(verdict(agree));
            let env = OutputEnvelope::new("integrate", input.clone(), "all", true, result);
            Ok(Report {
                envelope: env,
                text,
                failure: (!agree).then(|| {
                    CliError::Mismatch(format!("integration engines disagree on {input}"))
                }),
            })
        }
    }
}

fn extend_closed_form(result: &mut Value, closed: &signsum::ClosedForm) {
    result["pi_factor"] = json!("per proof");
    result["without_pi"] = json!(closed.without_pi.to_string());
    result["count"] = json!(closed.count.to_string());
    result["even_prefix_count"] = json!(closed.even_prefix_count.to_string());
}

pub fn verify(
    s: &Settings,
    file: &FileConfig,
    trials: Option<usize>,
    max_n: Option<usize>,
    max_abs: Option<i64>,
    inject_fault: bool,
) -> Result<Report, CliError> {
    let defaults = verify::VerifyOptions::default();
    let options = verify::VerifyOptions {
        seed: s.seed,
        trials: trials.or(file.verify_trials).unwrap_or(defaults.trials),
        max_n: max_n.or(file.verify_max_n).unwrap_or(defaults.max_n),
        max_abs: max_abs.or(file.verify_max_abs).unwrap_or(defaults.max_abs),
        limits: s.limits,
        fault: EnumerationFault {
            flip_odd_sign: inject_fault,
        },
        ..defaults
    };
    if options.trials == 0 {
        return Err(CliError::Precondition("--trials must be at least 1".into()));
    }
    let report = verify::run(&options)?;
    let mut text = String::new();
    for p in &report.properties {
        let status = if p.passed { "PASS" } else { "FAIL" };
        let _ = write!(text, "{status} {:<26} {} checks", p.name, p.checked);
        if let Some(cx) = &p.counterexample {
            let _ = write!(text, "\n     counterexample: {cx}");
        }
        text.push('\n');
    }
    let passed = report.all_passed();
    text.push_str(if passed {
        "all properties passed"
    } else {
        "some properties FAILED"
    });
    let input = format!(
        "seed={} trials={} max-n={} max-abs={}",
        options.seed, options.trials, options.max_n, options.max_abs
    );
    let result = json!({
        "passed": passed,
        "properties": serde_json::to_value(&report.properties).expect("report serializes"),
    });
    let env = OutputEnvelope::new("verify", input, "all", true, result);
    Ok(Report {
        envelope: env,
        text,
        failure: (!passed).then(|| CliError::Mismatch("property battery failed".into())),
    })
}

pub fn bench(
    s: &Settings,
    file: &FileConfig,
    max_n: Option<usize>,
    reps: Option<usize>,
    max_abs: Option<i64>,
) -> Report {
    let defaults = bench::BenchOptions::default();
    let options = bench::BenchOptions {
        max_n: max_n.or(file.bench_max_n).unwrap_or(defaults.max_n),
        repetitions: reps.or(file.bench_reps).unwrap_or(defaults.repetitions),
        max_abs: max_abs.or(file.bench_max_abs).unwrap_or(defaults.max_abs),
        seed: s.seed,
        limits: s.limits,
    };
    let report = bench::run(&options);
    let mut text = format!("{:>4} {:>8} {:<10} {:>14}\n", "n", "s", "engine", "mean_ns");
    for row in &report.rows {
        let _ = writeln!(
            text,
            "{:>4} {:>8} {:<10} {:>14}",
            row.n, row.s, row.engine, row.mean_ns
        );
    }
    for skip in &report.skipped {
        let _ = writeln!(
            text,
            "skipped n={} {}: {}",
            skip.n, skip.engine, skip.reason
        );
    }
    let _ = write!(text, "{} rows", report.rows.len());
    let input = format!(
        "max-n={} reps={} max-abs={} seed={}",
        options.max_n, options.repetitions, options.max_abs, options.seed
    );
    let env = OutputEnvelope::new(
        "bench",
        input,
        "all",
        false,
        serde_json::to_value(&report).expect("report serializes"),
    );
    Report::ok(env, text)
}
