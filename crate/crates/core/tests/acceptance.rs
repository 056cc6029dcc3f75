//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero if any fail.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use noether_core::harness::{run_suite, Bounds, Suite, VerificationReport};
use noether_core::enumerate;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn summarize(reports: &[VerificationReport], extra: Option<String>) -> Outcome {
    let failed: Vec<&VerificationReport> = reports.iter().filter(|r| !r.pass).collect();
    let mut detail = format!("{} checks, {} failed", reports.len(), failed.len());
    if let Some(e) = extra {
        detail.push_str(&format!("; {e}"));
    }
    for r in failed.iter().take(3) {
        detail.push_str(&format!(
            "\n      {} {}: {}",
            r.check,
            r.input,
            r.witness.as_deref().unwrap_or("-")
        ));
    }
    if failed.len() > 3 {
        detail.push_str(&format!("\n      ... {} more", failed.len() - 3));
    }
    Outcome { pass: failed.is_empty() && !reports.is_empty(), detail }
}

fn suite(s: Suite, max_genus: usize, max_n: usize) -> Vec<VerificationReport> {
    let bounds = Bounds { max_genus, max_n, min_multiplicity: 1 };
    run_suite(s, &bounds).expect("suite runs")
}

fn with_limit(limit: Duration, started: Instant, mut o: Outcome) -> Outcome {
    let took = started.elapsed();
    if took > limit {
        o.pass = false;
        o.detail.push_str(&format!("; took {took:.1?}, limit {limit:?}"));
    }
    o
}

fn dualizing_oracle() -> Outcome {
    let t = Instant::now();
    let reports = suite(Suite::Eq4Oracle, 8, 1);
    let count = enumerate(8, 1).len();
    let mut o = summarize(&reports, Some(format!("{count} semigroups")));
    o.pass &= count == 156;
    with_limit(Duration::from_secs(10), t, o)
}

fn single_singularity() -> Outcome {
    let t = Instant::now();
    let o = summarize(&suite(Suite::NoetherSingle, 8, 4), None);
    with_limit(Duration::from_secs(120), t, o)
}

fn hyperelliptic_necessity() -> Outcome {
    summarize(&suite(Suite::HyperellipticNegative, 5, 2), None)
}

fn local_combinatorics() -> Outcome {
    let t = Instant::now();
    let o = summarize(&suite(Suite::LocalLemma, 10, 4), None);
    with_limit(Duration::from_secs(30), t, o)
}

fn blowup_claims() -> Outcome {
    let t = Instant::now();
    let o = summarize(&suite(Suite::Blowup, 10, 1), None);
    with_limit(Duration::from_secs(30), t, o)
}

fn dimension_formulas() -> Outcome {
    let reports: Vec<_> = suite(Suite::Dims, 6, 3)
        .into_iter()
        .filter(|r| r.check != "riemann-roch")
        .collect();
    summarize(&reports, None)
}

fn resolution_checks(check: &str) -> Vec<VerificationReport> {
    suite(Suite::Resolution, 0, 3)
        .into_iter()
        .filter(|r| r.check.as_str() == check)
        .collect()
}

fn resolution_quotient() -> Outcome {
    summarize(&resolution_checks("resolution-quotient"), None)
}

fn hyperelliptic_resolution() -> Outcome {
    let mut reports = resolution_checks("hyperelliptic-resolution");
    reports.extend(resolution_checks("max-noether"));
    summarize(&reports, None)
}

fn determinism() -> Outcome {
    let render = || -> String {
        [Suite::Blowup, Suite::Dims, Suite::Resolution]
            .into_iter()
            .flat_map(|s| suite(s, 4, 3))
            .map(|r| r.to_json_line() + "\n")
            .collect()
    };
    let (a, b) = (render(), render());
    Outcome {
        pass: a == b && !a.is_empty(),
        detail: format!("{} bytes per run", a.len()),
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("dualizing values match the residue-pairing oracle, g <= 8", dualizing_oracle),
        ("surjectivity for one singularity of multiplicity >= 3, g <= 8, n = 2..4", single_singularity),
        ("hyperelliptic <2,2k+1> fails with gap g - 2, k = 3..5", hyperelliptic_necessity),
        ("local chain combinatorics, non-symmetric g <= 10, n <= 4", local_combinatorics),
        ("blowup claims, non-symmetric g <= 10", blowup_claims),
        ("h0(omega^n) = (2n - 1)(g - 1) on the model corpus, n = 2, 3", dimension_formulas),
        ("resolving one point keeps the quotient surjective, n = 2, 3", resolution_quotient),
        ("hyperelliptic resolution spanned by products, n = 2, 3", hyperelliptic_resolution),
        ("repeated corpus runs are byte-identical", determinism),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let o = run();
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {} {verdict}: {name} ({}, {:.2?})", i + 1, o.detail, started.elapsed());
        if !o.pass {
            failures += 1;
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
