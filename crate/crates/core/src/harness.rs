//! Verification suites over corpora of semigroups and curve models, emitting
//! one report per check in a canonical order.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::Serialize;
use serde_json::{json, Value};

use crate::blowup::{analyze, genus_drop, nearly_gorenstein_local_checks};
use crate::curve::{CurvePoint, CurveSpec, RationalCurveModel};
use crate::error::{Error, Result};
use crate::local_noether::{ChainStep, EpsilonCase, LocalContext};
use crate::semigroup::{enumerate, NumericalSemigroup};
use crate::valueset::{canonical_ideal, dualizing_values, ValueSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Eq4Oracle,
    LocalLemma,
    Blowup,
    NoetherSingle,
    NoetherMulti,
    Resolution,
    HyperellipticNegative,
    Dims,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Eq4Oracle,
        Suite::LocalLemma,
        Suite::Blowup,
        Suite::NoetherSingle,
        Suite::NoetherMulti,
        Suite::Resolution,
        Suite::HyperellipticNegative,
        Suite::Dims,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Eq4Oracle => "eq4-oracle",
            Suite::LocalLemma => "local-lemma",
            Suite::Blowup => "blowup",
            Suite::NoetherSingle => "noether-single",
            Suite::NoetherMulti => "noether-multi",
            Suite::Resolution => "resolution",
            Suite::HyperellipticNegative => "hyperelliptic-negative",
            Suite::Dims => "dims",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
                Error::Usage(format!("unknown suite {s:?}; expected one of {}", names.join(", ")))
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Genus bound for semigroup corpora, total genus bound for curve corpora.
    pub max_genus: usize,
    pub max_n: usize,
    pub min_multiplicity: i64,
}

impl Default for Bounds {
    fn default() -> Self {
        Self { max_genus: 6, max_n: 3, min_multiplicity: 1 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub check: String,
    pub input: Value,
    pub predicted: Value,
    pub oracle: Value,
    pub pass: bool,
    /// Concrete evidence for a failure, or for an expected failure.
    pub witness: Option<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}

pub fn all_pass(reports: &[VerificationReport]) -> bool {
    reports.iter().all(|r| r.pass)
}

struct Emitter {
    suite: Suite,
    reports: Vec<VerificationReport>,
    started: Instant,
}

impl Emitter {
    fn new(suite: Suite) -> Self {
        Self { suite, reports: Vec::new(), started: Instant::now() }
    }

    fn push(&mut self, check: &str, input: Value, predicted: Value, oracle: Value, pass: bool, witness: Option<String>) {
        let now = Instant::now();
        self.reports.push(VerificationReport {
            suite: self.suite.name().to_string(),
            check: check.to_string(),
            input,
            predicted,
            oracle,
            pass,
            witness,
            elapsed: now - self.started,
        });
        self.started = now;
    }

    /// Records a check whose predicted and oracle values must be equal.
    fn compare<T: Serialize + PartialEq + fmt::Debug>(&mut self, check: &str, input: Value, predicted: T, oracle: T) {
        let pass = predicted == oracle;
        let witness = (!pass).then(|| format!("predicted {predicted:?}, oracle {oracle:?}"));
        self.push(check, input, json!(predicted), json!(oracle), pass, witness);
    }
}

fn sg_input(s: &NumericalSemigroup) -> Value {
    json!({ "generators": s.generators() })
}

fn curve_input(c: &RationalCurveModel) -> Value {
    json!(CurveSpec::from_model(c))
}

pub fn run_suite(suite: Suite, bounds: &Bounds) -> Result<Vec<VerificationReport>> {
    let mut out = Emitter::new(suite);
    match suite {
        Suite::Eq4Oracle => eq4_oracle(&mut out, bounds),
        Suite::LocalLemma => local_lemma(&mut out, bounds)?,
        Suite::Blowup => blowup(&mut out, bounds)?,
        Suite::NoetherSingle => noether_single(&mut out, bounds)?,
        Suite::NoetherMulti => noether_multi(&mut out, bounds)?,
        Suite::Resolution => resolution(&mut out, bounds)?,
        Suite::HyperellipticNegative => hyperelliptic_negative(&mut out, bounds)?,
        Suite::Dims => dims(&mut out, bounds),
    }
    Ok(out.reports)
}

fn corpus(bounds: &Bounds) -> Vec<NumericalSemigroup> {
    enumerate(bounds.max_genus, bounds.min_multiplicity)
}

/// Number of numerical semigroups of genus `g`, by testing every candidate
/// gap set inside `[1, 2g - 1]` for closure of its complement.
pub fn brute_force_count(g: usize) -> usize {
    if g == 0 {
        return 1;
    }
    let width = 2 * g - 1;
    let mut count = 0;
    for mask in 0u64..(1u64 << width) {
        if mask.count_ones() as usize != g {
            continue;
        }
        let gap = |v: usize| v >= 1 && v <= width && mask >> (v - 1) & 1 == 1;
        let closed = (1..=width)
            .filter(|&a| !gap(a))
            .all(|a| (a..=width - a).filter(|&b| !gap(b)).all(|b| !gap(a + b)));
        if closed {
            count += 1;
        }
    }
    count
}

/// `{ e : s + e != -1 for every s in S }` on `[lo, hi]`. Only `s <= -lo - 1`
/// can pair with the window.
pub fn residue_pairing_values(s: &NumericalSemigroup, lo: i64, hi: i64) -> Vec<i64> {
    let elements: Vec<i64> = (0..=-lo - 1).filter(|&v| s.contains(v)).collect();
    (lo..=hi).filter(|e| elements.iter().all(|x| x + e != -1)).collect()
}

fn eq4_oracle(out: &mut Emitter, bounds: &Bounds) {
    let sgs = corpus(bounds);
    if bounds.min_multiplicity <= 1 {
        let predicted = sgs.len();
        let oracle: usize = (0..=bounds.max_genus).map(brute_force_count).sum();
        out.compare("semigroup-count", json!({ "max_genus": bounds.max_genus }), predicted, oracle);
    }
    for s in &sgs {
        let a = s.conductor();
        let (lo, hi) = (-2 * a - 2, 2 * a);
        let values = dualizing_values(s);
        let predicted: Vec<i64> = (lo..=hi).filter(|&e| values.contains(e)).collect();
        out.compare("dualizing-window", sg_input(s), predicted, residue_pairing_values(s, lo, hi));
    }
}

fn local_lemma(out: &mut Emitter, bounds: &Bounds) -> Result<()> {
    for s in corpus(bounds).iter().filter(|s| !s.is_symmetric()) {
        let ctx = LocalContext::new(s)?;
        if ctx.r < 1 {
            continue;
        }
        let input = sg_input(s);
        let (alpha, beta) = (ctx.alpha, ctx.beta);

        let q = ctx.q_decomposition();
        let witness = q.as_ref().err().map(|e| e.to_string());
        out.push("q-bounds", input.clone(), json!(true), json!(q.is_ok()), q.is_ok(), witness);

        let certs = ctx.build_certificates(2, EpsilonCase::Generic)?;
        let step_values = |step: ChainStep| -> Vec<i64> {
            let mut v: Vec<i64> = certs
                .iter()
                .filter(|c| c.step == step)
                .flat_map(|c| c.values())
                .collect();
            v.sort_unstable();
            v
        };
        out.compare("a1-values", input.clone(), (alpha..2 * alpha - beta).collect(), step_values(ChainStep::Conductor));
        if beta > 3 {
            let a2 = step_values(ChainStep::Square(EpsilonCase::Generic));
            out.compare("a2-size", input.clone(), (beta - 3) as usize, a2.len());
        }

        for n in 1..=bounds.max_n {
            let n_input = json!({ "generators": s.generators(), "n": n });
            let eps = EpsilonCase::Generic.epsilon(n);
            let coverage = ctx.verify_surjectivity(n, eps)?;
            out.compare("surjectivity", n_input.clone(), Vec::<i64>::new(), coverage.uncovered);
            let violations: Vec<String> = ctx
                .build_certificates(n, EpsilonCase::Generic)?
                .iter()
                .flat_map(|c| c.violations(&ctx.sections, n).into_iter().map(move |v| format!("{}: {v}", c.step.label())))
                .collect();
            out.compare("certificates", n_input, Vec::<String>::new(), violations);
        }
    }
    Ok(())
}

fn blowup(out: &mut Emitter, bounds: &Bounds) -> Result<()> {
    for s in corpus(bounds).iter().filter(|s| !s.is_symmetric()) {
        let input = sg_input(s);
        let checks = nearly_gorenstein_local_checks(s)?;
        out.compare("ag-iff-gap-one", input.clone(), checks.ag, checks.gap_one);
        if checks.ag {
            let k = canonical_ideal(s);
            let analysis = analyze(s)?;
            out.compare("ag-square-is-ohat", input.clone(), analysis.ohat.clone(), k.n_fold(2)?);
        }
        let analysis = analyze(s)?;
        let limit = analysis.colength() + 1;
        let index = analysis.stabilization_index;
        let witness = (index > limit).then(|| format!("index {index} > {limit}"));
        out.push("stabilization-bound", input.clone(), json!({ "at_most": limit }), json!(index), index <= limit, witness);
        let drop = genus_drop(s)?;
        let witness = (drop < 2).then(|| format!("genus drops by {drop}"));
        out.push("genus-drop", input, json!({ "at_least": 2 }), json!(drop), drop >= 2, witness);
    }
    Ok(())
}

/// Value sets, after dividing by `x^n`, of the sections of `ω^n` and of the
/// products of sections of `ω` on the one-branch model of `s` at 0.
pub fn single_branch_prediction(s: &NumericalSemigroup, n: usize) -> Result<(ValueSet, ValueSet)> {
    let a = s.conductor();
    let k = canonical_ideal(s);
    let w = k.truncate_below(a - 1);
    let sections = k.n_fold(n)?.truncate_below(n as i64 * (a - 2) + 1);
    Ok((sections, w.n_fold(n)?))
}

fn noether_single(out: &mut Emitter, bounds: &Bounds) -> Result<()> {
    let sgs: Vec<_> = corpus(bounds)
        .into_iter()
        .filter(|s| s.genus() >= 2 && s.multiplicity() >= 3)
        .collect();
    for s in &sgs {
        let c = RationalCurveModel::single(s)?;
        for n in 2..=bounds.max_n {
            let (sections, products) = single_branch_prediction(s, n)?;
            let predicted = sections == products;
            let outcome = c.max_noether(n);
            let shift = (n as i64) * s.conductor();
            let at = CurvePoint::Branch(0);
            let normalize = |vals: std::collections::BTreeSet<i64>| -> Vec<i64> { vals.into_iter().map(|v| v + shift).collect() };
            let oracle_sections = normalize(c.valuations(&c.global_sections(n), n, &at)?);
            let oracle_products = normalize(c.valuations(&c.products_span(n), n, &at)?);
            let agree = sections.elements() == Some(&oracle_sections[..]) && products.elements() == Some(&oracle_products[..]);
            let pass = predicted && outcome.holds && agree;
            let witness = if !agree {
                Some(format!(
                    "sumset sections {sections} products {products}; oracle sections {oracle_sections:?} products {oracle_products:?}"
                ))
            } else {
                outcome.defect()
            };
            out.push(
                "max-noether",
                json!({ "generators": s.generators(), "n": n }),
                json!({ "holds": predicted, "dim": sections.len() }),
                json!({ "holds": outcome.holds, "sections_dim": outcome.sections_dim, "products_dim": outcome.products_dim }),
                pass,
                witness,
            );
        }
    }
    Ok(())
}

/// The branch semigroups allowed in curve corpora, in canonical order.
pub fn model_branch_pool() -> Vec<NumericalSemigroup> {
    [&[3, 4, 5][..], &[2, 5], &[3, 5, 7], &[2, 7], &[3, 7, 8]]
        .into_iter()
        .map(|g| NumericalSemigroup::from_generators(g).expect("valid generators"))
        .collect()
}

/// Models with one to three branches from the pool, total genus at most
/// `max_delta`, centers `0, 1, 2`.
pub fn model_corpus(max_delta: usize) -> Vec<RationalCurveModel> {
    let pool = model_branch_pool();
    let mut picks: Vec<Vec<usize>> = Vec::new();
    for i in 0..pool.len() {
        picks.push(vec![i]);
        for j in i..pool.len() {
            picks.push(vec![i, j]);
            for k in j..pool.len() {
                picks.push(vec![i, j, k]);
            }
        }
    }
    picks.sort_by_key(|p| (p.len(), p.clone()));
    picks
        .into_iter()
        .filter(|p| p.iter().map(|&i| pool[i].genus()).sum::<usize>() <= max_delta)
        .map(|p| {
            let sgs: Vec<_> = p.iter().map(|&i| pool[i].clone()).collect();
            RationalCurveModel::from_semigroups(&sgs).expect("distinct centers")
        })
        .collect()
}

fn noether_check(out: &mut Emitter, c: &RationalCurveModel, n: usize) {
    let outcome = c.max_noether(n);
    out.push(
        "max-noether",
        json!({ "curve": CurveSpec::from_model(c), "n": n }),
        json!({ "holds": true }),
        json!({ "holds": outcome.holds, "sections_dim": outcome.sections_dim, "products_dim": outcome.products_dim }),
        outcome.holds,
        outcome.defect(),
    );
}

fn noether_multi(out: &mut Emitter, bounds: &Bounds) -> Result<()> {
    // A point of multiplicity at least 3 rules out a degree-2 map to the line.
    for c in model_corpus(bounds.max_genus)
        .iter()
        .filter(|c| c.branches().len() >= 2 && c.branches().iter().any(|b| b.semigroup.multiplicity() >= 3))
    {
        for n in 2..=bounds.max_n {
            noether_check(out, c, n);
        }
    }
    Ok(())
}

fn model(gens: &[&[i64]]) -> Result<RationalCurveModel> {
    let sgs = gens
        .iter()
        .map(|g| NumericalSemigroup::from_generators(g))
        .collect::<Result<Vec<_>>>()?;
    RationalCurveModel::from_semigroups(&sgs)
}

fn resolution(out: &mut Emitter, bounds: &Bounds) -> Result<()> {
    for c in [model(&[&[3, 4, 5], &[3, 4, 5]])?, model(&[&[3, 4, 5], &[3, 5, 7]])?] {
        for i in 0..c.branches().len() {
            for n in 2..=bounds.max_n {
                let holds = c.check_resolution_quotient(i, n)?;
                out.push(
                    "resolution-quotient",
                    json!({ "curve": curve_input(&c), "resolve": i, "n": n }),
                    json!(true),
                    json!(holds),
                    holds,
                    (!holds).then(|| "products and resolved sections do not fill H0".to_string()),
                );
            }
        }
    }
    let c = model(&[&[2, 5], &[3, 4, 5]])?;
    for n in 2..=bounds.max_n {
        let holds = c.check_hyperelliptic_resolution(1, n, false)?;
        out.push(
            "hyperelliptic-resolution",
            json!({ "curve": curve_input(&c), "resolve": 1, "n": n }),
            json!(true),
            json!(holds),
            holds,
            (!holds).then(|| "resolved sections not spanned by products".to_string()),
        );
        noether_check(out, &c, n);
    }
    Ok(())
}

fn hyperelliptic_negative(out: &mut Emitter, bounds: &Bounds) -> Result<()> {
    for k in 3..=bounds.max_genus as i64 {
        let s = NumericalSemigroup::from_generators(&[2, 2 * k + 1])?;
        let outcome = RationalCurveModel::single(&s)?.max_noether(2);
        let g = s.genus();
        let mut pass = !outcome.holds && outcome.gap() == g - 2;
        if k == 3 {
            pass &= outcome.missing_values.as_deref() == Some(&[7][..]);
        }
        out.push(
            "expected-failure",
            json!({ "generators": s.generators(), "n": 2 }),
            json!({ "holds": false, "gap": g - 2 }),
            json!({ "holds": outcome.holds, "gap": outcome.gap(), "missing": outcome.missing_values }),
            pass,
            outcome.defect().or_else(|| Some("surjective although hyperelliptic".to_string())),
        );
    }
    Ok(())
}

fn dims(out: &mut Emitter, bounds: &Bounds) {
    for c in model_corpus(bounds.max_genus) {
        let input = curve_input(&c);
        let g = c.genus();
        out.compare("h0-omega", input.clone(), g, c.global_sections(1).dim());
        if g < 2 {
            continue;
        }
        for n in 2..=bounds.max_n {
            let dim = c.global_sections(n).dim();
            let n_input = json!({ "curve": input, "n": n });
            let formula = (2 * n - 1) * (g - 1);
            let pass = formula == dim;
            let witness = (!pass).then(|| {
                format!("dimension {dim} != {formula}; Riemann-Roch count {}", c.euler_characteristic(n))
            });
            out.push("h0-omega-n", n_input.clone(), json!(formula), json!(dim), pass, witness);
            out.compare("riemann-roch", n_input, c.euler_characteristic(n), dim as i64);
        }
    }
}
