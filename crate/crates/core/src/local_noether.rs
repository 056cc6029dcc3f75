//! Local surjectivity `W^n -> V^n / t^(-eps) C^n` at a unibranch
//! non-Gorenstein point, worked out on value sets.
//!
//! `V` is the stalk of the dualizing module divided by the fixed differential
//! `x`, so its value set is the canonical ideal `K`; `W` holds the values of
//! the global sections divided by `x`; `C` is the conductor `[alpha, oo)`.
//! The descending chain
//!
//! ```text
//! V^n  >  C  >  t^(alpha-beta) C = t^(-beta) C^2  >  t^(-3) C^2  >  t^(-eps) C^n
//! ```
//!
//! is covered one quotient at a time by explicit products of elements of `W`
//! whose values are pairwise distinct. In the monomial model distinct values
//! certify linear independence.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::semigroup::NumericalSemigroup;
use crate::valueset::{canonical_ideal, ValueSet};

/// Which hypothesis on the differential values at the point is available.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum EpsilonCase {
    /// No extra hypothesis: `eps = 2n - 1`.
    #[serde(rename = "i")]
    Generic,
    /// Some section has value 0 at the point: `eps = 1`.
    #[serde(rename = "ii")]
    ZeroValue,
    /// Sections with values 0 and 1 (or 2) exist: `eps = 0`.
    #[serde(rename = "iii")]
    LowValues,
}

impl EpsilonCase {
    pub fn epsilon(self, n: usize) -> i64 {
        match self {
            EpsilonCase::Generic => 2 * n as i64 - 1,
            EpsilonCase::ZeroValue => 1,
            EpsilonCase::LowValues => 0,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            EpsilonCase::Generic => "i",
            EpsilonCase::ZeroValue => "ii",
            EpsilonCase::LowValues => "iii",
        }
    }
}

impl fmt::Display for EpsilonCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.tag())
    }
}

/// Classifies the valuations `v_P(y)` attained by global differentials `y`.
pub fn epsilon_case(differential_values: &ValueSet) -> EpsilonCase {
    let has = |m| differential_values.contains(m);
    match (has(0), has(1) || has(2)) {
        (true, true) => EpsilonCase::LowValues,
        (true, false) => EpsilonCase::ZeroValue,
        _ => EpsilonCase::Generic,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalContext {
    pub semigroup: NumericalSemigroup,
    pub canonical: ValueSet,
    pub sections: ValueSet,
    pub alpha: i64,
    pub beta: i64,
    pub d1: i64,
    pub d2: i64,
    /// The pair was reordered so that `d1 <= d2`.
    pub swapped: bool,
    pub r: i64,
    pub p: i64,
}

impl LocalContext {
    /// Context for a single singular point on a rational curve, where the
    /// section values are exactly `K` below the conductor.
    pub fn new(s: &NumericalSemigroup) -> Result<Self> {
        let k = canonical_ideal(s);
        let w = k.truncate_below(s.conductor());
        Self::with_sections(s, w)
    }

    /// Context with an explicit value set `W` of sections divided by `x`;
    /// `W` must lie in `K` and fill `K` up to the conductor.
    pub fn with_sections(s: &NumericalSemigroup, w: ValueSet) -> Result<Self> {
        if s.is_symmetric() {
            return Err(Error::NotApplicable(format!("{s} is symmetric (Gorenstein point)")));
        }
        let k = canonical_ideal(s);
        let alpha = s.conductor();
        if !w.is_subset(&k) || w.union(&ValueSet::ray(alpha)) != k {
            return Err(Error::HypothesisGap(format!(
                "section values {w} do not fill K = {k} below {alpha}"
            )));
        }
        let d1 = k
            .elements_below(alpha)
            .into_iter()
            .find(|&d| !s.contains(d))
            .expect("K strictly contains S for a non-symmetric semigroup");
        let beta = s.multiplicity();
        let r = alpha / beta - 1;
        Ok(Self {
            semigroup: s.clone(),
            canonical: k,
            sections: w,
            alpha,
            beta,
            d1,
            d2: alpha - d1 - 1,
            swapped: false,
            r,
            p: alpha - (r + 1) * beta,
        })
    }

    /// Uses `d` as the first element of the pair in `K \ S`.
    pub fn with_pair(mut self, d: i64) -> Result<Self> {
        if !self.canonical.contains(d) || self.semigroup.contains(d) {
            return Err(Error::NotApplicable(format!("{d} is not in K \\ S")));
        }
        let other = self.alpha - d - 1;
        self.swapped = d > other;
        self.d1 = d.min(other);
        self.d2 = d.max(other);
        Ok(self)
    }

    /// `(q_i1, q_i2)` for `i = 1..=r` with `q_i1 + q_i2 = i` and
    /// `q_ij * beta + d_j < alpha`.
    pub fn q_decomposition(&self) -> Result<Vec<QPair>> {
        if self.r < 1 {
            return Err(Error::NotApplicable(format!(
                "r = 0 for {} (2 * beta > alpha)",
                self.semigroup
            )));
        }
        let q_r2 = self.d1 / self.beta;
        let q_r1 = self.r - q_r2;
        (1..=self.r)
            .map(|i| {
                let q1 = i.min(q_r1);
                let pair = QPair { i, q1, q2: i - q1 };
                if pair.q1 < 0
                    || pair.q2 < 0
                    || pair.q1 * self.beta + self.d1 >= self.alpha
                    || pair.q2 * self.beta + self.d2 >= self.alpha
                {
                    return Err(Error::HypothesisGap(format!("{pair:?} violates the bounds")));
                }
                Ok(pair)
            })
            .collect()
    }

    fn b(&self, j: i64) -> i64 {
        j + self.alpha - self.beta - 1
    }

    fn entry(&self, label: String, factors: Vec<i64>) -> Result<CertificateEntry> {
        if let Some(f) = factors.iter().find(|&&f| !self.sections.contains(f)) {
            return Err(Error::HypothesisGap(format!(
                "{label}: no section with value {f} in W = {}",
                self.sections
            )));
        }
        Ok(CertificateEntry {
            value: factors.iter().sum(),
            label,
            factors,
        })
    }

    /// `m_i b_j`, `f_i` and `m_(r+1) b_j`: a basis of `C / t^(alpha-beta) C`.
    fn conductor_entries(&self) -> Result<Vec<CertificateEntry>> {
        let (beta, r, p) = (self.beta, self.r, self.p);
        let pairs = if r >= 1 { self.q_decomposition()? } else { Vec::new() };
        let mut out = Vec::new();
        for pair in &pairs {
            let i = pair.i;
            for j in 1..beta {
                out.push(self.entry(format!("m{i}b{j}"), vec![i * beta, self.b(j)])?);
            }
            out.push(self.entry(
                format!("f{i}"),
                vec![pair.q1 * beta + self.d1, pair.q2 * beta + self.d2],
            )?);
        }
        for j in 1..=p {
            out.push(self.entry(format!("m{}b{j}", r + 1), vec![(r + 1) * beta, self.b(j)])?);
        }
        Ok(out)
    }

    /// Basis of `t^(-beta) C^2` modulo the next chain member, by case.
    fn square_entries(&self, case: EpsilonCase) -> Result<Vec<CertificateEntry>> {
        let (alpha, beta) = (self.alpha, self.beta);
        let top = beta - 1;
        let mut out = Vec::new();
        match case {
            EpsilonCase::Generic => {
                for j in 3..beta {
                    let label = if j == top {
                        format!("b{top}^2")
                    } else {
                        format!("b{top}b{j}")
                    };
                    out.push(self.entry(label, vec![self.b(top), self.b(j)])?);
                }
            }
            EpsilonCase::ZeroValue | EpsilonCase::LowValues => {
                for j in 1..beta {
                    out.push(self.entry(format!("h0b{j}"), vec![alpha, self.b(j)])?);
                }
                if case == EpsilonCase::LowValues {
                    let extra = if self.sections.contains(alpha + 1) {
                        self.entry(format!("h1b{top}"), vec![alpha + 1, self.b(top)])?
                    } else {
                        self.entry(format!("h1b{}", top - 1), vec![alpha + 2, self.b(top - 1)])?
                    };
                    out.push(extra);
                }
            }
        }
        Ok(out)
    }

    /// Lower end of the chain member following `t^(-beta) C^2`.
    fn square_floor(&self, case: EpsilonCase) -> i64 {
        match case {
            EpsilonCase::Generic => 2 * self.alpha - 3,
            EpsilonCase::ZeroValue => 2 * self.alpha - 1,
            EpsilonCase::LowValues => 2 * self.alpha,
        }
    }

    /// Certificates for every quotient of the chain from `V^n` down to
    /// `t^(-eps) C^n`, where `eps = case.epsilon(n)`.
    pub fn build_certificates(&self, n: usize, case: EpsilonCase) -> Result<Vec<BasisCertificate>> {
        if n == 0 {
            return Err(Error::NotApplicable("n must be positive".into()));
        }
        let alpha = self.alpha;
        let floor = n as i64 * alpha - case.epsilon(n);
        let kn = self.canonical.n_fold(n)?;
        let mut certs = Vec::new();

        let push = |certs: &mut Vec<BasisCertificate>,
                    step: ChainStep,
                    upper: ValueSet,
                    lo_next: i64,
                    entries: Vec<CertificateEntry>| {
            let entries = entries.into_iter().filter(|e| e.value < floor).collect();
            certs.push(BasisCertificate {
                step,
                entries,
                lower: upper.truncate_from(lo_next.min(floor)),
                upper,
            });
        };

        let head = self.head_entries(&kn, n, alpha.min(floor))?;
        push(&mut certs, ChainStep::Head, kn.clone(), alpha, head);
        if n == 1 {
            return Ok(certs);
        }

        let mid = 2 * alpha - self.beta;
        push(
            &mut certs,
            ChainStep::Conductor,
            kn.truncate_from(alpha),
            mid,
            self.conductor_entries()?,
        );
        let square_floor = self.square_floor(case);
        push(
            &mut certs,
            ChainStep::Square(case),
            kn.truncate_from(mid),
            square_floor,
            self.square_entries(case)?,
        );
        if n >= 3 {
            let (mult_label, mult, mut base) = match case {
                EpsilonCase::Generic => {
                    let top = self.beta - 1;
                    (format!("b{top}"), self.b(top), vec![self.entry("f0".into(), vec![self.d1, self.d2])?])
                }
                EpsilonCase::ZeroValue => {
                    ("h0".to_string(), alpha, vec![self.entry("f0".into(), vec![self.d1, self.d2])?])
                }
                EpsilonCase::LowValues => ("h0".to_string(), alpha, Vec::new()),
            };
            base.extend(self.conductor_entries()?);
            base.extend(self.square_entries(case)?);
            let mut entries = Vec::new();
            for i in 1..=(n - 2) {
                for b in &base {
                    let mut factors = vec![mult; i];
                    factors.extend(&b.factors);
                    let power = if i == 1 { String::new() } else { format!("^{i}") };
                    entries.push(self.entry(format!("{mult_label}{power}*{}", b.label), factors)?);
                }
            }
            push(
                &mut certs,
                ChainStep::Powers(case),
                kn.truncate_from(square_floor),
                floor,
                entries,
            );
        }
        Ok(certs)
    }

    /// Values of `V^n` below `bound`, each written as a product of at most
    /// `n` elements of `W`.
    fn head_entries(&self, kn: &ValueSet, n: usize, bound: i64) -> Result<Vec<CertificateEntry>> {
        let small = self.sections.elements_below(self.alpha);
        kn.elements_below(bound)
            .into_iter()
            .map(|v| {
                let factors = decompose(v, &small, n).ok_or_else(|| {
                    Error::HypothesisGap(format!("{v} is not a sum of {n} values of W"))
                })?;
                let label = factors.iter().map(|f| format!("w{f}")).collect::<Vec<_>>().join("*");
                self.entry(label, factors)
            })
            .collect()
    }

    pub fn verify_surjectivity(&self, n: usize, epsilon: i64) -> Result<Coverage> {
        verify_local_surjectivity(&self.sections, &self.canonical, self.alpha, n, epsilon)
    }

    /// Least `eps >= 0` for which `W^n` covers `V^n / t^(-eps) C^n`.
    pub fn minimal_epsilon(&self, n: usize) -> Result<i64> {
        for eps in 0..=(n as i64 * self.alpha) {
            if self.verify_surjectivity(n, eps)?.holds {
                return Ok(eps);
            }
        }
        unreachable!("the quotient is zero once eps reaches n * alpha")
    }
}

/// Splits `v` into at most `n` parts from `parts` (which contains 0).
fn decompose(v: i64, parts: &[i64], n: usize) -> Option<Vec<i64>> {
    if n == 0 {
        return (v == 0).then(Vec::new);
    }
    for &f in parts.iter().rev().filter(|&&f| f <= v) {
        if let Some(mut rest) = decompose(v - f, parts, n - 1) {
            rest.insert(0, f);
            return Some(rest);
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QPair {
    pub i: i64,
    pub q1: i64,
    pub q2: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ChainStep {
    /// `V^n / C`.
    Head,
    /// `C / t^(alpha-beta) C`.
    Conductor,
    /// `t^(-beta) C^2` modulo `t^(-3) C^2`, `t^(-1) C^2` or `C^2`.
    Square(EpsilonCase),
    /// The remaining quotient down to `t^(-eps) C^n`.
    Powers(EpsilonCase),
}

impl ChainStep {
    pub fn label(self) -> &'static str {
        match self {
            ChainStep::Head => "W^n",
            ChainStep::Conductor => "A1",
            ChainStep::Square(EpsilonCase::Generic) => "A2",
            ChainStep::Square(EpsilonCase::ZeroValue) => "A2'",
            ChainStep::Square(EpsilonCase::LowValues) => "A2''",
            ChainStep::Powers(EpsilonCase::Generic) => "A3",
            ChainStep::Powers(EpsilonCase::ZeroValue) => "A3'",
            ChainStep::Powers(EpsilonCase::LowValues) => "A3''",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateEntry {
    pub label: String,
    /// Values of the `W` elements whose product is the entry.
    pub factors: Vec<i64>,
    pub value: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisCertificate {
    pub step: ChainStep,
    pub entries: Vec<CertificateEntry>,
    pub upper: ValueSet,
    pub lower: ValueSet,
}

impl BasisCertificate {
    pub fn values(&self) -> Vec<i64> {
        self.entries.iter().map(|e| e.value).collect()
    }

    /// Every way the certificate fails to be a basis of `upper / lower` made of
    /// products of at most `n` elements of `w`. Empty means valid.
    pub fn violations(&self, w: &ValueSet, n: usize) -> Vec<String> {
        let mut out = Vec::new();
        let distinct: BTreeSet<i64> = self.values().into_iter().collect();
        if distinct.len() != self.entries.len() {
            out.push("values are not pairwise distinct".to_string());
        }
        match self.upper.quotient_dim(&self.lower) {
            Ok(d) if d == self.entries.len() => {}
            Ok(d) => out.push(format!("{} entries for a quotient of dimension {d}", self.entries.len())),
            Err(e) => out.push(e.to_string()),
        }
        for e in &self.entries {
            if !self.upper.contains(e.value) || self.lower.contains(e.value) {
                out.push(format!("{} = {} lies outside the quotient", e.label, e.value));
            }
            if e.factors.len() > n || e.factors.iter().any(|&f| !w.contains(f)) {
                out.push(format!("{} is not a product of {n} elements of W", e.label));
            }
            if e.factors.iter().sum::<i64>() != e.value {
                out.push(format!("{} has inconsistent value", e.label));
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coverage {
    pub holds: bool,
    /// Values of `V^n / t^(-eps) C^n` not attained by `W^n`.
    pub uncovered: Vec<i64>,
}

/// Whether `W^n` contains every value of `K^n` below `n * alpha - eps`.
pub fn verify_local_surjectivity(
    w: &ValueSet,
    k: &ValueSet,
    alpha: i64,
    n: usize,
    epsilon: i64,
) -> Result<Coverage> {
    let wn = w.n_fold(n)?;
    let kn = k.n_fold(n)?;
    let uncovered: Vec<i64> = kn
        .elements_below(n as i64 * alpha - epsilon)
        .into_iter()
        .filter(|&v| !wn.contains(v))
        .collect();
    Ok(Coverage {
        holds: uncovered.is_empty(),
        uncovered,
    })
}
