//! Rational curves whose only singularities are unibranch monomial points.
//!
//! An `n`-differential is stored as the numerator `N(t)` of
//! `N(t) / prod (t - c_i)^(n a_i) (dt)^n`, a coefficient vector of length
//! `D_max(n) + 1`. Sections of `ω^n` are cut out by linear conditions on the
//! Laurent expansion at each center.

pub mod laurent;
mod spec;

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{nullspace, rational, rref, Matrix, Rational, Subspace};
use crate::semigroup::NumericalSemigroup;
use crate::valueset::{dualizing_values, ValueSet};

pub use spec::{BranchSpec, CurveSpec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch {
    pub center: Rational,
    pub semigroup: NumericalSemigroup,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalCurveModel {
    branches: Vec<Branch>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurvePoint {
    Branch(usize),
    Smooth(Rational),
}

/// `numerator / prod (t - c_i)^(n a_i) (dt)^n` on a fixed model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NDifferential {
    pub n: usize,
    pub numerator: Vec<Rational>,
}

impl NDifferential {
    pub fn degree(&self) -> Option<usize> {
        self.numerator.iter().rposition(|c| !c.is_zero())
    }
}

impl fmt::Display for NDifferential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .numerator
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| match j {
                0 => format!("{c}"),
                1 => format!("{c}*t"),
                _ => format!("{c}*t^{j}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Allowed local exponents of an `n`-differential in the `n`-th power stalk.
pub fn local_support_set(s: &NumericalSemigroup, n: usize) -> ValueSet {
    dualizing_values(s)
        .n_fold(n)
        .expect("dualizing values are cofinite")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NoetherOutcome {
    pub n: usize,
    pub holds: bool,
    pub sections_dim: usize,
    pub products_dim: usize,
    /// Values of sections not attained by products, shifted by `n a` so they
    /// read as function values after dividing by `x^n`. Single-branch only.
    pub missing_values: Option<Vec<i64>>,
}

impl NoetherOutcome {
    pub fn gap(&self) -> usize {
        self.sections_dim - self.products_dim
    }

    pub fn defect(&self) -> Option<String> {
        if self.holds {
            return None;
        }
        let mut msg = format!("dimension {} < {}", self.products_dim, self.sections_dim);
        if let Some(missing) = &self.missing_values {
            let vals: Vec<String> = missing.iter().map(i64::to_string).collect();
            let noun = if missing.len() == 1 { "value" } else { "values" };
            msg.push_str(&format!(", missing {noun} {}", vals.join(",")));
        }
        Some(msg)
    }
}

impl RationalCurveModel {
    pub fn new(branches: Vec<Branch>) -> Result<Self> {
        for (i, b) in branches.iter().enumerate() {
            if b.semigroup.is_natural() {
                return Err(Error::InvalidCurve(format!("branch {i} is smooth")));
            }
            if branches[..i].iter().any(|o| o.center == b.center) {
                return Err(Error::InvalidCurve(format!("center {} repeated", b.center)));
            }
        }
        Ok(Self { branches })
    }

    /// Places the semigroups at centers `0, 1, 2, ...`.
    pub fn from_semigroups(semigroups: &[NumericalSemigroup]) -> Result<Self> {
        Self::new(
            semigroups
                .iter()
                .enumerate()
                .map(|(i, s)| Branch { center: rational(i as i64), semigroup: s.clone() })
                .collect(),
        )
    }

    pub fn single(s: &NumericalSemigroup) -> Result<Self> {
        Self::from_semigroups(std::slice::from_ref(s))
    }

    /// The projective line.
    pub fn smooth() -> Self {
        Self { branches: Vec::new() }
    }

    pub fn branches(&self) -> &[Branch] {
        &self.branches
    }

    pub fn genus(&self) -> usize {
        self.branches.iter().map(|b| b.semigroup.genus()).sum()
    }

    fn pole_order(&self, i: usize, n: usize) -> usize {
        n * self.branches[i].semigroup.conductor() as usize
    }

    /// `D_max(n) = n sum a_i - 2n`.
    pub fn degree_bound(&self, n: usize) -> i64 {
        let total: i64 = self.branches.iter().map(|b| b.semigroup.conductor()).sum();
        n as i64 * (total - 2)
    }

    pub fn ambient_dim(&self, n: usize) -> usize {
        (self.degree_bound(n) + 1).max(0) as usize
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.branches.len() {
            return Err(Error::BranchIndex(i, self.branches.len()));
        }
        Ok(())
    }

    /// Column `j` holds the first `len` Laurent coefficients at `p` of `t^j`
    /// divided by the poles away from `p`, so the expansion of a numerator
    /// `v` is `sum_j v_j col_j` starting at exponent `-order(p)`.
    fn expansion_columns(&self, p: &Rational, n: usize, len: usize) -> Vec<Vec<Rational>> {
        let mut base = vec![Rational::zero(); len];
        if len > 0 {
            base[0] = Rational::one();
        }
        for (k, b) in self.branches.iter().enumerate() {
            if b.center != *p {
                let inv = laurent::inverse_power(&(p - &b.center), self.pole_order(k, n), len);
                base = laurent::series_mul(&base, &inv, len);
            }
        }
        let mut cols = Vec::with_capacity(self.ambient_dim(n));
        for _ in 0..self.ambient_dim(n) {
            cols.push(base.clone());
            laurent::mul_linear(&mut base, p);
        }
        cols
    }

    fn point_data(&self, point: &CurvePoint, n: usize) -> Result<(Rational, i64)> {
        match point {
            CurvePoint::Branch(i) => {
                self.check_index(*i)?;
                Ok((self.branches[*i].center.clone(), -(self.pole_order(*i, n) as i64)))
            }
            CurvePoint::Smooth(c) => {
                if self.branches.iter().any(|b| b.center == *c) {
                    return Err(Error::NotApplicable(format!("{c} is a singular point")));
                }
                Ok((c.clone(), 0))
            }
        }
    }

    /// `H^0(ω^n)` as a subspace of numerator coefficient vectors.
    pub fn global_sections(&self, n: usize) -> Subspace {
        assert!(n >= 1);
        let dim = self.ambient_dim(n);
        let mut rows = Vec::new();
        for (i, b) in self.branches.iter().enumerate() {
            let allowed = local_support_set(&b.semigroup, n);
            let lowest = -(self.pole_order(i, n) as i64);
            let top = allowed.threshold().expect("cofinite");
            let cols = self.expansion_columns(&b.center, n, (top - lowest).max(0) as usize);
            for e in lowest..top {
                if !allowed.contains(e) {
                    let idx = (e - lowest) as usize;
                    rows.push(cols.iter().map(|c| c[idx].clone()).collect());
                }
            }
        }
        let m = Matrix::new(dim, rows).expect("rows have ambient length");
        nullspace(&m)
    }

    /// Span of all `n`-fold products of a basis of `H^0(ω)`.
    pub fn products_span(&self, n: usize) -> Subspace {
        assert!(n >= 1);
        let base = self.global_sections(1);
        let mut current = base.clone();
        for k in 2..=n {
            let mut seen = HashSet::new();
            let mut vectors = Vec::new();
            for p in current.basis() {
                for b in base.basis() {
                    let v = laurent::poly_mul(p, b);
                    if seen.insert(v.clone()) {
                        vectors.push(v);
                    }
                }
            }
            let dim = self.ambient_dim(k);
            let vectors = vectors
                .into_iter()
                .map(|mut v| {
                    v.resize(dim, Rational::zero());
                    v
                })
                .collect();
            current = Subspace::span(dim, vectors).expect("product degree within bound");
        }
        current
    }

    /// Valuations at `point` attained by nonzero elements of `space`.
    pub fn valuations(&self, space: &Subspace, n: usize, point: &CurvePoint) -> Result<BTreeSet<i64>> {
        let (p, offset) = self.point_data(point, n)?;
        let dim = self.ambient_dim(n);
        if space.ambient() != dim {
            return Err(Error::AmbientMismatch(space.ambient(), dim));
        }
        // A numerator of degree at most D vanishes to order at most D, so
        // D + 1 coefficients see the leading term of every nonzero element.
        let cols = self.expansion_columns(&p, n, dim);
        let rows = space
            .basis()
            .iter()
            .map(|v| {
                (0..dim)
                    .map(|e| {
                        v.iter()
                            .zip(&cols)
                            .filter(|(x, _)| !x.is_zero())
                            .map(|(x, c)| x * &c[e])
                            .sum()
                    })
                    .collect()
            })
            .collect();
        let (reduced, _) = rref(&Matrix::new(dim, rows)?);
        Ok(reduced
            .rows()
            .iter()
            .filter_map(|r| r.iter().position(|c| !c.is_zero()))
            .map(|j| offset + j as i64)
            .collect())
    }

    /// Valuations at `point` attained by sections of `ω`.
    pub fn section_valuations(&self, point: &CurvePoint) -> Result<BTreeSet<i64>> {
        self.valuations(&self.global_sections(1), 1, point)
    }

    /// A section of `ω` with valuation `-a_i` at every branch.
    pub fn choose_x(&self) -> Result<NDifferential> {
        if self.branches.is_empty() {
            return Err(Error::NotApplicable("curve has no singular points".into()));
        }
        let sections = self.global_sections(1);
        let basis = sections.basis();
        // Coefficient of u^(-a_i) at branch i, as a functional on the basis.
        let leading: Vec<Vec<Rational>> = self
            .branches
            .iter()
            .map(|b| {
                let cols = self.expansion_columns(&b.center, 1, 1);
                basis
                    .iter()
                    .map(|v| v.iter().zip(&cols).map(|(x, c)| x * &c[0]).sum())
                    .collect()
            })
            .collect();
        // Along the moment curve (1, s, s^2, ...) each functional is a nonzero
        // polynomial of degree < g in s, so few values of s can fail.
        let attempts = self.branches.len() * basis.len() + 1;
        for s in 0..attempts as i64 {
            let weights: Vec<Rational> = (0..basis.len() as u32).map(|k| rational(s.pow(k))).collect();
            let ok = leading.iter().all(|f| {
                let value: Rational = f.iter().zip(&weights).map(|(a, w)| a * w).sum();
                !value.is_zero()
            });
            if ok {
                let mut numerator = vec![Rational::zero(); sections.ambient()];
                for (v, w) in basis.iter().zip(&weights) {
                    for (acc, x) in numerator.iter_mut().zip(v) {
                        *acc += x * w;
                    }
                }
                let x = NDifferential { n: 1, numerator };
                self.validate_x(&x)?;
                return Ok(x);
            }
        }
        Err(Error::GenericityFailure(attempts))
    }

    fn validate_x(&self, x: &NDifferential) -> Result<()> {
        let space = Subspace::span(self.ambient_dim(1), vec![x.numerator.clone()])?;
        for (i, b) in self.branches.iter().enumerate() {
            let v = self.valuations(&space, 1, &CurvePoint::Branch(i))?;
            if v.into_iter().next() != Some(-b.semigroup.conductor()) {
                return Err(Error::GenericityFailure(i));
            }
        }
        Ok(())
    }

    pub fn max_noether(&self, n: usize) -> NoetherOutcome {
        let sections = self.global_sections(n);
        let products = self.products_span(n);
        let holds = sections.equal(&products).expect("same ambient");
        let missing_values = (self.branches.len() == 1 && !holds).then(|| {
            let at = CurvePoint::Branch(0);
            let shift = self.pole_order(0, n) as i64;
            let all = self.valuations(&sections, n, &at).expect("branch exists");
            let hit = self.valuations(&products, n, &at).expect("branch exists");
            all.difference(&hit).map(|v| v + shift).collect()
        });
        NoetherOutcome {
            n,
            holds,
            sections_dim: sections.dim(),
            products_dim: products.dim(),
            missing_values,
        }
    }

    pub fn max_noether_holds(&self, n: usize) -> bool {
        self.max_noether(n).holds
    }

    /// The model with branch `i` replaced by a smooth point.
    pub fn resolve(&self, i: usize) -> Result<Self> {
        self.check_index(i)?;
        let mut branches = self.branches.clone();
        branches.remove(i);
        Ok(Self { branches })
    }

    /// `H^0(ω̃^n)` of `resolve(i)` inside the ambient of this model.
    pub fn embedded_resolved_sections(&self, i: usize, n: usize) -> Result<Subspace> {
        let resolved = self.resolve(i)?;
        let factor = laurent::binomial_power(&-&self.branches[i].center, self.pole_order(i, n));
        let dim = self.ambient_dim(n);
        let vectors = resolved
            .global_sections(n)
            .basis()
            .iter()
            .map(|v| {
                let mut w = laurent::poly_mul(v, &factor);
                w.resize(dim, Rational::zero());
                w
            })
            .collect();
        Subspace::span(dim, vectors)
    }

    /// Products together with the sections of the resolved model fill `H^0(ω^n)`.
    pub fn check_resolution_quotient(&self, i: usize, n: usize) -> Result<bool> {
        let resolved = self.embedded_resolved_sections(i, n)?;
        let total = self.products_span(n).sum(&resolved)?;
        total.equal(&self.global_sections(n))
    }

    /// Sections of the resolved model lie in the span of products, when
    /// resolving a point of multiplicity at least 3 leaves a hyperelliptic
    /// curve of genus at least 2. A single remaining branch of multiplicity 2
    /// is recognised directly; otherwise the caller must assert
    /// hyperellipticity.
    pub fn check_hyperelliptic_resolution(&self, i: usize, n: usize, assert_hyperelliptic: bool) -> Result<bool> {
        self.check_index(i)?;
        let beta = self.branches[i].semigroup.multiplicity();
        if beta < 3 {
            return Err(Error::NotApplicable(format!("branch {i} has multiplicity {beta}")));
        }
        let resolved = self.resolve(i)?;
        if resolved.genus() < 2 {
            return Err(Error::NotApplicable(format!("resolved genus {} < 2", resolved.genus())));
        }
        let documented = resolved.branches.len() == 1 && resolved.branches[0].semigroup.multiplicity() == 2;
        if !documented && !assert_hyperelliptic {
            return Err(Error::NotApplicable("resolved curve not known to be hyperelliptic".into()));
        }
        self.products_span(n).contains(&self.embedded_resolved_sections(i, n)?)
    }

    /// `1 - 2n + sum_i (|Σ_{n,i} \ N| - |N \ Σ_{n,i}|)`: the Riemann–Roch
    /// count of `H^0(ω^n)`, exact whenever `h^1(ω^n) = 0`.
    pub fn euler_characteristic(&self, n: usize) -> i64 {
        let mut chi = 1 - 2 * n as i64;
        for b in &self.branches {
            let sigma = local_support_set(&b.semigroup, n);
            let below_zero = sigma.elements_below(0).len() as i64;
            let missing = (0..sigma.threshold().unwrap_or(0)).filter(|&e| !sigma.contains(e)).count() as i64;
            chi += below_zero - missing;
        }
        chi
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sg(gens: &[i64]) -> NumericalSemigroup {
        NumericalSemigroup::from_generators(gens).unwrap()
    }

    fn curve(gens: &[&[i64]]) -> RationalCurveModel {
        let sgs: Vec<_> = gens.iter().map(|g| sg(g)).collect();
        RationalCurveModel::from_semigroups(&sgs).unwrap()
    }

    fn unit(dim: usize, j: usize) -> Vec<Rational> {
        let mut v = vec![rational(0); dim];
        v[j] = rational(1);
        v
    }

    #[test]
    fn support_set_examples() {
        let s = local_support_set(&sg(&[3, 4, 5]), 1);
        assert_eq!(s, ValueSet::new([-3, -2], Some(0)));
        let s = local_support_set(&sg(&[2, 7]), 2);
        assert_eq!(s.elements_below(-5), vec![-12, -10, -8, -6]);
        assert!((-6..0).all(|e| s.contains(e)));
        for gens in [&[3, 4, 5][..], &[2, 7], &[4, 5, 11]] {
            let s = sg(gens);
            assert_eq!(
                local_support_set(&s, 1).shift(s.conductor()),
                crate::valueset::canonical_ideal(&s)
            );
        }
    }

    #[test]
    fn sections_of_cusp_model() {
        let c = curve(&[&[3, 4, 5]]);
        let h = c.global_sections(1);
        assert_eq!(h.dim(), 2);
        // numerators 1 and t give t^-3 dt and t^-2 dt
        assert!(h.contains_vector(&unit(2, 0)).unwrap());
        assert!(h.contains_vector(&unit(2, 1)).unwrap());
        assert_eq!(c.section_valuations(&CurvePoint::Branch(0)).unwrap(), BTreeSet::from([-3, -2]));
        assert_eq!(c.global_sections(2).dim(), 3);
    }

    #[test]
    fn smooth_model_has_no_sections() {
        let c = RationalCurveModel::smooth();
        for n in 1..=3 {
            assert_eq!(c.global_sections(n).dim(), 0);
            assert_eq!(c.products_span(n).dim(), 0);
        }
        assert!(c.section_valuations(&CurvePoint::Smooth(rational(0))).unwrap().is_empty());
        assert!(c.choose_x().is_err());
    }

    #[test]
    fn invalid_models() {
        let s = sg(&[3, 4, 5]);
        let twice = vec![
            Branch { center: rational(0), semigroup: s.clone() },
            Branch { center: rational(0), semigroup: s },
        ];
        assert!(RationalCurveModel::new(twice).is_err());
        assert!(RationalCurveModel::single(&NumericalSemigroup::natural()).is_err());
    }

    #[test]
    fn chosen_x_examples() {
        let x = curve(&[&[3, 4, 5]]).choose_x().unwrap();
        assert_eq!(x.numerator, unit(2, 0));
        let x = curve(&[&[2, 7]]).choose_x().unwrap();
        assert_eq!(x.numerator, unit(5, 0));
        // validated internally: valuation -3 at both centers
        curve(&[&[3, 4, 5], &[3, 4, 5]]).choose_x().unwrap();
    }

    #[test]
    fn valuations_at_smooth_point() {
        let c = curve(&[&[3, 4, 5]]);
        let v = c.section_valuations(&CurvePoint::Smooth(rational(1))).unwrap();
        assert!(v.contains(&0) && v.contains(&1));
        assert!(c.section_valuations(&CurvePoint::Smooth(rational(0))).is_err());
    }

    #[test]
    fn noether_examples() {
        let o = curve(&[&[3, 4, 5]]).max_noether(2);
        assert!(o.holds);
        assert_eq!(o.sections_dim, 3);

        let o = curve(&[&[2, 7]]).max_noether(2);
        assert!(!o.holds);
        assert_eq!((o.sections_dim, o.products_dim), (6, 5));
        assert_eq!(o.missing_values, Some(vec![7]));
        assert_eq!(o.defect().unwrap(), "dimension 5 < 6, missing value 7");

        let o = curve(&[&[3, 5, 7]]).max_noether(2);
        assert!(o.holds);
        assert_eq!(o.sections_dim, 6);
    }

    #[test]
    fn products_in_degree_one_are_sections() {
        let c = curve(&[&[3, 4, 5], &[2, 5]]);
        assert!(c.products_span(1).equal(&c.global_sections(1)).unwrap());
    }

    #[test]
    fn resolution_examples() {
        let c = curve(&[&[3, 4, 5], &[3, 4, 5]]);
        assert_eq!(c.resolve(0).unwrap().genus(), 2);
        assert!(c.check_resolution_quotient(0, 2).unwrap());
        assert!(c.resolve(2).is_err());

        let single = curve(&[&[2, 7]]);
        assert_eq!(single.resolve(0).unwrap().genus(), 0);
        assert_eq!(single.check_resolution_quotient(0, 2).unwrap(), single.max_noether_holds(2));
    }

    #[test]
    fn hyperelliptic_resolution_examples() {
        let c = curve(&[&[2, 5], &[3, 4, 5]]);
        assert!(c.check_hyperelliptic_resolution(1, 2, false).unwrap());
        assert!(c.check_hyperelliptic_resolution(1, 3, false).unwrap());
        assert!(matches!(c.check_hyperelliptic_resolution(0, 2, true), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn euler_characteristic_matches_oracle() {
        for gens in [&[&[3, 4, 5][..]][..], &[&[2, 7]], &[&[3, 4, 5], &[2, 5]], &[&[3, 7, 8]]] {
            let c = curve(gens);
            for n in 2..=3 {
                assert_eq!(c.global_sections(n).dim() as i64, c.euler_characteristic(n), "{gens:?} n={n}");
            }
        }
    }

    #[test]
    fn gorenstein_dimension_formula() {
        let c = curve(&[&[2, 5], &[2, 3]]);
        for n in 2..=3 {
            assert_eq!(c.global_sections(n).dim(), (2 * n - 1) * (c.genus() - 1));
        }
    }
}
