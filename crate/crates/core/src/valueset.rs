//! Subsets of `Z` that are bounded below and either finite or co-finite
//! above: value sets of fractional ideals, of the dualizing module, and of the
//! finite-dimensional spaces of sections that feed the local covering argument.
//!
//! Representation is normalized: a sorted exceptional part plus an optional
//! threshold `t` with `[t, oo)` in the set and `t - 1` not in it. Structural
//! equality is set equality.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::semigroup::NumericalSemigroup;

#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct ValueSet {
    exceptional: Vec<i64>,
    /// `None` for finite sets.
    threshold: Option<i64>,
}

impl ValueSet {
    pub fn new(exceptional: impl IntoIterator<Item = i64>, threshold: Option<i64>) -> Self {
        let mut exceptional: Vec<i64> = exceptional.into_iter().collect();
        exceptional.sort_unstable();
        exceptional.dedup();
        let mut threshold = threshold;
        if let Some(mut t) = threshold {
            exceptional.retain(|&e| e < t);
            while exceptional.last() == Some(&(t - 1)) {
                exceptional.pop();
                t -= 1;
            }
            threshold = Some(t);
        }
        Self {
            exceptional,
            threshold,
        }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn finite(elements: impl IntoIterator<Item = i64>) -> Self {
        Self::new(elements, None)
    }

    /// `[from, oo)`.
    pub fn ray(from: i64) -> Self {
        Self::new([], Some(from))
    }

    /// The set of naturals.
    pub fn naturals() -> Self {
        Self::ray(0)
    }

    pub fn from_semigroup(s: &NumericalSemigroup) -> Self {
        Self::new(s.small_elements(), Some(s.conductor()))
    }

    pub fn exceptional(&self) -> &[i64] {
        &self.exceptional
    }

    pub fn threshold(&self) -> Option<i64> {
        self.threshold
    }

    pub fn is_empty(&self) -> bool {
        self.exceptional.is_empty() && self.threshold.is_none()
    }

    pub fn is_finite(&self) -> bool {
        self.threshold.is_none()
    }

    pub fn min(&self) -> Option<i64> {
        self.exceptional.first().copied().or(self.threshold)
    }

    /// Largest element of a finite set.
    pub fn max(&self) -> Option<i64> {
        match self.threshold {
            Some(_) => None,
            None => self.exceptional.last().copied(),
        }
    }

    pub fn contains(&self, m: i64) -> bool {
        match self.threshold {
            Some(t) if m >= t => true,
            _ => self.exceptional.binary_search(&m).is_ok(),
        }
    }

    /// Elements strictly below `bound`, in increasing order.
    pub fn elements_below(&self, bound: i64) -> Vec<i64> {
        let mut out: Vec<i64> = self
            .exceptional
            .iter()
            .copied()
            .take_while(|&e| e < bound)
            .collect();
        if let Some(t) = self.threshold {
            out.extend(t..bound);
        }
        out
    }

    /// Elements of a finite set; `None` when the set is infinite.
    pub fn elements(&self) -> Option<&[i64]> {
        self.is_finite().then_some(self.exceptional.as_slice())
    }

    /// Number of elements of a finite set.
    pub fn len(&self) -> Option<usize> {
        self.is_finite().then_some(self.exceptional.len())
    }

    /// Elements below `bound` as a new (finite) value set.
    pub fn truncate_below(&self, bound: i64) -> Self {
        Self::finite(self.elements_below(bound))
    }

    /// Elements at or above `bound`.
    pub fn truncate_from(&self, bound: i64) -> Self {
        let kept = self.exceptional.iter().copied().filter(|&e| e >= bound);
        let threshold = self.threshold.map(|t| t.max(bound));
        Self::new(kept, threshold)
    }

    pub fn shift(&self, e: i64) -> Self {
        Self {
            exceptional: self.exceptional.iter().map(|&x| x + e).collect(),
            threshold: self.threshold.map(|t| t + e),
        }
    }

    /// Upper bound below which the two sets can differ.
    fn horizon(&self, other: &Self) -> i64 {
        let a = self.min().unwrap_or(0).min(other.min().unwrap_or(0));
        let top = |s: &Self| s.threshold.or_else(|| s.exceptional.last().map(|&e| e + 1));
        top(self).unwrap_or(a).max(top(other).unwrap_or(a))
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        match (self.threshold, other.threshold) {
            (Some(_), None) => return false,
            (Some(t), Some(u)) if t < u && (t..u).any(|m| !other.contains(m)) => return false,
            _ => {}
        }
        self.exceptional.iter().all(|&e| other.contains(e))
    }

    pub fn union(&self, other: &Self) -> Self {
        let threshold = match (self.threshold, other.threshold) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        Self::new(
            self.exceptional.iter().chain(&other.exceptional).copied(),
            threshold,
        )
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let horizon = self.horizon(other);
        let threshold = match (self.threshold, other.threshold) {
            (Some(a), Some(b)) => Some(a.max(b).max(horizon)),
            _ => None,
        };
        let below = threshold.unwrap_or(horizon);
        let lo = self.min().unwrap_or(0).min(other.min().unwrap_or(0));
        let common = (lo..below).filter(|&m| self.contains(m) && other.contains(m));
        Self::new(common, threshold)
    }

    /// Elements of `self` not in `other`, when that difference is finite.
    pub fn difference(&self, other: &Self) -> Result<Vec<i64>> {
        let bound = match (self.threshold, other.threshold) {
            (Some(_), None) => return Err(Error::InfiniteQuotient),
            (Some(a), Some(b)) => a.max(b),
            (None, _) => self.exceptional.last().map_or(i64::MIN, |&e| e + 1),
        };
        Ok(self
            .elements_below(bound)
            .into_iter()
            .filter(|&m| !other.contains(m))
            .collect())
    }

    /// `{a + b : a in self, b in other}`.
    pub fn sumset(&self, other: &Self) -> Result<Self> {
        let (Some(min_a), Some(min_b)) = (self.min(), other.min()) else {
            return Err(Error::EmptySet);
        };
        // Everything from `hi` on is a sum once either operand has a tail.
        let hi = match (self.threshold, other.threshold) {
            (None, None) => None,
            (Some(t), None) => Some(t + min_b),
            (None, Some(u)) => Some(min_a + u),
            (Some(t), Some(u)) => Some((t + min_b).min(min_a + u)),
        };
        let lo = min_a + min_b;
        let (left, right) = match hi {
            Some(h) => (self.elements_below(h - min_b), other.elements_below(h - min_a)),
            None => (self.exceptional.clone(), other.exceptional.clone()),
        };
        let top = hi.unwrap_or_else(|| left.last().unwrap() + right.last().unwrap() + 1);
        let mut hit = vec![false; (top - lo) as usize];
        for &a in &left {
            for &b in &right {
                let s = a + b;
                if s < top {
                    hit[(s - lo) as usize] = true;
                }
            }
        }
        let sums = hit
            .iter()
            .enumerate()
            .filter(|(_, &h)| h)
            .map(|(i, _)| lo + i as i64);
        Ok(Self::new(sums, hi))
    }

    /// `self + ... + self` (`n` summands); `n = 0` gives `{0}`.
    pub fn n_fold(&self, n: usize) -> Result<Self> {
        if self.is_empty() {
            return Err(Error::EmptySet);
        }
        let mut acc = Self::finite([0]);
        for _ in 0..n {
            acc = acc.sumset(self)?;
        }
        Ok(acc)
    }

    /// Smallest superset of `self` closed under adding elements of `s`.
    pub fn module_closure(&self, s: &NumericalSemigroup) -> Result<Self> {
        self.module_closure_over(&Self::from_semigroup(s))
    }

    /// Module closure over a ring given by its value set (must contain 0).
    pub fn module_closure_over(&self, ring: &Self) -> Result<Self> {
        if !ring.contains(0) {
            return Err(Error::NotARing("0 missing from the ring".into()));
        }
        // A single sumset suffices because the ring is additively closed.
        self.sumset(ring)
    }

    /// Smallest additively closed subset of `N` containing `self`.
    pub fn ring_closure(&self) -> Result<Self> {
        if !self.contains(0) {
            return Err(Error::NotARing("0 is not a member".into()));
        }
        if self.min() != Some(0) {
            return Err(Error::NotARing("negative members".into()));
        }
        if self.is_finite() {
            let gens: Vec<i64> = self.exceptional.iter().copied().filter(|&e| e > 0).collect();
            if gens.is_empty() {
                return Ok(self.clone());
            }
            let s = NumericalSemigroup::from_generators(&gens)
                .map_err(|e| Error::NotARing(format!("closure is not co-finite: {e}")))?;
            return Ok(Self::from_semigroup(&s));
        }
        let mut cur = self.clone();
        loop {
            let next = cur.sumset(&cur)?;
            if next == cur {
                return Ok(cur);
            }
            cur = next;
        }
    }

    /// Reads a value set that is a numerical semigroup back as one.
    pub fn to_semigroup(&self) -> Result<NumericalSemigroup> {
        let Some(t) = self.threshold else {
            return Err(Error::NotARing("finite set".into()));
        };
        if self.min() != Some(0) || !self.is_additively_closed() {
            return Err(Error::NotARing(format!("{self} is not a numerical semigroup")));
        }
        let gaps: Vec<i64> = (1..t).filter(|&m| !self.contains(m)).collect();
        NumericalSemigroup::from_gaps(&gaps)
    }

    pub fn is_additively_closed(&self) -> bool {
        let Some(lo) = self.min() else { return true };
        if lo < 0 {
            return false;
        }
        match self.threshold {
            None => self.exceptional.iter().all(|&a| a == 0) || self.is_empty(),
            Some(t) => self
                .exceptional
                .iter()
                .all(|&a| self.exceptional.iter().all(|&b| a + b >= t || self.contains(a + b))),
        }
    }

    /// `dim(A / B)` for `B` inside `A`: the number of values of `A` missing
    /// from `B`.
    pub fn quotient_dim(&self, sub: &Self) -> Result<usize> {
        if !sub.is_subset(self) {
            return Err(Error::NotNested(format!("{sub} is not inside {self}")));
        }
        Ok(self.difference(sub)?.len())
    }
}

/// The canonical ideal `K = {d : alpha - d - 1 not in S}`: the value set of the
/// dualizing stalk after dividing by a differential of value `-alpha`.
pub fn canonical_ideal(s: &NumericalSemigroup) -> ValueSet {
    let alpha = s.conductor();
    ValueSet::new(
        (0..alpha).filter(|&d| !s.contains(alpha - d - 1)),
        Some(alpha),
    )
}

/// Values `{d : -d - 1 not in S}` of differentials regular at the point.
pub fn dualizing_values(s: &NumericalSemigroup) -> ValueSet {
    canonical_ideal(s).shift(-s.conductor())
}

impl fmt::Debug for ValueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ValueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "{{}}");
        }
        if !self.exceptional.is_empty() {
            write!(f, "{{")?;
            for (i, e) in self.exceptional.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, "}}")?;
        }
        if let Some(t) = self.threshold {
            if !self.exceptional.is_empty() {
                write!(f, "u")?;
            }
            write!(f, "[{t},oo)")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sg(gens: &[i64]) -> NumericalSemigroup {
        NumericalSemigroup::from_generators(gens).unwrap()
    }

    fn vs(ex: &[i64], t: i64) -> ValueSet {
        ValueSet::new(ex.iter().copied(), Some(t))
    }

    #[test]
    fn normalization() {
        let a = ValueSet::new([0, 1, 3, 5, 7, 9], Some(4));
        assert_eq!(a.exceptional(), &[0, 1]);
        assert_eq!(a.threshold(), Some(3));
        assert_eq!(ValueSet::new([0, 1, 2], Some(4)), vs(&[0, 1, 2], 4));
        assert_eq!(ValueSet::new([2, 3], Some(4)), ValueSet::ray(2));
        assert!(ValueSet::empty().is_empty());
        assert_eq!(ValueSet::empty().min(), None);
    }

    /// `{d in window : alpha - d - 1 not in S}` by direct test.
    fn direct_k(s: &NumericalSemigroup, lo: i64, hi: i64) -> Vec<i64> {
        let a = s.conductor();
        (lo..=hi).filter(|&d| !s.contains(a - d - 1)).collect()
    }

    #[test]
    fn canonical_ideal_examples() {
        let s = sg(&[3, 4, 5]);
        assert_eq!(direct_k(&s, -5, 4), vec![0, 1, 3, 4]);
        assert_eq!(canonical_ideal(&s), vs(&[0, 1], 3));

        let s = sg(&[2, 3]);
        assert_eq!(canonical_ideal(&s), vs(&[0], 2));
        assert_eq!(canonical_ideal(&s), ValueSet::from_semigroup(&s));

        let s = sg(&[5, 6, 7, 9]);
        assert_eq!(direct_k(&s, -3, 9), vec![0, 4, 5, 6, 7, 9]);
        assert_eq!(canonical_ideal(&s), vs(&[0, 4, 5, 6, 7], 9));
    }

    #[test]
    fn dualizing_values_examples() {
        assert_eq!(dualizing_values(&NumericalSemigroup::natural()), ValueSet::ray(0));
        assert_eq!(dualizing_values(&sg(&[3, 4, 5])), vs(&[-3, -2], 0));
        assert_eq!(dualizing_values(&sg(&[2, 7])), vs(&[-6, -4, -2], 0));
    }

    #[test]
    fn sumset_examples() {
        let k = vs(&[0, 1], 3);
        assert_eq!(k.sumset(&k).unwrap(), ValueSet::ray(0));
        let a = vs(&[0, 2, 4], 6);
        assert_eq!(a.n_fold(2).unwrap(), a);
        assert_eq!(a.n_fold(1).unwrap(), a);
        assert_eq!(
            ValueSet::finite([0, 1]).sumset(&ValueSet::finite([0, 1])).unwrap(),
            ValueSet::finite([0, 1, 2])
        );
        assert_eq!(
            ValueSet::finite([0, 4]).sumset(&ValueSet::ray(3)).unwrap(),
            ValueSet::ray(3)
        );
        assert_eq!(ValueSet::empty().sumset(&k), Err(Error::EmptySet));
        assert_eq!(ValueSet::empty().n_fold(2), Err(Error::EmptySet));
    }

    #[test]
    fn module_closure_examples() {
        let s = sg(&[3, 4, 5]);
        assert_eq!(
            ValueSet::finite([0]).module_closure(&s).unwrap(),
            ValueSet::from_semigroup(&s)
        );
        let k = vs(&[0, 1], 3);
        assert_eq!(k.module_closure(&s).unwrap(), k);
        let t = sg(&[2, 3]);
        assert_eq!(
            ValueSet::finite([5]).module_closure(&t).unwrap(),
            ValueSet::from_semigroup(&t).shift(5)
        );
    }

    #[test]
    fn ring_closure_examples() {
        assert_eq!(vs(&[0, 1], 3).ring_closure().unwrap(), ValueSet::ray(0));
        assert_eq!(vs(&[0, 4, 5, 6, 7], 9).ring_closure().unwrap(), vs(&[0], 4));
        let s = ValueSet::from_semigroup(&sg(&[5, 6, 7, 9]));
        assert_eq!(s.ring_closure().unwrap(), s);
        assert!(matches!(vs(&[1], 3).ring_closure(), Err(Error::NotARing(_))));
        assert!(matches!(vs(&[-1, 0], 3).ring_closure(), Err(Error::NotARing(_))));
        assert_eq!(
            ValueSet::finite([0, 3, 4]).ring_closure().unwrap(),
            ValueSet::from_semigroup(&sg(&[3, 4]))
        );
        assert!(ValueSet::finite([0, 2]).ring_closure().is_err());
    }

    #[test]
    fn quotient_dim_examples() {
        let (alpha, beta) = (6, 3);
        assert_eq!(
            ValueSet::ray(alpha).quotient_dim(&ValueSet::ray(2 * alpha - beta)).unwrap(),
            3
        );
        let k = canonical_ideal(&sg(&[4, 5, 11]));
        assert_eq!(k, vs(&[0, 1, 4, 5, 6], 8));
        assert_eq!(k.quotient_dim(&k).unwrap(), 0);
        assert_eq!(ValueSet::naturals().quotient_dim(&k).unwrap(), 3);
        assert_eq!(ValueSet::naturals().difference(&k).unwrap(), vec![2, 3, 7]);
        assert!(matches!(k.quotient_dim(&ValueSet::naturals()), Err(Error::NotNested(_))));
        assert_eq!(
            ValueSet::ray(0).quotient_dim(&ValueSet::finite([1])),
            Err(Error::InfiniteQuotient)
        );
    }

    #[test]
    fn shift_examples() {
        assert_eq!(ValueSet::ray(6).shift(-1), ValueSet::ray(5));
        assert_eq!(ValueSet::finite([0, 1]).shift(3), ValueSet::finite([3, 4]));
        let s = sg(&[2, 7]);
        assert_eq!(canonical_ideal(&s).shift(-6), dualizing_values(&s));
    }

    #[test]
    fn to_semigroup_round_trip() {
        let s = sg(&[3, 5, 7]);
        assert_eq!(ValueSet::from_semigroup(&s).to_semigroup().unwrap(), s);
        assert!(vs(&[0, 1], 3).to_semigroup().is_err());
    }

    fn arb_valueset() -> impl Strategy<Value = ValueSet> {
        (prop::collection::vec(-6i64..12, 0..8), prop::option::of(-4i64..14))
            .prop_filter_map("nonempty", |(ex, t)| {
                let v = ValueSet::new(ex, t);
                (!v.is_empty()).then_some(v)
            })
    }

    /// Membership of `a + b` by brute force over a window.
    fn brute_sum_contains(a: &ValueSet, b: &ValueSet, m: i64) -> bool {
        (-40..=m + 40).any(|x| a.contains(x) && b.contains(m - x))
    }

    proptest! {
        #[test]
        fn sumset_matches_brute_force(a in arb_valueset(), b in arb_valueset()) {
            let s = a.sumset(&b).unwrap();
            for m in -20..40 {
                prop_assert_eq!(s.contains(m), brute_sum_contains(&a, &b, m), "m = {}", m);
            }
            prop_assert_eq!(&s, &b.sumset(&a).unwrap());
        }

        #[test]
        fn normal_form_is_canonical(a in arb_valueset()) {
            if let Some(t) = a.threshold() {
                prop_assert!(!a.contains(t - 1));
                prop_assert!(a.exceptional().iter().all(|&e| e < t));
            }
            let rebuilt = ValueSet::new(a.elements_below(50), a.threshold().map(|_| 50));
            prop_assert_eq!(rebuilt, a);
        }

        #[test]
        fn set_ops_agree_with_membership(a in arb_valueset(), b in arb_valueset()) {
            let u = a.union(&b);
            let i = a.intersection(&b);
            for m in -20..40 {
                prop_assert_eq!(u.contains(m), a.contains(m) || b.contains(m));
                prop_assert_eq!(i.contains(m), a.contains(m) && b.contains(m));
            }
            prop_assert_eq!(a.is_subset(&b), (-20..40).all(|m| !a.contains(m) || b.contains(m)) && (a.is_finite() || !b.is_finite()));
        }

        #[test]
        fn module_closure_idempotent_and_monotone(gens in prop::collection::vec(2i64..9, 1..4), a in arb_valueset(), extra in -6i64..12) {
            let mut gens = gens;
            gens.push(11);
            gens.push(13);
            if let Ok(s) = NumericalSemigroup::from_generators(&gens) {
                let m = a.module_closure(&s).unwrap();
                prop_assert_eq!(m.module_closure(&s).unwrap(), m.clone());
                prop_assert!(a.is_subset(&m));
                let bigger = a.union(&ValueSet::finite([extra]));
                prop_assert!(m.is_subset(&bigger.module_closure(&s).unwrap()));
            }
        }

        #[test]
        fn n_fold_is_repeated_sumset(a in arb_valueset(), n in 1usize..4) {
            let direct = a.n_fold(n + 1).unwrap();
            let stepped = a.n_fold(n).unwrap().sumset(&a).unwrap();
            prop_assert_eq!(direct, stepped);
        }
    }
}
