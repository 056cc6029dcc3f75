//! Numerical semigroups: the value semigroups `S = v(O_P)` of unibranch points.
//!
//! Membership is answered from a bitmap of `[0, conductor)`; everything at or
//! above the conductor is in `S`.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NumericalSemigroup {
    generators: Vec<i64>,
    gaps: Vec<i64>,
    conductor: i64,
    multiplicity: i64,
    /// `below[m]` is membership of `m` for `0 <= m < conductor`.
    below: Vec<bool>,
}

impl NumericalSemigroup {
    /// The full semigroup `N` (a smooth point).
    pub fn natural() -> Self {
        Self::from_membership(Vec::new())
    }

    /// Builds the semigroup generated by `gens`, reducing to the minimal
    /// generating set.
    pub fn from_generators(gens: &[i64]) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        if let Some(&bad) = gens.iter().find(|&&g| g <= 0) {
            return Err(Error::NonPositiveGenerator(bad));
        }
        let d = gens.iter().fold(0i64, |acc, &g| acc.gcd(&g));
        if d != 1 {
            let mut sorted = gens.to_vec();
            sorted.sort_unstable();
            sorted.dedup();
            return Err(Error::NotCofinite(sorted, d));
        }

        let smallest = *gens.iter().min().unwrap();
        let mut member = vec![true];
        let mut run = 1i64;
        let mut m = 0i64;
        // A run of `smallest` consecutive members means everything after is in S.
        while run < smallest {
            m += 1;
            let is_member = gens
                .iter()
                .any(|&g| g <= m && member[(m - g) as usize]);
            member.push(is_member);
            run = if is_member { run + 1 } else { 0 };
        }
        let conductor = m + 1 - run;
        member.truncate(conductor.max(0) as usize);
        Ok(Self::from_membership(member))
    }

    /// Builds a semigroup from its gap set. Fails if the complement of `gaps`
    /// is not additively closed.
    pub fn from_gaps(gaps: &[i64]) -> Result<Self> {
        if let Some(&bad) = gaps.iter().find(|&&g| g <= 0) {
            return Err(Error::NotARing(format!("gap {bad} is not positive")));
        }
        let conductor = gaps.iter().max().map_or(0, |&f| f + 1);
        let mut member = vec![true; conductor as usize];
        for &g in gaps {
            member[g as usize] = false;
        }
        for a in 1..conductor {
            if !member[a as usize] {
                continue;
            }
            for b in a..conductor - a {
                if member[b as usize] && !member[(a + b) as usize] {
                    return Err(Error::NotARing(format!("{a} + {b} is a gap")));
                }
            }
        }
        Ok(Self::from_membership(member))
    }

    /// `below` must be the membership bitmap of `[0, conductor)` of a valid
    /// semigroup whose last entry (if any) is `false`.
    pub(crate) fn from_membership(below: Vec<bool>) -> Self {
        let conductor = below.len() as i64;
        let is_member = |m: i64| m >= conductor || below[m as usize];
        let gaps: Vec<i64> = (1..conductor).filter(|&m| !is_member(m)).collect();
        let multiplicity = (1..=conductor.max(1)).find(|&m| is_member(m)).unwrap();

        // Minimal generators are the nonzero elements that are not sums of two
        // nonzero elements; none exceeds conductor + multiplicity.
        let generators = (1..=conductor + multiplicity)
            .filter(|&s| is_member(s))
            .filter(|&s| !(multiplicity..=s / 2).any(|a| is_member(a) && is_member(s - a)))
            .collect();

        Self {
            generators,
            gaps,
            conductor,
            multiplicity,
            below,
        }
    }

    pub fn generators(&self) -> &[i64] {
        &self.generators
    }

    pub fn gaps(&self) -> &[i64] {
        &self.gaps
    }

    /// Least `c` with `[c, oo)` contained in `S` (the conductor exponent `alpha`).
    pub fn conductor(&self) -> i64 {
        self.conductor
    }

    /// Least positive element (`beta`, the multiplicity of the point).
    pub fn multiplicity(&self) -> i64 {
        self.multiplicity
    }

    /// Largest gap, or `-1` for `N`.
    pub fn frobenius(&self) -> i64 {
        self.conductor - 1
    }

    /// Number of gaps; the delta-invariant of the singularity.
    pub fn genus(&self) -> usize {
        self.gaps.len()
    }

    pub fn is_natural(&self) -> bool {
        self.conductor == 0
    }

    pub fn contains(&self, m: i64) -> bool {
        if m < 0 {
            false
        } else if m >= self.conductor {
            true
        } else {
            self.below[m as usize]
        }
    }

    /// Elements of `S` below the conductor, `n(S)` of them.
    pub fn small_elements(&self) -> impl Iterator<Item = i64> + '_ {
        (0..self.conductor).filter(move |&m| self.below[m as usize])
    }

    /// Pseudo-Frobenius numbers: gaps `x` with `x + s` in `S` for every
    /// nonzero `s` in `S`. Their count is the type of `S`.
    pub fn pseudo_frobenius(&self) -> Result<Vec<i64>> {
        if self.is_natural() {
            return Err(Error::NoSingularity);
        }
        // x + s >= conductor for s >= conductor, so only small s matter.
        let nonzero: Vec<i64> = self.small_elements().skip(1).collect();
        Ok(self
            .gaps
            .iter()
            .copied()
            .filter(|&x| nonzero.iter().all(|&s| self.contains(x + s)))
            .collect())
    }

    pub fn type_number(&self) -> usize {
        self.pseudo_frobenius().map_or(0, |pf| pf.len())
    }

    pub fn is_symmetric(&self) -> bool {
        2 * self.genus() as i64 == self.conductor
    }

    /// `g = n(S) + t(S) - 1`; symmetric semigroups (including `N`) qualify.
    pub fn is_almost_gorenstein(&self) -> bool {
        if self.is_symmetric() {
            return true;
        }
        let n = self.small_elements().count();
        self.genus() + 1 == n + self.type_number()
    }

    /// Ordering by genus, then lexicographically by gap list.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.genus()
            .cmp(&other.genus())
            .then_with(|| self.gaps.cmp(&other.gaps))
    }

    /// Children in the semigroup tree: remove one minimal generator above the
    /// Frobenius number.
    fn children(&self) -> impl Iterator<Item = NumericalSemigroup> + '_ {
        self.generators
            .iter()
            .copied()
            .filter(move |&x| x > self.frobenius())
            .map(move |x| {
                let mut below: Vec<bool> = (0..x).map(|m| self.contains(m)).collect();
                below.push(false);
                NumericalSemigroup::from_membership(below)
            })
    }
}

/// Every numerical semigroup with genus at most `max_genus` and multiplicity at
/// least `min_multiplicity`, in canonical order (genus, then gap list).
pub fn enumerate(max_genus: usize, min_multiplicity: i64) -> Vec<NumericalSemigroup> {
    let mut out = Vec::new();
    let mut stack = vec![NumericalSemigroup::natural()];
    while let Some(s) = stack.pop() {
        if s.genus() < max_genus {
            // Descendants keep the multiplicity unless it sits above the Frobenius number.
            let prune = s.multiplicity < min_multiplicity && s.multiplicity < s.conductor;
            if !prune {
                stack.extend(s.children());
            }
        }
        if s.multiplicity >= min_multiplicity {
            out.push(s);
        }
    }
    out.sort_by(|a, b| a.canonical_cmp(b));
    out
}

impl fmt::Debug for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

impl Serialize for NumericalSemigroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("NumericalSemigroup", 5)?;
        st.serialize_field("generators", &self.generators)?;
        st.serialize_field("gaps", &self.gaps)?;
        st.serialize_field("alpha", &self.conductor)?;
        st.serialize_field("beta", &self.multiplicity)?;
        st.serialize_field("genus", &self.genus())?;
        st.end()
    }
}
