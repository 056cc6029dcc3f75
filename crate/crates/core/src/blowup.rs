//! The blowup `Ô_P` of a unibranch point along the dualizing module, on value
//! sets: the powers `K^n` of the canonical ideal increase and stabilize at the
//! smallest ring containing `K`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::semigroup::NumericalSemigroup;
use crate::valueset::{canonical_ideal, ValueSet};

/// Largest power checked when comparing module closures with plain powers.
pub const POWER_CHECK_BOUND: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlowupAnalysis {
    pub semigroup: NumericalSemigroup,
    pub canonical: ValueSet,
    /// Values of `Ô_P`.
    pub ohat: ValueSet,
    /// Least `n` with `K^n = Ô`.
    pub stabilization_index: usize,
    /// `K^1, K^2, ...` up to and including the stable power.
    pub chain: Vec<ValueSet>,
    /// Values of `(Ôω)_P / x`: the `Ô`-module generated by `K`.
    pub omega_hat: ValueSet,
    /// `|K \ S|`, the colength of `O_P x` in `ω_P`.
    pub eta: usize,
    pub genus_hat: usize,
}

pub fn analyze(s: &NumericalSemigroup) -> Result<BlowupAnalysis> {
    let k = canonical_ideal(s);
    let ohat = k.ring_closure()?;
    let mut chain = vec![k.clone()];
    while chain.last() != Some(&ohat) {
        let next = chain.last().unwrap().sumset(&k)?;
        debug_assert!(next != *chain.last().unwrap(), "power chain stalled below Ô");
        chain.push(next);
    }
    let omega_hat = k.module_closure_over(&ohat)?;
    let eta = k.quotient_dim(&ValueSet::from_semigroup(s))?;
    let genus_hat = ohat.to_semigroup()?.genus();
    Ok(BlowupAnalysis {
        semigroup: s.clone(),
        stabilization_index: chain.len(),
        canonical: k,
        ohat,
        chain,
        omega_hat,
        eta,
        genus_hat,
    })
}

impl BlowupAnalysis {
    /// `dim(Ô / V)` on values.
    pub fn colength(&self) -> usize {
        self.ohat
            .quotient_dim(&self.canonical)
            .expect("K lies in its ring closure")
    }

    /// `K^n`, reusing the stable value past the stabilization index.
    pub fn power(&self, n: usize) -> &ValueSet {
        assert!(n >= 1);
        &self.chain[(n - 1).min(self.chain.len() - 1)]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NearlyGorensteinChecks {
    /// `g = n(S) + t(S) - 1`.
    pub ag: bool,
    /// `dim((Ôω)_P / ω_P) = 1`.
    pub gap_one: bool,
    /// `V^2 = Ô`.
    pub vsq_is_ohat: bool,
    /// The `Ô`-module generated by `V^n` is `V^n` for `2 <= n <= POWER_CHECK_BOUND`.
    pub powers_collapse: bool,
    pub colength: usize,
}

impl NearlyGorensteinChecks {
    /// `ag <=> gap_one`, and `ag` forces the other two flags.
    pub fn consistent(&self) -> bool {
        self.ag == self.gap_one && (!self.ag || (self.vsq_is_ohat && self.powers_collapse))
    }
}

pub fn nearly_gorenstein_local_checks(s: &NumericalSemigroup) -> Result<NearlyGorensteinChecks> {
    if s.is_symmetric() {
        return Err(Error::NotApplicable(format!("{s} is symmetric")));
    }
    let a = analyze(s)?;
    let colength = a.omega_hat.quotient_dim(&a.canonical)?;
    let powers_collapse = (2..=POWER_CHECK_BOUND).all(|n| {
        let p = a.power(n);
        p.module_closure_over(&a.ohat).as_ref() == Ok(p)
    });
    Ok(NearlyGorensteinChecks {
        ag: s.is_almost_gorenstein(),
        gap_one: colength == 1,
        vsq_is_ohat: *a.power(2) == a.ohat,
        powers_collapse,
        colength,
    })
}

/// `g - ĝ`: how much the genus drops on passing to the blowup.
pub fn genus_drop(s: &NumericalSemigroup) -> Result<usize> {
    if s.is_symmetric() {
        return Err(Error::NotApplicable(format!("{s} is symmetric")));
    }
    let a = analyze(s)?;
    Ok(s.genus() - a.genus_hat)
}
