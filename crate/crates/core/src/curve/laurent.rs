//! Truncated power series and polynomials with rational coefficients.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::linalg::Rational;

/// Product of two polynomials (coefficient vectors, lowest degree first).
pub fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// `(c + u)^m` as a polynomial in `u`.
pub fn binomial_power(c: &Rational, m: usize) -> Vec<Rational> {
    let mut out = vec![Rational::one()];
    for _ in 0..m {
        out = poly_mul(&out, &[c.clone(), Rational::one()]);
    }
    out
}

/// First `len` coefficients of `(d + u)^(-m)` for `d != 0`.
pub fn inverse_power(d: &Rational, m: usize, len: usize) -> Vec<Rational> {
    assert!(!d.is_zero(), "expansion point coincides with a pole");
    let inv = d.recip();
    // (d + u)^(-m) = d^(-m) * sum_k binom(m + k - 1, k) (-u / d)^k
    let mut coeff = num_traits::pow(inv.clone(), m);
    let mut out = Vec::with_capacity(len);
    for k in 0..len {
        out.push(coeff.clone());
        let ratio = Rational::new(BigInt::from(m + k), BigInt::from(k + 1));
        coeff = -(coeff * ratio * &inv);
    }
    out
}

/// Product of two series truncated to `len` terms.
pub fn series_mul(a: &[Rational], b: &[Rational], len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// Multiplies a series by `(c + u)` in place, dropping the term past its length.
pub fn mul_linear(series: &mut [Rational], c: &Rational) {
    for k in (0..series.len()).rev() {
        let lower = if k > 0 { series[k - 1].clone() } else { Rational::zero() };
        series[k] = &series[k] * c + lower;
    }
}
