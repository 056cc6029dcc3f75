//! Exact dense linear algebra over the rationals.
//!
//! Elimination runs on primitive integer rows (each row scaled to integers
//! and divided by its content); rows are turned back into rationals only at
//! the end, when the pivots are normalized to 1.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    cols: usize,
    rows: Vec<Vec<Rational>>,
}

impl Matrix {
    pub fn new(cols: usize, rows: Vec<Vec<Rational>>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::AmbientMismatch(bad.len(), cols));
        }
        Ok(Self { cols, rows })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| rational(x)).collect())
            .collect();
        Self::new(cols, rows).expect("ragged matrix")
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: vec![vec![Rational::zero(); cols]; rows],
        }
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn col_count(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }
}

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = row
        .iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect();
    primitive(ints)
}

fn primitive(mut row: Vec<BigInt>) -> Vec<BigInt> {
    let content = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !content.is_zero() && !content.is_one() {
        for x in &mut row {
            *x /= &content;
        }
    }
    row
}

/// Reduced row-echelon form of `rows` with zero rows dropped, plus pivot columns.
fn echelon(rows: Vec<Vec<BigInt>>, cols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut rows: Vec<Vec<BigInt>> = rows
        .into_iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..cols {
        if next == rows.len() {
            break;
        }
        // Smallest pivot keeps the integer entries short.
        let Some(p) = (next..rows.len())
            .filter(|&i| !rows[i][col].is_zero())
            .min_by_key(|&i| rows[i][col].bits())
        else {
            continue;
        };
        rows.swap(next, p);
        let pivot_row = rows[next].clone();
        let a = &pivot_row[col];
        for (i, row) in rows.iter_mut().enumerate() {
            if i == next || row[col].is_zero() {
                continue;
            }
            let g = a.gcd(&row[col]);
            let (ma, mb) = (a / &g, &row[col] / &g);
            let combined: Vec<BigInt> = row
                .iter()
                .zip(&pivot_row)
                .map(|(x, y)| x * &ma - y * &mb)
                .collect();
            *row = primitive(combined);
        }
        pivots.push(col);
        next += 1;
    }
    rows.truncate(next);
    let out = rows
        .into_iter()
        .zip(&pivots)
        .map(|(row, &c)| {
            let lead = row[c].clone();
            row.into_iter()
                .map(|x| Rational::new(x, lead.clone()))
                .collect()
        })
        .collect();
    (out, pivots)
}

/// Canonical reduced row-echelon form (zero rows kept at the bottom) and rank.
pub fn rref(m: &Matrix) -> (Matrix, usize) {
    let ints = m.rows.iter().map(|r| integer_row(r)).collect();
    let (mut rows, pivots) = echelon(ints, m.cols);
    let rank = pivots.len();
    rows.resize(m.rows.len(), vec![Rational::zero(); m.cols]);
    (Matrix { cols: m.cols, rows }, rank)
}

/// Basis of `{x : M x = 0}`.
pub fn nullspace(m: &Matrix) -> Subspace {
    let ints = m.rows.iter().map(|r| integer_row(r)).collect();
    let (rows, pivots) = echelon(ints, m.cols);
    let free = (0..m.cols).filter(|c| !pivots.contains(c));
    let basis = free
        .map(|f| {
            let mut v = vec![Rational::zero(); m.cols];
            v[f] = Rational::one();
            for (row, &p) in rows.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect();
    Subspace::span(m.cols, basis).expect("nullspace vectors have matching length")
}

/// A subspace of `Q^ambient`, stored by its reduced row-echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![Rational::zero(); ambient];
                v[i] = Rational::one();
                v
            })
            .collect();
        Self {
            ambient,
            basis,
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span(ambient: usize, vectors: Vec<Vec<Rational>>) -> Result<Self> {
        if let Some(bad) = vectors.iter().find(|v| v.len() != ambient) {
            return Err(Error::AmbientMismatch(bad.len(), ambient));
        }
        let ints = vectors.iter().map(|v| integer_row(v)).collect();
        let (basis, pivots) = echelon(ints, ambient);
        Ok(Self {
            ambient,
            basis,
            pivots,
        })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Whether `v` lies in the subspace, by reduction against the echelon basis.
    pub fn contains_vector(&self, v: &[Rational]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::AmbientMismatch(v.len(), self.ambient));
        }
        let mut r = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if r[p].is_zero() {
                continue;
            }
            let c = r[p].clone();
            for (x, y) in r.iter_mut().zip(row) {
                *x -= &c * y;
            }
        }
        Ok(r.iter().all(|x| x.is_zero()))
    }

    /// `other` is a subspace of `self`.
    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        if other.ambient != self.ambient {
            return Err(Error::AmbientMismatch(other.ambient, self.ambient));
        }
        if other.dim() > self.dim() {
            return Ok(false);
        }
        for v in &other.basis {
            if !self.contains_vector(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equal(&self, other: &Subspace) -> Result<bool> {
        if other.ambient != self.ambient {
            return Err(Error::AmbientMismatch(other.ambient, self.ambient));
        }
        Ok(self == other)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        if other.ambient != self.ambient {
            return Err(Error::AmbientMismatch(other.ambient, self.ambient));
        }
        let vectors = self.basis.iter().chain(&other.basis).cloned().collect();
        Subspace::span(self.ambient, vectors)
    }
}
