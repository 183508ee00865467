//! Forward differences of real sequences and numerical complete-monotonicity
//! checks on finite prefixes.
//!
//! `Δ⁰aₙ = aₙ` and `Δᵏaₙ = Δᵏ⁻¹aₙ - Δᵏ⁻¹aₙ₊₁`. A prefix `a_0..a_N` can only
//! constrain the differences with `n + k ≤ N`, so a passing verdict means the
//! prefix is consistent with complete monotonicity, not that the infinite
//! sequence is completely monotone.

use crate::measure::{Measure, MeasureError};
use serde::Serialize;
use thiserror::Error;

/// `|a_0 - 1|` below which a sequence counts as normalized.
pub const NORMALIZED_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SequenceError {
    #[error("sequence must contain at least one value")]
    Empty,
    #[error("difference Δ^{k} a_{n} needs n + k <= {max}")]
    IndexOutOfRange { k: usize, n: usize, max: usize },
    #[error("sequences have different lengths ({left} and {right})")]
    LengthMismatch { left: usize, right: usize },
    #[error(transparent)]
    Measure(#[from] MeasureError),
}

/// Finite real prefix `a_0..a_N`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSequence {
    values: Vec<f64>,
    normalized: bool,
}

impl MomentSequence {
    pub fn new(values: Vec<f64>) -> Result<Self, SequenceError> {
        let first = *values.first().ok_or(SequenceError::Empty)?;
        Ok(Self {
            normalized: (first - 1.0).abs() <= NORMALIZED_TOL,
            values,
        })
    }

    /// Moments `a_0..a_{len-1}` of `mu`.
    pub fn from_measure(mu: &Measure, len: usize) -> Result<Self, SequenceError> {
        Self::new(mu.moments(len)?)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// Index N of the last entry.
    pub fn order(&self) -> usize {
        self.values.len() - 1
    }

    pub fn difference_table(&self) -> DifferenceTable {
        DifferenceTable::build(&self.values)
    }

    pub fn forward_difference(&self, k: usize, n: usize) -> Result<f64, SequenceError> {
        self.difference_table().get(k, n)
    }

    /// Checks `Δᵏaₙ ≥ -tol` for all `n + k ≤ N`, reporting the first failure
    /// in (k, n) lexicographic order. Negative `tol` is treated as 0.
    pub fn is_completely_monotone(&self, tol: f64) -> CmVerdict {
        self.difference_table().check(tol.max(0.0))
    }

    /// Coefficientwise product `{aₙ bₙ}`.
    pub fn hadamard(&self, other: &MomentSequence) -> Result<MomentSequence, SequenceError> {
        if self.values.len() != other.values.len() {
            return Err(SequenceError::LengthMismatch {
                left: self.values.len(),
                right: other.values.len(),
            });
        }
        MomentSequence::new(self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect())
    }
}

/// Triangular table `D[k][n] = Δᵏaₙ`, `n + k ≤ N`, filled row by row with
/// `D[k][n] = D[k-1][n] - D[k-1][n+1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DifferenceTable {
    rows: Vec<Vec<f64>>,
}

impl DifferenceTable {
    pub fn build(values: &[f64]) -> Self {
        let mut rows = vec![values.to_vec()];
        for k in 1..values.len() {
            let prev = &rows[k - 1];
            let row = prev.windows(2).map(|w| w[0] - w[1]).collect();
            rows.push(row);
        }
        Self { rows }
    }

    pub fn order(&self) -> usize {
        self.rows[0].len() - 1
    }

    pub fn get(&self, k: usize, n: usize) -> Result<f64, SequenceError> {
        self.rows
            .get(k)
            .and_then(|row| row.get(n))
            .copied()
            .ok_or(SequenceError::IndexOutOfRange {
                k,
                n,
                max: self.order(),
            })
    }

    pub fn row(&self, k: usize) -> Option<&[f64]> {
        self.rows.get(k).map(Vec::as_slice)
    }

    fn check(&self, tol: f64) -> CmVerdict {
        for (k, row) in self.rows.iter().enumerate() {
            for (n, &value) in row.iter().enumerate() {
                if !(value >= -tol) {
                    return CmVerdict::Violated { k, n, value };
                }
            }
        }
        CmVerdict::Holds {
            checked_order: self.order(),
        }
    }
}

/// Outcome of a prefix complete-monotonicity check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum CmVerdict {
    /// Every difference with `n + k ≤ checked_order` passed; the prefix is
    /// feasible, which is not a proof for the full sequence.
    Holds {
        checked_order: usize,
    },
    Violated {
        k: usize,
        n: usize,
        value: f64,
    },
}

impl CmVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, CmVerdict::Holds { .. })
    }
}

pub(crate) fn binomial(k: usize, j: usize) -> f64 {
    let j = j.min(k - j);
    let mut acc: u128 = 1;
    for i in 0..j {
        acc = acc * (k - i) as u128 / (i + 1) as u128;
    }
    acc as f64
}

/// `Σ_{j=0}^{k} C(k,j) Δᵏ⁻ʲaₙ₊ⱼ Δʲbₙ`, the product rule for iterated
/// differences of `{aₙbₙ}`.
///
/// Evaluation order is fixed: j ascending, each term formed as
/// `(C(k,j) * Δᵏ⁻ʲaₙ₊ⱼ) * Δʲbₙ` and accumulated left to right starting
/// from 0.0.
pub fn leibniz_difference(a: &MomentSequence, b: &MomentSequence, k: usize, n: usize) -> Result<f64, SequenceError> {
    if a.values.len() != b.values.len() {
        return Err(SequenceError::LengthMismatch {
            left: a.values.len(),
            right: b.values.len(),
        });
    }
    let da = a.difference_table();
    let db = b.difference_table();
    let mut sum = 0.0;
    for j in 0..=k {
        let term = binomial(k, j) * da.get(k - j, n + j)? * db.get(j, n)?;
        sum += term;
    }
    Ok(sum)
}
