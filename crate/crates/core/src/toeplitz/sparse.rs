use std::collections::BTreeMap;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

/// Square sparse matrix in coordinate form, entries sorted by `(row, col)`
/// with no duplicates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SparseOperator {
    pub dimension: usize,
    pub entries: Vec<(usize, usize, f64)>,
}

impl SparseOperator {
    /// Builds an operator, summing duplicate coordinates and dropping zeros.
    pub fn from_triplets(dimension: usize, triplets: impl IntoIterator<Item = (usize, usize, f64)>) -> Self {
        let mut acc: BTreeMap<(usize, usize), f64> = BTreeMap::new();
        for (r, c, v) in triplets {
            assert!(r < dimension && c < dimension, "entry ({r},{c}) outside dimension {dimension}");
            *acc.entry((r, c)).or_insert(0.0) += v;
        }
        let entries = acc.into_iter().filter(|&(_, v)| v != 0.0).map(|((r, c), v)| (r, c, v)).collect();
        Self { dimension, entries }
    }

    pub fn zero(dimension: usize) -> Self {
        Self { dimension, entries: Vec::new() }
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn transpose(&self) -> Self {
        Self::from_triplets(self.dimension, self.entries.iter().map(|&(r, c, v)| (c, r, v)))
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self::from_triplets(self.dimension, self.entries.iter().map(|&(r, c, v)| (r, c, v * factor)))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dimension, other.dimension);
        Self::from_triplets(self.dimension, self.entries.iter().chain(&other.entries).copied())
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dimension, other.dimension);
        let mut rows: Vec<Vec<(usize, f64)>> = vec![Vec::new(); other.dimension];
        for &(r, c, v) in &other.entries {
            rows[r].push((c, v));
        }
        let triplets = self
            .entries
            .iter()
            .flat_map(|&(r, k, a)| rows[k].iter().map(move |&(c, b)| (r, c, a * b)));
        Self::from_triplets(self.dimension, triplets)
    }

    /// `y = A x`, summed in entry order.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.dimension];
        for &(r, c, v) in &self.entries {
            y[r] += v * x[c];
        }
        y
    }

    /// `y = A^T x`, summed in entry order.
    pub fn apply_transpose(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.dimension];
        for &(r, c, v) in &self.entries {
            y[c] += v * x[r];
        }
        y
    }

    pub fn diagonal(&self) -> Vec<f64> {
        let mut d = vec![0.0; self.dimension];
        for &(r, c, v) in &self.entries {
            if r == c {
                d[r] = v;
            }
        }
        d
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.dimension, self.dimension);
        for &(r, c, v) in &self.entries {
            m[(r, c)] = v;
        }
        m
    }
}
