use serde::Serialize;

use super::{ConeBall, SparseOperator};
use crate::error::{Error, Result};
use crate::graph::NormalWord;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormOptions {
    /// Relative change of the Rayleigh quotient at which iteration stops.
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for NormOptions {
    fn default() -> Self {
        Self { tolerance: 1e-9, max_iterations: 10_000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormEstimate {
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormCurvePoint {
    pub degree: usize,
    pub ball_size: usize,
    pub norm_estimate: f64,
}

fn convolution(ball: &ConeBall, weights: &[(NormalWord, f64)]) -> Result<SparseOperator> {
    let mut total = 0.0;
    for (x, w) in weights {
        if !(*w >= 0.0) {
            return Err(Error::NegativeWeight(*w));
        }
        if !ball.graph().is_positive(x) {
            return Err(Error::NotPositive);
        }
        if !ball.contains(x) {
            return Err(Error::OutsideBall);
        }
        total += w;
    }
    if total == 0.0 {
        return Err(Error::EmptySupport);
    }
    let mut op = SparseOperator::zero(ball.len());
    for (x, w) in weights.iter().filter(|(_, w)| *w > 0.0) {
        op = op.add(&ball.toeplitz_op(x)?.scaled(*w));
    }
    Ok(op)
}

/// Largest singular value of the compression of `Σ λ_x T_x` to the ball,
/// by power iteration on `A*A` from the normalized all-ones vector.
pub fn norm_estimate(ball: &ConeBall, weights: &[(NormalWord, f64)], options: NormOptions) -> Result<NormEstimate> {
    let a = convolution(ball, weights)?;
    let dim = ball.len();
    let mut v = vec![1.0 / (dim as f64).sqrt(); dim];
    let mut previous = f64::NAN;
    let mut rayleigh = 0.0;
    for iteration in 1..=options.max_iterations {
        let u = a.apply_transpose(&a.apply(&v));
        rayleigh = dot(&v, &u);
        let norm = dot(&u, &u).sqrt();
        if norm == 0.0 {
            return Ok(NormEstimate { value: 0.0, iterations: iteration, converged: true });
        }
        if (rayleigh - previous).abs() <= options.tolerance * rayleigh.abs() {
            return Ok(NormEstimate { value: rayleigh.sqrt(), iterations: iteration, converged: true });
        }
        previous = rayleigh;
        v = u.into_iter().map(|x| x / norm).collect();
    }
    Ok(NormEstimate { value: rayleigh.sqrt(), iterations: options.max_iterations, converged: false })
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Norm estimates on the nested balls of radius `min_degree..=ball.max_degree()`.
pub fn norm_curve(
    ball: &ConeBall,
    weights: &[(NormalWord, f64)],
    min_degree: usize,
    options: NormOptions,
) -> Result<Vec<NormCurvePoint>> {
    (min_degree..=ball.max_degree())
        .map(|n| {
            let sub = ball.truncate(n);
            let est = norm_estimate(&sub, weights, options)?;
            Ok(NormCurvePoint { degree: n, ball_size: sub.len(), norm_estimate: est.value })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factors::{ArtinMonoid, FactorElement, FactorSpec};
    use crate::graph::{CommutationGraph, Vertex};
    use crate::toeplitz::{enumerate_ball, DEFAULT_MAX_BALL};

    #[test]
    fn free_pair_has_norm_half_root_two() {
        let g = CommutationGraph::right_angled(&["a", "b"], &[]).unwrap();
        let w: Vec<_> = g.generators().into_iter().map(|x| (x, 0.5)).collect();
        let ball = enumerate_ball(&g, 5, DEFAULT_MAX_BALL).unwrap();
        for p in norm_curve(&ball, &w, 1, NormOptions::default()).unwrap() {
            assert!((p.norm_estimate - 0.5f64.sqrt()).abs() < 1e-9, "{p:?}");
        }
    }

    #[test]
    fn braid_curve_matches_dense_singular_values() {
        let m = ArtinMonoid::braid(3).unwrap();
        let g = CommutationGraph::new(vec![Vertex::new("B", FactorSpec::artin(m))], &[]).unwrap();
        let w: Vec<_> = g.generators().into_iter().map(|x| (x, 0.5)).collect();
        let ball = enumerate_ball(&g, 8, DEFAULT_MAX_BALL).unwrap();
        let curve = norm_curve(&ball, &w, 2, NormOptions::default()).unwrap();
        // Largest singular values from a dense SVD of the same matrices.
        let dense = [
            0.7071067811865476,
            0.8660254037844386,
            0.9238795325112867,
            0.9238795325112867,
            0.9510565162951536,
            0.9659258262890681,
            0.9659258262890684,
        ];
        for (p, expected) in curve.iter().zip(dense) {
            assert!((p.norm_estimate - expected).abs() < 1e-6, "{p:?}");
        }
        assert_eq!(curve.iter().map(|p| p.ball_size).collect::<Vec<_>>(), [7, 14, 26, 46, 79, 133, 221]);
    }

    #[test]
    fn weight_validation() {
        let g = CommutationGraph::right_angled(&["a"], &[]).unwrap();
        let ball = enumerate_ball(&g, 2, DEFAULT_MAX_BALL).unwrap();
        let a = g.generators().remove(0);
        let opts = NormOptions::default();
        assert_eq!(norm_estimate(&ball, &[], opts).unwrap_err(), Error::EmptySupport);
        assert_eq!(norm_estimate(&ball, &[(a.clone(), -1.0)], opts).unwrap_err(), Error::NegativeWeight(-1.0));
        let a3 = g.syllable(0, FactorElement::Int(3)).unwrap();
        assert_eq!(norm_estimate(&ball, &[(a3, 1.0)], opts).unwrap_err(), Error::OutsideBall);
        let est = norm_estimate(&ball, &[(a, 1.0)], opts).unwrap();
        assert!((est.value - 1.0).abs() < 1e-12);
    }
}
