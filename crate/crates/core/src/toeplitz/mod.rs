//! Truncated Toeplitz operators on a finite ball of the positive cone.
//!
//! The ball `{x ∈ P : deg x ≤ n}` spans a finite subspace of `ℓ²(P)` with
//! basis `ε_x`. Every operator here is the compression `P_n T P_n` of the
//! corresponding operator on the full space. Because the degree is additive
//! and strictly positive on nontrivial positives, the ball is closed under
//! taking left and right factors, so `T_x*` and every range projection
//! `T_x T_x*` are compressed without error.

mod norm;
mod representation;
mod sparse;

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::factors::Join;
use crate::graph::{CommutationGraph, NormalWord};

pub use norm::{norm_curve, norm_estimate, NormCurvePoint, NormEstimate, NormOptions};
pub use representation::{
    check_graph_relations, extend_representation, CMatrix, RelationCheckOptions, RelationReport, RelationViolation,
    Representation,
};
pub use sparse::SparseOperator;

/// Default cap on the number of elements in a ball.
pub const DEFAULT_MAX_BALL: usize = 200_000;

/// The positives of degree at most `max_degree`, sorted by `(degree, word)`.
#[derive(Debug, Clone)]
pub struct ConeBall {
    graph: CommutationGraph,
    max_degree: usize,
    elements: Vec<NormalWord>,
    index: HashMap<NormalWord, usize>,
}

/// Enumerates the ball of radius `n` by breadth-first right multiplication
/// with the cone generators.
pub fn enumerate_ball(graph: &CommutationGraph, n: usize, max_ball: usize) -> Result<ConeBall> {
    let generators = graph.generators();
    let mut seen: HashSet<NormalWord> = HashSet::new();
    seen.insert(NormalWord::identity());
    let mut frontier = vec![NormalWord::identity()];
    for _ in 0..n {
        let products: Vec<Vec<NormalWord>> = frontier
            .par_iter()
            .map(|x| generators.iter().map(|g| graph.multiply(x, g)).collect())
            .collect();
        let mut next = Vec::new();
        for y in products.into_iter().flatten() {
            if seen.insert(y.clone()) {
                next.push(y);
            }
        }
        if seen.len() > max_ball {
            return Err(Error::BallTooLarge(max_ball));
        }
        frontier = next;
    }
    let mut elements: Vec<NormalWord> = seen.into_iter().collect();
    elements.sort();
    Ok(ConeBall::from_sorted(graph.clone(), n, elements))
}

impl ConeBall {
    fn from_sorted(graph: CommutationGraph, max_degree: usize, elements: Vec<NormalWord>) -> Self {
        let index = elements.iter().enumerate().map(|(i, x)| (x.clone(), i)).collect();
        Self { graph, max_degree, elements, index }
    }

    pub fn graph(&self) -> &CommutationGraph {
        &self.graph
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn elements(&self) -> &[NormalWord] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, x: &NormalWord) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn contains(&self, x: &NormalWord) -> bool {
        self.index.contains_key(x)
    }

    /// Degree of each basis element, in basis order.
    pub fn degrees(&self) -> Vec<usize> {
        self.elements.iter().map(|x| x.degree() as usize).collect()
    }

    /// The sub-ball of radius `n ≤ max_degree`, a prefix of this one.
    pub fn truncate(&self, n: usize) -> ConeBall {
        let n = n.min(self.max_degree);
        let end = self.elements.partition_point(|x| x.degree() as usize <= n);
        Self::from_sorted(self.graph.clone(), n, self.elements[..end].to_vec())
    }

    fn require_positive(&self, x: &NormalWord) -> Result<()> {
        if self.graph.is_positive(x) {
            Ok(())
        } else {
            Err(Error::NotPositive)
        }
    }

    /// The compression of `T_x`: entries `(idx(xy), idx(y)) = 1`.
    pub fn toeplitz_op(&self, x: &NormalWord) -> Result<SparseOperator> {
        self.require_positive(x)?;
        let triplets: Vec<(usize, usize, f64)> = self
            .elements
            .par_iter()
            .enumerate()
            .filter_map(|(j, y)| {
                if x.degree() + y.degree() > self.max_degree as i64 {
                    return None;
                }
                self.index_of(&self.graph.multiply(x, y)).map(|i| (i, j, 1.0))
            })
            .collect();
        Ok(SparseOperator::from_triplets(self.len(), triplets))
    }

    /// The compression of `T_x*`, the transpose of [`ConeBall::toeplitz_op`].
    pub fn toeplitz_adjoint(&self, x: &NormalWord) -> Result<SparseOperator> {
        Ok(self.toeplitz_op(x)?.transpose())
    }

    /// Diagonal of `T_x T_x*`: entry `z` is true iff `x ≤ z`.
    pub fn range_projection_diag(&self, x: &NormalWord) -> Result<Vec<bool>> {
        self.require_positive(x)?;
        Ok(self.elements.par_iter().map(|z| self.graph.leq(x, z)).collect())
    }

    /// Checks `T_x T_x* T_y T_y* = T_{x∨y} T_{x∨y}*` pointwise on the ball.
    pub fn covariance_check(&self, x: &NormalWord, y: &NormalWord) -> Result<CovarianceReport> {
        let px = self.range_projection_diag(x)?;
        let py = self.range_projection_diag(y)?;
        let lub = self.graph.lub(x, y)?;
        let pl = match &lub {
            Join::Finite(l) => self.range_projection_diag(l)?,
            Join::Infinity => vec![false; self.len()],
        };
        Ok(CovarianceReport::compare(self, x, y, lub, &px, &py, &pl))
    }

    /// Diagonal of `∏_{x ∈ F} (1 − T_x T_x*)`.
    pub fn defect_product(&self, family: &[NormalWord]) -> Result<DefectReport> {
        if family.is_empty() {
            return Err(Error::EmptySupport);
        }
        let mut diagonal = vec![true; self.len()];
        for x in family {
            if x.is_identity() {
                return Err(Error::TrivialSyllable("defect family contains the identity".into()));
            }
            for (d, hit) in diagonal.iter_mut().zip(self.range_projection_diag(x)?) {
                *d &= !hit;
            }
        }
        let support: Vec<usize> = (0..self.len()).filter(|&i| diagonal[i]).collect();
        Ok(DefectReport { identity_entry: diagonal.first().copied().unwrap_or(false), nonzero: !support.is_empty(), support, diagonal })
    }

    /// Whether `∏_{x ∈ F} (1 − T_x T_x*)` is nonzero on the ball.
    pub fn defect_product_nonzero(&self, family: &[NormalWord]) -> Result<bool> {
        Ok(self.defect_product(family)?.nonzero)
    }
}

/// Outcome of a pointwise covariance comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceReport {
    pub x: NormalWord,
    pub y: NormalWord,
    pub lub: Join<NormalWord>,
    /// Basis indices where `x ≤ z` and `y ≤ z`.
    pub lhs_support: Vec<usize>,
    /// Basis indices where `x ∨ y ≤ z`.
    pub rhs_support: Vec<usize>,
    /// Basis indices where the two sides disagree.
    pub counterexamples: Vec<usize>,
}

impl CovarianceReport {
    fn compare(
        ball: &ConeBall,
        x: &NormalWord,
        y: &NormalWord,
        lub: Join<NormalWord>,
        px: &[bool],
        py: &[bool],
        pl: &[bool],
    ) -> Self {
        let mut report = Self {
            x: x.clone(),
            y: y.clone(),
            lub,
            lhs_support: Vec::new(),
            rhs_support: Vec::new(),
            counterexamples: Vec::new(),
        };
        for i in 0..ball.len() {
            let lhs = px[i] && py[i];
            if lhs {
                report.lhs_support.push(i);
            }
            if pl[i] {
                report.rhs_support.push(i);
            }
            if lhs != pl[i] {
                report.counterexamples.push(i);
            }
        }
        report
    }

    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Covariance checks over many pairs with cached range projections.
pub struct CovarianceChecker<'a> {
    ball: &'a ConeBall,
    projections: HashMap<NormalWord, Vec<bool>>,
}

impl<'a> CovarianceChecker<'a> {
    pub fn new(ball: &'a ConeBall) -> Self {
        Self { ball, projections: HashMap::new() }
    }

    fn projection(&mut self, x: &NormalWord) -> Result<Vec<bool>> {
        if let Some(p) = self.projections.get(x) {
            return Ok(p.clone());
        }
        let p = self.ball.range_projection_diag(x)?;
        self.projections.insert(x.clone(), p.clone());
        Ok(p)
    }

    pub fn check(&mut self, x: &NormalWord, y: &NormalWord) -> Result<CovarianceReport> {
        let px = self.projection(x)?;
        let py = self.projection(y)?;
        let lub = self.ball.graph.lub(x, y)?;
        let pl = match &lub {
            Join::Finite(l) => self.projection(l)?,
            Join::Infinity => vec![false; self.ball.len()],
        };
        Ok(CovarianceReport::compare(self.ball, x, y, lub, &px, &py, &pl))
    }

    /// Checks every ordered pair of ball elements; returns the failures.
    pub fn check_all_pairs(&mut self) -> Result<Vec<CovarianceReport>> {
        let elements = self.ball.elements.clone();
        let mut failures = Vec::new();
        for (i, x) in elements.iter().enumerate() {
            for y in &elements[i..] {
                let report = self.check(x, y)?;
                if !report.passed() {
                    failures.push(report);
                }
            }
        }
        Ok(failures)
    }
}

/// Diagonal of a product of defect projections.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DefectReport {
    pub nonzero: bool,
    /// Entry at the basis vector of the identity.
    pub identity_entry: bool,
    pub support: Vec<usize>,
    pub diagonal: Vec<bool>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factors::{ArtinMonoid, FactorElement, FactorSpec};
    use crate::graph::Vertex;

    fn path3() -> CommutationGraph {
        CommutationGraph::right_angled(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap()
    }

    fn free2() -> CommutationGraph {
        CommutationGraph::right_angled(&["a", "b"], &[]).unwrap()
    }

    fn b3() -> (CommutationGraph, ArtinMonoid) {
        let m = ArtinMonoid::braid(3).unwrap();
        let g = CommutationGraph::new(vec![Vertex::new("B", FactorSpec::artin(m.clone()))], &[]).unwrap();
        (g, m)
    }

    fn gen(g: &CommutationGraph, name: &str, power: i64) -> NormalWord {
        g.syllable(g.vertex_index(name).unwrap(), FactorElement::Int(power)).unwrap()
    }

    fn braid(g: &CommutationGraph, m: &ArtinMonoid, w: &str) -> NormalWord {
        g.syllable(0, FactorElement::Artin(m.positive(&m.parse_word(w).unwrap()))).unwrap()
    }

    fn names(ball: &ConeBall, idx: &[usize]) -> Vec<NormalWord> {
        idx.iter().map(|&i| ball.elements()[i].clone()).collect()
    }

    #[test]
    fn ball_sizes() {
        assert_eq!(enumerate_ball(&path3(), 2, DEFAULT_MAX_BALL).unwrap().len(), 11);
        let (g, _) = b3();
        assert_eq!(enumerate_ball(&g, 2, DEFAULT_MAX_BALL).unwrap().len(), 7);
        assert_eq!(enumerate_ball(&g, 3, DEFAULT_MAX_BALL).unwrap().len(), 14);
        let ball = enumerate_ball(&free2(), 3, DEFAULT_MAX_BALL).unwrap();
        assert_eq!(ball.len(), 15);
        assert!(ball.elements()[0].is_identity());
        assert_eq!(ball.truncate(2).len(), 7);
    }

    #[test]
    fn ball_cap_is_enforced() {
        assert_eq!(enumerate_ball(&free2(), 10, 100).unwrap_err(), Error::BallTooLarge(100));
    }

    #[test]
    fn toeplitz_entries_and_isometry() {
        let g = free2();
        let ball = enumerate_ball(&g, 1, DEFAULT_MAX_BALL).unwrap();
        let a = gen(&g, "a", 1);
        let ta = ball.toeplitz_op(&a).unwrap();
        assert_eq!(ta.entries, vec![(ball.index_of(&a).unwrap(), 0, 1.0)]);
        let b = ball.index_of(&gen(&g, "b", 1)).unwrap();
        let mut eb = vec![0.0; ball.len()];
        eb[b] = 1.0;
        assert!(ball.toeplitz_adjoint(&a).unwrap().apply(&eb).iter().all(|&v| v == 0.0));
        assert_eq!(ball.toeplitz_op(&gen(&g, "a", -1)).unwrap_err(), Error::NotPositive);

        let ball = enumerate_ball(&path3(), 3, DEFAULT_MAX_BALL).unwrap();
        let x = g_mul(&path3(), &["a", "b"]);
        let t = ball.toeplitz_op(&x).unwrap();
        let gram = t.transpose().matmul(&t);
        for (j, y) in ball.elements().iter().enumerate() {
            let expected = if y.degree() + 2 <= 3 { 1.0 } else { 0.0 };
            assert_eq!(gram.to_dense()[(j, j)], expected);
        }
    }

    fn g_mul(g: &CommutationGraph, letters: &[&str]) -> NormalWord {
        letters.iter().fold(NormalWord::identity(), |acc, l| g.multiply(&acc, &gen(g, l, 1)))
    }

    #[test]
    fn range_projection_matches_product_diagonal() {
        let g = free2();
        let ball = enumerate_ball(&g, 2, DEFAULT_MAX_BALL).unwrap();
        let a = gen(&g, "a", 1);
        let diag = ball.range_projection_diag(&a).unwrap();
        let support: Vec<usize> = (0..ball.len()).filter(|&i| diag[i]).collect();
        let mut expected = vec![a.clone(), gen(&g, "a", 2), g_mul(&g, &["a", "b"])];
        expected.sort();
        assert_eq!(names(&ball, &support), expected);
        let t = ball.toeplitz_op(&a).unwrap();
        let p = t.matmul(&t.transpose()).diagonal();
        assert_eq!(p, diag.iter().map(|&b| if b { 1.0 } else { 0.0 }).collect::<Vec<_>>());
        assert!(ball.range_projection_diag(&NormalWord::identity()).unwrap().iter().all(|&b| b));
    }

    #[test]
    fn covariance_examples() {
        let g = free2();
        let ball = enumerate_ball(&g, 3, DEFAULT_MAX_BALL).unwrap();
        let r = ball.covariance_check(&gen(&g, "a", 1), &gen(&g, "b", 1)).unwrap();
        assert!(r.passed() && r.lub.is_infinite() && r.lhs_support.is_empty());

        let g = path3();
        let ball = enumerate_ball(&g, 3, DEFAULT_MAX_BALL).unwrap();
        let r = ball.covariance_check(&gen(&g, "a", 1), &gen(&g, "b", 1)).unwrap();
        let ab = g_mul(&g, &["a", "b"]);
        assert!(r.passed());
        assert_eq!(r.lub, Join::Finite(ab.clone()));
        let expected: Vec<usize> = (0..ball.len()).filter(|&i| g.leq(&ab, &ball.elements()[i])).collect();
        assert_eq!(r.lhs_support, expected);

        let (g, m) = b3();
        let ball = enumerate_ball(&g, 4, DEFAULT_MAX_BALL).unwrap();
        let r = ball.covariance_check(&braid(&g, &m, "s"), &braid(&g, &m, "t")).unwrap();
        assert!(r.passed());
        assert_eq!(r.lub, Join::Finite(braid(&g, &m, "sts")));
        assert!(CovarianceChecker::new(&ball).check_all_pairs().unwrap().is_empty());
    }

    #[test]
    fn defect_examples() {
        let g = path3();
        let ball = enumerate_ball(&g, 2, DEFAULT_MAX_BALL).unwrap();
        let report = ball.defect_product(&[gen(&g, "a", 1)]).unwrap();
        assert!(report.nonzero && report.identity_entry);
        let mut expected = vec![
            NormalWord::identity(),
            gen(&g, "b", 1),
            gen(&g, "c", 1),
            gen(&g, "b", 2),
            gen(&g, "c", 2),
            g_mul(&g, &["b", "c"]),
            g_mul(&g, &["c", "a"]),
        ];
        expected.sort();
        assert_eq!(names(&ball, &report.support), expected);
        assert_eq!(ball.defect_product(&[]).unwrap_err(), Error::EmptySupport);
    }
}
