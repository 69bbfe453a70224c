//! Isometric representations given by matrices for the factor generators.
//!
//! A family assigns one matrix to each cone generator (one per `ℤ` vertex,
//! one per letter of an Artin vertex). It extends to the positive cone by
//! multiplying along a reduced expression. The relation checker tests the
//! graph-product relations between vertices, the Artin relations inside a
//! vertex, and then covariance on a sample of positive pairs.

use std::collections::HashMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::{enumerate_ball, ConeBall};
use crate::error::{Error, Result};
use crate::factors::{FactorElement, FactorSpec, Join, Letter};
use crate::graph::{CommutationGraph, NormalWord, Syllable, VertexId};

pub type CMatrix = DMatrix<Complex64>;

#[derive(Debug, Clone)]
pub struct Representation {
    dimension: usize,
    generators: Vec<Vec<CMatrix>>,
    /// Basis degrees and radius for a compression to a ball. Relations are
    /// then compared only on columns whose image cannot leave the ball.
    truncation: Option<(Vec<usize>, usize)>,
}

fn generator_count(factor: &FactorSpec) -> usize {
    match factor {
        FactorSpec::Integers => 1,
        FactorSpec::Artin(m) => m.rank(),
    }
}

fn generator_label(graph: &CommutationGraph, v: VertexId, s: usize) -> String {
    match graph.factor(v) {
        FactorSpec::Integers => graph.name(v).to_string(),
        FactorSpec::Artin(m) => format!("{}.{}", graph.name(v), m.generators()[s]),
    }
}

/// Validates a family of generator matrices and returns its extension.
///
/// `family[v][s]` is the matrix for generator `s` of vertex `v`. Every
/// matrix must be square of a common dimension and satisfy `M*M = 1` to
/// within `tolerance` in Frobenius norm.
pub fn extend_representation(
    graph: &CommutationGraph,
    family: Vec<Vec<CMatrix>>,
    tolerance: f64,
) -> Result<Representation> {
    if family.len() != graph.vertex_count() {
        return Err(Error::DimensionMismatch(format!(
            "family covers {} vertices, graph has {}",
            family.len(),
            graph.vertex_count()
        )));
    }
    let dimension = family.iter().flatten().next().map(|m| m.nrows()).unwrap_or(0);
    if dimension == 0 {
        return Err(Error::DimensionMismatch("family has no nonempty matrices".into()));
    }
    for (v, mats) in family.iter().enumerate() {
        let expected = generator_count(graph.factor(v));
        if mats.len() != expected {
            return Err(Error::DimensionMismatch(format!(
                "vertex `{}` needs {expected} matrices, got {}",
                graph.name(v),
                mats.len()
            )));
        }
        for (s, m) in mats.iter().enumerate() {
            if m.nrows() != dimension || m.ncols() != dimension {
                return Err(Error::DimensionMismatch(format!(
                    "matrix for `{}` is {}x{}, expected {dimension}x{dimension}",
                    generator_label(graph, v, s),
                    m.nrows(),
                    m.ncols()
                )));
            }
            let residual = (m.adjoint() * m - CMatrix::identity(dimension, dimension)).norm();
            if !(residual <= tolerance) {
                return Err(Error::NonIsometry { name: generator_label(graph, v, s), residual });
            }
        }
    }
    Ok(Representation { dimension, generators: family, truncation: None })
}

impl Representation {
    /// The compressed Toeplitz family on `ball`.
    pub fn toeplitz(ball: &ConeBall) -> Result<Self> {
        let graph = ball.graph();
        let mut generators = Vec::with_capacity(graph.vertex_count());
        for v in 0..graph.vertex_count() {
            let mut mats = Vec::new();
            for g in graph.factor(v).generators() {
                let x = graph.syllable(v, g)?;
                mats.push(ball.toeplitz_op(&x)?.to_dense().map(|r| Complex64::new(r, 0.0)));
            }
            generators.push(mats);
        }
        Ok(Self { dimension: ball.len(), generators, truncation: Some((ball.degrees(), ball.max_degree())) })
    }

    /// Every generator acts as the scalar `1`.
    pub fn one_dimensional(graph: &CommutationGraph) -> Self {
        let generators = (0..graph.vertex_count())
            .map(|v| vec![CMatrix::identity(1, 1); generator_count(graph.factor(v))])
            .collect();
        Self { dimension: 1, generators, truncation: None }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn generator(&self, v: VertexId, s: usize) -> &CMatrix {
        &self.generators[v][s]
    }

    fn syllable_matrix(&self, graph: &CommutationGraph, s: &Syllable) -> Result<CMatrix> {
        let id = CMatrix::identity(self.dimension, self.dimension);
        match (&s.element, graph.factor(s.vertex)) {
            (FactorElement::Int(n), FactorSpec::Integers) if *n >= 0 => {
                Ok((0..*n).fold(id, |acc, _| acc * &self.generators[s.vertex][0]))
            }
            (FactorElement::Artin(f), FactorSpec::Artin(_)) if f.is_positive() => Ok(f
                .num()
                .letters()
                .iter()
                .fold(id, |acc, &l| acc * &self.generators[s.vertex][l as usize])),
            _ => Err(Error::NotPositive),
        }
    }

    /// `V(x)` multiplied along the syllables of `syllables`, which must all
    /// be positive.
    pub fn evaluate_syllables(&self, graph: &CommutationGraph, syllables: &[Syllable]) -> Result<CMatrix> {
        let mut acc = CMatrix::identity(self.dimension, self.dimension);
        for s in syllables {
            acc *= self.syllable_matrix(graph, s)?;
        }
        Ok(acc)
    }

    pub fn evaluate(&self, graph: &CommutationGraph, x: &NormalWord) -> Result<CMatrix> {
        self.evaluate_syllables(graph, x.syllables())
    }

    /// Columns on which a relation whose terms apply at most `budget`
    /// generators before any adjoint is exact.
    fn columns(&self, budget: usize) -> Vec<usize> {
        match &self.truncation {
            None => (0..self.dimension).collect(),
            Some((degrees, radius)) => (0..self.dimension).filter(|&j| degrees[j] + budget <= *radius).collect(),
        }
    }

    fn residual(&self, lhs: &CMatrix, rhs: &CMatrix, budget: usize) -> f64 {
        let diff = lhs - rhs;
        self.columns(budget).iter().map(|&j| diff.column(j).norm_squared()).sum::<f64>().sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelationCheckOptions {
    pub tolerance: f64,
    /// Radius of the ball from which covariance pairs are drawn.
    pub sample_degree: usize,
    pub max_ball: usize,
}

impl Default for RelationCheckOptions {
    fn default() -> Self {
        Self { tolerance: 1e-9, sample_degree: 3, max_ball: super::DEFAULT_MAX_BALL }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RelationViolation {
    pub relation: String,
    pub subject: Vec<String>,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RelationReport {
    pub passed: bool,
    pub checks: usize,
    pub max_residual: f64,
    pub violations: Vec<RelationViolation>,
}

struct Recorder<'a> {
    rep: &'a Representation,
    tolerance: f64,
    report: RelationReport,
}

impl Recorder<'_> {
    fn record(&mut self, relation: &str, subject: Vec<String>, lhs: &CMatrix, rhs: &CMatrix, budget: usize) {
        let residual = self.rep.residual(lhs, rhs, budget);
        self.record_residual(relation, subject, residual);
    }

    fn record_residual(&mut self, relation: &str, subject: Vec<String>, residual: f64) {
        self.report.checks += 1;
        self.report.max_residual = self.report.max_residual.max(residual);
        if !(residual <= self.tolerance) {
            self.report.passed = false;
            self.report.violations.push(RelationViolation { relation: relation.to_string(), subject, residual });
        }
    }
}

/// Checks the defining relations of `rep` and covariance on sampled pairs.
pub fn check_graph_relations(
    graph: &CommutationGraph,
    rep: &Representation,
    options: RelationCheckOptions,
) -> Result<RelationReport> {
    if rep.generators.len() != graph.vertex_count() {
        return Err(Error::DimensionMismatch("representation does not match the graph".into()));
    }
    let d = rep.dimension;
    let zero = CMatrix::zeros(d, d);
    let id = CMatrix::identity(d, d);
    let mut rec = Recorder {
        rep,
        tolerance: options.tolerance,
        report: RelationReport { passed: true, checks: 0, max_residual: 0.0, violations: Vec::new() },
    };
    let gens: Vec<(VertexId, usize)> = (0..graph.vertex_count())
        .flat_map(|v| (0..generator_count(graph.factor(v))).map(move |s| (v, s)))
        .collect();
    let label = |&(v, s): &(VertexId, usize)| generator_label(graph, v, s);
    let mat = |&(v, s): &(VertexId, usize)| &rep.generators[v][s];

    for g in &gens {
        let m = mat(g);
        rec.record("isometry", vec![label(g)], &(m.adjoint() * m), &id, 1);
    }

    for (i, g) in gens.iter().enumerate() {
        for h in &gens[i + 1..] {
            if g.0 == h.0 {
                continue;
            }
            let (vg, vh) = (mat(g), mat(h));
            let subject = vec![label(g), label(h)];
            if graph.adjacent(g.0, h.0) {
                rec.record("commute", subject.clone(), &(vg * vh), &(vh * vg), 2);
                rec.record("star-commute", subject.clone(), &(vg.adjoint() * vh), &(vh * vg.adjoint()), 1);
                rec.record("star-commute", subject, &(vh.adjoint() * vg), &(vg * vh.adjoint()), 1);
            } else {
                rec.record("orthogonal", subject.clone(), &(vg.adjoint() * vh), &zero, 1);
                rec.record("orthogonal", subject, &(vh.adjoint() * vg), &zero, 1);
            }
        }
    }

    for v in 0..graph.vertex_count() {
        let FactorSpec::Artin(monoid) = graph.factor(v) else { continue };
        for s in 0..monoid.rank() {
            for t in s + 1..monoid.rank() {
                let m = monoid.matrix().get(s, t).expect("finite type") as usize;
                let st = monoid.alternating(s as Letter, t as Letter, m);
                let ts = monoid.alternating(t as Letter, s as Letter, m);
                let word = |w: &crate::factors::ArtinWord| {
                    w.letters().iter().fold(id.clone(), |acc, &l| acc * &rep.generators[v][l as usize])
                };
                let (vst, vts) = (word(&st), word(&ts));
                let subject = vec![generator_label(graph, v, s), generator_label(graph, v, t)];
                rec.record("artin", subject.clone(), &vst, &vts, m);
                let (a, b) = (&rep.generators[v][s], &rep.generators[v][t]);
                let lhs = a * a.adjoint() * b * b.adjoint();
                rec.record("covariance", subject, &lhs, &(&vst * vst.adjoint()), 0);
            }
        }
    }

    let ball = enumerate_ball(graph, options.sample_degree, options.max_ball)?;
    sampled_covariance(graph, rep, &ball, &mut rec)?;
    Ok(rec.report)
}

fn sampled_covariance(
    graph: &CommutationGraph,
    rep: &Representation,
    ball: &ConeBall,
    rec: &mut Recorder<'_>,
) -> Result<()> {
    let elements = &ball.elements()[1.min(ball.len())..];
    let projection = |x: &NormalWord| -> Result<CMatrix> {
        let v = rep.evaluate(graph, x)?;
        Ok(&v * v.adjoint())
    };
    let mut projections: HashMap<NormalWord, CMatrix> = elements
        .par_iter()
        .map(|x| Ok((x.clone(), projection(x)?)))
        .collect::<Result<_>>()?;
    let pairs: Vec<(usize, usize, Join<NormalWord>)> = (0..elements.len())
        .flat_map(|i| (i + 1..elements.len()).map(move |j| (i, j)))
        .map(|(i, j)| Ok((i, j, graph.lub(&elements[i], &elements[j])?)))
        .collect::<Result<_>>()?;
    for (_, _, lub) in &pairs {
        if let Join::Finite(l) = lub {
            if !projections.contains_key(l) {
                projections.insert(l.clone(), projection(l)?);
            }
        }
    }
    let zero = CMatrix::zeros(rep.dimension, rep.dimension);
    let residuals: Vec<(usize, usize, f64)> = pairs
        .par_iter()
        .map(|(i, j, lub)| {
            let lhs = &projections[&elements[*i]] * &projections[&elements[*j]];
            let rhs = match lub {
                Join::Finite(l) => &projections[l],
                Join::Infinity => &zero,
            };
            (*i, *j, rep.residual(&lhs, rhs, 0))
        })
        .collect();
    for (i, j, residual) in residuals {
        rec.record_residual("covariance", vec![graph.render(&elements[i]), graph.render(&elements[j])], residual);
    }
    Ok(())
}
