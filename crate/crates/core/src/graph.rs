//! Graph products: words over the syllable alphabet, reduction by shuffles
//! and amalgamations, and a canonical form for group elements.
//!
//! A word is reduced when no two syllables at the same vertex can be
//! shuffled next to each other, i.e. between any two syllables at vertex `I`
//! there is a syllable whose vertex is not adjacent to `I`. Reduced words for
//! the same element differ only by shuffles, so the canonical form picks,
//! among all shuffles, the one obtained by repeatedly pulling out the initial
//! syllable with the least vertex.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::factors::{ArtinWord, FactorElement, FactorSpec, Letter};

/// Index of a vertex in the graph's fixed vertex order.
pub type VertexId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub name: String,
    pub factor: FactorSpec,
}

impl Vertex {
    pub fn new(name: impl Into<String>, factor: FactorSpec) -> Self {
        Self { name: name.into(), factor }
    }
}

/// A nontrivial factor element tagged with its vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub vertex: VertexId,
    pub element: FactorElement,
}

impl Syllable {
    pub fn new(vertex: VertexId, element: FactorElement) -> Self {
        Self { vertex, element }
    }
}

/// An arbitrary expression, possibly unreduced.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word {
    pub syllables: Vec<Syllable>,
}

impl Word {
    pub fn new(syllables: Vec<Syllable>) -> Self {
        Self { syllables }
    }

    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }
}

impl From<&NormalWord> for Word {
    fn from(x: &NormalWord) -> Self {
        Word::new(x.syllables.clone())
    }
}

/// Canonical reduced word; stands for a group element.
///
/// Ordering compares the degree first, then the syllable sequence.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalWord {
    degree: i64,
    syllables: Vec<Syllable>,
}

impl NormalWord {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    /// Syllable length `ℓ(x)`.
    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Sum of the factor degrees; equals the word length in generators for
    /// positive elements.
    pub fn degree(&self) -> i64 {
        self.degree
    }

    /// Vertices carrying at least one syllable.
    pub fn vertices(&self) -> BTreeSet<VertexId> {
        self.syllables.iter().map(|s| s.vertex).collect()
    }
}

/// Finite simplicial graph with a factor group at each vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutationGraph {
    vertices: Vec<Vertex>,
    adjacency: Vec<Vec<bool>>,
}

impl CommutationGraph {
    pub fn new(vertices: Vec<Vertex>, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let n = vertices.len();
        for (i, v) in vertices.iter().enumerate() {
            if v.name.is_empty() {
                return Err(Error::InvalidGraph(format!("vertex {i} has an empty name")));
            }
            if vertices[..i].iter().any(|w| w.name == v.name) {
                return Err(Error::InvalidGraph(format!("duplicate vertex `{}`", v.name)));
            }
        }
        let mut adjacency = vec![vec![false; n]; n];
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!("edge ({a},{b}) refers to a missing vertex")));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop at `{}`", vertices[a].name)));
            }
            adjacency[a][b] = true;
            adjacency[b][a] = true;
        }
        Ok(Self { vertices, adjacency })
    }

    /// Graph product of copies of `(ℤ, ℕ)`: a right-angled Artin group.
    pub fn right_angled(names: &[&str], edges: &[(&str, &str)]) -> Result<Self> {
        let vertices = names.iter().map(|n| Vertex::new(*n, FactorSpec::Integers)).collect();
        let index = |name: &str| {
            names.iter().position(|n| *n == name).ok_or_else(|| Error::UnknownVertex(name.to_string()))
        };
        let edges = edges.iter().map(|(a, b)| Ok((index(a)?, index(b)?))).collect::<Result<Vec<_>>>()?;
        Self::new(vertices, &edges)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.vertices[v].name
    }

    pub fn factor(&self, v: VertexId) -> &FactorSpec {
        &self.vertices[v].factor
    }

    pub fn vertex_index(&self, name: &str) -> Option<VertexId> {
        self.vertices.iter().position(|v| v.name == name)
    }

    pub fn adjacent(&self, a: VertexId, b: VertexId) -> bool {
        self.adjacency[a][b]
    }

    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let n = self.vertex_count();
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|&(a, b)| self.adjacency[a][b]).collect()
    }

    fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(format!("#{v}")))
        }
    }

    fn check_syllable(&self, s: &Syllable) -> Result<()> {
        self.check_vertex(s.vertex)?;
        let factor = self.factor(s.vertex);
        if !factor.accepts(&s.element) {
            return Err(Error::FactorMismatch(self.name(s.vertex).to_string()));
        }
        if factor.is_identity(&s.element) {
            return Err(Error::TrivialSyllable(self.name(s.vertex).to_string()));
        }
        Ok(())
    }

    pub fn validate(&self, w: &Word) -> Result<()> {
        w.syllables.iter().try_for_each(|s| self.check_syllable(s))
    }

    /// Single-syllable element; the identity if `element` is trivial.
    pub fn syllable(&self, vertex: VertexId, element: FactorElement) -> Result<NormalWord> {
        self.check_vertex(vertex)?;
        let factor = self.factor(vertex);
        if !factor.accepts(&element) {
            return Err(Error::FactorMismatch(self.name(vertex).to_string()));
        }
        if factor.is_identity(&element) {
            return Ok(NormalWord::identity());
        }
        Ok(self.canonicalize(vec![Syllable::new(vertex, element)]))
    }

    /// The cone generators of every factor, in vertex order.
    pub fn generators(&self) -> Vec<NormalWord> {
        (0..self.vertex_count())
            .flat_map(|v| {
                self.factor(v)
                    .generators()
                    .into_iter()
                    .map(move |g| self.canonicalize(vec![Syllable::new(v, g)]))
            })
            .collect()
    }

    /// The generator `s` of the Artin factor at `vertex`.
    pub fn letter(&self, vertex: VertexId, s: Letter) -> Result<NormalWord> {
        self.check_vertex(vertex)?;
        match self.factor(vertex) {
            FactorSpec::Artin(m) if (s as usize) < m.rank() => {
                self.syllable(vertex, FactorElement::Artin(m.positive(&ArtinWord::letter(s))))
            }
            _ => Err(Error::FactorMismatch(self.name(vertex).to_string())),
        }
    }

    /// Criterion for reduced expressions: between any two syllables at the
    /// same vertex lies a syllable at a non-adjacent vertex.
    pub fn is_reduced(&self, w: &Word) -> Result<bool> {
        for s in &w.syllables {
            self.check_vertex(s.vertex)?;
        }
        let syl = &w.syllables;
        for i in 0..syl.len() {
            for j in i + 1..syl.len() {
                if syl[i].vertex != syl[j].vertex {
                    continue;
                }
                let v = syl[i].vertex;
                if syl[i + 1..j].iter().all(|k| self.adjacent(k.vertex, v)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Appends a syllable to a reduced sequence, amalgamating it with the
    /// last same-vertex syllable it can be shuffled against.
    fn push_reduced(&self, out: &mut Vec<Syllable>, s: Syllable) {
        let mut k = out.len();
        while k > 0 {
            k -= 1;
            let v = out[k].vertex;
            if v == s.vertex {
                let factor = self.factor(v);
                let product = factor.multiply(&out[k].element, &s.element);
                if factor.is_identity(&product) {
                    out.remove(k);
                    // a deleted syllable may have been the only blocker
                    let tail: Vec<Syllable> = out.drain(k..).collect();
                    for t in tail {
                        self.push_reduced(out, t);
                    }
                } else {
                    out[k].element = product;
                }
                return;
            }
            if !self.adjacent(v, s.vertex) {
                break;
            }
        }
        out.push(s);
    }

    /// Greedy canonical order of a reduced sequence.
    fn canonicalize(&self, mut rest: Vec<Syllable>) -> NormalWord {
        let degree = rest.iter().map(|s| self.factor(s.vertex).degree(&s.element)).sum();
        let mut out = Vec::with_capacity(rest.len());
        while !rest.is_empty() {
            let mut best = 0;
            for i in 1..rest.len() {
                let v = rest[i].vertex;
                if v < rest[best].vertex && rest[..i].iter().all(|p| self.adjacent(p.vertex, v)) {
                    best = i;
                }
            }
            out.push(rest.remove(best));
        }
        NormalWord { degree, syllables: out }
    }

    pub fn reduce(&self, w: &Word) -> Result<NormalWord> {
        self.validate(w)?;
        let mut out = Vec::with_capacity(w.len());
        for s in &w.syllables {
            self.push_reduced(&mut out, s.clone());
        }
        Ok(self.canonicalize(out))
    }

    pub fn equal(&self, x: &Word, y: &Word) -> Result<bool> {
        Ok(self.reduce(x)? == self.reduce(y)?)
    }

    pub fn multiply(&self, x: &NormalWord, y: &NormalWord) -> NormalWord {
        if x.is_identity() {
            return y.clone();
        }
        if y.is_identity() {
            return x.clone();
        }
        // XZY shape: merge the final syllables of x with the initial
        // syllables of y at shared vertices when no merge cancels
        let shared: Vec<VertexId> = self
            .final_vertices(x)
            .into_iter()
            .filter(|v| self.initial_vertices(y).contains(v))
            .collect();
        let merged: Option<Vec<Syllable>> = shared
            .iter()
            .map(|&v| {
                let factor = self.factor(v);
                let z = factor.multiply(&self.final_part(x, v), &self.initial_part(y, v));
                (!factor.is_identity(&z)).then(|| Syllable::new(v, z))
            })
            .collect();
        if let Some(merged) = merged {
            let mut xs = x.syllables.clone();
            for &v in &shared {
                let pos = xs.iter().rposition(|s| s.vertex == v).expect("final vertex present");
                xs.remove(pos);
            }
            let mut ys = y.syllables.clone();
            for &v in &shared {
                let pos = ys.iter().position(|s| s.vertex == v).expect("initial vertex present");
                ys.remove(pos);
            }
            xs.extend(merged);
            xs.extend(ys);
            return self.canonicalize(xs);
        }
        let mut out = x.syllables.clone();
        for s in &y.syllables {
            self.push_reduced(&mut out, s.clone());
        }
        self.canonicalize(out)
    }

    pub fn invert(&self, x: &NormalWord) -> NormalWord {
        let syllables = x
            .syllables
            .iter()
            .rev()
            .map(|s| Syllable::new(s.vertex, self.factor(s.vertex).invert(&s.element)))
            .collect();
        self.canonicalize(syllables)
    }

    pub fn length(&self, x: &NormalWord) -> usize {
        x.len()
    }

    /// The expression read backwards, syllables unchanged. An involution;
    /// an anti-automorphism of the group when all factors are abelian.
    pub fn rev(&self, x: &NormalWord) -> NormalWord {
        self.canonicalize(x.syllables.iter().rev().cloned().collect())
    }

    /// `Δ(x)`: vertices of syllables that can be shuffled to the front.
    pub fn initial_vertices(&self, x: &NormalWord) -> Vec<VertexId> {
        let syl = &x.syllables;
        let mut out: Vec<VertexId> = (0..syl.len())
            .filter(|&i| syl[..i].iter().all(|p| self.adjacent(p.vertex, syl[i].vertex)))
            .map(|i| syl[i].vertex)
            .collect();
        out.sort_unstable();
        out
    }

    /// `Δʳ(x)`: vertices of syllables that can be shuffled to the back.
    pub fn final_vertices(&self, x: &NormalWord) -> Vec<VertexId> {
        let syl = &x.syllables;
        let mut out: Vec<VertexId> = (0..syl.len())
            .filter(|&i| syl[i + 1..].iter().all(|p| self.adjacent(p.vertex, syl[i].vertex)))
            .map(|i| syl[i].vertex)
            .collect();
        out.sort_unstable();
        out
    }

    fn initial_index(&self, x: &NormalWord, v: VertexId) -> Option<usize> {
        let i = x.syllables.iter().position(|s| s.vertex == v)?;
        x.syllables[..i].iter().all(|p| self.adjacent(p.vertex, v)).then_some(i)
    }

    fn final_index(&self, x: &NormalWord, v: VertexId) -> Option<usize> {
        let i = x.syllables.iter().rposition(|s| s.vertex == v)?;
        x.syllables[i + 1..].iter().all(|p| self.adjacent(p.vertex, v)).then_some(i)
    }

    /// `x_I`: the initial syllable at `v`, or the identity of `G_v`.
    pub fn initial_part(&self, x: &NormalWord, v: VertexId) -> FactorElement {
        match self.initial_index(x, v) {
            Some(i) => x.syllables[i].element.clone(),
            None => self.factor(v).identity(),
        }
    }

    /// `x_I^r`: the final syllable at `v`, or the identity of `G_v`.
    pub fn final_part(&self, x: &NormalWord, v: VertexId) -> FactorElement {
        match self.final_index(x, v) {
            Some(i) => x.syllables[i].element.clone(),
            None => self.factor(v).identity(),
        }
    }

    /// Splits `x = x_I · x'` and returns `(x_I, x')`.
    pub fn split_initial(&self, x: &NormalWord, v: VertexId) -> (FactorElement, NormalWord) {
        match self.initial_index(x, v) {
            Some(i) => {
                let mut rest = x.syllables.clone();
                let s = rest.remove(i);
                (s.element, self.canonicalize(rest))
            }
            None => (self.factor(v).identity(), x.clone()),
        }
    }

    /// Compact text form, e.g. `a^2 b^-1 B(sts) B(s/t)`; `1` for the identity.
    pub fn render(&self, x: &NormalWord) -> String {
        if x.is_identity() {
            return "1".to_string();
        }
        let parts: Vec<String> = x
            .syllables
            .iter()
            .map(|s| {
                let name = self.name(s.vertex);
                match (&s.element, self.factor(s.vertex)) {
                    (FactorElement::Int(1), _) => name.to_string(),
                    (FactorElement::Int(n), _) => format!("{name}^{n}"),
                    (FactorElement::Artin(f), FactorSpec::Artin(m)) if f.is_positive() => {
                        format!("{name}({})", m.render(f.num()))
                    }
                    (FactorElement::Artin(f), FactorSpec::Artin(m)) => {
                        let num = if f.num().is_empty() { "1".to_string() } else { m.render(f.num()) };
                        format!("{name}({num}/{})", m.render(f.den()))
                    }
                    (FactorElement::Artin(_), _) => unreachable!("validated syllable"),
                }
            })
            .collect();
        parts.join(" ")
    }

    /// Checked variants of the accessors for external callers.
    pub fn try_initial_part(&self, x: &NormalWord, v: VertexId) -> Result<FactorElement> {
        self.check_vertex(v)?;
        Ok(self.initial_part(x, v))
    }

    pub fn try_final_part(&self, x: &NormalWord, v: VertexId) -> Result<FactorElement> {
        self.check_vertex(v)?;
        Ok(self.final_part(x, v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: VertexId, n: i64) -> Syllable {
        Syllable::new(v, FactorElement::Int(n))
    }

    fn word(s: &[Syllable]) -> Word {
        Word::new(s.to_vec())
    }

    fn path3() -> CommutationGraph {
        CommutationGraph::right_angled(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap()
    }

    fn free2() -> CommutationGraph {
        CommutationGraph::right_angled(&["a", "b"], &[]).unwrap()
    }

    fn edge2() -> CommutationGraph {
        CommutationGraph::right_angled(&["a", "b"], &[("a", "b")]).unwrap()
    }

    #[test]
    fn reducedness_criterion() {
        assert!(!free2().is_reduced(&word(&[z(0, 1), z(0, 1)])).unwrap());
        assert!(free2().is_reduced(&word(&[z(0, 1), z(1, 1), z(0, 1)])).unwrap());
        assert!(!edge2().is_reduced(&word(&[z(0, 1), z(1, 1), z(0, 1)])).unwrap());
        assert!(free2().is_reduced(&word(&[z(5, 1)])).is_err());
    }

    #[test]
    fn reduction_examples() {
        let g = path3();
        assert_eq!(g.reduce(&word(&[z(1, 1), z(0, 1)])).unwrap().syllables(), &[z(0, 1), z(1, 1)]);
        let g = edge2();
        assert_eq!(g.reduce(&word(&[z(0, 1), z(1, 1), z(0, -1)])).unwrap().syllables(), &[z(1, 1)]);
        let g = free2();
        let w = [z(0, 1), z(1, 1), z(0, 1)];
        assert_eq!(g.reduce(&word(&w)).unwrap().syllables(), &w);
    }

    #[test]
    fn deletion_cascades() {
        // a b c b^-1 c^-1 ... on free {a,b,c}: cancellation exposes new pairs
        let g = CommutationGraph::right_angled(&["a", "b", "c"], &[]).unwrap();
        let w = word(&[z(0, 1), z(1, 1), z(2, 1), z(2, -1), z(1, -1), z(0, 2)]);
        assert_eq!(g.reduce(&w).unwrap().syllables(), &[z(0, 3)]);
        // a c a^-1 with c adjacent to a, then b: a b a^-1 ... on path
        let g = path3();
        let w = word(&[z(0, 1), z(2, 1), z(1, 1), z(2, -1), z(0, -1)]);
        // c b c^-1 stays (b,c adjacent: cancels) -> a b a^-1 -> b
        assert_eq!(g.reduce(&w).unwrap().syllables(), &[z(1, 1)]);
    }

    #[test]
    fn rejects_invalid_syllables() {
        let g = free2();
        assert_eq!(g.reduce(&word(&[z(0, 0)])), Err(Error::TrivialSyllable("a".into())));
        assert!(matches!(g.reduce(&word(&[z(7, 1)])), Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn equality_examples() {
        assert!(edge2().equal(&word(&[z(0, 1), z(1, 1)]), &word(&[z(1, 1), z(0, 1)])).unwrap());
        assert!(!free2().equal(&word(&[z(0, 1), z(1, 1)]), &word(&[z(1, 1), z(0, 1)])).unwrap());
    }

    #[test]
    fn group_operations() {
        let g = free2();
        let a = g.reduce(&word(&[z(0, 1)])).unwrap();
        let a_inv = g.reduce(&word(&[z(0, -1)])).unwrap();
        assert!(g.multiply(&a, &a_inv).is_identity());
        let ab = g.reduce(&word(&[z(0, 1), z(1, 1)])).unwrap();
        let b = g.reduce(&word(&[z(1, 1)])).unwrap();
        assert_eq!(g.multiply(&ab, &b).syllables(), &[z(0, 1), z(1, 2)]);
        let inv = g.invert(&ab);
        assert_eq!(inv, g.reduce(&word(&[z(1, -1), z(0, -1)])).unwrap());
        assert_eq!(g.length(&inv), 2);
        assert_eq!(ab.degree(), 2);
        assert_eq!(inv.degree(), -2);
    }

    #[test]
    fn initial_and_final_accessors() {
        let g = edge2();
        let ab = g.reduce(&word(&[z(0, 1), z(1, 1)])).unwrap();
        assert_eq!(g.initial_vertices(&ab), vec![0, 1]);
        let g = free2();
        let ab = g.reduce(&word(&[z(0, 1), z(1, 1)])).unwrap();
        assert_eq!(g.initial_vertices(&ab), vec![0]);
        assert_eq!(g.final_vertices(&ab), vec![1]);
        assert_eq!(g.initial_part(&ab, 0), FactorElement::Int(1));
        assert_eq!(g.initial_part(&ab, 1), FactorElement::Int(0));
        assert_eq!(g.final_part(&ab, 1), FactorElement::Int(1));
        assert!(g.initial_vertices(&NormalWord::identity()).is_empty());
        let a2 = g.reduce(&word(&[z(0, 2)])).unwrap();
        assert_eq!(g.initial_part(&a2, 0), FactorElement::Int(2));
        let (xa, rest) = g.split_initial(&ab, 0);
        assert_eq!(xa, FactorElement::Int(1));
        assert_eq!(rest.syllables(), &[z(1, 1)]);
        assert!(g.try_initial_part(&ab, 9).is_err());
    }

    #[test]
    fn rev_is_an_involution() {
        let g = free2();
        let ab = g.reduce(&word(&[z(0, 1), z(1, 1)])).unwrap();
        let ba = g.rev(&ab);
        assert_eq!(ba.syllables(), &[z(1, 1), z(0, 1)]);
        assert_eq!(g.rev(&ba), ab);
    }

    #[test]
    fn graph_validation() {
        let v = || vec![Vertex::new("a", FactorSpec::Integers), Vertex::new("b", FactorSpec::Integers)];
        assert!(CommutationGraph::new(v(), &[(0, 0)]).is_err());
        assert!(CommutationGraph::new(v(), &[(0, 2)]).is_err());
        let dup = vec![Vertex::new("a", FactorSpec::Integers), Vertex::new("a", FactorSpec::Integers)];
        assert!(CommutationGraph::new(dup, &[]).is_err());
        let g = CommutationGraph::new(v(), &[(1, 0)]).unwrap();
        assert!(g.adjacent(0, 1) && g.adjacent(1, 0) && !g.adjacent(0, 0));
        assert_eq!(g.edges(), vec![(0, 1)]);
    }
}
