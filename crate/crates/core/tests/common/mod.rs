//! Brute-force oracles shared by the integration tests.
//!
//! Everything here works from the raw moves (shuffle, amalgamate, braid
//! relation, right multiplication) and does not call the reduction, order or
//! lub code under test.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet};

use qlattice::factors::Letter;
use qlattice::{
    ArtinMonoid, CommutationGraph, ConeBall, FactorElement, FactorSpec, NormalWord, Syllable, Vertex, Word,
};

pub fn free2() -> CommutationGraph {
    CommutationGraph::right_angled(&["a", "b"], &[]).unwrap()
}

pub fn path3() -> CommutationGraph {
    CommutationGraph::right_angled(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap()
}

pub fn square4() -> CommutationGraph {
    CommutationGraph::right_angled(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]).unwrap()
}

pub fn b3_monoid() -> ArtinMonoid {
    ArtinMonoid::braid(3).unwrap()
}

pub fn b3() -> CommutationGraph {
    CommutationGraph::new(vec![Vertex::new("B", FactorSpec::artin(b3_monoid()))], &[]).unwrap()
}

/// One `ℤ` vertex joined by an edge to one B₃ vertex.
pub fn z_times_b3() -> CommutationGraph {
    CommutationGraph::new(
        vec![Vertex::new("a", FactorSpec::Integers), Vertex::new("B", FactorSpec::artin(b3_monoid()))],
        &[(0, 1)],
    )
    .unwrap()
}

/// Four vertices, two `ℤ` and two B₃, on a path `a – B – c – D`.
pub fn mixed4() -> CommutationGraph {
    CommutationGraph::new(
        vec![
            Vertex::new("a", FactorSpec::Integers),
            Vertex::new("B", FactorSpec::artin(b3_monoid())),
            Vertex::new("c", FactorSpec::Integers),
            Vertex::new("D", FactorSpec::artin(b3_monoid())),
        ],
        &[(0, 1), (1, 2), (2, 3)],
    )
    .unwrap()
}

pub fn int(v: usize, n: i64) -> Syllable {
    Syllable::new(v, FactorElement::Int(n))
}

pub fn braid(g: &CommutationGraph, v: usize, num: &str, den: &str) -> Syllable {
    let FactorSpec::Artin(m) = g.factor(v) else { panic!("not an Artin vertex") };
    Syllable::new(v, FactorElement::Artin(m.fraction(&m.parse_word(num).unwrap(), &m.parse_word(den).unwrap())))
}

pub fn word(syllables: Vec<Syllable>) -> Word {
    Word::new(syllables)
}

pub fn nf(g: &CommutationGraph, syllables: Vec<Syllable>) -> NormalWord {
    g.reduce(&Word::new(syllables)).unwrap()
}

fn step(g: &CommutationGraph, w: &[Syllable], out: &mut Vec<Vec<Syllable>>) {
    for i in 1..w.len() {
        let (l, r) = (&w[i - 1], &w[i]);
        if l.vertex == r.vertex {
            let f = g.factor(l.vertex);
            let prod = f.multiply(&l.element, &r.element);
            let mut next: Vec<Syllable> = w[..i - 1].to_vec();
            if !f.is_identity(&prod) {
                next.push(Syllable::new(l.vertex, prod));
            }
            next.extend_from_slice(&w[i + 1..]);
            out.push(next);
        } else if g.adjacent(l.vertex, r.vertex) {
            let mut next = w.to_vec();
            next.swap(i - 1, i);
            out.push(next);
        }
    }
}

/// Every expression reachable by shuffles and amalgamations.
pub fn reachable(g: &CommutationGraph, w: &[Syllable]) -> HashSet<Vec<Syllable>> {
    let mut seen = HashSet::from([w.to_vec()]);
    let mut stack = vec![w.to_vec()];
    let mut buf = Vec::new();
    while let Some(cur) = stack.pop() {
        buf.clear();
        step(g, &cur, &mut buf);
        for next in buf.drain(..) {
            if !seen.contains(&next) {
                seen.insert(next.clone());
                stack.push(next);
            }
        }
    }
    seen
}

/// Minimal-length expressions reachable from `w`: the reduced forms.
pub fn reduced_forms(g: &CommutationGraph, w: &[Syllable]) -> HashSet<Vec<Syllable>> {
    let all = reachable(g, w);
    let min = all.iter().map(Vec::len).min().unwrap_or(0);
    all.into_iter().filter(|x| x.len() == min).collect()
}

pub fn inverse(g: &CommutationGraph, w: &[Syllable]) -> Vec<Syllable> {
    w.iter().rev().map(|s| Syllable::new(s.vertex, g.factor(s.vertex).invert(&s.element))).collect()
}

/// Whether `x = y` in the graph product, by rewriting `x y^-1` to nothing.
pub fn equal_by_rewriting(g: &CommutationGraph, x: &[Syllable], y: &[Syllable]) -> bool {
    let mut w = x.to_vec();
    w.extend(inverse(g, y));
    reachable(g, &w).contains(&Vec::new())
}

/// Words equal to `w` in a positive Artin monoid, by applying the braid
/// relations in both directions.
pub fn relation_class(m: &ArtinMonoid, w: &[Letter]) -> BTreeSet<Vec<Letter>> {
    let mut rules = Vec::new();
    for s in 0..m.rank() {
        for t in 0..m.rank() {
            if let (true, Some(k)) = (s != t, m.matrix().get(s, t)) {
                let alt: Vec<Letter> = (0..k as usize).map(|i| if i % 2 == 0 { s as Letter } else { t as Letter }).collect();
                let swapped: Vec<Letter> = alt.iter().map(|&x| if x == s as Letter { t as Letter } else { s as Letter }).collect();
                rules.push((alt, swapped));
            }
        }
    }
    let mut seen = BTreeSet::from([w.to_vec()]);
    let mut stack = vec![w.to_vec()];
    while let Some(cur) = stack.pop() {
        for (lhs, rhs) in &rules {
            for i in 0..(cur.len() + 1).saturating_sub(lhs.len()) {
                if &cur[i..i + lhs.len()] == lhs.as_slice() {
                    let mut next = cur.clone();
                    next.splice(i..i + lhs.len(), rhs.iter().copied());
                    if seen.insert(next.clone()) {
                        stack.push(next);
                    }
                }
            }
        }
    }
    seen
}

pub fn words_up_to(rank: usize, max_len: usize) -> Vec<Vec<Letter>> {
    let mut all = vec![Vec::new()];
    let mut layer: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| (0..rank as Letter).map(move |s| {
                let mut x = w.clone();
                x.push(s);
                x
            }))
            .collect();
        all.extend(layer.iter().cloned());
    }
    all
}

/// Least common upper bound found by search in a ball, `x ≤ z` meaning
/// `z = x p` for some `p` in the ball.
pub enum SearchLub {
    Least(NormalWord),
    None,
    Ambiguous,
}

pub struct UpperBoundSearch<'a> {
    pub ball: &'a ConeBall,
    cache: HashMap<NormalWord, BTreeSet<usize>>,
}

impl<'a> UpperBoundSearch<'a> {
    pub fn new(ball: &'a ConeBall) -> Self {
        Self { ball, cache: HashMap::new() }
    }

    pub fn multiples(&mut self, x: &NormalWord) -> BTreeSet<usize> {
        if let Some(s) = self.cache.get(x) {
            return s.clone();
        }
        let g = self.ball.graph();
        let room = self.ball.max_degree() as i64 - x.degree();
        let set: BTreeSet<usize> = self
            .ball
            .elements()
            .iter()
            .take_while(|p| p.degree() <= room)
            .filter_map(|p| self.ball.index_of(&g.multiply(x, p)))
            .collect();
        self.cache.insert(x.clone(), set.clone());
        set
    }

    pub fn lub(&mut self, x: &NormalWord, y: &NormalWord) -> SearchLub {
        let common: BTreeSet<usize> = self.multiples(x).intersection(&self.multiples(y)).copied().collect();
        let mut dominated = BTreeSet::new();
        for &j in &common {
            let zj = self.ball.elements()[j].clone();
            dominated.extend(self.multiples(&zj).into_iter().filter(|&i| i != j && common.contains(&i)));
        }
        let minimal: Vec<usize> = common.difference(&dominated).copied().collect();
        match minimal.as_slice() {
            [] => SearchLub::None,
            [m] => SearchLub::Least(self.ball.elements()[*m].clone()),
            _ => SearchLub::Ambiguous,
        }
    }
}

/// Whether `x ≤ z` by searching the ball for the quotient.
pub fn divides_by_search(ball: &ConeBall, x: &NormalWord, z: &NormalWord) -> bool {
    let g = ball.graph();
    ball.elements().iter().any(|p| &g.multiply(x, p) == z)
}
