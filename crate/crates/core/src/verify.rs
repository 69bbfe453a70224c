//! Brute-force oracles and a sampled property suite.
//!
//! The oracles work directly from the defining moves and never call the
//! reduction, order or lub routines they are used to check:
//! normal forms are compared against exhaustive shuffle/amalgamation
//! search, lubs against the least element of the common upper bounds found
//! by right multiplication inside a larger ball, and Artin word equality
//! against closure under the braid relations.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::factors::{ArtinMonoid, ArtinWord, FactorElement, FactorSpec, Join, Letter};
use crate::graph::{CommutationGraph, NormalWord, Syllable, Word};
use crate::toeplitz::{enumerate_ball, ConeBall, CovarianceChecker};

/// All expressions reachable from `w` by swapping neighbouring syllables at
/// adjacent vertices and merging neighbouring syllables at the same vertex.
pub fn rewrite_closure(graph: &CommutationGraph, w: &[Syllable]) -> HashSet<Vec<Syllable>> {
    let mut seen: HashSet<Vec<Syllable>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(w.to_vec());
    queue.push_back(w.to_vec());
    while let Some(cur) = queue.pop_front() {
        for i in 0..cur.len().saturating_sub(1) {
            let (a, b) = (&cur[i], &cur[i + 1]);
            let mut next = cur.clone();
            if a.vertex == b.vertex {
                let factor = graph.factor(a.vertex);
                let merged = factor.multiply(&a.element, &b.element);
                next.remove(i + 1);
                if factor.is_identity(&merged) {
                    next.remove(i);
                } else {
                    next[i].element = merged;
                }
            } else if graph.adjacent(a.vertex, b.vertex) {
                next.swap(i, i + 1);
            } else {
                continue;
            }
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen
}

/// Minimum length over the rewrite closure.
pub fn oracle_length(graph: &CommutationGraph, w: &Word) -> usize {
    rewrite_closure(graph, &w.syllables).iter().map(Vec::len).min().unwrap_or(0)
}

fn inverse_expression(graph: &CommutationGraph, w: &Word) -> Vec<Syllable> {
    w.syllables
        .iter()
        .rev()
        .map(|s| Syllable::new(s.vertex, graph.factor(s.vertex).invert(&s.element)))
        .collect()
}

/// Whether `x y^-1` rewrites to the empty expression.
pub fn oracle_equal(graph: &CommutationGraph, x: &Word, y: &Word) -> bool {
    let mut w = x.syllables.clone();
    w.extend(inverse_expression(graph, y));
    rewrite_closure(graph, &w).contains(&Vec::new())
}

/// Positive words equal to `w` in the Artin monoid, by closure under the
/// braid relations `⟨st⟩^m = ⟨ts⟩^m`.
pub fn braid_class(monoid: &ArtinMonoid, w: &[Letter]) -> BTreeSet<Vec<Letter>> {
    let mut relations = Vec::new();
    for s in 0..monoid.rank() as Letter {
        for t in 0..monoid.rank() as Letter {
            if s == t {
                continue;
            }
            if let Some(m) = monoid.matrix().get(s as usize, t as usize) {
                let alt = |a: Letter, b: Letter| (0..m as usize).map(|i| if i % 2 == 0 { a } else { b }).collect::<Vec<_>>();
                relations.push((alt(s, t), alt(t, s)));
            }
        }
    }
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(w.to_vec());
    queue.push_back(w.to_vec());
    while let Some(cur) = queue.pop_front() {
        for (lhs, rhs) in &relations {
            if lhs.len() > cur.len() {
                continue;
            }
            for i in 0..=cur.len() - lhs.len() {
                if cur[i..i + lhs.len()] == lhs[..] {
                    let mut next = cur.clone();
                    next[i..i + lhs.len()].copy_from_slice(rhs);
                    if seen.insert(next.clone()) {
                        queue.push_back(next);
                    }
                }
            }
        }
    }
    seen
}

/// Shortest positive word left-divisible by both `u` and `v`, by
/// enumerating words of increasing length up to `cap`. `None` if no common
/// multiple exists within the cap or the shortest one is not unique.
pub fn oracle_artin_lub(monoid: &ArtinMonoid, u: &[Letter], v: &[Letter], cap: usize) -> Option<BTreeSet<Vec<Letter>>> {
    let rank = monoid.rank() as Letter;
    let mut words: Vec<Vec<Letter>> = vec![Vec::new()];
    for len in 1..=cap {
        words = words.iter().flat_map(|w| (0..rank).map(move |s| [w.as_slice(), &[s]].concat())).collect();
        let mut classes: Vec<BTreeSet<Vec<Letter>>> = Vec::new();
        let mut done: HashSet<Vec<Letter>> = HashSet::new();
        for w in &words {
            if done.contains(w) {
                continue;
            }
            let class = braid_class(monoid, w);
            done.extend(class.iter().cloned());
            if class.iter().any(|c| c.starts_with(u)) && class.iter().any(|c| c.starts_with(v)) {
                classes.push(class);
            }
        }
        if len >= u.len().max(v.len()) && !classes.is_empty() {
            return (classes.len() == 1).then(|| classes.remove(0));
        }
    }
    None
}

/// Result of searching a ball for the least common upper bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleLub {
    Least(NormalWord),
    /// No common upper bound inside the ball.
    NoneWithinCap,
    /// Common upper bounds exist but none is least.
    NoLeast,
}

/// Upper-bound oracle over a fixed ball; `x ≤ z` is decided by searching
/// for `p` in the ball with `x p = z`.
pub struct LubOracle<'a> {
    ball: &'a ConeBall,
    up: HashMap<NormalWord, HashSet<usize>>,
}

impl<'a> LubOracle<'a> {
    pub fn new(ball: &'a ConeBall) -> Self {
        Self { ball, up: HashMap::new() }
    }

    /// Ball indices of the elements `x p` with `p` in the ball.
    pub fn up_set(&mut self, x: &NormalWord) -> &HashSet<usize> {
        if !self.up.contains_key(x) {
            let graph = self.ball.graph();
            let limit = self.ball.max_degree() as i64 - x.degree();
            let set = self
                .ball
                .elements()
                .iter()
                .take_while(|p| p.degree() <= limit)
                .filter_map(|p| self.ball.index_of(&graph.multiply(x, p)))
                .collect();
            self.up.insert(x.clone(), set);
        }
        &self.up[x]
    }

    pub fn lub(&mut self, x: &NormalWord, y: &NormalWord) -> OracleLub {
        let ux = self.up_set(x).clone();
        let common: Vec<usize> = self.up_set(y).iter().copied().filter(|i| ux.contains(i)).collect();
        let Some(min_degree) = common.iter().map(|&i| self.ball.elements()[i].degree()).min() else {
            return OracleLub::NoneWithinCap;
        };
        let lowest: Vec<usize> = common.iter().copied().filter(|&i| self.ball.elements()[i].degree() == min_degree).collect();
        if lowest.len() != 1 {
            return OracleLub::NoLeast;
        }
        let m = self.ball.elements()[lowest[0]].clone();
        let um = self.up_set(&m);
        if common.iter().all(|i| um.contains(i)) {
            OracleLub::Least(m)
        } else {
            OracleLub::NoLeast
        }
    }
}

/// Random nontrivial factor element: `±1..=±3` for `ℤ`, a signed word of
/// length 1 to 3 for an Artin factor.
pub fn random_element(factor: &FactorSpec, rng: &mut impl Rng) -> FactorElement {
    loop {
        let e = match factor {
            FactorSpec::Integers => {
                let n: i64 = rng.gen_range(1..=3);
                FactorElement::Int(if rng.gen_bool(0.5) { n } else { -n })
            }
            FactorSpec::Artin(m) => {
                let len = rng.gen_range(1..=3);
                let letters: Vec<(Letter, bool)> =
                    (0..len).map(|_| (rng.gen_range(0..m.rank()) as Letter, rng.gen_bool(0.5))).collect();
                FactorElement::Artin(m.from_signed(&letters))
            }
        };
        if !factor.is_identity(&e) {
            return e;
        }
    }
}

/// Random expression with at most `max_syllables` syllables.
pub fn random_word(graph: &CommutationGraph, rng: &mut impl Rng, max_syllables: usize) -> Word {
    let len = rng.gen_range(0..=max_syllables);
    let syllables = (0..len)
        .map(|_| {
            let v = rng.gen_range(0..graph.vertex_count());
            Syllable::new(v, random_element(graph.factor(v), rng))
        })
        .collect();
    Word::new(syllables)
}

/// An expression for the same element: a random cancelling pair inserted
/// and a few random legal swaps applied.
pub fn perturb(graph: &CommutationGraph, w: &Word, rng: &mut impl Rng) -> Word {
    let mut s = w.syllables.clone();
    let v = rng.gen_range(0..graph.vertex_count());
    let e = random_element(graph.factor(v), rng);
    let at = rng.gen_range(0..=s.len());
    s.insert(at, Syllable::new(v, graph.factor(v).invert(&e)));
    s.insert(at, Syllable::new(v, e));
    for _ in 0..s.len() {
        let i = rng.gen_range(0..s.len() - 1);
        if graph.adjacent(s[i].vertex, s[i + 1].vertex) {
            s.swap(i, i + 1);
        }
    }
    Word::new(s)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub samples: usize,
    pub seed: u64,
    pub max_syllables: usize,
    /// Radius of the ball whose pairs are checked.
    pub ball_degree: usize,
    /// Radius of the ball searched by the lub oracle.
    pub oracle_degree: usize,
    pub max_ball: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { samples: 200, seed: 0, max_syllables: 5, ball_degree: 3, oracle_degree: 6, max_ball: 200_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    pub example: Option<String>,
}

impl CheckOutcome {
    fn new(name: &str) -> Self {
        Self { name: name.to_string(), cases: 0, failures: 0, example: None }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.example.is_none() {
                self.example = Some(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub checks: Vec<CheckOutcome>,
}

fn render_word(graph: &CommutationGraph, w: &Word) -> String {
    match graph.reduce(w) {
        Ok(x) => graph.render(&x),
        Err(e) => e.to_string(),
    }
}

/// Runs every oracle and property check on `graph`.
pub fn run_suite(graph: &CommutationGraph, options: VerifyOptions) -> Result<VerifyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut checks = Vec::new();

    let mut nf = CheckOutcome::new("normal form vs rewrite closure");
    let mut idem = CheckOutcome::new("reduce idempotent");
    let mut eq = CheckOutcome::new("equality vs rewrite closure");
    let mut inv = CheckOutcome::new("x x^-1 = 1");
    for _ in 0..options.samples {
        let w = random_word(graph, &mut rng, options.max_syllables);
        let x = graph.reduce(&w)?;
        let closure = rewrite_closure(graph, &w.syllables);
        let min = closure.iter().map(Vec::len).min().unwrap_or(0);
        nf.record(x.len() == min && closure.contains(x.syllables()), || render_word(graph, &w));
        idem.record(graph.reduce(&Word::from(&x))? == x, || render_word(graph, &w));
        inv.record(graph.multiply(&x, &graph.invert(&x)).is_identity(), || graph.render(&x));

        let same = perturb(graph, &w, &mut rng);
        let other = random_word(graph, &mut rng, options.max_syllables);
        for y in [same, other] {
            let lib = graph.equal(&w, &y)?;
            eq.record(lib == oracle_equal(graph, &w, &y), || format!("{} vs {}", render_word(graph, &w), render_word(graph, &y)));
        }
    }
    checks.extend([nf, idem, eq, inv]);

    let big = enumerate_ball(graph, options.oracle_degree, options.max_ball)?;
    let ball = big.truncate(options.ball_degree);
    let mut oracle = LubOracle::new(&big);
    let mut lub = CheckOutcome::new("lub vs upper-bound search");
    let mut frac = CheckOutcome::new("canonical fraction");
    let mut phi = CheckOutcome::new("phi preserves lub and is injective on comparable pairs");
    let cap = options.oracle_degree as i64;
    for (i, x) in ball.elements().iter().enumerate() {
        for y in &ball.elements()[i..] {
            let describe = || format!("{} , {}", graph.render(x), graph.render(y));
            let got = graph.lub(x, y)?;
            let expected = oracle.lub(x, y);
            let ok = match (&got, &expected) {
                (Join::Finite(l), OracleLub::Least(m)) => l == m,
                (Join::Finite(l), OracleLub::NoneWithinCap) => l.degree() > cap,
                (Join::Infinity, OracleLub::NoneWithinCap) => true,
                _ => false,
            };
            lub.record(ok, describe);

            let q = graph.multiply(x, &graph.invert(y));
            let ok = match graph.canonical_fraction(&q) {
                Ok((a, b)) => {
                    graph.multiply(&a, &graph.invert(&b)) == q
                        && graph.leq(&a, x)
                        && graph.leq(&b, y)
                        && graph.rgcd(&a, &b).map(|g| g.is_identity()).unwrap_or(false)
                }
                Err(_) => false,
            };
            frac.record(ok, describe);

            if let Join::Finite(l) = &got {
                let ok = graph.phi_lub(&graph.phi(x), &graph.phi(y)) == Join::Finite(graph.phi(l))
                    && (graph.phi(x) != graph.phi(y) || x == y);
                phi.record(ok, describe);
            }
        }
    }
    checks.extend([lub, frac, phi]);

    let mut cov = CheckOutcome::new("covariance on ball pairs");
    let mut checker = CovarianceChecker::new(&ball);
    for (i, x) in ball.elements().iter().enumerate() {
        for y in &ball.elements()[i..] {
            let r = checker.check(x, y)?;
            cov.record(r.passed(), || format!("{} , {}", graph.render(x), graph.render(y)));
        }
    }
    let mut defect = CheckOutcome::new("defect of generators nonzero at identity");
    let d = ball.defect_product(&graph.generators())?;
    defect.record(d.nonzero && d.identity_entry, || "identity entry vanishes".to_string());
    checks.extend([cov, defect]);

    let mut artin = CheckOutcome::new("Artin equality vs braid-relation closure");
    for v in 0..graph.vertex_count() {
        let FactorSpec::Artin(m) = graph.factor(v) else { continue };
        for len in 0..=4usize {
            let words = all_words(m.rank(), len);
            for (i, u) in words.iter().enumerate() {
                let class = braid_class(m, u);
                for w in &words[i..] {
                    let lib = m.equal_positive(&ArtinWord::new(u.clone()), &ArtinWord::new(w.clone()));
                    artin.record(lib == class.contains(w), || format!("{} vs {}", m.render(&ArtinWord::new(u.clone())), m.render(&ArtinWord::new(w.clone()))));
                }
            }
        }
    }
    if artin.cases > 0 {
        checks.push(artin);
    }

    Ok(VerifyReport { passed: checks.iter().all(CheckOutcome::passed), checks })
}

/// Every word of length `len` over `rank` letters, lexicographically.
pub fn all_words(rank: usize, len: usize) -> Vec<Vec<Letter>> {
    let mut words = vec![Vec::new()];
    for _ in 0..len {
        words = words.iter().flat_map(|w: &Vec<Letter>| (0..rank as Letter).map(move |s| [w.as_slice(), &[s]].concat())).collect();
    }
    words
}
