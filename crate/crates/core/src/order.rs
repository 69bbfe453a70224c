//! The quasi-lattice order on a graph product `(G, P)`.
//!
//! `P` is the monoid of elements whose reduced words have only positive
//! syllables; `x ≤ y` means `x^-1 y ∈ P`. Least upper bounds of positives are
//! computed recursively: pick the least vertex `I` among the initial vertices
//! of `x` and `y`, split `x = x_I x'`, `y = y_I y'`, check `I`-adjacency, and
//! return `(x_I ∨ y_I)(x' ∨ y')`.

use crate::error::{Error, Result};
use crate::factors::{FactorElement, Join};
use crate::graph::{CommutationGraph, NormalWord, Syllable, VertexId};

/// Element of the direct product of the vertex groups, one entry per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DirectProductElement {
    pub components: Vec<FactorElement>,
}

impl CommutationGraph {
    /// An element is positive when every syllable of its reduced word is.
    pub fn is_positive(&self, x: &NormalWord) -> bool {
        x.syllables().iter().all(|s| self.factor(s.vertex).is_positive(&s.element))
    }

    fn require_positive(&self, x: &NormalWord) -> Result<()> {
        if self.is_positive(x) {
            Ok(())
        } else {
            Err(Error::NotPositive)
        }
    }

    /// `x ≤ y`: `x^-1 y ∈ P`.
    pub fn leq(&self, x: &NormalWord, y: &NormalWord) -> bool {
        self.is_positive(&self.multiply(&self.invert(x), y))
    }

    /// `x ≤ᵣ y`: `y x^-1 ∈ P`, equivalently `y^-1 ≤ x^-1`.
    pub fn leq_r(&self, x: &NormalWord, y: &NormalWord) -> bool {
        self.is_positive(&self.multiply(y, &self.invert(x)))
    }

    fn adjacent_to_all(&self, v: VertexId, x: &NormalWord) -> bool {
        x.syllables().iter().all(|s| self.adjacent(v, s.vertex))
    }

    /// `I`-adjacency of two positives: `x_I ∨ y_I` is finite, and each of
    /// `x_I`, `y_I` either equals it or commutes past the rest of its word.
    pub fn i_adjacent(&self, x: &NormalWord, y: &NormalWord, v: VertexId) -> Result<bool> {
        self.require_positive(x)?;
        self.require_positive(y)?;
        let (xi, x_rest) = self.split_initial(x, v);
        let (yi, y_rest) = self.split_initial(y, v);
        Ok(self.adjacency_conditions(v, &xi, &x_rest, &yi, &y_rest).is_some())
    }

    fn adjacency_conditions(
        &self,
        v: VertexId,
        xi: &FactorElement,
        x_rest: &NormalWord,
        yi: &FactorElement,
        y_rest: &NormalWord,
    ) -> Option<FactorElement> {
        let z = self.factor(v).lub(xi, yi).finite()?;
        let b = *xi == z || self.adjacent_to_all(v, x_rest);
        let c = *yi == z || self.adjacent_to_all(v, y_rest);
        (b && c).then_some(z)
    }

    /// Least upper bound of two positive elements.
    pub fn lub(&self, x: &NormalWord, y: &NormalWord) -> Result<Join<NormalWord>> {
        self.require_positive(x)?;
        self.require_positive(y)?;
        Ok(self.lub_positive(x, y))
    }

    fn lub_positive(&self, x: &NormalWord, y: &NormalWord) -> Join<NormalWord> {
        if x.is_identity() {
            return Join::Finite(y.clone());
        }
        if y.is_identity() {
            return Join::Finite(x.clone());
        }
        let v = self
            .initial_vertices(x)
            .into_iter()
            .chain(self.initial_vertices(y))
            .min()
            .expect("nonempty words have initial vertices");
        let (xi, x_rest) = self.split_initial(x, v);
        let (yi, y_rest) = self.split_initial(y, v);
        let Some(z) = self.adjacency_conditions(v, &xi, &x_rest, &yi, &y_rest) else {
            return Join::Infinity;
        };
        match self.lub_positive(&x_rest, &y_rest) {
            Join::Infinity => Join::Infinity,
            Join::Finite(rest) => {
                let head = self.syllable(v, z).expect("factor lub lies in the factor");
                Join::Finite(self.multiply(&head, &rest))
            }
        }
    }

    /// Least upper bound of arbitrary elements: `x · ((x^-1 y) ∨ 1)`, where
    /// the least upper bound of `z` in `P` is the numerator of its
    /// canonical fraction.
    pub fn lub_general(&self, x: &NormalWord, y: &NormalWord) -> Join<NormalWord> {
        let z = self.multiply(&self.invert(x), y);
        match self.canonical_fraction(&z) {
            Ok((a, _)) => Join::Finite(self.multiply(x, &a)),
            Err(_) => Join::Infinity,
        }
    }

    /// The unique `(a, b)` of positives with `x = a b^-1` and `a ∧ᵣ b = 1`.
    ///
    /// Each syllable is split into its factor-level fraction `a_i b_i^-1`;
    /// then `a = a_1 ⋯ a_m` and `b = b_m ⋯ b_1`. The pair is independent of
    /// the reduced word used, and `a b^-1 = x` holds exactly when
    /// `x ∈ PP^-1`.
    pub fn canonical_fraction(&self, x: &NormalWord) -> Result<(NormalWord, NormalWord)> {
        let mut nums = Vec::new();
        let mut dens = Vec::new();
        for s in x.syllables() {
            let factor = self.factor(s.vertex);
            let (a, b) = factor.factorize(&s.element);
            if !factor.is_identity(&a) {
                nums.push(Syllable::new(s.vertex, a));
            }
            if !factor.is_identity(&b) {
                dens.push(Syllable::new(s.vertex, b));
            }
        }
        dens.reverse();
        let a = self.product(nums);
        let b = self.product(dens);
        if self.multiply(&a, &self.invert(&b)) == *x {
            Ok((a, b))
        } else {
            Err(Error::NotInPPInv)
        }
    }

    fn product(&self, syllables: Vec<Syllable>) -> NormalWord {
        syllables.into_iter().fold(NormalWord::identity(), |acc, s| {
            let g = self.syllable(s.vertex, s.element).expect("syllable from this graph");
            self.multiply(&acc, &g)
        })
    }

    /// Greatest lower bound `u ∧ᵣ v` of positives in the right order:
    /// `a^-1 u` where `(a, b)` is the canonical fraction of `u v^-1`.
    pub fn rgcd(&self, u: &NormalWord, v: &NormalWord) -> Result<NormalWord> {
        self.require_positive(u)?;
        self.require_positive(v)?;
        let (a, _) = self.canonical_fraction(&self.multiply(u, &self.invert(v)))?;
        Ok(self.multiply(&self.invert(&a), u))
    }

    /// Image in the direct product: the product, in order, of the syllables
    /// at each vertex.
    pub fn phi(&self, x: &NormalWord) -> DirectProductElement {
        let mut components: Vec<FactorElement> =
            (0..self.vertex_count()).map(|v| self.factor(v).identity()).collect();
        for s in x.syllables() {
            let factor = self.factor(s.vertex);
            components[s.vertex] = factor.multiply(&components[s.vertex], &s.element);
        }
        DirectProductElement { components }
    }

    /// Componentwise least upper bound in the direct product.
    pub fn phi_lub(&self, x: &DirectProductElement, y: &DirectProductElement) -> Join<DirectProductElement> {
        let mut components = Vec::with_capacity(self.vertex_count());
        for (v, (a, b)) in x.components.iter().zip(&y.components).enumerate() {
            match self.factor(v).lub(a, b) {
                Join::Finite(c) => components.push(c),
                Join::Infinity => return Join::Infinity,
            }
        }
        Join::Finite(DirectProductElement { components })
    }
}
