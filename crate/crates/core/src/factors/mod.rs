//! Vertex groups of a graph product, each with its positive cone.
//!
//! Two kinds are supported: the integers ordered by the naturals, and
//! finite-type Artin groups ordered by their Artin monoid. Both are lattice
//! ordered, so least upper bounds always exist inside a single factor.

pub mod artin;
pub mod coxeter;

use std::sync::Arc;

pub use artin::{ArtinFraction, ArtinMonoid, ArtinWord, Letter};
pub use coxeter::{CoxeterMatrix, CoxeterType};

/// Lattice join result; `Infinity` means no common upper bound.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Join<T> {
    Finite(T),
    Infinity,
}

impl<T> Join<T> {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Join::Infinity)
    }

    pub fn finite(self) -> Option<T> {
        match self {
            Join::Finite(x) => Some(x),
            Join::Infinity => None,
        }
    }

    pub fn as_ref(&self) -> Join<&T> {
        match self {
            Join::Finite(x) => Join::Finite(x),
            Join::Infinity => Join::Infinity,
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Join<U> {
        match self {
            Join::Finite(x) => Join::Finite(f(x)),
            Join::Infinity => Join::Infinity,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorSpec {
    /// `(ℤ, ℕ)`.
    Integers,
    /// A finite-type Artin group with its Artin monoid as cone.
    Artin(Arc<ArtinMonoid>),
}

/// Element of a single factor. Artin elements are canonical fractions, so
/// the derived equality is equality in the group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactorElement {
    Int(i64),
    Artin(ArtinFraction),
}

impl FactorSpec {
    pub fn artin(monoid: ArtinMonoid) -> Self {
        FactorSpec::Artin(Arc::new(monoid))
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            FactorSpec::Integers => "Z",
            FactorSpec::Artin(_) => "artin",
        }
    }

    pub fn identity(&self) -> FactorElement {
        match self {
            FactorSpec::Integers => FactorElement::Int(0),
            FactorSpec::Artin(_) => FactorElement::Artin(ArtinFraction::identity()),
        }
    }

    /// Whether `x` is an element of this factor.
    pub fn accepts(&self, x: &FactorElement) -> bool {
        match (self, x) {
            (FactorSpec::Integers, FactorElement::Int(_)) => true,
            (FactorSpec::Artin(m), FactorElement::Artin(f)) => {
                f.num().letters().iter().chain(f.den().letters()).all(|&s| (s as usize) < m.rank())
            }
            _ => false,
        }
    }

    /// Cone generators: `1` for the integers, the letters for an Artin monoid.
    pub fn generators(&self) -> Vec<FactorElement> {
        match self {
            FactorSpec::Integers => vec![FactorElement::Int(1)],
            FactorSpec::Artin(m) => (0..m.rank() as Letter)
                .map(|s| FactorElement::Artin(m.positive(&ArtinWord::letter(s))))
                .collect(),
        }
    }

    pub fn is_identity(&self, x: &FactorElement) -> bool {
        match x {
            FactorElement::Int(n) => *n == 0,
            FactorElement::Artin(f) => f.is_identity(),
        }
    }

    pub fn multiply(&self, x: &FactorElement, y: &FactorElement) -> FactorElement {
        match (self, x, y) {
            (FactorSpec::Integers, FactorElement::Int(a), FactorElement::Int(b)) => FactorElement::Int(a + b),
            (FactorSpec::Artin(m), FactorElement::Artin(a), FactorElement::Artin(b)) => {
                FactorElement::Artin(m.multiply(a, b))
            }
            _ => panic!("factor element kind does not match its factor"),
        }
    }

    pub fn invert(&self, x: &FactorElement) -> FactorElement {
        match x {
            FactorElement::Int(n) => FactorElement::Int(-n),
            FactorElement::Artin(f) => FactorElement::Artin(f.inverse()),
        }
    }

    pub fn is_positive(&self, x: &FactorElement) -> bool {
        match x {
            FactorElement::Int(n) => *n >= 0,
            FactorElement::Artin(f) => f.is_positive(),
        }
    }

    /// `x ≤ y`, i.e. `x^-1 y` is positive.
    pub fn leq(&self, x: &FactorElement, y: &FactorElement) -> bool {
        match (self, x, y) {
            (FactorSpec::Integers, FactorElement::Int(a), FactorElement::Int(b)) => a <= b,
            (FactorSpec::Artin(m), FactorElement::Artin(a), FactorElement::Artin(b)) => m.leq(a, b),
            _ => panic!("factor element kind does not match its factor"),
        }
    }

    /// Least upper bound of two group elements. Never `Infinity` for the
    /// supported kinds, which are lattice ordered.
    pub fn lub(&self, x: &FactorElement, y: &FactorElement) -> Join<FactorElement> {
        match (self, x, y) {
            (FactorSpec::Integers, FactorElement::Int(a), FactorElement::Int(b)) => {
                Join::Finite(FactorElement::Int(*a.max(b)))
            }
            (FactorSpec::Artin(m), FactorElement::Artin(a), FactorElement::Artin(b)) => {
                Join::Finite(FactorElement::Artin(m.lub(a, b)))
            }
            _ => panic!("factor element kind does not match its factor"),
        }
    }

    /// Greatest common right divisor of two positive elements.
    pub fn rgcd(&self, u: &FactorElement, v: &FactorElement) -> FactorElement {
        match (self, u, v) {
            (FactorSpec::Integers, FactorElement::Int(a), FactorElement::Int(b)) => FactorElement::Int(*a.min(b)),
            (FactorSpec::Artin(m), FactorElement::Artin(a), FactorElement::Artin(b)) => {
                FactorElement::Artin(m.positive(&m.rgcd_positive(a.num(), b.num())))
            }
            _ => panic!("factor element kind does not match its factor"),
        }
    }

    /// The canonical pair `(a, b)` of positives with `x = a b^-1` and
    /// `a ∧ᵣ b = 1`.
    pub fn factorize(&self, x: &FactorElement) -> (FactorElement, FactorElement) {
        match x {
            FactorElement::Int(n) if *n >= 0 => (FactorElement::Int(*n), FactorElement::Int(0)),
            FactorElement::Int(n) => (FactorElement::Int(0), FactorElement::Int(-n)),
            FactorElement::Artin(f) => (
                FactorElement::Artin(ArtinFraction::from_normalized(f.num().clone())),
                FactorElement::Artin(ArtinFraction::from_normalized(f.den().clone())),
            ),
        }
    }

    /// Additive degree homomorphism, positive on nontrivial positives.
    pub fn degree(&self, x: &FactorElement) -> i64 {
        match x {
            FactorElement::Int(n) => *n,
            FactorElement::Artin(f) => f.degree(),
        }
    }
}
