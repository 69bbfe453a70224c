//! Word problem, quasi-lattice order and truncated Toeplitz representations
//! for graph products of right-angled and finite-type Artin factors.

pub mod cli;
pub mod error;
pub mod factors;
pub mod graph;
pub mod io;
pub mod order;
pub mod toeplitz;
pub mod verify;

pub use error::{Error, Result};
pub use factors::{ArtinFraction, ArtinMonoid, ArtinWord, CoxeterMatrix, FactorElement, FactorSpec, Join};
pub use graph::{CommutationGraph, NormalWord, Syllable, Vertex, VertexId, Word};
pub use order::DirectProductElement;
pub use toeplitz::{enumerate_ball, ConeBall, SparseOperator};
