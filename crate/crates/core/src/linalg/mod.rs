//! Exact matrix computations: Smith normal form over ℤ, homogeneous systems
//! over finitely generated abelian groups, minors and elementary ideals over
//! ℤ[A±1], and invariant factors over ℚ[A±1].

mod abelian;
mod int_matrix;
mod laurent_matrix;
mod rational;

pub use abelian::{
    check_hom, cokernel, hom_eq, is_isomorphism, solve_abelian, FiniteAbGroup, LinearEquation,
    SolutionGroup,
};
pub use int_matrix::{snf_int, IntMatrix};
pub use laurent_matrix::{combinations, LaurentMatrix};
pub use rational::{invariant_factors_rational, RationalDecomposition, RationalPoly};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("expected a {}x{} matrix, found {}x{}", expected.0, expected.1, found.0, found.1)]
    Shape {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("row {row} has {len} entries, expected {expected}")]
    Ragged { row: usize, len: usize, expected: usize },
    #[error("index {index} out of bounds (size {bound})")]
    OutOfBounds { index: usize, bound: usize },
    #[error("invariant factors {0:?} must be >= 2 and form a divisibility chain")]
    BadInvariantFactors(Vec<u64>),
    #[error("matrix is not a homomorphism: generator {generator} times its order is nonzero in target coordinate {row}")]
    NotWellDefined { generator: usize, row: usize },
    #[error("equation {equation} refers to unknown {unknown}, which does not exist")]
    UnknownIndex { equation: usize, unknown: usize },
    #[error("equation {equation}: {source}")]
    InEquation {
        equation: usize,
        source: Box<LinalgError>,
    },
}
