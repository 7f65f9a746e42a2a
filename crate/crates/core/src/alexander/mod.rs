//! The extended Alexander module of a knot diagram, the Alexander polynomial
//! and determinant, and the Burau matrices of braids.

use num_integer::Integer;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{BraidWord, Diagram};
use crate::linalg::{invariant_factors_rational, LaurentMatrix, RationalPoly};
use crate::rings::LaurentPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlexanderError {
    #[error("Δ(1) = {0}, not ±1; the diagram is not a knot diagram")]
    NotAKnot(String),
    #[error("determinant {0} is even; the diagram is not a knot diagram")]
    EvenDeterminant(String),
}

/// One row per crossing `(x, y, z)`: `1 − A` at `x`, `A` at `y`, `−1` at
/// `z`, summed where arcs coincide. Rows follow crossing order, columns arc
/// order.
pub fn presentation_matrix(d: &Diagram) -> LaurentMatrix {
    let mut m = LaurentMatrix::zeros(d.resolved().len(), d.num_arcs());
    let one_minus_a: LaurentPoly = &LaurentPoly::one() - &LaurentPoly::var();
    for (r, t) in d.resolved().iter().enumerate() {
        m[(r, t.x)] += &one_minus_a;
        m[(r, t.y)] += &LaurentPoly::var();
        m[(r, t.z)] -= &LaurentPoly::one();
    }
    m
}

/// Gcd of the corank-1 minors of the presentation matrix, normalized.
pub fn alexander_polynomial(d: &Diagram) -> Result<LaurentPoly, AlexanderError> {
    let delta = presentation_matrix(d).elementary_ideal_gcd(1);
    let at_one = delta.eval_int(1).expect("A = 1 is a unit");
    if at_one.abs() != One::one() {
        return Err(AlexanderError::NotAKnot(at_one.to_string()));
    }
    Ok(delta)
}

/// `|Δ(−1)|`.
pub fn knot_determinant(d: &Diagram) -> Result<u64, AlexanderError> {
    determinant_of(&alexander_polynomial(d)?)
}

fn determinant_of(delta: &LaurentPoly) -> Result<u64, AlexanderError> {
    let v = delta.eval_int(-1).expect("A = -1 is a unit").abs();
    let n = v.to_integer();
    if n.is_even() {
        return Err(AlexanderError::EvenDeterminant(n.to_string()));
    }
    u64::try_from(&n).map_err(|_| AlexanderError::EvenDeterminant(n.to_string()))
}

/// Decomposition data of the extended Alexander module.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtendedModule {
    pub matrix: LaurentMatrix,
    /// Diagonal entries over ℚ[A±1], unit entries included.
    pub invariant_factors: Vec<RationalPoly>,
    pub free_rank: usize,
    /// Corank-1 and corank-2 minor gcds over ℤ[A±1].
    pub e1: LaurentPoly,
    pub e2: LaurentPoly,
}

impl ExtendedModule {
    /// The non-unit invariant factors.
    pub fn torsion(&self) -> Vec<&RationalPoly> {
        self.invariant_factors.iter().filter(|f| !f.is_one()).collect()
    }
}

pub fn extended_module(d: &Diagram) -> ExtendedModule {
    let matrix = presentation_matrix(d);
    let dec = invariant_factors_rational(&matrix);
    ExtendedModule {
        e1: matrix.elementary_ideal_gcd(1),
        e2: matrix.elementary_ideal_gcd(2),
        invariant_factors: dec.invariant_factors,
        free_rank: dec.free_rank,
        matrix,
    }
}

/// Burau matrix of one letter on `n` strands. Columns are images of the
/// generators under `xᵢ ↦ xᵢ ▷ xᵢ₊₁ = (1 − A)xᵢ + A·xᵢ₊₁`, `xᵢ₊₁ ↦ xᵢ`;
/// inverse letters get the inverse block.
pub fn burau_generator(n: usize, letter: i64) -> LaurentMatrix {
    let i = letter.unsigned_abs() as usize - 1;
    assert!(i + 1 < n, "letter {letter} out of range for {n} strands");
    let mut m = LaurentMatrix::identity(n);
    let a = LaurentPoly::var();
    let one = LaurentPoly::one();
    let block = if letter > 0 {
        [[&one - &a, one.clone()], [a, LaurentPoly::zero()]]
    } else {
        let inv = LaurentPoly::monomial(1, -1);
        [[LaurentPoly::zero(), inv.clone()], [one.clone(), &one - &inv]]
    };
    for (r, row) in block.into_iter().enumerate() {
        for (c, v) in row.into_iter().enumerate() {
            m[(i + r, i + c)] = v;
        }
    }
    m
}

/// Product of the letter matrices in word order.
pub fn burau(w: &BraidWord) -> LaurentMatrix {
    let n = w.strands();
    w.letters().iter().fold(LaurentMatrix::identity(n), |acc, &l| {
        acc.checked_mul(&burau_generator(n, l)).expect("square matrices of equal size")
    })
}
