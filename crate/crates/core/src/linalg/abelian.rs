//! Finitely generated abelian groups in invariant-factor form, homomorphisms
//! between them as integer matrices, and homogeneous linear systems.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::int_matrix::{column_echelon, integer_kernel, snf_int, solve_in_echelon};
use super::{IntMatrix, LinalgError};

/// `ℤ/d₁ ⊕ … ⊕ ℤ/d_k ⊕ ℤ^r` with `2 ≤ d₁ | d₂ | … | d_k`.
///
/// Generators are ordered torsion first, then free; a generator of a free
/// summand has order 0.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default, Serialize, Deserialize)]
pub struct FiniteAbGroup {
    pub invariant_factors: Vec<u64>,
    #[serde(default)]
    pub free_rank: usize,
}

impl FiniteAbGroup {
    pub fn new(invariant_factors: Vec<u64>, free_rank: usize) -> Result<Self, LinalgError> {
        let g = Self {
            invariant_factors,
            free_rank,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn cyclic(n: u64) -> Self {
        match n {
            0 => Self::free(1),
            1 => Self::trivial(),
            _ => Self {
                invariant_factors: vec![n],
                free_rank: 0,
            },
        }
    }

    pub fn free(rank: usize) -> Self {
        Self {
            invariant_factors: Vec::new(),
            free_rank: rank,
        }
    }

    /// The group `⊕ ℤ/nᵢ` for arbitrary cyclic orders (0 meaning ℤ),
    /// brought into invariant-factor form.
    pub fn from_cyclic_orders(orders: &[u64]) -> Self {
        Self::from_invariants(&snf_int(&IntMatrix::diagonal(orders)), orders.len())
    }

    /// Group `ℤ^generators / (relations)` from the nonzero invariant factors
    /// of the relation matrix.
    pub(crate) fn from_invariants(factors: &[BigInt], generators: usize) -> Self {
        let invariant_factors = factors
            .iter()
            .filter(|d| !d.is_one())
            .map(|d| d.to_u64().expect("invariant factor exceeds u64"))
            .collect();
        Self {
            invariant_factors,
            free_rank: generators - factors.len(),
        }
    }

    pub fn validate(&self) -> Result<(), LinalgError> {
        for (i, &d) in self.invariant_factors.iter().enumerate() {
            if d < 2 {
                return Err(LinalgError::BadInvariantFactors(self.invariant_factors.clone()));
            }
            if let Some(&next) = self.invariant_factors.get(i + 1) {
                if next % d != 0 {
                    return Err(LinalgError::BadInvariantFactors(self.invariant_factors.clone()));
                }
            }
        }
        Ok(())
    }

    pub fn num_generators(&self) -> usize {
        self.invariant_factors.len() + self.free_rank
    }

    /// Order of each generator, 0 for free generators.
    pub fn generator_orders(&self) -> Vec<u64> {
        let mut v = self.invariant_factors.clone();
        v.extend(std::iter::repeat_n(0, self.free_rank));
        v
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty() && self.free_rank == 0
    }

    /// Number of elements, `None` if infinite.
    pub fn order(&self) -> Option<u64> {
        self.is_finite()
            .then(|| self.invariant_factors.iter().product())
    }

    /// `|{ g : d·g = 0 }|` for `d ≥ 1`; finite groups only.
    pub fn torsion_count(&self, d: u64) -> Option<u64> {
        self.is_finite()
            .then(|| self.invariant_factors.iter().map(|&f| f.gcd(&d)).product())
    }

    /// All elements as coordinate vectors in mixed radix order (last
    /// coordinate fastest). Finite groups only.
    pub fn elements(&self) -> Option<Vec<Vec<u64>>> {
        if !self.is_finite() {
            return None;
        }
        let mut out = vec![Vec::new()];
        for &d in &self.invariant_factors {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..d).map(move |x| {
                        let mut v = prefix.clone();
                        v.push(x);
                        v
                    })
                })
                .collect();
        }
        Some(out)
    }

    /// Index of a reduced coordinate vector in [`FiniteAbGroup::elements`].
    pub fn element_index(&self, coords: &[u64]) -> usize {
        self.invariant_factors
            .iter()
            .zip(coords)
            .fold(0usize, |acc, (&d, &x)| acc * d as usize + x as usize)
    }

    /// Reduces integer coordinates into canonical representatives.
    pub fn reduce(&self, coords: &[BigInt]) -> Vec<BigInt> {
        coords
            .iter()
            .zip(self.generator_orders())
            .map(|(x, d)| if d == 0 { x.clone() } else { x.mod_floor(&BigInt::from(d)) })
            .collect()
    }
}

impl fmt::Display for FiniteAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut parts: Vec<String> = self.invariant_factors.iter().map(|d| format!("Z/{d}")).collect();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 {
                "Z".to_string()
            } else {
                format!("Z^{}", self.free_rank)
            });
        }
        f.write_str(&parts.join(" + "))
    }
}

/// Checks that `m` (rows = target generators, cols = source generators)
/// defines a homomorphism between the given groups.
pub fn check_hom(m: &IntMatrix, source: &FiniteAbGroup, target: &FiniteAbGroup) -> Result<(), LinalgError> {
    let expected = (target.num_generators(), source.num_generators());
    if m.shape() != expected {
        return Err(LinalgError::Shape {
            expected,
            found: m.shape(),
        });
    }
    let t_orders = target.generator_orders();
    for (j, &d) in source.generator_orders().iter().enumerate() {
        if d == 0 {
            continue;
        }
        for (i, &e) in t_orders.iter().enumerate() {
            let image = &m[(i, j)] * BigInt::from(d);
            let ok = if e == 0 {
                image.is_zero()
            } else {
                image.is_multiple_of(&BigInt::from(e))
            };
            if !ok {
                return Err(LinalgError::NotWellDefined { generator: j, row: i });
            }
        }
    }
    Ok(())
}

/// Equality of two homomorphisms into `target`, entrywise modulo the target
/// generator orders.
pub fn hom_eq(a: &IntMatrix, b: &IntMatrix, target: &FiniteAbGroup) -> bool {
    if a.shape() != b.shape() {
        return false;
    }
    target.generator_orders().iter().enumerate().all(|(i, &e)| {
        (0..a.cols()).all(|j| {
            let diff = &a[(i, j)] - &b[(i, j)];
            if e == 0 {
                diff.is_zero()
            } else {
                diff.is_multiple_of(&BigInt::from(e))
            }
        })
    })
}

/// Cokernel `target / image(m)`.
pub fn cokernel(m: &IntMatrix, target: &FiniteAbGroup) -> FiniteAbGroup {
    let t = target.num_generators();
    let orders = target.generator_orders();
    let mut cols: Vec<Vec<BigInt>> = (0..m.cols()).map(|j| m.column(j)).collect();
    for (i, &e) in orders.iter().enumerate() {
        if e > 0 {
            let mut c = vec![BigInt::zero(); t];
            c[i] = BigInt::from(e);
            cols.push(c);
        }
    }
    let rel = columns_to_matrix(&cols, t);
    FiniteAbGroup::from_invariants(&snf_int(&rel), t)
}

/// Whether `m` is a bijective homomorphism `source → target`.
pub fn is_isomorphism(m: &IntMatrix, source: &FiniteAbGroup, target: &FiniteAbGroup) -> Result<bool, LinalgError> {
    check_hom(m, source, target)?;
    if !cokernel(m, target).is_trivial() {
        return Ok(false);
    }
    let eq = LinearEquation {
        target: target.clone(),
        terms: vec![(0, m.clone())],
    };
    Ok(solve_abelian(&[eq], std::slice::from_ref(source))?.group.is_trivial())
}

fn columns_to_matrix(cols: &[Vec<BigInt>], rows: usize) -> IntMatrix {
    let mut out = IntMatrix::zeros(rows, cols.len());
    for (j, c) in cols.iter().enumerate() {
        for (i, x) in c.iter().enumerate() {
            out[(i, j)] = x.clone();
        }
    }
    out
}

/// `Σ_k terms[k].1 · x_{terms[k].0} = 0` in `target`.
#[derive(Clone, Debug)]
pub struct LinearEquation {
    pub target: FiniteAbGroup,
    /// `(unknown index, matrix from that unknown's group into target)`;
    /// repeated unknowns are summed.
    pub terms: Vec<(usize, IntMatrix)>,
}

/// The solution subgroup of a homogeneous system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionGroup {
    /// Isomorphism type.
    pub group: FiniteAbGroup,
    /// A generating set of solutions, one coordinate vector per unknown,
    /// reduced modulo generator orders.
    pub generators: Vec<Vec<Vec<BigInt>>>,
}

/// Solves a homogeneous linear system over finitely generated abelian groups.
///
/// The system is lifted to ℤ: with `M` the stacked coefficient matrix and
/// `D_t`, `D_s` the diagonal order matrices of target and source, the
/// solutions are `{x : Mx ∈ D_t ℤ^t} / D_s ℤ^s`. The numerator is the
/// projection of `ker [M | −D_t]`; the quotient is read off from a Smith
/// normal form.
pub fn solve_abelian(
    equations: &[LinearEquation],
    unknowns: &[FiniteAbGroup],
) -> Result<SolutionGroup, LinalgError> {
    let offsets: Vec<usize> = unknowns
        .iter()
        .scan(0, |acc, g| {
            let o = *acc;
            *acc += g.num_generators();
            Some(o)
        })
        .collect();
    let s: usize = unknowns.iter().map(FiniteAbGroup::num_generators).sum();
    let t: usize = equations.iter().map(|e| e.target.num_generators()).sum();
    let source_orders: Vec<u64> = unknowns.iter().flat_map(FiniteAbGroup::generator_orders).collect();
    let target_orders: Vec<u64> = equations.iter().flat_map(|e| e.target.generator_orders()).collect();

    let mut m = IntMatrix::zeros(t, s);
    let mut row0 = 0;
    for (ei, eq) in equations.iter().enumerate() {
        for (u, block) in &eq.terms {
            let g = unknowns.get(*u).ok_or(LinalgError::UnknownIndex {
                equation: ei,
                unknown: *u,
            })?;
            check_hom(block, g, &eq.target).map_err(|e| LinalgError::InEquation {
                equation: ei,
                source: Box::new(e),
            })?;
            for i in 0..block.rows() {
                for j in 0..block.cols() {
                    m[(row0 + i, offsets[*u] + j)] += &block[(i, j)];
                }
            }
        }
        row0 += eq.target.num_generators();
    }

    // [M | -D_t] restricted to target generators of finite order
    let congruence: Vec<(usize, u64)> = target_orders
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| (i, e))
        .collect();
    let mut lifted = IntMatrix::zeros(t, s + congruence.len());
    for i in 0..t {
        for j in 0..s {
            lifted[(i, j)] = m[(i, j)].clone();
        }
    }
    for (k, &(i, e)) in congruence.iter().enumerate() {
        lifted[(i, s + k)] = -BigInt::from(e);
    }
    let lattice_gens: Vec<Vec<BigInt>> = integer_kernel(&lifted)
        .into_iter()
        .map(|v| v[..s].to_vec())
        .collect();

    let ech = column_echelon(lattice_gens, s);
    let r = ech.basis.len();
    let mut relations: Vec<Vec<BigInt>> = Vec::new();
    for (j, &d) in source_orders.iter().enumerate() {
        if d == 0 {
            continue;
        }
        let mut v = vec![BigInt::zero(); s];
        v[j] = BigInt::from(d);
        let coords = solve_in_echelon(&ech, &v).expect("source relations lie in the solution lattice");
        relations.push(coords);
    }
    let rel = columns_to_matrix(&relations, r);
    let group = FiniteAbGroup::from_invariants(&snf_int(&rel), r);

    let generators = ech
        .basis
        .iter()
        .map(|col| {
            unknowns
                .iter()
                .zip(&offsets)
                .map(|(g, &o)| g.reduce(&col[o..o + g.num_generators()]))
                .collect()
        })
        .collect();
    Ok(SolutionGroup { group, generators })
}
