//! Beck modules over finite quandles: families of finite abelian groups
//! `M(x)` with structure maps `ε(x,y): M(x) → M(x▷y)` and
//! `α(x,y): M(y) → M(x▷y)`, their axioms, the extension quandle, and
//! derivation groups of knot diagrams.

mod derivation;

pub use derivation::{
    ab_presentation, derivation_spectrum, derivations, ABPresentation, ABRelation, DerivationGroup,
};

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::linalg::{check_hom, hom_eq, is_isomorphism, FiniteAbGroup, IntMatrix, LinalgError};
use crate::quandle::{FiniteQuandle, QuandleError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BeckError {
    #[error("{what} has {found} entries, expected {expected}")]
    Count {
        what: &'static str,
        found: usize,
        expected: usize,
    },
    #[error("M({x}) = {group} is infinite; only finite groups are supported")]
    Infinite { x: usize, group: FiniteAbGroup },
    #[error("{map}({x},{y}) is not a homomorphism: {source}")]
    BadMap {
        map: &'static str,
        x: usize,
        y: usize,
        source: LinalgError,
    },
    #[error("module axioms fail: {0}")]
    Axiom(ModuleViolation),
    #[error("{t} is not invertible modulo {n}")]
    NotInvertible { t: i64, n: u64 },
    #[error("the base quandle is not a quandle: {0}")]
    Base(#[from] QuandleError),
    #[error("coloring has {found} entries but the diagram has {expected} arcs")]
    ColoringLength { found: usize, expected: usize },
    #[error("coloring uses {color}, outside the base quandle of order {order}")]
    ColorOutOfRange { color: usize, order: usize },
    #[error("coloring violates crossing {crossing} ({x}, {y}, {z}): c({x}) ▷ c({y}) ≠ c({z})")]
    InvalidColoring {
        crossing: usize,
        x: usize,
        y: usize,
        z: usize,
    },
    #[error("the module is defined over a different quandle")]
    BaseMismatch,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A failed module axiom with its witness.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "axiom")]
pub enum ModuleViolation {
    /// `α(x,y)` is not invertible.
    M1 { x: usize, y: usize },
    /// `α(x,y▷z)α(y,z) ≠ α(x▷y,x▷z)α(x,z)`.
    A1 { x: usize, y: usize, z: usize },
    /// `α(x,y▷z)ε(y,z) ≠ ε(x▷y,x▷z)α(x,y)`.
    A2 { x: usize, y: usize, z: usize },
    /// `ε(x,y▷z) ≠ ε(x▷y,x▷z)ε(x,y) + α(x▷y,x▷z)ε(x,z)`.
    A3 { x: usize, y: usize, z: usize },
    /// `ε(x,x) ≠ id − α(x,x)`.
    A4 { x: usize },
}

impl fmt::Display for ModuleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleViolation::M1 { x, y } => write!(f, "M1: α({x},{y}) is not invertible"),
            ModuleViolation::A1 { x, y, z } => write!(f, "A1 fails at ({x}, {y}, {z})"),
            ModuleViolation::A2 { x, y, z } => write!(f, "A2 fails at ({x}, {y}, {z})"),
            ModuleViolation::A3 { x, y, z } => write!(f, "A3 fails at ({x}, {y}, {z})"),
            ModuleViolation::A4 { x } => write!(f, "A4: ε({x},{x}) ≠ id − α({x},{x})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleReport {
    pub passes: bool,
    /// At most [`crate::quandle::MAX_VIOLATIONS`] witnesses.
    pub violations: Vec<ModuleViolation>,
}

/// A Beck module over a finite quandle, structurally validated: every `ε`
/// and `α` is a homomorphism between the stated groups. The axioms are
/// checked separately by [`check_module`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuandleModule {
    base: FiniteQuandle,
    groups: Vec<FiniteAbGroup>,
    eps: Vec<Vec<IntMatrix>>,
    alpha: Vec<Vec<IntMatrix>>,
}

impl QuandleModule {
    pub fn new(
        base: FiniteQuandle,
        groups: Vec<FiniteAbGroup>,
        eps: Vec<Vec<IntMatrix>>,
        alpha: Vec<Vec<IntMatrix>>,
    ) -> Result<Self, BeckError> {
        if !base.is_quandle() {
            let x = (0..base.order()).find(|&x| base.op(x, x) != x).expect("not idempotent");
            return Err(QuandleError::NotAQuandle(crate::quandle::Violation::Idempotency { x }).into());
        }
        let n = base.order();
        let count = |what, found: usize| {
            if found == n {
                Ok(())
            } else {
                Err(BeckError::Count {
                    what,
                    found,
                    expected: n,
                })
            }
        };
        count("groups", groups.len())?;
        count("eps", eps.len())?;
        count("alpha", alpha.len())?;
        for x in 0..n {
            count("an eps row", eps[x].len())?;
            count("an alpha row", alpha[x].len())?;
        }
        if let Some((x, g)) = groups.iter().enumerate().find(|(_, g)| !g.is_finite()) {
            return Err(BeckError::Infinite { x, group: g.clone() });
        }
        for x in 0..n {
            for y in 0..n {
                let t = &groups[base.op(x, y)];
                check_hom(&eps[x][y], &groups[x], t).map_err(|source| BeckError::BadMap {
                    map: "eps",
                    x,
                    y,
                    source,
                })?;
                check_hom(&alpha[x][y], &groups[y], t).map_err(|source| BeckError::BadMap {
                    map: "alpha",
                    x,
                    y,
                    source,
                })?;
            }
        }
        Ok(Self {
            base,
            groups,
            eps,
            alpha,
        })
    }

    pub fn base(&self) -> &FiniteQuandle {
        &self.base
    }

    pub fn groups(&self) -> &[FiniteAbGroup] {
        &self.groups
    }

    pub fn group(&self, x: usize) -> &FiniteAbGroup {
        &self.groups[x]
    }

    pub fn eps(&self, x: usize, y: usize) -> &IntMatrix {
        &self.eps[x][y]
    }

    pub fn alpha(&self, x: usize, y: usize) -> &IntMatrix {
        &self.alpha[x][y]
    }

    /// Replaces one structure map, keeping the structural checks.
    pub fn with_eps(&self, x: usize, y: usize, m: IntMatrix) -> Result<Self, BeckError> {
        let mut eps = self.eps.clone();
        eps[x][y] = m;
        Self::new(self.base.clone(), self.groups.clone(), eps, self.alpha.clone())
    }

    pub fn with_alpha(&self, x: usize, y: usize, m: IntMatrix) -> Result<Self, BeckError> {
        let mut alpha = self.alpha.clone();
        alpha[x][y] = m;
        Self::new(self.base.clone(), self.groups.clone(), self.eps.clone(), alpha)
    }

    /// Total number of elements `Σ |M(x)|`.
    pub fn total_order(&self) -> usize {
        self.groups.iter().map(|g| g.order().expect("finite") as usize).sum()
    }

    fn offsets(&self) -> Vec<usize> {
        self.groups
            .iter()
            .scan(0, |acc, g| {
                let o = *acc;
                *acc += g.order().expect("finite") as usize;
                Some(o)
            })
            .collect()
    }

    /// Global index of `(x, m)`; elements of `M(x)` are numbered as in
    /// [`FiniteAbGroup::elements`] and the fibres are laid out in order of
    /// `x`.
    pub fn element_index(&self, x: usize, coords: &[u64]) -> usize {
        self.offsets()[x] + self.groups[x].element_index(coords)
    }
}

fn apply(m: &IntMatrix, v: &[u64], target: &FiniteAbGroup) -> Vec<u64> {
    let orders = target.generator_orders();
    (0..m.rows())
        .map(|i| {
            let s: BigInt = (0..m.cols()).map(|j| &m[(i, j)] * BigInt::from(v[j])).sum();
            s.mod_floor(&BigInt::from(orders[i])).to_u64().expect("reduced")
        })
        .collect()
}

fn sub(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    a.checked_add(&b.scaled(-1)).expect("same shape")
}

/// Checks M1 (every `α` invertible) and the coefficient identities A1–A4
/// that make the extension a quandle.
pub fn check_module(m: &QuandleModule) -> ModuleReport {
    let q = &m.base;
    let n = q.order();
    let mut violations = Vec::new();
    let mut push = |v| {
        if violations.len() < crate::quandle::MAX_VIOLATIONS {
            violations.push(v);
        }
    };
    let mul = |a: &IntMatrix, b: &IntMatrix| a.checked_mul(b).expect("shapes follow the groups");
    let mut fails = false;
    for x in 0..n {
        for y in 0..n {
            let ok = is_isomorphism(&m.alpha[x][y], &m.groups[y], &m.groups[q.op(x, y)])
                .expect("structure maps are homomorphisms");
            if !ok {
                fails = true;
                push(ModuleViolation::M1 { x, y });
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (xy, xz, yz) = (q.op(x, y), q.op(x, z), q.op(y, z));
                let target = &m.groups[q.op(x, yz)];
                let a1l = mul(&m.alpha[x][yz], &m.alpha[y][z]);
                let a1r = mul(&m.alpha[xy][xz], &m.alpha[x][z]);
                if !hom_eq(&a1l, &a1r, target) {
                    fails = true;
                    push(ModuleViolation::A1 { x, y, z });
                }
                let a2l = mul(&m.alpha[x][yz], &m.eps[y][z]);
                let a2r = mul(&m.eps[xy][xz], &m.alpha[x][y]);
                if !hom_eq(&a2l, &a2r, target) {
                    fails = true;
                    push(ModuleViolation::A2 { x, y, z });
                }
                let a3r = mul(&m.eps[xy][xz], &m.eps[x][y])
                    .checked_add(&mul(&m.alpha[xy][xz], &m.eps[x][z]))
                    .expect("same shape");
                if !hom_eq(&m.eps[x][yz], &a3r, target) {
                    fails = true;
                    push(ModuleViolation::A3 { x, y, z });
                }
            }
        }
    }
    for x in 0..n {
        let id = IntMatrix::identity(m.groups[x].num_generators());
        if !hom_eq(&m.eps[x][x], &sub(&id, &m.alpha[x][x]), &m.groups[x]) {
            fails = true;
            push(ModuleViolation::A4 { x });
        }
    }
    ModuleReport {
        passes: !fails,
        violations,
    }
}

/// The table of `(x,m) ▷ (y,n) = (x▷y, ε(x,y)m + α(x,y)n)` on the disjoint
/// union of the fibres, without checking any axioms.
pub fn operation_table(m: &QuandleModule) -> Vec<Vec<usize>> {
    let n = m.base.order();
    let offsets = m.offsets();
    let elements: Vec<Vec<Vec<u64>>> = m.groups.iter().map(|g| g.elements().expect("finite")).collect();
    let mut table = Vec::with_capacity(m.total_order());
    for x in 0..n {
        for u in &elements[x] {
            let mut row = Vec::with_capacity(m.total_order());
            for y in 0..n {
                let xy = m.base.op(x, y);
                let target = &m.groups[xy];
                let eu = apply(&m.eps[x][y], u, target);
                for v in &elements[y] {
                    let av = apply(&m.alpha[x][y], v, target);
                    let sum: Vec<u64> = eu
                        .iter()
                        .zip(&av)
                        .zip(target.generator_orders())
                        .map(|((a, b), d)| (a + b) % d)
                        .collect();
                    row.push(offsets[xy] + target.element_index(&sum));
                }
            }
            table.push(row);
        }
    }
    table
}

/// The extension quandle of a module that passes [`check_module`].
pub fn extension(m: &QuandleModule) -> Result<FiniteQuandle, BeckError> {
    let report = check_module(m);
    if let Some(v) = report.violations.into_iter().next() {
        return Err(BeckError::Axiom(v));
    }
    Ok(FiniteQuandle::from_table(operation_table(m))?)
}

/// `M(x) = ℤ/n` for every `x`, `α = t`, `ε = 1 − t`.
pub fn constant_module(q: &FiniteQuandle, n: u64, t: i64) -> Result<QuandleModule, BeckError> {
    let ni = n as i64;
    if n == 0 || t.mod_floor(&ni).gcd(&ni) != 1 {
        return Err(BeckError::NotInvertible { t, n });
    }
    let g = FiniteAbGroup::cyclic(n);
    let k = g.num_generators();
    let size = q.order();
    let scalar = |c: i64| IntMatrix::scalar(k, c.mod_floor(&ni));
    QuandleModule::new(
        q.clone(),
        vec![g; size],
        vec![vec![scalar(1 - t); size]; size],
        vec![vec![scalar(t); size]; size],
    )
}

/// `α = id`, `ε = 0` on `ℤ/n`.
pub fn trivial_module(q: &FiniteQuandle, n: u64) -> Result<QuandleModule, BeckError> {
    constant_module(q, n, 1)
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum BaseRepr {
    Named(String),
    Table(FiniteQuandle),
}

#[derive(Serialize, Deserialize)]
struct Repr {
    base: BaseRepr,
    groups: Vec<FiniteAbGroup>,
    eps: Vec<Vec<IntMatrix>>,
    alpha: Vec<Vec<IntMatrix>>,
}

/// `{"base", "groups", "eps", "alpha"}`; `base` is a quandle table object or
/// a constructor name such as `"dihedral:3"`.
impl Serialize for QuandleModule {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        Repr {
            base: BaseRepr::Table(self.base.clone()),
            groups: self.groups.clone(),
            eps: self.eps.clone(),
            alpha: self.alpha.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuandleModule {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let r = Repr::deserialize(d)?;
        let base = match r.base {
            BaseRepr::Table(q) => q,
            BaseRepr::Named(s) => crate::quandle::from_spec(&s).map_err(D::Error::custom)?,
        };
        QuandleModule::new(base, r.groups, r.eps, r.alpha).map_err(D::Error::custom)
    }
}
