//! Finite racks and quandles as operation tables, their axioms, standard
//! families, and colorings of knot diagrams.

mod coloring;

pub use coloring::{colorings, Coloring};

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuandleError {
    #[error("table must be square: row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("entry ({x}, {y}) = {value} is out of range for order {n}")]
    OutOfRange { x: usize, y: usize, value: usize, n: usize },
    #[error("table is not a rack: {0}")]
    NotARack(Violation),
    #[error("table is not a quandle: {0}")]
    NotAQuandle(Violation),
    #[error("a quandle needs at least one element")]
    Empty,
    #[error("{t} is not invertible modulo {n}")]
    NotInvertible { t: i64, n: usize },
    #[error("unknown quandle `{0}`; expected dihedral:n, alexander:n:t or trivial:n")]
    BadSpec(String),
}

/// A failed axiom with the elements witnessing it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum Violation {
    /// Row `x` misses the value `missing`.
    NotBijective { x: usize, missing: usize },
    /// `x ▷ (y ▷ z) ≠ (x ▷ y) ▷ (x ▷ z)`.
    SelfDistributivity { x: usize, y: usize, z: usize },
    /// `x ▷ x ≠ x`.
    Idempotency { x: usize },
    /// `x ▷ (x ▷ y) ≠ y`.
    Involutary { x: usize, y: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotBijective { x, missing } => {
                write!(f, "left multiplication by {x} never takes the value {missing}")
            }
            Violation::SelfDistributivity { x, y, z } => {
                write!(f, "self-distributivity fails at ({x}, {y}, {z})")
            }
            Violation::Idempotency { x } => write!(f, "{x} ▷ {x} ≠ {x}"),
            Violation::Involutary { x, y } => write!(f, "{x} ▷ ({x} ▷ {y}) ≠ {y}"),
        }
    }
}

/// Outcome of [`check_axioms`]. At most [`MAX_VIOLATIONS`] witnesses are
/// kept, in the order they are found.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub is_rack: bool,
    pub is_quandle: bool,
    pub is_kei: bool,
    pub violations: Vec<Violation>,
}

pub const MAX_VIOLATIONS: usize = 16;

fn check_shape(table: &[Vec<usize>]) -> Result<(), QuandleError> {
    let n = table.len();
    for (x, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(QuandleError::NotSquare { row: x, len: row.len(), n });
        }
        if let Some((y, &value)) = row.iter().enumerate().find(|(_, &v)| v >= n) {
            return Err(QuandleError::OutOfRange { x, y, value, n });
        }
    }
    Ok(())
}

/// Exhaustively checks bijectivity, self-distributivity, idempotency and
/// the involutary law.
pub fn check_axioms(table: &[Vec<usize>]) -> Result<AxiomReport, QuandleError> {
    check_shape(table)?;
    let n = table.len();
    let mut violations = Vec::new();
    let mut push = |v: Violation| {
        if violations.len() < MAX_VIOLATIONS {
            violations.push(v);
        }
    };

    let mut bijective = true;
    for (x, row) in table.iter().enumerate() {
        let mut hit = vec![false; n];
        for &v in row {
            hit[v] = true;
        }
        if let Some(missing) = hit.iter().position(|h| !h) {
            bijective = false;
            push(Violation::NotBijective { x, missing });
        }
    }
    let mut distributive = true;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if table[x][table[y][z]] != table[table[x][y]][table[x][z]] {
                    distributive = false;
                    push(Violation::SelfDistributivity { x, y, z });
                }
            }
        }
    }
    let mut idempotent = true;
    for x in 0..n {
        if table[x][x] != x {
            idempotent = false;
            push(Violation::Idempotency { x });
        }
    }
    let mut involutary = true;
    for x in 0..n {
        for y in 0..n {
            if table[x][table[x][y]] != y {
                involutary = false;
                push(Violation::Involutary { x, y });
            }
        }
    }
    let is_rack = bijective && distributive;
    let is_quandle = is_rack && idempotent;
    Ok(AxiomReport {
        is_rack,
        is_quandle,
        is_kei: is_quandle && involutary,
        violations,
    })
}

/// A finite rack on `{0, …, n−1}` with `table[x][y] = x ▷ y`, validated on
/// construction. Despite the name, racks that are not quandles are allowed;
/// see [`FiniteQuandle::is_quandle`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteQuandle {
    table: Vec<Vec<usize>>,
    inverse: Vec<Vec<usize>>,
    is_quandle: bool,
}

impl FiniteQuandle {
    /// Accepts any rack table.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self, QuandleError> {
        let report = check_axioms(&table)?;
        if !report.is_rack {
            let v = report
                .violations
                .into_iter()
                .find(|v| matches!(v, Violation::NotBijective { .. } | Violation::SelfDistributivity { .. }))
                .expect("a failed rack check has a witness");
            return Err(QuandleError::NotARack(v));
        }
        let n = table.len();
        let mut inverse = vec![vec![0; n]; n];
        for (x, row) in table.iter().enumerate() {
            for (y, &v) in row.iter().enumerate() {
                inverse[x][v] = y;
            }
        }
        Ok(Self {
            table,
            inverse,
            is_quandle: report.is_quandle,
        })
    }

    /// Like [`FiniteQuandle::from_table`] but also requires `x ▷ x = x`.
    pub fn quandle_from_table(table: Vec<Vec<usize>>) -> Result<Self, QuandleError> {
        let q = Self::from_table(table)?;
        match (0..q.order()).find(|&x| q.op(x, x) != x) {
            Some(x) => Err(QuandleError::NotAQuandle(Violation::Idempotency { x })),
            None => Ok(q),
        }
    }

    fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self, QuandleError> {
        if n == 0 {
            return Err(QuandleError::Empty);
        }
        Self::from_table((0..n).map(|x| (0..n).map(|y| f(x, y)).collect()).collect())
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// `x ▷ y`.
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.table[x][y]
    }

    /// The unique `y` with `x ▷ y = z`.
    pub fn op_inv(&self, x: usize, z: usize) -> usize {
        self.inverse[x][z]
    }

    pub fn is_quandle(&self) -> bool {
        self.is_quandle
    }

    pub fn is_kei(&self) -> bool {
        self.is_quandle && (0..self.order()).all(|x| (0..self.order()).all(|y| self.op(x, self.op(x, y)) == y))
    }

    /// The permutation `x ↦ x ▷ x`.
    pub fn canonical_automorphism(&self) -> Vec<usize> {
        (0..self.order()).map(|x| self.op(x, x)).collect()
    }

    /// Orbits of the inner automorphism group: classes of `y ~ x ▷ y`.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut label = vec![usize::MAX; n];
        let mut orbits = Vec::new();
        for s in 0..n {
            if label[s] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            let mut members = vec![s];
            label[s] = id;
            let mut i = 0;
            while i < members.len() {
                let y = members[i];
                for x in 0..n {
                    for w in [self.op(x, y), self.op_inv(x, y)] {
                        if label[w] == usize::MAX {
                            label[w] = id;
                            members.push(w);
                        }
                    }
                }
                i += 1;
            }
            members.sort_unstable();
            orbits.push(members);
        }
        orbits
    }

    pub fn orbit_count(&self) -> usize {
        self.orbits().len()
    }

    pub fn is_connected(&self) -> bool {
        self.orbit_count() == 1
    }
}

/// The permutation `x ↦ x ▷ x` of a rack table.
pub fn canonical_automorphism(table: &[Vec<usize>]) -> Result<Vec<usize>, QuandleError> {
    Ok(FiniteQuandle::from_table(table.to_vec())?.canonical_automorphism())
}

/// `x ▷ y = 2x − y mod n`.
pub fn dihedral(n: usize) -> Result<FiniteQuandle, QuandleError> {
    FiniteQuandle::from_fn(n, |x, y| (2 * x + n - y) % n)
}

/// `x ▷ y = (1 − t)x + ty mod n`, for `t` a unit mod `n`.
pub fn alexander_quandle(n: usize, t: i64) -> Result<FiniteQuandle, QuandleError> {
    if n == 0 {
        return Err(QuandleError::Empty);
    }
    let m = n as i64;
    let tr = t.mod_floor(&m);
    if tr.gcd(&m) != 1 {
        return Err(QuandleError::NotInvertible { t, n });
    }
    let s = (1 - tr).mod_floor(&m);
    FiniteQuandle::from_fn(n, |x, y| ((s * x as i64 + tr * y as i64) % m) as usize)
}

/// `x ▷ y = y`.
pub fn trivial(n: usize) -> Result<FiniteQuandle, QuandleError> {
    FiniteQuandle::from_fn(n, |_, y| y)
}

/// Parses `dihedral:n`, `alexander:n:t` or `trivial:n`.
pub fn from_spec(spec: &str) -> Result<FiniteQuandle, QuandleError> {
    let bad = || QuandleError::BadSpec(spec.to_string());
    let parts: Vec<&str> = spec.trim().split(':').collect();
    let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
    match parts.as_slice() {
        ["dihedral", n] => dihedral(num(n)?),
        ["trivial", n] => trivial(num(n)?),
        ["alexander", n, t] => alexander_quandle(num(n)?, t.parse().map_err(|_| bad())?),
        _ => Err(bad()),
    }
}

impl fmt::Debug for FiniteQuandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteQuandle{:?}", self.table)
    }
}

#[derive(Serialize, Deserialize)]
struct Repr {
    n: usize,
    table: Vec<Vec<usize>>,
}

impl Serialize for FiniteQuandle {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        Repr {
            n: self.order(),
            table: self.table.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FiniteQuandle {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = Repr::deserialize(d)?;
        if r.table.len() != r.n {
            return Err(serde::de::Error::custom(format!(
                "n = {} but the table has {} rows",
                r.n,
                r.table.len()
            )));
        }
        FiniteQuandle::from_table(r.table).map_err(serde::de::Error::custom)
    }
}
