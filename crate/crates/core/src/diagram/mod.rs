//! Oriented knot diagrams: PD codes, braid closures, crossing resolution into
//! `z = x ▷ y` triples, Wirtinger presentations and the bundled catalog.

mod braid;
mod catalog;
mod pd;

pub use braid::{braid_closure, closure_components, BraidWord};
pub use catalog::{catalog_get, Catalog, CatalogEntry, CATALOG_ENV};
pub use pd::{parse_pd, PDCode};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("malformed PD code at byte {pos}: {reason}")]
    Syntax { pos: usize, reason: String },
    #[error("edge label {label} appears {count} times, expected twice (tuple {tuple}: {text})")]
    LabelCount {
        label: u64,
        count: usize,
        tuple: usize,
        text: String,
    },
    #[error("diagram has {components} components; only knots are supported")]
    MultiComponent { components: usize },
    #[error("inconsistent orientation at tuple {tuple} ({text}): the strand enters through the outgoing under-edge")]
    Orientation { tuple: usize, text: String },
    #[error("arc {arc} in crossing {crossing} is out of range ({arcs} arcs)")]
    ArcOutOfRange {
        crossing: usize,
        arc: usize,
        arcs: usize,
    },
    #[error("malformed braid word `{input}`: {reason}")]
    BraidSyntax { input: String, reason: String },
    #[error("braid letter {letter} is out of range for {strands} strands")]
    BraidIndex { letter: i64, strands: usize },
    #[error("unknown knot `{name}`; available: {}", available.join(", "))]
    UnknownKnot { name: String, available: Vec<String> },
    #[error("catalog: {0}")]
    Catalog(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "-")]
    Negative,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn as_int(self) -> i32 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }
}

/// A crossing between arcs. The under-strand runs from `under_in` to
/// `under_out` beneath `over`. The three arcs need not be distinct.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Crossing {
    pub over: usize,
    pub under_in: usize,
    pub under_out: usize,
    pub sign: Sign,
}

impl Crossing {
    /// The relation at this crossing written as `z = x ▷ y`.
    ///
    /// At a positive crossing the under-strand leaves as `over ▷ under_in`;
    /// at a negative one it arrives as `over ▷ under_out`.
    pub fn triple(&self) -> Triple {
        match self.sign {
            Sign::Positive => Triple {
                x: self.over,
                y: self.under_in,
                z: self.under_out,
            },
            Sign::Negative => Triple {
                x: self.over,
                y: self.under_out,
                z: self.under_in,
            },
        }
    }
}

/// `z = x ▷ y`, with `x` the over-arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Triple {
    pub x: usize,
    pub y: usize,
    pub z: usize,
}

/// An oriented knot diagram with arcs `0..num_arcs`.
///
/// Crossings keep the order of the input. Diagrams built from PD codes number
/// their arcs in order of first appearance when walking the knot from the
/// incoming under-edge of the first crossing; `arc_edges` records which edge
/// labels make up each arc.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagram {
    num_arcs: usize,
    crossings: Vec<Crossing>,
    resolved: Vec<Triple>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    arc_edges: Vec<Vec<u64>>,
}

impl Diagram {
    /// The diagram with one arc and no crossings.
    pub fn unknot() -> Self {
        Self {
            num_arcs: 1,
            crossings: Vec::new(),
            resolved: Vec::new(),
            arc_edges: Vec::new(),
        }
    }

    pub fn from_crossings(num_arcs: usize, crossings: Vec<Crossing>) -> Result<Self, DiagramError> {
        for (i, c) in crossings.iter().enumerate() {
            if let Some(&arc) = [c.over, c.under_in, c.under_out].iter().find(|&&a| a >= num_arcs) {
                return Err(DiagramError::ArcOutOfRange {
                    crossing: i,
                    arc,
                    arcs: num_arcs,
                });
            }
        }
        let resolved = crossings.iter().map(Crossing::triple).collect();
        Ok(Self {
            num_arcs,
            crossings,
            resolved,
            arc_edges: Vec::new(),
        })
    }

    pub fn num_arcs(&self) -> usize {
        self.num_arcs
    }

    pub fn arcs(&self) -> std::ops::Range<usize> {
        0..self.num_arcs
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn resolved(&self) -> &[Triple] {
        &self.resolved
    }

    pub fn arc_edges(&self) -> &[Vec<u64>] {
        &self.arc_edges
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| i64::from(c.sign.as_int())).sum()
    }

    /// Reflection in a line of the projection plane: same arcs and
    /// over/under data, every sign flipped.
    pub fn mirror(&self) -> Diagram {
        let crossings: Vec<Crossing> = self
            .crossings
            .iter()
            .map(|c| Crossing {
                sign: c.sign.flip(),
                ..*c
            })
            .collect();
        Diagram {
            num_arcs: self.num_arcs,
            resolved: crossings.iter().map(Crossing::triple).collect(),
            crossings,
            arc_edges: self.arc_edges.clone(),
        }
    }

    /// Renames arc `a` to `perm[a]`; `perm` must be a permutation.
    pub fn relabel_arcs(&self, perm: &[usize]) -> Diagram {
        assert_eq!(perm.len(), self.num_arcs, "permutation has the wrong length");
        let crossings: Vec<Crossing> = self
            .crossings
            .iter()
            .map(|c| Crossing {
                over: perm[c.over],
                under_in: perm[c.under_in],
                under_out: perm[c.under_out],
                sign: c.sign,
            })
            .collect();
        let mut arc_edges = vec![Vec::new(); if self.arc_edges.is_empty() { 0 } else { self.num_arcs }];
        for (a, edges) in self.arc_edges.iter().enumerate() {
            arc_edges[perm[a]] = edges.clone();
        }
        Diagram {
            num_arcs: self.num_arcs,
            resolved: crossings.iter().map(Crossing::triple).collect(),
            crossings,
            arc_edges,
        }
    }
}

/// Generators are arcs; the relator `(x, y, z)` reads `x y x⁻¹ = z`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WirtingerPresentation {
    pub generators: Vec<usize>,
    pub relators: Vec<Triple>,
}

pub fn wirtinger(d: &Diagram) -> WirtingerPresentation {
    WirtingerPresentation {
        generators: d.arcs().collect(),
        relators: d.resolved.clone(),
    }
}
