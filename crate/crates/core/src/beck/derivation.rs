use std::fmt;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{BeckError, QuandleModule};
use crate::diagram::{Diagram, Triple};
use crate::linalg::{solve_abelian, FiniteAbGroup, IntMatrix, LinearEquation};
use crate::quandle::{colorings, Coloring, FiniteQuandle};

/// One relation `ε(x,y)·x + α(x,y)·y − z` of the Alexander–Beck
/// presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ABRelation {
    pub x: usize,
    pub y: usize,
    pub z: usize,
}

impl fmt::Display for ABRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ABRelation { x, y, z } = *self;
        write!(f, "ε(a{x},a{y})·a{x} + α(a{x},a{y})·a{y} − a{z}")
    }
}

/// Symbolic presentation of the Alexander–Beck module of a diagram: one
/// generator per arc, one relation per crossing. Nothing is evaluated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ABPresentation {
    pub generators: Vec<usize>,
    /// Base point of each generator under a coloring, if one was chosen.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_points: Option<Coloring>,
    pub relations: Vec<ABRelation>,
}

impl ABPresentation {
    pub fn with_coloring(mut self, c: Coloring) -> Self {
        self.base_points = Some(c);
        self
    }
}

pub fn ab_presentation(d: &Diagram) -> ABPresentation {
    ABPresentation {
        generators: d.arcs().collect(),
        base_points: None,
        relations: d
            .resolved()
            .iter()
            .map(|&Triple { x, y, z }| ABRelation { x, y, z })
            .collect(),
    }
}

/// The group of derivations `ν` with `ν(a) ∈ M(c(a))` and
/// `ν(z) = ε(c(x),c(y))ν(x) + α(c(x),c(y))ν(y)` at every crossing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationGroup {
    pub group: FiniteAbGroup,
    /// Generating derivations: per generator, per arc, coordinates in
    /// `M(c(arc))`.
    pub generators: Vec<Vec<Vec<u64>>>,
}

fn check_coloring(d: &Diagram, c: &Coloring, q: &FiniteQuandle) -> Result<(), BeckError> {
    if c.0.len() != d.num_arcs() {
        return Err(BeckError::ColoringLength {
            found: c.0.len(),
            expected: d.num_arcs(),
        });
    }
    if let Some(&color) = c.0.iter().find(|&&v| v >= q.order()) {
        return Err(BeckError::ColorOutOfRange {
            color,
            order: q.order(),
        });
    }
    match d.resolved().iter().position(|t| q.op(c.0[t.x], c.0[t.y]) != c.0[t.z]) {
        Some(i) => {
            let t = d.resolved()[i];
            Err(BeckError::InvalidColoring {
                crossing: i,
                x: t.x,
                y: t.y,
                z: t.z,
            })
        }
        None => Ok(()),
    }
}

/// Solves the derivation equations for one coloring. The module is assumed
/// to satisfy the axioms; see [`super::check_module`].
pub fn derivations(d: &Diagram, c: &Coloring, m: &QuandleModule) -> Result<DerivationGroup, BeckError> {
    check_coloring(d, c, m.base())?;
    let unknowns: Vec<FiniteAbGroup> = c.0.iter().map(|&v| m.group(v).clone()).collect();
    let equations: Vec<LinearEquation> = d
        .resolved()
        .iter()
        .map(|t| {
            let (cx, cy, cz) = (c.0[t.x], c.0[t.y], c.0[t.z]);
            let k = m.group(cz).num_generators();
            LinearEquation {
                target: m.group(cz).clone(),
                terms: vec![
                    (t.x, m.eps(cx, cy).clone()),
                    (t.y, m.alpha(cx, cy).clone()),
                    (t.z, IntMatrix::scalar(k, -1)),
                ],
            }
        })
        .collect();
    let sol = solve_abelian(&equations, &unknowns)?;
    let generators = sol
        .generators
        .into_iter()
        .map(|g| {
            g.into_iter()
                .map(|v| v.iter().map(|x| x.to_u64().expect("reduced coordinates")).collect())
                .collect()
        })
        .collect();
    Ok(DerivationGroup {
        group: sol.group,
        generators,
    })
}

/// Derivation groups over all colorings by the module's base, sorted.
pub fn derivation_spectrum(
    d: &Diagram,
    q: &FiniteQuandle,
    m: &QuandleModule,
) -> Result<Vec<FiniteAbGroup>, BeckError> {
    if m.base() != q {
        return Err(BeckError::BaseMismatch);
    }
    let cs = colorings(d, q)?;
    let mut out = cs
        .par_iter()
        .map(|c| derivations(d, c, m).map(|g| g.group))
        .collect::<Result<Vec<_>, _>>()?;
    out.sort();
    Ok(out)
}
