use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{FiniteQuandle, QuandleError, Violation};
use crate::diagram::{Diagram, Triple};

/// An assignment of quandle elements to arcs, indexed by arc.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coloring(pub Vec<usize>);

impl Coloring {
    pub fn color(&self, arc: usize) -> usize {
        self.0[arc]
    }

    /// The first triple whose relation fails, if any.
    pub fn violated(&self, d: &Diagram, q: &FiniteQuandle) -> Option<Triple> {
        d.resolved()
            .iter()
            .copied()
            .find(|t| q.op(self.0[t.x], self.0[t.y]) != self.0[t.z])
    }
}

struct Search<'a> {
    q: &'a FiniteQuandle,
    triples: &'a [Triple],
    /// triples touching each arc
    incident: Vec<Vec<usize>>,
    order: Vec<usize>,
}

impl Search<'_> {
    /// Assigns `arc := value` and everything it forces. On success returns
    /// the arcs that were set; on conflict undoes its own assignments.
    fn assign(&self, colors: &mut [Option<usize>], arc: usize, value: usize) -> Option<Vec<usize>> {
        let mut trail = Vec::new();
        let mut queue = vec![(arc, value)];
        while let Some((a, v)) = queue.pop() {
            match colors[a] {
                Some(c) if c == v => continue,
                Some(_) => {
                    undo(colors, &trail);
                    return None;
                }
                None => {
                    colors[a] = Some(v);
                    trail.push(a);
                }
            }
            for &ti in &self.incident[a] {
                let t = self.triples[ti];
                match (colors[t.x], colors[t.y], colors[t.z]) {
                    (Some(x), Some(y), Some(z)) => {
                        if self.q.op(x, y) != z {
                            undo(colors, &trail);
                            return None;
                        }
                    }
                    (Some(x), Some(y), None) => queue.push((t.z, self.q.op(x, y))),
                    (Some(x), None, Some(z)) => queue.push((t.y, self.q.op_inv(x, z))),
                    _ => {}
                }
            }
        }
        Some(trail)
    }

    fn run(&self, colors: &mut [Option<usize>], depth: usize, out: &mut Vec<Coloring>) {
        let Some(&arc) = self.order[depth..].iter().find(|&&a| colors[a].is_none()) else {
            out.push(Coloring(colors.iter().map(|c| c.expect("all arcs colored")).collect()));
            return;
        };
        let depth = self.order.iter().position(|&a| a == arc).expect("arc is in the order");
        for v in 0..self.q.order() {
            if let Some(trail) = self.assign(colors, arc, v) {
                self.run(colors, depth + 1, out);
                undo(colors, &trail);
            }
        }
    }
}

fn undo(colors: &mut [Option<usize>], trail: &[usize]) {
    for &a in trail {
        colors[a] = None;
    }
}

/// All colorings of `d` by `q`, sorted lexicographically.
///
/// Backtracking over arcs, most-constrained first, with forward
/// propagation: once the over-arc and one under-arc of a crossing are
/// colored, the third color is forced.
pub fn colorings(d: &Diagram, q: &FiniteQuandle) -> Result<Vec<Coloring>, QuandleError> {
    if let Some(x) = (0..q.order()).find(|&x| q.op(x, x) != x) {
        return Err(QuandleError::NotAQuandle(Violation::Idempotency { x }));
    }
    let n = d.num_arcs();
    let triples = d.resolved();
    let mut incident = vec![Vec::new(); n];
    for (i, t) in triples.iter().enumerate() {
        for a in [t.x, t.y, t.z] {
            if !incident[a].contains(&i) {
                incident[a].push(i);
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&a| (std::cmp::Reverse(incident[a].len()), a));
    let search = Search {
        q,
        triples,
        incident,
        order,
    };
    let Some(&first) = search.order.first() else {
        return Ok(vec![Coloring(Vec::new())]);
    };
    let mut out: Vec<Coloring> = (0..q.order())
        .into_par_iter()
        .flat_map_iter(|v| {
            let mut colors = vec![None; n];
            let mut found = Vec::new();
            if search.assign(&mut colors, first, v).is_some() {
                search.run(&mut colors, 1, &mut found);
            }
            found
        })
        .collect();
    out.sort_unstable();
    Ok(out)
}
