use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Crossing, Diagram, DiagramError, Sign};

/// Planar diagram code. Each tuple `X[i,j,k,l]` lists the edge labels
/// around a crossing counterclockwise, starting at the incoming under-edge
/// `i`; `k` is the outgoing under-edge and `j`, `l` belong to the
/// over-strand.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PDCode {
    crossings: Vec<[u64; 4]>,
}

fn tuple_text(t: &[u64; 4]) -> String {
    format!("X[{},{},{},{}]", t[0], t[1], t[2], t[3])
}

/// Parses whitespace-separated `X[a,b,c,d]` tuples and validates them.
/// Empty input is the crossingless unknot.
pub fn parse_pd(text: &str) -> Result<PDCode, DiagramError> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut crossings = Vec::new();
    let syntax = |pos: usize, reason: &str| DiagramError::Syntax {
        pos,
        reason: reason.to_string(),
    };
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && (bytes[*pos].is_ascii_whitespace() || bytes[*pos] == b',') {
            *pos += 1;
        }
    };
    loop {
        skip_ws(&mut pos);
        if pos == bytes.len() {
            break;
        }
        if !text[pos..].starts_with("X[") {
            return Err(syntax(pos, "expected `X[`"));
        }
        let start = pos;
        let close = text[pos..]
            .find(']')
            .map(|i| pos + i)
            .ok_or_else(|| syntax(start, "unterminated tuple"))?;
        let fields: Vec<&str> = text[pos + 2..close].split(',').map(str::trim).collect();
        if fields.len() != 4 {
            return Err(syntax(start, &format!("tuple `{}` needs 4 labels", &text[start..=close])));
        }
        let mut t = [0u64; 4];
        for (slot, f) in t.iter_mut().zip(&fields) {
            *slot = f
                .parse()
                .map_err(|_| syntax(start, &format!("bad label `{f}` in `{}`", &text[start..=close])))?;
        }
        crossings.push(t);
        pos = close + 1;
    }
    PDCode::new(crossings)
}

impl PDCode {
    /// Validates that every label occurs exactly twice.
    pub fn new(crossings: Vec<[u64; 4]>) -> Result<Self, DiagramError> {
        let mut seen: BTreeMap<u64, (usize, usize)> = BTreeMap::new();
        for (i, t) in crossings.iter().enumerate() {
            for &l in t {
                let e = seen.entry(l).or_insert((0, i));
                e.0 += 1;
                if e.0 > 2 {
                    return Err(DiagramError::LabelCount {
                        label: l,
                        count: e.0,
                        tuple: i,
                        text: tuple_text(t),
                    });
                }
            }
        }
        if let Some((&label, &(count, tuple))) = seen.iter().find(|(_, (c, _))| *c != 2) {
            return Err(DiagramError::LabelCount {
                label,
                count,
                tuple,
                text: tuple_text(&crossings[tuple]),
            });
        }
        Ok(Self { crossings })
    }

    pub fn crossings(&self) -> &[[u64; 4]] {
        &self.crossings
    }

    pub fn len(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty()
    }

    /// Reflection of the projection plane: reverses the cyclic order.
    pub fn mirror(&self) -> PDCode {
        PDCode {
            crossings: self.crossings.iter().map(|&[i, j, k, l]| [i, l, k, j]).collect(),
        }
    }

    /// Number of closed strands, following `i ~ k` and `j ~ l`.
    pub fn components(&self) -> usize {
        if self.crossings.is_empty() {
            return 1;
        }
        let labels: Vec<u64> = self.crossings.iter().flatten().copied().collect();
        let mut index: BTreeMap<u64, usize> = BTreeMap::new();
        for &l in &labels {
            let n = index.len();
            index.entry(l).or_insert(n);
        }
        let mut parent: Vec<usize> = (0..index.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut x = x;
            while p[x] != r {
                let next = p[x];
                p[x] = r;
                x = next;
            }
            r
        }
        for t in &self.crossings {
            for (a, b) in [(t[0], t[2]), (t[1], t[3])] {
                let (ra, rb) = (find(&mut parent, index[&a]), find(&mut parent, index[&b]));
                parent[ra] = rb;
            }
        }
        (0..parent.len()).filter(|&x| find(&mut parent, x) == x).count()
    }

    /// Orients the diagram by walking the knot, computes crossing signs and
    /// arcs, and emits one `▷`-triple per crossing.
    ///
    /// The walk starts on the incoming under-edge of the first tuple. A
    /// crossing is positive when the over-strand runs from `l` to `j`.
    pub fn resolve(&self) -> Result<Diagram, DiagramError> {
        let n = self.crossings.len();
        if n == 0 {
            return Ok(Diagram::unknot());
        }
        let components = self.components();
        if components != 1 {
            return Err(DiagramError::MultiComponent { components });
        }
        let mut slots: BTreeMap<u64, Vec<(usize, usize)>> = BTreeMap::new();
        for (c, t) in self.crossings.iter().enumerate() {
            for (p, &l) in t.iter().enumerate() {
                slots.entry(l).or_default().push((c, p));
            }
        }
        let other = |label: u64, here: (usize, usize)| -> (usize, usize) {
            let s = &slots[&label];
            if s[0] == here {
                s[1]
            } else {
                s[0]
            }
        };

        // Walk: enter crossing c at slot p, leave through p + 2.
        let mut over_entry: Vec<Option<usize>> = vec![None; n];
        let mut edge_order: Vec<u64> = Vec::with_capacity(2 * n);
        let (mut c, mut p) = (0usize, 0usize);
        for _ in 0..2 * n {
            let t = &self.crossings[c];
            match p {
                0 => {}
                1 | 3 => over_entry[c] = Some(p),
                _ => {
                    return Err(DiagramError::Orientation {
                        tuple: c,
                        text: tuple_text(t),
                    })
                }
            }
            edge_order.push(t[p]);
            let out = (p + 2) % 4;
            let label = t[out];
            (c, p) = other(label, (c, out));
        }
        if (c, p) != (0, 0) {
            return Err(DiagramError::Orientation {
                tuple: c,
                text: tuple_text(&self.crossings[c]),
            });
        }

        // Arcs: edges glued along over-strands.
        let mut arc_of: BTreeMap<u64, usize> = BTreeMap::new();
        let mut arc_edges: Vec<Vec<u64>> = Vec::new();
        for &e in &edge_order {
            if arc_of.contains_key(&e) {
                continue;
            }
            let id = arc_edges.len();
            let mut members = Vec::new();
            let mut stack = vec![e];
            while let Some(x) = stack.pop() {
                if arc_of.contains_key(&x) {
                    continue;
                }
                arc_of.insert(x, id);
                members.push(x);
                for &(cc, pp) in &slots[&x] {
                    if pp % 2 == 1 {
                        stack.push(self.crossings[cc][4 - pp]);
                    }
                }
            }
            members.sort_by_key(|m| edge_order.iter().position(|x| x == m));
            arc_edges.push(members);
        }

        let crossings = self
            .crossings
            .iter()
            .zip(&over_entry)
            .map(|(t, entry)| Crossing {
                over: arc_of[&t[1]],
                under_in: arc_of[&t[0]],
                under_out: arc_of[&t[2]],
                sign: if *entry == Some(3) {
                    Sign::Positive
                } else {
                    Sign::Negative
                },
            })
            .collect();
        let mut d = Diagram::from_crossings(arc_edges.len(), crossings)?;
        d.arc_edges = arc_edges;
        Ok(d)
    }
}

impl fmt::Display for PDCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.crossings.iter().map(tuple_text).collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for PDCode {
    type Err = DiagramError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_pd(s)
    }
}

impl Serialize for PDCode {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PDCode {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_pd(&s).map_err(serde::de::Error::custom)
    }
}
