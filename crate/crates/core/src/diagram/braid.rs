use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Diagram, DiagramError, PDCode};

/// A braid word on `strands` strands. Letter `i > 0` is `σᵢ`, `-i` is `σᵢ⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i64>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i64>) -> Result<Self, DiagramError> {
        let strands = strands.max(1);
        if let Some(&letter) = letters
            .iter()
            .find(|&&l| l == 0 || l.unsigned_abs() as usize >= strands)
        {
            return Err(DiagramError::BraidIndex { letter, strands });
        }
        Ok(Self { strands, letters })
    }

    /// Parses `s1 s2^-1 s1` or the compact form `aBa` (`a` = σ₁, `B` = σ₂⁻¹).
    /// Without an explicit strand count the word uses the fewest strands it
    /// fits on.
    pub fn parse(text: &str, strands: Option<usize>) -> Result<Self, DiagramError> {
        let letters = parse_letters(text)?;
        let needed = letters.iter().map(|l| l.unsigned_abs() as usize + 1).max().unwrap_or(1);
        Self::new(strands.unwrap_or(needed), letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i64] {
        &self.letters
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    /// The permutation of strand positions: strand starting at `i` ends at
    /// `perm[i]`.
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect();
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            at.swap(i, i + 1);
        }
        let mut perm = vec![0; self.strands];
        for (pos, &strand) in at.iter().enumerate() {
            perm[strand] = pos;
        }
        perm
    }
}

fn parse_letters(text: &str) -> Result<Vec<i64>, DiagramError> {
    let err = |reason: String| DiagramError::BraidSyntax {
        input: text.to_string(),
        reason,
    };
    let trimmed = text.trim();
    if trimmed.chars().any(|c| c.is_ascii_digit()) {
        let mut out = Vec::new();
        for tok in trimmed.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
            let body = tok
                .strip_prefix('s')
                .or_else(|| tok.strip_prefix('σ'))
                .ok_or_else(|| err(format!("token `{tok}` must start with `s`")))?;
            let (idx, exp) = match body.split_once('^') {
                Some((i, e)) => (i, e.trim_start_matches('(').trim_end_matches(')')),
                None => (body, "1"),
            };
            let idx: i64 = idx
                .parse()
                .map_err(|_| err(format!("bad generator index in `{tok}`")))?;
            let exp: i64 = exp.parse().map_err(|_| err(format!("bad exponent in `{tok}`")))?;
            if idx < 1 {
                return Err(err(format!("generator index in `{tok}` must be positive")));
            }
            let letter = if exp < 0 { -idx } else { idx };
            out.extend(std::iter::repeat_n(letter, exp.unsigned_abs() as usize));
        }
        Ok(out)
    } else {
        trimmed
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                'a'..='z' => Ok(c as i64 - 'a' as i64 + 1),
                'A'..='Z' => Ok(-(c as i64 - 'A' as i64 + 1)),
                _ => Err(err(format!("unexpected character `{c}`"))),
            })
            .collect()
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&l| if l > 0 { format!("s{l}") } else { format!("s{}^-1", -l) })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// Number of components of the closure: cycles of the braid permutation.
pub fn closure_components(w: &BraidWord) -> usize {
    let perm = w.permutation();
    let mut seen = vec![false; perm.len()];
    let mut cycles = 0;
    for s in 0..perm.len() {
        if seen[s] {
            continue;
        }
        cycles += 1;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
        }
    }
    cycles
}

impl BraidWord {
    /// PD code of the closure. Strands run upwards; `σᵢ` crosses the strand
    /// at position `i` over the one at `i + 1`.
    pub fn closure_pd(&self) -> Result<PDCode, DiagramError> {
        let components = closure_components(self);
        if components != 1 {
            return Err(DiagramError::MultiComponent { components });
        }
        let n = self.strands;
        let mut cur: Vec<u64> = (1..=n as u64).collect();
        let mut next = n as u64 + 1;
        let mut tuples = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            let (sw, se) = (cur[i], cur[i + 1]);
            let (nw, ne) = (next, next + 1);
            next += 2;
            tuples.push(if l > 0 { [se, ne, nw, sw] } else { [sw, se, ne, nw] });
            cur[i] = nw;
            cur[i + 1] = ne;
        }
        if tuples.is_empty() {
            return PDCode::new(tuples);
        }
        // close up: the label leaving the top at position p is the one
        // entering the bottom at p
        let close = |x: u64| match cur.iter().position(|&c| c == x) {
            Some(p) => p as u64 + 1,
            None => x,
        };
        let closed: Vec<[u64; 4]> = tuples.iter().map(|t| t.map(close)).collect();
        // relabel to 1..=2c in order of first appearance
        let mut names = std::collections::BTreeMap::new();
        let relabeled = closed
            .iter()
            .map(|t| {
                t.map(|x| {
                    let k = names.len() as u64 + 1;
                    *names.entry(x).or_insert(k)
                })
            })
            .collect();
        PDCode::new(relabeled)
    }
}

/// The closed braid as a diagram; errors if the closure is a link.
pub fn braid_closure(w: &BraidWord) -> Result<Diagram, DiagramError> {
    w.closure_pd()?.resolve()
}
