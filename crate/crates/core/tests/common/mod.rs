//! Independent brute-force and textbook oracles shared by the integration
//! tests.
#![allow(dead_code)]

use knotbeck::beck::QuandleModule;
use knotbeck::diagram::{Diagram, Triple};
use knotbeck::linalg::{FiniteAbGroup, IntMatrix};
use knotbeck::quandle::FiniteQuandle;
use knotbeck::rings::LaurentPoly;

/// Fox derivative `∂w/∂g` of a word in generators (sign = exponent),
/// abelianized by sending every generator to `t`.
fn fox_derivative(word: &[(usize, i64)], g: usize) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    let mut prefix = 0i64;
    for &(h, e) in word {
        if h == g {
            if e == 1 {
                out += &LaurentPoly::monomial(1, prefix);
            } else {
                out -= &LaurentPoly::monomial(1, prefix - 1);
            }
        }
        prefix += e;
    }
    out
}

/// Alexander matrix of the Wirtinger presentation: relator `x y x⁻¹ z⁻¹`
/// per crossing, differentiated by every generator.
pub fn fox_matrix(num_arcs: usize, relators: &[Triple]) -> Vec<Vec<LaurentPoly>> {
    relators
        .iter()
        .map(|t| {
            let word = [(t.x, 1), (t.y, 1), (t.x, -1), (t.z, -1)];
            (0..num_arcs).map(|g| fox_derivative(&word, g)).collect()
        })
        .collect()
}

/// Determinant by cofactor expansion along the first row.
pub fn cofactor_det(m: &[Vec<LaurentPoly>]) -> LaurentPoly {
    let n = m.len();
    if n == 0 {
        return LaurentPoly::one();
    }
    let mut total = LaurentPoly::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let sub: Vec<Vec<LaurentPoly>> = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, v)| v.clone()).collect())
            .collect();
        let term = &m[0][j] * &cofactor_det(&sub);
        if j % 2 == 0 {
            total += &term;
        } else {
            total -= &term;
        }
    }
    total
}

/// Alexander polynomial from the Fox matrix: delete the last relator and
/// the last generator, take the determinant, normalize.
pub fn fox_alexander(d: &Diagram) -> LaurentPoly {
    let n = d.num_arcs();
    if d.resolved().is_empty() {
        return LaurentPoly::one();
    }
    let m = fox_matrix(n, d.resolved());
    let minor: Vec<Vec<LaurentPoly>> = m[..m.len() - 1].iter().map(|r| r[..n - 1].to_vec()).collect();
    cofactor_det(&minor).normalize()
}

/// Every arc assignment checked against every crossing.
pub fn brute_colorings(d: &Diagram, q: &FiniteQuandle) -> Vec<Vec<usize>> {
    let n = d.num_arcs();
    let k = q.order();
    let total = k.pow(n as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = vec![0; n];
        let mut r = code;
        for slot in c.iter_mut().rev() {
            *slot = r % k;
            r /= k;
        }
        if d.resolved().iter().all(|t| q.op(c[t.x], c[t.y]) == c[t.z]) {
            out.push(c);
        }
    }
    out
}

fn apply(m: &IntMatrix, v: &[u64], target: &FiniteAbGroup) -> Vec<u64> {
    let orders = &target.invariant_factors;
    (0..m.rows())
        .map(|i| {
            let s: i128 = (0..m.cols())
                .map(|j| i128::try_from(&m[(i, j)]).unwrap() * v[j] as i128)
                .sum();
            s.rem_euclid(orders[i] as i128) as u64
        })
        .collect()
}

fn add(a: &[u64], b: &[u64], g: &FiniteAbGroup) -> Vec<u64> {
    a.iter()
        .zip(b)
        .zip(&g.invariant_factors)
        .map(|((x, y), d)| (x + y) % d)
        .collect()
}

/// Size of the section search space `Π |M(c(a))|`.
pub fn section_space(c: &[usize], m: &QuandleModule) -> u64 {
    c.iter().map(|&x| m.group(x).order().unwrap()).product()
}

/// All derivations for a coloring, by enumerating every section.
pub fn brute_derivations(d: &Diagram, c: &[usize], m: &QuandleModule) -> Vec<Vec<Vec<u64>>> {
    let fibres: Vec<Vec<Vec<u64>>> = c.iter().map(|&x| m.group(x).elements().unwrap()).collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; c.len()];
    loop {
        let nu: Vec<&Vec<u64>> = idx.iter().zip(&fibres).map(|(&i, f)| &f[i]).collect();
        let ok = d.resolved().iter().all(|t| {
            let (cx, cy, cz) = (c[t.x], c[t.y], c[t.z]);
            let g = m.group(cz);
            let lhs = add(&apply(m.eps(cx, cy), nu[t.x], g), &apply(m.alpha(cx, cy), nu[t.y], g), g);
            lhs == *nu[t.z]
        });
        if ok {
            out.push(nu.into_iter().cloned().collect());
        }
        // odometer
        let mut k = idx.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < fibres[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// `|{ν : d·ν = 0}|` within a set of sections.
pub fn killed_by(sections: &[Vec<Vec<u64>>], c: &[usize], m: &QuandleModule, d: u64) -> u64 {
    sections
        .iter()
        .filter(|nu| {
            nu.iter().zip(c).all(|(v, &x)| {
                v.iter()
                    .zip(&m.group(x).invariant_factors)
                    .all(|(a, f)| (a * d).is_multiple_of(*f))
            })
        })
        .count() as u64
}

/// Whether a finite abelian group matches a set of elements, by comparing
/// `|{g : d·g = 0}|` for every `d` up to the exponent; these counts
/// determine the isomorphism type.
pub fn group_matches(g: &FiniteAbGroup, sections: &[Vec<Vec<u64>>], c: &[usize], m: &QuandleModule) -> bool {
    if g.order() != Some(sections.len() as u64) {
        return false;
    }
    let exponent = g.invariant_factors.last().copied().unwrap_or(1);
    (1..=exponent).all(|d| g.torsion_count(d) == Some(killed_by(sections, c, m, d)))
}

/// The module over `dihedral(4)` with `M(x) = ℤ/2` on even and `ℤ/3` on odd
/// elements, `α = id`, `ε = 0`.
pub fn mixed_trivial_module() -> QuandleModule {
    use knotbeck::quandle::dihedral;
    let q = dihedral(4).unwrap();
    let groups: Vec<FiniteAbGroup> = (0..4)
        .map(|x| FiniteAbGroup::cyclic(if x % 2 == 0 { 2 } else { 3 }))
        .collect();
    let eps = vec![vec![IntMatrix::zeros(1, 1); 4]; 4];
    let alpha = vec![vec![IntMatrix::identity(1); 4]; 4];
    QuandleModule::new(q, groups, eps, alpha).unwrap()
}

/// Simultaneous row/column permutation test for square matrices.
pub fn equal_up_to_permutation(a: &[Vec<LaurentPoly>], b: &[Vec<LaurentPoly>]) -> bool {
    let n = a.len();
    if b.len() != n || a.iter().chain(b).any(|r| r.len() != n) {
        return false;
    }
    let perms = permutations(n);
    perms.iter().any(|rp| {
        perms
            .iter()
            .any(|cp| (0..n).all(|i| (0..n).all(|j| a[rp[i]][cp[j]] == b[i][j])))
    })
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

pub fn lp(s: &str) -> LaurentPoly {
    s.parse().unwrap()
}
