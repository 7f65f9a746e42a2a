use std::fmt;
use std::ops::{Index, IndexMut};

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::LinalgError;
use crate::rings::LaurentPoly;

/// A dense matrix over ℤ[A±1], row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentMatrix {
    rows: usize,
    cols: usize,
    data: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![LaurentPoly::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = LaurentPoly::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, Vec::len);
        Self::with_shape(rows.len(), cols, rows)
    }

    pub fn with_shape(rows: usize, cols: usize, entries: Vec<Vec<LaurentPoly>>) -> Result<Self, LinalgError> {
        if entries.len() != rows {
            return Err(LinalgError::Shape {
                expected: (rows, cols),
                found: (entries.len(), cols),
            });
        }
        if let Some((i, r)) = entries.iter().enumerate().find(|(_, r)| r.len() != cols) {
            return Err(LinalgError::Ragged {
                row: i,
                len: r.len(),
                expected: cols,
            });
        }
        Ok(Self {
            rows,
            cols,
            data: entries.into_iter().flatten().collect(),
        })
    }

    pub fn diagonal(entries: &[LaurentPoly]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, p) in entries.iter().enumerate() {
            m[(i, i)] = p.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn row(&self, i: usize) -> &[LaurentPoly] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<LaurentPoly>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn checked_mul(&self, rhs: &LaurentMatrix) -> Result<LaurentMatrix, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::Shape {
                expected: (self.cols, rhs.cols),
                found: rhs.shape(),
            });
        }
        let mut out = LaurentMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = a * &rhs[(k, j)];
                    out[(i, j)] += &prod;
                }
            }
        }
        Ok(out)
    }

    /// Applies `f` to every entry.
    pub fn map(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> LaurentMatrix {
        LaurentMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn determinant(&self) -> Result<LaurentPoly, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::Shape {
                expected: (self.rows, self.rows),
                found: self.shape(),
            });
        }
        let all: Vec<usize> = (0..self.rows).collect();
        self.minor(&all, &all)
    }

    /// Determinant of the submatrix on `row_set × col_set`.
    pub fn minor(&self, row_set: &[usize], col_set: &[usize]) -> Result<LaurentPoly, LinalgError> {
        if row_set.len() != col_set.len() {
            return Err(LinalgError::Shape {
                expected: (row_set.len(), row_set.len()),
                found: (row_set.len(), col_set.len()),
            });
        }
        if let Some(&i) = row_set.iter().find(|&&i| i >= self.rows) {
            return Err(LinalgError::OutOfBounds { index: i, bound: self.rows });
        }
        if let Some(&j) = col_set.iter().find(|&&j| j >= self.cols) {
            return Err(LinalgError::OutOfBounds { index: j, bound: self.cols });
        }
        let sub: Vec<Vec<LaurentPoly>> = row_set
            .iter()
            .map(|&i| col_set.iter().map(|&j| self[(i, j)].clone()).collect())
            .collect();
        Ok(bareiss_det(sub))
    }

    /// Gcd of all `(cols − corank)`-minors, unit-normalized.
    ///
    /// A minor size ≤ 0 gives 1 (the whole ring); an empty set of minors
    /// gives 0. Minors are evaluated in parallel; the folded gcd does not
    /// depend on evaluation order.
    pub fn elementary_ideal_gcd(&self, corank: usize) -> LaurentPoly {
        if corank >= self.cols {
            return LaurentPoly::one();
        }
        let size = self.cols - corank;
        if size > self.rows {
            return LaurentPoly::zero();
        }
        let row_sets = combinations(self.rows, size);
        let col_sets = combinations(self.cols, size);
        let jobs: Vec<(&Vec<usize>, &Vec<usize>)> = row_sets
            .iter()
            .flat_map(|r| col_sets.iter().map(move |c| (r, c)))
            .collect();
        let mut g = LaurentPoly::zero();
        for chunk in jobs.chunks(256) {
            let part = chunk
                .par_iter()
                .map(|(r, c)| self.minor(r, c).expect("index sets are in bounds"))
                .reduce(LaurentPoly::zero, |a, b| a.gcd(&b));
            g = g.gcd(&part);
            if g.is_one() {
                break;
            }
        }
        g
    }
}

/// Fraction-free Gaussian elimination; every division is exact in ℤ[A±1].
fn bareiss_det(mut a: Vec<Vec<LaurentPoly>>) -> LaurentPoly {
    let n = a.len();
    if n == 0 {
        return LaurentPoly::one();
    }
    let mut negate = false;
    let mut prev = LaurentPoly::one();
    for k in 0..n - 1 {
        let pivot = (k..n)
            .filter(|&i| !a[i][k].is_zero())
            .min_by_key(|&i| a[i][k].num_terms());
        let Some(p) = pivot else {
            return LaurentPoly::zero();
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = LaurentPoly::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

impl Index<(usize, usize)> for LaurentMatrix {
    type Output = LaurentPoly;
    fn index(&self, (i, j): (usize, usize)) -> &LaurentPoly {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for LaurentMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut LaurentPoly {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

/// Row-major nested arrays of polynomial strings. A matrix without rows
/// loses its column count in this form.
impl Serialize for LaurentMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<LaurentPoly>>::deserialize(d)?;
        LaurentMatrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}
