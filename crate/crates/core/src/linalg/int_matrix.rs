use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::LinalgError;

/// A dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, 1)
    }

    pub fn scalar<C: Into<BigInt>>(n: usize, c: C) -> Self {
        let c = c.into();
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c.clone();
        }
        m
    }

    pub fn diagonal<C: Into<BigInt> + Clone>(diag: &[C]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = d.clone().into();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have equal length.
    pub fn from_rows<C: Into<BigInt> + Clone>(rows: &[Vec<C>]) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != cols) {
            return Err(LinalgError::Ragged {
                row: i,
                len: r.len(),
                expected: cols,
            });
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().cloned().map(Into::into).collect(),
        })
    }

    /// Like [`IntMatrix::from_rows`] but with an explicit column count, so
    /// that `r × 0` and `0 × c` shapes are representable.
    pub fn with_shape<C: Into<BigInt> + Clone>(
        rows: usize,
        cols: usize,
        entries: &[Vec<C>],
    ) -> Result<Self, LinalgError> {
        if entries.len() != rows {
            return Err(LinalgError::Shape {
                expected: (rows, cols),
                found: (entries.len(), entries.first().map_or(cols, Vec::len)),
            });
        }
        if rows == 0 {
            return Ok(Self::zeros(0, cols));
        }
        let m = Self::from_rows(entries)?;
        if m.cols != cols {
            return Err(LinalgError::Shape {
                expected: (rows, cols),
                found: (m.rows, m.cols),
            });
        }
        Ok(m)
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

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn checked_mul(&self, rhs: &IntMatrix) -> Result<IntMatrix, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::Shape {
                expected: (self.cols, rhs.cols),
                found: rhs.shape(),
            });
        }
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * &rhs[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, rhs: &IntMatrix) -> Result<IntMatrix, LinalgError> {
        if self.shape() != rhs.shape() {
            return Err(LinalgError::Shape {
                expected: self.shape(),
                found: rhs.shape(),
            });
        }
        Ok(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scaled<C: Into<BigInt>>(&self, c: C) -> IntMatrix {
        let c = c.into();
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * &c).collect(),
        }
    }

    /// Nonzero invariant factors `d₁ | d₂ | …`, each positive.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        snf_int(self)
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl Mul<&IntMatrix> for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.checked_mul(rhs).expect("matrix shapes do not match")
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{:?}", self.to_rows())
    }
}

#[derive(Serialize, Deserialize)]
struct Repr {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<i64>>,
}

// Entries are serialized as machine integers; module matrices stay small.
impl Serialize for IntMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::Error;
        let entries = self
            .to_rows()
            .into_iter()
            .map(|r| {
                r.iter()
                    .map(|x| i64::try_from(x).map_err(|_| S::Error::custom("entry exceeds i64")))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Repr {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = Repr::deserialize(d)?;
        IntMatrix::with_shape(r.rows, r.cols, &r.entries).map_err(serde::de::Error::custom)
    }
}

/// Smith normal form over ℤ: the nonzero invariant factors, ascending in the
/// divisibility order. Pivots are chosen by minimal absolute value.
pub fn snf_int(m: &IntMatrix) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = m.to_rows();
    let (rows, cols) = m.shape();
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = min_abs_entry(&a, t, t) else {
            break;
        };
        a.swap(t, pi);
        a.iter_mut().for_each(|r| r.swap(t, pj));
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..cols {
                    let d = &q * &a[t][j];
                    a[i][j] -= d;
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for r in a.iter_mut().skip(t) {
                    let d = &q * &r[t];
                    r[j] -= d;
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                // a smaller remainder sits in row or column t; pivot on it
                let (pi, pj) = min_abs_cross(&a, t);
                a.swap(t, pi);
                a.iter_mut().for_each(|r| r.swap(t, pj));
                continue;
            }
            let offending = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match offending {
                Some(i) => {
                    for j in t..cols {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
    }
    diag
}

fn min_abs_entry(a: &[Vec<BigInt>], r0: usize, c0: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for (i, row) in a.iter().enumerate().skip(r0) {
        for (j, x) in row.iter().enumerate().skip(c0) {
            if x.is_zero() {
                continue;
            }
            let v = x.abs();
            if best.as_ref().is_none_or(|(_, _, b)| v < *b) {
                best = Some((i, j, v));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

fn min_abs_cross(a: &[Vec<BigInt>], t: usize) -> (usize, usize) {
    let mut best = (t, t, a[t][t].abs());
    for (i, row) in a.iter().enumerate().skip(t + 1) {
        let v = row[t].abs();
        if !v.is_zero() && v < best.2 {
            best = (i, t, v);
        }
    }
    for (j, x) in a[t].iter().enumerate().skip(t + 1) {
        let v = x.abs();
        if !v.is_zero() && v < best.2 {
            best = (t, j, v);
        }
    }
    (best.0, best.1)
}

/// Result of column-reducing a list of integer column vectors.
pub(crate) struct ColumnEchelon {
    /// Independent columns; column `k` has its first nonzero entry at
    /// `pivots[k]` and every later column vanishes in that row.
    pub basis: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
    /// Columns that became zero on the active rows.
    pub null: Vec<Vec<BigInt>>,
}

/// Unimodular column reduction looking only at the first `active_rows`
/// coordinates of each column; the remaining coordinates are carried along.
pub(crate) fn column_echelon(mut cols: Vec<Vec<BigInt>>, active_rows: usize) -> ColumnEchelon {
    let mut k = 0;
    let mut pivots = Vec::new();
    for r in 0..active_rows {
        loop {
            let mut best: Option<(usize, BigInt)> = None;
            for (j, c) in cols.iter().enumerate().skip(k) {
                if !c[r].is_zero() {
                    let v = c[r].abs();
                    if best.as_ref().is_none_or(|(_, b)| v < *b) {
                        best = Some((j, v));
                    }
                }
            }
            let Some((p, _)) = best else { break };
            cols.swap(k, p);
            let mut done = true;
            for j in k + 1..cols.len() {
                if cols[j][r].is_zero() {
                    continue;
                }
                let q = cols[j][r].div_floor(&cols[k][r]);
                let (head, tail) = cols.split_at_mut(j);
                for (x, y) in tail[0].iter_mut().zip(&head[k]) {
                    *x -= &q * y;
                }
                done &= tail[0][r].is_zero();
            }
            if done {
                if cols[k][r].is_negative() {
                    cols[k].iter_mut().for_each(|x| *x = -&*x);
                }
                pivots.push(r);
                k += 1;
                break;
            }
        }
        if k == cols.len() {
            break;
        }
    }
    let null = cols.split_off(k);
    ColumnEchelon {
        basis: cols,
        pivots,
        null,
    }
}

/// A ℤ-basis of `{ x : m·x = 0 }`, as column vectors.
pub(crate) fn integer_kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let (rows, cols) = m.shape();
    let augmented: Vec<Vec<BigInt>> = (0..cols)
        .map(|j| {
            let mut c = m.column(j);
            c.extend((0..cols).map(|i| if i == j { BigInt::one() } else { BigInt::zero() }));
            c
        })
        .collect();
    column_echelon(augmented, rows)
        .null
        .into_iter()
        .map(|c| c[rows..].to_vec())
        .collect()
}

/// Coordinates of `v` in an echelon basis, if `v` lies in its ℤ-span.
pub(crate) fn solve_in_echelon(ech: &ColumnEchelon, v: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut x: Vec<BigInt> = Vec::with_capacity(ech.basis.len());
    for (j, &p) in ech.pivots.iter().enumerate() {
        let mut rest = v[p].clone();
        for (i, xi) in x.iter().enumerate() {
            rest -= &ech.basis[i][p] * xi;
        }
        let (q, r) = rest.div_rem(&ech.basis[j][p]);
        if !r.is_zero() {
            return None;
        }
        x.push(q);
    }
    let ok = (0..v.len()).all(|row| {
        let s: BigInt = ech.basis.iter().zip(&x).map(|(c, xi)| &c[row] * xi).sum();
        s == v[row]
    });
    ok.then_some(x)
}
