//! Diagonalization over the principal ideal domain ℚ[A±1].

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::LaurentMatrix;
use crate::rings::text::{format_terms, parse_terms};
use crate::rings::{LaurentPoly, RingError};

/// A polynomial in ℚ[A], dense ascending coefficients without trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RationalPoly {
    coeffs: Vec<BigRational>,
}

impl RationalPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_coeffs(vec![BigRational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// Multiplies a Laurent polynomial by `A^shift` and views it in ℚ[A];
    /// `shift` must clear all negative exponents.
    fn from_laurent_shifted(p: &LaurentPoly, shift: i64) -> Self {
        let Some(low) = p.min_exp() else {
            return Self::zero();
        };
        assert!(low + shift >= 0);
        let high = p.max_exp().unwrap() + shift;
        let mut coeffs = vec![BigRational::zero(); high as usize + 1];
        for (e, c) in p.terms() {
            coeffs[(e + shift) as usize] = BigRational::from_integer(c.clone());
        }
        Self::from_coeffs(coeffs)
    }

    pub fn from_laurent(p: &LaurentPoly) -> Self {
        Self::from_laurent_shifted(p, -p.min_exp().unwrap_or(0))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    fn lead(&self) -> &BigRational {
        self.coeffs.last().expect("zero polynomial has no leading coefficient")
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = BigRational::zero();
        Self::from_coeffs(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(out)
    }

    /// Euclidean division: `self = q·divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let mut rem = self.coeffs.clone();
        let dl = divisor.coeffs.len();
        if rem.len() < dl {
            return (Self::zero(), self.clone());
        }
        let lead = divisor.lead().clone();
        let mut q = vec![BigRational::zero(); rem.len() - dl + 1];
        for i in (0..q.len()).rev() {
            let c = &rem[i + dl - 1] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * d;
            }
            q[i] = c;
        }
        (Self::from_coeffs(q), Self::from_coeffs(rem))
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self).1.is_zero()
    }

    /// Canonical associate in ℚ[A±1]: powers of `A` removed, made monic.
    pub fn normalize_unit(&self) -> Self {
        let Some(low) = self.coeffs.iter().position(|c| !c.is_zero()) else {
            return Self::zero();
        };
        let stripped = &self.coeffs[low..];
        let lead = stripped.last().unwrap().clone();
        Self::from_coeffs(stripped.iter().map(|c| c / &lead).collect())
    }

    /// Back to ℤ[A±1] when every coefficient is integral.
    pub fn to_laurent(&self) -> Option<LaurentPoly> {
        let ints: Option<Vec<BigInt>> = self
            .coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect();
        Some(LaurentPoly::from_dense(0, &ints?))
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as i64, c.clone()));
        f.write_str(&format_terms(terms))
    }
}

impl fmt::Debug for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalPoly({self})")
    }
}

impl FromStr for RationalPoly {
    type Err = RingError;

    /// Negative exponents are accepted and shifted away, since values are
    /// only meaningful up to powers of `A`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let terms = parse_terms(s)?;
        let low = terms.iter().map(|(_, e)| *e).min().unwrap_or(0).min(0);
        let mut out = RationalPoly::zero();
        for (c, e) in terms {
            let q = BigRational::from_str(&c).map_err(|_| RingError::Parse {
                input: s.to_string(),
                reason: format!("coefficient `{c}` is not rational"),
            })?;
            let mut coeffs = vec![BigRational::zero(); (e - low) as usize + 1];
            coeffs[(e - low) as usize] = q;
            out = out.add(&RationalPoly::from_coeffs(coeffs));
        }
        Ok(out)
    }
}

impl Serialize for RationalPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RationalPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Diagonal form of a presentation over ℚ[A±1].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalDecomposition {
    /// Nonzero diagonal entries `d₁ | d₂ | …`, monic with lowest exponent 0.
    /// Unit entries are kept.
    pub invariant_factors: Vec<RationalPoly>,
    /// `cols − rank`.
    pub free_rank: usize,
}

impl RationalDecomposition {
    /// The non-unit factors, i.e. the torsion summands ℚ[A±1]/(dᵢ).
    pub fn torsion(&self) -> impl Iterator<Item = &RationalPoly> {
        self.invariant_factors.iter().filter(|d| !d.is_one())
    }
}

/// Smith form over ℚ[A±1] of the cokernel presentation `m`.
///
/// Each row is first multiplied by a power of `A` (a unit) so that all
/// entries lie in ℚ[A]; elimination then proceeds by Euclidean division on
/// degree, and powers of `A` are stripped from the diagonal.
pub fn invariant_factors_rational(m: &LaurentMatrix) -> RationalDecomposition {
    let (rows, cols) = m.shape();
    let mut a: Vec<Vec<RationalPoly>> = (0..rows)
        .map(|i| {
            let row = m.row(i);
            let low = row.iter().filter_map(LaurentPoly::min_exp).min().unwrap_or(0);
            row.iter().map(|p| RationalPoly::from_laurent_shifted(p, -low)).collect()
        })
        .collect();

    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = min_degree_entry(&a, t) else {
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
                let (q, r) = a[i][t].div_rem(&a[t][t]);
                for j in t..cols {
                    let d = q.mul(&a[t][j]);
                    a[i][j] = a[i][j].sub(&d);
                }
                clean &= r.is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let (q, r) = a[t][j].div_rem(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let d = q.mul(&row[t]);
                    row[j] = row[j].sub(&d);
                }
                clean &= r.is_zero();
            }
            if !clean {
                let (pi, pj) = min_degree_cross(&a, t);
                a.swap(t, pi);
                a.iter_mut().for_each(|r| r.swap(t, pj));
                continue;
            }
            let offending =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[t][t].divides(&a[i][j])));
            match offending {
                Some(i) => {
                    for j in t..cols {
                        a[t][j] = a[t][j].add(&a[i][j]);
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].normalize_unit());
    }
    RationalDecomposition {
        free_rank: cols - diag.len(),
        invariant_factors: diag,
    }
}

fn min_degree_entry(a: &[Vec<RationalPoly>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, p) in row.iter().enumerate().skip(t) {
            if let Some(d) = p.degree() {
                if best.is_none_or(|(_, _, b)| d < b) {
                    best = Some((i, j, d));
                }
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

fn min_degree_cross(a: &[Vec<RationalPoly>], t: usize) -> (usize, usize) {
    let mut best = (t, t, a[t][t].degree().unwrap());
    for (i, row) in a.iter().enumerate().skip(t + 1) {
        if let Some(d) = row[t].degree() {
            if d < best.2 {
                best = (i, t, d);
            }
        }
    }
    for (j, p) in a[t].iter().enumerate().skip(t + 1) {
        if let Some(d) = p.degree() {
            if d < best.2 {
                best = (t, j, d);
            }
        }
    }
    (best.0, best.1)
}
