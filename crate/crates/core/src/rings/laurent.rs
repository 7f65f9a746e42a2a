use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::text::{format_terms, parse_terms};
use super::RingError;

/// An element of the Laurent polynomial ring ℤ[A, A⁻¹].
///
/// Stored sparsely as exponent → coefficient. Zero coefficients are never
/// stored, so the zero polynomial is the empty map and equality is
/// structural.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    /// The variable `A`.
    pub fn var() -> Self {
        Self::monomial(1, 1)
    }

    pub fn constant<C: Into<BigInt>>(c: C) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * A^exp`.
    pub fn monomial<C: Into<BigInt>>(c: C, exp: i64) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I, C>(iter: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in iter {
            p.add_term(e, c.into());
        }
        p
    }

    /// Dense coefficients starting at exponent `low`.
    pub fn from_dense(low: i64, coeffs: &[BigInt]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (low + i as i64, c.clone())),
        )
    }

    fn add_term(&mut self, exp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// True for the units ±A^k of ℤ[A±1].
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().all(|c| c.abs().is_one())
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Width of the exponent range, `max - min`; `None` for zero.
    pub fn span(&self) -> Option<i64> {
        Some(self.max_exp()? - self.min_exp()?)
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Multiplication by `A^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// The substitution `A ↦ A⁻¹`.
    pub fn invert_variable(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Gcd of the coefficients (non-negative; zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Dense coefficients from `min_exp` to `max_exp`.
    pub fn to_dense(&self) -> (i64, Vec<BigInt>) {
        let Some(low) = self.min_exp() else {
            return (0, Vec::new());
        };
        let high = self.max_exp().unwrap();
        let mut v = vec![BigInt::zero(); (high - low + 1) as usize];
        for (e, c) in &self.terms {
            v[(e - low) as usize] = c.clone();
        }
        (low, v)
    }

    /// Multiplies by a unit ±A^k so that the lowest exponent is 0 and the
    /// lowest coefficient is positive.
    pub fn normalize(&self) -> Self {
        let Some((&low, c)) = self.terms.iter().next() else {
            return Self::zero();
        };
        let shifted = self.shift(-low);
        if c.is_negative() {
            -shifted
        } else {
            shifted
        }
    }

    /// Equality up to multiplication by a unit ±A^k.
    pub fn associated(&self, other: &Self) -> bool {
        self.normalize() == other.normalize()
    }

    /// Exact quotient `self / divisor` in ℤ[A±1], or `None` when the divisor
    /// does not divide.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (la, a) = self.to_dense();
        let (lb, b) = divisor.to_dense();
        let q = dense::div_exact(&a, &b)?;
        Some(Self::from_dense(la - lb, &q))
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_exact(self).is_some()
    }

    /// Gcd in ℤ[A±1], unit-normalized. Content gcd times the gcd of the
    /// primitive parts, the latter by a primitive pseudo-remainder sequence.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.normalize();
        }
        if other.is_zero() {
            return self.normalize();
        }
        let content = self.content().gcd(&other.content());
        let (_, a) = self.to_dense();
        let (_, b) = other.to_dense();
        let g = dense::primitive_gcd(&dense::primitive_part(&a), &dense::primitive_part(&b));
        LaurentPoly::from_dense(0, &g).scale(&content).normalize()
    }

    /// Exact evaluation at a nonzero rational point.
    pub fn eval(&self, a: &BigRational) -> Result<BigRational, RingError> {
        if a.is_zero() {
            return Err(RingError::ZeroEvaluation);
        }
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let base = if *e >= 0 { a.clone() } else { a.recip() };
            let power = num_traits::pow(base, e.unsigned_abs() as usize);
            acc += power * BigRational::from_integer(c.clone());
        }
        Ok(acc)
    }

    pub fn eval_int(&self, a: i64) -> Result<BigRational, RingError> {
        self.eval(&BigRational::from_integer(a.into()))
    }
}

/// Dense ℤ[A] helpers on ascending coefficient vectors without trailing zeros.
pub(crate) mod dense {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{Signed, Zero};

    pub fn trim(v: &mut Vec<BigInt>) {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
    }

    pub fn content(v: &[BigInt]) -> BigInt {
        v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    pub fn primitive_part(v: &[BigInt]) -> Vec<BigInt> {
        let c = content(v);
        if c.is_zero() {
            return Vec::new();
        }
        let mut out: Vec<BigInt> = v.iter().map(|x| x / &c).collect();
        if out.last().is_some_and(|l| l.is_negative()) {
            out.iter_mut().for_each(|x| *x = -x.clone());
        }
        out
    }

    /// Exact long division; `None` unless the remainder vanishes and every
    /// quotient coefficient is integral.
    pub fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
        if b.is_empty() {
            return None;
        }
        if a.is_empty() {
            return Some(Vec::new());
        }
        if a.len() < b.len() {
            return None;
        }
        let mut rem = a.to_vec();
        let lead = b.last().unwrap();
        let mut q = vec![BigInt::zero(); a.len() - b.len() + 1];
        for i in (0..q.len()).rev() {
            let top = &rem[i + b.len() - 1];
            if top.is_zero() {
                continue;
            }
            let (c, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, bj) in b.iter().enumerate() {
                rem[i + j] -= &c * bj;
            }
            q[i] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        trim(&mut q);
        Some(q)
    }

    /// Pseudo-remainder of `a` by `b` (deg a ≥ deg b).
    fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut r = a.to_vec();
        let lead = b.last().unwrap().clone();
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let top = r.last().unwrap().clone();
            for c in r.iter_mut() {
                *c *= &lead;
            }
            for (j, bj) in b.iter().enumerate() {
                r[shift + j] -= &top * bj;
            }
            trim(&mut r);
        }
        r
    }

    /// Gcd of two primitive polynomials in ℤ[A].
    pub fn primitive_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let (mut a, mut b) = if a.len() >= b.len() {
            (a.to_vec(), b.to_vec())
        } else {
            (b.to_vec(), a.to_vec())
        };
        while !b.is_empty() {
            let r = pseudo_rem(&a, &b);
            a = b;
            b = primitive_part(&r);
        }
        primitive_part(&a)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_terms(self.terms.iter().map(|(e, c)| (*e, c.clone()))))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl FromStr for LaurentPoly {
    type Err = RingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let terms = parse_terms(s)?;
        let mut p = LaurentPoly::zero();
        for (coeff, exp) in terms {
            let c = BigInt::from_str(&coeff).map_err(|_| RingError::Parse {
                input: s.to_string(),
                reason: format!("coefficient `{coeff}` is not an integer"),
            })?;
            p.add_term(exp, c);
        }
        Ok(p)
    }
}

impl serde::Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        LaurentPoly::one()
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        self.terms.values_mut().for_each(|c| *c = -&*c);
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c);
        }
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$method(rhs)
            }
        }
        impl $tr<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}
