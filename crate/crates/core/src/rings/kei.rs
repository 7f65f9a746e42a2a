use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::{LaurentPoly, RingError};

/// Which quotient an element lives in.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum KeiVariant {
    /// ℤ[A]/(A² − 1), abelian kei.
    Kei,
    /// ℤ[A±1, E]/(E² − E(1−A), A² − 1), abelian involutary racks.
    Involutary,
}

impl fmt::Display for KeiVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KeiVariant::Kei => f.write_str("Z[A]/(A^2-1)"),
            KeiVariant::Involutary => f.write_str("Z[A,E]/(E^2-E(1-A), A^2-1)"),
        }
    }
}

/// `(p0 + p1·A) + (q0 + q1·A)·E` with A² = 1. In the kei quotient the E part
/// is always zero.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct KeiRingElem {
    variant: KeiVariant,
    p: [BigInt; 2],
    q: [BigInt; 2],
}

/// Multiplication in ℤ[A]/(A²−1) on coefficient pairs.
fn mul_pair(a: &[BigInt; 2], b: &[BigInt; 2]) -> [BigInt; 2] {
    [
        &a[0] * &b[0] + &a[1] * &b[1],
        &a[0] * &b[1] + &a[1] * &b[0],
    ]
}

fn add_pair(a: &[BigInt; 2], b: &[BigInt; 2]) -> [BigInt; 2] {
    [&a[0] + &b[0], &a[1] + &b[1]]
}

fn reduce(p: &LaurentPoly) -> [BigInt; 2] {
    let mut out = [BigInt::zero(), BigInt::zero()];
    for (e, c) in p.terms() {
        out[e.mod_floor(&2) as usize] += c;
    }
    out
}

impl KeiRingElem {
    pub fn new<C: Into<BigInt>>(variant: KeiVariant, a0: C, a1: C) -> Self {
        Self {
            variant,
            p: [a0.into(), a1.into()],
            q: [BigInt::zero(), BigInt::zero()],
        }
    }

    /// Reduction of a Laurent polynomial modulo A² − 1.
    pub fn from_laurent(variant: KeiVariant, p: &LaurentPoly) -> Self {
        Self {
            variant,
            p: reduce(p),
            q: [BigInt::zero(), BigInt::zero()],
        }
    }

    /// `p + q·E` in the involutary quotient.
    pub fn involutary(p: &LaurentPoly, q: &LaurentPoly) -> Self {
        Self {
            variant: KeiVariant::Involutary,
            p: reduce(p),
            q: reduce(q),
        }
    }

    pub fn one(variant: KeiVariant) -> Self {
        Self::new(variant, 1, 0)
    }

    pub fn a(variant: KeiVariant) -> Self {
        Self::new(variant, 0, 1)
    }

    pub fn e() -> Self {
        Self::involutary(&LaurentPoly::zero(), &LaurentPoly::one())
    }

    pub fn variant(&self) -> KeiVariant {
        self.variant
    }

    /// Coefficients `[a0, a1]` of the A-part.
    pub fn a_part(&self) -> &[BigInt; 2] {
        &self.p
    }

    pub fn e_part(&self) -> &[BigInt; 2] {
        &self.q
    }

    fn check(&self, other: &Self) -> Result<(), RingError> {
        if self.variant == other.variant {
            Ok(())
        } else {
            Err(RingError::MixedQuotient(self.variant, other.variant))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, RingError> {
        self.check(other)?;
        Ok(Self {
            variant: self.variant,
            p: add_pair(&self.p, &other.p),
            q: add_pair(&self.q, &other.q),
        })
    }

    pub fn neg(&self) -> Self {
        Self {
            variant: self.variant,
            p: [-&self.p[0], -&self.p[1]],
            q: [-&self.q[0], -&self.q[1]],
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, RingError> {
        self.check(other)?;
        // E² = E(1 − A) as in the rack ring, then A² = 1.
        let one_minus_a = [BigInt::from(1), BigInt::from(-1)];
        let p = mul_pair(&self.p, &other.p);
        let q = add_pair(
            &add_pair(&mul_pair(&self.p, &other.q), &mul_pair(&self.q, &other.p)),
            &mul_pair(&mul_pair(&self.q, &other.q), &one_minus_a),
        );
        Ok(Self {
            variant: self.variant,
            p,
            q,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.p.iter().chain(&self.q).all(Zero::is_zero)
    }
}

impl fmt::Display for KeiRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = LaurentPoly::from_dense(0, &self.p);
        match self.variant {
            KeiVariant::Kei => write!(f, "{p}"),
            KeiVariant::Involutary => {
                write!(f, "({p}) + ({})*E", LaurentPoly::from_dense(0, &self.q))
            }
        }
    }
}
