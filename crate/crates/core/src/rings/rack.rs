use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::LaurentPoly;

/// An element `p + q·E` of ℤ[A±1, E]/(E² − E(1−A)), the ring whose modules
/// are the abelian racks. Every element has exactly one such pair, so
/// derived equality is ring equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct RackRingElem {
    pub p: LaurentPoly,
    pub q: LaurentPoly,
}

impl RackRingElem {
    pub fn new(p: LaurentPoly, q: LaurentPoly) -> Self {
        Self { p, q }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_laurent(LaurentPoly::one())
    }

    pub fn a() -> Self {
        Self::from_laurent(LaurentPoly::var())
    }

    pub fn e() -> Self {
        Self::new(LaurentPoly::zero(), LaurentPoly::one())
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        Self::new(p, LaurentPoly::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    /// Image in ℤ[A±1] under `E ↦ 1 − A`, the quotient by the quandle
    /// relation ε = id − α.
    pub fn to_quandle_ring(&self) -> LaurentPoly {
        &self.p + &self.q * (LaurentPoly::one() - LaurentPoly::var())
    }
}

impl fmt::Display for RackRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})*E", self.p, self.q)
    }
}

impl Add<&RackRingElem> for &RackRingElem {
    type Output = RackRingElem;
    fn add(self, rhs: &RackRingElem) -> RackRingElem {
        RackRingElem::new(&self.p + &rhs.p, &self.q + &rhs.q)
    }
}

impl Sub<&RackRingElem> for &RackRingElem {
    type Output = RackRingElem;
    fn sub(self, rhs: &RackRingElem) -> RackRingElem {
        RackRingElem::new(&self.p - &rhs.p, &self.q - &rhs.q)
    }
}

impl Neg for &RackRingElem {
    type Output = RackRingElem;
    fn neg(self) -> RackRingElem {
        RackRingElem::new(-&self.p, -&self.q)
    }
}

impl Mul<&RackRingElem> for &RackRingElem {
    type Output = RackRingElem;
    /// (p₁ + q₁E)(p₂ + q₂E) = p₁p₂ + (p₁q₂ + q₁p₂ + q₁q₂(1−A))E
    fn mul(self, rhs: &RackRingElem) -> RackRingElem {
        let one_minus_a = LaurentPoly::one() - LaurentPoly::var();
        let p = &self.p * &rhs.p;
        let q = &self.p * &rhs.q + &self.q * &rhs.p + &self.q * &rhs.q * one_minus_a;
        RackRingElem::new(p, q)
    }
}
