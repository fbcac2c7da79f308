//! Exact quaternions as Cayley-Dickson pairs of Gaussian rationals, and the
//! left quaternionic projective line HP^1.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;
use thiserror::Error;

use crate::scalar::{Rat, GQ};

#[derive(Debug, Error)]
pub enum QuaternionError {
    #[error("HP^1 point needs at least one nonzero quaternion coordinate")]
    ZeroPoint,
}

/// Quaternion a + b·j with complex a, b; multiplication follows j·c = conj(c)·j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quaternion {
    pub a: GQ,
    pub b: GQ,
}

impl Quaternion {
    pub fn new(a: GQ, b: GQ) -> Self {
        Quaternion { a, b }
    }

    pub fn zero() -> Self {
        Quaternion::new(GQ::zero(), GQ::zero())
    }

    pub fn one() -> Self {
        Quaternion::new(crate::scalar::gq_one(), GQ::zero())
    }

    /// The quaternion unit j (a = 0, b = 1).
    pub fn j() -> Self {
        Quaternion::new(GQ::zero(), crate::scalar::gq_one())
    }

    pub fn from_complex(c: GQ) -> Self {
        Quaternion::new(c, GQ::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// conj(a + bj) = conj(a) - bj.
    pub fn conj(&self) -> Self {
        Quaternion::new(self.a.conj(), -self.b.clone())
    }

    /// |a|^2 + |b|^2, a nonnegative rational, zero iff the quaternion is zero.
    pub fn norm_sqr(&self) -> Rat {
        self.a.norm_sqr() + self.b.norm_sqr()
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        let c = self.conj();
        let n = GQ::new(n, Rat::zero());
        Some(Quaternion::new(c.a / n.clone(), c.b / n))
    }

    /// Left multiplication by a complex scalar: c(a + bj) = (ca) + (cb)j.
    pub fn scale_complex_left(&self, c: &GQ) -> Self {
        Quaternion::new(c * &self.a, c * &self.b)
    }
}

impl Mul for &Quaternion {
    type Output = Quaternion;
    // (a+bj)(c+dj) = (ac - b conj(d)) + (ad + b conj(c)) j
    fn mul(self, rhs: &Quaternion) -> Quaternion {
        let re = &self.a * &rhs.a - &self.b * rhs.b.conj();
        let jm = &self.a * &rhs.b + &self.b * rhs.a.conj();
        Quaternion::new(re, jm)
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, rhs: Quaternion) -> Quaternion {
        &self * &rhs
    }
}

impl Add for &Quaternion {
    type Output = Quaternion;
    fn add(self, rhs: &Quaternion) -> Quaternion {
        Quaternion::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Sub for &Quaternion {
    type Output = Quaternion;
    fn sub(self, rhs: &Quaternion) -> Quaternion {
        Quaternion::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl Neg for &Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.a.clone(), -self.b.clone())
    }
}

/// Point of the left quaternionic projective line: class of (h1, h2) under
/// (h1, h2) ~ (λh1, λh2) for quaternion λ ≠ 0.
#[derive(Clone, Debug)]
pub struct HPoint {
    pub h1: Quaternion,
    pub h2: Quaternion,
}

impl HPoint {
    pub fn new(h1: Quaternion, h2: Quaternion) -> Result<Self, QuaternionError> {
        if h1.is_zero() && h2.is_zero() {
            return Err(QuaternionError::ZeroPoint);
        }
        Ok(HPoint { h1, h2 })
    }

    /// [1, q] in the affine chart h1 ≠ 0.
    pub fn from_chart_a(q: Quaternion) -> Self {
        HPoint { h1: Quaternion::one(), h2: q }
    }

    /// Chart-A coordinate q = h1^{-1} h2; None over the point [0, 1].
    /// Left-invariance: ((λh1)^{-1})(λh2) = h1^{-1} h2.
    pub fn chart_a(&self) -> Option<Quaternion> {
        let inv = self.h1.inv()?;
        Some(&inv * &self.h2)
    }

    pub fn projectively_eq(&self, other: &HPoint) -> bool {
        match (self.chart_a(), other.chart_a()) {
            (Some(p), Some(q)) => p == q,
            (None, None) => true,
            _ => false,
        }
    }
}
