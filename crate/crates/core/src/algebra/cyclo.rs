//! The quadratic field Q(a) with a = exp(iπ/3).
//!
//! Elements are stored as `p + q·a` over the basis {1, a}; the minimal
//! polynomial `a² − a + 1` gives the reduction `a² = a − 1`, so every product
//! collapses back to two rational coordinates.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;

use super::ring::{rational_to_string, Field, Ring};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclo6 {
    p: BigRational,
    q: BigRational,
}

impl Cyclo6 {
    pub fn new(p: BigRational, q: BigRational) -> Self {
        Self { p, q }
    }

    /// The primitive sixth root of unity `a`.
    pub fn a() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn rational(p: BigRational) -> Self {
        Self::new(p, BigRational::zero())
    }

    /// Rational part (coefficient of 1).
    pub fn p(&self) -> &BigRational {
        &self.p
    }

    /// Coefficient of `a`.
    pub fn q(&self) -> &BigRational {
        &self.q
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    /// Complex conjugation: `a ↦ ā = 1 − a`.
    pub fn conj(&self) -> Self {
        Self::new(&self.p + &self.q, -self.q.clone())
    }

    /// Field norm `z·z̄ = p² + pq + q²`, always rational and non-negative.
    pub fn norm(&self) -> BigRational {
        &self.p * &self.p + &self.p * &self.q + &self.q * &self.q
    }

    /// `a^k` for any integer k (period 6).
    pub fn a_pow(k: i64) -> Self {
        let r = k.rem_euclid(6) as u64;
        Self::a().pow_u(r)
    }
}

impl fmt::Debug for Cyclo6 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cyclo6 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.p.is_zero(), self.q.is_zero()) {
            (_, true) => write!(f, "{}", rational_to_string(&self.p)),
            (true, false) => write!(f, "{}*a", rational_to_string(&self.q)),
            (false, false) => write!(
                f,
                "{} + {}*a",
                rational_to_string(&self.p),
                rational_to_string(&self.q)
            ),
        }
    }
}

impl Add<&Cyclo6> for &Cyclo6 {
    type Output = Cyclo6;
    fn add(self, rhs: &Cyclo6) -> Cyclo6 {
        Cyclo6::new(&self.p + &rhs.p, &self.q + &rhs.q)
    }
}

impl Sub<&Cyclo6> for &Cyclo6 {
    type Output = Cyclo6;
    fn sub(self, rhs: &Cyclo6) -> Cyclo6 {
        Cyclo6::new(&self.p - &rhs.p, &self.q - &rhs.q)
    }
}

impl Mul<&Cyclo6> for &Cyclo6 {
    type Output = Cyclo6;
    fn mul(self, rhs: &Cyclo6) -> Cyclo6 {
        // (p + qa)(r + sa) = pr + (ps + qr)a + qs·a², with a² = a − 1
        let pr = &self.p * &rhs.p;
        let qs = &self.q * &rhs.q;
        let cross = &self.p * &rhs.q + &self.q * &rhs.p;
        Cyclo6::new(pr - &qs, cross + qs)
    }
}

impl Neg for &Cyclo6 {
    type Output = Cyclo6;
    fn neg(self) -> Cyclo6 {
        Cyclo6::new(-self.p.clone(), -self.q.clone())
    }
}

macro_rules! forward_by_value {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Cyclo6> for Cyclo6 {
            type Output = Cyclo6;
            fn $m(self, rhs: Cyclo6) -> Cyclo6 { (&self).$m(&rhs) }
        }
        impl $tr<&Cyclo6> for Cyclo6 {
            type Output = Cyclo6;
            fn $m(self, rhs: &Cyclo6) -> Cyclo6 { (&self).$m(rhs) }
        }
    )*};
}
forward_by_value!(Add add, Sub sub, Mul mul);

impl Neg for Cyclo6 {
    type Output = Cyclo6;
    fn neg(self) -> Cyclo6 {
        -&self
    }
}

/// Panics on division by zero; use [`Field::checked_div`] where the divisor
/// may vanish.
impl Div<&Cyclo6> for &Cyclo6 {
    type Output = Cyclo6;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Cyclo6) -> Cyclo6 {
        self * &rhs.inv().expect("Cyclo6 division by zero")
    }
}

impl Ring for Cyclo6 {
    fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }
    fn one() -> Self {
        Self::new(BigRational::one(), BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }
    fn from_i64(v: i64) -> Self {
        Self::rational(<BigRational as Ring>::from_i64(v))
    }
}

impl Field for Cyclo6 {
    fn inv(&self) -> Option<Self> {
        if Ring::is_zero(self) {
            return None;
        }
        let n = self.norm();
        let c = self.conj();
        Some(Self::new(&c.p / &n, &c.q / &n))
    }
    fn from_rational(q: &BigRational) -> Self {
        Self::rational(q.clone())
    }
}

impl From<BigRational> for Cyclo6 {
    fn from(q: BigRational) -> Self {
        Self::rational(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::{int, rat};

    fn c(p: i64, q: i64) -> Cyclo6 {
        Cyclo6::new(int(p), int(q))
    }

    #[test]
    fn minimal_polynomial_reduction() {
        let a = Cyclo6::a();
        assert_eq!(&a * &a, c(-1, 1));
        assert_eq!(&a * &c(1, -1), Cyclo6::one());
        assert_eq!(c(-1, 2).pow_u(2), c(-3, 0));
        assert_eq!(a.pow_u(3), c(-1, 0));
        assert_eq!(a.pow_u(6), Cyclo6::one());
        assert_eq!(Cyclo6::a_pow(-1), c(1, -1));
    }

    #[test]
    fn conjugation_and_inverse() {
        let z = Cyclo6::new(rat(3, 2), rat(-5, 7));
        assert_eq!(z.conj().conj(), z);
        assert!((&z * &z.conj()).is_rational());
        assert_eq!(&z * &z.inv().unwrap(), Cyclo6::one());
        assert_eq!(Cyclo6::a().conj(), Cyclo6::a().inv().unwrap());
        assert!(Cyclo6::zero().inv().is_none());
    }

    #[test]
    fn display() {
        assert_eq!(c(0, 0).to_string(), "0");
        assert_eq!(Cyclo6::new(rat(1, 2), int(-3)).to_string(), "1/2 + -3*a");
        assert_eq!(c(0, 2).to_string(), "2*a");
    }
}
