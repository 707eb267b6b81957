//! One-variable Laurent polynomials in `u` over Q(a).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::cyclo::Cyclo6;
use super::ring::{Field, Ring};

/// Sparse Laurent polynomial; zero coefficients are never stored, so derived
/// equality is equality of polynomials.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Cyclo6>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Cyclo6::one(), 0)
    }

    pub fn monomial(c: Cyclo6, exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, c);
        p
    }

    pub fn constant(c: Cyclo6) -> Self {
        Self::monomial(c, 0)
    }

    /// `σ(u^k) = u^k − u^{−k}`.
    pub fn sigma_power(k: i64) -> Self {
        Self::monomial(Cyclo6::one(), k) - Self::monomial(Cyclo6::one(), -k)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Cyclo6)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exp: i64, c: Cyclo6) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&exp) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(exp, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Cyclo6)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exp: i64) -> Cyclo6 {
        self.terms.get(&exp).cloned().unwrap_or_else(Cyclo6::zero)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn scale(&self, c: &Cyclo6) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, v)| (*e, v * c)))
    }

    /// Multiply by `u^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, v)| (e + k, v.clone())).collect(),
        }
    }

    /// Replace `u` by `c·u^e` with `e = ±1`: each term `γ·u^k` becomes
    /// `γ·c^k·u^{e·k}`. Returns `None` if `c` is zero.
    pub fn substitute(&self, c: &Cyclo6, e: i64) -> Option<Self> {
        assert!(e == 1 || e == -1, "substitution exponent must be ±1");
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            let ck = c.pow_i(*k)?;
            out.add_term(e * k, v * &ck);
        }
        Some(out)
    }

    /// Evaluate at a nonzero point.
    pub fn eval(&self, u: &Cyclo6) -> Option<Cyclo6> {
        let mut acc = Cyclo6::zero();
        for (k, v) in &self.terms {
            acc = acc + v * &u.pow_i(*k)?;
        }
        Some(acc)
    }

    /// Exact division by `σ(u)^k`.
    ///
    /// Clears negative exponents with a power of `u`, divides the resulting
    /// ordinary polynomial by `(u² − 1)^k`, and returns the quotient as a
    /// Laurent polynomial when the remainder vanishes.
    pub fn div_sigma_u(&self, k: u32) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let shift = self.min_exp().unwrap();
        // self = u^shift · dense(u)
        let deg = (self.max_exp().unwrap() - shift) as usize;
        let mut dense = vec![Cyclo6::zero(); deg + 1];
        for (e, v) in &self.terms {
            dense[(e - shift) as usize] = v.clone();
        }
        for _ in 0..k {
            dense = div_u2_minus_1(&dense)?;
        }
        // σ(u)^k = u^{-k}(u² − 1)^k, hence quotient = u^{shift + k} · dense
        Some(Self::from_terms(
            dense
                .into_iter()
                .enumerate()
                .map(|(i, v)| (i as i64 + shift + k as i64, v)),
        ))
    }
}

/// Exact division of a dense polynomial (lowest degree first) by `u² − 1`.
fn div_u2_minus_1(p: &[Cyclo6]) -> Option<Vec<Cyclo6>> {
    if p.len() < 3 {
        return if p.iter().all(Ring::is_zero) {
            Some(Vec::new())
        } else {
            None
        };
    }
    let mut rem = p.to_vec();
    let mut q = vec![Cyclo6::zero(); p.len() - 2];
    for i in (2..rem.len()).rev() {
        let c = std::mem::replace(&mut rem[i], Cyclo6::zero());
        rem[i - 2] = &rem[i - 2] + &c;
        q[i - 2] = c;
    }
    if rem[0].is_zero() && rem[1].is_zero() {
        Some(q)
    } else {
        None
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(e, c)| format!("({c})*u^{e}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Add for LaurentPoly {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl Sub for LaurentPoly {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for LaurentPoly {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Mul for LaurentPoly {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul<&Cyclo6> for LaurentPoly {
    type Output = Self;
    fn mul(self, rhs: &Cyclo6) -> Self {
        self.scale(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::int;

    fn sig_u(k: i64) -> LaurentPoly {
        LaurentPoly::sigma_power(k)
    }

    #[test]
    fn substitution_examples() {
        let one = Cyclo6::one();
        assert_eq!(sig_u(1).substitute(&one, -1).unwrap(), -sig_u(1));
        let a2 = Cyclo6::a_pow(2);
        let u = LaurentPoly::monomial(one.clone(), 1);
        assert_eq!(
            u.substitute(&a2, 1).unwrap(),
            LaurentPoly::monomial(a2.clone(), 1)
        );
        assert_eq!(sig_u(3).substitute(&a2, 1).unwrap(), sig_u(3));
    }

    #[test]
    fn sigma_division_examples() {
        let s2 = sig_u(1) * sig_u(1);
        assert_eq!(s2.div_sigma_u(2).unwrap(), LaurentPoly::one());
        let q = sig_u(2).div_sigma_u(1).unwrap();
        let expect = LaurentPoly::monomial(Cyclo6::one(), 1) + LaurentPoly::monomial(Cyclo6::one(), -1);
        assert_eq!(q, expect);
        assert!(sig_u(3).div_sigma_u(1).is_some());
        assert!(sig_u(3).div_sigma_u(2).is_none());
        assert!(LaurentPoly::one().div_sigma_u(1).is_none());
    }

    #[test]
    fn eval_and_pruning() {
        let p = sig_u(2) + sig_u(2).scale(&Cyclo6::from_i64(-1));
        assert!(p.is_zero());
        let v = sig_u(1).eval(&Cyclo6::from_i64(2)).unwrap();
        assert_eq!(v, Cyclo6::rational(int(3) / int(2)));
        assert!(sig_u(1).eval(&Cyclo6::zero()).is_none());
    }
}
