//! Exact ground arithmetic: big rationals, the field Q(a) at a = exp(iπ/3),
//! dense polynomials and Laurent polynomials, plus the weight primitives
//! `σ(x) = x − x⁻¹` and `α(x) = σ(ax)·σ(ax̄)`.

mod cyclo;
mod laurent;
mod poly;
mod ring;

pub use cyclo::Cyclo6;
pub use laurent::LaurentPoly;
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
pub use poly::Poly;
pub use ring::{int, parse_rational, rat, rational_to_string, Field, Ring};

use crate::error::{Error, Result};

/// `σ(x) = x − x⁻¹`.
pub fn sigma<F: Field>(x: &F) -> Result<F> {
    let inv = x.inv().ok_or(Error::DivisionByZero)?;
    Ok(x.clone() - inv)
}

/// `x⁻¹`, erroring on zero.
pub fn inverse<F: Field>(x: &F) -> Result<F> {
    x.inv().ok_or(Error::DivisionByZero)
}

/// `a / b`, reporting a vanishing divisor as a pole named `what`.
pub fn div_or_pole<F: Field>(num: &F, den: &F, what: &str) -> Result<F> {
    num.checked_div(den).ok_or_else(|| Error::Pole(what.to_string()))
}

/// `α(x) = σ(a·x)·σ(a·x̄)` for a crossing parameter `a` taken from the same field.
pub fn alpha<F: Field>(a: &F, x: &F) -> Result<F> {
    let xi = inverse(x)?;
    Ok(sigma(&(a.clone() * x.clone()))? * sigma(&(a.clone() * xi))?)
}

/// The specialisation `α(x) = −σ(x³)/σ(x)` valid at a = exp(iπ/3).
pub fn alpha_zeta6(x: &Cyclo6) -> Result<Cyclo6> {
    let num = sigma(&x.pow_u(3))?;
    let den = sigma(x)?;
    Ok(-div_or_pole(&num, &den, "σ(x)")?)
}

/// `σ(c·u^k) = c·u^k − c⁻¹·u^{−k}` as a Laurent polynomial.
pub fn sigma_monomial(c: &Cyclo6, k: i64) -> Result<LaurentPoly> {
    let ci = inverse(c)?;
    Ok(LaurentPoly::monomial(c.clone(), k) - LaurentPoly::monomial(ci, -k))
}
