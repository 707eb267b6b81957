//! The normalized Laurent polynomial φ(n; u), generalized binomials, and the
//! one-parameter functions f, f_U, f_O obtained from state sums.

use num_bigint::BigInt;
use num_integer::binomial;

use crate::algebra::{div_or_pole, sigma, BigRational, Cyclo6, Field, LaurentPoly, Poly, Ring};
use crate::asm::{census, AsmClass};
use crate::error::{Error, Result};
use crate::formulas::{f_big, f_big_o, f_big_u, z_o_statesum, z_statesum, z_u_prime_statesum};
use crate::ice::Boundary;
use crate::refined::asm_total;

/// `x(x−1)…(x−m+1)/m!`.
pub fn gen_binomial(x: &BigRational, m: i64) -> Result<BigRational> {
    if m < 0 {
        return Err(Error::OutOfRange(format!("binomial lower index {m} is negative")));
    }
    let mut acc = BigRational::one();
    for i in 0..m {
        acc = acc * (x - BigRational::from_i64(i)) / BigRational::from_i64(i + 1);
    }
    Ok(acc)
}

fn central(n: usize) -> BigInt {
    binomial(BigInt::from(2 * n - 2), BigInt::from(n - 1))
}

fn third(k: i64, num: i64) -> BigRational {
    // k − num/3
    BigRational::from_i64(k) - BigRational::new(num.into(), 3.into())
}

/// Both sides of `Σ_k C(n−4/3, n−1−k) C(n−2/3, k) = C(2n−2, n−1)`.
pub fn binomial_identity_sides(n: usize) -> Result<(BigRational, BigRational)> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be positive".into()));
    }
    let ni = n as i64;
    let mut lhs = BigRational::zero();
    for k in 0..ni {
        lhs += gen_binomial(&third(ni, 4), ni - 1 - k)? * gen_binomial(&third(ni, 2), k)?;
    }
    Ok((lhs, BigRational::from(central(n))))
}

/// φ(n; u) as a Laurent polynomial in u over Q(a), a = exp(iπ/3).
pub fn phi(n: usize) -> Result<LaurentPoly> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be positive".into()));
    }
    let ni = n as i64;
    let sign = if n % 2 == 1 { 1 } else { -1 };
    let pre = div_or_pole(
        &Cyclo6::from_i64(sign),
        &(sigma(&Cyclo6::a())? * Cyclo6::rational(BigRational::from(central(n)))),
        "σ(a)",
    )?;
    let mut out = LaurentPoly::zero();
    for k in 0..ni {
        let c = gen_binomial(&third(ni, 4), ni - 1 - k)? * gen_binomial(&third(ni, 2), k)?;
        out = out + LaurentPoly::sigma_power(3 * ni - 2 - 6 * k).scale(&(&pre * &Cyclo6::rational(c)));
    }
    Ok(out)
}

fn uturn_b(boundary: Boundary, b: Option<&Cyclo6>) -> Result<Option<&Cyclo6>> {
    match (boundary, b) {
        (Boundary::UTurn(_), None) => Err(Error::Contract("U-turn f needs the parameter b".into())),
        _ => Ok(b),
    }
}

/// `(u, 1, …, 1)` of length `len`.
fn first_free(u: &Cyclo6, len: usize) -> Vec<Cyclo6> {
    let mut v = vec![Cyclo6::one(); len];
    v[0] = u.clone();
    v
}

/// f, f_U or f_O at `u`, from the state sum with spectral parameters
/// `(u, 1, …, 1)` and a = exp(iπ/3).
pub fn f_from_statesum(boundary: Boundary, u: &Cyclo6, b: Option<&Cyclo6>) -> Result<Cyclo6> {
    let b = uturn_b(boundary, b)?;
    let n = boundary.n();
    let s = sigma(u)?;
    let v = first_free(u, 2 * n);
    Ok(match boundary {
        Boundary::Dwbc(_) => s.pow_u(2 * n as u64 - 1) * z_statesum(&v)?,
        Boundary::UTurn(_) => {
            s.pow_u(4 * n as u64 - 2) * sigma(&(u * u))? * z_u_prime_statesum(&v, b.unwrap())?
        }
        Boundary::Os(_) => s.pow_u(4 * n as u64 - 2) * sigma(&(u * u))? * z_o_statesum(&v)?,
    })
}

/// D such that `u^D f(u)` is a polynomial of degree D in `u²`.
pub fn f_degree(boundary: Boundary) -> i64 {
    let n = boundary.n() as i64;
    match boundary {
        Boundary::Dwbc(_) => 3 * n - 2,
        _ => 6 * n - 2,
    }
}

/// Reconstruction of an f-function from its values.
#[derive(Clone, Debug, PartialEq)]
pub struct Interpolation {
    pub poly: LaurentPoly,
    /// Nodes used: `D + 1` to fit, one more to check.
    pub nodes: Vec<BigRational>,
    /// The fitted polynomial reproduces the extra node.
    pub consistent: bool,
}

/// Newton interpolation over rational nodes, returned lowest degree first.
fn newton(nodes: &[BigRational], values: &[Cyclo6]) -> Result<Poly<Cyclo6>> {
    let k = nodes.len();
    let mut dd = values.to_vec();
    for j in 1..k {
        for i in (j..k).rev() {
            let den = Cyclo6::rational(&nodes[i] - &nodes[i - j]);
            dd[i] = div_or_pole(&(&dd[i] - &dd[i - 1]), &den, "repeated node")?;
        }
    }
    let mut p = Poly::constant(dd[k - 1].clone());
    for i in (0..k - 1).rev() {
        let lin = Poly::new(vec![Cyclo6::rational(-nodes[i].clone()), Cyclo6::one()]);
        p = p * lin + Poly::constant(dd[i].clone());
    }
    Ok(p)
}

/// Interpolate `u^D f(u)` in `w = u²` from `D + 1` state-sum values at
/// u = 2, 3, 4, …, skipping poles, and test one further node.
pub fn interpolate_f(boundary: Boundary, b: Option<&Cyclo6>) -> Result<Interpolation> {
    let d = f_degree(boundary);
    let want = d as usize + 2;
    let mut us = Vec::new();
    let mut vals = Vec::new();
    let mut cand: i64 = 2;
    while us.len() < want {
        if cand > 10 * want as i64 + 20 {
            return Err(Error::ResampleExhausted(cand as usize));
        }
        let u = Cyclo6::rational(BigRational::from_i64(cand));
        match f_from_statesum(boundary, &u, b) {
            Ok(v) => {
                vals.push(u.pow_u(d as u64) * v);
                us.push(BigRational::from_i64(cand));
            }
            Err(Error::Pole(_)) | Err(Error::DivisionByZero) => {}
            Err(e) => return Err(e),
        }
        cand += 1;
    }
    let ws: Vec<BigRational> = us.iter().map(|u| u * u).collect();
    let fit = newton(&ws[..want - 1], &vals[..want - 1])?;
    let consistent = fit.eval(&Cyclo6::rational(ws[want - 1].clone())) == vals[want - 1];
    let poly = LaurentPoly::from_terms(
        fit.coeffs()
            .iter()
            .enumerate()
            .map(|(j, c)| (2 * j as i64 - d, c.clone())),
    );
    Ok(Interpolation {
        poly,
        nodes: us,
        consistent,
    })
}

/// `q(ū) = −q(u)`.
pub fn is_odd(q: &LaurentPoly) -> bool {
    q.substitute(&Cyclo6::one(), -1).expect("unit substitution") == -q.clone()
}

/// `q(u) + q(a²u) + q(a⁴u) = 0`.
pub fn rotation_vanishes(q: &LaurentPoly) -> bool {
    let r2 = q.substitute(&Cyclo6::a_pow(2), 1).expect("unit substitution");
    let r4 = q.substitute(&Cyclo6::a_pow(4), 1).expect("unit substitution");
    (q.clone() + r2 + r4).is_zero()
}

/// `q` divides exactly by `u + ū`, i.e. vanishes at u² = −1.
fn divisible_by_u_plus_ubar(q: &LaurentPoly) -> bool {
    let Some(lo) = q.min_exp() else { return true };
    let mut acc = Cyclo6::zero();
    for (e, c) in q.terms() {
        if (e - lo) % 2 != 0 {
            return false;
        }
        let term = if ((e - lo) / 2) % 2 == 0 {
            c.clone()
        } else {
            -c.clone()
        };
        acc = acc + term;
    }
    acc.is_zero()
}

/// The σ-divisibility claimed for an f-function: σ(u)^{2n−1} for f, and
/// σ(u)^{4n−2} together with σ(u²) for f_U and f_O.
pub fn sigma_divisible(boundary: Boundary, q: &LaurentPoly) -> bool {
    let n = boundary.n() as u32;
    match boundary {
        Boundary::Dwbc(_) => q.div_sigma_u(2 * n - 1).is_some(),
        // σ(u)^{4n−2} σ(u²) = σ(u)^{4n−1} (u + ū)
        _ => q
            .div_sigma_u(4 * n - 1)
            .is_some_and(|r| divisible_by_u_plus_ubar(&r)),
    }
}

/// Outcome of the structural checks on one interpolated f-function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionBattery {
    pub polynomial: bool,
    pub odd: bool,
    pub rotation: bool,
    pub divisible: bool,
}

impl FunctionBattery {
    pub fn all(&self) -> bool {
        self.polynomial && self.odd && self.rotation && self.divisible
    }
}

pub fn function_battery(boundary: Boundary, b: Option<&Cyclo6>) -> Result<FunctionBattery> {
    let it = interpolate_f(boundary, b)?;
    Ok(FunctionBattery {
        polynomial: it.consistent,
        odd: is_odd(&it.poly),
        rotation: rotation_vanishes(&it.poly),
        divisible: sigma_divisible(boundary, &it.poly),
    })
}

/// σ(a) exponent in the proportionality of f to φ(n; u).
pub fn f_exponent(n: usize) -> i64 {
    let n = n as i64;
    n * n + 2 * n - 1
}

/// σ(a) exponent in the proportionality of f_U to φ(2n; u).
pub fn f_u_exponent(n: usize) -> i64 {
    let n = n as i64;
    2 * n * n + 3 * n - 1
}

/// σ(a) exponent for f_O as printed in the source display.
pub fn f_o_exponent_printed(n: usize) -> i64 {
    let n = n as i64;
    2 * n * n - 5 * n - 2
}

/// σ(a) exponent for f_O that the state sums support; it agrees with f_U.
pub fn f_o_exponent(n: usize) -> i64 {
    f_u_exponent(n)
}

/// `y = σ(ā b)/σ(a b)`.
pub fn y_of_b(b: &Cyclo6) -> Result<Cyclo6> {
    let a = Cyclo6::a();
    div_or_pole(&sigma(&(&a.conj() * b))?, &sigma(&(&a * b))?, "σ(a b)")
}

/// Number of OSASMs of order 2m, by enumeration (1 for m = 0).
fn osasm_total(m: usize) -> Result<BigInt> {
    if m == 0 {
        return Ok(BigInt::one());
    }
    Ok(BigInt::from(census(AsmClass::Osasm, m)?.total()))
}

/// Number of VSASMs of order 2m+1, by enumeration (1 for m = 0).
fn vsasm_total(m: usize) -> Result<BigInt> {
    if m == 0 {
        return Ok(BigInt::one());
    }
    Ok(BigInt::from(census(AsmClass::Vsasm, m)?.total()))
}

/// The constant multiplying φ in the proportionality law, without the
/// σ(a) power: A(n−1) for f; A_U(2n−2; 1, y) σ(ab)^{n−1}/σ(b)^{n−1} for f_U;
/// A_O(2n−2) for f_O. Counts come from enumeration.
pub fn proportionality_constant(boundary: Boundary, b: Option<&Cyclo6>) -> Result<Cyclo6> {
    let b = uturn_b(boundary, b)?;
    let n = boundary.n();
    let q = |v: BigInt| Cyclo6::rational(BigRational::from(v));
    match boundary {
        Boundary::Dwbc(_) => Ok(q(asm_total(n - 1))),
        Boundary::UTurn(_) => {
            let b = b.unwrap();
            let y = y_of_b(b)?;
            let au = (Cyclo6::one() + y).pow_u(n as u64 - 1) * q(vsasm_total(n - 1)?);
            let ratio = div_or_pole(&sigma(&(&Cyclo6::a() * b))?, &sigma(b)?, "σ(b)")?;
            Ok(au * ratio.pow_u(n as u64 - 1))
        }
        Boundary::Os(_) => Ok(q(osasm_total(n - 1)?)),
    }
}

fn phi_order(boundary: Boundary) -> usize {
    match boundary {
        Boundary::Dwbc(n) => n,
        Boundary::UTurn(n) | Boundary::Os(n) => 2 * n,
    }
}

/// Both sides of `f(u) = C · σ(a)^e · φ(u)` at one point.
pub fn proportionality_sides(
    boundary: Boundary,
    u: &Cyclo6,
    b: Option<&Cyclo6>,
    exponent: i64,
) -> Result<(Cyclo6, Cyclo6)> {
    let lhs = f_from_statesum(boundary, u, b)?;
    let ph = phi(phi_order(boundary))?
        .eval(u)
        .ok_or_else(|| Error::Pole("u = 0".into()))?;
    let s = sigma(&Cyclo6::a())?
        .pow_i(exponent)
        .ok_or(Error::DivisionByZero)?;
    Ok((lhs, proportionality_constant(boundary, b)? * s * ph))
}

/// The σ(a) exponent e with `f(u) = C σ(a)^e φ(u)` at the point `u`, if
/// one exists in a generous window.
pub fn find_exponent(boundary: Boundary, u: &Cyclo6, b: Option<&Cyclo6>) -> Result<Option<i64>> {
    let (lhs, base) = proportionality_sides(boundary, u, b, 0)?;
    if base.is_zero() {
        return Ok(None);
    }
    let ratio = div_or_pole(&lhs, &base, "φ")?;
    let s = sigma(&Cyclo6::a())?;
    let mut pow = s.pow_i(-40).ok_or(Error::DivisionByZero)?;
    for e in -40..=200 {
        if pow == ratio {
            return Ok(Some(e));
        }
        pow = pow * s.clone();
    }
    Ok(None)
}

/// `F(…u_μ…) + F(…a²u_μ…) + F(…a⁴u_μ…)` for the lattice's F-function
/// (built from the state sum with explicit prefactors).
pub fn rotation_sum(boundary: Boundary, u: &[Cyclo6], b: Option<&Cyclo6>, mu: usize) -> Result<Cyclo6> {
    let b = uturn_b(boundary, b)?;
    let eval = |v: &[Cyclo6]| match boundary {
        Boundary::Dwbc(_) => f_big(v),
        Boundary::UTurn(_) => f_big_u(v, b.unwrap()),
        Boundary::Os(_) => f_big_o(v),
    };
    let mut total = Cyclo6::zero();
    for k in [0, 2, 4] {
        let mut v = u.to_vec();
        v[mu] = &Cyclo6::a_pow(k) * &u[mu];
        total = total + eval(&v)?;
    }
    Ok(total)
}
