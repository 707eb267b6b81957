//! Closed partition-function formulas: the domain-wall determinant, its
//! U-turn and off-diagonal analogues, and the determinant forms valid at
//! a = exp(iπ/3).
//!
//! Every evaluation reports a vanishing denominator as [`Error::Pole`], which
//! the samplers treat as a request for a new point.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{alpha, div_or_pole, inverse, sigma, Cyclo6, Field, Ring};
use crate::error::{Error, Result};
use crate::ice::{partition_sum, Boundary, SpectralAssignment};
use crate::linalg::ExactMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FormulaKind {
    #[serde(rename = "Z_IK")]
    ZIk,
    #[serde(rename = "Z_P")]
    ZP,
    #[serde(rename = "Z_U_DET")]
    ZUDet,
    #[serde(rename = "Z_U_PRIME")]
    ZUPrime,
    #[serde(rename = "Z_U_P")]
    ZUP,
    #[serde(rename = "Z_O_PF")]
    ZOPf,
    #[serde(rename = "Z_O_P")]
    ZOP,
}

impl FormulaKind {
    pub const ALL: [FormulaKind; 7] = [
        FormulaKind::ZIk,
        FormulaKind::ZP,
        FormulaKind::ZUDet,
        FormulaKind::ZUPrime,
        FormulaKind::ZUP,
        FormulaKind::ZOPf,
        FormulaKind::ZOP,
    ];

    pub fn tag(&self) -> &'static str {
        match self {
            FormulaKind::ZIk => "Z_IK",
            FormulaKind::ZP => "Z_P",
            FormulaKind::ZUDet => "Z_U_DET",
            FormulaKind::ZUPrime => "Z_U_PRIME",
            FormulaKind::ZUP => "Z_U_P",
            FormulaKind::ZOPf => "Z_O_PF",
            FormulaKind::ZOP => "Z_O_P",
        }
    }

    /// Forms that only hold at a = exp(iπ/3).
    pub fn needs_zeta6(&self) -> bool {
        matches!(self, FormulaKind::ZP | FormulaKind::ZUP | FormulaKind::ZOP)
    }

    /// Lattice whose state sum the formula evaluates.
    pub fn boundary(&self, n: usize) -> Boundary {
        match self {
            FormulaKind::ZIk | FormulaKind::ZP => Boundary::Dwbc(n),
            FormulaKind::ZUDet | FormulaKind::ZUPrime | FormulaKind::ZUP => Boundary::UTurn(n),
            FormulaKind::ZOPf | FormulaKind::ZOP => Boundary::Os(n),
        }
    }
}

impl fmt::Display for FormulaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

fn product<F: Field>(factors: impl IntoIterator<Item = Result<F>>) -> Result<F> {
    factors.into_iter().try_fold(F::one(), |acc, f| Ok(acc * f?))
}

fn ratio<F: Field>(a: &F, b: &F) -> Result<F> {
    Ok(a.clone() * inverse(b)?)
}

fn pairs(k: usize, strict: bool) -> impl Iterator<Item = (usize, usize)> {
    (0..k).flat_map(move |i| (if strict { i + 1 } else { i }..k).map(move |j| (i, j)))
}

/// `∏_{μ<ν} σ(u_μ ū_ν)`.
pub fn vandermonde_sigma<F: Field>(u: &[F]) -> Result<F> {
    product(pairs(u.len(), true).map(|(m, v)| sigma(&ratio(&u[m], &u[v])?)))
}

/// `∏_{μ≤ν} σ(u_μ u_ν)`.
pub fn symmetric_sigma<F: Field>(u: &[F]) -> Result<F> {
    product(pairs(u.len(), false).map(|(m, v)| sigma(&(u[m].clone() * u[v].clone()))))
}

/// `∏_{i<j} σ(x̄_i x_j) σ(y_i ȳ_j)`.
fn ik_denominator<F: Field>(x: &[F], y: &[F]) -> Result<F> {
    product(
        pairs(x.len(), true).map(|(i, j)| Ok(sigma(&ratio(&x[j], &x[i])?)? * sigma(&ratio(&y[i], &y[j])?)?)),
    )
}

fn dims<F: Field>(p: &SpectralAssignment<F>) -> Result<usize> {
    if p.x.len() != p.y.len() {
        return Err(Error::Contract("x and y must have equal length".into()));
    }
    Ok(p.x.len())
}

/// `M(n; x, y)_{ij} = 1/α(x_i ȳ_j)`.
pub fn build_m<F: Field>(a: &F, x: &[F], y: &[F]) -> Result<ExactMatrix<F>> {
    ExactMatrix::from_fn(x.len(), |i, j| {
        let al = alpha(a, &ratio(&x[i], &y[j])?)?;
        div_or_pole(&F::one(), &al, "α(x_i ȳ_j)")
    })
}

/// The determinant form of the domain-wall partition function.
pub fn z_ik<F: Field>(p: &SpectralAssignment<F>) -> Result<F> {
    let n = dims(p)?;
    let a = &p.a;
    let mut num = sigma(&(a.clone() * a.clone()))?.pow_u(n as u64);
    for i in 0..n {
        for j in 0..n {
            num = num * alpha(a, &ratio(&p.x[i], &p.y[j])?)?;
        }
    }
    let den = ik_denominator(&p.x, &p.y)?;
    let det = build_m(a, &p.x, &p.y)?.det();
    Ok(div_or_pole(&num, &den, "σ(x̄_i x_j) σ(y_i ȳ_j)")? * det)
}

/// Same value as [`z_ik`] with the α factors multiplied into the rows, so
/// that a single vanishing α(x_i ȳ_j) is harmless:
/// `M'_{ij} = ∏_{k≠j} α(x_i ȳ_k)`.
pub fn z_ik_cleared<F: Field>(p: &SpectralAssignment<F>) -> Result<F> {
    let n = dims(p)?;
    let a = &p.a;
    let al: Vec<Vec<F>> = (0..n)
        .map(|i| (0..n).map(|k| alpha(a, &ratio(&p.x[i], &p.y[k])?)).collect())
        .collect::<Result<_>>()?;
    let m = ExactMatrix::from_fn(n, |i, j| {
        product((0..n).filter(|&k| k != j).map(|k| Ok(al[i][k].clone())))
    })?;
    let num = sigma(&(a.clone() * a.clone()))?.pow_u(n as u64) * m.det();
    div_or_pole(&num, &ik_denominator(&p.x, &p.y)?, "σ(x̄_i x_j) σ(y_i ȳ_j)")
}

/// Row exponents of P(n; u): `3n − 2k` for k = 1..3n−1, k not divisible by 3.
pub fn p_exponents(n: usize) -> Vec<i64> {
    let n = n as i64;
    (1..3 * n).filter(|k| k % 3 != 0).map(|k| 3 * n - 2 * k).collect()
}

/// Row exponents of P_U(n; u): `6n − 2k` for k = 1..3n−1, k not divisible by 3.
pub fn p_u_exponents(n: usize) -> Vec<i64> {
    let n = n as i64;
    (1..3 * n).filter(|k| k % 3 != 0).map(|k| 6 * n - 2 * k).collect()
}

fn check_even(u: &[Cyclo6]) -> Result<usize> {
    if u.len() % 2 == 1 {
        return Err(Error::Contract("need 2n spectral parameters".into()));
    }
    Ok(u.len() / 2)
}

fn power(u: &Cyclo6, e: i64) -> Result<Cyclo6> {
    u.pow_i(e).ok_or(Error::Pole("zero spectral parameter".into()))
}

pub fn build_p(u: &[Cyclo6]) -> Result<ExactMatrix<Cyclo6>> {
    let ex = p_exponents(check_even(u)?);
    ExactMatrix::from_fn(u.len(), |r, c| power(&u[c], ex[r]))
}

/// Determinant form of Z(n; u) at a = exp(iπ/3).
pub fn z_p(u: &[Cyclo6]) -> Result<Cyclo6> {
    let n = check_even(u)?;
    let sign = if (n * (n.saturating_sub(1)) / 2) % 2 == 0 {
        1
    } else {
        -1
    };
    let num = sigma(&Cyclo6::a())?.pow_u(n as u64) * Cyclo6::from_i64(sign) * build_p(u)?.det();
    div_or_pole(&num, &vandermonde_sigma(u)?, "σ(u_μ ū_ν)")
}

/// `M_U(n; x, y)_{ij} = 1/α(x_i ȳ_j) − 1/α(x_i y_j)`.
pub fn build_m_u<F: Field>(a: &F, x: &[F], y: &[F]) -> Result<ExactMatrix<F>> {
    ExactMatrix::from_fn(x.len(), |i, j| {
        let d1 = alpha(a, &ratio(&x[i], &y[j])?)?;
        let d2 = alpha(a, &(x[i].clone() * y[j].clone()))?;
        Ok(div_or_pole(&F::one(), &d1, "α(x_i ȳ_j)")? - div_or_pole(&F::one(), &d2, "α(x_i y_j)")?)
    })
}

/// `∏_i σ(b ȳ_i) σ(a² x_i²)`, the factor separating Z_U from Z'_U.
pub fn uturn_divisor<F: Field>(p: &SpectralAssignment<F>) -> Result<F> {
    let b =
        p.b.as_ref()
            .ok_or_else(|| Error::Contract("U-turn weights need the parameter b".into()))?;
    let a2 = p.a.clone() * p.a.clone();
    product(
        (0..p.x.len()).map(|i| {
            Ok(sigma(&ratio(b, &p.y[i])?)? * sigma(&(a2.clone() * p.x[i].clone() * p.x[i].clone()))?)
        }),
    )
}

/// The modified U-turn partition function from its determinant form,
/// without the b-dependent factor.
pub fn z_u_prime<F: Field>(p: &SpectralAssignment<F>) -> Result<F> {
    let n = dims(p)?;
    let a = &p.a;
    let mut num = sigma(&(a.clone() * a.clone()))?.pow_u(n as u64);
    for i in 0..n {
        for j in 0..n {
            num = num * alpha(a, &ratio(&p.x[i], &p.y[j])?)? * alpha(a, &(p.x[i].clone() * p.y[j].clone()))?;
        }
    }
    let xi: Vec<F> = p.x.iter().map(inverse).collect::<Result<_>>()?;
    let den = ik_denominator(&p.x, &p.y)?
        * product(pairs(n, false).map(|(i, j)| {
            Ok(sigma(&(xi[i].clone() * xi[j].clone()))? * sigma(&(p.y[i].clone() * p.y[j].clone()))?)
        }))?;
    Ok(div_or_pole(&num, &den, "U-turn denominator")? * build_m_u(a, &p.x, &p.y)?.det())
}

/// The determinant form of the U-turn partition function.
pub fn z_u_det<F: Field>(p: &SpectralAssignment<F>) -> Result<F> {
    Ok(z_u_prime(p)? * uturn_divisor(p)?)
}

pub fn build_p_u(u: &[Cyclo6]) -> Result<ExactMatrix<Cyclo6>> {
    let ex = p_u_exponents(check_even(u)?);
    ExactMatrix::from_fn(u.len(), |r, c| sigma(&power(&u[c], ex[r])?))
}

/// Determinant form of Z'_U(n; u) at a = exp(iπ/3).
pub fn z_u_p(u: &[Cyclo6]) -> Result<Cyclo6> {
    let n = check_even(u)?;
    let num = sigma(&Cyclo6::a())?.pow_u(n as u64) * build_p_u(u)?.det();
    let den = vandermonde_sigma(u)? * symmetric_sigma(u)?;
    div_or_pole(&num, &den, "σ(u_μ ū_ν) σ(u_μ u_ν)")
}

/// Determinant form of Z_O(n; u) at a = exp(iπ/3); the same expression as
/// [`z_u_p`].
pub fn z_o_p(u: &[Cyclo6]) -> Result<Cyclo6> {
    z_u_p(u)
}

/// `M_O(n; u)_{μν} = σ(ū_μ u_ν)/α(u_μ u_ν)`, zero on the diagonal.
pub fn build_m_o<F: Field>(a: &F, u: &[F]) -> Result<ExactMatrix<F>> {
    ExactMatrix::from_fn(u.len(), |m, v| {
        if m == v {
            return Ok(F::zero());
        }
        let num = sigma(&ratio(&u[v], &u[m])?)?;
        let den = alpha(a, &(u[m].clone() * u[v].clone()))?;
        div_or_pole(&num, &den, "α(u_μ u_ν)")
    })
}

/// The Pfaffian form of the OS partition function.
pub fn z_o_pf<F: Field>(a: &F, u: &[F]) -> Result<F> {
    if u.len() % 2 == 1 {
        return Err(Error::Contract("need 2n spectral parameters".into()));
    }
    let n = u.len() / 2;
    let num = sigma(&(a.clone() * a.clone()))?.pow_u(n as u64)
        * product(pairs(u.len(), true).map(|(m, v)| alpha(a, &(u[m].clone() * u[v].clone()))))?;
    let den = product(pairs(u.len(), true).map(|(m, v)| sigma(&ratio(&u[v], &u[m])?)))?;
    Ok(div_or_pole(&num, &den, "σ(ū_μ u_ν)")? * build_m_o(a, u)?.pfaffian()?)
}

fn zeta6_unified(u: &[Cyclo6], b: Option<Cyclo6>) -> SpectralAssignment<Cyclo6> {
    SpectralAssignment::unified(Cyclo6::a(), b, u.to_vec())
}

/// Z(n; u) at a = exp(iπ/3) from the state sum.
pub fn z_statesum(u: &[Cyclo6]) -> Result<Cyclo6> {
    let n = check_even(u)?;
    partition_sum(Boundary::Dwbc(n), &zeta6_unified(u, None))
}

/// Z'_U(n; u) at a = exp(iπ/3) from the state sum, at a given b.
pub fn z_u_prime_statesum(u: &[Cyclo6], b: &Cyclo6) -> Result<Cyclo6> {
    let n = check_even(u)?;
    let p = zeta6_unified(u, Some(b.clone()));
    let z = partition_sum(Boundary::UTurn(n), &p)?;
    div_or_pole(&z, &uturn_divisor(&p)?, "σ(b ȳ_i) σ(a² x_i²)")
}

/// Z_O(n; u) at a = exp(iπ/3) from the state sum.
pub fn z_o_statesum(u: &[Cyclo6]) -> Result<Cyclo6> {
    let n = check_even(u)?;
    partition_sum(Boundary::Os(n), &SpectralAssignment::os(Cyclo6::a(), u.to_vec()))
}

/// `F(n; u) = ∏_{μ<ν} σ(u_μ ū_ν) · Z(n; u)`, Z from the state sum.
pub fn f_big(u: &[Cyclo6]) -> Result<Cyclo6> {
    Ok(vandermonde_sigma(u)? * z_statesum(u)?)
}

/// `F_U(n; u) = ∏_{μ<ν} σ(u_μ ū_ν) ∏_{μ≤ν} σ(u_μ u_ν) · Z'_U(n; u)`.
pub fn f_big_u(u: &[Cyclo6], b: &Cyclo6) -> Result<Cyclo6> {
    Ok(vandermonde_sigma(u)? * symmetric_sigma(u)? * z_u_prime_statesum(u, b)?)
}

/// `F_O(n; u) = σ(a)^{−n} ∏_{μ<ν} σ(ū_μ u_ν) ∏_{μ≤ν} σ(u_μ u_ν) · Z_O(n; u)`.
pub fn f_big_o(u: &[Cyclo6]) -> Result<Cyclo6> {
    let n = check_even(u)?;
    let s = sigma(&Cyclo6::a())?.pow_u(n as u64);
    let pre = product(pairs(u.len(), true).map(|(m, v)| sigma(&ratio(&u[v], &u[m])?)))? * symmetric_sigma(u)?;
    Ok(div_or_pole(&pre, &s, "σ(a)")? * z_o_statesum(u)?)
}

/// Both sides of the domain-wall recurrence at `y_n = a·x_n`:
/// `Z(n; x, y) / Z(n−1; x', y') = σ(a²) ∏_{k<n} σ(a x̄_n y_k) σ(a x̄_k y_n)`.
/// `y_head` holds `y_1..y_{n−1}`. The left side uses the cleared determinant.
pub fn dwbc_recurrence_sides<F: Field>(a: &F, x: &[F], y_head: &[F]) -> Result<(F, F)> {
    let n = x.len();
    let mut y = y_head.to_vec();
    y.push(a.clone() * x[n - 1].clone());
    let big = z_ik_cleared(&SpectralAssignment::dwbc(a.clone(), x.to_vec(), y.clone()))?;
    let small = z_ik(&SpectralAssignment::dwbc(
        a.clone(),
        x[..n - 1].to_vec(),
        y_head.to_vec(),
    ))?;
    let lhs = div_or_pole(&big, &small, "Z(n−1)")?;
    let rhs = sigma(&(a.clone() * a.clone()))?
        * product((0..n - 1).map(|k| {
            Ok(sigma(&(a.clone() * ratio(&y[k], &x[n - 1])?))?
                * sigma(&(a.clone() * ratio(&y[n - 1], &x[k])?))?)
        }))?;
    Ok((lhs, rhs))
}

/// Both sides of the recurrence for det P at `u_{2n} = a·u_{2n−1}`; `u`
/// holds `u_1..u_{2n−1}`.
pub fn det_p_recurrence_sides(u: &[Cyclo6]) -> Result<(Cyclo6, Cyclo6)> {
    let k = u.len();
    let n = k.div_ceil(2);
    let last = &u[k - 1];
    let mut full = u.to_vec();
    full.push(Cyclo6::a() * last.clone());
    let lhs = div_or_pole(&build_p(&full)?.det(), &build_p(&u[..k - 1])?.det(), "det P(n−1)")?;
    let sign = Cyclo6::from_i64(if n.is_multiple_of(2) { 1 } else { -1 });
    let l3 = power(last, 3)?;
    let rhs =
        sign * sigma(&Cyclo6::a())? * product(u[..k - 1].iter().map(|m| sigma(&ratio(&power(m, 3)?, &l3)?)))?;
    Ok((lhs, rhs))
}

/// Both sides of the recurrence for det P_U at `u_{2n} = a·u_{2n−1}`:
/// `σ(a) σ(u_{2n−1}⁶) ∏_μ σ(u_μ³ ū_{2n−1}³) σ(u_μ³ u_{2n−1}³)`.
pub fn det_p_u_recurrence_sides(u: &[Cyclo6]) -> Result<(Cyclo6, Cyclo6)> {
    let k = u.len();
    let last = &u[k - 1];
    let mut full = u.to_vec();
    full.push(Cyclo6::a() * last.clone());
    let lhs = div_or_pole(
        &build_p_u(&full)?.det(),
        &build_p_u(&u[..k - 1])?.det(),
        "det P_U(n−1)",
    )?;
    let l3 = power(last, 3)?;
    let rhs = sigma(&Cyclo6::a())?
        * sigma(&power(last, 6)?)?
        * product(u[..k - 1].iter().map(|m| {
            let m3 = power(m, 3)?;
            Ok(sigma(&ratio(&m3, &l3)?)? * sigma(&(m3 * l3.clone()))?)
        }))?;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};
    use crate::ice::partition_sum_brute;

    fn c(v: i64, d: i64) -> Cyclo6 {
        Cyclo6::rational(rat(v, d))
    }

    #[test]
    fn exponent_rows() {
        assert_eq!(p_exponents(1), vec![1, -1]);
        assert_eq!(p_exponents(2), vec![4, 2, -2, -4]);
        assert_eq!(p_u_exponents(1), vec![4, 2]);
        assert_eq!(p_u_exponents(2), vec![10, 8, 4, 2]);
    }

    #[test]
    fn single_vertex_values() {
        let p = SpectralAssignment::dwbc(int(2), vec![int(3)], vec![int(5)]);
        assert_eq!(z_ik(&p).unwrap(), sigma(&int(4)).unwrap());
        assert_eq!(z_ik_cleared(&p).unwrap(), sigma(&int(4)).unwrap());
        let u = [c(2, 1), c(3, 1)];
        assert_eq!(z_p(&u).unwrap(), sigma(&Cyclo6::a()).unwrap());
    }

    #[test]
    fn determinant_matches_state_sum_n2() {
        let p = SpectralAssignment::uturn(
            rat(7, 4),
            rat(5, 3),
            vec![rat(2, 3), int(5)],
            vec![int(3), rat(1, 2)],
        );
        assert_eq!(
            z_ik(&p).unwrap(),
            partition_sum_brute(Boundary::Dwbc(2), &p).unwrap()
        );
        assert_eq!(
            z_u_det(&p).unwrap(),
            partition_sum_brute(Boundary::UTurn(2), &p).unwrap()
        );
        let u = vec![rat(2, 3), int(5), int(3), rat(1, 2)];
        let q = SpectralAssignment::os(rat(7, 4), u.clone());
        assert_eq!(
            z_o_pf(&rat(7, 4), &u).unwrap(),
            partition_sum_brute(Boundary::Os(2), &q).unwrap()
        );
    }

    #[test]
    fn zeta6_forms_n2() {
        let u = [c(2, 1), c(3, 5), c(7, 2), c(4, 9)];
        assert_eq!(z_p(&u).unwrap(), z_statesum(&u).unwrap());
        assert_eq!(z_u_p(&u).unwrap(), z_u_prime_statesum(&u, &c(5, 7)).unwrap());
        assert_eq!(z_o_pf(&Cyclo6::a(), &u).unwrap(), z_u_p(&u).unwrap());
    }

    #[test]
    fn recurrences() {
        let (l, r) = dwbc_recurrence_sides(&rat(3, 2), &[rat(2, 3), int(5)], &[int(3)]).unwrap();
        assert_eq!(l, r);
        let (l, r) = det_p_recurrence_sides(&[c(2, 1), c(3, 5), c(7, 2)]).unwrap();
        assert_eq!(l, r);
        let (l, r) = det_p_u_recurrence_sides(&[c(2, 1), c(3, 5), c(7, 2)]).unwrap();
        assert_eq!(l, r);
    }

    #[test]
    fn poles_are_reported() {
        let p = SpectralAssignment::dwbc(int(2), vec![int(3), int(3)], vec![int(5), int(7)]);
        assert!(matches!(z_ik(&p), Err(Error::Pole(_))));
        assert!(Cyclo6::one().is_one());
    }
}
