//! The identity battery: every enumeration identity and every spectral
//! generating-function identity becomes a check that yields a report.
//!
//! Polynomial identities are compared coefficient-wise on enumerated counts.
//! Spectral identities are compared exactly at seeded rational points with
//! a = exp(iπ/3) (EQ1 uses a generic rational a instead).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::formulas::{
    asm_ratio, asm_refined_ratio, au_first, au_refined, av_refined, av_total, vsasm_ratio,
};
use crate::algebra::{div_or_pole, rational_to_string, sigma, BigRational, Cyclo6, Field, Poly, Ring};
use crate::asm::{census, AsmClass, Statistic};
use crate::error::{Error, Result};
use crate::ice::{partition_sum, Boundary, SpectralAssignment};
use crate::sampling::{rational, resample, rng_for};
use crate::special::phi;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum IdentityId {
    /// x-enumeration of ASMs from the domain-wall partition function.
    Eq1,
    /// Refined ASM generating function from Z(n; 1, (u, 1, …, 1)).
    Eq6,
    /// Refined UASM generating function from Z_U(n; 1, (u, 1, …, 1)).
    Eq9,
    /// The same generating function through φ(2n; u).
    Eq10,
    /// Refined ASM generating function through φ(n; u).
    Eq11,
    /// A_U(2n)/A_U(2n−2) = (1+y) A(2n) / (2 A(2n−1)).
    Eq12,
    /// Product formula for A_U(2n; 1, y).
    Eq13,
    /// Product formula for A_V(2n+1).
    Eq14,
    /// A_U(2n; x, y) = (1+y)^n A_V(2n+1; x).
    Eq15,
    /// A_U(2n, 1; 1, y) = y A_U(2n−2; 1, y).
    Eq16,
    /// A_U(2n; 1, y) = (1+y)^n A_V(2n+1), both enumerated.
    Eq17,
    /// Coefficient recurrence linking refined UASM and ASM counts.
    Eq18,
    /// Refined OSASM generating function from Z_O(n; (ū, 1, …, 1)).
    Eq20,
    /// Refined VSASM generating function against refined ASMs of even order.
    Eq21,
    /// A_V(2n+1, r) = A_U(2n, r; 1, 0).
    Eq22,
    /// Two-variable identity between refined UASM and ASM generating functions.
    Eq23,
    RatioFamous,
    RatioRobbins,
    RefinedRatio,
    AvRefined,
    AuRefined,
    KutinYuen,
}

impl IdentityId {
    pub const ALL: [IdentityId; 22] = [
        IdentityId::Eq1,
        IdentityId::Eq6,
        IdentityId::Eq9,
        IdentityId::Eq10,
        IdentityId::Eq11,
        IdentityId::Eq12,
        IdentityId::Eq13,
        IdentityId::Eq14,
        IdentityId::Eq15,
        IdentityId::Eq16,
        IdentityId::Eq17,
        IdentityId::Eq18,
        IdentityId::Eq20,
        IdentityId::Eq21,
        IdentityId::Eq22,
        IdentityId::Eq23,
        IdentityId::RatioFamous,
        IdentityId::RatioRobbins,
        IdentityId::RefinedRatio,
        IdentityId::AvRefined,
        IdentityId::AuRefined,
        IdentityId::KutinYuen,
    ];

    pub fn tag(&self) -> &'static str {
        use IdentityId::*;
        match self {
            Eq1 => "EQ1",
            Eq6 => "EQ6",
            Eq9 => "EQ9",
            Eq10 => "EQ10",
            Eq11 => "EQ11",
            Eq12 => "EQ12",
            Eq13 => "EQ13",
            Eq14 => "EQ14",
            Eq15 => "EQ15",
            Eq16 => "EQ16",
            Eq17 => "EQ17",
            Eq18 => "EQ18",
            Eq20 => "EQ20",
            Eq21 => "EQ21",
            Eq22 => "EQ22",
            Eq23 => "EQ23",
            RatioFamous => "RATIO_FAMOUS",
            RatioRobbins => "RATIO_ROBBINS",
            RefinedRatio => "REFINED_RATIO",
            AvRefined => "AV_REFINED",
            AuRefined => "AU_REFINED",
            KutinYuen => "KUTIN_YUEN",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|id| id.tag().eq_ignore_ascii_case(s))
    }

    /// Checks against random spectral points rather than one exact comparison.
    pub fn is_spectral(&self) -> bool {
        use IdentityId::*;
        matches!(self, Eq1 | Eq6 | Eq9 | Eq10 | Eq11 | Eq20)
    }

    /// Largest n the check runs at; n is the ASM order for ASM identities
    /// and the half size (2n rows, order 2n+1 VSASMs) otherwise.
    pub fn n_cap(&self) -> usize {
        use IdentityId::*;
        match self {
            Eq1 | Eq6 | Eq11 | RatioFamous | RefinedRatio => 7,
            // A(2n) must stay within the ASM enumeration cap
            Eq12 | Eq18 | Eq21 | Eq23 => 3,
            Eq9 | Eq10 | Eq13 | Eq15 | Eq14 | Eq16 | Eq17 | Eq20 | Eq22 | RatioRobbins | AvRefined
            | AuRefined | KutinYuen => 4,
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub tag: IdentityId,
    /// Inclusive range of sizes checked.
    pub n_range: [usize; 2],
    /// Random points evaluated (0 for purely combinatorial checks).
    pub samples: usize,
    pub verdict: Verdict,
    /// First failing input.
    pub witness: Option<String>,
    pub note: Option<String>,
}

/// Run one identity for every size from 1 to `min(n_max, cap)`.
pub fn check_identity(id: IdentityId, n_max: usize, samples: usize, seed: u64) -> Result<IdentityReport> {
    let hi = n_max.min(id.n_cap());
    if hi == 0 {
        return Err(Error::OutOfRange("n_max must be positive".into()));
    }
    let mut used = 0;
    let mut witness = None;
    for n in 1..=hi {
        let failure = if id.is_spectral() {
            let mut rng = rng_for(seed, id.tag(), n);
            let mut found = None;
            for _ in 0..samples {
                used += 1;
                let (ok, point) = resample(&mut rng, |rng| spectral_sample(id, n, rng))?;
                if !ok {
                    found = Some(point);
                    break;
                }
            }
            found.map(|p| format!("n={n} {p}"))
        } else {
            combinatorial(id, n)?.map(|w| format!("n={n} {w}"))
        };
        if failure.is_some() {
            witness = failure;
            break;
        }
    }
    Ok(IdentityReport {
        tag: id,
        n_range: [1, hi],
        samples: used,
        verdict: if witness.is_none() {
            Verdict::Pass
        } else {
            Verdict::Fail
        },
        witness,
        note: note(id),
    })
}

fn note(id: IdentityId) -> Option<String> {
    match id {
        IdentityId::Eq20 => Some("sigma(a) exponent 2(n-1)^2; A_O(2n,1) = 0 asserted".into()),
        IdentityId::Eq15 => Some("VSASM x-weight counts -1 entries left of the centre column".into()),
        IdentityId::KutinYuen => Some("also checks the OSASM/ASM generating-function relation".into()),
        _ => None,
    }
}

// ---- enumerated data ----

fn asm_rows(n: usize) -> Result<Vec<BigInt>> {
    census(AsmClass::Asm, n)?
        .refined(Statistic::FirstColumn)?
        .constants()
}

fn asm_count(n: usize) -> Result<BigInt> {
    if n == 0 {
        return Ok(BigInt::one());
    }
    Ok(census(AsmClass::Asm, n)?.total().into())
}

fn uasm_rows(n: usize) -> Result<Vec<Poly<BigInt>>> {
    Ok(census(AsmClass::Uasm, n)?.refined(Statistic::FirstColumn)?.counts)
}

fn uasm_count(n: usize) -> Result<Poly<BigInt>> {
    if n == 0 {
        return Ok(Poly::constant(BigInt::one()));
    }
    Ok(census(AsmClass::Uasm, n)?
        .refined(Statistic::FirstColumn)?
        .total())
}

fn vsasm_rows(n: usize) -> Result<Vec<BigInt>> {
    census(AsmClass::Vsasm, n)?
        .refined(Statistic::FirstColumn)?
        .constants()
}

fn vsasm_count(n: usize) -> Result<BigInt> {
    if n == 0 {
        return Ok(BigInt::one());
    }
    Ok(census(AsmClass::Vsasm, n)?.total().into())
}

fn osasm_rows(n: usize) -> Result<Vec<BigInt>> {
    census(AsmClass::Osasm, n)?
        .refined(Statistic::FirstColumn)?
        .constants()
}

fn osasm_count(n: usize) -> Result<BigInt> {
    if n == 0 {
        return Ok(BigInt::one());
    }
    Ok(census(AsmClass::Osasm, n)?.total().into())
}

type Biv = Poly<Poly<BigInt>>;

fn konst(v: &BigInt) -> Poly<BigInt> {
    Poly::constant(v.clone())
}

fn y_poly() -> Poly<BigInt> {
    Poly::x()
}

/// `Σ_r c_r t^{r−1}` with coefficients in y.
fn gen_t(rows: &[Poly<BigInt>]) -> Biv {
    Poly::new(rows.to_vec())
}

fn gen_t_const(rows: &[BigInt]) -> Biv {
    Poly::new(rows.iter().map(konst).collect())
}

/// `c0 + c1 t` with constant-in-y coefficients.
fn linear_t(c0: Poly<BigInt>, c1: Poly<BigInt>) -> Biv {
    Poly::new(vec![c0, c1])
}

fn pretty<R: Ring + fmt::Display>(v: &[R]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn mismatch<T: PartialEq + fmt::Display>(what: &str, l: &T, r: &T) -> Option<String> {
    (l != r).then(|| format!("{what}: {l} != {r}"))
}

/// Exact comparisons on enumerated data. Returns a witness on failure.
fn combinatorial(id: IdentityId, n: usize) -> Result<Option<String>> {
    use IdentityId::*;
    let q = |v: BigInt| BigRational::from(v);
    Ok(match id {
        Eq12 => {
            let lhs = uasm_count(n)?.scale(&(BigInt::from(2) * asm_count(2 * n - 1)?));
            let rhs = (Poly::new(vec![BigInt::one(), BigInt::one()]) * uasm_count(n - 1)?)
                .scale(&asm_count(2 * n)?);
            mismatch("2 A(2n-1) A_U(2n) vs (1+y) A(2n) A_U(2n-2)", &lhs, &rhs)
        }
        Eq13 => mismatch("A_U(2n;1,y)", &au_first(n), &uasm_count(n)?),
        Eq14 => mismatch("A_V(2n+1)", &av_total(n), &vsasm_count(n)?),
        Eq15 => {
            // keys (x power, y power)
            let mut lhs: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
            for (s, c) in &census(AsmClass::Uasm, n)?.counts {
                *lhs.entry((s.k, s.l.unwrap_or(0))).or_default() += BigInt::from(*c);
            }
            let mut av: BTreeMap<usize, BigInt> = BTreeMap::new();
            for (s, c) in &census(AsmClass::Vsasm, n)?.counts {
                if s.k < n || !(s.k - n).is_multiple_of(2) {
                    return Ok(Some(format!("VSASM with {} entries -1 is not symmetric", s.k)));
                }
                *av.entry((s.k - n) / 2).or_default() += BigInt::from(*c);
            }
            let mut rhs: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
            for (&xk, c) in &av {
                for j in 0..=n {
                    let b = num_integer::binomial(BigInt::from(n), BigInt::from(j));
                    *rhs.entry((xk, j)).or_default() += c * b;
                }
            }
            (lhs != rhs).then(|| format!("x,y coefficients {lhs:?} != {rhs:?}"))
        }
        Eq16 => {
            let first = uasm_rows(n)?[0].clone();
            mismatch("A_U(2n,1;1,y)", &first, &(y_poly() * uasm_count(n - 1)?))
        }
        Eq17 => {
            let want = au_lift(n).scale(&vsasm_count(n)?);
            mismatch("A_U(2n;1,y)", &uasm_count(n)?, &want)
        }
        Eq18 => {
            let au = uasm_rows(n)?;
            let a = asm_rows(2 * n)?;
            let a_odd = asm_count(2 * n - 1)?;
            let prev = uasm_count(n - 1)?;
            (2..=2 * n).find_map(|r| {
                let lhs = (au[r - 2].clone() + au[r - 1].clone()).scale(&a_odd);
                let rhs = prev.clone() * (konst(&a[r - 2]) + y_poly().scale(&a[r - 1]));
                mismatch(&format!("r={r}"), &lhs, &rhs)
            })
        }
        Eq21 => {
            let v = vsasm_rows(n)?;
            if v[2 * n] != BigInt::zero() {
                return Ok(Some("A_V(2n+1, 2n+1) != 0".into()));
            }
            let lhs = linear_t(Poly::constant(BigInt::one()), Poly::constant(BigInt::one()))
                * gen_t_const(&v[..2 * n])
                * Poly::constant(konst(&asm_count(2 * n - 1)?));
            let rhs = linear_t(Poly::zero(), Poly::constant(BigInt::one()))
                * gen_t_const(&asm_rows(2 * n)?)
                * Poly::constant(konst(&vsasm_count(n - 1)?));
            mismatch("(t+1) generating functions", &lhs, &rhs)
        }
        Eq22 => {
            let v = vsasm_rows(n)?;
            let u: Vec<BigInt> = uasm_rows(n)?.iter().map(|p| p.coeff(0)).collect();
            mismatch("A_V(2n+1,r) vs A_U(2n,r;1,0)", &pretty(&v[..2 * n]), &pretty(&u))
                .or_else(|| (v[2 * n] != BigInt::zero()).then(|| "A_V(2n+1,2n+1) != 0".into()))
        }
        Eq23 => {
            let lhs = linear_t(Poly::constant(BigInt::one()), Poly::constant(BigInt::one()))
                * gen_t(&uasm_rows(n)?)
                * Poly::constant(konst(&asm_count(2 * n - 1)?));
            let rhs = linear_t(y_poly(), Poly::constant(BigInt::one()))
                * gen_t_const(&asm_rows(2 * n)?)
                * Poly::constant(uasm_count(n - 1)?);
            mismatch("two-variable identity", &lhs, &rhs)
        }
        RatioFamous => {
            let enumerated = BigRational::new(asm_count(n)?, asm_count(n - 1)?);
            mismatch("A(n)/A(n-1)", &asm_ratio(n)?, &enumerated)
        }
        RatioRobbins => {
            let enumerated = BigRational::new(vsasm_count(n)?, vsasm_count(n - 1)?);
            mismatch("A_V(2n+1)/A_V(2n-1)", &vsasm_ratio(n)?, &enumerated)
        }
        RefinedRatio => {
            let rows = asm_rows(n)?;
            let prev = q(asm_count(n - 1)?);
            (1..=n).find_map(|r| {
                let f = asm_refined_ratio(n, r).map(|v| v * prev.clone());
                match f {
                    Ok(f) => mismatch(&format!("r={r}"), &f, &q(rows[r - 1].clone())),
                    Err(e) => Some(e.to_string()),
                }
            })
        }
        AvRefined => {
            let rows = vsasm_rows(n)?;
            (1..=2 * n)
                .find_map(|r| match av_refined(n, r) {
                    Ok(f) => mismatch(&format!("r={r}"), &f, &q(rows[r - 1].clone())),
                    Err(e) => Some(e.to_string()),
                })
                .or_else(|| (rows[2 * n] != BigInt::zero()).then(|| "last row nonzero".into()))
        }
        AuRefined => {
            let rows = uasm_rows(n)?;
            (1..=2 * n).find_map(|r| match au_refined(n, r) {
                Ok(f) => {
                    let e = rows[r - 1].map(|c| q(c.clone()));
                    mismatch(&format!("r={r}"), &f, &e)
                }
                Err(e) => Some(e.to_string()),
            })
        }
        KutinYuen => {
            let o = osasm_rows(n)?;
            let v = vsasm_rows(n)?;
            mismatch("A_O(2n,r) vs A_V(2n+1,r)", &pretty(&o), &pretty(&v[..2 * n])).or_else(|| {
                let lhs = linear_t(Poly::constant(BigInt::one()), Poly::constant(BigInt::one()))
                    * gen_t_const(&o)
                    * Poly::constant(konst(&asm_count(2 * n - 1).ok()?));
                let rhs = linear_t(Poly::zero(), Poly::constant(BigInt::one()))
                    * gen_t_const(&asm_rows(2 * n).ok()?)
                    * Poly::constant(konst(&osasm_count(n - 1).ok()?));
                mismatch("OSASM generating function", &lhs, &rhs)
            })
        }
        Eq1 | Eq6 | Eq9 | Eq10 | Eq11 | Eq20 => unreachable!("spectral identity"),
    })
}

fn au_lift(n: usize) -> Poly<BigInt> {
    let base = Poly::new(vec![BigInt::one(), BigInt::one()]);
    (0..n).fold(Poly::constant(BigInt::one()), |acc, _| acc * base.clone())
}

// ---- spectral identities ----

fn cy(q: &BigRational) -> Cyclo6 {
    Cyclo6::rational(q.clone())
}

fn eval_y(p: &Poly<BigInt>, y: &Cyclo6) -> Cyclo6 {
    p.map(|c| Cyclo6::rational(BigRational::from(c.clone()))).eval(y)
}

/// `Σ_r c_r t^{r−1}`.
fn series(c: &[Cyclo6], t: &Cyclo6) -> Cyclo6 {
    Poly::new(c.to_vec()).eval(t)
}

fn pow_s(e: i64) -> Result<Cyclo6> {
    sigma(&Cyclo6::a())?.pow_i(e).ok_or(Error::DivisionByZero)
}

fn ones(n: usize) -> Vec<Cyclo6> {
    vec![Cyclo6::one(); n]
}

fn with_first(u: &Cyclo6, n: usize) -> Vec<Cyclo6> {
    let mut v = ones(n);
    v[0] = u.clone();
    v
}

/// One random point; returns whether both sides agree and a description of
/// the point.
fn spectral_sample<R: Rng>(id: IdentityId, n: usize, rng: &mut R) -> Result<(bool, String)> {
    use IdentityId::*;
    if id == Eq1 {
        return eq1_sample(n, rng);
    }
    let uq = rational(rng);
    let bq = rational(rng);
    let u = cy(&uq);
    let b = cy(&bq);
    let a = Cyclo6::a();
    let sa2 = sigma(&(&a * &a))?;
    let sau = sigma(&(&a * &u))?;
    let t = div_or_pole(
        &sigma(&(&a * &u.inv().ok_or(Error::DivisionByZero)?))?,
        &sau,
        "σ(au)",
    )?;
    let y = div_or_pole(&sigma(&(&a.conj() * &b))?, &sigma(&(&a * &b))?, "σ(ab)")?;
    let ni = n as i64;
    let nn = n as u64;
    let (lhs, rhs, point) = match id {
        Eq6 | Eq11 => {
            let rows: Vec<Cyclo6> = asm_rows(n)?.into_iter().map(|v| cy(&v.into())).collect();
            let gen = series(&rows, &t);
            if id == Eq6 {
                let z = partition_sum(
                    Boundary::Dwbc(n),
                    &SpectralAssignment::dwbc(a.clone(), ones(n), with_first(&u, n)),
                )?;
                let den = pow_s((ni - 1) * (ni - 1))? * sa2.pow_u(nn) * sau.pow_u(nn - 1);
                (
                    gen,
                    div_or_pole(&z, &den, "normalizer")?,
                    format!("u={}", rational_to_string(&uq)),
                )
            } else {
                let prev = cy(&asm_count(n - 1)?.into());
                let ph = phi(n)?.eval(&u).ok_or(Error::DivisionByZero)?;
                let num = pow_s(3 * ni - 2)? * ph * prev;
                let den = sau.pow_u(nn - 1) * sigma(&u)?.pow_u(2 * nn - 1);
                (
                    gen,
                    div_or_pole(&num, &den, "normalizer")?,
                    format!("u={}", rational_to_string(&uq)),
                )
            }
        }
        Eq9 | Eq10 => {
            let rows: Vec<Cyclo6> = uasm_rows(n)?.iter().map(|p| eval_y(p, &y)).collect();
            let gen = series(&rows, &t);
            let point = format!("u={} b={}", rational_to_string(&uq), rational_to_string(&bq));
            if id == Eq9 {
                let p = SpectralAssignment::uturn(a.clone(), b.clone(), ones(n), with_first(&u, n));
                let z = partition_sum(Boundary::UTurn(n), &p)?;
                let den = pow_s(2 * ni * ni - 3 * ni + 1)?
                    * sa2.pow_u(nn)
                    * sau.pow_u(2 * nn - 1)
                    * sigma(&(&a * &b))?.pow_u(nn);
                (gen, div_or_pole(&z, &den, "normalizer")?, point)
            } else {
                let prev = eval_y(&uasm_count(n - 1)?, &y);
                let ph = phi(2 * n)?.eval(&u).ok_or(Error::DivisionByZero)?;
                let ub = u.inv().ok_or(Error::DivisionByZero)?;
                let num = sigma(&(&b * &ub))? * pow_s(6 * ni - 2)? * ph * prev;
                let den = sigma(&(&b * &a))?
                    * sau.pow_u(2 * nn - 1)
                    * sigma(&u)?.pow_u(4 * nn - 2)
                    * sigma(&(&u * &u))?;
                (gen, div_or_pole(&num, &den, "normalizer")?, point)
            }
        }
        Eq20 => {
            let rows = osasm_rows(n)?;
            if rows[0] != BigInt::zero() {
                return Ok((false, "A_O(2n,1) != 0".into()));
            }
            let c: Vec<Cyclo6> = rows[1..].iter().map(|v| cy(&v.clone().into())).collect();
            let gen = series(&c, &t);
            let ub = u.inv().ok_or(Error::DivisionByZero)?;
            let z = partition_sum(
                Boundary::Os(n),
                &SpectralAssignment::os(a.clone(), with_first(&ub, 2 * n)),
            )?;
            let den = pow_s(2 * (ni - 1) * (ni - 1))? * sa2.pow_u(nn) * sau.pow_u(2 * nn - 2);
            (
                gen,
                div_or_pole(&z, &den, "normalizer")?,
                format!("u={}", rational_to_string(&uq)),
            )
        }
        _ => unreachable!("combinatorial identity"),
    };
    Ok((lhs == rhs, point))
}

/// `A(n; x) = Z(n; 1, 1)/(σ(a)^{n²−n} σ(a²)^n)` with `x = (σ(a²)/σ(a))²`,
/// at a random rational a.
fn eq1_sample<R: Rng>(n: usize, rng: &mut R) -> Result<(bool, String)> {
    let a = rational(rng);
    let sa = sigma(&a)?;
    let sa2 = sigma(&(&a * &a))?;
    let x = div_or_pole(&sa2, &sa, "σ(a)")?.pow_u(2);
    let mut lhs = BigRational::zero();
    for (s, c) in &census(AsmClass::Asm, n)?.counts {
        lhs += x.pow_u(s.k as u64) * BigRational::from(BigInt::from(*c));
    }
    let one = vec![BigRational::one(); n];
    let z = partition_sum(
        Boundary::Dwbc(n),
        &SpectralAssignment::dwbc(a.clone(), one.clone(), one),
    )?;
    let nn = n as u64;
    let den = sa.pow_u(nn * nn - nn) * sa2.pow_u(nn);
    let rhs = div_or_pole(&z, &den, "normalizer")?;
    Ok((lhs == rhs, format!("a={}", rational_to_string(&a))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tags_round_trip() {
        for id in IdentityId::ALL {
            assert_eq!(IdentityId::parse(id.tag()), Some(id));
            let js = serde_json::to_string(&id).unwrap();
            assert_eq!(js, format!("\"{}\"", id.tag()));
        }
        assert_eq!(IdentityId::ALL.len(), 22);
    }

    #[test]
    fn combinatorial_small() {
        for id in IdentityId::ALL.into_iter().filter(|i| !i.is_spectral()) {
            let rep = check_identity(id, 2, 0, 1).unwrap();
            assert_eq!(rep.verdict, Verdict::Pass, "{rep:?}");
        }
    }

    #[test]
    fn spectral_small() {
        for id in IdentityId::ALL.into_iter().filter(IdentityId::is_spectral) {
            let rep = check_identity(id, 2, 3, 7).unwrap();
            assert_eq!(rep.verdict, Verdict::Pass, "{rep:?}");
            assert_eq!(rep.samples, 6);
        }
    }

    #[test]
    fn eq12_value_at_two() {
        // A_U(4; 1, 1)/A_U(2; 1, 1) = 12/2 = 42/7
        let y1 = BigInt::one();
        let ratio = BigRational::new(uasm_count(2).unwrap().eval(&y1), uasm_count(1).unwrap().eval(&y1));
        assert_eq!(ratio, BigRational::from_i64(6));
        assert_eq!(
            BigRational::new(asm_count(4).unwrap(), asm_count(3).unwrap()),
            BigRational::from_i64(6)
        );
    }
}
