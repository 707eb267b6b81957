//! Closed-form counts: the ASM product formula, refined ASM counts, and the
//! VSASM and UASM formulas derived from them.

use num_bigint::BigInt;
use num_integer::binomial;

use crate::algebra::{BigRational, Poly, Ring};
use crate::error::{Error, Result};

fn factorial(n: i64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn frac(num: BigInt, den: BigInt) -> BigRational {
    BigRational::new(num, den)
}

fn check_row(n: usize, r: usize, rows: usize) -> Result<()> {
    if n == 0 || r == 0 || r > rows {
        return Err(Error::OutOfRange(format!(
            "row {r} outside 1..={rows} for n = {n}"
        )));
    }
    Ok(())
}

/// `A(n)/A(n−1) = (3n−2)!(n−1)!/((2n−1)!(2n−2)!)`.
pub fn asm_ratio(n: usize) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be positive".into()));
    }
    let n = n as i64;
    Ok(frac(
        factorial(3 * n - 2) * factorial(n - 1),
        factorial(2 * n - 1) * factorial(2 * n - 2),
    ))
}

/// A(n) from the ratio formula anchored at A(0) = 1.
pub fn asm_total(n: usize) -> BigInt {
    let q = (1..=n).fold(BigRational::one(), |acc, k| acc * asm_ratio(k).expect("k ≥ 1"));
    q.to_integer()
}

/// `A(n, r)/A(n−1) = (n+r−2)!(2n−r−1)!/((2n−2)!(r−1)!(n−r)!)`.
pub fn asm_refined_ratio(n: usize, r: usize) -> Result<BigRational> {
    check_row(n, r, n)?;
    let (n, r) = (n as i64, r as i64);
    Ok(frac(
        factorial(n + r - 2) * factorial(2 * n - r - 1),
        factorial(2 * n - 2) * factorial(r - 1) * factorial(n - r),
    ))
}

/// A(n, r), the ASMs of order n whose first column has its 1 in row r.
pub fn asm_refined(n: usize, r: usize) -> Result<BigInt> {
    let v = asm_refined_ratio(n, r)? * BigRational::from(asm_total(n - 1));
    integral(v)
}

fn integral(v: BigRational) -> Result<BigInt> {
    if !v.is_integer() {
        return Err(Error::Contract(format!("expected an integer, got {v}")));
    }
    Ok(v.to_integer())
}

/// A_V(2n+1) `= 2^{−n} ∏_{k=1}^n (6k−2)!(2k−1)!/((4k−1)!(4k−2)!)`.
pub fn av_total(n: usize) -> BigInt {
    let mut q = BigRational::one();
    for k in 1..=n as i64 {
        q *= frac(
            factorial(6 * k - 2) * factorial(2 * k - 1),
            BigInt::from(2) * factorial(4 * k - 1) * factorial(4 * k - 2),
        );
    }
    q.to_integer()
}

/// `C(6n−2, 2n)/(2 C(4n−1, 2n))`, the ratio A_V(2n+1)/A_V(2n−1).
pub fn vsasm_ratio(n: usize) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be positive".into()));
    }
    let n = n as i64;
    let b = |m: i64, k: i64| binomial(BigInt::from(m), BigInt::from(k));
    Ok(frac(b(6 * n - 2, 2 * n), BigInt::from(2) * b(4 * n - 1, 2 * n)))
}

/// A_V(2n+1, r) for 1 ≤ r ≤ 2n.
pub fn av_refined(n: usize, r: usize) -> Result<BigRational> {
    check_row(n, r, 2 * n)?;
    let (ni, ri) = (n as i64, r as i64);
    let mut sum = BigInt::zero();
    for k in 1..ri {
        let term = factorial(2 * ni + k - 2) * factorial(4 * ni - k - 1)
            / (factorial(k - 1) * factorial(2 * ni - k));
        if (ri + k - 1) % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Ok(frac(av_total(n - 1) * sum, factorial(4 * ni - 2)))
}

fn one_plus_y_pow(k: usize) -> Poly<BigInt> {
    let base = Poly::new(vec![BigInt::one(), BigInt::one()]);
    (0..k).fold(Poly::constant(BigInt::one()), |acc, _| acc * base.clone())
}

/// A_U(2n; 1, y) `= (1+y)^n A_V(2n+1)`.
pub fn au_first(n: usize) -> Poly<BigInt> {
    one_plus_y_pow(n).scale(&av_total(n))
}

/// A_U(2n, r; 1, y) from the solution of the U-turn recurrence, with A(2n−1)
/// and A(2n; k) taken from the product formulas.
pub fn au_refined(n: usize, r: usize) -> Result<Poly<BigRational>> {
    check_row(n, r, 2 * n)?;
    let ri = r as i64;
    let y = Poly::<BigRational>::x();
    let one = Poly::constant(BigRational::one());
    let a2n = |k: usize| asm_refined(2 * n, k).map(|v| Poly::constant(BigRational::from(v)));
    let mut bracket = y.clone() * a2n(r)?;
    for k in 1..r {
        let sign = if (ri + k as i64 - 1) % 2 == 0 { 1 } else { -1 };
        bracket = bracket + (one.clone() - y.clone()) * a2n(k)?.scale(&BigRational::from_i64(sign));
    }
    let pre = frac(av_total(n - 1), asm_total(2 * n - 1));
    let lift = one_plus_y_pow(n - 1).map(|c| BigRational::from(c.clone()));
    Ok((lift * bracket).scale(&pre))
}
