//! Row-by-row backtracking enumerators.
//!
//! Every enumerator carries the running column sums (each 0 or 1) and extends
//! them one row (or one serpentine row pair) at a time. The work splits over
//! the candidates for the first row and the branches are joined in candidate
//! order, so the output sequence does not depend on the thread count.

use rayon::prelude::*;

use super::matrix::{is_alternating, AsmClass, AsmMatrix};
use crate::error::{Error, Result};

pub const ASM_CAP: usize = 7;
pub const VSASM_ORDER_CAP: usize = 9;
pub const OSASM_ORDER_CAP: usize = 8;
pub const UASM_ROWS_CAP: usize = 8;

/// Check the class-specific size cap. `n` is the class index: ASM order n,
/// VSASM order 2n+1, OSASM order 2n, UASM 2n×n.
pub fn check_cap(class: AsmClass, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::OutOfRange("size must be at least 1".into()));
    }
    let (what, value, cap) = match class {
        AsmClass::Asm => ("ASM order", n, ASM_CAP),
        AsmClass::Vsasm => ("VSASM order", 2 * n + 1, VSASM_ORDER_CAP),
        AsmClass::Osasm => ("OSASM order", 2 * n, OSASM_ORDER_CAP),
        AsmClass::Uasm => ("UASM row count", 2 * n, UASM_ROWS_CAP),
    };
    if value > cap {
        return Err(Error::CapExceeded { what, value, cap });
    }
    Ok(())
}

/// All members of a class, in deterministic order.
pub fn enumerate_class(class: AsmClass, n: usize) -> Result<Vec<AsmMatrix>> {
    check_cap(class, n)?;
    Ok(match class {
        AsmClass::Asm => enumerate_asm_unchecked(n),
        AsmClass::Uasm => enumerate_uasm_unchecked(n),
        AsmClass::Vsasm => enumerate_uasm_unchecked(n)
            .into_iter()
            .filter_map(|u| vsasm_from_uasm(&u))
            .collect(),
        AsmClass::Osasm => enumerate_osasm_unchecked(n),
    })
}

pub fn enumerate_asm(n: usize) -> Result<Vec<AsmMatrix>> {
    enumerate_class(AsmClass::Asm, n)
}

/// Rows `e` compatible with column sums `c`: `c + e` stays in {0, 1} and
/// the row itself alternates.
fn asm_rows(c: &[u8]) -> Vec<Vec<i8>> {
    fn go(c: &[u8], j: usize, s: i8, row: &mut Vec<i8>, out: &mut Vec<Vec<i8>>) {
        if j == c.len() {
            if s == 1 {
                out.push(row.clone());
            }
            return;
        }
        for e in [0i8, 1, -1] {
            let cj = c[j] as i8 + e;
            let sj = s + e;
            if (0..=1).contains(&cj) && (0..=1).contains(&sj) {
                row.push(e);
                go(c, j + 1, sj, row, out);
                row.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(c, 0, 0, &mut Vec::with_capacity(c.len()), &mut out);
    out
}

/// Generic row-wise search. `rows(c, depth)` lists the row blocks that may
/// follow at `depth`; a block is a flat run of entries covering whole rows.
fn search<R>(depth_total: usize, width: usize, rows: R) -> Vec<Vec<i8>>
where
    R: Fn(&[u8], usize) -> Vec<Vec<i8>> + Sync,
{
    fn go<R: Fn(&[u8], usize) -> Vec<Vec<i8>>>(
        rows: &R,
        depth_total: usize,
        depth: usize,
        c: &[u8],
        acc: &mut Vec<i8>,
        out: &mut Vec<Vec<i8>>,
    ) {
        if depth == depth_total {
            if c.iter().all(|&v| v == 1) {
                out.push(acc.clone());
            }
            return;
        }
        for block in rows(c, depth) {
            let next = column_sums(c, &block);
            let len = acc.len();
            acc.extend_from_slice(&block);
            go(rows, depth_total, depth + 1, &next, acc, out);
            acc.truncate(len);
        }
    }
    let c0 = vec![0u8; width];
    let first = rows(&c0, 0);
    first
        .into_par_iter()
        .map(|block| {
            let mut out = Vec::new();
            let next = column_sums(&c0, &block);
            let mut acc = block.clone();
            go(&rows, depth_total, 1, &next, &mut acc, &mut out);
            out
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// Column sums after a block of one or more full rows.
fn column_sums(c: &[u8], block: &[i8]) -> Vec<u8> {
    let w = c.len();
    let mut next: Vec<i8> = c.iter().map(|&v| v as i8).collect();
    for (i, &e) in block.iter().enumerate() {
        next[i % w] += e;
    }
    next.into_iter().map(|v| v as u8).collect()
}

pub(crate) fn enumerate_asm_unchecked(n: usize) -> Vec<AsmMatrix> {
    search(n, n, |c, _| asm_rows(c))
        .into_iter()
        .map(|e| AsmMatrix::new_unchecked(n, n, e, AsmClass::Asm))
        .collect()
}

/// Serpentine row pairs: the upper row left to right, then the lower row
/// right to left, as one alternating walk; columns stay in {0, 1} after
/// each row.
fn uasm_pairs(c: &[u8]) -> Vec<Vec<i8>> {
    let w = c.len();
    let mut out = Vec::new();
    // walk position p in 0..2w: p < w is (upper, p); otherwise (lower, 2w-1-p)
    fn go(c: &[u8], upper: &mut Vec<i8>, lower: &mut Vec<i8>, p: usize, s: i8, out: &mut Vec<Vec<i8>>) {
        let w = c.len();
        if p == 2 * w {
            if s == 1 {
                let mut lo = lower.clone();
                lo.reverse();
                let mut block = upper.clone();
                block.extend(lo);
                out.push(block);
            }
            return;
        }
        for e in [0i8, 1, -1] {
            let sj = s + e;
            if !(0..=1).contains(&sj) {
                continue;
            }
            if p < w {
                let cj = c[p] as i8 + e;
                if !(0..=1).contains(&cj) {
                    continue;
                }
                upper.push(e);
                go(c, upper, lower, p + 1, sj, out);
                upper.pop();
            } else {
                let j = 2 * w - 1 - p;
                let cj = c[j] as i8 + upper[j] + e;
                if !(0..=1).contains(&cj) {
                    continue;
                }
                lower.push(e);
                go(c, upper, lower, p + 1, sj, out);
                lower.pop();
            }
        }
    }
    go(
        c,
        &mut Vec::with_capacity(w),
        &mut Vec::with_capacity(w),
        0,
        0,
        &mut out,
    );
    out
}

pub(crate) fn enumerate_uasm_unchecked(n: usize) -> Vec<AsmMatrix> {
    search(n, n, |c, _| uasm_pairs(c))
        .into_iter()
        .map(|e| AsmMatrix::new_unchecked(2 * n, n, e, AsmClass::Uasm))
        .collect()
}

/// The VSASM attached to a UASM whose U-turns all point down: the UASM is
/// the left half, the centre column alternates +, −, …, + and the bottom row
/// is the fixed row with a single central 1. `None` if some U-turn is up.
pub fn vsasm_from_uasm(u: &AsmMatrix) -> Option<AsmMatrix> {
    if u.uturn_orientations()?.iter().any(|&up| up) {
        return None;
    }
    let n = u.cols();
    let m = 2 * n + 1;
    let mut e = vec![0i8; m * m];
    for i in 0..2 * n {
        for j in 0..n {
            e[i * m + j] = u.get(i, j);
            e[i * m + m - 1 - j] = u.get(i, j);
        }
        e[i * m + n] = if i % 2 == 0 { 1 } else { -1 };
    }
    e[2 * n * m + n] = 1;
    let v = AsmMatrix::new_unchecked(m, m, e, AsmClass::Vsasm);
    debug_assert!(v.validate().is_ok());
    Some(v)
}

/// Inverse of [`vsasm_from_uasm`]: the left (2n)×n block of a VSASM.
pub fn uasm_from_vsasm(v: &AsmMatrix) -> Result<AsmMatrix> {
    if v.class() != AsmClass::Vsasm {
        return Err(Error::InvalidMatrix("expected a VSASM".into()));
    }
    let n = v.cols() / 2;
    let e = (0..2 * n).flat_map(|i| v.row(i)[..n].to_vec()).collect();
    AsmMatrix::new(2 * n, n, e, AsmClass::Uasm)
}

/// VSASMs by direct search over symmetric rows of order 2n+1. Only the left
/// half and the centre column are tracked; the mirrored columns carry the
/// same sums. Independent of the U-turn route and used to cross-check it.
pub fn enumerate_vsasm_direct(n: usize) -> Result<Vec<AsmMatrix>> {
    check_cap(AsmClass::Vsasm, n)?;
    let m = 2 * n + 1;
    let rows = |c: &[u8], _: usize| -> Vec<Vec<i8>> {
        // c has n+1 entries: left half then centre
        let mut out = Vec::new();
        for half in asm_rows_partial(&c[..n]) {
            let left: i8 = half.iter().sum();
            let centre = 1 - 2 * left;
            let cc = c[n] as i8 + centre;
            if !(-1..=1).contains(&centre) || !(0..=1).contains(&cc) {
                continue;
            }
            let mut block = half.clone();
            block.push(centre);
            let full = half
                .iter()
                .copied()
                .chain(std::iter::once(centre))
                .chain(half.iter().rev().copied());
            if is_alternating(full) {
                out.push(block);
            }
        }
        out
    };
    Ok(search(m, n + 1, rows)
        .into_iter()
        .map(|half| {
            let mut e = Vec::with_capacity(m * m);
            for row in half.chunks(n + 1) {
                e.extend_from_slice(row);
                e.extend(row[..n].iter().rev());
            }
            AsmMatrix::new_unchecked(m, m, e, AsmClass::Vsasm)
        })
        .collect())
}

/// Prefixes whose running sums stay in {0, 1} and whose columns stay in
/// {0, 1}; unlike [`asm_rows`] the final sum is free.
fn asm_rows_partial(c: &[u8]) -> Vec<Vec<i8>> {
    fn go(c: &[u8], j: usize, s: i8, row: &mut Vec<i8>, out: &mut Vec<Vec<i8>>) {
        if j == c.len() {
            out.push(row.clone());
            return;
        }
        for e in [0i8, 1, -1] {
            let cj = c[j] as i8 + e;
            let sj = s + e;
            if (0..=1).contains(&cj) && (0..=1).contains(&sj) {
                row.push(e);
                go(c, j + 1, sj, row, out);
                row.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(c, 0, 0, &mut Vec::new(), &mut out);
    out
}

/// OSASMs of order 2n. Row i of a symmetric matrix is column i read from
/// the top, so the search only picks the strictly lower part of each row.
/// That part continues the walks of columns `0..i` and its running sum opens
/// the walk of column `i` (the zero diagonal does not move it).
pub(crate) fn enumerate_osasm_unchecked(n: usize) -> Vec<AsmMatrix> {
    let m = 2 * n;
    fn go(m: usize, i: usize, c: &[u8], acc: &mut Vec<Vec<i8>>, out: &mut Vec<Vec<Vec<i8>>>) {
        if i == m {
            if c.iter().all(|&v| v == 1) {
                out.push(acc.clone());
            }
            return;
        }
        for lower in asm_rows_partial(&c[..i]) {
            let mut next = c.to_vec();
            for (j, &e) in lower.iter().enumerate() {
                next[j] = (next[j] as i8 + e) as u8;
            }
            next[i] = lower.iter().sum::<i8>() as u8;
            acc.push(lower);
            go(m, i + 1, &next, acc, out);
            acc.pop();
        }
    }
    // row 0 has an empty lower part; split the work over row 1
    let c0 = vec![0u8; m];
    let triangles: Vec<Vec<Vec<i8>>> = asm_rows_partial(&c0[..1])
        .into_par_iter()
        .map(|first| {
            let mut next = c0.clone();
            next[0] = first[0] as u8;
            next[1] = first[0] as u8;
            let mut acc = vec![Vec::new(), first];
            let mut out = Vec::new();
            go(m, 2, &next, &mut acc, &mut out);
            out
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    triangles
        .into_iter()
        .map(|tri| {
            let mut e = vec![0i8; m * m];
            for (i, lower) in tri.iter().enumerate() {
                for (j, &v) in lower.iter().enumerate() {
                    e[i * m + j] = v;
                    e[j * m + i] = v;
                }
            }
            AsmMatrix::new_unchecked(m, m, e, AsmClass::Osasm)
        })
        .collect()
}
