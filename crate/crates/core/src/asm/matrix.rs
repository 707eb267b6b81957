use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AsmClass {
    Asm,
    Vsasm,
    Osasm,
    Uasm,
}

impl AsmClass {
    pub fn name(&self) -> &'static str {
        match self {
            AsmClass::Asm => "asm",
            AsmClass::Vsasm => "vsasm",
            AsmClass::Osasm => "osasm",
            AsmClass::Uasm => "uasm",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "asm" => Some(AsmClass::Asm),
            "vsasm" => Some(AsmClass::Vsasm),
            "osasm" => Some(AsmClass::Osasm),
            "uasm" => Some(AsmClass::Uasm),
            _ => None,
        }
    }

    /// Matrix shape for the class at index `n`: ASM n×n, VSASM (2n+1)×(2n+1),
    /// OSASM 2n×2n, UASM 2n×n.
    pub fn shape(&self, n: usize) -> (usize, usize) {
        match self {
            AsmClass::Asm => (n, n),
            AsmClass::Vsasm => (2 * n + 1, 2 * n + 1),
            AsmClass::Osasm => (2 * n, 2 * n),
            AsmClass::Uasm => (2 * n, n),
        }
    }
}

/// Matrix over {−1, 0, +1} tagged with its symmetry class.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AsmMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<i8>,
    class: AsmClass,
}

/// Refined statistics of one class member. Rows are 1-based from the top.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RefinedStats {
    /// Row of the unique 1 in the first column.
    pub r: usize,
    /// Row of the 1 in the last column, when that column has a single nonzero.
    pub r_last: Option<usize>,
    /// Number of −1 entries.
    pub k: usize,
    /// Number of upward U-turns (UASM only).
    pub l: Option<usize>,
}

impl AsmMatrix {
    /// Build and validate.
    pub fn new(rows: usize, cols: usize, entries: Vec<i8>, class: AsmClass) -> Result<Self> {
        let m = Self::new_unchecked(rows, cols, entries, class);
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(rows: usize, cols: usize, entries: Vec<i8>, class: AsmClass) -> Self {
        debug_assert_eq!(entries.len(), rows * cols);
        Self {
            rows,
            cols,
            entries,
            class,
        }
    }

    pub fn from_rows(rows: &[&[i8]], class: AsmClass) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidMatrix("ragged rows".into()));
        }
        Self::new(
            r,
            c,
            rows.iter().flat_map(|row| row.iter().copied()).collect(),
            class,
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn class(&self) -> AsmClass {
        self.class
    }

    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[i8] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[i8] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<i8> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn with_class(mut self, class: AsmClass) -> Result<Self> {
        self.class = class;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidMatrix(msg));
        if self.entries.iter().any(|&e| !(-1..=1).contains(&e)) {
            return bad("entries must lie in {-1, 0, 1}".into());
        }
        for j in 0..self.cols {
            if !is_alternating(self.column(j).iter().copied()) {
                return bad(format!("column {} does not alternate", j + 1));
            }
        }
        match self.class {
            AsmClass::Uasm => {
                if self.rows != 2 * self.cols {
                    return bad("UASM must be 2n×n".into());
                }
                for pair in 0..self.cols {
                    let walk = self
                        .row(2 * pair)
                        .iter()
                        .chain(self.row(2 * pair + 1).iter().rev())
                        .copied();
                    if !is_alternating(walk) {
                        return bad(format!("row pair {} does not alternate", pair + 1));
                    }
                }
            }
            _ => {
                if self.rows != self.cols {
                    return bad("matrix must be square".into());
                }
                for i in 0..self.rows {
                    if !is_alternating(self.row(i).iter().copied()) {
                        return bad(format!("row {} does not alternate", i + 1));
                    }
                }
            }
        }
        let n = self.rows;
        match self.class {
            AsmClass::Vsasm => {
                if n.is_multiple_of(2) {
                    return bad("VSASM must have odd order".into());
                }
                if (0..n).any(|i| (0..n).any(|j| self.get(i, j) != self.get(i, n - 1 - j))) {
                    return bad("not vertically symmetric".into());
                }
            }
            AsmClass::Osasm => {
                if (0..n).any(|i| self.get(i, i) != 0) {
                    return bad("diagonal must be null".into());
                }
                if (0..n).any(|i| (0..i).any(|j| self.get(i, j) != self.get(j, i))) {
                    return bad("not symmetric".into());
                }
            }
            _ => {}
        }
        Ok(())
    }

    /// Refined statistics. Fails if the first column does not hold exactly
    /// one nonzero entry equal to +1.
    pub fn stats(&self) -> Result<RefinedStats> {
        let first = self.column(0);
        let nonzero: Vec<usize> = (0..self.rows).filter(|&i| first[i] != 0).collect();
        if nonzero.len() != 1 || first[nonzero[0]] != 1 {
            return Err(Error::InvalidMatrix(
                "first column must contain a single +1 and nothing else".into(),
            ));
        }
        let last = self.column(self.cols - 1);
        let last_nz: Vec<usize> = (0..self.rows).filter(|&i| last[i] != 0).collect();
        let r_last = match last_nz.as_slice() {
            [i] if last[*i] == 1 => Some(i + 1),
            _ => None,
        };
        let k = self.entries.iter().filter(|&&e| e == -1).count();
        let l = (self.class == AsmClass::Uasm).then(|| {
            (0..self.cols)
                .filter(|&p| self.row(2 * p).iter().map(|&e| e as i32).sum::<i32>() == 1)
                .count()
        });
        Ok(RefinedStats {
            r: nonzero[0] + 1,
            r_last,
            k,
            l,
        })
    }

    /// Orientations of the U-turns (`true` = upward), one per row pair.
    /// An upper row summing to 1 sends its right edge into the grid, so the
    /// flow through the U-turn runs upward.
    pub fn uturn_orientations(&self) -> Option<Vec<bool>> {
        (self.class == AsmClass::Uasm).then(|| {
            (0..self.cols)
                .map(|p| self.row(2 * p).iter().map(|&e| e as i32).sum::<i32>() == 1)
                .collect()
        })
    }

    /// One line of signed digits, rows concatenated: `+`, `-` or `0`.
    pub fn to_signed_digits(&self) -> String {
        self.entries
            .iter()
            .map(|&e| match e {
                1 => '+',
                -1 => '-',
                _ => '0',
            })
            .collect()
    }
}

/// Partial sums stay in {0, 1} and end at 1: nonzero entries alternate,
/// starting and ending with +1.
pub(crate) fn is_alternating(seq: impl Iterator<Item = i8>) -> bool {
    let mut s = 0i32;
    for e in seq {
        s += e as i32;
        if !(0..=1).contains(&s) {
            return false;
        }
    }
    s == 1
}

impl fmt::Debug for AsmMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.class.name())?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "/")?;
            }
            for &e in self.row(i) {
                write!(
                    f,
                    "{}",
                    match e {
                        1 => '+',
                        -1 => '-',
                        _ => '0',
                    }
                )?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_and_stats() {
        let m = AsmMatrix::from_rows(
            &[&[0, 1, 0, 0], &[1, -1, 1, 0], &[0, 0, 0, 1], &[0, 1, 0, 0]],
            AsmClass::Asm,
        )
        .unwrap();
        let s = m.stats().unwrap();
        assert_eq!((s.r, s.k, s.r_last, s.l), (2, 1, Some(3), None));
        assert!(AsmMatrix::from_rows(&[&[1, 1], &[0, 0]], AsmClass::Asm).is_err());
        assert!(AsmMatrix::from_rows(&[&[0, 1], &[1, 0]], AsmClass::Osasm).is_ok());
        assert!(AsmMatrix::from_rows(&[&[1, 0], &[0, 1]], AsmClass::Osasm).is_err());
    }

    #[test]
    fn uasm_serpentine_rows() {
        // the example UASM with three row pairs
        let m = AsmMatrix::from_rows(
            &[
                &[0, 0, 1],
                &[0, 1, -1],
                &[1, -1, 0],
                &[0, 0, 1],
                &[0, 1, 0],
                &[0, 0, 0],
            ],
            AsmClass::Uasm,
        )
        .unwrap();
        let s = m.stats().unwrap();
        assert_eq!(s.r, 3);
        assert_eq!(s.k, 2);
        assert_eq!(m.uturn_orientations().unwrap(), vec![true, false, true]);
        assert_eq!(s.l, Some(2));
    }

    #[test]
    fn vsasm_order_five_middle_has_four_minus_ones() {
        let m = AsmMatrix::from_rows(
            &[
                &[0, 0, 1, 0, 0],
                &[0, 1, -1, 1, 0],
                &[1, -1, 1, -1, 1],
                &[0, 1, -1, 1, 0],
                &[0, 0, 1, 0, 0],
            ],
            AsmClass::Vsasm,
        )
        .unwrap();
        assert_eq!(m.stats().unwrap().k, 4);
        assert_eq!(m.stats().unwrap().r_last, Some(3));
    }
}
