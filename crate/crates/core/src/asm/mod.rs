//! Alternating-sign matrices and their VSASM, OSASM and U-turn relatives:
//! validation, statistics, enumeration and refined counts.

mod enumerate;
mod matrix;

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use enumerate::{
    check_cap, enumerate_asm, enumerate_class, enumerate_vsasm_direct, uasm_from_vsasm, vsasm_from_uasm,
    ASM_CAP, OSASM_ORDER_CAP, UASM_ROWS_CAP, VSASM_ORDER_CAP,
};
pub use matrix::{AsmClass, AsmMatrix, RefinedStats};

use crate::algebra::{BigInt, BigRational, Poly, Ring};
use crate::error::{Error, Result};

/// Which boundary column locates the refined statistic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Statistic {
    FirstColumn,
    LastColumn,
}

impl Statistic {
    pub fn name(&self) -> &'static str {
        match self {
            Statistic::FirstColumn => "first-column",
            Statistic::LastColumn => "last-column",
        }
    }
}

/// Multiplicity of every statistics tuple over one class and size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub class: AsmClass,
    pub n: usize,
    pub rows: usize,
    pub counts: BTreeMap<RefinedStats, u64>,
}

impl Census {
    pub fn build(class: AsmClass, n: usize) -> Result<Self> {
        let members = enumerate_class(class, n)?;
        let stats: Vec<RefinedStats> = members.par_iter().map(AsmMatrix::stats).collect::<Result<_>>()?;
        let mut counts = BTreeMap::new();
        for s in stats {
            *counts.entry(s).or_insert(0u64) += 1;
        }
        Ok(Self {
            class,
            n,
            rows: class.shape(n).0,
            counts,
        })
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Counts per row, each a polynomial in the U-turn weight `y`
    /// (constant outside the UASM class).
    pub fn refined(&self, statistic: Statistic) -> Result<RefinedCounts> {
        let mut per_row: Vec<BTreeMap<usize, u64>> = vec![BTreeMap::new(); self.rows];
        for (s, &c) in &self.counts {
            let r = match statistic {
                Statistic::FirstColumn => s.r,
                Statistic::LastColumn => s.r_last.ok_or_else(|| {
                    Error::InvalidMatrix("last column holds more than one nonzero entry".into())
                })?,
            };
            *per_row[r - 1].entry(s.l.unwrap_or(0)).or_insert(0) += c;
        }
        let counts = per_row
            .into_iter()
            .map(|m| {
                let deg = m.keys().next_back().copied().unwrap_or(0);
                let mut coeffs = vec![BigInt::zero(); deg + 1];
                for (l, c) in m {
                    coeffs[l] = BigInt::from(c);
                }
                Poly::new(coeffs)
            })
            .collect();
        Ok(RefinedCounts {
            class: self.class,
            n: self.n,
            statistic,
            counts,
        })
    }
}

/// Process-wide memo of censuses; repeated identity checks share them.
type Memo = Mutex<HashMap<(AsmClass, usize), Arc<Census>>>;

pub fn census(class: AsmClass, n: usize) -> Result<Arc<Census>> {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    let memo = MEMO.get_or_init(Default::default);
    if let Some(c) = memo.lock().expect("census memo").get(&(class, n)) {
        return Ok(c.clone());
    }
    let built = Arc::new(Census::build(class, n)?);
    Ok(memo
        .lock()
        .expect("census memo")
        .entry((class, n))
        .or_insert(built)
        .clone())
}

/// Refined enumeration of one class: `counts[r-1]` is the total weight of the
/// members whose statistic sits in row `r`, as a polynomial in `y`.
#[derive(Clone, Debug, PartialEq)]
pub struct RefinedCounts {
    pub class: AsmClass,
    pub n: usize,
    pub statistic: Statistic,
    pub counts: Vec<Poly<BigInt>>,
}

impl RefinedCounts {
    pub fn total(&self) -> Poly<BigInt> {
        self.counts.iter().cloned().fold(Poly::zero(), |a, b| a + b)
    }

    /// Counts with `y` set to a rational value.
    pub fn at(&self, y: &BigRational) -> Vec<BigRational> {
        self.counts
            .iter()
            .map(|p| p.map(|c| BigRational::from(c.clone())).eval(y))
            .collect()
    }

    /// Counts as integers; fails if some entry still depends on `y`.
    pub fn constants(&self) -> Result<Vec<BigInt>> {
        self.counts
            .iter()
            .map(|p| match p.degree() {
                None | Some(0) => Ok(p.coeff(0)),
                Some(_) => Err(Error::Contract("counts depend on y".into())),
            })
            .collect()
    }
}

pub fn refined_counts(class: AsmClass, n: usize, statistic: Statistic) -> Result<RefinedCounts> {
    census(class, n)?.refined(statistic)
}
