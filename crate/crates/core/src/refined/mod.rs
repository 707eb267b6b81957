//! Refined enumeration: closed-form counts and the identity battery.

mod formulas;
mod identities;

pub use formulas::{
    asm_ratio, asm_refined, asm_refined_ratio, asm_total, au_first, au_refined, av_refined, av_total,
    vsasm_ratio,
};
pub use identities::{check_identity, IdentityId, IdentityReport, Verdict};
