//! Exact enumeration of alternating-sign matrices and their symmetry classes,
//! square-ice partition functions and the determinant and Pfaffian formulas
//! that evaluate them.

pub mod algebra;
pub mod asm;
pub mod error;
pub mod formulas;
pub mod ice;
pub mod linalg;
pub mod refined;
pub mod sampling;
pub mod special;
pub mod verify;

pub use error::{Error, Result};
