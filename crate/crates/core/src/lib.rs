//! Exact computation of reduced Chern classes, the universal polynomials
//! relating them to the Chern classes of `S^n E ⊗ det(E)^{-1}`, and brute
//! force verification of the identities between them.

pub mod chern_calc;
pub mod cli;
pub mod error;
pub mod exact_poly;
pub mod oracle;
pub mod symfun;
pub mod universal;

pub use error::{Error, Result};
