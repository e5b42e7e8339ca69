//! Exact sl2 restricted Kostka polynomials, affine and Virasoro characters,
//! and cross-route verification.

pub mod abf;
pub mod affine_weyl;
pub mod audit;
pub mod charge_oracle;
pub mod cli;
pub mod coinvariant;
pub mod compositions;
pub mod error;
pub mod kostka;
pub mod qexact;
pub mod suites;
pub mod verlinde;
pub mod virasoro;

pub use error::{Error, Result};
