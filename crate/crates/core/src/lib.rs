//! Exact enumeration of lattice paths inside an `m x n` table with steps
//! `u = (1,1)`, `r = (1,0)` and `d = (1,-1)`.
//!
//! * [`dp`] computes every count family by column-by-column recurrence.
//! * [`closed`] evaluates the closed-form identities from binomial arithmetic.
//! * [`oracle`] enumerates lattice words by brute force.
//! * [`verifier`] sweeps parameter grids comparing the three.
//! * [`format`] renders and parses count tables as CSV, JSON and Markdown.

pub mod closed;
pub mod dp;
pub mod error;
pub mod format;
pub mod lattice;
pub mod oracle;
pub mod verifier;

pub use error::{Error, Result};
pub use lattice::{BigCount, Cell, CountMatrix, Family, LatticeWord, Step, TableDims};
