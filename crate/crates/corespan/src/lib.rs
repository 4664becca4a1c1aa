//! Partition combinatorics on the boundary-word model: cores and quotients
//! via runner words, slope-filtered hook statistics, the cylindrical boundary
//! multigraph with its successor order and arrival-word involution, and exact
//! truncated bivariate series for identity checking.
//!
//! Everything is exact: slopes are integer fractions compared by
//! cross-multiplication, series coefficients are arbitrary-precision
//! integers, and all verification is by exhaustive enumeration at small size.

pub mod abacus;
pub mod error;
pub mod involution;
pub mod multigraph;
pub mod partition;
pub mod series;
pub mod statistics;

pub use error::{Error, Result};
pub use partition::{partitions_of, BoundaryWord, Cell, Letter, Partition};
