use thiserror::Error;

use crate::partition::Cell;

/// Errors shared across the crate. Each variant corresponds to a violated
/// contract of exactly one public operation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parts must be weakly decreasing: {0:?}")]
    NotWeaklyDecreasing(Vec<u32>),
    #[error("parts must be positive")]
    NonPositivePart,
    #[error("cell ({},{}) lies outside the diagram", .0.x, .0.y)]
    CellOutsideDiagram(Cell),
    #[error("word has charge {0}, expected 0")]
    NonzeroCharge(i64),
    #[error("cell has hook length {found}, expected {expected}")]
    HookNotEqualC { found: u32, expected: u32 },
    #[error("partition has a hook divisible by {0}, so it is not a {0}-core")]
    NotACore(u32),
    #[error("second component has a part repeated {0} or more times")]
    NuNotInKc(u32),
    #[error("window bound {k} does not dominate the diagram or is not a multiple of r*s*c")]
    WindowTooSmall { k: i64 },
    #[error("window bound {k} is not of the form r*s*k1 with c | k1")]
    WindowNotCanonical { k: i64 },
    #[error("multigraphs built at different slope parameters")]
    SlopeMismatch,
    #[error("multigraph has no south arrival; cannot take a successor")]
    NoSouthArrival,
    #[error("first arrivals do not form a spanning tree")]
    NotSpanning,
    #[error("arrival words are not realizable as a partition boundary")]
    NotRealizable,
    #[error("vertex ({0}, [{1}]) is not in the tree")]
    VertexAbsent(i64, u32),
    #[error("statistic sign is undefined at this slope")]
    DomainMismatch,
    #[error("factor must have positive q-exponent to converge as a formal series")]
    ZeroQExponent,
}

pub type Result<T> = std::result::Result<T, Error>;
