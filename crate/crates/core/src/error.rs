use std::fmt;

use serde::{Deserialize, Serialize};

use crate::rational::Rational;

/// Everything that can go wrong in this crate.
///
/// `Inconsistency` is reserved for inputs that satisfy every checked
/// precondition yet contradict the classification theorems. It should never
/// fire on valid data, and harnesses assert exactly that.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("refused: {0}")]
    Refused(Refusal),
    #[error("inconsistency: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn inconsistency<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Inconsistency(msg.into()))
}

/// A named violated condition. Used both by extension-space preconditions and
/// by negative existence verdicts. Block indices are 0-based in spec order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "condition", rename_all = "kebab-case")]
pub enum Refusal {
    /// Block `block` (sorted by size) must have size at most `n - 2*block`.
    BlockSizeBound { block: usize, size: usize, bound: usize },
    /// The number of blocks may not exceed `min(k, n + 1 - k)`.
    TooManyBlocks { blocks: usize, bound: usize },
    /// Split index must satisfy `1 < k < n`.
    SplitIndex { k: usize, n: usize },
    /// All blocks must share a single eigenvalue.
    MixedEigenvalues,
    ZeroEigenvalue,
    /// Two-eigenvalue shape needs exactly two blocks.
    BlockCount { blocks: usize },
    /// The small block of the two-eigenvalue shape must be one-dimensional.
    SecondBlockSize { size: usize },
    /// The small block must carry twice the eigenvalue of the large one.
    SecondEigenvalue { expected: Rational, found: Rational },
    /// The large block of the two-eigenvalue shape must have odd size.
    EvenSize { n: usize },
    /// An auxiliary matrix has the wrong shape.
    ParameterShape { expected: (usize, usize), found: (usize, usize) },
}

impl fmt::Display for Refusal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Refusal::BlockSizeBound { block, size, bound } => {
                write!(f, "block {block} has size {size} > {bound} = n - 2*{block}")
            }
            Refusal::TooManyBlocks { blocks, bound } => {
                write!(f, "{blocks} blocks exceed min(k, n+1-k) = {bound}")
            }
            Refusal::SplitIndex { k, n } => write!(f, "split index k={k} violates 1 < k < n={n}"),
            Refusal::MixedEigenvalues => write!(f, "blocks do not share a single eigenvalue"),
            Refusal::ZeroEigenvalue => write!(f, "eigenvalue must be nonzero"),
            Refusal::BlockCount { blocks } => {
                write!(f, "two-eigenvalue shape needs exactly 2 blocks, found {blocks}")
            }
            Refusal::SecondBlockSize { size } => {
                write!(f, "second block must have size 1, found {size}")
            }
            Refusal::SecondEigenvalue { expected, found } => {
                write!(f, "second block eigenvalue must be {expected}, found {found}")
            }
            Refusal::EvenSize { n } => write!(f, "top block size n={n} must be odd"),
            Refusal::ParameterShape { expected, found } => write!(
                f,
                "matrix must be {}x{}, found {}x{}",
                expected.0, expected.1, found.0, found.1
            ),
        }
    }
}
