use thiserror::Error;

use crate::partitions::Partition;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed token {token:?}: {reason}")]
    Parse { token: String, reason: &'static str },

    #[error("{0} is not an odd prime")]
    NotOddPrime(usize),

    #[error("residue {i} out of range for p = {p}")]
    ResidueOutOfRange { i: usize, p: usize },

    #[error("({0}) is not weakly decreasing")]
    NotDecreasing(String),

    #[error("{0} is not strict")]
    NotStrict(Partition),

    #[error("{0} is not {1}-strict")]
    NotPStrict(Partition, usize),

    #[error("{0} is not restricted {1}-strict")]
    NotRestricted(Partition, usize),

    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),

    #[error("{0} is not a {1}-bar core")]
    NotBarCore(Partition, usize),

    #[error("no normal {0}-node")]
    NoNormalNode(usize),

    #[error("no conormal {0}-node")]
    NoConormalNode(usize),

    #[error("{0}: adding or removing every {1}-node does not leave a strict partition")]
    InvalidExtremal(Partition, usize),

    #[error("{0} is not contained in {1}")]
    NotContained(Partition, Partition),

    #[error("row {row} of the skew region has length {len}, not a multiple of 3")]
    MalformedRegion { row: usize, len: usize },

    #[error("decomposition matrix line {line}: {msg}")]
    DecompParse { line: usize, msg: String },

    #[error("invalid decomposition matrix: {0}")]
    DecompInvalid(String),

    #[error("{0} is not a column of the decomposition matrix")]
    MissingColumn(Partition),

    #[error("unknown family {0:?}")]
    UnknownFamily(String),

    #[error("family {id} is not defined at l = {l}")]
    FamilyRange { id: String, l: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
