use thiserror::Error;

use crate::stabilizer::Group;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("element is not a unit")]
    NonUnit,

    #[error("insufficient precision: need {needed} S-digits, have {available}")]
    InsufficientPrecision { needed: u32, available: u32 },

    #[error("element has no graded leading term (it is zero modulo the working precision)")]
    NoLeadingTerm,

    #[error("element is not in {0:?}")]
    NotInSubgroup(Group),

    #[error("level {level} is too small for {group:?} (minimum {minimum})")]
    LevelTooSmall { group: Group, level: u32, minimum: u32 },

    #[error("group of size {size} exceeds the configured cap {cap}")]
    SizeCapExceeded { size: u64, cap: u64 },

    #[error("group-ring descriptors disagree: {0}")]
    DescriptorMismatch(String),

    #[error("the module map is not well defined: {0}")]
    WellDefinedness(String),

    #[error("no solution at level {level}")]
    NoSolution { level: u32 },

    #[error("formal group law coefficient is not 2-integral: {0}")]
    Integrality(String),

    #[error("unknown identifier {name:?} at byte {pos}")]
    UnknownIdentifier { pos: usize, name: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("cache file rejected: {0}")]
    Cache(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
