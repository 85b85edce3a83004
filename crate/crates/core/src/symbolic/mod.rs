//! Symbolic metric models `(Ω_N, ρ_r)` and `(Ω_N, ρ_(r_1…r_N))`.

mod dimension;
mod point;
mod scale;
mod space;

use thiserror::Error;

pub use dimension::{
    dimension_moran, dimension_uniform, moran_root, moran_root_in_base, neg_log, Dimension,
    LogQuotient, MORAN_BRACKET, MORAN_MAX_ITER, MORAN_TOLERANCE,
};
pub use point::{common_prefix_length, SymbolicPoint};
pub use scale::{Base, ScaleFactor};
pub use space::{Distance, SymbolicSpace, Weights};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpaceError {
    #[error("ratio {0} is not in (0, 1)")]
    RatioOutOfRange(String),
    #[error("exponent {0} is not positive")]
    NonPositiveExponent(String),
    #[error("alphabet size {0} is below 2")]
    AlphabetTooSmall(u32),
    #[error("weight vector mixes symbolic bases with other values")]
    MixedBases,
    #[error("period must be nonempty")]
    EmptyPeriod,
    #[error("symbol {symbol} out of range for alphabet of size {alphabet}")]
    SymbolOutOfRange { symbol: u32, alphabet: u32 },
    #[error("enumerating {alphabet}^{depth} points exceeds the limit of {limit}")]
    EnumerationLimit { alphabet: u32, depth: u32, limit: u64 },
    #[error("space does not have uniform weights")]
    NotUniform,
    #[error("{0} has no numeric value (opaque symbolic base)")]
    NotNumeric(String),
    #[error("need at least two ratios, got {0}")]
    TooFewRatios(usize),
    #[error("Moran root lies outside the bisection bracket")]
    MoranBracket,
}
