use thiserror::Error;

use crate::prime::Prime;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),

    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("generator {generator} does not exist at p = {prime}")]
    GeneratorPrime { generator: String, prime: Prime },

    #[error("prime mismatch: {0} vs {1}")]
    PrimeMismatch(Prime, Prime),

    #[error("element is not homogeneous")]
    NotHomogeneous,

    #[error("total dimension {dim} exceeds the configured bound {bound}")]
    DimensionBound { dim: usize, bound: usize },

    #[error("rank {rank} exceeds the configured bound {bound}")]
    RankBound { rank: usize, bound: usize },

    #[error("operation degree {degree} exceeds the oracle range {max_degree}")]
    OracleRange { degree: i64, max_degree: i64 },

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("invalid stems data: {0}")]
    InvalidStems(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
