use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("signature is only defined for partitions with all blocks even")]
    NotEven,

    #[error("operation requires a vertical partition (equal upper and lower legs per block)")]
    NotVertical,

    #[error("bound exceeded: {0}")]
    BoundExceeded(String),

    #[error("size guard tripped: {0}")]
    SizeGuard(String),

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("invalid word: {0}")]
    InvalidWord(String),

    #[error("word problem undecided: {0}")]
    Undecided(String),
}

pub type Result<T> = std::result::Result<T, Error>;
