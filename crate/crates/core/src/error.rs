use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("representation {0} is not symplectic")]
    NotSymplectic(String),
    #[error("expected a representation of quaternionic dimension {expected}, got {got}")]
    WrongDimension { expected: usize, got: usize },
    #[error("unknown biquotient name `{0}`")]
    UnknownSpec(String),
    #[error("H^4 is not infinite cyclic: dx3 = {alpha} z^2 + {beta} w^2 has gcd != 1")]
    H4NotCyclic { alpha: i64, beta: i64 },
    #[error("H^8 is infinite (det A_f = 0) for {0}")]
    InfiniteH8(String),
    #[error("no Lie algebra embedding for {name}: {reason}")]
    UnsupportedEmbedding { name: String, reason: String },
    #[error("horizontal space has dimension {dim} > 15: the constraint span is degenerate")]
    DegenerateHorizontal { dim: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
