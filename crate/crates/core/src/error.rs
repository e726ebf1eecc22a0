use crate::lattice::LatticePoint;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("layer span {t1}..{t2} must satisfy t1 <= 0 <= t2")]
    InvalidLayerSpan { t1: i32, t2: i32 },

    #[error("layer span {t1}..{t2} has more than 64 non-zero layers")]
    TooManyLayers { t1: i32, t2: i32 },

    #[error("expected {expected} epsilon values, got {got}")]
    EpsilonCount { expected: usize, got: usize },

    #[error("epsilon for layer {k} must be -1 or +1, got {value}")]
    InvalidEpsilon { k: i32, value: i32 },

    #[error("layer {k} lies outside {t1}..{t2}")]
    LayerOutOfRange { k: i32, t1: i32, t2: i32 },

    #[error("points belong to different lattices")]
    LatticeMismatch,

    #[error("{0} is compared with itself")]
    SameBall(LatticePoint),

    #[error("balls {0} and {1} occupy the same grid point")]
    DuplicateBall(usize, usize),

    #[error("ball {index} at {point} lies outside the lattice's layers")]
    BallOutOfRange { index: usize, point: LatticePoint },

    #[error("{0} is already part of the configuration")]
    AlreadyPresent(LatticePoint),

    #[error("prefix length {n} exceeds configuration size {len}")]
    PrefixOutOfRange { n: usize, len: usize },

    #[error("candidate frontier exhausted after {placed} of {wanted} balls")]
    FrontierExhausted { placed: usize, wanted: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("cannot choose {n} balls from a window of {points} points")]
    WindowTooSmall { n: usize, points: usize },

    #[error("table length mismatch: {0}")]
    LengthMismatch(String),

    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    #[error("invalid lattice descriptor {0:?}")]
    Descriptor(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
