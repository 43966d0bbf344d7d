use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("polygonal rank must be at least 3, got {0}")]
    PolygonalRankTooSmall(u64),
    #[error("arithmetic overflow computing the {x}-th {k}-gonal number")]
    PolygonalOverflow { k: u64, x: u64 },
    #[error("explicit basis elements must be strictly increasing (offending element {0})")]
    ExplicitNotIncreasing(u64),
    #[error("cannot parse basis spec at `{token}`: {reason}")]
    SpecParse { token: String, reason: String },
    #[error("bound {bound} exceeds the supported maximum {max}")]
    BoundTooLarge { bound: u64, max: u64 },
    #[error("member {member} exceeds bitmap bound {bound}")]
    MemberOutOfBounds { member: u64, bound: u64 },
    #[error("operand bounds differ: {left} vs {right}")]
    BoundMismatch { left: u64, right: u64 },
    #[error("fold count must be at least 1")]
    ZeroFold,
    #[error("h_max must be at least 1")]
    ZeroFoldLimit,
    #[error("range [{lo}, {hi}] is not contained in [0, {bound}]")]
    RangeOutOfBounds { lo: u64, hi: u64, bound: u64 },
    #[error("query point {n} exceeds bitmap bound {bound}")]
    QueryOutOfBounds { n: u64, bound: u64 },
    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(u64),
    #[error("modulus {modulus} exceeds the supported maximum {max}")]
    ModulusTooLarge { modulus: u64, max: u64 },
    #[error("residues of the {k}-gonal sequence failed the period-{period} check mod {modulus}")]
    PeriodicityCheckFailed { k: u64, modulus: u64, period: u64 },
    #[error("grid point {n} outside [1, {bound}]")]
    GridPointOutOfRange { n: u64, bound: u64 },
    #[error("basis has no elements in [0, {bound}]")]
    EmptyBasis { bound: u64 },
    #[error("augmentation cutoff must be at least 2, got {0}")]
    CutoffTooSmall(u64),
    #[error("bound {bound} too small for cutoff {cutoff}; need at least {min}")]
    BoundTooSmallForCutoff { bound: u64, cutoff: u64, min: u64 },
    #[error("rank must be at least 3, got {0}")]
    RankTooSmall(u64),
    #[error("bound {bound} does not exceed the cutoff {cutoff}; nothing to verify")]
    BoundBelowCutoff { bound: u64, cutoff: u64 },
    #[error("bitmap file has bad magic {0:02x?}")]
    BadMagic([u8; 4]),
    #[error("bitmap file has set bits above its bound")]
    TrailingBitsSet,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
