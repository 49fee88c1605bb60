use thiserror::Error;

/// A single constraint broken by a user-to-arm assignment.
///
/// Users and arms are numbered from 1 in the rendered message, matching the
/// convention used by every report this crate emits.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AssignmentViolation {
    #[error("assignment has {got} entries, expected one per user ({expected})")]
    WrongLength { expected: usize, got: usize },
    #[error("user {} assigned arm {}, outside 1..={num_arms}", user + 1, arm + 1)]
    OutOfRange {
        user: usize,
        arm: usize,
        num_arms: usize,
    },
    #[error("duplicate arm {}", arm + 1)]
    DuplicateArm { arm: usize },
}

/// Errors produced by instance construction, policy stepping, simulation and
/// file ingestion.
#[derive(Debug, Error)]
pub enum Error {
    #[error("bernoulli mean {0} outside [0, 1]")]
    BernoulliMeanOutOfRange(f64),
    #[error("gaussian std {0} must be finite and >= 0")]
    InvalidGaussianStd(f64),
    #[error("distribution mean {0} must be finite")]
    NonFiniteMean(f64),
    #[error("empirical distribution needs at least one sample")]
    EmptySamples,
    #[error("empirical sample {0} must be finite")]
    NonFiniteSample(f64),
    #[error("instance needs at least one arm")]
    NoArms,

    #[error("user count {users} outside 1..={arms}")]
    UserCountOutOfRange { users: usize, arms: usize },
    #[error("arm set has {got} distinct arms, expected {expected}")]
    WrongSetSize { expected: usize, got: usize },
    #[error("arm index {} outside 1..={num_arms}", arm + 1)]
    ArmIndexOutOfRange { arm: usize, num_arms: usize },
    #[error("invalid assignment: {0}")]
    Assignment(#[from] AssignmentViolation),
    #[error("got {got} rewards for {expected} users")]
    RewardLengthMismatch { expected: usize, got: usize },
    #[error("block already has {observed} observed steps")]
    BlockComplete { observed: usize },
    #[error("cannot finalize block: {observed} of {required} steps observed")]
    FinalizeMidBlock { observed: usize, required: usize },

    #[error("horizon not divisible by users ({horizon} steps, {users} users)")]
    HorizonNotDivisible { horizon: u64, users: usize },
    #[error("horizon must be at least one block ({users} steps)")]
    HorizonTooShort { users: usize },
    #[error("need at least one run")]
    NoRuns,

    #[error("log-log fit needs at least two points")]
    TooFewPoints,
    #[error("log-log fit needs strictly positive coordinates, got ({x}, {y})")]
    NonPositivePoint { x: f64, y: f64 },
    #[error("log-log fit needs at least two distinct x values")]
    DegenerateAbscissa,

    #[error("block index {0} must be >= 1")]
    ZeroBlockIndex(u64),
    #[error("horizon {horizon} must be at least {min}")]
    HorizonBelowMinimum { horizon: u64, min: u64 },
    #[error("dependent bound needs delta_min > 0, got {0}")]
    DeltaMinNotPositive(f64),
    #[error("dependent bound needs delta_max >= 0, got {0}")]
    DeltaMaxNegative(f64),
    #[error("dependent bound needs fewer users than arms (got {users} users, {arms} arms)")]
    NoSuboptimalArms { users: usize, arms: usize },
    #[error("lower-bound construction requires K >= 2U (got {arms} arms, {users} users)")]
    TooFewArmsForLowerBound { arms: usize, users: usize },
    #[error(
        "hard instance mean {delta} falls outside [0, 1]; raise the horizon to at least {min_horizon}"
    )]
    HardInstanceMeanOutOfRange { delta: f64, min_horizon: u64 },
    #[error("play counts cover {got} arms, instance has {expected}")]
    PlayCountLengthMismatch { expected: usize, got: usize },

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Csv {
        path: String,
        #[source]
        source: csv::Error,
    },
    #[error("{path}: missing column `{column}`")]
    MissingColumn { path: String, column: String },
    #[error("{path}: row {row}: cannot parse `{value}` as a number")]
    MalformedValue {
        path: String,
        row: usize,
        value: String,
    },
    #[error("{path}: insufficient distinct ids ({found} found, {requested} requested)")]
    InsufficientIds {
        path: String,
        found: usize,
        requested: usize,
    },
    #[error("{path}: row {row}: {message}")]
    MalformedRow {
        path: String,
        row: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
