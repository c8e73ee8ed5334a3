use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("coordinate {value} does not fit universe {universe}")]
    OutOfUniverse { value: u64, universe: u64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    #[error("transform length {len} exceeds cap {cap}")]
    CapExceeded { len: u64, cap: u64 },

    #[error("input is not monotone: coordinate {coordinate} decreases at point index {index}")]
    NotMonotone { coordinate: usize, index: usize },

    #[error("input is not connected: points {index} and {next} are not unit steps apart")]
    NotConnected { index: usize, next: usize },

    #[error("sequence violates its bound: {0}")]
    SequenceBound(String),

    #[error("superset contract violated: sum {0} is not in the given superset")]
    SupersetViolation(u64),

    #[error("graph lemma precondition failed: |G| = {edges} < alpha*|A|*|B| = {required}")]
    GraphTooSparse { edges: u64, required: f64 },

    #[error("no pivot vertex passed the bad-pair test")]
    NoPivot,

    #[error("randomized construction exceeded its attempt cap ({attempts} attempts)")]
    AttemptCapExceeded { attempts: usize },

    #[error("prime pool too small for deterministic hash family (round {round}, level {level})")]
    PoolTooSmall { round: usize, level: usize },

    #[error("sumset bound violated: |A'+B'| = {actual} > {bound}")]
    SumsetBoundViolated { actual: usize, bound: f64 },

    #[error("cluster descriptor audit failed: {0}")]
    ClusterAudit(String),

    #[error("subset violation: {value} is not in the preprocessed universe {which}")]
    SubsetViolation { value: u64, which: &'static str },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid symbol {symbol:?} for alphabet of size {alphabet}")]
    InvalidSymbol { symbol: char, alphabet: usize },

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
