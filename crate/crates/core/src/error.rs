use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("history space must contain at least one label")]
    EmptySpace,
    #[error("duplicate history label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown history label `{0}`")]
    UnknownLabel(String),
    #[error("history index {index} out of range for a space of {n} histories")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("operands belong to different history spaces")]
    SpaceMismatch,
    #[error("{what}: size {size} exceeds the configured cap of {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("matrix is {rows}x{cols} but the space has {n} histories")]
    DimensionMismatch { rows: usize, cols: usize, n: usize },
    #[error("amplitudes are not normalized: |sum|^2 = {0}")]
    UnnormalizedAmplitudes(f64),
    #[error("measure of {event} has imaginary residue {residue:e}")]
    ImaginaryResidue { event: String, residue: f64 },
    #[error("invalid measure table: {0}")]
    InvalidMeasureTable(String),
    #[error("three-set sum rule violated by {violation:e}")]
    SumRuleViolation { violation: f64 },
    #[error("total preclusion: the whole history space is null, no co-event exists")]
    TotalPreclusion,
    #[error("hypergraph contains an empty edge, which no set can hit")]
    EmptyEdge,
    #[error("epsilon must be {expected}, got {got}")]
    InvalidEpsilon { expected: &'static str, got: f64 },
    #[error("a co-event dual must be nonempty")]
    EmptyDual,
    #[error("co-event list is empty")]
    NoCoEvents,
    #[error("cells {first} and {second} interfere (|D| = {magnitude:e}); occupation measures would not be additive")]
    InterferingCells {
        first: usize,
        second: usize,
        magnitude: f64,
    },
    #[error("expected {expected} factors, got {got}")]
    FactorCount { expected: usize, got: usize },
    #[error("occupation counts invalid: {0}")]
    InvalidCounts(String),
    #[error("bias must lie strictly between 0 and 1, got {0}")]
    InvalidBias(f64),
    #[error("repetition count must be at least 1")]
    NoRepetitions,
    #[error("arrangement count overflows 128 bits")]
    CountOverflow,
}
