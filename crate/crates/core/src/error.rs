use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("odd number of tokens ({tokens}); label `{label}` has no partner")]
    OddTokenCount { label: String, tokens: usize },
    #[error("label `{label}` occurs {count} times, expected exactly 2")]
    LabelCount { label: String, count: usize },
    #[error("chord joins position {position} to itself")]
    DegenerateChord { position: usize },
    #[error("position {position} out of range for {size} points")]
    PositionOutOfRange { position: usize, size: usize },
    #[error("position {position} used by more than one chord")]
    DuplicatePosition { position: usize },
    #[error("expected {expected} labels, got {found}")]
    LabelCountMismatch { expected: usize, found: usize },
    #[error("invalid label `{label}`")]
    InvalidLabel { label: String },
    #[error("duplicate label `{label}`")]
    DuplicateLabel { label: String },
    #[error("chord index {chord} out of range for {n} chords")]
    ChordOutOfRange { chord: usize, n: usize },
    #[error("chord {chord} compared with itself")]
    SameChord { chord: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PairingError {
    #[error("chord index {chord} out of range for {n} chords")]
    ChordOutOfRange { chord: usize, n: usize },
    #[error("chord {chord} paired with itself")]
    SelfPair { chord: usize },
    #[error("chord {chord} appears in more than one block")]
    Duplicate { chord: usize },
    #[error("chord {chord} is not assigned to any block")]
    Missing { chord: usize },
}

/// Failures when reading a certificate from JSON.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CertificateParseError {
    #[error("certificate must be a JSON list of blocks")]
    NotAList,
    #[error("block {index} is malformed: {reason}")]
    MalformedBlock { index: usize, reason: String },
    #[error("unknown chord label `{label}`")]
    UnknownLabel { label: String },
    #[error("block {index}: invalid correspondence `{value}`")]
    BadCorrespondence { index: usize, value: String },
    #[error("not a partition of the chords: {0}")]
    Partition(#[from] PairingError),
}

impl CertificateParseError {
    /// True for structural violations of a well-formed certificate, as opposed
    /// to unreadable input.
    pub fn is_violation(&self) -> bool {
        matches!(self, Self::BadCorrespondence { .. } | Self::Partition(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecideError {
    #[error("search budget of {budget} nodes exhausted")]
    BudgetExhausted { budget: u64 },
    #[error("{n} chords exceeds the exhaustive oracle bound of {max}")]
    OracleBoundExceeded { n: usize, max: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("gap {gap} out of range for {size} points")]
    InvalidGap { gap: usize, size: usize },
    #[error("chord index {chord} out of range for {n} chords")]
    ChordOutOfRange { chord: usize, n: usize },
    #[error("position {position} out of range for {size} points")]
    PositionOutOfRange { position: usize, size: usize },
    #[error("chord {chord} does not have adjacent endpoints")]
    NotR1Removable { chord: usize },
    #[error("chords {a} and {b} do not form a second-move pattern")]
    NotR2Removable { a: usize, b: usize },
    #[error("site {starts:?} is not a third-move triangle")]
    NotR3Site { starts: [usize; 3] },
    #[error("replay ended at `{found}`, script records `{expected}`")]
    ReplayMismatch { expected: String, found: String },
    #[error("bad script: {0}")]
    Script(String),
}
