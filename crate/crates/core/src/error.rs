use crate::Rational;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("a space needs at least one atom")]
    EmptySpace,
    #[error("atom {index} has non-positive weight {weight}")]
    NonPositiveWeight { index: usize, weight: Rational },
    #[error("weights sum to {sum}, expected 1")]
    WeightSum { sum: Rational },
    #[error("atom {atom} out of range for a space with {atom_count} atoms")]
    AtomOutOfRange { atom: usize, atom_count: usize },
    #[error("operands live on different spaces")]
    SpaceMismatch,
    #[error("atom {atom} appears in more than one block")]
    BlockOverlap { atom: usize },
    #[error("atom {atom} is not covered by any block")]
    BlockGap { atom: usize },
    #[error("partition contains an empty block")]
    EmptyBlock,
    #[error("empty family has no meet or join without a space")]
    EmptyFamily,
    #[error("enumeration of {atoms} atoms exceeds the cap of {cap}")]
    EnumerationCap { atoms: usize, cap: usize },
    #[error("vector has length {got}, space has {expected} atoms")]
    LengthMismatch { expected: usize, got: usize },
    #[error("projections do not commute")]
    NotCommuting,
    #[error("σ-fields are not independent")]
    NotIndependent,
    #[error("subspace dimension mismatch: expected ambient dimension {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("probe vector has zero norm")]
    ZeroProbe,
    #[error("no probe vectors supplied")]
    NoProbes,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("{found} distinct complements for {element}; complements must be unique")]
    ComplementNotUnique { element: String, found: usize },
    #[error("ambient set is not closed: {0} is missing")]
    AmbientNotClosed(String),
    #[error("completion is not a noise-type Boolean algebra: {0}")]
    CompletionInvalid(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, message: message.into() }
    }
}
