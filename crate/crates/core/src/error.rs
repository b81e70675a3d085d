use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("alphabet must contain at least one symbol")]
    EmptyAlphabet,
    #[error("duplicate symbol `{0}` in alphabet")]
    DuplicateSymbol(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("letter index {index} out of range for an alphabet of size {size}")]
    LetterOutOfRange { index: usize, size: usize },
    #[error("alphabet mismatch: expected {expected} letters, found {found}")]
    AlphabetMismatch { expected: usize, found: usize },
    #[error("alphabet of size {0} is too large for this operation (limit {1})")]
    AlphabetTooLarge(usize, usize),
    #[error("accepting sets must be nonempty")]
    EmptyAcceptingSet,
    #[error("duplicate accepting set {0}")]
    DuplicateAcceptingSet(String),
    #[error("Rabin pair {0} has overlapping green and red sets")]
    OverlappingRabinPair(usize),
    #[error("colour {0} has no priority")]
    MissingPriority(usize),
    #[error("the empty set is not a legal infinity set")]
    EmptyInfinitySet,
    #[error("the period of a lasso word must be nonempty")]
    EmptyPeriod,
    #[error("node {0} is not a child of node {1}")]
    NotAChild(usize, usize),
    #[error("node {0} is not an ancestor of leaf {1}")]
    NotAnAncestor(usize, usize),
    #[error("node {0} is not a leaf")]
    NotALeaf(usize),
    #[error("unknown node id {0}")]
    UnknownNode(usize),
    #[error("state {0} out of range")]
    StateOutOfRange(usize),
    #[error("automaton must have at least one initial state")]
    NoInitialState,
    #[error("automaton is not deterministic and complete")]
    NotDeterministic,
    #[error("unsupported acceptance condition: {0}")]
    UnsupportedAcceptance(&'static str),
    #[error("budget of {0} exceeded")]
    BudgetExceeded(u64),
    #[error("the two automata were built from different Zielonka trees")]
    MismatchedTrees,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("game invariant violated: {0}")]
    InvalidGame(String),
    #[error("the existential player does not win this game")]
    NotWonByExist,
    #[error("HOA parse error at line {line}: {message}")]
    Hoa { line: usize, message: String },
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
