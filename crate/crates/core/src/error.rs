use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid Cartan type {family}{rank}")]
    InvalidCartanType { family: char, rank: usize },
    #[error("not a finite-type Cartan matrix: {0}")]
    NotFiniteType(String),
    #[error("letter {letter} outside the alphabet 1..={rank}")]
    LetterOutOfRange { letter: usize, rank: usize },
    #[error("word {word} has no reduced subword for the longest element")]
    DemazureTooShort { word: String },
    #[error("word is not of the form c·w0(c): {0}")]
    NotClusterWord(String),
    #[error("{0} is not a positive root of this spec")]
    RootNotPositive(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("point set is empty")]
    EmptyPointSet,
    #[error("{0} is not a vertex of the polytope")]
    NotAVertex(String),
    #[error("position {position} carries different weights in different facets")]
    RayAmbiguous { position: usize },
    #[error("ray matrix of cone {cone} is singular")]
    SingularCone { cone: usize },
    #[error("expected {expected} height vectors, got {got}")]
    CountMismatch { expected: usize, got: usize },
    #[error("mutation produced a non-Laurent expression in direction {direction}")]
    NonLaurent { direction: usize },
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("seed budget of {0} exceeded")]
    BudgetExceeded(usize),
    #[error("specialization x -> 0 is not a monomial: {0}")]
    NotAMonomial(String),
    #[error("weight has {got} coordinates, generator expects {expected}")]
    IndexMismatch { expected: usize, got: usize },
    #[error("sample escaped cone {cone} after repeated shrinking")]
    SampleEscapedCone { cone: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
