use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not a permutation: {0:?}")]
    InvalidPermutation(Vec<usize>),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("duplicate basis label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown basis label `{0}`")]
    UnknownLabel(String),
    #[error("basis index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("operands live in different graded spaces")]
    SpaceMismatch,
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: i64, got: i64 },
    #[error("slot {slot} out of range for arity {arity}")]
    SlotOutOfRange { slot: usize, arity: usize },
    #[error("entry {input:?} is not homogeneous of degree {expected}")]
    NotHomogeneous { input: Vec<usize>, expected: i64 },
    #[error("element is not homogeneous")]
    InhomogeneousElement,
    #[error("map is not registered on the unsuspended side of this suspension pair")]
    NotSuspensionPair,
    #[error("i/o error: {0}")]
    Io(String),
    #[error("m1(a) != 0: the element is not closed")]
    NotClosed,
    #[error("map of arity {arity} is not graded {mode}; violated at input {tuple:?}")]
    NotSymmetric {
        arity: usize,
        mode: &'static str,
        tuple: Vec<usize>,
    },
    #[error("coderivation flavor mismatch")]
    FlavorMismatch,
    #[error("unital (arity-0) projections are only supported on the tensor coalgebra")]
    UnitalUnsupported,
    #[error("product is not associative at {0:?}")]
    NotAssociative(Vec<usize>),
    #[error("differential does not square to zero at {0:?}")]
    DifferentialNotSquareZero(Vec<usize>),
    #[error("differential fails the Leibniz rule at {0:?}")]
    LeibnizFails(Vec<usize>),
    #[error("bracket is not graded antisymmetric at {0:?}")]
    NotAntisymmetric(Vec<usize>),
    #[error("bracket fails the graded Jacobi identity at {0:?}")]
    JacobiFails(Vec<usize>),
    #[error("arity {0} exceeds the structure truncation")]
    BeyondTruncation(usize),
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("derivation rule has no entry for generator {0}")]
    MissingRule(String),
    #[error("no map assigned to generator {0}")]
    MissingAssignment(String),
    #[error("structures differ")]
    StructureMismatch,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
