use thiserror::Error;

use crate::scheme::Violation;

/// Malformed relation tables (checked before any axiom is looked at).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("relation table has no points")]
    Empty,
    #[error("row {row} has {len} entries, expected {n}")]
    NonSquare { row: usize, len: usize, n: usize },
    #[error("cell ({x}, {y}) holds relation {index}, outside [0, {rank})")]
    IndexOutOfRange { x: usize, y: usize, index: usize, rank: usize },
    #[error("relation {0} occurs in no cell")]
    EmptyRelation(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Table(#[from] TableError),
    #[error("{} axiom violation(s); first: {}", .0.len(), .0[0])]
    Axioms(Vec<Violation>),
}

impl VerifyError {
    pub fn violations(&self) -> &[Violation] {
        match self {
            VerifyError::Axioms(v) => v,
            VerifyError::Table(_) => &[],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemeError {
    #[error("subset operand is empty")]
    EmptySubset,
    #[error("relation {0} does not exist")]
    NoSuchRelation(usize),
    #[error("subset {0:?} is not closed")]
    NotClosed(Vec<usize>),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error(transparent)]
    Verify(#[from] VerifyError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("group table: {0}")]
    BadTable(String),
    #[error("subset is not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("modulus {0:?} is reducible over F_p")]
    ReducibleModulus(Vec<u64>),
    #[error("action is not transitive ({orbit} of {degree} points reachable from 0)")]
    Intransitive { orbit: usize, degree: usize },
    #[error("action: {0}")]
    BadAction(String),
    #[error(transparent)]
    Verify(#[from] VerifyError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("delta = {delta} outside the admissible range [{min}, {max}] for p = {p}")]
    DeltaOutOfRange { delta: usize, p: u64, min: usize, max: usize },
    #[error("invalid L/C maps: {0}")]
    InvalidMaps(String),
    #[error("{points} points exceed the size guard of {limit}")]
    TooLarge { points: usize, limit: usize },
    #[error("p = 2 requires the allow-even flag for this construction")]
    EvenPrime,
    #[error("not a linear space: {0}")]
    NotLinearSpace(String),
    #[error("group action: {0}")]
    BadAction(String),
    #[error("{lines} lines through a point, need fewer than p + 1 = {bound}")]
    TooManyLines { lines: usize, bound: usize },
    #[error("no order-p subgroup remains for the central map")]
    NoCentralSubgroup,
    #[error("relation family does not partition its block: {0}")]
    Partition(String),
    #[error("extension: {0}")]
    Extension(String),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("{points} points exceed the search limit of {limit}")]
    TooManyPoints { points: usize, limit: usize },
    #[error("search node budget of {0} exhausted")]
    BudgetExceeded(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("line {0} has fewer than two points")]
    ShortLine(usize),
    #[error("line {line} mentions point {point}, but there are only {points}")]
    PointOutOfRange { line: usize, point: usize, points: usize },
    #[error("action degree {degree} does not match {points} points")]
    DegreeMismatch { degree: usize, points: usize },
    #[error("thin residue is not elementary abelian of rank 2: {0}")]
    ResidueShape(String),
    #[error("stabilizer map is inconsistent: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
}

#[derive(Debug, Error)]
pub enum IoError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("diagonal is not relation 0 (cell ({0}, {0}))")]
    Diagonal(usize),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error("{0}")]
    Unsupported(String),
}
