use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("unsupported parameters: {0}")]
    Unsupported(String),
    #[error("modulus polynomial {0:?} is not irreducible over F_{1}")]
    Reducible(Vec<u32>, u32),
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("no order within bound {0}")]
    NoOrderWithinBound(u64),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("malformed element: {0}")]
    Malformed(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("generators do not generate the group (span has {span} of {order} elements)")]
    NotGenerated { span: usize, order: usize },
    #[error("relator {index} does not evaluate to the identity")]
    RelatorViolation { index: usize },
    #[error("subset is not closed under the group law: {0}")]
    NotSubgroup(String),
    #[error("representation is not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("group of order {0} exceeds the supported bound {1}")]
    TooLarge(usize, usize),
    #[error("unknown group name {0:?}")]
    UnknownGroup(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LiftError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LocalError {
    #[error("level mismatch: {0} vs {1}")]
    LevelMismatch(u32, u32),
    #[error("model mismatch")]
    ModelMismatch,
    #[error("classes are not orthogonal: cup product is {0}")]
    NotOrthogonal(u32),
    #[error("cup product obstruction: x1 cup x2 = {0}")]
    CupObstruction(u32),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("invalid representation: {0}")]
    InvalidRep(String),
}
