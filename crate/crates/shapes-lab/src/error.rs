use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("zero has no canonical associate")]
    ZeroAssociate,
    #[error("cannot parse Eisenstein integer {0:?}")]
    Parse(String),
    #[error("not a positive-area class")]
    NonPositiveArea,
    #[error("side index {0} out of range 1..=6")]
    SideIndex(usize),
    #[error("hexagon {0:?} is not fundamental")]
    NotFundamental([i64; 4]),
    #[error("invalid parameter: {0}")]
    Invalid(String),
    #[error("mesh: {0}")]
    Mesh(String),
    #[error("surface: {0}")]
    Surface(String),
    #[error("no unique fixed point")]
    NoFixedPoint,
    #[error("no collision stratum")]
    NoCollision,
    #[error("condition A violated: {0}")]
    ConditionA(String),
    #[error("triangle inequality violated on ({0}, {1}, {2})")]
    TriangleInequality(usize, usize, usize),
    #[error("evaluation at a pole")]
    Pole,
    #[error("invalid curvature tuple: {0}")]
    Tuple(String),
}

pub type Result<T> = std::result::Result<T, Error>;
