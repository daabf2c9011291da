use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate conic: {0}")]
    DegenerateConic(String),
    #[error("conic is linear in y (A = 0); the two ordinates do not exist")]
    LinearInY,
    #[error("companion roots coincide at x = {x}")]
    CoincidentRoots { x: f64 },
    #[error("lattice is not real-valued: {0}")]
    ComplexLattice(String),
    #[error("rho has zero fractional part")]
    IntegerRho,
    #[error("eps = iota at j = {j}; rho looks rational")]
    TieBreak { j: u64 },
    #[error("measure has {distinct} distinct nodes, need more than {needed}")]
    MeasureTooSmall { distinct: usize, needed: usize },
    #[error("loss of orthogonality: a_{n} = {value}")]
    LossOfOrthogonality { n: usize, value: f64 },
    #[error("evaluation point {x} coincides with a node")]
    PoleAtNode { x: f64 },
    #[error("non-positive mass {mass} generated at k = {k}")]
    SignViolation { k: i64, mass: f64 },
    #[error("beta vanishes inside the range at k = {k}")]
    ZeroDivision { k: i64 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
