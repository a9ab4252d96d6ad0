use thiserror::Error;

/// Everything that can go wrong while building or evaluating categories.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("root of order {order} does not embed in conductor {conductor}")]
    ConductorMismatch { order: u64, conductor: u64 },
    #[error("conductor {requested} exceeds the cap {cap} (set SMATRIX_MAX_CONDUCTOR to raise it)")]
    ConductorCapExceeded { requested: u64, cap: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("group of order {order} exceeds the bound {bound}")]
    GroupTooLarge { order: usize, bound: usize },
    #[error("value order {order} exceeds the bound {bound}")]
    OrderTooLarge { order: u64, bound: u64 },
    #[error("search bounds exceeded: {0}")]
    BoundsExceeded(String),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("not an abelian 3-cocycle: {0}")]
    NotACocycle(String),
    #[error("invalid quadratic form: {0}")]
    InvalidQuadraticForm(String),
    #[error("quadratic form is not realizable by the standard cocycle: {0}")]
    NotRealizable(String),
    #[error("cocycle convention check failed: {0}")]
    ConventionError(String),
    #[error("subgroup {0} is not contained in the Mueger center; no module braiding exists")]
    NotAdmissible(String),
    #[error("no 2-cochain mu with d(mu) = psi|H found for value orders {0:?}")]
    NoMuFound(Vec<u64>),
    #[error("element {0} is not transparent")]
    NotTransparent(String),
    #[error("module braiding differs across simple objects: {0}")]
    WellDefinednessViolation(String),
    #[error("no character of G restricts to {0}")]
    LiftNotFound(String),
    #[error("operands come from different base categories")]
    BaseMismatch,
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Coarse classification used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Validation,
    Inconsistency,
    Bounds,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        use Error::*;
        match self {
            GroupTooLarge { .. }
            | OrderTooLarge { .. }
            | BoundsExceeded(_)
            | ConductorCapExceeded { .. } => ErrorKind::Bounds,
            ConventionError(_)
            | WellDefinednessViolation(_)
            | LiftNotFound(_)
            | InternalInconsistency(_) => ErrorKind::Inconsistency,
            _ => ErrorKind::Validation,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
