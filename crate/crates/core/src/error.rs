use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what}: expected length {expected}, found {found}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("residue {value} out of range for Z/{modulus}")]
    ResidueOutOfRange { value: u64, modulus: u8 },

    #[error("expected a class with {expected} coefficients, found {found}")]
    RingMismatch {
        expected: &'static str,
        found: &'static str,
    },

    #[error("invalid surface: {0}")]
    InvalidSurface(String),

    /// A supplied value breaks an invariant of its type.
    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    /// A q+ candidate whose value depends on the chosen representative of a
    /// torsion class.
    #[error("enhancement is not well defined on H_1(;Z/4): relation {relation} evaluates to {value}")]
    RepresentativeDependence { relation: usize, value: u8 },

    #[error("class {label} is one-sided (odd Z/2 self-intersection)")]
    OneSidedClass { label: String },

    #[error("enhancement and class live on different surfaces")]
    SurfaceMismatch,

    /// The handle data cannot come from a closed 3-manifold.
    #[error("inconsistent handle data: {0}")]
    InvalidDecomposition(String),
}
