//! Crate-wide error type.

use crate::field::UnivariatePoly;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("index out of range: {index} (dimension {n})")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("elementary map requires distinct indices, got i = j = {0}")]
    EqualIndices(usize),

    #[error("phi_({i},{j}) with i > j does not preserve the lexicographic order")]
    NotOrderPreserving { i: usize, j: usize },

    #[error("empty lattice set passed to principalization")]
    EmptyLatticeSet,

    #[error("lattice set contains a non-integer or negative point")]
    InvalidLatticePoint,

    #[error("iteration cap of {cap} exceeded in {context}")]
    IterationCapExceeded { cap: usize, context: &'static str },

    #[error("zero generator in cone")]
    ZeroGenerator,

    #[error("cone is not an S-cone: generator {witness:?} is not lexicographically positive")]
    NotSCone { witness: Vec<String> },

    #[error("map is not a composition of order-preserving blowing-downs")]
    NotBlowdown,

    #[error("division by zero")]
    DivisionByZero,

    #[error("series is not a unit (needs nonnegative support and a nonzero constant term)")]
    NotAUnit,

    #[error("inverting a non-constant unit requires a finite target precision")]
    UnboundedInverse,

    #[error("polynomial does not split over the rationals; unsplit factor of degree {}", .remainder.degree())]
    Unsplittable { remainder: UnivariatePoly },

    #[error("characteristic root of multiplicity {multiplicity} encountered (simple roots are required)")]
    MultipleRoot { multiplicity: usize },

    #[error("solver exceeded max_steps = {0}")]
    MaxStepsExceeded(usize),

    #[error("equation is not monic in z")]
    NotMonic,

    #[error("constant coefficient w_m is zero")]
    ZeroConstantTerm,

    #[error("coefficient support leaves the first quadrant at exponent {witness:?}")]
    NegativeSupport { witness: Vec<String> },

    #[error("internal exactness violation: {0}")]
    ExactnessViolation(&'static str),

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("orbit product produced a residue outside the base field")]
    ZetaResidue,

    #[error("leading coefficient is not invertible (expected a monomial times a unit)")]
    NotInvertibleLead,

    #[error("precision must be positive")]
    NonPositivePrecision,
}

pub type Result<T> = std::result::Result<T, Error>;
