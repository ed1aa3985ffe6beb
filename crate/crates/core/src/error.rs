use thiserror::Error;

/// Errors raised by every fallible operation in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("multiplication table is not a Latin square: {0}")]
    NotLatinSquare(String),
    #[error("multiplication table is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("multiplication table has no two-sided identity")]
    NoIdentity,
    #[error("invalid permutation generator: {0}")]
    InvalidPermutation(String),
    #[error("group order {order} exceeds cap {cap}")]
    OrderCapExceeded { order: usize, cap: usize },
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("unknown group element `{0}`")]
    UnknownElement(String),
    #[error("character table computation did not converge: {0}")]
    CharacterTable(String),
    #[error("matrix for element {element} is not unitary (residual {residual:.3e})")]
    NotUnitary { element: String, residual: f64 },
    #[error("not a projective representation at ({g}, {h}) (residual {residual:.3e})")]
    NotProjective { g: String, h: String, residual: f64 },
    #[error("matrix for element {element} has shape {rows}x{cols}, expected {dim}x{dim}")]
    BadShape { element: String, rows: usize, cols: usize, dim: usize },
    #[error("representation has a nontrivial cocycle")]
    NontrivialCocycle,
    #[error("representations live on different groups or domains")]
    GroupMismatch,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("representation must be defined on the whole group")]
    NotWholeGroup,
    #[error("multiplicity {0} is not within 1e-6 of an integer")]
    NonIntegerMultiplicity(f64),
    #[error("tower level {0} overflows 128-bit multiplicities")]
    Overflow(usize),
    #[error("the G-action on minimal central projections is not transitive (not a factor)")]
    NotFactor,
    #[error("algebra is not invariant under Ad of the representation")]
    NotInvariant,
    #[error("numerical degeneracy: {0}")]
    Degenerate(String),
    #[error("{what} residual {value:.3e} exceeds {limit:.1e}")]
    Residual { what: String, value: f64, limit: f64 },
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
    #[error("{path}: field `{field}`: {message}")]
    Schema { path: String, field: String, message: String },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl Error {
    /// True when a mathematical identity that must always hold was violated.
    pub fn is_inconsistency(&self) -> bool {
        matches!(self, Error::Inconsistency(_))
    }

    /// Stable snake-case name of the variant, for machine-readable output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotLatinSquare(_) => "not_latin_square",
            Error::NotAssociative(..) => "not_associative",
            Error::NoIdentity => "no_identity",
            Error::InvalidPermutation(_) => "invalid_permutation",
            Error::OrderCapExceeded { .. } => "order_cap_exceeded",
            Error::NotASubgroup(_) => "not_a_subgroup",
            Error::UnknownElement(_) => "unknown_element",
            Error::CharacterTable(_) => "character_table",
            Error::NotUnitary { .. } => "not_unitary",
            Error::NotProjective { .. } => "not_projective",
            Error::BadShape { .. } => "bad_shape",
            Error::NontrivialCocycle => "nontrivial_cocycle",
            Error::GroupMismatch => "group_mismatch",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::NotWholeGroup => "not_whole_group",
            Error::NonIntegerMultiplicity(_) => "non_integer_multiplicity",
            Error::Overflow(_) => "overflow",
            Error::NotFactor => "not_factor",
            Error::NotInvariant => "not_invariant",
            Error::Degenerate(_) => "degenerate",
            Error::Residual { .. } => "residual",
            Error::Inconsistency(_) => "inconsistency",
            Error::Schema { .. } => "schema",
            Error::Io { .. } => "io",
        }
    }

    pub(crate) fn schema(path: &str, field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema { path: path.to_string(), field: field.into(), message: message.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
