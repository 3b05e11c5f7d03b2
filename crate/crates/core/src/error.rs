use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// A special-function evaluation was requested outside its domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Parameters violate an admissibility condition (e.g. the well is not
    /// deep enough to trap a nontrivial minimizer).
    #[error("inadmissible parameters: {0}")]
    Admissibility(String),

    /// A root search found no sign change on its scan grid.
    #[error("no root found: {0}")]
    NoRoot(String),

    /// Unsupported space dimension.
    #[error("unsupported dimension d={0} (supported: 2, 3)")]
    Dimension(u32),

    /// The iterative linear solver failed to reach its tolerance.
    #[error("linear solver failed: {0}")]
    LinearSolver(String),

    /// Clamp bounds are not ordered lower <= upper at some node.
    #[error("bound ordering violated at node ({i}, {j}): lower={lower} > upper={upper}")]
    BoundOrdering { i: usize, j: usize, lower: f64, upper: f64 },

    /// A diagnostic that needs a nonempty contact set was run on a field
    /// without one.
    #[error("contact set is empty")]
    EmptyContactSet,

    /// Decay fitting hit a nonpositive field value inside the fit annulus.
    #[error("nonpositive value {value} at radius {radius} inside the fit annulus")]
    NonpositiveInAnnulus { value: f64, radius: f64 },

    /// A configuration file or key is malformed; the key is named.
    #[error("config error for key `{key}`: {reason}")]
    Config { key: String, reason: String },

    /// Grid or field data is inconsistent (wrong length, bad coordinates...).
    #[error("invalid field data: {0}")]
    FieldData(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
