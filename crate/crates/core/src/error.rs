use std::fmt;

/// Errors surfaced by the solution machinery.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Input outside a function's mathematical domain (Γ poles, z < 0, ...).
    Domain(String),
    /// A series did not reach the requested accuracy within its term budget.
    Accuracy(String),
    /// Input outside the supported numeric range (overflow territory).
    Range(String),
    /// A singularity was hit while assembling a quantity; `x` locates it.
    Singular { x: f64, what: String },
    /// An API contract was violated (jet orders, centers, spec fields, config).
    Contract(String),
    /// A transformed eigenfunction hit a degenerate normalization factor.
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Accuracy(msg) => write!(f, "accuracy error: {msg}"),
            Error::Range(msg) => write!(f, "range error: {msg}"),
            Error::Singular { x, what } => write!(f, "singularity at x = {x}: {what}"),
            Error::Contract(msg) => write!(f, "contract violation: {msg}"),
            Error::Degenerate(msg) => write!(f, "degenerate factor: {msg}"),
        }
    }
}

impl std::error::Error for Error {}
