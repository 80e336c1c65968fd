use thiserror::Error;

/// Errors raised by evaluation, root finding and the spectral sums.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A series did not converge within the term budget.
    #[error("series not converged after {terms} terms (last term magnitude {last_term:e})")]
    Truncation { terms: usize, last_term: f64 },

    /// A sign-change bracket could not be established.
    #[error("bracket search failed: {0}")]
    Bracket(String),

    /// A runtime-checked structural assumption did not hold.
    #[error("invariant violation: {0}")]
    Invariant(String),

    /// The argument coincides with a zero of the denominator.
    #[error("pole at x = {x} (zero index {n})")]
    Pole { n: usize, x: f64 },

    /// An enclosure could not be narrowed to the requested width.
    #[error("requested width {requested:e} unreachable; best achieved {best:e}")]
    Unreachable { requested: f64, best: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
