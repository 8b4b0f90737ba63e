use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the function.
    #[error("domain error: {0}")]
    Domain(String),

    /// The evaluation point sits on the flux axis, where the K1 series diverges.
    #[error("point lies on the flux axis (rho = 0)")]
    OnAxis,

    /// A height lies outside the slab between the plates.
    #[error("z = {z} is outside the plates [0, {d}]")]
    OutsidePlates { z: f64, d: f64 },

    /// A mode sum did not reach its tolerance within `max_terms`.
    #[error("mode sum did not converge after {terms} terms (estimated relative error {est_rel_error:e})")]
    SeriesNotConverged { terms: usize, est_rel_error: f64 },

    /// Adaptive quadrature could not reach the requested tolerance.
    #[error("quadrature did not converge (estimated error {est_error:e} after {evaluations} evaluations)")]
    QuadratureNotConverged { est_error: f64, evaluations: usize },

    /// A loop path failed validation.
    #[error("invalid path: {0}")]
    InvalidPath(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
