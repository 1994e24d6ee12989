use num_complex::Complex64;

/// Error type shared by all modules of the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// The contour formula was evaluated on one of its poles.
    #[error("contour formula has a pole at theta = {theta}")]
    ContourPole { theta: Complex64 },

    /// The closed-form coefficient denominator vanished for this (alpha, c).
    #[error("singular parameter configuration at alpha = {alpha}, c = {c}")]
    SingularConfiguration { alpha: f64, c: f64 },

    /// An iterative solver ran out of iterations.
    #[error("{what}: no convergence after {iterations} iterations (residual {residual:.3e})")]
    NoConvergence {
        what: &'static str,
        iterations: usize,
        residual: f64,
    },

    /// An iterate or argument left the admissible region.
    #[error("{what} out of range: {detail}")]
    OutOfRange { what: &'static str, detail: String },

    /// A bracketed root find could not proceed.
    #[error("root find for {what} failed on bracket [{lo}, {hi}]")]
    RootFindFailed {
        what: &'static str,
        lo: f64,
        hi: f64,
    },

    /// The transform evaluator failed at a quadrature node.
    #[error("transform evaluation failed at node {index} (z = {z}): {reason}")]
    TransformEval {
        index: usize,
        z: Complex64,
        reason: String,
    },

    /// exp(z t) would overflow at a quadrature node.
    #[error("exponential overflow at node {index}: Re(z t) = {re_zt:.3e}")]
    Overflow { index: usize, re_zt: f64 },

    /// The quadrature sum produced NaN or infinity.
    #[error("non-finite inversion result at N = {n}")]
    NonFinite { n: usize },

    /// An error curve had no detectable convergence turn.
    #[error("no convergence turn detected: extend the sweep to larger N")]
    NoTurnDetected,

    /// A shifted linear solve did not meet its residual bound.
    #[error("linear solve failed at z = {z}: {reason}")]
    SolveFailed { z: Complex64, reason: String },

    /// The residue series could not be truncated at the requested accuracy.
    #[error("residue series did not converge at t = {t}; minimum usable t is about {t_min:.2e}")]
    SeriesDiverged { t: f64, t_min: f64 },

    /// Two independent contour evaluations of a reference disagreed.
    #[error("reference certification failed: contours disagree by {rel:.3e} (limit {limit:.1e})")]
    CertificationFailed { rel: f64, limit: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
