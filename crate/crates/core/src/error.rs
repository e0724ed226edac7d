use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma function pole at z = {0}")]
    Pole(f64),

    #[error("series did not converge after {terms} terms (a = {a}, b = {b}, y = {y})")]
    NonConvergence { a: f64, b: f64, y: f64, terms: usize },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("supercritical coupling alpha = {alpha}: no admissible bound states for alpha <= -1/4 (fall to the center)")]
    Supercritical { alpha: f64 },

    #[error("exponent beta = {beta} is not admissible for alpha = {alpha}")]
    Inadmissible { alpha: f64, beta: f64 },

    #[error("alpha = 0 has two admissible exponents; select a beta branch (-1 or 0)")]
    BranchRequired,

    #[error("potential is singular at x = 0 for alpha = {alpha}")]
    SingularPoint { alpha: f64 },

    #[error("adaptive quadrature exceeded depth {depth} on [{a}, {b}]")]
    DepthExceeded { a: f64, b: f64, depth: usize },

    #[error("principal value diverges at x = {c}")]
    PvDivergent { c: f64 },

    #[error("integrand is not integrable at the origin (exponent {exponent})")]
    NonIntegrable { exponent: f64 },

    #[error("states belong to different problems: {0}")]
    DomainMismatch(String),

    #[error("eigenvalue iteration failed: {0}")]
    Convergence(String),

    #[error("no bracket found for level {n} in (0, {upper}]")]
    Bracket { n: usize, upper: f64 },

    #[error("level count mismatch: analytic {analytic}, oracle {oracle}")]
    ShapeMismatch { analytic: usize, oracle: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
