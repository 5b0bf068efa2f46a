use thiserror::Error;

/// Errors produced by the analytical machinery and the kinetic oracle.
#[derive(Debug, Error)]
pub enum StokesError {
    #[error("invalid frequency omega1 = {omega1}; requires a finite omega1 > 0")]
    InvalidFrequency { omega1: f64 },

    /// The Riemann problem changes class at the critical frequency; in a band
    /// around it the boundary-value factorization is numerically degenerate.
    #[error("omega1 = {omega1} lies within {band:.1e} of the degenerate frequency {at}")]
    NearCritical { omega1: f64, at: f64, band: f64 },

    #[error("no discrete eigenvalue exists at omega1 = {omega1} (index is zero)")]
    NoDiscreteZero { omega1: f64 },

    #[error("iteration failed to converge: {context}")]
    NonConvergence { context: String },

    #[error("branch tracking of arg G failed at omega1 = {omega1} (increment >= pi/2 after maximal refinement)")]
    BranchTracking { omega1: f64 },

    #[error("evaluation point lies on the spectral cut [0, +inf)")]
    OnCut,

    #[error("domain error: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, StokesError>;
