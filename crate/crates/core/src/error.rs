use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the numerical pipeline.
///
/// Every variant maps to a stable code (see [`Error::code`]) so that front
/// ends can report failures in a machine-readable way.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("degenerate fit: {0}")]
    DegenerateFit(String),

    #[error("curve is not regular: speed {speed:e} at t = {t:.6}")]
    IrregularCurve { t: f64, speed: f64 },

    #[error("curve self-intersects between t = {t1:.6} and t = {t2:.6}")]
    SelfIntersecting { t1: f64, t2: f64 },

    #[error("point {z} lies outside the closed annulus {rho} <= |z| <= 1")]
    OutsideAnnulus { z: Complex64, rho: f64 },

    #[error("sample count mismatch: outer has {outer}, inner has {inner}")]
    SampleMismatch { outer: usize, inner: usize },

    #[error("need at least {required} samples, got {got}")]
    TooFewSamples { required: usize, got: usize },

    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("energy is not finite at iteration {iteration}: {detail}")]
    NonFiniteEnergy { iteration: usize, detail: String },

    #[error("ill-conditioned least squares: {0}")]
    IllConditioned(String),

    #[error("degenerate Weierstrass data: g' vanishes at sample {index} (z = {z})")]
    DegenerateWeierstrass { index: usize, z: Complex64 },

    #[error("Hopf constant {given} disagrees in sign with the fitted value {fitted}")]
    InconsistentHopfSign { given: f64, fitted: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable identifier used in machine-readable error reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "invalid_input",
            Error::DegenerateFit(_) => "degenerate_fit",
            Error::IrregularCurve { .. } => "irregular_curve",
            Error::SelfIntersecting { .. } => "self_intersecting",
            Error::OutsideAnnulus { .. } => "outside_annulus",
            Error::SampleMismatch { .. } => "sample_mismatch",
            Error::TooFewSamples { .. } => "too_few_samples",
            Error::InvalidDomain(_) => "invalid_domain",
            Error::NonFiniteEnergy { .. } => "non_finite_energy",
            Error::IllConditioned(_) => "ill_conditioned",
            Error::DegenerateWeierstrass { .. } => "degenerate_weierstrass",
            Error::InconsistentHopfSign { .. } => "inconsistent_hopf_sign",
            Error::Io(_) => "io",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
