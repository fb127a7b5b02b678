use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("photon frequency must be finite and positive, got {0}")]
    InvalidFrequency(f64),

    #[error(
        "omega = {omega} lies within {guard:e} of the one-photon ionization threshold omega = 1/2"
    )]
    ThresholdProximity { omega: f64, guard: f64 },

    #[error(
        "omega = {omega} hits the intermediate resonance n = {n} (omega_n = {omega_n}); \
         recurrence denominator |{denominator:e}| is below the pole guard"
    )]
    ResonancePole {
        omega: f64,
        n: u32,
        omega_n: f64,
        denominator: f64,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error(
        "adaptive quadrature did not reach tolerance {tolerance:e} (estimated error {error:e} after {intervals} intervals)"
    )]
    QuadratureFailure {
        tolerance: f64,
        error: f64,
        intervals: usize,
    },

    #[error("radial solver did not converge: {0}")]
    NonConvergence(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for errors caused by the requested frequency itself (threshold or resonance).
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::InvalidFrequency(_)
                | Error::ThresholdProximity { .. }
                | Error::ResonancePole { .. }
                | Error::Domain(_)
        )
    }
}
