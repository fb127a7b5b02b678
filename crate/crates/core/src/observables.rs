//! Physical observables assembled from the reduced integrals.
//!
//! ```text
//! tau2(omega) = 2/(3 omega^3) [ I~(1,1,lt,4) - I(1,1,lambda,4) ]
//! M(omega)    = 1 - P(omega) - P(-omega)
//! P(+omega)   = 2/(3 omega^2) I(1,1,lambda,3)
//! P(-omega)   = 2/(3 omega^2) I~(1,1,lt,3)
//! ```
//!
//! With this normalization `M(omega) = omega^2 tau2(omega)` identically, and the
//! static limit is `tau2(0+) = -9/2`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::continuation::{integral_i, ContinuationConfig, ContinuationReport, IntegralSpec};
use crate::error::{Error, Result};
use crate::kernel::{lambda_pair_with_guard, BranchedLambda, PhotonFrequency, DEFAULT_THRESHOLD_GUARD};
use crate::quadrature::QuadConfig;

/// Characteristic atomic intensity `I_0` in W/cm^2.
pub const ATOMIC_INTENSITY_W_CM2: f64 = 7.016e16;

/// Static dipole polarizability limit in the sign convention used here.
pub const STATIC_POLARIZABILITY: f64 = -4.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Observable {
    Tau2,
    KHMatrix,
    PTerm,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexResponse {
    pub value: Complex64,
    pub observable: Observable,
    pub omega: PhotonFrequency,
    pub report: ContinuationReport,
}

/// `Delta = delta_e - i gamma = -(I/I_0) tau2`, all in atomic units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StarkShift {
    pub delta_e: f64,
    pub gamma: f64,
    pub intensity: f64,
}

/// Unpolarized differential cross section in units of the squared length prefactor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrossSection {
    pub theta: f64,
    pub value: f64,
    pub msquared: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalConfig {
    pub threshold_guard: f64,
    pub continuation: ContinuationConfig,
    /// Frequencies below this use `small_omega_tol` for every quadrature.
    pub small_omega: f64,
    pub small_omega_tol: f64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            threshold_guard: DEFAULT_THRESHOLD_GUARD,
            continuation: ContinuationConfig::default(),
            small_omega: 1e-3,
            small_omega_tol: 1e-14,
        }
    }
}

impl EvalConfig {
    /// Set absolute and relative quadrature tolerance.
    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.continuation.quad = self.continuation.quad.with_tolerance(tol);
        self
    }
}

/// Evaluates observables under a fixed configuration. Cheap to copy and `Sync`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Evaluator {
    config: EvalConfig,
}

impl Evaluator {
    pub fn new(config: EvalConfig) -> Self {
        Self { config }
    }

    pub fn config(&self) -> &EvalConfig {
        &self.config
    }

    pub fn lambda(&self, omega: PhotonFrequency) -> Result<BranchedLambda> {
        lambda_pair_with_guard(omega, self.config.threshold_guard)
    }

    fn continuation_for(&self, omega: PhotonFrequency) -> ContinuationConfig {
        let mut c = self.config.continuation;
        if omega.get() < self.config.small_omega {
            let tol = self.config.small_omega_tol;
            c.quad = QuadConfig {
                abs_tol: c.quad.abs_tol.min(tol),
                rel_tol: c.quad.rel_tol.min(tol),
                ..c.quad
            };
        }
        c
    }

    fn pair(&self, omega: PhotonFrequency, n: u32) -> Result<(Complex64, Complex64, ContinuationReport)> {
        let lam = self.lambda(omega)?;
        let cfg = self.continuation_for(omega);
        let (plain, report) = integral_i(IntegralSpec::plain(1, 1, n), &lam, &cfg)?;
        let (tilde, tilde_report) = integral_i(IntegralSpec::tilde(1, 1, n), &lam, &cfg)?;
        Ok((plain, tilde, report.merge(tilde_report)))
    }

    pub fn tau2(&self, omega: PhotonFrequency) -> Result<ComplexResponse> {
        let w = omega.get();
        let (plain, tilde, report) = self.pair(omega, 4)?;
        Ok(ComplexResponse {
            value: (tilde - plain) * (2.0 / (3.0 * w * w * w)),
            observable: Observable::Tau2,
            omega,
            report,
        })
    }

    pub fn kh_matrix(&self, omega: PhotonFrequency) -> Result<ComplexResponse> {
        let w = omega.get();
        let (plain, tilde, report) = self.pair(omega, 3)?;
        Ok(ComplexResponse {
            value: 1.0 - (plain + tilde) * (2.0 / (3.0 * w * w)),
            observable: Observable::KHMatrix,
            omega,
            report,
        })
    }

    /// Single-sign dispersion term: the plain sector for `omega_signed > 0`,
    /// the tilde sector for `omega_signed < 0`.
    pub fn p_term(&self, omega_signed: f64) -> Result<ComplexResponse> {
        let omega = PhotonFrequency::new(omega_signed.abs())?;
        let w = omega.get();
        let lam = self.lambda(omega)?;
        let cfg = self.continuation_for(omega);
        let spec = if omega_signed > 0.0 {
            IntegralSpec::plain(1, 1, 3)
        } else {
            IntegralSpec::tilde(1, 1, 3)
        };
        let (v, report) = integral_i(spec, &lam, &cfg)?;
        Ok(ComplexResponse {
            value: v * (2.0 / (3.0 * w * w)),
            observable: Observable::PTerm,
            omega,
            report,
        })
    }

    pub fn stark_shift(&self, omega: PhotonFrequency, intensity_w_cm2: f64) -> Result<StarkShift> {
        if !intensity_w_cm2.is_finite() || intensity_w_cm2 < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "intensity must be finite and non-negative, got {intensity_w_cm2}"
            )));
        }
        let tau = self.tau2(omega)?.value;
        let ratio = intensity_w_cm2 / ATOMIC_INTENSITY_W_CM2;
        Ok(StarkShift {
            delta_e: -ratio * tau.re,
            gamma: ratio * tau.im,
            intensity: intensity_w_cm2,
        })
    }

    /// `(eps . eps')^2 |M|^2`.
    pub fn cross_section_polarized(&self, omega: PhotonFrequency, eps_dot_eps_prime: f64) -> Result<f64> {
        if eps_dot_eps_prime.is_nan() || eps_dot_eps_prime.abs() > 1.0 {
            return Err(Error::InvalidArgument(format!(
                "|eps . eps'| must not exceed 1, got {eps_dot_eps_prime}"
            )));
        }
        let m = self.kh_matrix(omega)?.value;
        Ok(eps_dot_eps_prime * eps_dot_eps_prime * m.norm_sqr())
    }

    /// `(1 + cos^2 theta)/2 |M|^2`.
    pub fn cross_section_unpolarized(&self, omega: PhotonFrequency, theta: f64) -> Result<CrossSection> {
        if !(0.0..=std::f64::consts::PI).contains(&theta) {
            return Err(Error::InvalidArgument(format!(
                "scattering angle must lie in [0, pi], got {theta}"
            )));
        }
        let msquared = self.kh_matrix(omega)?.value.norm_sqr();
        Ok(CrossSection {
            theta,
            value: unpolarized_angular_factor(theta) * msquared,
            msquared,
        })
    }
}

/// `(1 + cos^2 theta)/2`; integrates to `8 pi / 3` over the sphere.
pub fn unpolarized_angular_factor(theta: f64) -> f64 {
    let c = theta.cos();
    0.5 * (1.0 + c * c)
}

pub fn tau2(omega: PhotonFrequency) -> Result<ComplexResponse> {
    Evaluator::default().tau2(omega)
}

pub fn kh_matrix(omega: PhotonFrequency) -> Result<ComplexResponse> {
    Evaluator::default().kh_matrix(omega)
}

pub fn p_term(omega_signed: f64) -> Result<ComplexResponse> {
    Evaluator::default().p_term(omega_signed)
}

pub fn stark_shift(omega: PhotonFrequency, intensity_w_cm2: f64) -> Result<StarkShift> {
    Evaluator::default().stark_shift(omega, intensity_w_cm2)
}

pub fn cross_section_polarized(omega: PhotonFrequency, eps_dot_eps_prime: f64) -> Result<f64> {
    Evaluator::default().cross_section_polarized(omega, eps_dot_eps_prime)
}

pub fn cross_section_unpolarized(omega: PhotonFrequency, theta: f64) -> Result<CrossSection> {
    Evaluator::default().cross_section_unpolarized(omega, theta)
}
