//! Branch-resolved spectral parameters and the Laplace-transform kernels.
//!
//! For a photon frequency `omega` (Hartree) the two sectors of the second-order
//! sum are governed by
//!
//! ```text
//! lambda       = sqrt(1 - 2 omega)     (absorption first)
//! lambda_tilde = sqrt(1 + 2 omega)     (emission first)
//! ```
//!
//! Below the one-photon ionization threshold `lambda` is real in `(0, 1)`. Above
//! it `lambda = +i sqrt(2 omega - 1)`, which is the continuation that yields a
//! non-negative level width. Every complex power in this crate is
//! `z^w = exp(w Log z)` with `Log` the principal logarithm, `arg z` in `(-pi, pi]`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default half-width of the excluded band around `omega = 1/2`.
pub const DEFAULT_THRESHOLD_GUARD: f64 = 1e-6;

/// One-photon ionization threshold of hydrogen 1s in atomic units.
pub const IONIZATION_THRESHOLD: f64 = 0.5;

/// Photon frequency in atomic units. Always finite and strictly positive.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct PhotonFrequency(f64);

impl PhotonFrequency {
    pub fn new(omega: f64) -> Result<Self> {
        if omega.is_finite() && omega > 0.0 {
            Ok(Self(omega))
        } else {
            Err(Error::InvalidFrequency(omega))
        }
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for PhotonFrequency {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        Self::new(value)
    }
}

impl From<PhotonFrequency> for f64 {
    fn from(value: PhotonFrequency) -> Self {
        value.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regime {
    /// `omega < 1/2`: `lambda` real in `(0, 1)`.
    BelowThreshold,
    /// `omega > 1/2`: `lambda` on the positive imaginary axis.
    AboveThreshold,
}

/// The pair `(lambda, lambda_tilde)` with the branch fixed and the
/// cancellation-prone differences `1 - lambda`, `lambda_tilde - 1` stored exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchedLambda {
    omega: PhotonFrequency,
    lambda: Complex64,
    lambda_tilde: f64,
    one_minus_lambda: Complex64,
    tilde_minus_one: f64,
    regime: Regime,
}

impl BranchedLambda {
    #[inline]
    pub fn omega(&self) -> PhotonFrequency {
        self.omega
    }

    #[inline]
    pub fn lambda(&self) -> Complex64 {
        self.lambda
    }

    #[inline]
    pub fn lambda_tilde(&self) -> f64 {
        self.lambda_tilde
    }

    #[inline]
    pub fn regime(&self) -> Regime {
        self.regime
    }

    /// `1 - lambda` without cancellation for small `omega`.
    #[inline]
    pub fn one_minus_lambda(&self) -> Complex64 {
        self.one_minus_lambda
    }

    /// `lambda_tilde - 1` without cancellation for small `omega`.
    #[inline]
    pub fn tilde_minus_one(&self) -> f64 {
        self.tilde_minus_one
    }

    #[inline]
    pub fn inv_lambda(&self) -> Complex64 {
        self.lambda.inv()
    }
}

/// [`lambda_pair_with_guard`] with the default threshold guard.
pub fn lambda_pair(omega: PhotonFrequency) -> Result<BranchedLambda> {
    lambda_pair_with_guard(omega, DEFAULT_THRESHOLD_GUARD)
}

pub fn lambda_pair_with_guard(omega: PhotonFrequency, guard: f64) -> Result<BranchedLambda> {
    let w = omega.get();
    if (w - IONIZATION_THRESHOLD).abs() < guard || w == IONIZATION_THRESHOLD {
        return Err(Error::ThresholdProximity { omega: w, guard });
    }
    let lambda_tilde = (1.0 + 2.0 * w).sqrt();
    let tilde_minus_one = 2.0 * w / (lambda_tilde + 1.0);
    let (lambda, one_minus_lambda, regime) = if w < IONIZATION_THRESHOLD {
        let l = (1.0 - 2.0 * w).sqrt();
        (
            Complex64::new(l, 0.0),
            Complex64::new(2.0 * w / (1.0 + l), 0.0),
            Regime::BelowThreshold,
        )
    } else {
        let a = (2.0 * w - 1.0).sqrt();
        (
            Complex64::new(0.0, a),
            Complex64::new(1.0, -a),
            Regime::AboveThreshold,
        )
    };
    Ok(BranchedLambda {
        omega,
        lambda,
        lambda_tilde,
        one_minus_lambda,
        tilde_minus_one,
        regime,
    })
}

/// Integer kernel exponents `(p, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KernelParams {
    pub p: i32,
    pub q: i32,
}

impl KernelParams {
    pub const fn new(p: i32, q: i32) -> Self {
        Self { p, q }
    }
}

/// `z^w` on the principal branch.
#[inline]
pub fn cpow(z: Complex64, w: Complex64) -> Complex64 {
    (w * z.ln()).exp()
}

/// `Log` of the plain-sector prefactor, `(1/lambda) Log((1 - lambda)/(1 + lambda))`.
pub(crate) fn ln_prefactor(lambda: Complex64, one_minus_lambda: Complex64) -> Complex64 {
    (one_minus_lambda / (1.0 + lambda)).ln() / lambda
}

/// `ln` of the tilde-sector prefactor, `(1/lt) ln((lt - 1)/(lt + 1))`.
pub(crate) fn ln_prefactor_tilde(lambda_tilde: f64, tilde_minus_one: f64) -> f64 {
    (tilde_minus_one / (lambda_tilde + 1.0)).ln() / lambda_tilde
}

/// Plain kernel with `s + lambda` and `s - lambda` supplied by the caller so that
/// contour parametrizations can pass them without round-off.
#[inline]
pub(crate) fn kernel_from_parts(
    params: KernelParams,
    inv_lambda: Complex64,
    ln_pref: Complex64,
    s_plus: Complex64,
    s_minus: Complex64,
) -> Complex64 {
    let a = f64::from(params.p) + inv_lambda;
    let b = f64::from(params.q) - inv_lambda;
    (ln_pref + a * s_plus.ln() + b * s_minus.ln()).exp()
}

/// Power factor `z^w` at a branch point `z = 0`: zero when `Re w > 0`, one when
/// `w = 0`, undefined otherwise.
fn power_at_zero(w: Complex64, what: &str) -> Result<Complex64> {
    if w.re > 0.0 {
        Ok(Complex64::new(0.0, 0.0))
    } else if w == Complex64::new(0.0, 0.0) {
        Ok(Complex64::new(1.0, 0.0))
    } else {
        Err(Error::Domain(format!(
            "{what} sits on a branch point with exponent {w} (Re <= 0)"
        )))
    }
}

/// `K(p, q, lambda, s) = ((1-lambda)/(1+lambda))^(1/lambda) (s+lambda)^(p+1/lambda) (s-lambda)^(q-1/lambda)`.
pub fn kernel_k(params: KernelParams, lam: Complex64, s: Complex64) -> Result<Complex64> {
    if lam == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain("lambda = 0 (threshold)".into()));
    }
    let inv = lam.inv();
    let a = f64::from(params.p) + inv;
    let b = f64::from(params.q) - inv;
    let s_plus = s + lam;
    let s_minus = s - lam;
    let ln_pref = ln_prefactor(lam, 1.0 - lam);
    let zero = Complex64::new(0.0, 0.0);
    if s_plus == zero || s_minus == zero {
        let mut value = ln_pref.exp();
        value *= if s_plus == zero {
            power_at_zero(a, "s = -lambda")?
        } else {
            cpow(s_plus, a)
        };
        value *= if s_minus == zero {
            power_at_zero(b, "s = lambda")?
        } else {
            cpow(s_minus, b)
        };
        return Ok(value);
    }
    Ok(kernel_from_parts(params, inv, ln_pref, s_plus, s_minus))
}

/// `K~(p, q, lt, s) = ((lt-1)/(lt+1))^(1/lt) (lt+s)^(p+1/lt) (lt-s)^(q-1/lt)` on `1 <= s <= lt`.
pub fn kernel_k_tilde(params: KernelParams, lam_tilde: f64, s: f64) -> Result<f64> {
    if lam_tilde.is_nan() || lam_tilde <= 1.0 {
        return Err(Error::Domain(format!(
            "lambda_tilde must exceed 1, got {lam_tilde}"
        )));
    }
    if !(1.0..=lam_tilde).contains(&s) {
        return Err(Error::Domain(format!(
            "s = {s} outside [1, lambda_tilde = {lam_tilde}]"
        )));
    }
    let inv = 1.0 / lam_tilde;
    let a = f64::from(params.p) + inv;
    let b = f64::from(params.q) - inv;
    let pref = ((lam_tilde - 1.0) / (lam_tilde + 1.0)).ln() * inv;
    let gap = lam_tilde - s;
    let tail = if gap == 0.0 {
        if b > 0.0 {
            return Ok(0.0);
        } else if b == 0.0 {
            0.0
        } else {
            return Err(Error::Domain(format!(
                "s = lambda_tilde with negative exponent q - 1/lambda_tilde = {b}"
            )));
        }
    } else {
        b * gap.ln()
    };
    Ok((pref + a * (lam_tilde + s).ln() + tail).exp())
}
