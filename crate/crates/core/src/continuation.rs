//! Reduced radial integrals and their analytic continuation.
//!
//! ```text
//! I(p,q,lambda,n)  = n! C  int_lambda^1 ds (s+lambda)^(p+1/lambda) (s-lambda)^(q-1/lambda) / (1+s)^(n+1)
//! I~(p,q,lt,n)     = n! C~ int_1^lt     ds (lt+s)^(p+1/lt)         (lt-s)^(q-1/lt)         / (1+s)^(n+1)
//! ```
//!
//! with `C = ((1-lambda)/(1+lambda))^(1/lambda)` and `C~ = ((lt-1)/(lt+1))^(1/lt)`.
//! The plain integral only converges for `Re(q - 1/lambda) > -1`. Integrating by
//! parts in `s` and then over `r` against `e^(-2r) r^n` gives
//!
//! ```text
//! I(p,q,n) = [ n!/2^(n+1) K(p,q+1,lambda,1) + I(p,q+1,n+1) - (p+1/lambda) I(p-1,q+1,n) ] / (q+1-1/lambda)
//! ```
//!
//! which continues the definition one unit of `q` at a time. Each application
//! raises `q` in every child. The denominators vanish at the intermediate
//! resonances `omega_n = (1 - 1/n^2)/2`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{
    kernel_from_parts, ln_prefactor, ln_prefactor_tilde, BranchedLambda, KernelParams, Regime,
};
use crate::quadrature::{integrate, QuadConfig};

pub const DEFAULT_POLE_GUARD: f64 = 1e-10;
pub const DEFAULT_WARN_BAND: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IntegralKind {
    /// `I(p, q, lambda, n)`, integrated from `lambda` to 1.
    Plain,
    /// `I~(p, q, lambda_tilde, n)`, integrated from 1 to `lambda_tilde`.
    Tilde,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntegralSpec {
    pub p: i32,
    pub q: i32,
    pub n: u32,
    pub kind: IntegralKind,
}

impl IntegralSpec {
    pub const fn plain(p: i32, q: i32, n: u32) -> Self {
        Self {
            p,
            q,
            n,
            kind: IntegralKind::Plain,
        }
    }

    pub const fn tilde(p: i32, q: i32, n: u32) -> Self {
        Self {
            p,
            q,
            n,
            kind: IntegralKind::Tilde,
        }
    }
}

/// Diagnostics from one continued evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContinuationReport {
    /// Number of recurrence levels applied.
    pub depth: u32,
    /// Smallest `|q + 1 - 1/lambda|` over the applied levels; infinite when `depth == 0`.
    pub min_denominator: f64,
    pub near_resonance: bool,
}

impl ContinuationReport {
    pub fn trivial() -> Self {
        Self {
            depth: 0,
            min_denominator: f64::INFINITY,
            near_resonance: false,
        }
    }

    /// Combined diagnostics of two integrals entering the same observable.
    pub fn merge(self, other: Self) -> Self {
        Self {
            depth: self.depth.max(other.depth),
            min_denominator: self.min_denominator.min(other.min_denominator),
            near_resonance: self.near_resonance || other.near_resonance,
        }
    }
}

/// Integration path for the plain sector.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum Contour {
    /// Arc of the circle through `-lambda`, `lambda` and 1 above threshold,
    /// the straight segment below it. On that circle the modulus of
    /// `((s + lambda)/(s - lambda))^(1/lambda)` is constant, which keeps the
    /// integrand well scaled as `1/lambda` grows near threshold.
    #[default]
    Circular,
    /// Straight segment from `lambda` to 1.
    Straight,
    /// Two segments, `lambda -> via -> 1`.
    Detour(Complex64),
}

impl Contour {
    /// The detour through `(1 + lambda)/2 + 0.1 i`.
    pub fn standard_detour(lam: &BranchedLambda) -> Self {
        Contour::Detour((1.0 + lam.lambda()) * 0.5 + Complex64::new(0.0, 0.1))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContinuationConfig {
    /// Continue until `Re(q - 1/lambda) > sigma_min` at the leaves.
    pub sigma_min: f64,
    /// Minimum admissible `|q + 1 - 1/lambda|`.
    pub pole_guard: f64,
    /// `near_resonance` is reported below this denominator.
    pub warn_band: f64,
    pub quad: QuadConfig,
    pub contour: Contour,
    /// Override the number of recurrence levels.
    pub forced_depth: Option<u32>,
}

impl Default for ContinuationConfig {
    fn default() -> Self {
        Self {
            sigma_min: 0.0,
            pole_guard: DEFAULT_POLE_GUARD,
            warn_band: DEFAULT_WARN_BAND,
            quad: QuadConfig::default(),
            contour: Contour::Circular,
            forced_depth: None,
        }
    }
}

/// `omega_n = (1 - 1/n^2)/2`.
pub fn resonance_frequency(n: u32) -> f64 {
    let n = f64::from(n);
    0.5 * (1.0 - 1.0 / (n * n))
}

/// Intermediate resonance frequencies for `n = 2..=n_max`, ascending.
pub fn resonance_locator(n_max: u32) -> Result<Vec<f64>> {
    if n_max < 2 {
        return Err(Error::InvalidArgument(format!(
            "n_max must be at least 2, got {n_max}"
        )));
    }
    Ok((2..=n_max).map(resonance_frequency).collect())
}

/// Resonance `(n, omega_n)` closest to `omega` below threshold.
pub fn nearest_resonance(omega: f64) -> Option<(u32, f64)> {
    if !(omega > 0.0 && omega < 0.5) {
        return None;
    }
    let inv_lambda = 1.0 / (1.0 - 2.0 * omega).sqrt();
    let lo = (inv_lambda.floor() as u32).max(2);
    let n = [lo, lo + 1]
        .into_iter()
        .min_by(|a, b| {
            let da = (resonance_frequency(*a) - omega).abs();
            let db = (resonance_frequency(*b) - omega).abs();
            da.total_cmp(&db)
        })
        .unwrap_or(2);
    Some((n, resonance_frequency(n)))
}

/// Number of recurrence levels needed for `Re(q + depth - 1/lambda) > sigma_min`.
pub fn required_depth(q: i32, lam: &BranchedLambda, sigma_min: f64) -> u32 {
    let x = lam.inv_lambda().re - f64::from(q) + sigma_min;
    if x <= 0.0 {
        0
    } else {
        x.ceil() as u32
    }
}

fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * f64::from(k))
}

struct Segment {
    start: Complex64,
    delta: Complex64,
    /// `start - lambda`, exact zero for a segment leaving the branch point.
    offset: Complex64,
}

/// The arc `s = centre + radius e^{i phi}`, `phi` running from `phi0` down to 0.
struct Arc {
    centre: f64,
    radius: f64,
    phi0: f64,
}

impl Arc {
    fn through(lam: &BranchedLambda) -> Self {
        let w = lam.omega().get();
        let centre = 1.0 - w;
        let phi0 = (lam.lambda() - centre).arg();
        Self { centre, radius: w, phi0 }
    }

    /// `(s, s - lambda, ds/dt)` at parameter `t` in [0, 1].
    fn point(&self, t: f64) -> (Complex64, Complex64, Complex64) {
        let phi = self.phi0 * (1.0 - t);
        let e = Complex64::from_polar(1.0, phi);
        let s = self.centre + self.radius * e;
        let half = Complex64::from_polar(1.0, 0.5 * (phi + self.phi0));
        let s_minus = Complex64::new(0.0, 2.0 * self.radius) * half * (-0.5 * self.phi0 * t).sin();
        let ds = Complex64::new(0.0, -self.radius * self.phi0) * e;
        (s, s_minus, ds)
    }
}

enum Piece {
    Line(Segment),
    Arc(Arc),
}

fn pieces(lam: &BranchedLambda, contour: Contour) -> Vec<Piece> {
    let l = lam.lambda();
    let zero = Complex64::new(0.0, 0.0);
    let straight = || {
        vec![Piece::Line(Segment {
            start: l,
            delta: lam.one_minus_lambda(),
            offset: zero,
        })]
    };
    match contour {
        Contour::Circular if lam.regime() == Regime::AboveThreshold => vec![Piece::Arc(Arc::through(lam))],
        Contour::Circular | Contour::Straight => straight(),
        Contour::Detour(via) => vec![
            Piece::Line(Segment {
                start: l,
                delta: via - l,
                offset: zero,
            }),
            Piece::Line(Segment {
                start: via,
                delta: 1.0 - via,
                offset: via - l,
            }),
        ],
    }
}

/// `I / n!` for the plain sector without continuation.
fn scaled_plain(
    p: i32,
    q: i32,
    n: u32,
    lam: &BranchedLambda,
    cfg: &ContinuationConfig,
) -> Result<Complex64> {
    let inv = lam.inv_lambda();
    let b = f64::from(q) - inv;
    if b.re <= -1.0 {
        return Err(Error::Domain(format!(
            "plain integral ({p},{q},n={n}) diverges at s = lambda: Re(q - 1/lambda) = {} <= -1",
            b.re
        )));
    }
    let l = lam.lambda();
    let ln_pref = ln_prefactor(l, lam.one_minus_lambda());
    let params = KernelParams::new(p, q);
    let power = f64::from(n) + 1.0;
    let real = lam.regime() == Regime::BelowThreshold && !matches!(cfg.contour, Contour::Detour(_));
    let mut total = Complex64::new(0.0, 0.0);
    for piece in pieces(lam, cfg.contour) {
        let seg = match piece {
            Piece::Line(seg) => seg,
            Piece::Arc(arc) => {
                let f = |t: f64| {
                    let (s, s_minus, ds) = arc.point(t);
                    let k = kernel_from_parts(params, inv, ln_pref, s + l, s_minus);
                    k * (-power * (1.0 + s).ln()).exp() * ds
                };
                total += integrate(f, 0.0, 1.0, &cfg.quad)?.value;
                continue;
            }
        };
        let at_branch_point = seg.offset == Complex64::new(0.0, 0.0);
        if at_branch_point && b.im == 0.0 && b.re < 0.0 {
            // t = u^m with m = 1/(1 + b) absorbs the t^b endpoint singularity.
            let m = 1.0 / (1.0 + b.re);
            let ln_delta = seg.delta.ln();
            let a = f64::from(p) + inv;
            let f = |u: f64| {
                let s = seg.start + seg.delta * u.powf(m);
                let ln_k = ln_pref + a * (s + l).ln() + b * ln_delta - power * (1.0 + s).ln();
                ln_k.exp() * seg.delta * m
            };
            total += integrate(f, 0.0, 1.0, &cfg.quad)?.value;
            continue;
        }
        let f = |t: f64| {
            let s_minus = seg.offset + seg.delta * t;
            let s = seg.start + seg.delta * t;
            let s_plus = s + l;
            let k = kernel_from_parts(params, inv, ln_pref, s_plus, s_minus);
            k * (-power * (1.0 + s).ln()).exp() * seg.delta
        };
        total += integrate(f, 0.0, 1.0, &cfg.quad)?.value;
    }
    if real {
        total.im = 0.0;
    }
    Ok(total)
}

/// `I~ / n!`; the tilde integrand is real for every `omega > 0`.
fn scaled_tilde(p: i32, q: i32, n: u32, lam: &BranchedLambda, cfg: &ContinuationConfig) -> Result<f64> {
    let lt = lam.lambda_tilde();
    let tm1 = lam.tilde_minus_one();
    let inv = 1.0 / lt;
    let a = f64::from(p) + inv;
    let b = f64::from(q) - inv;
    if b <= -1.0 {
        return Err(Error::Domain(format!(
            "tilde integral ({p},{q},n={n}) diverges at s = lambda_tilde"
        )));
    }
    let ln_pref = ln_prefactor_tilde(lt, tm1);
    let power = f64::from(n) + 1.0;
    // s = lt - (lt - 1) t so that lt - s = (lt - 1) t carries no round-off.
    let f = |t: f64| {
        let gap = tm1 * t;
        let s = lt - gap;
        let v = (ln_pref + a * (lt + s).ln() + b * gap.ln() - power * (1.0 + s).ln()).exp();
        Complex64::new(v * tm1, 0.0)
    };
    Ok(integrate(f, 0.0, 1.0, &cfg.quad)?.value.re)
}

/// The integral evaluated directly by quadrature, with no recurrence applied.
/// Fails with a domain error where the defining integral diverges.
pub fn direct_integral(
    spec: IntegralSpec,
    lam: &BranchedLambda,
    cfg: &ContinuationConfig,
) -> Result<Complex64> {
    let nf = factorial(spec.n);
    match spec.kind {
        IntegralKind::Plain => Ok(scaled_plain(spec.p, spec.q, spec.n, lam, cfg)? * nf),
        IntegralKind::Tilde => Ok(Complex64::new(
            scaled_tilde(spec.p, spec.q, spec.n, lam, cfg)? * nf,
            0.0,
        )),
    }
}

fn pole_error(lam: &BranchedLambda, denominator: f64) -> Error {
    let omega = lam.omega().get();
    let (n, omega_n) = nearest_resonance(omega).unwrap_or((2, resonance_frequency(2)));
    Error::ResonancePole {
        omega,
        n,
        omega_n,
        denominator,
    }
}

/// `K(p, q, lambda, 1)` using the stored `1 - lambda`.
fn boundary_kernel(p: i32, q: i32, lam: &BranchedLambda) -> Complex64 {
    let l = lam.lambda();
    kernel_from_parts(
        KernelParams::new(p, q),
        lam.inv_lambda(),
        ln_prefactor(l, lam.one_minus_lambda()),
        1.0 + l,
        lam.one_minus_lambda(),
    )
}

/// One application of the recurrence for a plain-sector integral. `child`
/// supplies the two children `I(p,q+1,n+1)` and `I(p-1,q+1,n)`.
pub fn recurrence_step<F>(spec: IntegralSpec, lam: &BranchedLambda, pole_guard: f64, mut child: F) -> Result<Complex64>
where
    F: FnMut(IntegralSpec) -> Result<Complex64>,
{
    if spec.kind != IntegralKind::Plain {
        return Err(Error::InvalidArgument(
            "the recurrence applies to the plain sector only".into(),
        ));
    }
    let inv = lam.inv_lambda();
    let den = f64::from(spec.q + 1) - inv;
    if den.norm() < pole_guard {
        return Err(pole_error(lam, den.norm()));
    }
    let IntegralSpec { p, q, n, .. } = spec;
    let boundary = boundary_kernel(p, q + 1, lam) * factorial(n) * 0.5f64.powi(n as i32 + 1);
    let up = child(IntegralSpec::plain(p, q + 1, n + 1))?;
    let side = child(IntegralSpec::plain(p - 1, q + 1, n))?;
    Ok((boundary + up - (f64::from(p) + inv) * side) / den)
}

/// Evaluate `spec` for the given `lambda`, continuing past the `s = lambda`
/// endpoint singularity as configured.
pub fn integral_i(
    spec: IntegralSpec,
    lam: &BranchedLambda,
    cfg: &ContinuationConfig,
) -> Result<(Complex64, ContinuationReport)> {
    if spec.kind == IntegralKind::Tilde {
        let v = direct_integral(spec, lam, cfg)?;
        return Ok((v, ContinuationReport::trivial()));
    }
    let depth = cfg
        .forced_depth
        .unwrap_or_else(|| required_depth(spec.q, lam, cfg.sigma_min));
    let inv = lam.inv_lambda();
    let dens: Vec<Complex64> = (0..depth)
        .map(|k| f64::from(spec.q + k as i32 + 1) - inv)
        .collect();
    let mut min_denominator = f64::INFINITY;
    for d in &dens {
        let m = d.norm();
        if m < cfg.pole_guard {
            return Err(pole_error(lam, m));
        }
        min_denominator = min_denominator.min(m);
    }

    // Memoized sweep over the recurrence tree: level k holds
    // J(p0 - j, q0 + k, n0 + k - j) = I / n! for j = 0..=k.
    let IntegralSpec { p: p0, q: q0, n: n0, .. } = spec;
    let d = depth as i32;
    let mut level = (0..=d)
        .map(|j| scaled_plain(p0 - j, q0 + d, n0 + (d - j) as u32, lam, cfg))
        .collect::<Result<Vec<_>>>()?;
    for k in (0..d).rev() {
        let q = q0 + k;
        let den = dens[k as usize];
        level = (0..=k)
            .map(|j| {
                let p = p0 - j;
                let n = n0 + (k - j) as u32;
                let boundary = boundary_kernel(p, q + 1, lam) * 0.5f64.powi(n as i32 + 1);
                (boundary + f64::from(n + 1) * level[j as usize]
                    - (f64::from(p) + inv) * level[j as usize + 1])
                    / den
            })
            .collect();
    }
    let mut value = level[0] * factorial(n0);
    if lam.regime() == Regime::BelowThreshold {
        value.im = 0.0;
    }
    Ok((
        value,
        ContinuationReport {
            depth,
            min_denominator,
            near_resonance: min_denominator < cfg.warn_band,
        },
    ))
}

/// `d^k/dr^k Phi(p, q, lambda, r) = int_lambda^1 ds (1-s)^k e^(-r(s-1)) K(p,q,lambda,s)`,
/// straight contour, defined only where the integral converges.
pub fn phi(params: KernelParams, lam: &BranchedLambda, r: f64, order: u32, quad: &QuadConfig) -> Result<Complex64> {
    let inv = lam.inv_lambda();
    if (f64::from(params.q) - inv).re <= -1.0 {
        return Err(Error::Domain("Phi diverges at s = lambda for these exponents".into()));
    }
    let l = lam.lambda();
    let delta = lam.one_minus_lambda();
    let ln_pref = ln_prefactor(l, delta);
    let b = f64::from(params.q) - inv;
    if b.im == 0.0 && b.re < 0.0 {
        let m = 1.0 / (1.0 + b.re);
        let a = f64::from(params.p) + inv;
        let ln_delta = delta.ln();
        let f = |u: f64| {
            let t = u.powf(m);
            let s = l + delta * t;
            let one_minus_s = delta * (1.0 - t);
            let k = (ln_pref + a * (s + l).ln() + b * ln_delta).exp();
            k * (r * one_minus_s).exp() * one_minus_s.powu(order) * delta * m
        };
        return Ok(integrate(f, 0.0, 1.0, quad)?.value);
    }
    let f = |t: f64| {
        let s_minus = delta * t;
        let s = l + s_minus;
        let one_minus_s = delta * (1.0 - t);
        let k = kernel_from_parts(params, inv, ln_pref, s + l, s_minus);
        k * (r * one_minus_s).exp() * one_minus_s.powu(order) * delta
    };
    Ok(integrate(f, 0.0, 1.0, quad)?.value)
}

/// `d^k/dr^k Phi~(p, q, lambda_tilde, r) = int_1^lt ds (1-s)^k e^(-r(s-1)) K~(p,q,lt,s)`.
pub fn phi_tilde(params: KernelParams, lam: &BranchedLambda, r: f64, order: u32, quad: &QuadConfig) -> Result<f64> {
    let lt = lam.lambda_tilde();
    let tm1 = lam.tilde_minus_one();
    let inv = 1.0 / lt;
    let a = f64::from(params.p) + inv;
    let b = f64::from(params.q) - inv;
    if b <= -1.0 {
        return Err(Error::Domain("Phi~ diverges at s = lambda_tilde".into()));
    }
    let ln_pref = ln_prefactor_tilde(lt, tm1);
    let f = |t: f64| {
        let gap = tm1 * t;
        let s = lt - gap;
        let one_minus_s = -(tm1 - gap);
        let k = (ln_pref + a * (lt + s).ln() + b * gap.ln()).exp();
        Complex64::new(k * (r * one_minus_s).exp() * one_minus_s.powi(order as i32) * tm1, 0.0)
    };
    Ok(integrate(f, 0.0, 1.0, quad)?.value.re)
}
