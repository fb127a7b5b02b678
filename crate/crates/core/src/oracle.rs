//! Independent check of the closed-form evaluation: the radial Dalgarno-Lewis
//! equations are solved numerically as boundary-value problems and the
//! observables are recovered by radial quadrature.
//!
//! Each function `g` in `{f, f~, u, u~}` solves
//!
//! ```text
//! r g'' + (4 - 2r) g' + (+-2 omega r - 2) g = src,   src = 2r (f) or 2i (u),
//! ```
//!
//! with the upper sign for the untilded functions. With `P = r^2 e^-r g` this
//! becomes `P'' + (2/r - 2/r^2 - 1 +- 2 omega) P = r e^-r src`, and the
//! regular, decaying solution has `P(0) = 0` and `P(r_max) = 0`. The reduced
//! function is solved by Chebyshev collocation on `[0, r_max]`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::continuation::resonance_frequency;
use crate::error::{Error, Result};
use crate::kernel::PhotonFrequency;

/// Largest residual accepted from a solve, in the scaled norm of
/// [`RadialSolution::residual`].
pub const RESIDUAL_LIMIT: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Which {
    F,
    FTilde,
    U,
    UTilde,
}

impl Which {
    fn is_tilde(self) -> bool {
        matches!(self, Which::FTilde | Which::UTilde)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    /// Outer boundary; `None` picks one from the slowest decay rate.
    pub r_max: Option<f64>,
    /// Chebyshev polynomial degree; `None` scales it with `r_max`.
    pub degree: Option<usize>,
    /// Accept `0.375 <= omega < 0.5`, where the untilded solutions pass
    /// through the intermediate resonances.
    pub extend_past_first_resonance: bool,
    /// Minimum relative distance to a resonance when extended.
    pub resonance_guard: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            r_max: None,
            degree: None,
            extend_past_first_resonance: false,
            resonance_guard: 1e-6,
        }
    }
}

impl OracleConfig {
    pub fn extended() -> Self {
        Self {
            extend_past_first_resonance: true,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadialSolution {
    /// Interior collocation radii, ascending.
    pub grid: Vec<f64>,
    /// The solution `g(r)` at `grid`.
    pub values: Vec<Complex64>,
    pub which: Which,
    omega: f64,
    r_max: f64,
    /// Chebyshev coefficients of `P(r) = r^2 e^-r g(r)` in `x = 1 - 2r/r_max`.
    coeffs: Vec<Complex64>,
}

/// Chebyshev points `x_j = cos(pi j / n)` and the first-derivative matrix.
fn chebyshev(n: usize) -> (Vec<f64>, DMatrix<f64>) {
    let x: Vec<f64> = (0..=n)
        .map(|j| (std::f64::consts::PI * j as f64 / n as f64).cos())
        .collect();
    let c = |j: usize| {
        let edge = if j == 0 || j == n { 2.0 } else { 1.0 };
        if j.is_multiple_of(2) {
            edge
        } else {
            -edge
        }
    };
    let mut d = DMatrix::<f64>::zeros(n + 1, n + 1);
    for i in 0..=n {
        for j in 0..=n {
            if i != j {
                d[(i, j)] = c(i) / c(j) / (x[i] - x[j]);
            }
        }
    }
    // Diagonal by negative row sums, which is more accurate than the closed form.
    for i in 0..=n {
        let s: f64 = (0..=n).filter(|&j| j != i).map(|j| d[(i, j)]).sum();
        d[(i, i)] = -s;
    }
    (x, d)
}

/// Coefficients `a_k` with `g(x) = sum_k a_k T_k(x)` from values at the
/// Chebyshev points.
fn chebyshev_coefficients(values: &[Complex64]) -> Vec<Complex64> {
    let n = values.len() - 1;
    let nf = n as f64;
    (0..=n)
        .map(|k| {
            let mut sum = Complex64::new(0.0, 0.0);
            for (j, v) in values.iter().enumerate() {
                let half = if j == 0 || j == n { 0.5 } else { 1.0 };
                let angle = std::f64::consts::PI * ((j * k) % (2 * n)) as f64 / nf;
                sum += v * (half * angle.cos());
            }
            let edge = if k == 0 || k == n { 0.5 } else { 1.0 };
            sum * (2.0 * edge / nf)
        })
        .collect()
}

fn clenshaw(coeffs: &[Complex64], x: f64) -> Complex64 {
    let mut b1 = Complex64::new(0.0, 0.0);
    let mut b2 = Complex64::new(0.0, 0.0);
    for &a in coeffs.iter().skip(1).rev() {
        let b0 = a + b1 * (2.0 * x) - b2;
        b2 = b1;
        b1 = b0;
    }
    coeffs[0] + b1 * x - b2
}

/// Coefficients of `d/dx` of a Chebyshev series.
fn derivative_coefficients(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len();
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    if n < 2 {
        return out;
    }
    for k in (1..n).rev() {
        let next = if k + 1 < n { out[k + 1] } else { Complex64::new(0.0, 0.0) };
        out[k - 1] = next + coeffs[k] * (2.0 * k as f64);
    }
    out[0] *= 0.5;
    out
}

/// `int_-1^1 g(x) dx` for a Chebyshev series.
fn integrate_series(coeffs: &[Complex64]) -> Complex64 {
    coeffs
        .iter()
        .enumerate()
        .filter(|(k, _)| k % 2 == 0)
        .map(|(k, &a)| a * (2.0 / (1.0 - (k * k) as f64)))
        .sum()
}

/// Right-hand side of the reduced equation, `r e^-r src`.
fn source(which: Which, r: f64) -> Complex64 {
    match which {
        Which::F | Which::FTilde => Complex64::new(2.0 * r * r * (-r).exp(), 0.0),
        Which::U | Which::UTilde => Complex64::new(0.0, 2.0 * r * (-r).exp()),
    }
}

fn potential(which: Which, omega: f64, r: f64) -> f64 {
    let shift = if which.is_tilde() { -2.0 * omega } else { 2.0 * omega };
    2.0 / r - 2.0 / (r * r) - 1.0 + shift
}

fn check_range(omega: f64, which: Which, cfg: &OracleConfig) -> Result<()> {
    if which.is_tilde() {
        return Ok(());
    }
    let first = resonance_frequency(2);
    if omega < first {
        return Ok(());
    }
    if !cfg.extend_past_first_resonance {
        return Err(Error::Domain(format!(
            "radial oracle is limited to omega < {first} unless extended, got {omega}"
        )));
    }
    if omega >= 0.5 {
        return Err(Error::Domain(format!(
            "radial oracle needs a bound-state decay rate, omega must be below 0.5, got {omega}"
        )));
    }
    let inv = 1.0 / (1.0 - 2.0 * omega).sqrt();
    let n = inv.round();
    if (inv - n).abs() < cfg.resonance_guard * n {
        return Err(Error::Domain(format!(
            "omega = {omega} is within the guard of the resonance n = {n}"
        )));
    }
    Ok(())
}

/// Solve for the regular radial function `which` at `omega`.
pub fn solve_dalgarno(omega: PhotonFrequency, which: Which) -> Result<RadialSolution> {
    solve_dalgarno_with(omega, which, &OracleConfig::default())
}

pub fn solve_dalgarno_with(omega: PhotonFrequency, which: Which, cfg: &OracleConfig) -> Result<RadialSolution> {
    let w = omega.get();
    check_range(w, which, cfg)?;
    // P decays like exp(-lambda r) in the untilded sector, and a boundary at
    // r_max perturbs the moments by about exp(-2 lambda r_max).
    let decay = if which.is_tilde() { 1.0 } else { (1.0 - 2.0 * w).sqrt().min(1.0) };
    let r_max = cfg.r_max.unwrap_or_else(|| (24.0 / decay).max(30.0));
    let n = cfg.degree.unwrap_or_else(|| ((2.5 * r_max) as usize).clamp(64, 400));

    let (x, dx) = chebyshev(n);
    let scale = -2.0 / r_max;
    let d1 = dx * scale;
    let d2 = &d1 * &d1;
    let r: Vec<f64> = x.iter().map(|&xi| 0.5 * r_max * (1.0 - xi)).collect();

    let mut a = d2;
    let mut rhs = DVector::<f64>::zeros(n + 1);
    for j in 1..n {
        a[(j, j)] += potential(which, w, r[j]);
        let s = source(which, r[j]);
        rhs[j] = s.re + s.im;
    }
    for j in [0, n] {
        a.row_mut(j).fill(0.0);
        a[(j, j)] = 1.0;
        rhs[j] = 0.0;
    }
    let p = a
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::NonConvergence(format!("singular collocation system at omega = {w}")))?;
    let imaginary = matches!(which, Which::U | Which::UTilde);
    let reduced: Vec<Complex64> = p
        .iter()
        .map(|&v| if imaginary { Complex64::new(0.0, v) } else { Complex64::new(v, 0.0) })
        .collect();

    let coeffs = chebyshev_coefficients(&reduced);
    let grid: Vec<f64> = r[1..n].to_vec();
    let values = grid
        .iter()
        .zip(&reduced[1..n])
        .map(|(&ri, &pi)| pi * (ri.exp() / (ri * ri)))
        .collect();
    let sol = RadialSolution {
        grid,
        values,
        which,
        omega: w,
        r_max,
        coeffs,
    };
    let res = sol.residual();
    if res.is_nan() || res >= RESIDUAL_LIMIT {
        return Err(Error::NonConvergence(format!(
            "radial residual {res:e} exceeds {RESIDUAL_LIMIT:e} at omega = {w}"
        )));
    }
    Ok(sol)
}

impl RadialSolution {
    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    fn x_of(&self, r: f64) -> f64 {
        1.0 - 2.0 * r / self.r_max
    }

    /// `P(r) = r^2 e^-r g(r)`.
    pub fn reduced(&self, r: f64) -> Complex64 {
        clenshaw(&self.coeffs, self.x_of(r))
    }

    /// `g(r)` for `0 < r <= r_max`, interpolated from the collocation solution.
    pub fn value_at(&self, r: f64) -> Complex64 {
        self.reduced(r) * (r.exp() / (r * r))
    }

    /// `int_0^inf r^n e^-2r g(r) dr` for `n >= 1`.
    pub fn moment(&self, n: i32) -> Complex64 {
        let m = self.coeffs.len() - 1;
        let samples: Vec<Complex64> = (0..=m)
            .map(|j| {
                let xj = (std::f64::consts::PI * j as f64 / m as f64).cos();
                let r = 0.5 * self.r_max * (1.0 - xj);
                if r == 0.0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    self.reduced(r) * (r.powi(n - 2) * (-r).exp())
                }
            })
            .collect();
        integrate_series(&chebyshev_coefficients(&samples)) * (0.5 * self.r_max)
    }

    /// Largest residual of the reduced equation at points between collocation
    /// nodes, divided by the largest of `|P''| + |V P| + |S|` over the same
    /// points.
    pub fn residual(&self) -> f64 {
        let c1 = derivative_coefficients(&self.coeffs);
        let c2 = derivative_coefficients(&c1);
        let m = self.coeffs.len() - 1;
        let jac = (2.0 / self.r_max).powi(2);
        let mut worst = 0.0f64;
        let mut size = 0.0f64;
        for j in 0..m {
            let theta = std::f64::consts::PI * (j as f64 + 0.5) / m as f64;
            let x = theta.cos();
            let r = 0.5 * self.r_max * (1.0 - x);
            let p = clenshaw(&self.coeffs, x);
            let p2 = clenshaw(&c2, x) * jac;
            let vp = p * potential(self.which, self.omega, r);
            let s = source(self.which, r);
            worst = worst.max((p2 + vp - s).norm());
            size = size.max(p2.norm() + vp.norm() + s.norm());
        }
        if size == 0.0 {
            0.0
        } else {
            worst / size
        }
    }
}

/// `tau2 = (4/3) int r^4 e^-2r (f + f~) dr`.
pub fn oracle_tau2(omega: PhotonFrequency) -> Result<Complex64> {
    oracle_tau2_with(omega, &OracleConfig::default())
}

pub fn oracle_tau2_with(omega: PhotonFrequency, cfg: &OracleConfig) -> Result<Complex64> {
    let f = solve_dalgarno_with(omega, Which::F, cfg)?;
    let ft = solve_dalgarno_with(omega, Which::FTilde, cfg)?;
    Ok((f.moment(4) + ft.moment(4)) * (4.0 / 3.0))
}

/// `M = 1 - (4i/3) int r^3 e^-2r (u + u~) dr`.
pub fn oracle_kh(omega: PhotonFrequency) -> Result<Complex64> {
    oracle_kh_with(omega, &OracleConfig::default())
}

pub fn oracle_kh_with(omega: PhotonFrequency, cfg: &OracleConfig) -> Result<Complex64> {
    let u = solve_dalgarno_with(omega, Which::U, cfg)?;
    let ut = solve_dalgarno_with(omega, Which::UTilde, cfg)?;
    Ok(Complex64::new(1.0, 0.0) - Complex64::new(0.0, 4.0 / 3.0) * (u.moment(3) + ut.moment(3)))
}
