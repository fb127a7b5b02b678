use std::f64::consts::PI;

use acstark::observables::{unpolarized_angular_factor, ATOMIC_INTENSITY_W_CM2, STATIC_POLARIZABILITY};
use acstark::quadrature::{integrate, QuadConfig};
use acstark::{
    cross_section_polarized, cross_section_unpolarized, kh_matrix, p_term, stark_shift, tau2, Error, Observable,
    PhotonFrequency,
};
use num_complex::Complex64;

fn w(x: f64) -> PhotonFrequency {
    PhotonFrequency::new(x).unwrap()
}

fn tau(x: f64) -> Complex64 {
    tau2(w(x)).unwrap().value
}

fn m(x: f64) -> Complex64 {
    kh_matrix(w(x)).unwrap().value
}

/// Exact 1s photoionization cross-section divided into the optical theorem:
/// `Im tau = sigma(omega) c / (4 pi omega)`, with `c` cancelling.
fn im_tau_from_photoionization(omega: f64) -> f64 {
    let k = (2.0 * omega - 1.0).sqrt();
    let eta = 1.0 / k;
    let sigma_times_c = 512.0 * PI * PI / 3.0 * (0.5 / omega).powi(4) * (-4.0 * eta * k.atan()).exp()
        / (1.0 - (-2.0 * PI * eta).exp());
    sigma_times_c / (4.0 * PI * omega)
}

#[test]
fn polarizability_examples() {
    assert!((tau(0.1).re + 4.7843).abs() < 1.5e-4);
    let t = tau(1.0);
    assert!((t.re - 1.205).abs() < 1.5e-3 && (t.im - 0.362).abs() < 1.5e-3);
    assert!((tau(1e-3).re + 4.50003).abs() < 5e-6);
    let r = tau2(w(0.6)).unwrap();
    assert_eq!(r.observable, Observable::Tau2);
    assert_eq!(r.omega.get(), 0.6);
}

#[test]
fn kramers_heisenberg_examples() {
    assert!((m(0.4).re - 2.6916).abs() < 1.5e-4);
    let v = m(1.0);
    assert!((v.re - 1.20598).abs() < 1.5e-5 && (v.im - 0.3627).abs() < 1.5e-4);
    assert!((m(0.02).re + 0.0018).abs() < 1.5e-4);
    let v = m(20.0);
    assert!((v.re - 1.00236).abs() < 1.5e-5 && (v.im - 0.00066).abs() < 1.5e-5);
    assert_eq!(kh_matrix(w(2.0)).unwrap().observable, Observable::KHMatrix);
}

#[test]
fn imaginary_part_matches_photoionization_cross_section() {
    for x in [0.500001, 0.5001, 0.501, 0.505, 0.51, 0.6, 1.0, 2.0, 5.0, 10.0, 30.0] {
        let exact = im_tau_from_photoionization(x);
        let t = tau(x).im;
        assert!((t - exact).abs() < 1e-9 * exact, "omega={x}: {t} vs {exact}");
        let mi = m(x).im;
        assert!((mi - x * x * exact).abs() < 1e-9 * x * x * exact);
    }
}

#[test]
fn gauge_identity_at_sample_points() {
    for x in [1e-3, 0.02, 0.2, 0.36, 0.4, 0.45, 0.47, 0.6, 1.0, 2.0, 10.0, 90.0] {
        let lhs = m(x);
        let rhs = tau(x) * (x * x);
        assert!((lhs - rhs).norm() < 1e-10 * lhs.norm().max(1.0), "omega={x}: {lhs} vs {rhs}");
    }
}

#[test]
fn static_and_rayleigh_limits() {
    let a = tau(1e-3).re;
    let b = tau(2e-3).re;
    let extrapolated = (4.0 * a - b) / 3.0;
    assert!((extrapolated - STATIC_POLARIZABILITY).abs() < 1e-6);
    for x in [1e-3, 3e-3] {
        assert!((m(x).re / (x * x) - STATIC_POLARIZABILITY).abs() < 1e-3);
    }
}

#[test]
fn dispersion_terms_rebuild_the_amplitude() {
    let x = 0.3;
    let plus = p_term(x).unwrap().value;
    let minus = p_term(-x).unwrap().value;
    let rebuilt = 1.0 - plus - minus;
    assert!((rebuilt - m(x)).norm() < 1e-12 * m(x).norm());
    assert_eq!(p_term(x).unwrap().observable, Observable::PTerm);

    let sum = p_term(0.43).unwrap().value + p_term(-0.43).unwrap().value;
    assert!((sum.re - 1.0549).abs() < 1.5e-4);

    let far: Vec<f64> = [10.0, 100.0, 1000.0]
        .iter()
        .map(|&x| (p_term(x).unwrap().value + p_term(-x).unwrap().value).norm())
        .collect();
    assert!(far[0] > far[1] && far[1] > far[2] && far[2] < 1e-2);
}

#[test]
fn thomson_limit_is_approached_monotonically() {
    let mut last = f64::INFINITY;
    for x in [2.0, 3.0, 5.0, 10.0, 20.0, 40.0, 90.0, 200.0] {
        let d = (m(x) - 1.0).norm();
        assert!(d < last, "omega={x}");
        last = d;
    }
    let v = m(90.0);
    assert!((v.re - 1.00014).abs() < 1.5e-5 && (v.im - 0.0000196).abs() < 1.5e-7);
}

#[test]
fn values_are_real_below_threshold() {
    for k in 1..50 {
        let x = 0.499 * f64::from(k) / 50.0;
        if acstark::scan::resonance_denominator(x).is_some_and(|d| d < 1e-4) {
            continue;
        }
        for v in [tau(x), m(x)] {
            assert!(v.im.abs() < 1e-10 * v.re.abs().max(1.0), "omega={x}: {v}");
        }
    }
}

#[test]
fn level_shift_changes_sign_across_resonances() {
    assert!((tau(0.43).re + 0.2971).abs() < 1.5e-4);
    assert!((tau(0.46).re - 3.9273).abs() < 1.5e-4);
    let below = tau(0.375 - 1e-4).re;
    let above = tau(0.375 + 1e-4).re;
    assert!(below < 0.0 && above > 0.0);
    let w3 = 4.0 / 9.0;
    assert!(tau(w3 - 1e-5).re.signum() != tau(w3 + 1e-5).re.signum());
}

#[test]
fn stark_shift_examples() {
    let z = stark_shift(w(1.0), 0.0).unwrap();
    assert_eq!((z.delta_e, z.gamma), (0.0, 0.0));
    let s = stark_shift(w(1.0), ATOMIC_INTENSITY_W_CM2).unwrap();
    assert!((s.delta_e + 1.205).abs() < 1.5e-3);
    assert!((s.gamma - 0.362).abs() < 1.5e-3 && s.gamma > 0.0);
    assert_eq!(s.intensity, ATOMIC_INTENSITY_W_CM2);
    let s = stark_shift(w(0.1), ATOMIC_INTENSITY_W_CM2).unwrap();
    assert!((s.delta_e - 4.7843).abs() < 1.5e-4);
    assert_eq!(s.gamma, 0.0);
    let half = stark_shift(w(0.1), 0.5 * ATOMIC_INTENSITY_W_CM2).unwrap();
    assert!((half.delta_e - 0.5 * s.delta_e).abs() < 1e-14);
    assert!(matches!(stark_shift(w(1.0), -1.0), Err(Error::InvalidArgument(_))));
}

#[test]
fn polarized_cross_section_examples() {
    assert_eq!(cross_section_polarized(w(10.0), 0.0).unwrap(), 0.0);
    let v = cross_section_polarized(w(10.0), 1.0).unwrap();
    assert!((v - 1.01627).abs() < 1e-4, "{v}");
    let v = cross_section_polarized(w(0.002), 1.0).unwrap();
    assert!((v - 3.24e-10).abs() < 0.06 * 3.24e-10, "{v}");
    let half = cross_section_polarized(w(0.002), 0.5).unwrap();
    assert!((half - 0.25 * v).abs() < 1e-24);
    assert!(cross_section_polarized(w(1.0), 1.5).is_err());
}

#[test]
fn unpolarized_cross_section_examples() {
    let forward = cross_section_unpolarized(w(3.0), 0.0).unwrap();
    let side = cross_section_unpolarized(w(3.0), PI / 2.0).unwrap();
    assert!((side.value - 0.5 * forward.value).abs() < 1e-15);
    assert_eq!(forward.msquared, m(3.0).norm_sqr());
    assert!(forward.value >= 0.0);
    let far = cross_section_unpolarized(w(90.0), 1.0).unwrap();
    assert!((far.msquared - 1.00028).abs() < 1e-5);
    assert!((far.msquared - 1.0).abs() < 3e-4);
    assert!(cross_section_unpolarized(w(3.0), -0.1).is_err());
    assert!(cross_section_unpolarized(w(3.0), 3.2).is_err());
}

#[test]
fn angular_factor_integrates_to_eight_pi_over_three() {
    let r = integrate(
        |t| Complex64::new(2.0 * PI * unpolarized_angular_factor(t) * t.sin(), 0.0),
        0.0,
        PI,
        &QuadConfig::default(),
    )
    .unwrap();
    assert!((r.value.re - 8.0 * PI / 3.0).abs() < 1e-12);
}

#[test]
fn domain_errors() {
    assert!(matches!(tau2(w(0.375)), Err(Error::ResonancePole { n: 2, .. })));
    assert!(matches!(kh_matrix(w(0.5)), Err(Error::ThresholdProximity { .. })));
    assert!(PhotonFrequency::new(0.0).is_err());
    assert!(PhotonFrequency::new(-1.0).is_err());
    assert!(PhotonFrequency::new(f64::NAN).is_err());
    assert!(p_term(0.0).is_err());
}
