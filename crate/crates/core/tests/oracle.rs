use acstark::continuation::{phi, phi_tilde};
use acstark::oracle::{oracle_tau2_with, solve_dalgarno_with, OracleConfig, RESIDUAL_LIMIT};
use acstark::quadrature::QuadConfig;
use acstark::{kh_matrix, lambda_pair, oracle_kh, oracle_tau2, solve_dalgarno, tau2, KernelParams, PhotonFrequency, Which};
use num_complex::Complex64;

fn w(x: f64) -> PhotonFrequency {
    PhotonFrequency::new(x).unwrap()
}

#[test]
fn oracle_matches_closed_form_below_first_resonance() {
    for x in [0.05, 0.1, 0.2, 0.3] {
        let t = tau2(w(x)).unwrap().value;
        let m = kh_matrix(w(x)).unwrap().value;
        let ot = oracle_tau2(w(x)).unwrap();
        let om = oracle_kh(w(x)).unwrap();
        assert!((ot - t).norm() < 1e-8 * t.norm(), "tau at {x}: {ot} vs {t}");
        assert!((om - m).norm() < 1e-8 * m.norm(), "M at {x}: {om} vs {m}");
    }
}

#[test]
fn extended_oracle_between_second_and_third_resonance() {
    let x = w(0.45);
    let t = tau2(x).unwrap().value;
    let ot = oracle_tau2_with(x, &OracleConfig::extended()).unwrap();
    assert!((ot - t).norm() < 1e-8 * t.norm(), "{ot} vs {t}");
}

#[test]
fn oracle_reproduces_published_values() {
    assert!((oracle_tau2(w(0.1)).unwrap().re + 4.7843).abs() < 1e-3);
    assert!((oracle_tau2(w(0.2)).unwrap().re + 5.9416).abs() < 1e-3);
    assert!((oracle_kh(w(0.3)).unwrap().re + 0.9507).abs() < 1e-3);
}

#[test]
fn solutions_have_small_residual() {
    for x in [0.01, 0.1, 0.3, 0.37] {
        for which in [Which::F, Which::FTilde, Which::U, Which::UTilde] {
            let s = solve_dalgarno(w(x), which).unwrap();
            assert!(s.residual() < RESIDUAL_LIMIT, "{which:?} at {x}: {}", s.residual());
            assert_eq!(s.grid.len(), s.values.len());
            assert!(s.grid[0] > 0.0 && s.r_max() >= 25.0);
        }
    }
}

#[test]
fn u_is_affine_in_f() {
    let x = 0.2;
    let f = solve_dalgarno(w(x), Which::F).unwrap();
    let u = solve_dalgarno(w(x), Which::U).unwrap();
    let ft = solve_dalgarno(w(x), Which::FTilde).unwrap();
    let ut = solve_dalgarno(w(x), Which::UTilde).unwrap();
    let i = Complex64::new(0.0, 1.0);
    for k in 0..f.grid.len() {
        let r = f.grid[k];
        if r > 10.0 {
            break;
        }
        let link = i * (f.values[k] * x - 1.0);
        assert!((u.values[k] - link).norm() < 1e-10, "u at r={r}");
        let link_tilde = -i * (ft.values[k] * x + 1.0);
        assert!((ut.values[k] - link_tilde).norm() < 1e-10, "u~ at r={r}");
    }
}

#[test]
fn closed_form_functions_solve_the_radial_equations() {
    let x = 0.2;
    let lam = lambda_pair(w(x)).unwrap();
    let quad = QuadConfig::default().with_tolerance(1e-14);
    let params = KernelParams::new(1, 1);
    let c = 1.0 / (2.0 * x * x * x);
    let f_sol = solve_dalgarno(w(x), Which::F).unwrap();
    let ft_sol = solve_dalgarno(w(x), Which::FTilde).unwrap();
    for r in [0.25, 1.0, 2.0, 4.0, 8.0] {
        let d: Vec<f64> = (0..3).map(|k| phi(params, &lam, r, k, &quad).unwrap().re).collect();
        let (f, f1, f2) = (1.0 / x - c * d[0], -c * d[1], -c * d[2]);
        let terms = [r * f2, (4.0 - 2.0 * r) * f1, (2.0 * x * r - 2.0) * f, 2.0 * r];
        let res = terms[0] + terms[1] + terms[2] - terms[3];
        let scale = terms.iter().map(|t| t.abs()).fold(0.0, f64::max);
        assert!(res.abs() < 1e-10 * scale, "f residual {res} at r={r}");
        assert!((f_sol.value_at(r).re - f).abs() < 1e-9 * f.abs().max(1.0), "f at r={r}");

        let d: Vec<f64> = (0..3).map(|k| phi_tilde(params, &lam, r, k, &quad).unwrap()).collect();
        let (g, g1, g2) = (-1.0 / x + c * d[0], c * d[1], c * d[2]);
        let terms = [r * g2, (4.0 - 2.0 * r) * g1, -(2.0 * x * r + 2.0) * g, 2.0 * r];
        let res = terms[0] + terms[1] + terms[2] - terms[3];
        let scale = terms.iter().map(|t| t.abs()).fold(0.0, f64::max);
        assert!(res.abs() < 1e-10 * scale, "f~ residual {res} at r={r}");
        assert!((ft_sol.value_at(r).re - g).abs() < 1e-9 * g.abs().max(1.0), "f~ at r={r}");
    }
}

#[test]
fn moments_are_consistent_with_direct_radial_quadrature() {
    // int r^4 e^-2r f over the collocation grid, compared with the series moment.
    let f = solve_dalgarno_with(w(0.1), Which::F, &OracleConfig::default()).unwrap();
    let cfg = QuadConfig::default().with_tolerance(1e-13);
    let direct = acstark::quadrature::integrate(
        |r| if r == 0.0 { Complex64::new(0.0, 0.0) } else { f.reduced(r) * (r * r * (-r).exp()) },
        0.0,
        f.r_max(),
        &cfg,
    )
    .unwrap()
    .value;
    assert!((direct - f.moment(4)).norm() < 1e-11 * direct.norm());
}

#[test]
fn oracle_refuses_resonant_region_by_default() {
    assert!(oracle_tau2(w(0.4)).is_err());
    assert!(oracle_kh(w(0.8)).is_err());
}
