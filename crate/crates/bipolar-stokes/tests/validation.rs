use std::f64::consts::PI;

use bipolar_stokes::assembly::{solve_flow, Background};
use bipolar_stokes::field::FieldSample;
use bipolar_stokes::geometry::{BipolarPoint, Geometry, Side, Sym2};
use bipolar_stokes::noslip::{self, ModeField, ModeSeries, Parity, F0};
use bipolar_stokes::singular::{h1_field, singular_constants};
use bipolar_stokes::validation::{
    contour_pairing, euler_maclaurin_check, fd_stokes_residual, fit_rate, sample_points, sup_norm_estimate,
    tensor_norm, CheckResult, Quantity, Weight,
};
use bipolar_stokes::Error;

fn geo(delta: f64) -> Geometry {
    Geometry::new(1.0, delta, 1.0).unwrap()
}

#[test]
fn singular_field_passes_fd_oracle() {
    let g = geo(1e-2);
    let pts = sample_points(&g, 50, 0.02 * g.delta.sqrt());
    assert_eq!(pts.len(), 50);
    for (x, y) in pts {
        assert!(g.inside_disk(x, y).is_none());
        let step = 1e-3 * g.distance_to_boundary(x, y).min(g.r);
        let r = fd_stokes_residual(&g, |x, y| h1_field(&g, g.to_bipolar(x, y)?), x, y, Some(step)).unwrap();
        assert!(r.momentum <= 1e-5 && r.divergence <= 1e-6, "({x},{y}): {r:?}");
    }
}

#[test]
fn composed_flow_is_divergence_free() {
    let g = geo(1e-2);
    let sol = solve_flow(&g, Background::new(0.7, 1.3, -0.4)).unwrap();
    for (x, y) in sample_points(&g, 30, 0.02 * g.delta.sqrt()) {
        let step = 1e-3 * g.distance_to_boundary(x, y).min(g.r);
        let r = fd_stokes_residual(&g, |x, y| sol.eval(x, y), x, y, Some(step)).unwrap();
        assert!(r.divergence <= 1e-6, "({x},{y}): {r:?}");
    }
}

#[test]
fn linear_field_has_zero_residual() {
    let g = geo(0.1);
    let lin = |x: f64, y: f64| -> bipolar_stokes::Result<FieldSample> {
        Ok(FieldSample::new((x, y), BipolarPoint::new(0.0, PI), [x, -y], 0.0, Sym2::new(1.0, 0.0, -1.0), 1.0))
    };
    let r = fd_stokes_residual(&g, lin, 0.0, 1.5, None).unwrap();
    assert!(r.momentum == 0.0 && r.divergence < 1e-12, "{r:?}");
}

#[test]
fn fd_residual_is_second_order() {
    let g = geo(0.1);
    let f = |x: f64, y: f64| h1_field(&g, g.to_bipolar(x, y)?);
    let (x, y) = (0.3, 1.3);
    let coarse = fd_stokes_residual(&g, f, x, y, Some(2e-2)).unwrap().momentum;
    let fine = fd_stokes_residual(&g, f, x, y, Some(1e-2)).unwrap().momentum;
    let ratio = coarse / fine;
    assert!((ratio - 4.0).abs() < 0.5, "{coarse} {fine}");
}

#[test]
fn stencil_too_close_to_wall() {
    let g = geo(0.1);
    let f = |x: f64, y: f64| h1_field(&g, g.to_bipolar(x, y)?);
    assert!(matches!(fd_stokes_residual(&g, f, 0.0, 0.0, Some(0.1)), Err(Error::Stencil { .. })));
}

#[test]
fn pairing_oracles() {
    let g = geo(1e-2);
    let i1 = contour_pairing(&g, |p| h1_field(&g, p), Weight::Psi1, Side::Right).unwrap();
    let closed = -4.0 * PI / (2.0 * g.s - (2.0 * g.s).tanh());
    assert!((i1 / closed - 1.0).abs() < 1e-7, "{i1} {closed}");

    let d0 = 0.37;
    let mut m = ModeSeries::zero(Parity::Even, 1);
    m.d0 = d0;
    let f = ModeField::new(&g, m, noslip::Background::None);
    let v = contour_pairing(&g, |p| f.sample(&g, p), Weight::Psi2, Side::Right).unwrap();
    assert!((v - 4.0 * PI * d0).abs() < 1e-9, "{v}");

    let k = -0.8;
    let mut m = ModeSeries::zero(Parity::Even, 1);
    m.log_k = k;
    let f = ModeField::new(&g, m, noslip::Background::None);
    let v = contour_pairing(&g, |p| f.sample(&g, p), Weight::Psi3, Side::Right).unwrap();
    assert!((v - 4.0 * PI * g.a * k).abs() < 1e-9, "{v}");
}

#[test]
fn pairing_of_singular_constants_scale() {
    // psi2 against h2~ recovers 4 pi mu A2
    let g = geo(1e-3);
    let a2 = singular_constants(&g).a2;
    let v = contour_pairing(&g, |p| bipolar_stokes::singular::h2_tilde_field(&g, p), Weight::Psi2, Side::Right)
        .unwrap();
    assert!((v / (4.0 * PI * a2) - 1.0).abs() < 1e-8);
}

#[test]
fn synthetic_rates() {
    let pairs: Vec<_> = [1e-2, 1e-3, 1e-4, 1e-5].iter().map(|&d: &f64| (d, 3.0 * d.powf(-0.5))).collect();
    let fit = fit_rate(&pairs).unwrap();
    assert!((fit.slope + 0.5).abs() < 1e-12 && fit.r_squared > 1.0 - 1e-12 && !fit.excluded_largest);

    let mut bent = pairs.clone();
    bent[0].1 *= 30.0;
    let fit = fit_rate(&bent).unwrap();
    assert!(fit.excluded_largest && (fit.slope + 0.5).abs() < 1e-12);

    assert!(matches!(fit_rate(&pairs[..2]), Err(Error::InsufficientData(_))));
    let narrow = [(1e-3, 1.0), (2e-3, 1.0), (5e-3, 1.0)];
    assert!(matches!(fit_rate(&narrow), Err(Error::InsufficientData(_))));
}

#[test]
fn euler_maclaurin_remainder() {
    let r1 = euler_maclaurin_check(0.01).unwrap();
    assert!(r1.deviation <= 10.0 * r1.s && r1.f0 == F0);
    assert!(r1.identity_error < 1e-12 && r1.summation_gap < 1e-14);
    let r2 = euler_maclaurin_check(0.005).unwrap();
    let ratio = r1.deviation / r2.deviation;
    assert!(ratio > 1.6 && ratio < 2.4, "{ratio}");
    assert!(euler_maclaurin_check(0.5).is_err());
}

#[test]
fn spectral_norm() {
    assert!((tensor_norm(&Sym2::new(3.0, 0.0, -5.0)) - 5.0).abs() < 1e-15);
    assert!((tensor_norm(&Sym2::off_diagonal().scale(-2.0)) - 2.0).abs() < 1e-15);
    assert!((tensor_norm(&Sym2::identity().scale(-4.0)) - 4.0).abs() < 1e-15);
}

#[test]
fn extensional_pressure_peaks_in_gap() {
    let g = geo(1e-4);
    let sol = solve_flow(&g, Background::extensional()).unwrap();
    let n = sup_norm_estimate(&g, |p| sol.eval_bipolar(p), Quantity::Pressure).unwrap();
    assert!(n.converged);
    assert!(n.at.0.abs() <= g.r + 0.5 * g.delta && n.at.1.abs() <= g.delta.sqrt(), "{:?}", n.at);
}

#[test]
fn extensional_strain_stays_bounded() {
    let norm = |d: f64| {
        let g = geo(d);
        let sol = solve_flow(&g, Background::extensional()).unwrap();
        sup_norm_estimate(&g, |p| sol.eval_bipolar(p), Quantity::Strain).unwrap().value
    };
    let r = norm(1e-4) / norm(1e-3);
    assert!(r < 1.5 && r > 1.0 / 1.5, "{r}");
}

#[test]
fn report_lines() {
    let ok = CheckResult::at_most("x.y", "0", 1e-9, 1e-8);
    assert!(ok.pass && ok.line().starts_with("PASS x.y: computed="));
    let bad = CheckResult::within("z", -0.55, -0.45, -0.3);
    assert!(!bad.pass && bad.line().starts_with("FAIL z:"));
}
