use std::f64::consts::PI;

use bipolar_stokes::geometry::{BipolarPoint, Geometry, Side, Sym2};
use bipolar_stokes::singular::{
    h1_field, h2_tilde_field, narrow_limit, p1, sigma_h1_narrow, sigma_h1_narrow_gauged, sigma_h2_narrow,
    singular_constants,
};
use bipolar_stokes::validation::{fit_rate, sup_norm_estimate, Quantity};
use bipolar_stokes::Error;

fn geometry_with_s(s: f64) -> Geometry {
    Geometry::new(1.0, 2.0 * (s.cosh() - 1.0), 1.0).unwrap()
}

#[test]
fn constants_closed_forms() {
    let g = geometry_with_s(0.5);
    assert!((g.s - 0.5).abs() < 1e-14);
    let c = singular_constants(&g);
    assert!((c.a1 - 1.0 / (1.0 - 1f64.tanh())).abs() < 1e-12 * c.a1);
    for delta in [0.3, 1e-2, 1e-4, 1e-6] {
        let g = Geometry::new(1.0, delta, 1.0).unwrap();
        let c = singular_constants(&g);
        assert!((c.b1 / c.a1 + 1.0 / (2.0 * (2.0 * g.s).cosh())).abs() < 1e-14);
    }
}

#[test]
fn c2_stays_bounded() {
    let c = |d: f64| singular_constants(&Geometry::new(1.0, d, 1.0).unwrap()).c2;
    let (c3, c5) = (c(1e-3), c(1e-5));
    assert!((c3 - c5).abs() <= 0.05 * c3.abs(), "{c3} {c5}");
}

#[test]
fn boundary_values() {
    for delta in [0.1, 1e-3, 1e-5] {
        let g = Geometry::new(1.0, delta, 1.0).unwrap();
        let c2 = singular_constants(&g).c2;
        for side in [Side::Left, Side::Right] {
            let half = 0.5 * side.sign();
            for k in 0..720 {
                let p = g.boundary_point(side, (k as f64 + 0.5) * PI / 360.0);
                let f = h1_field(&g, p).unwrap();
                assert!((f.u[0] - half).abs() < 1e-12 && f.u[1].abs() < 1e-12, "h1 {delta} {p:?} {:?}", f.u);
                let f = h2_tilde_field(&g, p).unwrap();
                let expect = [-c2 * f.y, half + c2 * f.x];
                assert!((f.u[0] - expect[0]).abs() < 1e-12 && (f.u[1] - expect[1]).abs() < 1e-12, "h2 {p:?}");
            }
        }
    }
}

#[test]
fn h2_tilde_has_no_normal_strain_in_frame() {
    use bipolar_stokes::singular::h2_tilde_strain_bipolar;
    let g = Geometry::new(1.0, 1e-2, 1.0).unwrap();
    for k in 0..100 {
        let p = BipolarPoint::new(g.s * ((k as f64 * 0.37).sin()), 0.1 + 6.0 * (k as f64 * 0.61).fract());
        assert_eq!(h2_tilde_strain_bipolar(&g, p).xx, 0.0);
    }
}

#[test]
fn p1_vanishes_towards_infinity() {
    let g = Geometry::new(1.0, 1e-2, 1.0).unwrap();
    let far = p1(&g, BipolarPoint::new(1e-7, 1e-7));
    let near = p1(&g, BipolarPoint::new(0.0, PI)).abs();
    assert!(far.abs() < 1e-5 * near, "{far} vs {near}");
}

#[test]
fn narrow_formulas_special_values() {
    let g = Geometry::new(1.0, 1e-3, 2.0).unwrap();
    let rd = g.r * g.delta;
    assert!(sigma_h1_narrow(&g, rd.sqrt()).unwrap().max_abs() < 1e-6);
    let s0 = sigma_h1_narrow(&g, 0.0).unwrap();
    let expect = 2.25 * g.mu * g.r / (g.delta * g.delta);
    assert!((s0.xx - expect).abs() < 1e-12 * expect && s0.xy == 0.0 && s0.xx == s0.yy);

    let gauged = sigma_h1_narrow_gauged(&g, 0.3 * rd.sqrt()).unwrap();
    let plain = sigma_h1_narrow(&g, 0.3 * rd.sqrt()).unwrap();
    let shift = 0.75 * g.mu * g.r / (g.delta * g.delta);
    assert!((gauged.xx - plain.xx - shift).abs() < 1e-10 * shift);

    let t0 = sigma_h2_narrow(&g, 0.0).unwrap();
    assert!((t0.xy - g.mu / g.delta).abs() < 1e-12 * t0.xy && t0.xx == 0.0);
    let t1 = sigma_h2_narrow(&g, rd.sqrt()).unwrap();
    assert!((t1.xy - 0.5 * t0.xy).abs() < 1e-12 * t0.xy);

    let lim = narrow_limit(&g);
    assert!(matches!(sigma_h2_narrow(&g, 1.01 * lim), Err(Error::OutOfRegion { .. })));
}

#[test]
fn h1_stress_approaches_narrow_formula() {
    // remainder relative to delta^-3/2 stays bounded
    let mut scaled = Vec::new();
    for delta in [1e-3, 1e-4, 1e-5] {
        let g = Geometry::new(1.0, delta, 1.0).unwrap();
        let y = 0.5 * (g.r * delta).sqrt();
        let f = h1_field(&g, g.to_bipolar(0.0, y).unwrap()).unwrap();
        let lead = sigma_h1_narrow_gauged(&g, y).unwrap();
        scaled.push(f.stress.sub(&lead).max_abs() * delta.powf(1.5));
    }
    assert!(scaled[2] < 2.0 * scaled[0] + 1.0, "{scaled:?}");
}

#[test]
fn h2_stress_approaches_narrow_formula() {
    let mut scaled = Vec::new();
    for delta in [1e-3, 1e-4, 1e-5] {
        let g = Geometry::new(1.0, delta, 1.0).unwrap();
        let y = 0.5 * (g.r * delta).sqrt();
        let f = h2_tilde_field(&g, g.to_bipolar(0.0, y).unwrap()).unwrap();
        // h2 = h2~ + C2 psi3 adds no strain; compare the deviatoric part
        let dev = Sym2::new(0.0, f.stress.xy, 0.0);
        let lead = sigma_h2_narrow(&g, y).unwrap();
        scaled.push(dev.sub(&lead).max_abs() * delta.sqrt());
    }
    assert!(scaled[2] < 2.0 * scaled[0] + 1.0, "{scaled:?}");
}

#[test]
fn pressure_blow_up_rates() {
    let norm = |d: f64, two: bool| {
        let g = Geometry::new(1.0, d, 1.0).unwrap();
        let q = Quantity::Pressure;
        if two {
            sup_norm_estimate(&g, |p| h2_tilde_field(&g, p), q).unwrap().value
        } else {
            sup_norm_estimate(&g, |p| h1_field(&g, p), q).unwrap().value
        }
    };
    let ratio = norm(1e-4, false) / norm(1e-3, false);
    assert!((ratio / 100.0 - 1.0).abs() < 0.25, "{ratio}");

    let pairs: Vec<_> = [1e-3, 1e-4, 1e-5].iter().map(|&d| (d, norm(d, true))).collect();
    let fit = fit_rate(&pairs).unwrap();
    assert!((fit.slope + 0.5).abs() < 0.05, "{fit:?}");
}
