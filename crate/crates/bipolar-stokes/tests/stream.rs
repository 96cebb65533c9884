use std::f64::consts::PI;

use bipolar_stokes::geometry::{tensor_to_cartesian, BipolarPoint, Frame, Geometry, Sym2};
use bipolar_stokes::singular::{h1_stream, singular_constants};
use bipolar_stokes::stream::{
    cartesian_kinematics, strain_bipolar, velocity_bipolar, StreamSeries, StreamTerm, ThetaFactor, ZetaFactor,
};
use num_complex::Complex64;

fn sample_series() -> StreamSeries {
    StreamSeries::new(
        0.3,
        vec![
            StreamTerm::new(1.2, ZetaFactor::Cosh(1), ThetaFactor::Cos(0)),
            StreamTerm::new(-0.4, ZetaFactor::ZetaSinh, ThetaFactor::Cos(0)),
            StreamTerm::new(0.7, ZetaFactor::Sinh(3), ThetaFactor::Sin(2)),
            StreamTerm::new(-0.2, ZetaFactor::Sinh(1), ThetaFactor::Sin(2)),
            StreamTerm::new(0.5, ZetaFactor::Cosh(2), ThetaFactor::Cos(1)),
            StreamTerm::new(0.1, ZetaFactor::Zeta, ThetaFactor::Sin(1)),
        ],
    )
}

fn points(g: &Geometry, n: usize) -> Vec<BipolarPoint> {
    (0..n)
        .map(|k| {
            let u = (k as f64 * 0.618_033_988_749_895).fract();
            let v = (k as f64 * 0.754_877_666_246_693).fract();
            BipolarPoint::new((2.0 * u - 1.0) * 0.9 * g.s, 0.3 + v * (2.0 * PI - 0.6))
        })
        .collect()
}

/// Cartesian stream function `Psi = (h Psi) / h`.
fn psi(series: &StreamSeries, g: &Geometry, x: f64, y: f64) -> f64 {
    let p = g.to_bipolar(x, y).unwrap();
    series.eval(p, 0).unwrap().v / g.scale_h(p)
}

#[test]
fn elementary_jets() {
    let t = StreamSeries::new(0.0, vec![StreamTerm::new(1.0, ZetaFactor::ZetaSinh, ThetaFactor::Cos(0))]);
    let j = t.eval(BipolarPoint::new(0.0, 1.3), 2).unwrap();
    assert!(j.v.abs() < 1e-15 && j.z.abs() < 1e-15 && (j.zz - 2.0).abs() < 1e-14);

    let k = 0.8;
    let log = StreamSeries::new(k, vec![]);
    let j = log.eval(BipolarPoint::new(0.0, PI), 0).unwrap();
    assert!((j.v - 2.0 * k * 4f64.ln()).abs() < 1e-14);

    let g = Geometry::new(1.0, 0.05, 1.0).unwrap();
    let c = singular_constants(&g);
    let j = h1_stream(&g).eval(BipolarPoint::new(g.s, PI / 2.0), 0).unwrap();
    assert!((j.v - (c.a1 * g.s + c.b1 * (2.0 * g.s).sinh())).abs() < 1e-12 * c.a1.abs());
}

#[test]
fn jet_matches_finite_differences() {
    let s = sample_series();
    let p = BipolarPoint::new(0.21, 1.7);
    let h = 1e-5;
    let j = s.eval(p, 2).unwrap();
    let f = |dz: f64, dt: f64| s.eval(BipolarPoint::new(p.zeta + dz, p.theta + dt), 0).unwrap().v;
    assert!((j.z - (f(h, 0.0) - f(-h, 0.0)) / (2.0 * h)).abs() < 1e-8);
    assert!((j.t - (f(0.0, h) - f(0.0, -h)) / (2.0 * h)).abs() < 1e-8);
    let h = 1e-4;
    assert!((j.zz - (f(h, 0.0) - 2.0 * f(0.0, 0.0) + f(-h, 0.0)) / (h * h)).abs() < 1e-5);
    assert!((j.tt - (f(0.0, h) - 2.0 * f(0.0, 0.0) + f(0.0, -h)) / (h * h)).abs() < 1e-5);
    let zt = (f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4.0 * h * h);
    assert!((j.zt - zt).abs() < 1e-5);
}

#[test]
fn bipolar_map_is_conformal_cotangent() {
    // x + i y = i a cot((theta + i zeta) / 2)
    let g = Geometry::new(1.0, 0.2, 1.0).unwrap();
    for p in points(&g, 20) {
        let w = Complex64::new(p.theta, p.zeta) / 2.0;
        let z = Complex64::i() * g.a * w.cos() / w.sin();
        let (x, y) = g.to_cart(p).unwrap();
        assert!((z.re - x).abs() < 1e-12 && (z.im - y).abs() < 1e-12, "{p:?}");
    }
}

#[test]
fn velocity_is_the_curl_of_psi() {
    let g = Geometry::new(1.0, 0.2, 1.0).unwrap();
    let s = sample_series();
    for p in points(&g, 20) {
        let (x, y) = g.to_cart(p).unwrap();
        let step = 1e-5 * (1.0 + x.hypot(y));
        let dx = (psi(&s, &g, x + step, y) - psi(&s, &g, x - step, y)) / (2.0 * step);
        let dy = (psi(&s, &g, x, y + step) - psi(&s, &g, x, y - step)) / (2.0 * step);
        let (u, _) = cartesian_kinematics(&s, &g, p).unwrap();
        let scale = 1.0 + u[0].abs().max(u[1].abs());
        assert!((u[0] - dy).abs() < 1e-6 * scale, "{p:?}: {} vs {dy}", u[0]);
        assert!((u[1] + dx).abs() < 1e-6 * scale, "{p:?}: {} vs {}", u[1], -dx);

        let (uz, ut) = velocity_bipolar(&s, p).unwrap();
        let back = Frame::at(p).unwrap().to_cartesian_vector(uz, ut);
        assert!((back[0] - u[0]).abs() < 1e-12 * scale && (back[1] - u[1]).abs() < 1e-12 * scale);
    }
}

#[test]
fn strain_matches_velocity_gradient() {
    let g = Geometry::new(1.0, 0.2, 1.0).unwrap();
    let s = sample_series();
    let vel = |x: f64, y: f64| cartesian_kinematics(&s, &g, g.to_bipolar(x, y).unwrap()).unwrap().0;
    for p in points(&g, 20) {
        let (x, y) = g.to_cart(p).unwrap();
        let h = 1e-5 * (1.0 + x.hypot(y));
        let ux = [vel(x + h, y), vel(x - h, y)];
        let uy = [vel(x, y + h), vel(x, y - h)];
        let d = |a: [[f64; 2]; 2], i: usize| (a[0][i] - a[1][i]) / (2.0 * h);
        let fd = Sym2::new(d(ux, 0), 0.5 * (d(uy, 0) + d(ux, 1)), d(uy, 1));
        let (_, e) = cartesian_kinematics(&s, &g, p).unwrap();
        assert!(e.sub(&fd).max_abs() < 1e-5 * (1.0 + e.max_abs()), "{p:?}");
        assert!((d(ux, 0) + d(uy, 1)).abs() < 1e-6 * (1.0 + e.max_abs()));
    }
}

#[test]
fn zeta_sinh_strain_is_pure_shear_in_frame() {
    let g = Geometry::new(1.0, 0.1, 1.0).unwrap();
    let d0 = -1.7;
    let s = StreamSeries::new(0.0, vec![StreamTerm::new(d0, ZetaFactor::ZetaSinh, ThetaFactor::Cos(0))]);
    for p in points(&g, 10) {
        let e = strain_bipolar(&s, &g, p).unwrap();
        assert!(e.xx.abs() < 1e-12 * (1.0 + e.xy.abs()) && e.yy.abs() < 1e-12 * (1.0 + e.xy.abs()));
        let expect = g.scale_h(p) * d0 * p.zeta.cosh();
        assert!((e.xy - expect).abs() < 1e-12 * expect.abs());
    }
}

#[test]
fn h1_strain_closed_form() {
    let g = Geometry::new(1.0, 0.05, 1.0).unwrap();
    let c = singular_constants(&g);
    for p in points(&g, 10) {
        let e = strain_bipolar(&h1_stream(&g), &g, p).unwrap();
        let expect = -g.scale_h(p) * (c.a1 + 2.0 * c.b1 * (2.0 * p.zeta).cosh()) * p.theta.cos();
        assert!((e.xx - expect).abs() < 1e-9 * c.a1.abs() * g.scale_h(p), "{p:?}");
    }
}

#[test]
fn separable_terms_are_biharmonic() {
    let s = sample_series();
    for p in [BipolarPoint::new(0.1, 1.0), BipolarPoint::new(-0.3, 2.5), BipolarPoint::new(0.05, 4.0)] {
        // the O(k^2) truncation error extrapolates away
        let r1 = s.biharmonic_residual_fd(p, 1e-2).unwrap();
        let r2 = s.biharmonic_residual_fd(p, 5e-3).unwrap();
        assert!(r2.abs() < r1.abs() / 3.0, "{p:?}: {r1} {r2}");
        assert!(((4.0 * r2 - r1) / 3.0).abs() < 1e-5, "{p:?}: {r1} {r2}");
    }
}

#[test]
fn frame_rotation_of_shear() {
    let f = Frame::at(BipolarPoint::new(0.0, PI)).unwrap();
    let t = tensor_to_cartesian(&f, &Sym2::new(0.0, 1.0, 0.0));
    assert!((t.xy + 1.0).abs() < 1e-15);
}
