//! Explicit singular solutions `(h1, p1)` and `(h2~, p2~)`.
//!
//! `h1` equals `±(1/2)(1, 0)` on the right/left cylinder and carries the
//! pressure blow-up of the extensional problem; `h2~` equals
//! `±(1/2)(0, 1) - C2 (y, -x)` and carries the shear-stress blow-up.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::FieldSample;
use crate::geometry::{bipolar_denominator, tensor_to_cartesian, BipolarPoint, Frame, Geometry, Sym2};
use crate::numeric::{sinh_minus_x, x_minus_tanh};
use crate::stream::{StreamSeries, StreamTerm, ThetaFactor, ZetaFactor};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SingularConstants {
    pub a1: f64,
    pub b1: f64,
    pub a2: f64,
    pub c2: f64,
}

pub fn singular_constants(g: &Geometry) -> SingularConstants {
    let s = g.s;
    let a1 = 1.0 / x_minus_tanh(2.0 * s);
    let b1 = -a1 / (2.0 * (2.0 * s).cosh());
    let a2 = -1.0 / (2.0 * s + (2.0 * s).sinh());
    let c2 = s.sinh().powi(2) / g.a * a2;
    SingularConstants { a1, b1, a2, c2 }
}

/// `h Psi1 = (A1 zeta + B1 sinh 2 zeta) sin theta`.
pub fn h1_stream(g: &Geometry) -> StreamSeries {
    let k = singular_constants(g);
    StreamSeries::new(
        0.0,
        vec![
            StreamTerm::new(k.a1, ZetaFactor::Zeta, ThetaFactor::Sin(1)),
            StreamTerm::new(k.b1, ZetaFactor::Sinh(2), ThetaFactor::Sin(1)),
        ],
    )
}

/// `h Psi2~ = A2 zeta sinh zeta`.
pub fn h2_tilde_stream(g: &Geometry) -> StreamSeries {
    let k = singular_constants(g);
    StreamSeries::new(0.0, vec![StreamTerm::new(k.a2, ZetaFactor::ZetaSinh, ThetaFactor::Cos(0))])
}

fn limit_at_infinity(p: BipolarPoint) -> FieldSample {
    FieldSample {
        x: f64::INFINITY,
        y: f64::INFINITY,
        zeta: p.zeta,
        theta: p.theta,
        u: [0.0, 0.0],
        p: 0.0,
        strain: Sym2::default(),
        stress: Sym2::default(),
    }
}

pub fn p1(g: &Geometry, p: BipolarPoint) -> f64 {
    let k = singular_constants(g);
    let c = 2.0 * g.mu / g.a;
    c * ((k.a1 - 2.0 * k.b1) * p.zeta.cosh() * p.theta.cos()
        + k.b1 * (2.0 * p.zeta).cosh() * (2.0 * p.theta).cos())
        - c * (k.a1 - k.b1)
}

pub fn p2_tilde(g: &Geometry, p: BipolarPoint) -> f64 {
    let k = singular_constants(g);
    -2.0 * g.mu / g.a * k.a2 * p.zeta.sinh() * p.theta.sin()
}

/// Bipolar strain of `h1` in closed form.
pub fn h1_strain_bipolar(g: &Geometry, p: BipolarPoint) -> Sym2 {
    let k = singular_constants(g);
    let h = g.scale_h(p);
    let s = g.s;
    // A1 + 2 B1 cosh 2z = A1 (cosh 2s - cosh 2z) / cosh 2s, written without cancellation
    let m = k.a1 * 2.0 * (s + p.zeta).sinh() * (s - p.zeta).sinh() / (2.0 * s).cosh();
    let ezz = -h * m * p.theta.cos();
    let ezt = h * 2.0 * k.b1 * (2.0 * p.zeta).sinh() * p.theta.sin();
    Sym2::new(ezz, ezt, -ezz)
}

/// Bipolar strain of `h2~` in closed form.
pub fn h2_tilde_strain_bipolar(g: &Geometry, p: BipolarPoint) -> Sym2 {
    let k = singular_constants(g);
    Sym2::new(0.0, g.scale_h(p) * k.a2 * p.zeta.cosh(), 0.0)
}

pub fn h1_field(g: &Geometry, p: BipolarPoint) -> Result<FieldSample> {
    if p.at_infinity() {
        return Ok(limit_at_infinity(p));
    }
    let k = singular_constants(g);
    let frame = Frame::at_unchecked(p);
    let d = bipolar_denominator(p.zeta, p.theta);
    let s = g.s;
    // A1 zeta + B1 sinh 2zeta without the cancellation between the two terms
    let sh = s.sinh();
    let f = k.a1 * (4.0 * p.zeta * sh * sh - sinh_minus_x(2.0 * p.zeta)) / (2.0 * (2.0 * s).cosh());
    let m = k.a1 * 2.0 * (s + p.zeta).sinh() * (s - p.zeta).sinh() / (2.0 * s).cosh();
    let uz = f * frame.alpha;
    let ut = p.theta.sin() * (m - p.zeta.sinh() * f / d);
    let strain = tensor_to_cartesian(&frame, &h1_strain_bipolar(g, p));
    Ok(FieldSample::new(
        g.to_cart(p)?,
        p,
        frame.to_cartesian_vector(uz, ut),
        p1(g, p),
        strain,
        g.mu,
    ))
}

pub fn h2_tilde_field(g: &Geometry, p: BipolarPoint) -> Result<FieldSample> {
    if p.at_infinity() {
        return Ok(limit_at_infinity(p));
    }
    let k = singular_constants(g);
    let frame = Frame::at_unchecked(p);
    let uz = k.a2 * p.zeta * frame.beta;
    let ut = k.a2 * p.zeta * frame.alpha + k.a2 * p.zeta.sinh();
    let strain = tensor_to_cartesian(&frame, &h2_tilde_strain_bipolar(g, p));
    Ok(FieldSample::new(
        g.to_cart(p)?,
        p,
        frame.to_cartesian_vector(uz, ut),
        p2_tilde(g, p),
        strain,
        g.mu,
    ))
}

/// Largest `|y|` accepted by the narrow-region formulas.
pub fn narrow_limit(g: &Geometry) -> f64 {
    2.0 * g.delta.sqrt().max((g.r * g.delta).sqrt())
}

fn check_narrow(g: &Geometry, y: f64) -> Result<()> {
    let limit = narrow_limit(g);
    if y.abs() > limit || !y.is_finite() {
        return Err(Error::OutOfRegion { y, limit });
    }
    Ok(())
}

/// Leading narrow-region stress of `(h1, p1)` in the published form,
/// `-(3/4) mu R delta^-2 (y^2+3R delta)(y^2-R delta)/(y^2+R delta)^2 I`.
pub fn sigma_h1_narrow(g: &Geometry, y: f64) -> Result<Sym2> {
    check_narrow(g, y)?;
    let (rd, y2) = (g.r * g.delta, y * y);
    let f = (y2 + 3.0 * rd) * (y2 - rd) / (y2 + rd).powi(2);
    Ok(Sym2::identity().scale(-0.75 * g.mu * g.r / (g.delta * g.delta) * f))
}

/// Leading narrow-region stress of `(h1, p1)` with the pressure normalised
/// to vanish at infinity: `3 mu R delta^-2 (R delta)^2/(y^2+R delta)^2 I`.
///
/// It differs from [`sigma_h1_narrow`] by the constant `(3/4) mu R delta^-2 I`.
pub fn sigma_h1_narrow_gauged(g: &Geometry, y: f64) -> Result<Sym2> {
    check_narrow(g, y)?;
    let (rd, y2) = (g.r * g.delta, y * y);
    let f = rd * rd / (y2 + rd).powi(2);
    Ok(Sym2::identity().scale(3.0 * g.mu * g.r / (g.delta * g.delta) * f))
}

/// Leading narrow-region stress of `(h2, p2)`:
/// `mu delta^-1 R delta/(y^2+R delta) [[0,1],[1,0]]`.
pub fn sigma_h2_narrow(g: &Geometry, y: f64) -> Result<Sym2> {
    check_narrow(g, y)?;
    let rd = g.r * g.delta;
    Ok(Sym2::off_diagonal().scale(g.mu / g.delta * rd / (y * y + rd)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_match_definitions_at_moderate_s() {
        // a = R sinh(0.5) gives s = 0.5
        let r = 1.0;
        let a = 0.5f64.sinh();
        // delta from a^2 = delta (R + delta/4)
        let delta = 2.0 * (-r + (r * r + a * a).sqrt());
        let g = Geometry::new(r, delta, 1.0).unwrap();
        let k = singular_constants(&g);
        assert!((k.a1 - 1.0 / (1.0 - 1f64.tanh())).abs() < 1e-12 * k.a1);
        assert!((k.b1 / k.a1 + 1.0 / (2.0 * 1f64.cosh())).abs() < 1e-15);
    }

    #[test]
    fn narrow_forms_have_documented_special_values() {
        let g = Geometry::new(1.0, 1e-4, 1.0).unwrap();
        let root = (g.r * g.delta).sqrt();
        assert!(sigma_h1_narrow(&g, root).unwrap().max_abs() < 1e-6);
        let at0 = sigma_h1_narrow(&g, 0.0).unwrap();
        assert!((at0.xx - 2.25 / (g.delta * g.delta)).abs() < 1e-8 * at0.xx);
        let h2 = sigma_h2_narrow(&g, 0.0).unwrap();
        let h2r = sigma_h2_narrow(&g, root).unwrap();
        assert!((h2r.xy - 0.5 * h2.xy).abs() < 1e-12 * h2.xy);
        assert!(sigma_h2_narrow(&g, 1.0).is_err());
    }
}
