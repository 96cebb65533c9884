//! Two equal cylinders of radius `R` separated by a gap `delta`, and the
//! bipolar coordinate system `(zeta, theta)` adapted to them.
//!
//! The forward map is
//! `x = a sinh(zeta) / (cosh(zeta) - cos(theta))`,
//! `y = a sin(theta) / (cosh(zeta) - cos(theta))`,
//! so the two cylinder boundaries are the level sets `zeta = -s` (left)
//! and `zeta = s` (right), and `(zeta, theta) = (0, 0)` is the point at
//! infinity.

use std::f64::consts::TAU;

use serde::Serialize;

use crate::error::{Error, Result};

/// Points with `max(|zeta|, |theta|)` below this are treated as infinity.
pub const INFINITY_RADIUS: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Geometry {
    /// Common cylinder radius.
    pub r: f64,
    /// Gap between the cylinders.
    pub delta: f64,
    /// Viscosity.
    pub mu: f64,
    /// Focal distance, `sqrt(delta (R + delta/4))`.
    pub a: f64,
    /// Boundary level, `asinh(a / R)`.
    pub s: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BipolarPoint {
    pub zeta: f64,
    pub theta: f64,
}

impl BipolarPoint {
    pub fn new(zeta: f64, theta: f64) -> Self {
        Self { zeta, theta }
    }

    pub fn at_infinity(&self) -> bool {
        let t = wrap_pi(self.theta);
        self.zeta.abs().max(t.abs()) < INFINITY_RADIUS
    }
}

/// Which cylinder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    /// `D1`, centred at `(-R - delta/2, 0)`, boundary `zeta = -s`.
    Left,
    /// `D2`, centred at `(R + delta/2, 0)`, boundary `zeta = s`.
    Right,
}

impl Side {
    pub fn sign(self) -> f64 {
        match self {
            Side::Left => -1.0,
            Side::Right => 1.0,
        }
    }
}

/// `cosh(zeta) - cos(theta)` without cancellation near infinity.
#[inline]
pub fn bipolar_denominator(zeta: f64, theta: f64) -> f64 {
    let a = (0.5 * zeta).sinh();
    let b = (0.5 * theta).sin();
    2.0 * (a * a + b * b)
}

/// Angle reduced to `(-pi, pi]`.
pub fn wrap_pi(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t > std::f64::consts::PI {
        t - TAU
    } else {
        t
    }
}

impl Geometry {
    pub fn new(r: f64, delta: f64, mu: f64) -> Result<Self> {
        for (field, value) in [("R", r), ("delta", delta), ("mu", mu)] {
            if !(value > 0.0 && value.is_finite()) {
                return Err(Error::Config { field, value });
            }
        }
        let a = (delta * (r + 0.25 * delta)).sqrt();
        let s = (a / r).asinh();
        Ok(Self { r, delta, mu, a, s })
    }

    pub fn center(&self, side: Side) -> (f64, f64) {
        (side.sign() * (self.r + 0.5 * self.delta), 0.0)
    }

    pub fn centers(&self) -> [(f64, f64); 2] {
        [self.center(Side::Left), self.center(Side::Right)]
    }

    /// Half-height `sqrt(delta)` of the narrow region.
    pub fn narrow_half_height(&self) -> f64 {
        self.delta.sqrt()
    }

    /// Scale factor `h = (cosh zeta - cos theta) / a`.
    pub fn scale_h(&self, p: BipolarPoint) -> f64 {
        bipolar_denominator(p.zeta, p.theta) / self.a
    }

    pub fn to_cart(&self, p: BipolarPoint) -> Result<(f64, f64)> {
        if p.at_infinity() {
            return Err(Error::Domain(format!(
                "(zeta, theta) = ({}, {}) is the point at infinity",
                p.zeta, p.theta
            )));
        }
        let d = bipolar_denominator(p.zeta, p.theta);
        Ok((self.a * p.zeta.sinh() / d, self.a * p.theta.sin() / d))
    }

    pub fn to_bipolar(&self, x: f64, y: f64) -> Result<BipolarPoint> {
        let a = self.a;
        let rp2 = (x + a) * (x + a) + y * y;
        let rm2 = (x - a) * (x - a) + y * y;
        if rp2 == 0.0 || rm2 == 0.0 {
            return Err(Error::Domain(format!("({x}, {y}) is a focus")));
        }
        let zeta = 0.5 * (rp2 / rm2).ln();
        // angle subtended by the foci: arg(x - a, y) - arg(x + a, y)
        let theta = (2.0 * a * y).atan2(x * x + y * y - a * a).rem_euclid(TAU);
        Ok(BipolarPoint { zeta, theta })
    }

    pub fn boundary_point(&self, side: Side, theta: f64) -> BipolarPoint {
        BipolarPoint::new(side.sign() * self.s, theta)
    }

    /// Which disk strictly contains `(x, y)`, with a relative tolerance so
    /// that boundary samples count as exterior.
    pub fn inside_disk(&self, x: f64, y: f64) -> Option<Side> {
        for side in [Side::Left, Side::Right] {
            let (cx, cy) = self.center(side);
            let d = ((x - cx).powi(2) + (y - cy).powi(2)).sqrt();
            if d < self.r * (1.0 - 1e-12) {
                return Some(side);
            }
        }
        None
    }

    /// Distance from `(x, y)` to the nearest cylinder boundary (negative inside).
    pub fn distance_to_boundary(&self, x: f64, y: f64) -> f64 {
        self.centers()
            .iter()
            .map(|&(cx, cy)| ((x - cx).powi(2) + (y - cy).powi(2)).sqrt() - self.r)
            .fold(f64::INFINITY, f64::min)
    }
}

/// Entries of the symmetric orthogonal transition matrix
/// `Xi = [[alpha, -beta], [-beta, -alpha]]` whose columns are `e_zeta`
/// and `e_theta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Frame {
    pub alpha: f64,
    pub beta: f64,
}

impl Frame {
    pub fn at(p: BipolarPoint) -> Result<Self> {
        if p.at_infinity() {
            return Err(Error::Domain("frame undefined at infinity".into()));
        }
        Ok(Self::at_unchecked(p))
    }

    /// As [`Frame::at`] without the check; meaningless at infinity.
    pub fn at_unchecked(p: BipolarPoint) -> Self {
        let d = bipolar_denominator(p.zeta, p.theta);
        let (sz, st) = ((0.5 * p.zeta).sinh(), (0.5 * p.theta).sin());
        // 1 - cosh(z) cos(t) = 2 sin^2(t/2) - 2 sinh^2(z/2) cos(t)
        let num = 2.0 * st * st - 2.0 * sz * sz * p.theta.cos();
        Self {
            alpha: num / d,
            beta: p.zeta.sinh() * p.theta.sin() / d,
        }
    }

    pub fn matrix(&self) -> [[f64; 2]; 2] {
        [[self.alpha, -self.beta], [-self.beta, -self.alpha]]
    }

    pub fn e_zeta(&self) -> [f64; 2] {
        [self.alpha, -self.beta]
    }

    pub fn e_theta(&self) -> [f64; 2] {
        [-self.beta, -self.alpha]
    }

    /// Cartesian vector from bipolar components.
    pub fn to_cartesian_vector(&self, v_zeta: f64, v_theta: f64) -> [f64; 2] {
        [
            self.alpha * v_zeta - self.beta * v_theta,
            -self.beta * v_zeta - self.alpha * v_theta,
        ]
    }
}

/// A symmetric 2×2 tensor.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Sym2 {
    pub xx: f64,
    pub xy: f64,
    pub yy: f64,
}

impl Sym2 {
    pub fn new(xx: f64, xy: f64, yy: f64) -> Self {
        Self { xx, xy, yy }
    }

    pub fn identity() -> Self {
        Self::new(1.0, 0.0, 1.0)
    }

    pub fn off_diagonal() -> Self {
        Self::new(0.0, 1.0, 0.0)
    }

    pub fn trace(&self) -> f64 {
        self.xx + self.yy
    }

    pub fn scale(&self, c: f64) -> Self {
        Self::new(c * self.xx, c * self.xy, c * self.yy)
    }

    pub fn add(&self, o: &Sym2) -> Self {
        Self::new(self.xx + o.xx, self.xy + o.xy, self.yy + o.yy)
    }

    pub fn sub(&self, o: &Sym2) -> Self {
        Self::new(self.xx - o.xx, self.xy - o.xy, self.yy - o.yy)
    }

    /// Largest entry in absolute value.
    pub fn max_abs(&self) -> f64 {
        self.xx.abs().max(self.xy.abs()).max(self.yy.abs())
    }

    pub fn apply(&self, v: [f64; 2]) -> [f64; 2] {
        [self.xx * v[0] + self.xy * v[1], self.xy * v[0] + self.yy * v[1]]
    }

    pub fn to_matrix(&self) -> [[f64; 2]; 2] {
        [[self.xx, self.xy], [self.xy, self.yy]]
    }
}

/// `Xi T Xi`: a tensor given in the `(e_zeta, e_theta)` basis (fields read
/// as `zz`, `zt`, `tt`) expressed in Cartesian components.
pub fn tensor_to_cartesian(frame: &Frame, t: &Sym2) -> Sym2 {
    let (al, be) = (frame.alpha, frame.beta);
    let (zz, zt, tt) = (t.xx, t.xy, t.yy);
    // rows of Xi T
    let r0 = [al * zz - be * zt, al * zt - be * tt];
    let r1 = [-be * zz - al * zt, -be * zt - al * tt];
    Sym2::new(
        r0[0] * al - r0[1] * be,
        -r0[0] * be - r0[1] * al,
        -r1[0] * be - r1[1] * al,
    )
}
