//! Pointwise field values in Cartesian components.

use serde::Serialize;

use crate::geometry::{BipolarPoint, Sym2};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FieldSample {
    pub x: f64,
    pub y: f64,
    pub zeta: f64,
    pub theta: f64,
    pub u: [f64; 2],
    pub p: f64,
    pub strain: Sym2,
    pub stress: Sym2,
}

impl FieldSample {
    /// Assemble a sample; the stress is `-p I + 2 mu E`.
    pub fn new(xy: (f64, f64), bp: BipolarPoint, u: [f64; 2], p: f64, strain: Sym2, mu: f64) -> Self {
        Self {
            x: xy.0,
            y: xy.1,
            zeta: bp.zeta,
            theta: bp.theta,
            u,
            p,
            strain,
            stress: stress_from(p, &strain, mu),
        }
    }

    /// `self + c * other` (position fields are kept from `self`).
    pub fn plus_scaled(&self, other: &FieldSample, c: f64) -> Self {
        Self {
            u: [self.u[0] + c * other.u[0], self.u[1] + c * other.u[1]],
            p: self.p + c * other.p,
            strain: self.strain.add(&other.strain.scale(c)),
            stress: self.stress.add(&other.stress.scale(c)),
            ..*self
        }
    }

    pub fn velocity_norm(&self) -> f64 {
        self.u[0].hypot(self.u[1])
    }
}

pub fn stress_from(p: f64, strain: &Sym2, mu: f64) -> Sym2 {
    Sym2::new(-p + 2.0 * mu * strain.xx, 2.0 * mu * strain.xy, -p + 2.0 * mu * strain.yy)
}
