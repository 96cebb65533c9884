//! Boundary integrals, the rigid-motion constants of the cylinders and the
//! composed solution for a general linear background
//! `U = [[a, c], [d, -a]] (x, y)`.
//!
//! The background splits as `a U_ex + (c+d)/2 U_sh + (c-d)/2 (y, -x)`.
//! The rotational part is itself a Stokes solution with rigid boundary
//! values, so only the first two need solving:
//!
//! * `u_ex = v1 + 2 c21 h1`,
//! * `u_sh = v2 + 2 c22 h2 + c23 h_rot` with `h2 = h2~ + C2 h_rot`.
//!
//! All pairings are over `dD2` with the normal pointing into the fluid.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::FieldSample;
use crate::geometry::{BipolarPoint, Geometry, Sym2};
use crate::noslip::{
    auto_truncation, phi1_coefficients, phi2_coefficients, phirot_coefficients, Background as Linear, ModeField,
    ModeSeries, Parity, DEFAULT_EPS,
};
use crate::singular::{narrow_limit, sigma_h1_narrow_gauged, sigma_h2_narrow, singular_constants, SingularConstants};

/// `Q_n(s) = int_{-pi}^{pi} cos(n t) / (cosh s - cos t) dt = 2 pi e^{-ns} / sinh s`.
pub fn q_n(s: f64, n: u32) -> f64 {
    2.0 * PI * (-(n as f64) * s).exp() / s.sinh()
}

/// Force and torque pairings on `dD2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundaryIntegrals {
    /// `psi1 . sigma[h1] nu`
    #[serde(rename = "I1")]
    pub i1: f64,
    /// `psi2 . sigma[h2] nu`
    #[serde(rename = "I22")]
    pub i22: f64,
    /// `psi2 . sigma[h_rot] nu`
    #[serde(rename = "I23")]
    pub i23: f64,
    /// `psi3 . sigma[h_rot] nu`
    #[serde(rename = "Irot")]
    pub i_rot: f64,
    /// `U_ex . sigma[h1] nu`
    #[serde(rename = "J1")]
    pub j1: f64,
    /// `U_sh . sigma[h2] nu`
    #[serde(rename = "J2")]
    pub j2: f64,
    /// `U_sh . sigma[h_rot] nu`
    #[serde(rename = "Jrot")]
    pub j_rot: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RigidConstants {
    pub c21: f64,
    pub c22: f64,
    pub c23: f64,
    /// Determinant of the shear system.
    pub det: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntegralSet {
    #[serde(flatten)]
    pub integrals: BoundaryIntegrals,
    #[serde(flatten)]
    pub constants: RigidConstants,
}

/// The seven boundary integrals in closed form.
pub fn boundary_integrals(g: &Geometry) -> Result<BoundaryIntegrals> {
    let (a, s, mu) = (g.a, g.s, g.mu);
    let k = singular_constants(g);
    let n = auto_truncation(s, DEFAULT_EPS);
    let phi2 = phi2_coefficients(g, n)?;
    let rot = phirot_coefficients(g, n)?;
    let four_pi_mu = 4.0 * PI * mu;
    let i23 = four_pi_mu * rot.modes.d0;
    Ok(BoundaryIntegrals {
        i1: -four_pi_mu * k.a1,
        i22: four_pi_mu * k.a2 + k.c2 * i23,
        i23,
        i_rot: four_pi_mu * a * rot.k,
        j1: -2.0 * four_pi_mu * a * k.a1 * s.sinh().powi(2) / (2.0 * s).cosh(),
        j2: -0.5 * four_pi_mu * phi2.modes.d0,
        j_rot: -four_pi_mu * a * phi2.k,
    })
}

/// `J1` through the `Q_n` integrals; equal to the reduced form in
/// [`boundary_integrals`] but loses digits as `s -> 0`.
pub fn j1_from_q(g: &Geometry) -> f64 {
    let s = g.s;
    let k = singular_constants(g);
    let c = (2.0 * s).cosh();
    -g.a * g.mu * k.a1 / c * s.sinh() * ((2.0 * c - 1.0) * q_n(s, 0) - 2.0 * s.cosh() * q_n(s, 1) + q_n(s, 2))
}

/// Solves the equilibrium conditions on `dD2` for `c21`, `c22`, `c23`.
///
/// Extensional: `2 c21 I1 = -psi1 . sigma[v1] nu = 2 J1`.
/// Shear, pairing `u_sh` with `psi2` and `psi3`:
/// `[[I22, I23/2], [I23, Irot]] [c22; c23] = [J2; Jrot]`, using
/// `psi3 . sigma[h2] nu = C2 Irot = I23 / 2` on `dD2`.
pub fn solve_constants(b: &BoundaryIntegrals) -> Result<RigidConstants> {
    let m = [[b.i22, 0.5 * b.i23], [b.i23, b.i_rot]];
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let scale = m.iter().flatten().fold(0.0f64, |acc, v| acc.max(v.abs()));
    if !det.is_finite() || det.abs() <= 1e-13 * scale * scale {
        return Err(Error::Degenerate { det });
    }
    let c22 = (b.j2 * m[1][1] - m[0][1] * b.j_rot) / det;
    let c23 = (m[0][0] * b.j_rot - m[1][0] * b.j2) / det;
    Ok(RigidConstants { c21: b.j1 / b.i1, c22, c23, det })
}

pub fn rigid_constants(g: &Geometry) -> Result<RigidConstants> {
    solve_constants(&boundary_integrals(g)?)
}

pub fn integral_set(g: &Geometry) -> Result<IntegralSet> {
    let integrals = boundary_integrals(g)?;
    let constants = solve_constants(&integrals)?;
    Ok(IntegralSet { integrals, constants })
}

/// Linear background `U(x, y) = [[a, c], [d, -a]] (x, y)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Background {
    pub a: f64,
    pub c: f64,
    pub d: f64,
}

impl Background {
    pub fn new(a: f64, c: f64, d: f64) -> Self {
        Self { a, c, d }
    }

    /// `(x, -y)`
    pub fn extensional() -> Self {
        Self::new(1.0, 0.0, 0.0)
    }

    /// `(y, x)`
    pub fn shear() -> Self {
        Self::new(0.0, 1.0, 1.0)
    }

    /// `(y, -x)`
    pub fn rotation() -> Self {
        Self::new(0.0, 1.0, -1.0)
    }

    /// Weights of `(U_ex, U_sh, (y, -x))`.
    pub fn weights(&self) -> [f64; 3] {
        [self.a, 0.5 * (self.c + self.d), 0.5 * (self.c - self.d)]
    }

    pub fn velocity(&self, x: f64, y: f64) -> [f64; 2] {
        [self.a * x + self.c * y, self.d * x - self.a * y]
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FlowSolution {
    pub geometry: Geometry,
    pub background: Background,
    pub constants: IntegralSet,
    pub singular: SingularConstants,
    #[serde(rename = "N")]
    pub n: usize,
    /// Coefficient of `h_rot` in `u_sh`: `2 c22 C2 + c23`.
    pub lambda: f64,
    #[serde(skip)]
    ex: ModeField,
    #[serde(skip)]
    sh: ModeField,
}

/// Mode series of `h1` (odd) and `h2~` (even) scaled by `c`.
fn h1_modes(k: &SingularConstants, c: f64) -> ModeSeries {
    let mut m = ModeSeries::zero(Parity::Odd, 1);
    m.upper[0] = c * k.b1;
    m.lower[0] = c * k.a1;
    m
}

fn h2_tilde_modes(k: &SingularConstants, c: f64) -> ModeSeries {
    let mut m = ModeSeries::zero(Parity::Even, 1);
    m.d0 = c * k.a2;
    m
}

pub fn solve_flow(g: &Geometry, bg: Background) -> Result<FlowSolution> {
    solve_flow_with(g, bg, auto_truncation(g.s, DEFAULT_EPS))
}

pub fn solve_flow_with(g: &Geometry, bg: Background, n: usize) -> Result<FlowSolution> {
    if bg.a == 0.0 && bg.c == 0.0 && bg.d == 0.0 {
        return Err(Error::DegenerateBackground);
    }
    let constants = integral_set(g)?;
    let rc = constants.constants;
    let k = singular_constants(g);
    let phi1 = phi1_coefficients(g, n)?;
    let phi2 = phi2_coefficients(g, n)?;
    let rot = phirot_coefficients(g, n)?;
    let lambda = 2.0 * rc.c22 * k.c2 + rc.c23;
    let ex_modes = phi1.modes.plus_scaled(&h1_modes(&k, 1.0), 2.0 * rc.c21);
    let sh_modes = phi2
        .modes
        .plus_scaled(&h2_tilde_modes(&k, 1.0), 2.0 * rc.c22)
        .plus_scaled(&rot.modes, lambda);
    Ok(FlowSolution {
        geometry: *g,
        background: bg,
        constants,
        singular: k,
        n,
        lambda,
        ex: ModeField::new(g, ex_modes, Linear::Extensional),
        sh: ModeField::new(g, sh_modes, Linear::Shear),
    })
}

impl FlowSolution {
    /// `u_ex` (unit extensional background).
    pub fn extensional(&self) -> &ModeField {
        &self.ex
    }

    /// `u_sh` (unit shear background).
    pub fn shear(&self) -> &ModeField {
        &self.sh
    }

    /// Field at `(x, y)`; points strictly inside a cylinder are rejected.
    pub fn eval(&self, x: f64, y: f64) -> Result<FieldSample> {
        let g = &self.geometry;
        if let Some(side) = g.inside_disk(x, y) {
            return Err(Error::Domain(format!("({x}, {y}) lies inside cylinder {side:?}")));
        }
        let mut out = self.eval_bipolar(g.to_bipolar(x, y)?)?;
        out.x = x;
        out.y = y;
        Ok(out)
    }

    /// Field at a bipolar point of the closed exterior `|zeta| <= s`.
    pub fn eval_bipolar(&self, p: BipolarPoint) -> Result<FieldSample> {
        let g = &self.geometry;
        if p.zeta.abs() > g.s * (1.0 + 1e-12) {
            return Err(Error::Domain(format!("zeta = {} lies inside a cylinder", p.zeta)));
        }
        let (x, y) = g.to_cart(p)?;
        let [wa, ws, wr] = self.background.weights();
        let mut out = FieldSample::new((x, y), p, [wr * y, -wr * x], 0.0, Sym2::default(), g.mu);
        if wa != 0.0 {
            out = out.plus_scaled(&self.ex.sample(g, p)?, wa);
        }
        if ws != 0.0 {
            out = out.plus_scaled(&self.sh.sample(g, p)?, ws);
        }
        Ok(out)
    }
}

/// The building blocks of the composed solutions, each as a mode series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Block {
    H1,
    H2Tilde,
    /// `h2 = h2~ + C2 h_rot`
    H2,
    V1,
    V2,
    HRot,
}

impl Block {
    pub const ALL: [Block; 6] = [Block::H1, Block::H2Tilde, Block::H2, Block::V1, Block::V2, Block::HRot];

    pub fn name(self) -> &'static str {
        match self {
            Block::H1 => "h1",
            Block::H2Tilde => "h2_tilde",
            Block::H2 => "h2",
            Block::V1 => "v1",
            Block::V2 => "v2",
            Block::HRot => "h_rot",
        }
    }
}

pub fn block_field(g: &Geometry, block: Block) -> Result<ModeField> {
    let k = singular_constants(g);
    let n = auto_truncation(g.s, DEFAULT_EPS);
    Ok(match block {
        Block::H1 => ModeField::new(g, h1_modes(&k, 1.0), Linear::None),
        Block::H2Tilde => ModeField::new(g, h2_tilde_modes(&k, 1.0), Linear::None),
        Block::H2 => {
            let rot = phirot_coefficients(g, n)?;
            ModeField::new(g, h2_tilde_modes(&k, 1.0).plus_scaled(&rot.modes, k.c2), Linear::None)
        }
        Block::V1 => phi1_coefficients(g, n)?.field(g),
        Block::V2 => phi2_coefficients(g, n)?.field(g),
        Block::HRot => phirot_coefficients(g, n)?.field(g),
    })
}

pub fn eval_flow(sol: &FlowSolution, x: f64, y: f64) -> Result<FieldSample> {
    sol.eval(x, y)
}

fn check_region(g: &Geometry, y: f64) -> Result<()> {
    let limit = narrow_limit(g);
    if !(y.abs() <= limit) {
        return Err(Error::OutOfRegion { y, limit });
    }
    Ok(())
}

/// Leading narrow-region stress as stated for the two backgrounds:
/// `2 mu sqrt(R) delta^{-1/2} (y^2+3R delta)(y^2-R delta)/(y^2+R delta)^2 I`
/// for `U_ex` and `2 mu sqrt(R/delta) R delta/(y^2+R delta) [[0,1],[1,0]]`
/// for `U_sh`, weighted by `a` and `(c+d)/2`.
pub fn sigma_narrow_asymptotic(g: &Geometry, bg: Background, y: f64) -> Result<Sym2> {
    check_region(g, y)?;
    let [wa, ws, _] = bg.weights();
    let (r, d, mu) = (g.r, g.delta, g.mu);
    let (rd, y2) = (r * d, y * y);
    let ex = 2.0 * mu * r.sqrt() / d.sqrt() * (y2 + 3.0 * rd) * (y2 - rd) / (y2 + rd).powi(2);
    let sh = 2.0 * mu * (r / d).sqrt() * rd / (y2 + rd);
    Ok(Sym2::identity().scale(wa * ex).add(&Sym2::off_diagonal().scale(ws * sh)))
}

/// Leading narrow-region stress built from the singular parts:
/// `2 c21 sigma[h1] + 2 c22 sigma[h2]` with the leading terms of the
/// constants (`c21 ~ 2 delta^{3/2}/sqrt R`, `c22 ~ sqrt(R delta)`) and the
/// pressure normalised to vanish at infinity.
pub fn sigma_narrow_from_singular(g: &Geometry, bg: Background, y: f64) -> Result<Sym2> {
    check_region(g, y)?;
    let [wa, ws, _] = bg.weights();
    let c21 = 2.0 * g.delta.powf(1.5) / g.r.sqrt();
    let c22 = (g.r * g.delta).sqrt();
    let ex = sigma_h1_narrow_gauged(g, y)?.scale(2.0 * c21);
    let sh = sigma_h2_narrow(g, y)?.scale(2.0 * c22);
    Ok(ex.scale(wa).add(&sh.scale(ws)))
}
