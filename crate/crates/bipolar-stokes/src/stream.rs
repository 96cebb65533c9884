//! Stream functions of the separable biharmonic form
//!
//! `h Psi = K (cosh z - cos t) ln(2 cosh z - 2 cos t) + sum_j c_j Z_j(z) T_j(t)`
//!
//! with exact term-wise derivatives, and the conversion of stream data into
//! velocity and strain (bipolar frame and Cartesian).

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{bipolar_denominator, tensor_to_cartesian, BipolarPoint, Frame, Geometry, Sym2};
use crate::numeric::Neumaier;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ZetaFactor {
    Cosh(u32),
    Sinh(u32),
    ZetaCosh,
    ZetaSinh,
    Zeta,
}

/// `Cos(0)` is the constant factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ThetaFactor {
    Cos(u32),
    Sin(u32),
}

impl ThetaFactor {
    pub fn mode(self) -> u32 {
        match self {
            ThetaFactor::Cos(n) | ThetaFactor::Sin(n) => n,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StreamTerm {
    pub coefficient: f64,
    pub zeta: ZetaFactor,
    pub theta: ThetaFactor,
}

impl StreamTerm {
    pub fn new(coefficient: f64, zeta: ZetaFactor, theta: ThetaFactor) -> Self {
        Self { coefficient, zeta, theta }
    }
}

/// Value and partial derivatives of `h Psi` in `(zeta, theta)`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Jet {
    pub v: f64,
    pub z: f64,
    pub t: f64,
    pub zz: f64,
    pub zt: f64,
    pub tt: f64,
}

impl Jet {
    pub fn scaled(&self, c: f64) -> Jet {
        Jet {
            v: c * self.v,
            z: c * self.z,
            t: c * self.t,
            zz: c * self.zz,
            zt: c * self.zt,
            tt: c * self.tt,
        }
    }

    pub fn plus(&self, o: &Jet) -> Jet {
        Jet {
            v: self.v + o.v,
            z: self.z + o.z,
            t: self.t + o.t,
            zz: self.zz + o.zz,
            zt: self.zt + o.zt,
            tt: self.tt + o.tt,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StreamSeries {
    /// Coefficient of `(cosh z - cos t) ln(2 cosh z - 2 cos t)`.
    pub log_coefficient: f64,
    /// Terms sorted by ascending angular mode.
    pub terms: Vec<StreamTerm>,
    pub n_max: u32,
}

// exp and trig recurrences are refreshed from libm this often
const RESYNC: u32 = 128;

impl StreamSeries {
    pub fn new(log_coefficient: f64, mut terms: Vec<StreamTerm>) -> Self {
        terms.sort_by_key(|t| t.theta.mode());
        let n_max = terms.iter().map(|t| t.theta.mode()).max().unwrap_or(0);
        Self { log_coefficient, terms, n_max }
    }

    pub fn zero() -> Self {
        Self::new(0.0, Vec::new())
    }

    /// `self + c * other`, with terms of identical shape merged.
    pub fn plus_scaled(&self, other: &StreamSeries, c: f64) -> StreamSeries {
        let mut terms = self.terms.clone();
        let mut index: HashMap<(ZetaFactor, ThetaFactor), usize> =
            terms.iter().enumerate().map(|(i, t)| ((t.zeta, t.theta), i)).collect();
        for t in &other.terms {
            match index.get(&(t.zeta, t.theta)) {
                Some(&i) => terms[i].coefficient += c * t.coefficient,
                None => {
                    index.insert((t.zeta, t.theta), terms.len());
                    terms.push(StreamTerm::new(c * t.coefficient, t.zeta, t.theta));
                }
            }
        }
        StreamSeries::new(self.log_coefficient + c * other.log_coefficient, terms)
    }

    /// `h Psi` and its partials through `order` (at most 2) at `p`.
    pub fn eval(&self, p: BipolarPoint, order: u8) -> Result<Jet> {
        if order > 2 {
            return Err(Error::DerivativeOrder(order));
        }
        let (z, t) = (p.zeta, p.theta);
        let mut acc = [Neumaier::new(); 6];

        if self.log_coefficient != 0.0 {
            let d = bipolar_denominator(z, t);
            if d == 0.0 || p.at_infinity() {
                return Err(Error::Domain("log term evaluated at infinity".into()));
            }
            let k = self.log_coefficient;
            let l1 = (2.0 * d).ln() + 1.0;
            let (sz, cz, st, ct) = (z.sinh(), z.cosh(), t.sin(), t.cos());
            acc[0].add(k * d * (l1 - 1.0));
            acc[1].add(k * sz * l1);
            acc[2].add(k * st * l1);
            acc[3].add(k * (cz * l1 + sz * sz / d));
            acc[4].add(k * sz * st / d);
            acc[5].add(k * (ct * l1 + st * st / d));
        }

        let (e1, ei1) = (z.exp(), (-z).exp());
        let (c1, s1) = (t.cos(), t.sin());
        let (ch1, sh1) = (z.cosh(), z.sinh());
        // running state for mode n: e^{n z}, e^{-n z}, cos n t, sin n t
        let mut n = 0u32;
        let (mut en, mut ein, mut cn, mut sn) = (1.0f64, 1.0f64, 1.0f64, 0.0f64);
        let mut peak = 0.0f64;
        let mut quiet = 0u32;
        let mut group_env = 0.0f64;
        let mut group_n = u32::MAX;

        for term in &self.terms {
            let m = term.theta.mode();
            if m != group_n {
                if group_n != u32::MAX {
                    // stop once the envelope of whole mode groups is negligible
                    peak = peak.max(group_env);
                    if peak > 0.0 && group_env <= 1e-18 * peak {
                        quiet += 1;
                        if quiet >= 8 {
                            break;
                        }
                    } else {
                        quiet = 0;
                    }
                }
                group_n = m;
                group_env = 0.0;
                while n < m {
                    n += 1;
                    if n.is_multiple_of(RESYNC) {
                        let nf = n as f64;
                        en = (nf * z).exp();
                        ein = (-nf * z).exp();
                        cn = (nf * t).cos();
                        sn = (nf * t).sin();
                    } else {
                        en *= e1;
                        ein *= ei1;
                        let c = cn * c1 - sn * s1;
                        sn = sn * c1 + cn * s1;
                        cn = c;
                    }
                }
            }
            let nf = n as f64;
            let (tv, tp, tpp) = match term.theta {
                ThetaFactor::Cos(_) => (cn, -nf * sn, -nf * nf * cn),
                ThetaFactor::Sin(_) => (sn, nf * cn, -nf * nf * sn),
            };
            let (zv, zp, zpp, grow) = match term.zeta {
                ZetaFactor::Cosh(k) | ZetaFactor::Sinh(k) => {
                    let (ek, eik) = if k == n + 1 {
                        (en * e1, ein * ei1)
                    } else if k + 1 == n {
                        (en * ei1, ein * e1)
                    } else if k == n {
                        (en, ein)
                    } else {
                        let kf = k as f64;
                        ((kf * z).exp(), (-kf * z).exp())
                    };
                    let kf = k as f64;
                    let (c, s) = (0.5 * (ek + eik), 0.5 * (ek - eik));
                    let big = ek.max(eik);
                    if matches!(term.zeta, ZetaFactor::Cosh(_)) {
                        (c, kf * s, kf * kf * c, big * (1.0 + kf * kf))
                    } else {
                        (s, kf * c, kf * kf * s, big * (1.0 + kf * kf))
                    }
                }
                ZetaFactor::ZetaCosh => (z * ch1, ch1 + z * sh1, 2.0 * sh1 + z * ch1, 4.0 * ch1),
                ZetaFactor::ZetaSinh => (z * sh1, sh1 + z * ch1, 2.0 * ch1 + z * sh1, 4.0 * ch1),
                ZetaFactor::Zeta => (z, 1.0, 0.0, 1.0),
            };
            let c = term.coefficient;
            acc[0].add(c * zv * tv);
            acc[1].add(c * zp * tv);
            acc[2].add(c * zv * tp);
            acc[3].add(c * zpp * tv);
            acc[4].add(c * zp * tp);
            acc[5].add(c * zv * tpp);
            group_env += c.abs() * grow * (1.0 + nf * nf);
        }
        Ok(Jet {
            v: acc[0].value(),
            z: acc[1].value(),
            t: acc[2].value(),
            zz: acc[3].value(),
            zt: acc[4].value(),
            tt: acc[5].value(),
        })
    }

    /// Residual of `(d_z^4 + 2 d_z^2 d_t^2 + d_t^4 - 2 d_z^2 + 2 d_t^2 + 1)(h Psi)`
    /// by central finite differences with step `step`.
    pub fn biharmonic_residual_fd(&self, p: BipolarPoint, step: f64) -> Result<f64> {
        let f = |dz: f64, dt: f64| -> Result<f64> {
            Ok(self.eval(BipolarPoint::new(p.zeta + dz, p.theta + dt), 0)?.v)
        };
        let k = step;
        let f0 = f(0.0, 0.0)?;
        let d2 = |dz: f64, dt: f64| -> Result<f64> { Ok(f(dz, dt)? + f(-dz, -dt)?) };
        let fz4 = (d2(2.0 * k, 0.0)? - 4.0 * d2(k, 0.0)? + 6.0 * f0) / k.powi(4);
        let ft4 = (d2(0.0, 2.0 * k)? - 4.0 * d2(0.0, k)? + 6.0 * f0) / k.powi(4);
        let fzz = (d2(k, 0.0)? - 2.0 * f0) / (k * k);
        let ftt = (d2(0.0, k)? - 2.0 * f0) / (k * k);
        let corners = f(k, k)? + f(k, -k)? + f(-k, k)? + f(-k, -k)?;
        let edges = d2(k, 0.0)? + d2(0.0, k)?;
        let fzztt = (corners - 2.0 * edges + 4.0 * f0) / k.powi(4);
        Ok(fz4 + 2.0 * fzztt + ft4 - 2.0 * fzz + 2.0 * ftt + f0)
    }
}

/// Bipolar velocity components `(u_zeta, u_theta)` from the jet of `h Psi`.
pub fn velocity_from_jet(p: BipolarPoint, j: &Jet) -> (f64, f64) {
    let d = bipolar_denominator(p.zeta, p.theta);
    (
        -j.t + j.v * p.theta.sin() / d,
        j.z - j.v * p.zeta.sinh() / d,
    )
}

/// Bipolar strain `(E_zz, E_zt, E_tt)` (stored as `xx`, `xy`, `yy`) from the jet.
pub fn strain_from_jet(g: &Geometry, p: BipolarPoint, j: &Jet) -> Sym2 {
    let a = g.a;
    let d = bipolar_denominator(p.zeta, p.theta);
    let (sz, cz, st, ct) = (p.zeta.sinh(), p.zeta.cosh(), p.theta.sin(), p.theta.cos());
    // q = 1/h = a/d and its partials
    let q = a / d;
    let d2 = d * d;
    let d3 = d2 * d;
    let qz = -a * sz / d2;
    let qt = -a * st / d2;
    let qzz = -a * cz / d2 + 2.0 * a * sz * sz / d3;
    let qzt = 2.0 * a * sz * st / d3;
    let qtt = -a * ct / d2 + 2.0 * a * st * st / d3;
    let pz = q * j.z + qz * j.v;
    let pt = q * j.t + qt * j.v;
    let pzz = q * j.zz + 2.0 * qz * j.z + qzz * j.v;
    let pzt = q * j.zt + qz * j.t + qt * j.z + qzt * j.v;
    let ptt = q * j.tt + 2.0 * qt * j.t + qtt * j.v;
    let h = d / a;
    let (hz, ht) = (sz / a, st / a);
    let ezz = -h * (hz * pt + h * pzt) - h * pz * ht;
    let ett = h * (ht * pz + h * pzt) + h * pt * hz;
    let ezt = 0.5 * (2.0 * h * hz * pz + h * h * pzz - 2.0 * h * ht * pt - h * h * ptt);
    Sym2::new(ezz, ezt, ett)
}

pub fn velocity_bipolar(series: &StreamSeries, p: BipolarPoint) -> Result<(f64, f64)> {
    if p.at_infinity() {
        return Err(Error::Domain("velocity requested at infinity".into()));
    }
    let j = series.eval(p, 1)?;
    Ok(velocity_from_jet(p, &j))
}

pub fn strain_bipolar(series: &StreamSeries, g: &Geometry, p: BipolarPoint) -> Result<Sym2> {
    if p.at_infinity() {
        return Err(Error::Domain("strain requested at infinity".into()));
    }
    let j = series.eval(p, 2)?;
    Ok(strain_from_jet(g, p, &j))
}

/// Cartesian velocity and strain of a stream series at `p`.
pub fn cartesian_kinematics(series: &StreamSeries, g: &Geometry, p: BipolarPoint) -> Result<([f64; 2], Sym2)> {
    if p.at_infinity() {
        return Err(Error::Domain("kinematics requested at infinity".into()));
    }
    let j = series.eval(p, 2)?;
    let frame = Frame::at_unchecked(p);
    let (uz, ut) = velocity_from_jet(p, &j);
    let e = strain_from_jet(g, p, &j);
    Ok((frame.to_cartesian_vector(uz, ut), tensor_to_cartesian(&frame, &e)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_sinh_term_derivatives_at_zero() {
        let s = StreamSeries::new(0.0, vec![StreamTerm::new(1.0, ZetaFactor::ZetaSinh, ThetaFactor::Cos(0))]);
        let j = s.eval(BipolarPoint::new(0.0, 0.7), 2).unwrap();
        assert_eq!(j.v, 0.0);
        assert_eq!(j.z, 0.0);
        assert!((j.zz - 2.0).abs() < 1e-15);
    }

    #[test]
    fn log_term_value_at_gap_centre() {
        let s = StreamSeries::new(1.5, vec![]);
        let j = s.eval(BipolarPoint::new(0.0, std::f64::consts::PI), 0).unwrap();
        assert!((j.v - 2.0 * 1.5 * 4f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn order_above_two_is_rejected() {
        let s = StreamSeries::zero();
        assert!(matches!(s.eval(BipolarPoint::new(0.1, 1.0), 3), Err(Error::DerivativeOrder(3))));
    }

    #[test]
    fn recurrences_match_direct_evaluation_for_high_modes() {
        let terms: Vec<_> = (1..600u32)
            .flat_map(|n| {
                let c = (-(n as f64) * 0.02).exp();
                [
                    StreamTerm::new(c, ZetaFactor::Cosh(n + 1), ThetaFactor::Cos(n)),
                    StreamTerm::new(-c, ZetaFactor::Cosh(n - 1), ThetaFactor::Cos(n)),
                ]
            })
            .collect();
        let s = StreamSeries::new(0.0, terms.clone());
        let p = BipolarPoint::new(0.009, 2.3);
        let j = s.eval(p, 2).unwrap();
        let mut v = 0.0;
        let mut zz = 0.0;
        for t in &terms {
            if let (ZetaFactor::Cosh(k), ThetaFactor::Cos(n)) = (t.zeta, t.theta) {
                let (k, n) = (k as f64, n as f64);
                v += t.coefficient * (k * p.zeta).cosh() * (n * p.theta).cos();
                zz += t.coefficient * k * k * (k * p.zeta).cosh() * (n * p.theta).cos();
            }
        }
        assert!((j.v - v).abs() < 1e-12 * v.abs().max(1.0));
        assert!((j.zz - zz).abs() < 1e-11 * zz.abs().max(1.0));
    }
}
