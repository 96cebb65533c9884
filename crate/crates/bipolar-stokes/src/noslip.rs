//! No-slip series solutions.
//!
//! * extensional: `(v1, q1)` with `v1 -> (x, -y)` at infinity,
//! * shear: `(v2, q2)` with `v2 -> (y, x)`,
//! * rotation: `(h_rot, p_rot)` with `h_rot = (y, -x)` on both cylinders.
//!
//! The stream functions are mode series in bipolar coordinates. Extensional
//! flow is odd in both `zeta` and `theta`; shear and rotation are even and
//! carry an additional logarithmic term whose coefficient `K` is fixed by
//! the decay condition at infinity.
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::FieldSample;
use crate::geometry::{tensor_to_cartesian, BipolarPoint, Frame, Geometry, Sym2};
use crate::numeric::{
    exp_neg_cosh, exp_neg_sinh, integrate_exp_sinh, integrate_gk, sinh_minus_x, sinh_n_minus_n_sinh,
    x_cosh_minus_sinh, Neumaier,
};
use crate::stream::{strain_from_jet, velocity_from_jet, StreamSeries, StreamTerm, ThetaFactor, ZetaFactor};

/// Default target for the boundary truncation error.
pub const DEFAULT_EPS: f64 = 1e-13;

/// Frozen values of the integrals of `f0` and `g0` (see [`f0_g0_integrals`]).
pub const F0: f64 = 0.728_098_782_495_226_2;
pub const G0: f64 = 1.537_149_076_223_107_4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FlowCase {
    Extensional,
    Shear,
    Rotation,
}

impl FlowCase {
    pub fn name(self) -> &'static str {
        match self {
            FlowCase::Extensional => "extensional",
            FlowCase::Shear => "shear",
            FlowCase::Rotation => "rotation",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    /// `sum (u_n sinh(n+1)z + l_n sinh(n-1)z) sin(n t)`, with `l_1` multiplying `z sin t`.
    Odd,
    /// `K log-term + c0 cosh z + d0 z sinh z + sum (u_n cosh(n+1)z + l_n cosh(n-1)z) cos(n t)`.
    Even,
}

/// Linear background flow added to a mode series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Background {
    None,
    /// `(x, -y)`
    Extensional,
    /// `(y, x)`
    Shear,
}

impl Background {
    fn velocity(self, x: f64, y: f64) -> [f64; 2] {
        match self {
            Background::None => [0.0, 0.0],
            Background::Extensional => [x, -y],
            Background::Shear => [y, x],
        }
    }

    fn strain(self) -> Sym2 {
        match self {
            Background::None => Sym2::default(),
            Background::Extensional => Sym2::new(1.0, 0.0, -1.0),
            Background::Shear => Sym2::off_diagonal(),
        }
    }
}

/// Coefficients of a mode series; `upper[n-1]` and `lower[n-1]` belong to mode `n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModeSeries {
    pub parity: Parity,
    pub log_k: f64,
    pub c0: f64,
    pub d0: f64,
    pub upper: Vec<f64>,
    pub lower: Vec<f64>,
}

impl ModeSeries {
    pub fn zero(parity: Parity, n: usize) -> Self {
        Self { parity, log_k: 0.0, c0: 0.0, d0: 0.0, upper: vec![0.0; n], lower: vec![0.0; n] }
    }

    pub fn n_max(&self) -> usize {
        self.upper.len()
    }

    /// `self + c * other`; both must have the same parity.
    pub fn plus_scaled(&self, other: &ModeSeries, c: f64) -> ModeSeries {
        assert_eq!(self.parity, other.parity, "mode series of different parity");
        let n = self.n_max().max(other.n_max());
        let get = |v: &Vec<f64>, i: usize| v.get(i).copied().unwrap_or(0.0);
        ModeSeries {
            parity: self.parity,
            log_k: self.log_k + c * other.log_k,
            c0: self.c0 + c * other.c0,
            d0: self.d0 + c * other.d0,
            upper: (0..n).map(|i| get(&self.upper, i) + c * get(&other.upper, i)).collect(),
            lower: (0..n).map(|i| get(&self.lower, i) + c * get(&other.lower, i)).collect(),
        }
    }

    pub fn stream(&self) -> StreamSeries {
        let mut terms = Vec::with_capacity(2 * self.n_max() + 2);
        match self.parity {
            Parity::Odd => {
                for (i, (&u, &l)) in self.upper.iter().zip(&self.lower).enumerate() {
                    let n = (i + 1) as u32;
                    terms.push(StreamTerm::new(u, ZetaFactor::Sinh(n + 1), ThetaFactor::Sin(n)));
                    let lz = if n == 1 { ZetaFactor::Zeta } else { ZetaFactor::Sinh(n - 1) };
                    terms.push(StreamTerm::new(l, lz, ThetaFactor::Sin(n)));
                }
            }
            Parity::Even => {
                terms.push(StreamTerm::new(self.c0, ZetaFactor::Cosh(1), ThetaFactor::Cos(0)));
                terms.push(StreamTerm::new(self.d0, ZetaFactor::ZetaSinh, ThetaFactor::Cos(0)));
                for (i, (&u, &l)) in self.upper.iter().zip(&self.lower).enumerate() {
                    let n = (i + 1) as u32;
                    terms.push(StreamTerm::new(u, ZetaFactor::Cosh(n + 1), ThetaFactor::Cos(n)));
                    terms.push(StreamTerm::new(l, ZetaFactor::Cosh(n - 1), ThetaFactor::Cos(n)));
                }
            }
        }
        StreamSeries::new(self.log_k, terms)
    }

    /// Pressure as `C + sum_n P_n b_n` where `b_n = cosh(nz) cos(nt)` (odd
    /// parity) or `sinh(nz) sin(nt)` (even parity), normalised to vanish at
    /// infinity.
    pub fn pressure_series(&self, g: &Geometry) -> PressureSeries {
        let k = 2.0 * g.mu / g.a;
        let n = self.n_max();
        let mut p = vec![0.0; n + 2];
        let mut constant = Neumaier::new();
        match self.parity {
            Parity::Odd => {
                for i in 0..n {
                    let m = i + 1;
                    let mf = m as f64;
                    let (u, l) = (self.upper[i], self.lower[i]);
                    if m == 1 {
                        p[1] += -k * (2.0 * u - l);
                        p[2] += k * u;
                        constant.add(k * (u - l));
                    } else {
                        p[m] -= k * ((mf + 1.0) * u - (mf - 1.0) * l);
                        p[m + 1] += k * mf * u;
                        p[m - 1] -= k * mf * l;
                        constant.add(k * (u + l));
                    }
                }
            }
            Parity::Even => {
                p[1] -= k * self.d0;
                for i in 0..n {
                    let m = i + 1;
                    let mf = m as f64;
                    let (u, l) = (self.upper[i], self.lower[i]);
                    p[m] += k * ((mf + 1.0) * u - (mf - 1.0) * l);
                    p[m + 1] -= k * mf * u;
                    if m >= 2 {
                        p[m - 1] += k * mf * l;
                    }
                }
            }
        }
        PressureSeries { parity: self.parity, coefficients: p, constant: constant.value() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PressureSeries {
    pub parity: Parity,
    pub coefficients: Vec<f64>,
    pub constant: f64,
}

impl PressureSeries {
    pub fn eval(&self, p: BipolarPoint) -> f64 {
        let (z, t) = (p.zeta, p.theta);
        let (e1, ei1, c1, s1) = (z.exp(), (-z).exp(), t.cos(), t.sin());
        let (mut en, mut ein, mut cn, mut sn) = (1.0f64, 1.0f64, 1.0f64, 0.0f64);
        let mut acc = Neumaier::new();
        acc.add(self.constant);
        let mut peak = 0.0f64;
        let mut quiet = 0;
        for (n, &c) in self.coefficients.iter().enumerate().skip(1) {
            if n % 128 == 0 {
                let nf = n as f64;
                en = (nf * z).exp();
                ein = (-nf * z).exp();
                cn = (nf * t).cos();
                sn = (nf * t).sin();
            } else {
                en *= e1;
                ein *= ei1;
                let cc = cn * c1 - sn * s1;
                sn = sn * c1 + cn * s1;
                cn = cc;
            }
            let b = match self.parity {
                Parity::Odd => 0.5 * (en + ein) * cn,
                Parity::Even => 0.5 * (en - ein) * sn,
            };
            acc.add(c * b);
            let env = c.abs() * en.max(ein);
            peak = peak.max(env);
            if peak > 0.0 && env <= 1e-18 * peak {
                quiet += 1;
                if quiet >= 8 {
                    break;
                }
            } else {
                quiet = 0;
            }
        }
        acc.value()
    }
}

/// A mode series together with its pressure and linear background: an
/// evaluable Stokes solution.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModeField {
    pub modes: ModeSeries,
    pub background: Background,
    #[serde(skip)]
    stream: StreamSeries,
    #[serde(skip)]
    pressure: PressureSeries,
}

impl ModeField {
    pub fn new(g: &Geometry, modes: ModeSeries, background: Background) -> Self {
        let stream = modes.stream();
        let pressure = modes.pressure_series(g);
        Self { modes, background, stream, pressure }
    }

    pub fn stream(&self) -> &StreamSeries {
        &self.stream
    }

    pub fn pressure_at(&self, p: BipolarPoint) -> f64 {
        self.pressure.eval(p)
    }

    pub fn sample(&self, g: &Geometry, p: BipolarPoint) -> Result<FieldSample> {
        if p.at_infinity() {
            return Err(Error::Domain("field requested at infinity".into()));
        }
        let (x, y) = g.to_cart(p)?;
        let jet = self.stream.eval(p, 2)?;
        let frame = Frame::at_unchecked(p);
        let (uz, ut) = velocity_from_jet(p, &jet);
        let mut u = frame.to_cartesian_vector(uz, ut);
        let bg = self.background.velocity(x, y);
        u[0] += bg[0];
        u[1] += bg[1];
        let strain = tensor_to_cartesian(&frame, &strain_from_jet(g, p, &jet)).add(&self.background.strain());
        Ok(FieldSample::new((x, y), p, u, self.pressure.eval(p), strain, g.mu))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NoSlipCoefficients {
    pub case: FlowCase,
    #[serde(rename = "K")]
    pub k: f64,
    #[serde(rename = "N")]
    pub n: usize,
    pub modes: ModeSeries,
    pub tail_bound: f64,
}

/// Smallest `N` with `N e^{-N s} / s <= eps`: the boundary envelope of the
/// mode series decays like `e^{-n s}`.
pub fn auto_truncation(s: f64, eps: f64) -> usize {
    let mut n = (1.0 / s).max(2.0);
    for _ in 0..50 {
        let next = ((1.0 / eps).ln() + (n / s).ln()) / s;
        if (next - n).abs() < 0.5 {
            n = next;
            break;
        }
        n = next;
    }
    let cap = 200.0 / s;
    if n > cap {
        log::warn!("truncation order {n:.0} capped at {cap:.0}");
        n = cap;
    }
    (n.ceil() as usize).max(2)
}

fn tail_estimate(modes: &ModeSeries, s: f64) -> f64 {
    let n = modes.n_max();
    let nf = n as f64;
    let last = modes.upper[n - 1].abs() * ((nf + 1.0) * s).cosh() + modes.lower[n - 1].abs() * ((nf - 1.0) * s).cosh();
    let r = (-s).exp();
    2.0 * nf * last * r / (1.0 - r)
}

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Argument(format!("truncation order must be at least 2 (got {n})")));
    }
    Ok(())
}

pub fn phi1_coefficients(g: &Geometry, n: usize) -> Result<NoSlipCoefficients> {
    check_n(n)?;
    let (a, s) = (g.a, g.s);
    let mut m = ModeSeries::zero(Parity::Odd, n);
    // sinh 2s - 2s cosh 2s
    let den1 = -x_cosh_minus_sinh(2.0 * s);
    // sinh s - s e^{-s}
    let num1 = sinh_minus_x(s) - s * (-s).exp_m1();
    m.upper[0] = -2.0 * a * (-s).exp() * num1 / den1;
    m.lower[0] = 4.0 * a * s.sinh().powi(2) / den1;
    let es_sinh = exp_neg_sinh(s);
    let eps_sinh = 0.5 * (2.0 * s).exp_m1();
    for k in 2..=n {
        let kf = k as f64;
        let d = sinh_n_minus_n_sinh(kf, 2.0 * s);
        let e = exp_neg_sinh(kf * s);
        m.upper[k - 1] = -2.0 * a * (e - kf * es_sinh) / d;
        m.lower[k - 1] = 2.0 * a * (e - kf * eps_sinh) / d;
    }
    let tail_bound = tail_estimate(&m, s);
    Ok(NoSlipCoefficients { case: FlowCase::Extensional, k: 0.0, n, modes: m, tail_bound })
}

/// The series `M` and `M + 1/2`, both summed without cancellation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MSeries {
    pub m: f64,
    pub m_plus_half: f64,
    pub m_prime: f64,
}

fn d_plus(n: f64, s: f64) -> f64 {
    (2.0 * n * s).sinh() + n * (2.0 * s).sinh()
}

/// `M = -4 sum_{n>=2} (e^{-ns} sinh ns + n^2 sinh^2 s + n sinh s cosh s) / (n(n^2-1)(sinh 2ns + n sinh 2s))`
/// and `M' = sum_{n>=2} 4n sinh^2 s / (sinh 2ns + n sinh 2s)`.
///
/// `M + 1/2` is `O(s^2)`; it is formed from the positive terms
/// `4(sinh^2 ns - n^2 sinh^2 s)/(n(n^2-1)(sinh 2ns + n sinh 2s))` up to a
/// cut where the remaining tail of `M` is below rounding, plus the exact
/// telescoping remainder `1/((m-1)m)`.
/// Term `n` of `M`.
pub fn m_term(n: usize, s: f64) -> f64 {
    let (nf, sh) = (n as f64, s.sinh());
    -4.0 * (exp_neg_sinh(nf * s) + nf * nf * sh * sh + nf * sh * s.cosh()) / (nf * (nf * nf - 1.0) * d_plus(nf, s))
}

/// Term `n` of `M + 1/2` after adding `2/(n(n^2-1))` to [`m_term`], in
/// the cancellation-free form.
pub fn m_shifted_term(n: usize, s: f64) -> f64 {
    let nf = n as f64;
    let minus = sinh_n_minus_n_sinh(nf, s);
    let plus = (nf * s).sinh() + nf * s.sinh();
    4.0 * minus * plus / (nf * (nf * nf - 1.0) * d_plus(nf, s))
}

pub fn m_series(s: f64) -> MSeries {
    let sh = s.sinh();
    let sh2 = sh * sh;
    let cut = ((20.0 / s).ceil() as usize).max(8);
    let mut half = Neumaier::new();
    for k in 2..cut {
        half.add(m_shifted_term(k, s));
    }
    let cf = cut as f64;
    half.add(1.0 / ((cf - 1.0) * cf));
    let mut k = cut;
    loop {
        let t = m_term(k, s);
        half.add(t);
        if t.abs() < 1e-30 || k > cut + 100_000 {
            break;
        }
        k += 1;
    }
    let m_plus_half = half.value();

    let mut mp = Neumaier::new();
    let mut k = 2usize;
    loop {
        let kf = k as f64;
        let t = 4.0 * kf * sh2 / d_plus(kf, s);
        mp.add(t);
        if t < 1e-17 * mp.value() || !t.is_finite() {
            break;
        }
        k += 1;
    }
    MSeries { m: m_plus_half - 0.5, m_plus_half, m_prime: mp.value() }
}

/// Log coefficients `(K_v, K_rot)` from the decay conditions.
pub fn k_constants(g: &Geometry) -> (f64, f64) {
    let (a, s) = (g.a, g.s);
    let ms = m_series(s);
    let p = s + s.sinh() * s.cosh();
    let sh2 = s.sinh().powi(2);
    let denom = s * sh2 * s.tanh() / p + ms.m_plus_half;
    let kv = a * (1.0 - s.tanh() - sh2 / p - ms.m_prime) / denom;
    let krot = -a / denom;
    (kv, krot)
}

pub fn phi2_coefficients(g: &Geometry, n: usize) -> Result<NoSlipCoefficients> {
    check_n(n)?;
    let (a, s) = (g.a, g.s);
    let (kv, _) = k_constants(g);
    let p = s + s.sinh() * s.cosh();
    let sh2 = s.sinh().powi(2);
    let mut m = ModeSeries::zero(Parity::Even, n);
    m.log_k = kv;
    m.c0 = -0.5 * a + a * sh2 / p + kv * ((-2.0 * s).exp_m1() - 2.0 * s * (1.0 + s)) / (2.0 * p);
    m.d0 = a / p - kv * sh2 / p;
    m.upper[0] = a * 2.0 / (4.0 * s).exp_m1() + kv / (1.0 + (2.0 * s).exp());
    m.lower[0] = 0.5 * a - a / (2.0 * s).sinh() + kv * (1.0 + s - 0.5 * s.tanh());
    let (em, ep) = (exp_neg_sinh(s), 0.5 * (2.0 * s).exp_m1());
    for k in 2..=n {
        let kf = k as f64;
        let d = d_plus(kf, s);
        let (ec, es) = (exp_neg_cosh(kf * s), exp_neg_sinh(kf * s));
        m.upper[k - 1] = 2.0 * a * (ec - kf * em) / d + 2.0 * kv * (es + kf * em) / (kf * (kf + 1.0) * d);
        m.lower[k - 1] = -2.0 * a * (ec - kf * ep) / d - 2.0 * kv * (es + kf * ep) / (kf * (kf - 1.0) * d);
    }
    let tail_bound = tail_estimate(&m, s);
    Ok(NoSlipCoefficients { case: FlowCase::Shear, k: kv, n, modes: m, tail_bound })
}

pub fn phirot_coefficients(g: &Geometry, n: usize) -> Result<NoSlipCoefficients> {
    check_n(n)?;
    let (a, s) = (g.a, g.s);
    let (_, kr) = k_constants(g);
    let p = s + s.sinh() * s.cosh();
    let sh2 = s.sinh().powi(2);
    let mut m = ModeSeries::zero(Parity::Even, n);
    m.log_k = kr;
    m.c0 = a - kr * (s * s + s + exp_neg_sinh(s)) / p;
    m.d0 = -kr * sh2 / p;
    m.upper[0] = 0.5 * kr * (-s).exp() / s.cosh();
    m.lower[0] = kr * (s + 1.0 - 0.5 * s.tanh());
    let (em, ep) = (exp_neg_sinh(s), 0.5 * (2.0 * s).exp_m1());
    for k in 2..=n {
        let kf = k as f64;
        let d = d_plus(kf, s);
        let es = exp_neg_sinh(kf * s);
        m.upper[k - 1] = 2.0 * kr * (kf * em + es) / (kf * (kf + 1.0) * d);
        m.lower[k - 1] = -2.0 * kr * (kf * ep + es) / (kf * (kf - 1.0) * d);
    }
    let tail_bound = tail_estimate(&m, s);
    Ok(NoSlipCoefficients { case: FlowCase::Rotation, k: kr, n, modes: m, tail_bound })
}

pub fn coefficients(g: &Geometry, case: FlowCase, n: usize) -> Result<NoSlipCoefficients> {
    match case {
        FlowCase::Extensional => phi1_coefficients(g, n),
        FlowCase::Shear => phi2_coefficients(g, n),
        FlowCase::Rotation => phirot_coefficients(g, n),
    }
}

impl NoSlipCoefficients {
    /// `c0 + sum (upper_n + lower_n)` (even cases); zero when the stream decays.
    pub fn gauge_sum(&self) -> f64 {
        let m = &self.modes;
        let mut acc = Neumaier::new();
        acc.add(m.c0);
        for (u, l) in m.upper.iter().zip(&m.lower) {
            acc.add(*u);
            acc.add(*l);
        }
        acc.value()
    }

    pub fn background(&self) -> Background {
        match self.case {
            FlowCase::Extensional => Background::Extensional,
            FlowCase::Shear => Background::Shear,
            FlowCase::Rotation => Background::None,
        }
    }

    pub fn field(&self, g: &Geometry) -> ModeField {
        ModeField::new(g, self.modes.clone(), self.background())
    }
}

/// `(v1, q1)`, `(v2, q2)` or `(h_rot, p_rot)` at `p`.
pub fn field_v(g: &Geometry, case: FlowCase, p: BipolarPoint) -> Result<FieldSample> {
    let c = coefficients(g, case, auto_truncation(g.s, DEFAULT_EPS))?;
    c.field(g).sample(g, p)
}

/// `f0(x) = (4 sinh^2 x - 4 x^2) / (x^3 (sinh 2x + 2x))`.
pub fn f0(x: f64) -> f64 {
    if x < 1.0 {
        let m = sinh_minus_x(x);
        4.0 * m * (x.sinh() + x) / (x * x * x * ((2.0 * x).sinh() + 2.0 * x))
    } else {
        // divide through by e^{2x}/2 to avoid overflow
        let e = (-2.0 * x).exp();
        let num = 4.0 * (0.25 * (1.0 - e).powi(2) - x * x * e);
        let den = x * x * x * (0.5 * (1.0 - e * e) + 2.0 * x * e);
        num / den
    }
}

/// `g0(x) = 4x / (sinh 2x + 2x)`.
pub fn g0(x: f64) -> f64 {
    if x < 1.0 {
        4.0 * x / ((2.0 * x).sinh() + 2.0 * x)
    } else {
        let e = (-2.0 * x).exp();
        8.0 * x * e / (1.0 - e * e + 4.0 * x * e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct F0G0 {
    /// Gauss–Kronrod on `[0, X]` plus the tail of the `2/x^3` envelope.
    pub f0_gk: f64,
    pub g0_gk: f64,
    /// Double-exponential rule on `(0, inf)`.
    pub f0_de: f64,
    pub g0_de: f64,
    /// Bound on the neglected part of the tails in the first scheme.
    pub tail_bound: f64,
}

/// `F0 = int_0^inf f0` and `G0 = int_0^inf g0` by two independent schemes.
///
/// `f0` decays like `2/x^3`, so the first scheme integrates `[0, 40]`
/// adaptively and adds `int_40^inf 2/x^3 = 1/1600`; what is left of both
/// tails is `O(e^{-80})`.
pub fn f0_g0_integrals() -> Result<F0G0> {
    let x_cut = 40.0;
    let tol = 1e-15;
    let (f_a, _) = integrate_gk(f0, 0.0, 1.0, tol)?;
    let (f_b, _) = integrate_gk(f0, 1.0, x_cut, tol)?;
    let (g_a, _) = integrate_gk(g0, 0.0, 1.0, tol)?;
    let (g_b, _) = integrate_gk(g0, 1.0, x_cut, tol)?;
    let f_tail = 1.0 / (x_cut * x_cut);
    let tail_bound = 8.0 * x_cut * x_cut * (-2.0 * x_cut).exp();
    let f0_de = integrate_exp_sinh(f0, 1e-14)?;
    let g0_de = integrate_exp_sinh(g0, 1e-14)?;
    Ok(F0G0 { f0_gk: f_a + f_b + f_tail, g0_gk: g_a + g_b, f0_de, g0_de, tail_bound })
}

/// `K_v` leading asymptotics `R (1 - G0)/F0 sqrt(R/delta)`.
pub fn kv_leading(g: &Geometry) -> f64 {
    g.r * (1.0 - G0) / F0 * (g.r / g.delta).sqrt()
}

/// `K_rot` leading asymptotics `-(R/F0) sqrt(R/delta)`.
pub fn krot_leading(g: &Geometry) -> f64 {
    -g.r / F0 * (g.r / g.delta).sqrt()
}

/// Second representation of `M + 1/2`: the positive summands up to
/// `n_terms` (or overflow), plus the tail `1/((m-1) m)` of their large-`n`
/// limit `2/(n(n^2-1))`.
pub fn m_plus_half_direct(s: f64, n_terms: usize) -> f64 {
    let mut acc = Neumaier::new();
    let mut k = 2usize;
    while k < n_terms && 2.0 * k as f64 * s <= 600.0 {
        acc.add(m_shifted_term(k, s));
        k += 1;
    }
    let m = k as f64;
    acc.add(1.0 / ((m - 1.0) * m));
    acc.value()
}
