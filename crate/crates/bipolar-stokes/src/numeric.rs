//! Small numerical kernels: compensated summation, cancellation-free
//! hyperbolic differences and the quadrature rules used by the oracles.

use crate::error::{Error, Result};

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

pub fn compensated_sum<I: IntoIterator<Item = f64>>(it: I) -> f64 {
    let mut acc = Neumaier::new();
    for x in it {
        acc.add(x);
    }
    acc.value()
}

/// `sinh(n x) - n sinh(x)`, accurate when `n x` is small.
pub fn sinh_n_minus_n_sinh(n: f64, x: f64) -> f64 {
    if (n * x).abs() > 2.0 {
        return (n * x).sinh() - n * x.sinh();
    }
    // sum_{k>=1} ((n x)^{2k+1} - n x^{2k+1}) / (2k+1)!
    let nx = n * x;
    let (nx2, x2) = (nx * nx, x * x);
    let mut pn = nx;
    let mut p1 = x;
    let mut fact = 1.0;
    let mut acc = 0.0;
    for k in 1..60 {
        let j = (2 * k) as f64;
        fact *= j * (j + 1.0);
        pn *= nx2;
        p1 *= x2;
        let term = (pn - n * p1) / fact;
        acc += term;
        if term.abs() <= 1e-18 * acc.abs() {
            break;
        }
    }
    acc
}

/// `x cosh x - sinh x`, accurate near zero.
pub fn x_cosh_minus_sinh(x: f64) -> f64 {
    if x.abs() > 1.0 {
        return x * x.cosh() - x.sinh();
    }
    // sum_{k>=1} 2k x^{2k+1} / (2k+1)!
    let x2 = x * x;
    let mut p = x;
    let mut fact = 1.0;
    let mut acc = 0.0;
    for k in 1..40 {
        let j = (2 * k) as f64;
        fact *= j * (j + 1.0);
        p *= x2;
        let term = j * p / fact;
        acc += term;
        if term.abs() <= 1e-18 * acc.abs() {
            break;
        }
    }
    acc
}

/// `x - tanh x`, accurate near zero.
pub fn x_minus_tanh(x: f64) -> f64 {
    x_cosh_minus_sinh(x) / x.cosh()
}

/// `sinh x - x`, accurate near zero.
pub fn sinh_minus_x(x: f64) -> f64 {
    if x.abs() > 1.0 {
        return x.sinh() - x;
    }
    let x2 = x * x;
    let mut p = x;
    let mut fact = 1.0;
    let mut acc = 0.0;
    for k in 1..40 {
        let j = (2 * k) as f64;
        fact *= j * (j + 1.0);
        p *= x2;
        let term = p / fact;
        acc += term;
        if term.abs() <= 1e-18 * acc.abs() {
            break;
        }
    }
    acc
}

/// `e^{-x} sinh x`.
#[inline]
pub fn exp_neg_sinh(x: f64) -> f64 {
    -0.5 * (-2.0 * x).exp_m1()
}

/// `e^{-x} cosh x`.
#[inline]
pub fn exp_neg_cosh(x: f64) -> f64 {
    0.5 * (1.0 + (-2.0 * x).exp())
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

/// Adaptive Gauss–Kronrod (7/15) quadrature on a finite interval.
/// Returns the integral and an error estimate.
pub fn integrate_gk<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<(f64, f64)> {
    let mut stack = vec![(a, b, 0u32)];
    let mut total = Neumaier::new();
    let mut err = 0.0;
    let width = (b - a).abs();
    while let Some((lo, hi, depth)) = stack.pop() {
        let (v, e) = gk15(&f, lo, hi);
        let local_tol = tol * ((hi - lo).abs() / width).max(1e-3);
        if e <= local_tol || depth >= 48 {
            if depth >= 48 && e > local_tol {
                return Err(Error::NoConvergence(format!(
                    "Gauss-Kronrod bisection depth exhausted on [{lo}, {hi}]"
                )));
            }
            total.add(v);
            err += e;
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((lo, mid, depth + 1));
            stack.push((mid, hi, depth + 1));
        }
    }
    Ok((total.value(), err))
}

/// Double-exponential (exp-sinh) quadrature on `(0, inf)`; the step is
/// halved until two successive levels agree to `tol`.
pub fn integrate_exp_sinh<F: Fn(f64) -> f64>(f: F, tol: f64) -> Result<f64> {
    let half_pi = std::f64::consts::FRAC_PI_2;
    let node = |t: f64| {
        let x = (half_pi * t.sinh()).exp();
        let w = x * half_pi * t.cosh();
        (x, w)
    };
    let eval = |t: f64| {
        let (x, w) = node(t);
        if !x.is_finite() || x == 0.0 || w == 0.0 {
            0.0
        } else {
            let v = f(x) * w;
            if v.is_finite() {
                v
            } else {
                0.0
            }
        }
    };
    let t_max = 4.5;
    let mut h = 0.5;
    let mut acc = Neumaier::new();
    let mut t = -t_max;
    while t <= t_max + 1e-12 {
        acc.add(eval(t));
        t += h;
    }
    let mut prev = acc.value() * h;
    for _ in 0..12 {
        // add the midpoints of the current level
        let mut mid = Neumaier::new();
        let mut t = -t_max + 0.5 * h;
        while t < t_max {
            mid.add(eval(t));
            t += h;
        }
        acc.add(mid.value());
        h *= 0.5;
        let cur = acc.value() * h;
        if (cur - prev).abs() <= tol * cur.abs().max(1e-300) {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::NoConvergence(format!(
        "exp-sinh quadrature stalled at {prev}"
    )))
}

/// Composite trapezoid rule for a 2π-periodic integrand on `[0, 2π)`.
pub fn periodic_trapezoid<F: FnMut(f64) -> f64>(mut f: F, nodes: usize) -> f64 {
    let h = std::f64::consts::TAU / nodes as f64;
    let mut acc = Neumaier::new();
    for k in 0..nodes {
        acc.add(f(k as f64 * h));
    }
    acc.value() * h
}

/// Least-squares slope and coefficient of determination of `y` against `x`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|v| (v - mx) * (v - mx)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let syy: f64 = y.iter().map(|v| (v - my) * (v - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r2 = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    (slope, intercept, r2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hyperbolic_differences_match_direct_forms() {
        for &(n, x) in &[(2.0f64, 0.3f64), (5.0, 0.1), (3.0, 1.5), (40.0, 0.01)] {
            let direct: f64 = (n * x).sinh() - n * x.sinh();
            assert!((sinh_n_minus_n_sinh(n, x) - direct).abs() <= 1e-13 * direct.abs());
        }
        let x: f64 = 0.7;
        assert!((x_cosh_minus_sinh(x) - (x * x.cosh() - x.sinh())).abs() < 1e-15);
        assert!((sinh_minus_x(x) - (x.sinh() - x)).abs() < 1e-15);
        // tiny argument: leading terms
        let x = 1e-4;
        assert!((x_minus_tanh(x) / (x * x * x / 3.0) - 1.0).abs() < 1e-7);
        assert!((sinh_n_minus_n_sinh(2.0, x) / x.powi(3) - 1.0).abs() < 1e-7);
    }

    #[test]
    fn quadratures_agree_on_known_integrals() {
        let (v, _) = integrate_gk(|x| x.sin(), 0.0, std::f64::consts::PI, 1e-13).unwrap();
        assert!((v - 2.0).abs() < 1e-12);
        let v = integrate_exp_sinh(|x| (-x).exp(), 1e-13).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
        let v = integrate_exp_sinh(|x| 1.0 / (1.0 + x * x), 1e-13).unwrap();
        assert!((v - std::f64::consts::FRAC_PI_2).abs() < 1e-11);
        let v = periodic_trapezoid(|t| 1.0 / (2.0 - t.cos()), 64);
        assert!((v - std::f64::consts::TAU / 3f64.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn compensated_sum_recovers_small_addends() {
        let v = compensated_sum([1.0, 1e-16, 1e-16, -1.0]);
        assert!((v - 2e-16).abs() < 1e-30);
    }
}
