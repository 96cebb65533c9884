//! Series coefficients of the three regular solutions and how well they
//! meet the no-slip condition.
//!
//!     cargo run --example noslip_coefficients -- 1e-3

use std::f64::consts::PI;

use bipolar_stokes::geometry::{Geometry, Side};
use bipolar_stokes::noslip::{auto_truncation, coefficients, FlowCase, DEFAULT_EPS};

fn main() -> bipolar_stokes::Result<()> {
    let delta: f64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1e-3);
    let g = Geometry::new(1.0, delta, 1.0)?;
    let n = auto_truncation(g.s, DEFAULT_EPS);
    println!("delta={delta:e} s={:.6e} N={n}", g.s);

    for case in [FlowCase::Extensional, FlowCase::Shear, FlowCase::Rotation] {
        let c = coefficients(&g, case, n)?;
        let field = c.field(&g);
        let mut worst = 0.0f64;
        for side in [Side::Left, Side::Right] {
            for k in 0..720 {
                let p = g.boundary_point(side, (k as f64 + 0.5) * PI / 360.0);
                let smp = field.sample(&g, p)?;
                let target = if case == FlowCase::Rotation { [smp.y, -smp.x] } else { [0.0, 0.0] };
                worst = worst.max((smp.u[0] - target[0]).abs()).max((smp.u[1] - target[1]).abs());
            }
        }
        println!("\n{} K={:.6e} tail_bound={:.1e} boundary error={worst:.1e}", case.name(), c.k, c.tail_bound);
        for i in [0, 1, 2, 9, n / 2, n - 1] {
            println!("  n={:<5} upper={:+.6e} lower={:+.6e}", i + 1, c.modes.upper[i], c.modes.lower[i]);
        }
    }
    Ok(())
}
