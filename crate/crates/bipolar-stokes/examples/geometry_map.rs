//! Bipolar coordinates for a pair of cylinders: foci, boundary circles and
//! a round trip through the map.
//!
//!     cargo run --example geometry_map -- 0.01

use bipolar_stokes::geometry::{BipolarPoint, Frame, Geometry, Side};

fn main() -> bipolar_stokes::Result<()> {
    let delta: f64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1e-2);
    let g = Geometry::new(1.0, delta, 1.0)?;
    println!("R={} delta={} a={:.12} s={:.12}", g.r, g.delta, g.a, g.s);
    println!("half gap R(cosh s - 1) = {:.3e}", g.r * (g.s.cosh() - 1.0));

    println!("\nright circle (zeta = s):");
    for k in 0..8 {
        let theta = k as f64 * std::f64::consts::PI / 4.0 + 0.1;
        let p = g.boundary_point(Side::Right, theta);
        let (x, y) = g.to_cart(p)?;
        let f = Frame::at(p)?;
        println!(
            "  theta={theta:.3}  (x, y)=({x:+.6}, {y:+.6})  e_zeta=({:+.4}, {:+.4})  1/h={:.4e}",
            f.e_zeta()[0],
            f.e_zeta()[1],
            1.0 / g.scale_h(p)
        );
    }

    let p = BipolarPoint::new(0.3 * g.s, 1.2);
    let (x, y) = g.to_cart(p)?;
    let back = g.to_bipolar(x, y)?;
    println!("\nround trip ({}, {}) -> ({x:.6}, {y:.6}) -> ({}, {})", p.zeta, p.theta, back.zeta, back.theta);
    Ok(())
}
