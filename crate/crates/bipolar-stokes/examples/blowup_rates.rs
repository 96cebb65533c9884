//! Sup norms of pressure, strain and stress for the extensional and shear
//! backgrounds, with log-log slopes over four decades of gap width.
//! Takes about half a minute.

use bipolar_stokes::assembly::{solve_flow, Background};
use bipolar_stokes::geometry::Geometry;
use bipolar_stokes::validation::{fit_rate, sup_norm_estimate, Quantity, RATE_DELTAS};

fn main() -> bipolar_stokes::Result<()> {
    for (name, bg) in [("extensional", Background::extensional()), ("shear", Background::shear())] {
        println!("{name}");
        let mut table = vec![Vec::new(); 3];
        for delta in RATE_DELTAS {
            let g = Geometry::new(1.0, delta, 1.0)?;
            let sol = solve_flow(&g, bg)?;
            print!("  delta={delta:.0e}");
            for (i, q) in Quantity::ALL.iter().enumerate() {
                let n = sup_norm_estimate(&g, |p| sol.eval_bipolar(p), *q)?;
                print!("  {}={:.5e} at ({:+.2e}, {:+.2e})", q.name(), n.value, n.at.0, n.at.1);
                table[i].push((delta, n.value));
            }
            println!();
        }
        for (i, q) in Quantity::ALL.iter().enumerate() {
            let fit = fit_rate(&table[i])?;
            println!("  slope {:<8} {:+.4} (r2 {:.4})", q.name(), fit.slope, fit.r_squared);
        }
    }
    Ok(())
}
