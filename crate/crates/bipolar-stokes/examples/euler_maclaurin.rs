//! `M + 1/2` against `s^2 F0` as `s` decreases, with the two summations of
//! the series side by side.

use bipolar_stokes::noslip::{f0_g0_integrals, F0, G0};
use bipolar_stokes::validation::euler_maclaurin_check;

fn main() -> bipolar_stokes::Result<()> {
    let q = f0_g0_integrals()?;
    println!("F0 = {:.16} (GK {:.16}, exp-sinh {:.16})", F0, q.f0_gk, q.f0_de);
    println!("G0 = {:.16} (GK {:.16}, exp-sinh {:.16})", G0, q.g0_gk, q.g0_de);
    println!("\n{:>8} {:>18} {:>12} {:>10} {:>10}", "s", "(M+1/2)/s^2", "deviation", "dev/s", "identity");
    for s in [0.1, 0.05, 0.02, 0.01, 0.005, 0.002, 0.001] {
        let r = euler_maclaurin_check(s)?;
        println!(
            "{s:>8} {:>18.14} {:>12.4e} {:>10.5} {:>10.1e}",
            r.scaled,
            r.deviation,
            r.deviation / s,
            r.identity_error
        );
    }
    Ok(())
}
