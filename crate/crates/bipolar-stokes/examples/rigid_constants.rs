//! Boundary integrals and the rigid-motion constants of the right cylinder,
//! with their leading-order behaviour as the gap closes.

use bipolar_stokes::assembly::integral_set;
use bipolar_stokes::geometry::Geometry;
use bipolar_stokes::noslip::{k_constants, krot_leading, kv_leading};

fn main() -> bipolar_stokes::Result<()> {
    println!(
        "{:>8} {:>13} {:>13} {:>13} {:>10} {:>10} {:>10} {:>10} {:>10}",
        "delta", "I1", "I22", "Irot", "c21/lead", "c22/lead", "c23", "Kv/lead", "Krot/lead"
    );
    for delta in [1e-1, 1e-2, 1e-3, 1e-4, 1e-5] {
        let g = Geometry::new(1.0, delta, 1.0)?;
        let set = integral_set(&g)?;
        let (b, c) = (set.integrals, set.constants);
        let (kv, krot) = k_constants(&g);
        println!(
            "{delta:>8.0e} {:>13.6e} {:>13.6e} {:>13.6e} {:>10.6} {:>10.6} {:>10.6} {:>10.6} {:>10.6}",
            b.i1,
            b.i22,
            b.i_rot,
            c.c21 / (2.0 * delta.powf(1.5)),
            c.c22 / delta.sqrt(),
            c.c23,
            kv / kv_leading(&g),
            krot / krot_leading(&g)
        );
    }
    Ok(())
}
