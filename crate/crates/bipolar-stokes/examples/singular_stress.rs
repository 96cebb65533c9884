//! Stress of the two singular solutions across the gap, next to the
//! narrow-region closed forms.

use bipolar_stokes::geometry::Geometry;
use bipolar_stokes::singular::{
    h1_field, h2_tilde_field, sigma_h1_narrow_gauged, sigma_h2_narrow, singular_constants,
};

fn main() -> bipolar_stokes::Result<()> {
    for delta in [1e-3, 1e-4, 1e-5] {
        let g = Geometry::new(1.0, delta, 1.0)?;
        let k = singular_constants(&g);
        println!("delta={delta:e}  A1={:.6e} B1={:.6e} A2={:.6e} C2={:.6}", k.a1, k.b1, k.a2, k.c2);
        println!("  {:>10} {:>14} {:>14} {:>14} {:>14}", "y/sqrt(Rd)", "sxx[h1]", "closed", "sxy[h2]", "closed");
        let w = (g.r * delta).sqrt();
        for t in [0.0, 0.5, 1.0, 1.5] {
            let y = t * w;
            let p = g.to_bipolar(0.0, y)?;
            let s1 = h1_field(&g, p)?.stress;
            let s2 = h2_tilde_field(&g, p)?.stress;
            println!(
                "  {t:>10.2} {:>14.6e} {:>14.6e} {:>14.6e} {:>14.6e}",
                s1.xx,
                sigma_h1_narrow_gauged(&g, y)?.xx,
                s2.xy,
                sigma_h2_narrow(&g, y)?.xy
            );
        }
    }
    Ok(())
}
