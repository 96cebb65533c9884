//! Writes the composed flow for a general linear background on a grid,
//! in the same CSV layout as the `field` subcommand.
//!
//!     cargo run --example field_csv -- out.csv

use std::fs::File;
use std::io::{BufWriter, Write};

use bipolar_stokes::assembly::{solve_flow, Background};
use bipolar_stokes::cli::{csv_row, CSV_HEADER};
use bipolar_stokes::geometry::Geometry;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args().nth(1).unwrap_or_else(|| "field.csv".into());
    let g = Geometry::new(1.0, 1e-3, 1.0)?;
    // U = [[a, c], [d, -a]]
    let sol = solve_flow(&g, Background::new(1.0, 0.5, -0.2))?;
    println!("c21={:.6e} c22={:.6e} c23={:.6} N={}", sol.constants.constants.c21, sol.constants.constants.c22, sol.constants.constants.c23, sol.n);

    let (nx, ny) = (121, 81);
    let mut w = BufWriter::new(File::create(&path)?);
    writeln!(w, "{CSV_HEADER}")?;
    for j in 0..ny {
        let y = -1.0 + 2.0 * j as f64 / (ny - 1) as f64;
        for i in 0..nx {
            let x = -2.5 + 5.0 * i as f64 / (nx - 1) as f64;
            writeln!(w, "{}", csv_row(&sol, x, y)?)?;
        }
    }
    w.flush()?;
    println!("wrote {} rows to {path}", nx * ny);
    Ok(())
}
