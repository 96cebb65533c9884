//! Command-line front end: `geometry`, `field`, `constants`, `coeffs`,
//! `rates` and `validate`.
//!
//! Exit codes: 0 success, 1 failed validation, 2 bad arguments, 3 I/O
//! failure, 4 numerical degeneracy.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use crate::assembly::{integral_set, solve_flow_with, Background, FlowSolution};
use crate::error::Error;
use crate::geometry::Geometry;
use crate::noslip::{auto_truncation, coefficients, k_constants, FlowCase, DEFAULT_EPS, F0, G0};
use crate::singular::singular_constants;
use crate::validation::{fit_rate, run_criterion, sup_norm_estimate, CheckResult, Quantity, CRITERIA};

pub const CSV_HEADER: &str = "x,y,zeta,theta,inside_mask,ux,uy,p,Exx,Exy,Eyy,Sxx,Sxy,Syy";

#[derive(Debug, Parser)]
#[command(name = "bipolar-stokes", version, about = "Stokes flow around two close cylinders")]
pub struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, clap::Args)]
pub struct GeometryArgs {
    /// Cylinder radius.
    #[arg(long = "R", default_value_t = 1.0)]
    pub r: f64,
    /// Gap between the cylinders.
    #[arg(long, default_value_t = 1e-2)]
    pub delta: f64,
    /// Viscosity.
    #[arg(long, default_value_t = 1.0)]
    pub mu: f64,
}

impl GeometryArgs {
    fn build(&self) -> Result<Geometry, Error> {
        Geometry::new(self.r, self.delta, self.mu)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CaseArg {
    Ex,
    Sh,
    Rot,
}

impl From<CaseArg> for FlowCase {
    fn from(c: CaseArg) -> Self {
        match c {
            CaseArg::Ex => FlowCase::Extensional,
            CaseArg::Sh => FlowCase::Shear,
            CaseArg::Rot => FlowCase::Rotation,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Derived geometric quantities.
    Geometry(GeometryArgs),
    /// Sample the composed flow on a rectangular grid.
    Field {
        #[command(flatten)]
        geometry: GeometryArgs,
        /// Background: ex, sh or rot; overridden by --a/--c/--d.
        #[arg(long, value_enum, default_value_t = CaseArg::Ex)]
        background: CaseArg,
        /// Coefficients of U = [[a, c], [d, -a]] (x, y).
        #[arg(long)]
        a: Option<f64>,
        #[arg(long)]
        c: Option<f64>,
        #[arg(long)]
        d: Option<f64>,
        #[arg(long, default_value_t = -3.0, allow_negative_numbers = true)]
        xmin: f64,
        #[arg(long, default_value_t = 3.0, allow_negative_numbers = true)]
        xmax: f64,
        #[arg(long, default_value_t = -2.0, allow_negative_numbers = true)]
        ymin: f64,
        #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
        ymax: f64,
        #[arg(long, default_value_t = 61)]
        nx: usize,
        #[arg(long, default_value_t = 41)]
        ny: usize,
        /// Truncation order (automatic when omitted).
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Output file (stdout when omitted).
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Boundary integrals, rigid-motion constants and series constants.
    Constants(GeometryArgs),
    /// No-slip series coefficients.
    Coeffs {
        #[command(flatten)]
        geometry: GeometryArgs,
        #[arg(long = "case", value_enum, default_value_t = CaseArg::Ex)]
        case: CaseArg,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Sup norms over a list of gaps and their log-log slopes.
    Rates {
        #[arg(long = "R", default_value_t = 1.0)]
        r: f64,
        #[arg(long, default_value_t = 1.0)]
        mu: f64,
        #[arg(long, value_enum, default_value_t = CaseArg::Ex)]
        background: CaseArg,
        #[arg(long, value_delimiter = ',', default_values_t = vec![1e-2, 1e-3, 1e-4, 1e-5])]
        deltas: Vec<f64>,
    },
    /// Run the acceptance checks; exits 0 only if all pass.
    Validate {
        /// Restrict to these criteria (1-12).
        #[arg(long, value_delimiter = ',')]
        criteria: Vec<u8>,
    },
}

/// Why a command stopped.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Io(io::Error),
    Solver(Error),
    ChecksFailed(usize),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::ChecksFailed(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Io(_) => 3,
            Failure::Solver(e) => match e {
                Error::Degenerate { .. } | Error::DegenerateBackground | Error::NoConvergence(_) => 4,
                _ => 2,
            },
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "{m}"),
            Failure::Io(e) => write!(f, "I/O error: {e}"),
            Failure::Solver(e) => write!(f, "{e}"),
            Failure::ChecksFailed(n) => write!(f, "{n} check(s) failed"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Solver(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn background_of(case: CaseArg, a: Option<f64>, c: Option<f64>, d: Option<f64>) -> Background {
    if a.is_some() || c.is_some() || d.is_some() {
        return Background::new(a.unwrap_or(0.0), c.unwrap_or(0.0), d.unwrap_or(0.0));
    }
    match case {
        CaseArg::Ex => Background::extensional(),
        CaseArg::Sh => Background::shear(),
        CaseArg::Rot => Background::rotation(),
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// One CSV row of the field grid.
pub fn csv_row(sol: &FlowSolution, x: f64, y: f64) -> Result<String, Error> {
    let g = &sol.geometry;
    let bp = g.to_bipolar(x, y).ok();
    let (zeta, theta) = (bp.map(|p| p.zeta), bp.map(|p| p.theta));
    let inside = g.inside_disk(x, y).is_some();
    let mut row = format!("{x},{y},{},{},{}", fmt_opt(zeta), fmt_opt(theta), inside as u8);
    if inside {
        row.push_str(",,,,,,,,,");
        return Ok(row);
    }
    let s = sol.eval(x, y)?;
    let vals = [s.u[0], s.u[1], s.p, s.strain.xx, s.strain.xy, s.strain.yy, s.stress.xx, s.stress.xy, s.stress.yy];
    for v in vals {
        let _ = write!(row, ",{v}");
    }
    Ok(row)
}

fn grid_axis(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

fn write_grid(out: &mut dyn Write, rows: &[String], format: Format) -> io::Result<()> {
    match format {
        Format::Csv => {
            writeln!(out, "{CSV_HEADER}")?;
            for r in rows {
                writeln!(out, "{r}")?;
            }
        }
        Format::Json => {
            let cols: Vec<&str> = CSV_HEADER.split(',').collect();
            let recs: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| {
                    let m: serde_json::Map<String, serde_json::Value> = cols
                        .iter()
                        .zip(r.split(','))
                        .map(|(k, v)| {
                            let val = v.parse::<f64>().map(|x| json!(x)).unwrap_or(serde_json::Value::Null);
                            (k.to_string(), val)
                        })
                        .collect();
                    serde_json::Value::Object(m)
                })
                .collect();
            writeln!(out, "{}", serde_json::to_string(&recs).expect("serialisable"))?;
        }
    }
    Ok(())
}

/// Runs a parsed command, writing to `out` (field files go to `--output`).
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), Failure> {
    match cli.command {
        Command::Geometry(args) => {
            let g = args.build()?;
            let [l, r] = g.centers();
            let half = g.narrow_half_height();
            let half_gap = g.r * (g.s.cosh() - 1.0);
            if cli.json {
                let v = json!({
                    "R": g.r, "delta": g.delta, "mu": g.mu, "a": g.a, "s": g.s,
                    "center_left": [l.0, l.1], "center_right": [r.0, r.1],
                    "half_gap": half_gap,
                    "narrow_x": [-(g.r + 0.5 * g.delta), g.r + 0.5 * g.delta],
                    "narrow_y": [-half, half],
                });
                writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("serialisable"))?;
            } else {
                writeln!(out, "R={}", g.r)?;
                writeln!(out, "delta={}", g.delta)?;
                writeln!(out, "mu={}", g.mu)?;
                writeln!(out, "a={}", g.a)?;
                writeln!(out, "s={}", g.s)?;
                writeln!(out, "center_left={},{}", l.0, l.1)?;
                writeln!(out, "center_right={},{}", r.0, r.1)?;
                writeln!(out, "half_gap={half_gap}")?;
                writeln!(out, "narrow_x={},{}", -(g.r + 0.5 * g.delta), g.r + 0.5 * g.delta)?;
                writeln!(out, "narrow_y={},{}", -half, half)?;
            }
        }
        Command::Field { geometry, background, a, c, d, xmin, xmax, ymin, ymax, nx, ny, n, format, output } => {
            if nx < 2 || ny < 2 {
                return Err(Failure::Usage("grid resolution must be at least 2 per axis".into()));
            }
            if !(xmin < xmax && ymin < ymax) {
                return Err(Failure::Usage("grid bounds must satisfy min < max".into()));
            }
            let format = if cli.json { Format::Json } else { format };
            let g = geometry.build()?;
            let bg = background_of(background, a, c, d);
            let n = n.unwrap_or_else(|| auto_truncation(g.s, DEFAULT_EPS));
            let sol = solve_flow_with(&g, bg, n)?;
            let xs = grid_axis(xmin, xmax, nx);
            let ys = grid_axis(ymin, ymax, ny);
            let rows: Vec<String> = ys
                .par_iter()
                .map(|&y| xs.iter().map(|&x| csv_row(&sol, x, y)).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?
                .into_iter()
                .flatten()
                .collect();
            match &output {
                Some(path) => {
                    let mut file = BufWriter::new(File::create(path)?);
                    write_grid(&mut file, &rows, format)?;
                    file.flush()?;
                }
                None => write_grid(out, &rows, format)?,
            }
            if output.is_some() && cli.json {
                writeln!(out, "{}", json!({"rows": rows.len(), "N": n}))?;
            }
        }
        Command::Constants(args) => {
            let g = args.build()?;
            let set = integral_set(&g)?;
            let k = singular_constants(&g);
            let (kv, krot) = k_constants(&g);
            let mut v = serde_json::to_value(set).expect("serialisable");
            let extra = json!({
                "K_v": kv, "K_rot": krot, "A1": k.a1, "B1": k.b1, "A2": k.a2, "C2": k.c2, "F0": F0, "G0": G0,
            });
            v.as_object_mut()
                .expect("object")
                .extend(extra.as_object().expect("object").clone());
            if cli.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("serialisable"))?;
            } else {
                for (key, val) in v.as_object().expect("object") {
                    writeln!(out, "{key}={val}")?;
                }
            }
        }
        Command::Coeffs { geometry, case, n } => {
            let g = geometry.build()?;
            let n = n.unwrap_or_else(|| auto_truncation(g.s, DEFAULT_EPS));
            let c = coefficients(&g, case.into(), n)?;
            if cli.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&c).expect("serialisable"))?;
            } else {
                writeln!(out, "case={}", c.case.name())?;
                writeln!(out, "K={}", c.k)?;
                writeln!(out, "N={}", c.n)?;
                writeln!(out, "c0={}", c.modes.c0)?;
                writeln!(out, "d0={}", c.modes.d0)?;
                writeln!(out, "tail_bound={:e}", c.tail_bound)?;
                writeln!(out, "n,upper,lower")?;
                for (i, (u, l)) in c.modes.upper.iter().zip(&c.modes.lower).enumerate() {
                    writeln!(out, "{},{u},{l}", i + 1)?;
                }
            }
        }
        Command::Rates { r, mu, background, deltas } => {
            let bg = background_of(background, None, None, None);
            let table = deltas
                .par_iter()
                .map(|&d| {
                    let g = Geometry::new(r, d, mu)?;
                    let sol = solve_flow_with(&g, bg, auto_truncation(g.s, DEFAULT_EPS))?;
                    let norms = Quantity::ALL
                        .iter()
                        .map(|&q| sup_norm_estimate(&g, |p| sol.eval_bipolar(p), q))
                        .collect::<Result<Vec<_>, _>>()?;
                    Ok((d, norms))
                })
                .collect::<Result<Vec<_>, Error>>()?;
            let mut fits = Vec::new();
            for (qi, q) in Quantity::ALL.iter().enumerate() {
                let pairs: Vec<(f64, f64)> = table.iter().map(|(d, n)| (*d, n[qi].value)).collect();
                fits.push((q.name(), fit_rate(&pairs)?));
            }
            if cli.json {
                let rows: Vec<_> = table.iter().map(|(d, n)| json!({"delta": d, "norms": n})).collect();
                let f: serde_json::Map<_, _> = fits
                    .iter()
                    .map(|(k, v)| (k.to_string(), serde_json::to_value(v).expect("serialisable")))
                    .collect();
                writeln!(out, "{}", serde_json::to_string_pretty(&json!({"samples": rows, "fits": f})).expect("serialisable"))?;
            } else {
                writeln!(out, "delta,pressure,strain,stress")?;
                for (d, n) in &table {
                    writeln!(out, "{d:e},{:.10e},{:.10e},{:.10e}", n[0].value, n[1].value, n[2].value)?;
                }
                for (name, f) in &fits {
                    writeln!(
                        out,
                        "slope_{name}={:.6} r2={:.6}{}",
                        f.slope,
                        f.r_squared,
                        if f.excluded_largest { " (largest gap excluded)" } else { "" }
                    )?;
                }
            }
        }
        Command::Validate { criteria } => {
            if let Some(bad) = criteria.iter().find(|c| !(1..=12).contains(*c)) {
                return Err(Failure::Usage(format!("no criterion {bad}; expected 1-12")));
            }
            let mut results: Vec<CheckResult> = Vec::new();
            for c in CRITERIA.iter().filter(|c| criteria.is_empty() || criteria.contains(&c.0)) {
                let r = run_criterion(c);
                if !cli.json {
                    for line in &r {
                        writeln!(out, "{}", line.line())?;
                    }
                    out.flush()?;
                }
                results.extend(r);
            }
            let failed = results.iter().filter(|r| !r.pass).count();
            if cli.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&results).expect("serialisable"))?;
            } else {
                writeln!(out, "{} checks, {} failed", results.len(), failed)?;
            }
            if failed > 0 {
                return Err(Failure::ChecksFailed(failed));
            }
        }
    }
    Ok(())
}

/// Parses `args` and runs; returns the process exit code.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match run(cli, out) {
        Ok(()) => {
            let _ = out.flush();
            0
        }
        Err(f) => {
            let _ = out.flush();
            let _ = writeln!(err, "error: {f}");
            f.exit_code()
        }
    }
}
