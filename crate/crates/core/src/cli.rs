//! Command-line driver: transforms, inversions, round-trips, and the
//! self-test suite, with CSV output and a JSON manifest per run.
//!
//! Exit codes: 0 success, 1 configuration error, 2 mathematical domain
//! error (the module error name is printed), 3 self-test failure.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::dual_transform::{
    dual_apply, dual_invert_even, dual_invert_pointwise, dual_r1, DualApplyParams,
    EvenInversionParams, WeightedClassParams,
};
use crate::error::{RadonError, Result};
use crate::fracint::{ek_derivative, ek_integral, FractionalOrder, RadialSamples, Side};
use crate::geometry::Hyperplane;
use crate::kelvin_route::{kelvin_invert, kelvin_invert_marchaud, KelvinParams};
use crate::radon_line::{
    radon_forward_quasiradial, radon_invert, HyperplaneFunction, InversionParams,
    QuasiRadialFunction,
};
use crate::spherical::{funk_forward, funk_inverse_abel, AbelInverseParams, HarmonicBasis, SphereFunction, SphereGrid};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Parser, Serialize)]
#[command(
    name = "radon",
    version,
    about = "Radon transforms between lines and hyperplanes in R^n"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Cap on internal parallelism (fallback: RADON_THREADS).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Directory for CSV output and the JSON manifest.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GridOpts {
    /// Ambient dimension (3..=6).
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    /// Sphere-grid resolution (exact for harmonics up to twice this).
    #[arg(long, default_value_t = 8)]
    pub sphere_res: usize,
    /// Harmonic cutoff degree.
    #[arg(long, default_value_t = 4)]
    pub cutoff: usize,
    /// Radial / t Chebyshev order.
    #[arg(long, default_value_t = 40)]
    pub radial_points: usize,
    /// Largest radius / |t| covered by radial fits.
    #[arg(long, default_value_t = 8.0)]
    pub r_max: f64,
}

#[derive(Debug, Subcommand, Serialize)]
pub enum Command {
    /// Forward transform of a quasi-radial line function at hyperplanes.
    Forward {
        #[command(flatten)]
        grid: GridOpts,
        /// Line function, e.g. builtin:gaussian.
        #[arg(long)]
        f: String,
        /// Hyperplane normal, e.g. e1 or 0.6,0.8,0.
        #[arg(long)]
        theta: String,
        /// Offset value t.
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        /// Tabulate t in [0, t_max] with this many rows instead of one.
        #[arg(long)]
        t_count: Option<usize>,
        #[arg(long, default_value_t = 3.0)]
        t_max: f64,
    },
    /// Invert the forward transform of a quasi-radial function.
    Invert {
        #[command(flatten)]
        grid: GridOpts,
        #[arg(long)]
        f: String,
        /// Direction at which the reconstruction is tabulated.
        #[arg(long, default_value = "e1")]
        omega: String,
        #[arg(long, default_value_t = 12)]
        r_count: usize,
        #[arg(long, default_value_t = 3.0)]
        r_top: f64,
    },
    /// Evaluate the dual transform R* phi on a line.
    Dual {
        #[command(flatten)]
        grid: GridOpts,
        /// Hyperplane function, e.g. builtin:abs_t_theta2 or file:phi.csv.
        #[arg(long)]
        phi: String,
        /// Line as direction,offset (e.g. e1,e2) or dir;off numerically.
        #[arg(long)]
        line: String,
        /// Subsphere quadrature resolution.
        #[arg(long, default_value_t = 192)]
        resolution: usize,
    },
    /// Reconstruct an even hyperplane function from its dual transform.
    InvertEven {
        #[command(flatten)]
        grid: GridOpts,
        #[arg(long)]
        phi: String,
        #[arg(long, default_value = "e2")]
        theta: String,
        #[arg(long, default_value_t = 8)]
        t_count: usize,
        #[arg(long, default_value_t = 2.0)]
        t_max: f64,
        #[arg(long, default_value_t = 16)]
        resolution: usize,
    },
    /// Invert the dual transform through the quasi-orthogonal inversion map.
    InvertKelvin {
        #[command(flatten)]
        grid: GridOpts,
        #[arg(long)]
        phi: String,
        /// Hyperplane as normal;level (e.g. e1;1.0 or e1,1.0).
        #[arg(long)]
        hyperplane: String,
        /// Use the Marchaud-type difference formula.
        #[arg(long, default_value_t = false)]
        marchaud: bool,
        /// Difference order for the Marchaud formula.
        #[arg(long, default_value_t = 1)]
        ell: u32,
        /// Resolution of the dual-transform quadrature feeding the route.
        #[arg(long, default_value_t = 48)]
        resolution: usize,
    },
    /// Pointwise inversion of the dual transform via the redundant
    /// line parametrization.
    InvertPointwise {
        #[command(flatten)]
        grid: GridOpts,
        #[arg(long)]
        phi: String,
        #[arg(long)]
        theta: String,
        #[arg(long)]
        t: f64,
        #[arg(long, default_value_t = 48)]
        resolution: usize,
    },
    /// Funk transform of a sphere function, or one of its inverses.
    Funk {
        #[command(flatten)]
        grid: GridOpts,
        /// Sphere function, e.g. builtin:omega_n_sq.
        #[arg(long)]
        f: String,
        #[arg(long)]
        theta: String,
        /// Apply an inverse instead: spectral or abel.
        #[arg(long)]
        inverse: Option<String>,
    },
    /// Erdelyi-Kober fractional integral or derivative of a radial profile.
    Ek {
        /// Profile, e.g. builtin:gaussian.
        #[arg(long)]
        profile: String,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        /// minus or plus.
        #[arg(long, default_value = "minus")]
        side: String,
        #[arg(long)]
        t: f64,
        /// Apply the derivative of this even/odd dimension instead of the
        /// integral of order alpha.
        #[arg(long)]
        derivative_n: Option<usize>,
    },
    /// Run the analytic self-test suite and emit a JSON report.
    Selftest {
        /// Restrict to one dimension.
        #[arg(long)]
        n: Option<usize>,
        /// Seed echoed into the manifest (the suite itself fixes seeds).
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Parse a vector spec: `e3` or comma-separated components.
fn parse_vector(s: &str, n: usize) -> Result<Vec<f64>> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix('e') {
        if let Ok(i) = rest.parse::<usize>() {
            if i == 0 || i > n {
                return Err(RadonError::InvalidInput(format!(
                    "axis e{i} out of range for n = {n}"
                )));
            }
            let mut v = vec![0.0; n];
            v[i - 1] = 1.0;
            return Ok(v);
        }
    }
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != n {
        return Err(RadonError::InvalidInput(format!(
            "expected {n} components, got {} in {s:?}",
            parts.len()
        )));
    }
    parts
        .iter()
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| RadonError::InvalidInput(format!("bad number {p:?}")))
        })
        .collect()
}

/// Parse a line spec: `dir;offset` numerically or `eI,eJ` symbolically.
fn parse_line(s: &str, n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if let Some((a, b)) = s.split_once(';') {
        return Ok((parse_vector(a, n)?, parse_vector(b, n)?));
    }
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() == 2 {
        return Ok((parse_vector(parts[0], n)?, parse_vector(parts[1], n)?));
    }
    Err(RadonError::InvalidInput(format!(
        "line spec {s:?} is neither dir;offset nor eI,eJ"
    )))
}

/// Parse a hyperplane spec: `normal;level` or `eI,level`.
fn parse_hyperplane(s: &str, n: usize) -> Result<(Vec<f64>, f64)> {
    let (a, b) = s
        .split_once(';')
        .or_else(|| s.rsplit_once(','))
        .ok_or_else(|| RadonError::InvalidInput(format!("bad hyperplane spec {s:?}")))?;
    let level = b
        .trim()
        .parse::<f64>()
        .map_err(|_| RadonError::InvalidInput(format!("bad level {b:?}")))?;
    Ok((parse_vector(a, n)?, level))
}

/// Built-in hyperplane functions.
pub fn builtin_hyperplane(name: &str, n: usize) -> Result<HyperplaneFunction> {
    match name {
        "builtin:gaussian" => Ok(HyperplaneFunction::from_fn(
            n,
            |_: &[f64], t: f64| (-t * t).exp(),
            true,
            20.0,
        )),
        "builtin:abs_t_theta2" => Ok(crate::testlib::abs_t_theta2(n)),
        "builtin:kelvin_pair" => Ok(crate::testlib::kelvin_pair(n)),
        "builtin:phi_p" => Ok(crate::dual_transform::phi_p_function(
            n,
            n as f64 / (n as f64 - 2.0),
        )),
        "builtin:theta2_t" => Ok(HyperplaneFunction::from_fn(
            n,
            |th: &[f64], t: f64| th[1] * t,
            false,
            2.0,
        )),
        other => Err(RadonError::InvalidInput(format!(
            "unknown hyperplane function {other:?}"
        ))),
    }
}

/// Built-in quasi-radial line functions.
pub fn builtin_line(name: &str, grid: &GridOpts) -> Result<QuasiRadialFunction> {
    let sphere = SphereGrid::cached(grid.n, grid.sphere_res)?;
    let basis = Arc::new(HarmonicBasis::new(sphere, grid.cutoff)?);
    match name {
        "builtin:gaussian" => QuasiRadialFunction::from_fn(
            |_w: &[f64], r: f64| (-r * r).exp(),
            basis,
            grid.r_max,
            grid.radial_points,
            30.0,
        ),
        "builtin:gaussian_harmonic" => QuasiRadialFunction::from_fn(
            |w: &[f64], r: f64| w[w.len() - 1].powi(2) * (-r * r).exp(),
            basis,
            grid.r_max,
            grid.radial_points,
            30.0,
        ),
        "builtin:cauchy" => {
            let n = grid.n as i32;
            QuasiRadialFunction::from_fn(
                move |_w: &[f64], r: f64| (1.0 + r * r).powi(-n),
                basis,
                grid.r_max,
                grid.radial_points,
                2.0 * grid.n as f64,
            )
        }
        other => Err(RadonError::InvalidInput(format!(
            "unknown line function {other:?}"
        ))),
    }
}

/// Built-in sphere functions for the funk subcommand.
pub fn builtin_sphere(name: &str, n: usize) -> Result<SphereFunction> {
    match name {
        "builtin:one" => Ok(SphereFunction::from_fn(|_| 1.0)),
        "builtin:omega_n_sq" => Ok(SphereFunction::from_fn(move |x: &[f64]| {
            x[n - 1] * x[n - 1]
        })),
        "builtin:even_exp" => Ok(SphereFunction::from_fn(move |x: &[f64]| {
            (x[n - 1] * x[n - 1]).exp()
        })),
        other => Err(RadonError::InvalidInput(format!(
            "unknown sphere function {other:?}"
        ))),
    }
}

/// A hyperplane function from a spec: builtin:NAME or file:PATH.csv
/// (samples on the grid of `basis` times an ascending t-grid).
fn hyperplane_from_spec(
    spec: &str,
    n: usize,
    basis: &Arc<HarmonicBasis>,
) -> Result<HyperplaneFunction> {
    if let Some(path) = spec.strip_prefix("file:") {
        return read_hyperplane_csv(Path::new(path), n, basis);
    }
    builtin_hyperplane(spec, n)
}

fn read_hyperplane_csv(
    path: &Path,
    n: usize,
    basis: &Arc<HarmonicBasis>,
) -> Result<HyperplaneFunction> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| RadonError::InvalidInput(format!("cannot read {path:?}: {e}")))?;
    let grid = basis.grid().clone();
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| RadonError::InvalidInput("empty csv".into()))?;
    let cols: Vec<&str> = header.split(',').collect();
    if cols.len() != n + 2 {
        return Err(RadonError::InvalidInput(format!(
            "expected {} columns (theta_1..theta_{n}, t, value), got {}",
            n + 2,
            cols.len()
        )));
    }
    // Rows must enumerate the sphere grid per t block, grid-major order.
    let mut t_grid: Vec<f64> = Vec::new();
    let mut samples: Vec<Vec<f64>> = Vec::new();
    for (row_idx, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let parts: Vec<f64> = line
            .split(',')
            .map(|p| p.trim().parse::<f64>().unwrap_or(f64::NAN))
            .collect();
        if parts.len() != n + 2 {
            return Err(RadonError::InvalidInput(format!(
                "row {row_idx}: expected {} fields",
                n + 2
            )));
        }
        let node_idx = row_idx % grid.len();
        let node = grid.node(node_idx);
        for (a, b) in node.iter().zip(&parts[..n]) {
            if (a - b).abs() > 1e-9 {
                return Err(RadonError::InvalidInput(format!(
                    "row {row_idx}: theta does not match grid node {node_idx}; \
                     sample files must use the same sphere grid"
                )));
            }
        }
        let t = parts[n];
        if node_idx == 0 {
            t_grid.push(t);
            samples.push(Vec::with_capacity(grid.len()));
        }
        samples.last_mut().unwrap().push(parts[n + 1]);
    }
    HyperplaneFunction::from_samples(basis.clone(), t_grid, samples, false, 4.0)
}

/// Resolved run configuration echoed verbatim into the manifest.
#[derive(Serialize)]
struct Manifest<'a> {
    format_version: u32,
    package: &'static str,
    version: &'static str,
    command: &'a Command,
    threads: Option<usize>,
    outputs: Vec<OutputEntry>,
}

#[derive(Serialize)]
struct OutputEntry {
    file: String,
    rows: usize,
}

struct OutputSink {
    dir: Option<PathBuf>,
    outputs: Vec<OutputEntry>,
}

impl OutputSink {
    fn new(dir: Option<PathBuf>) -> Result<Self> {
        if let Some(d) = &dir {
            std::fs::create_dir_all(d)
                .map_err(|e| RadonError::InvalidInput(format!("cannot create {d:?}: {e}")))?;
        }
        Ok(OutputSink {
            dir,
            outputs: Vec::new(),
        })
    }

    /// Write a CSV (with a sidecar JSON schema) if an output dir was given.
    fn write_csv(&mut self, name: &str, columns: &[String], rows: &[Vec<f64>]) -> Result<()> {
        let Some(dir) = &self.dir else {
            return Ok(());
        };
        let path = dir.join(format!("{name}.csv"));
        let mut out = String::new();
        out.push_str(&columns.join(","));
        out.push('\n');
        for row in rows {
            let fields: Vec<String> = row.iter().map(|v| format!("{v:.17e}")).collect();
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        std::fs::write(&path, out)
            .map_err(|e| RadonError::InvalidInput(format!("cannot write {path:?}: {e}")))?;
        let schema = serde_json::json!({
            "format_version": FORMAT_VERSION,
            "columns": columns,
            "types": columns.iter().map(|_| "f64").collect::<Vec<_>>(),
        });
        let schema_path = dir.join(format!("{name}.schema.json"));
        std::fs::write(&schema_path, serde_json::to_string_pretty(&schema).unwrap())
            .map_err(|e| RadonError::InvalidInput(format!("cannot write {schema_path:?}: {e}")))?;
        self.outputs.push(OutputEntry {
            file: format!("{name}.csv"),
            rows: rows.len(),
        });
        Ok(())
    }

    fn write_manifest(&self, cli: &Cli) -> Result<()> {
        let Some(dir) = &self.dir else {
            return Ok(());
        };
        let manifest = Manifest {
            format_version: FORMAT_VERSION,
            package: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command: &cli.command,
            threads: cli.threads,
            outputs: self.outputs.iter().map(|o| OutputEntry {
                file: o.file.clone(),
                rows: o.rows,
            }).collect(),
        };
        let path = dir.join("manifest.json");
        std::fs::write(&path, serde_json::to_string_pretty(&manifest).unwrap())
            .map_err(|e| RadonError::InvalidInput(format!("cannot write {path:?}: {e}")))?;
        Ok(())
    }
}

fn theta_columns(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("theta_{i}")).collect()
}

/// Execute a parsed command line. Returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    let threads = cli
        .threads
        .or_else(|| std::env::var("RADON_THREADS").ok().and_then(|s| s.parse().ok()));
    if let Some(k) = threads {
        // Ignore the error if a global pool already exists (tests).
        let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
    }
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error[{}]: {}", e.name(), e);
            // Malformed configuration exits 1; mathematical domain errors 2.
            if matches!(e, RadonError::InvalidInput(_)) {
                1
            } else {
                2
            }
        }
    }
}

fn execute(cli: &Cli) -> Result<i32> {
    let mut sink = OutputSink::new(cli.out.clone())?;
    let code = match &cli.command {
        Command::Forward {
            grid,
            f,
            theta,
            t,
            t_count,
            t_max,
        } => {
            let qr = builtin_line(f, grid)?;
            let theta_v = crate::linalg::normalize(&parse_vector(theta, grid.n)?);
            let ts: Vec<f64> = match t_count {
                Some(c) if *c > 1 => (0..*c)
                    .map(|i| t_max * i as f64 / (*c as f64 - 1.0))
                    .collect(),
                _ => vec![*t],
            };
            let mut rows = Vec::new();
            for &tv in &ts {
                let value = radon_forward_quasiradial(&qr, &theta_v, tv)?;
                println!("{value:.12}");
                let mut row = theta_v.clone();
                row.push(tv);
                row.push(value);
                rows.push(row);
            }
            let mut cols = theta_columns(grid.n);
            cols.push("t".into());
            cols.push("value".into());
            sink.write_csv("forward", &cols, &rows)?;
            0
        }
        Command::Invert {
            grid,
            f,
            omega,
            r_count,
            r_top,
        } => {
            let qr = builtin_line(f, grid)?;
            let fwd = qr.clone();
            let g = HyperplaneFunction::from_fn(
                grid.n,
                move |theta: &[f64], t: f64| radon_forward_quasiradial(&fwd, theta, t).unwrap(),
                true,
                25.0,
            );
            let sphere = SphereGrid::cached(grid.n, grid.sphere_res)?;
            let basis = Arc::new(HarmonicBasis::new(sphere, grid.cutoff)?);
            let params = InversionParams {
                radial_order: grid.radial_points,
                t_max: grid.r_max,
                t_decay: 25.0,
            };
            let inv = radon_invert(&g, basis, &params)?;
            let omega_v = crate::linalg::normalize(&parse_vector(omega, grid.n)?);
            let mut rows = Vec::new();
            for i in 0..*r_count {
                let r = r_top * (i + 1) as f64 / *r_count as f64;
                let value = inv.f0.eval(&omega_v, r);
                println!("r={r:.6} f0={value:.12}");
                rows.push(vec![r, value]);
            }
            sink.write_csv("invert", &["r".into(), "value".into()], &rows)?;
            0
        }
        Command::Dual {
            grid,
            phi,
            line,
            resolution,
        } => {
            let sphere = SphereGrid::cached(grid.n, grid.sphere_res)?;
            let basis = Arc::new(HarmonicBasis::new(sphere, grid.cutoff)?);
            let phi_f = hyperplane_from_spec(phi, grid.n, &basis)?;
            let (dir, off) = parse_line(line, grid.n)?;
            let dir = crate::linalg::normalize(&dir);
            let value = dual_apply(&phi_f, &dir, &off, &DualApplyParams::new(*resolution))?;
            println!("{value:.12}");
            let mut cols: Vec<String> = (1..=grid.n).map(|i| format!("omega_{i}")).collect();
            cols.extend((1..=grid.n).map(|i| format!("u_{i}")));
            cols.push("value".into());
            let mut row = dir.clone();
            row.extend_from_slice(&off);
            row.push(value);
            sink.write_csv("dual", &cols, &[row])?;
            0
        }
        Command::InvertEven {
            grid,
            phi,
            theta,
            t_count,
            t_max,
            resolution,
        } => {
            let sphere = SphereGrid::cached(grid.n, grid.sphere_res)?;
            let basis = Arc::new(HarmonicBasis::new(sphere.clone(), grid.cutoff)?);
            let phi_f = hyperplane_from_spec(phi, grid.n, &basis)?;
            let dual_params = DualApplyParams::unchecked(*resolution);
            let rec = dual_invert_even(
                |w: &[f64], u: &[f64]| dual_apply(&phi_f, w, u, &dual_params).unwrap(),
                basis,
                &EvenInversionParams {
                    r_max: (t_max * 1.5).max(3.0),
                    radial_order: grid.radial_points.min(40),
                    cluster_resolution: *resolution,
                    validate_round_trip: true,
                },
            )?;
            let theta_v = crate::linalg::normalize(&parse_vector(theta, grid.n)?);
            let mut rows = Vec::new();
            for i in 0..*t_count {
                let t = t_max * (i + 1) as f64 / *t_count as f64;
                let value = rec.eval(&theta_v, t);
                println!("t={t:.6} phi={value:.12} (input {:.12})", phi_f.eval(&theta_v, t));
                let mut row = theta_v.clone();
                row.push(t);
                row.push(value);
                rows.push(row);
            }
            let mut cols = theta_columns(grid.n);
            cols.push("t".into());
            cols.push("value".into());
            sink.write_csv("invert_even", &cols, &rows)?;
            0
        }
        Command::InvertKelvin {
            grid,
            phi,
            hyperplane,
            marchaud,
            ell,
            resolution,
        } => {
            let sphere = SphereGrid::cached(grid.n, grid.sphere_res)?;
            let basis = Arc::new(HarmonicBasis::new(sphere, grid.cutoff)?);
            let phi_f = hyperplane_from_spec(phi, grid.n, &basis)?;
            let (normal, level) = parse_hyperplane(hyperplane, grid.n)?;
            let h = Hyperplane::new(crate::linalg::normalize(&normal), level)?;
            let class = WeightedClassParams::cmu(10.0, grid.n)?;
            let dual_params = DualApplyParams::unchecked(*resolution);
            let f_dual =
                |w: &[f64], u: &[f64]| dual_apply(&phi_f, w, u, &dual_params).unwrap();
            let params = KelvinParams::default();
            let value = if *marchaud {
                kelvin_invert_marchaud(f_dual, class, &h, *ell, &params)?
            } else {
                kelvin_invert(f_dual, class, &h, &params)?
            };
            println!("{value:.12} (input {:.12})", phi_f.eval(h.normal(), h.level()));
            let mut row = h.normal().to_vec();
            row.push(h.level());
            row.push(value);
            let mut cols = theta_columns(grid.n);
            cols.push("t".into());
            cols.push("value".into());
            sink.write_csv("invert_kelvin", &cols, &[row])?;
            0
        }
        Command::InvertPointwise {
            grid,
            phi,
            theta,
            t,
            resolution,
        } => {
            let sphere = SphereGrid::cached(grid.n, grid.sphere_res)?;
            let basis = HarmonicBasis::new(sphere, grid.cutoff)?;
            let basis_arc = Arc::new(basis);
            let phi_f = hyperplane_from_spec(phi, grid.n, &basis_arc)?;
            let params = DualApplyParams::unchecked(*resolution);
            let theta_v = crate::linalg::normalize(&parse_vector(theta, grid.n)?);
            let value = dual_invert_pointwise(
                |w: &[f64], x: &[f64]| dual_r1(&phi_f, w, x, &params).unwrap(),
                &theta_v,
                *t,
                &basis_arc,
            )?;
            println!("{value:.12} (input {:.12})", phi_f.eval(&theta_v, *t));
            let mut row = theta_v.clone();
            row.push(*t);
            row.push(value);
            let mut cols = theta_columns(grid.n);
            cols.push("t".into());
            cols.push("value".into());
            sink.write_csv("invert_pointwise", &cols, &[row])?;
            0
        }
        Command::Funk {
            grid,
            f,
            theta,
            inverse,
        } => {
            let sf = builtin_sphere(f, grid.n)?;
            let theta_v = crate::linalg::normalize(&parse_vector(theta, grid.n)?);
            let value = match inverse.as_deref() {
                None => {
                    let equator = SphereGrid::cached_any(grid.n - 1, grid.sphere_res);
                    funk_forward(&sf, &theta_v, &equator)
                }
                Some("spectral") => {
                    let sphere = SphereGrid::cached(grid.n, grid.sphere_res)?;
                    let basis = HarmonicBasis::new(sphere, grid.cutoff)?;
                    let inv = crate::spherical::funk_inverse_spectral(&sf, &basis, 0.0)?;
                    inv.eval(&theta_v)
                }
                Some("abel") => funk_inverse_abel(&sf, &theta_v, &AbelInverseParams::default())?,
                Some(other) => {
                    return Err(RadonError::InvalidInput(format!(
                        "unknown inverse {other:?} (use spectral or abel)"
                    )))
                }
            };
            println!("{value:.12}");
            let mut row = theta_v.clone();
            row.push(value);
            let mut cols = theta_columns(grid.n);
            cols.push("value".into());
            sink.write_csv("funk", &cols, &[row])?;
            0
        }
        Command::Ek {
            profile,
            alpha,
            side,
            t,
            derivative_n,
        } => {
            let prof = match profile {
                s if s == "builtin:gaussian" => RadialSamples::from_fn(
                    |r: f64| (-r * r).exp(),
                    RadialSamples::uniform_grid(1e-3, 8.5, 120),
                    30.0,
                )?,
                s if s == "builtin:one" => RadialSamples::from_fn(
                    |_| 1.0,
                    RadialSamples::uniform_grid(1e-3, 8.5, 120),
                    f64::INFINITY,
                )?,
                other => {
                    return Err(RadonError::InvalidInput(format!(
                        "unknown profile {other:?}"
                    )))
                }
            };
            let side_v = match side.as_str() {
                "minus" => Side::Minus,
                "plus" => Side::Plus,
                other => {
                    return Err(RadonError::InvalidInput(format!(
                        "side must be minus or plus, got {other:?}"
                    )))
                }
            };
            let value = match derivative_n {
                Some(n) => ek_derivative(&prof, *n, side_v, *t)?,
                None => ek_integral(&prof, FractionalOrder::new(*alpha, side_v)?, *t)?,
            };
            println!("{value:.12}");
            sink.write_csv("ek", &["t".into(), "value".into()], &[vec![*t, value]])?;
            0
        }
        Command::Selftest { n, seed: _ } => {
            let report = crate::testlib::run_suite(*n);
            let json = serde_json::to_string_pretty(&report).unwrap();
            println!("{json}");
            if let Some(dir) = &cli.out {
                std::fs::create_dir_all(dir).ok();
                let path = dir.join("selftest.json");
                let mut file = std::fs::File::create(&path).map_err(|e| {
                    RadonError::InvalidInput(format!("cannot write {path:?}: {e}"))
                })?;
                file.write_all(json.as_bytes()).ok();
            }
            if report.all_pass() {
                0
            } else {
                3
            }
        }
    };
    sink.write_manifest(cli)?;
    Ok(code)
}
