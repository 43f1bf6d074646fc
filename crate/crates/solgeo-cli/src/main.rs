//! Command-line driver for the Sol⁴₀ geometry toolkit.
//!
//! Subcommands:
//!
//! * `verify [scope]` — run the self-verification suites (frame tables vs
//!   independent oracles); exits 1 when any check fails;
//! * `curvature --point X Y Z T --u a1 a2 a3 a4 --v b1 b2 b3 b4` — sectional
//!   curvature and curvature operator on one tangent plane;
//! * `family <name> [params] --out PATH` — sample a standard hypersurface
//!   family (fundamental forms along a parameter grid) to a data file;
//! * `classify --config PATH [--out PATH]` — classify the immersion described
//!   by a job file (totally geodesic / umbilical / parallel / Codazzi).
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or config error.
//! Output is deterministic for a fixed invocation; randomized sweeps take an
//! explicit `--seed`. Grid sweeps run on a worker pool sized by `--jobs`
//! (default from `SOLGEO_JOBS`, else one worker per core).

mod config;
mod report;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rayon::prelude::*;

use solgeo::families::{
    family_cylinder, family_t_plane, family_umbilical, family_vertical_plane, family_z_plane,
    plane_curve_curvature, umbilical_profile, PlaneCurve, UmbilicalProfile,
};
use solgeo::curvedsl::CurveSpec;
use solgeo::hypersurface::{
    classify, classify_with_equations, second_fundamental_form, GridSpec, Immersion,
};
use solgeo::solgroup::{curvature_invariant, sectional_curvature, Point, TangentVector};
use solgeo::{oracles, tol};

use report::{g17, write_output, LineReport};

#[derive(Parser)]
#[command(
    name = "solgeo",
    version,
    about = "Geometry of the solvable Lie group Sol⁴₀: verification suites, \
             curvature queries, hypersurface families and classification"
)]
struct Cli {
    /// Worker threads for grid sweeps (default: $SOLGEO_JOBS, else all cores).
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the self-verification suites against the closed-form tables.
    Verify {
        /// Suite to run.
        #[arg(
            default_value = "all",
            value_parser = ["group", "connection", "curvature", "complex", "forms", "all"]
        )]
        scope: String,
        /// Seed for the randomized sweeps.
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Report file (stdout when omitted).
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Sectional curvature and curvature operator on one tangent plane.
    Curvature {
        /// Base point coordinates x y z t.
        #[arg(long, num_args = 4, required = true, allow_negative_numbers = true)]
        point: Vec<f64>,
        /// First spanning vector, frame components.
        #[arg(long, num_args = 4, required = true, allow_negative_numbers = true)]
        u: Vec<f64>,
        /// Second spanning vector, frame components.
        #[arg(long, num_args = 4, required = true, allow_negative_numbers = true)]
        v: Vec<f64>,
        /// Report file (stdout when omitted).
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Sample a standard hypersurface family to a data file.
    Family {
        /// Family to sample.
        #[arg(value_parser = ["zplane", "tplane", "vplane", "cylinder", "umbilical"])]
        name: String,
        /// Offset: z = c, t = c, or ax + by = c (default 0).
        #[arg(long, allow_negative_numbers = true)]
        c: Option<f64>,
        /// Plane coefficient a (vplane).
        #[arg(long, allow_negative_numbers = true)]
        a: Option<f64>,
        /// Plane coefficient b (vplane).
        #[arg(long, allow_negative_numbers = true)]
        b: Option<f64>,
        /// First curve component γ₁(u) (cylinder).
        #[arg(long, value_name = "EXPR")]
        gamma1: Option<String>,
        /// Second curve component γ₂(u) (cylinder).
        #[arg(long, value_name = "EXPR")]
        gamma2: Option<String>,
        /// Initial profile angle β(0) (umbilical).
        #[arg(long, allow_negative_numbers = true)]
        beta0: Option<f64>,
        /// Curve / profile parameter interval lo hi.
        #[arg(long, num_args = 2, allow_negative_numbers = true)]
        interval: Option<Vec<f64>>,
        /// Profile integrator step (umbilical).
        #[arg(long)]
        step: Option<f64>,
        /// Grid points per parameter axis.
        #[arg(long, num_args = 3)]
        grid: Option<Vec<usize>>,
        /// Fraction of each side length kept away from the domain boundary.
        #[arg(long)]
        margin: Option<f64>,
        /// Data file to write.
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
    },
    /// Classify the immersion described by a job file.
    Classify {
        /// Job file (`key: value` lines).
        #[arg(long, value_name = "PATH")]
        config: PathBuf,
        /// Report file (stdout when omitted).
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

/// Failure classes with distinct exit codes: usage/config errors exit 2,
/// verification failures exit 1.
enum CliError {
    Usage(String),
    Check(String),
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(()) => 0,
        Err(CliError::Check(msg)) => {
            eprintln!("{msg}");
            1
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> Result<(), CliError> {
    configure_jobs(cli.jobs)?;
    match cli.command {
        Command::Verify { scope, seed, out } => cmd_verify(&scope, seed, out.as_deref()),
        Command::Curvature { point, u, v, out } => {
            cmd_curvature(&point, &u, &v, out.as_deref())
        }
        Command::Family {
            name,
            c,
            a,
            b,
            gamma1,
            gamma2,
            beta0,
            interval,
            step,
            grid,
            margin,
            out,
        } => {
            let interval = interval.map(|iv| (iv[0], iv[1]));
            let family = build_family(
                &name,
                c,
                a,
                b,
                gamma1.as_deref(),
                gamma2.as_deref(),
                beta0,
                interval,
                step,
            )
            .map_err(CliError::Usage)?;
            let grid = grid_from_flags(grid.as_deref(), margin)?;
            cmd_family(&name, family, &grid, &out)
        }
        Command::Classify { config, out } => cmd_classify(&config, out.as_deref()),
    }
}

/// Size the global worker pool from `--jobs` or `SOLGEO_JOBS`.
fn configure_jobs(flag: Option<usize>) -> Result<(), CliError> {
    let jobs = match flag {
        Some(n) => Some(n),
        None => match std::env::var("SOLGEO_JOBS") {
            Ok(s) => Some(s.trim().parse::<usize>().map_err(|_| {
                CliError::Usage(format!("SOLGEO_JOBS must be a positive integer, got `{s}`"))
            })?),
            Err(_) => None,
        },
    };
    if let Some(n) = jobs {
        if n == 0 {
            return Err(CliError::Usage("worker count must be at least 1".to_string()));
        }
        // The global pool can be set only once per process; a second attempt
        // (e.g. under tests) keeps the existing pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

fn write_report(out: Option<&Path>, rep: LineReport) -> Result<(), CliError> {
    write_output(out, &rep.finish())
        .map_err(|e| CliError::Usage(format!("cannot write output: {e}")))
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

fn cmd_verify(scope: &str, seed: u64, out: Option<&Path>) -> Result<(), CliError> {
    let reports = match scope {
        "group" => oracles::suite_group(seed, 200),
        "connection" => oracles::suite_connection(),
        "curvature" => oracles::suite_curvature(),
        "complex" => oracles::suite_complex(),
        "forms" => oracles::suite_forms(tol::FD_STEP_AMBIENT, 5),
        "all" => oracles::suite_all(seed),
        other => return Err(CliError::Usage(format!("unknown verify scope `{other}`"))),
    };
    let failed = reports.iter().filter(|r| !r.pass).count();
    let mut rep = LineReport::new(&format!("verify {scope}"));
    rep.kv("scope", scope);
    rep.kv("seed", seed);
    rep.kv("checks", reports.len());
    rep.kv("summary", if failed == 0 { "pass" } else { "fail" });
    rep.columns(&["name", "max_residual", "tolerance", "samples", "pass"]);
    for r in &reports {
        rep.row(&[
            r.name.clone(),
            g17(r.max_residual),
            g17(r.tolerance),
            r.samples.to_string(),
            r.pass.to_string(),
        ]);
    }
    write_report(out, rep)?;
    if failed == 0 {
        Ok(())
    } else {
        Err(CliError::Check(format!(
            "verification failed: {failed} of {} checks exceeded tolerance",
            reports.len()
        )))
    }
}

// ---------------------------------------------------------------------------
// curvature
// ---------------------------------------------------------------------------

fn cmd_curvature(point: &[f64], u: &[f64], v: &[f64], out: Option<&Path>) -> Result<(), CliError> {
    for (flag, vals) in [("--point", point), ("--u", u), ("--v", v)] {
        if vals.len() != 4 {
            return Err(CliError::Usage(format!("{flag} expects exactly 4 values")));
        }
    }
    let p = Point::new(point[0], point[1], point[2], point[3]);
    let a = TangentVector::new(p, [u[0], u[1], u[2], u[3]]);
    let b = TangentVector::new(p, [v[0], v[1], v[2], v[3]]);
    let k = sectional_curvature(&a, &b).map_err(|e| CliError::Usage(e.to_string()))?;
    let r_uvu = curvature_invariant(&a, &b, &a).map_err(|e| CliError::Usage(e.to_string()))?;
    let r_uvv = curvature_invariant(&a, &b, &b).map_err(|e| CliError::Usage(e.to_string()))?;

    let mut rep = LineReport::new("curvature");
    rep.kv("point", join_g17(point));
    rep.kv("u", join_g17(u));
    rep.kv("v", join_g17(v));
    rep.kv_g17("sectional", k);
    rep.columns(&["vector", "e1", "e2", "e3", "e4"]);
    for (name, w) in [("R_uv_u", r_uvu), ("R_uv_v", r_uvv)] {
        let mut cells = vec![name.to_string()];
        cells.extend(w.comps.iter().map(|&x| g17(x)));
        rep.row(&cells);
    }
    write_report(out, rep)
}

fn join_g17(xs: &[f64]) -> String {
    xs.iter().map(|&x| g17(x)).collect::<Vec<_>>().join(" ")
}

// ---------------------------------------------------------------------------
// family
// ---------------------------------------------------------------------------

/// Extra per-row data specific to a family.
enum FamilyKind {
    Plane,
    Cylinder(PlaneCurve),
    Umbilical(UmbilicalProfile),
}

/// A constructed family: the immersion plus whatever closed-form companion
/// data its rows report.
pub struct Family {
    immersion: Immersion,
    kind: FamilyKind,
    /// Resolved parameters for the report header, in a fixed order.
    echo: Vec<(String, String)>,
}

impl Family {
    /// Take ownership of the immersion (for classification jobs).
    pub fn into_immersion(self) -> Immersion {
        self.immersion
    }
}

/// Build a family from optional parameters. Pure offsets default to zero;
/// structural parameters (plane direction, curve expressions, initial angle)
/// are required.
pub fn build_family(
    name: &str,
    c: Option<f64>,
    a: Option<f64>,
    b: Option<f64>,
    gamma1: Option<&str>,
    gamma2: Option<&str>,
    beta0: Option<f64>,
    interval: Option<(f64, f64)>,
    step: Option<f64>,
) -> Result<Family, String> {
    let offset = c.unwrap_or(0.0);
    let mut echo = vec![("family".to_string(), name.to_string())];
    match name {
        "zplane" => {
            echo.push(("c".to_string(), g17(offset)));
            Ok(Family {
                immersion: family_z_plane(offset),
                kind: FamilyKind::Plane,
                echo,
            })
        }
        "tplane" => {
            echo.push(("c".to_string(), g17(offset)));
            Ok(Family {
                immersion: family_t_plane(offset),
                kind: FamilyKind::Plane,
                echo,
            })
        }
        "vplane" => {
            let (a, b) = match (a, b) {
                (Some(a), Some(b)) => (a, b),
                _ => return Err("family vplane needs plane coefficients a and b".to_string()),
            };
            echo.push(("a".to_string(), g17(a)));
            echo.push(("b".to_string(), g17(b)));
            echo.push(("c".to_string(), g17(offset)));
            Ok(Family {
                immersion: family_vertical_plane(a, b, offset).map_err(|e| e.to_string())?,
                kind: FamilyKind::Plane,
                echo,
            })
        }
        "cylinder" => {
            let (g1, g2) = match (gamma1, gamma2) {
                (Some(g1), Some(g2)) => (g1, g2),
                _ => {
                    return Err(
                        "family cylinder needs curve expressions gamma1 and gamma2".to_string()
                    )
                }
            };
            let interval = interval.unwrap_or((0.0, 1.0));
            let spec = CurveSpec::parse(g1, g2, interval).map_err(|e| e.to_string())?;
            let curve = PlaneCurve::from_spec(&spec).map_err(|e| e.to_string())?;
            echo.push(("gamma1".to_string(), g1.to_string()));
            echo.push(("gamma2".to_string(), g2.to_string()));
            echo.push((
                "interval".to_string(),
                format!("{} {}", g17(interval.0), g17(interval.1)),
            ));
            Ok(Family {
                immersion: family_cylinder(&curve),
                kind: FamilyKind::Cylinder(curve),
                echo,
            })
        }
        "umbilical" => {
            let beta0 = beta0.ok_or("family umbilical needs the initial angle beta0")?;
            let interval = interval.unwrap_or((0.0, 0.25));
            let step = step.unwrap_or(tol::ODE_STEP);
            let profile =
                umbilical_profile(beta0, interval, step).map_err(|e| e.to_string())?;
            echo.push(("beta0".to_string(), g17(beta0)));
            echo.push((
                "interval".to_string(),
                format!("{} {}", g17(interval.0), g17(interval.1)),
            ));
            echo.push(("step".to_string(), g17(step)));
            Ok(Family {
                immersion: family_umbilical(&profile),
                kind: FamilyKind::Umbilical(profile),
                echo,
            })
        }
        other => Err(format!("unknown family `{other}`")),
    }
}

fn grid_from_flags(n: Option<&[usize]>, margin: Option<f64>) -> Result<GridSpec, CliError> {
    let mut grid = GridSpec::default();
    if let Some(n) = n {
        if n.len() != 3 || n.iter().any(|&k| k == 0) {
            return Err(CliError::Usage(
                "--grid expects three positive point counts".to_string(),
            ));
        }
        grid.n = [n[0], n[1], n[2]];
    }
    if let Some(m) = margin {
        if !(0.0..0.5).contains(&m) {
            return Err(CliError::Usage("--margin must lie in [0, 0.5)".to_string()));
        }
        grid.margin = m;
    }
    Ok(grid)
}

fn cmd_family(name: &str, family: Family, grid: &GridSpec, out: &Path) -> Result<(), CliError> {
    let pts = grid.points(&family.immersion.domain());

    let mut columns = vec![
        "u1", "u2", "u3", "x", "y", "z", "t", "n1", "n2", "n3", "n4", "h11", "h12", "h13",
        "h22", "h23", "h33", "lambda",
    ];
    match family.kind {
        FamilyKind::Plane => {}
        FamilyKind::Cylinder(_) => columns.push("kappa_gamma"),
        FamilyKind::Umbilical(_) => columns.push("beta"),
    }

    let rows: Result<Vec<Vec<String>>, CliError> = pts
        .par_iter()
        .map(|&u| {
            let forms = second_fundamental_form(&family.immersion, u)
                .map_err(|e| CliError::Usage(format!("at u = {u:?}: {e}")))?;
            let mut cells: Vec<String> = u.iter().map(|&x| g17(x)).collect();
            cells.extend(forms.point.as_array().iter().map(|&x| g17(x)));
            cells.extend(forms.normal.comps.iter().map(|&x| g17(x)));
            for (i, j) in [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)] {
                cells.push(g17(forms.h[(i, j)]));
            }
            cells.push(g17(forms.lambda));
            match &family.kind {
                FamilyKind::Plane => {}
                FamilyKind::Cylinder(curve) => {
                    let kappa = plane_curve_curvature(curve, u[0])
                        .map_err(|e| CliError::Usage(format!("at u = {u:?}: {e}")))?;
                    cells.push(g17(kappa));
                }
                FamilyKind::Umbilical(profile) => cells.push(g17(profile.beta(u[2]))),
            }
            Ok(cells)
        })
        .collect();
    let rows = rows?;

    let mut rep = LineReport::new(&format!("family {name}"));
    for (k, v) in &family.echo {
        rep.kv(k, v);
    }
    rep.kv("grid", format!("{} {} {}", grid.n[0], grid.n[1], grid.n[2]));
    rep.kv_g17("margin", grid.margin);
    rep.kv("points", rows.len());
    rep.columns(&columns);
    for row in &rows {
        rep.row(row);
    }
    write_report(Some(out), rep)
}

// ---------------------------------------------------------------------------
// classify
// ---------------------------------------------------------------------------

fn cmd_classify(config_path: &Path, out: Option<&Path>) -> Result<(), CliError> {
    let job = config::load(config_path).map_err(CliError::Usage)?;
    let result = if job.equations {
        classify_with_equations(&job.immersion, &job.grid, &job.tolerances)
    } else {
        classify(&job.immersion, &job.grid, &job.tolerances)
    }
    .map_err(|e| CliError::Usage(format!("classification failed: {e}")))?;

    let mut rep = LineReport::new("classify");
    for (k, v) in &job.echo {
        rep.kv(k, v);
    }
    rep.kv("points", result.samples.len());
    rep.kv_g17("tol_geodesic", result.tolerances.geodesic);
    rep.kv_g17("tol_umbilical", result.tolerances.umbilical);
    rep.kv_g17("tol_parallel", result.tolerances.parallel);
    rep.kv_g17("tol_codazzi", result.tolerances.codazzi);
    rep.kv_g17("residual_totally_geodesic", result.residual_totally_geodesic);
    rep.kv_g17("residual_totally_umbilical", result.residual_totally_umbilical);
    rep.kv_g17("residual_parallel", result.residual_parallel);
    rep.kv_g17("residual_codazzi", result.residual_codazzi);
    rep.kv("totally_geodesic", result.totally_geodesic);
    rep.kv("totally_umbilical", result.totally_umbilical);
    rep.kv("parallel", result.parallel);
    rep.kv("codazzi", result.codazzi);
    rep.kv_g17("lambda_min", result.lambda_range.0);
    rep.kv_g17("lambda_max", result.lambda_range.1);
    if let Some(g) = result.gauss_residual {
        rep.kv_g17("gauss_residual", g);
    }
    if let Some(c) = result.codazzi_eq_residual {
        rep.kv_g17("codazzi_eq_residual", c);
    }
    rep.columns(&[
        "u1",
        "u2",
        "u3",
        "h_norm",
        "umbilical_dev",
        "nabla_h_norm",
        "codazzi_dev",
        "lambda",
    ]);
    for s in &result.samples {
        rep.row(&[
            g17(s.u[0]),
            g17(s.u[1]),
            g17(s.u[2]),
            g17(s.h_norm),
            g17(s.umbilical_dev),
            g17(s.nabla_h_norm),
            g17(s.codazzi_dev),
            g17(s.lambda),
        ]);
    }
    write_report(out, rep)
}
