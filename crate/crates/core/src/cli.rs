//! `helly` command-line front end.
//!
//! Exit codes: 0 success, 1 verification or construction failure, 2 parse or
//! validation error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::coverage::{
    empirical_helly_number, rigid_cover, translation_cover, RigidParams, DEFAULT_COVER_TOL, DEFAULT_GRID,
    DEFAULT_REFINE_ITERS,
};
use crate::geom::Point2;
use crate::incircle::{bound_summary, candidate_centers, chebyshev_incircle, contact_report};
use crate::io::{read_body, read_certificate, read_configuration, to_json, write_atomic, IoError};
use crate::lemma::{build_certificate, verify_certificate, Violation, DEFAULT_BUDGET, DEFAULT_SUBSET_BUDGET};
use crate::marking::{alpha_profile, marked_set};
use crate::svg::Scene;
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "helly", version, about = "Incircles, marked sets and rotational Helly certificates for disc-polygons")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CoverMode {
    Translate,
    Rigid,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Inradius and the set of incircle centers.
    Incircle {
        #[arg(long)]
        body: PathBuf,
    },
    /// Contact reports, at one center or at every candidate center.
    Contact {
        #[arg(long)]
        body: PathBuf,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        center: Option<Point2>,
    },
    /// Marked-set measure for a list of radii.
    Alpha {
        #[arg(long)]
        body: PathBuf,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        center: Point2,
        #[arg(long = "R", value_delimiter = ',', required = true, num_args = 1..)]
        radii: Vec<f64>,
        /// Also write the profile as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Build a lemma certificate for `k`.
    Construct {
        #[arg(long)]
        body: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long, default_value_t = DEFAULT_SUBSET_BUDGET)]
        subset_budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Re-check a certificate against a body.
    Verify {
        #[arg(long)]
        cert: PathBuf,
        #[arg(long)]
        body: PathBuf,
    },
    /// Try to cover a point configuration with a copy of the body.
    Cover {
        #[arg(long)]
        body: PathBuf,
        #[arg(long)]
        points: PathBuf,
        #[arg(long, value_enum)]
        mode: CoverMode,
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
        #[arg(long, default_value_t = DEFAULT_REFINE_ITERS)]
        refine: usize,
        #[arg(long, default_value_t = DEFAULT_COVER_TOL)]
        tol: f64,
    },
    /// Largest k with every k-subset rigidly coverable.
    HellyEst {
        #[arg(long)]
        body: PathBuf,
        #[arg(long)]
        points: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SUBSET_BUDGET)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
    },
    /// Min and max of the circumference-over-contact bound.
    Bound {
        #[arg(long)]
        body: PathBuf,
    },
    /// SVG figure of the body, its incircle and optional marks.
    Plot {
        #[arg(long)]
        body: PathBuf,
        #[arg(long)]
        cert: Option<PathBuf>,
        /// Mark boundary directions closer than this radius.
        #[arg(long = "R")]
        radius: Option<f64>,
        #[arg(long)]
        out: PathBuf,
    },
}

fn parse_point(s: &str) -> Result<Point2, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        return Err(format!("expected x,y but got {s:?}"));
    }
    let x: f64 = parts[0].parse().map_err(|e| format!("x: {e}"))?;
    let y: f64 = parts[1].parse().map_err(|e| format!("y: {e}"))?;
    let p = Point2::new(x, y);
    if !p.is_finite() {
        return Err("coordinates must be finite".into());
    }
    Ok(p)
}

enum Failure {
    Invalid(String),
    Failed(String),
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure::Invalid(e.to_string())
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExhausted { .. } | Error::Unbounded => Failure::Failed(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

type Outcome = Result<i32, Failure>;

fn emit<T: Serialize>(out: &mut dyn Write, value: &T) {
    let _ = out.write_all(to_json(value).as_bytes());
}

/// Parses `args` (program name first) and runs one subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                return EXIT_INVALID;
            }
            let _ = out.write_all(text.as_bytes());
            return EXIT_OK;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Invalid(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INVALID
        }
        Err(Failure::Failed(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_FAILURE
        }
    }
}

#[derive(Serialize)]
struct ConstructSummary<'a> {
    out: &'a Path,
    k: usize,
    epsilon: f64,
    n: usize,
    #[serde(rename = "R")]
    radius: f64,
    alpha: f64,
    subsets_checked: usize,
    verdict: bool,
}

fn dispatch(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Incircle { body } => {
            let body = read_body(&body)?;
            emit(out, &chebyshev_incircle(&body)?);
        }
        Command::Contact { body, center } => {
            let body = read_body(&body)?;
            match center {
                Some(c) => emit(out, &contact_report(&body, c)?),
                None => {
                    let reports = candidate_centers(&body)?
                        .into_iter()
                        .map(|c| contact_report(&body, c))
                        .collect::<crate::Result<Vec<_>>>()?;
                    emit(out, &reports);
                }
            }
        }
        Command::Alpha { body, center, radii, csv } => {
            let body = read_body(&body)?;
            let profile = alpha_profile(&body, center, &radii)?;
            if let Some(path) = csv {
                write_atomic(&path, profile.to_csv().as_bytes())?;
            }
            emit(out, &profile);
        }
        Command::Construct { body, k, budget, subset_budget, seed, out: path } => {
            let body = read_body(&body)?;
            let cert = build_certificate(&body, k, budget, subset_budget, seed)?;
            write_atomic(&path, to_json(&cert).as_bytes())?;
            emit(
                out,
                &ConstructSummary {
                    out: &path,
                    k,
                    epsilon: cert.params.epsilon,
                    n: cert.params.n,
                    radius: cert.params.radius,
                    alpha: cert.alpha,
                    subsets_checked: cert.subset_results.len(),
                    verdict: cert.verdict,
                },
            );
            if !cert.verdict {
                return Ok(EXIT_FAILURE);
            }
        }
        Command::Verify { cert, body } => {
            let body = read_body(&body)?;
            let cert = read_certificate(&cert)?;
            let mut report = verify_certificate(&cert)?;
            if cert.body != body {
                report.violations.insert(0, Violation::BodyMismatch);
                report.clean = false;
            }
            emit(out, &report);
            if !report.clean {
                return Ok(EXIT_FAILURE);
            }
        }
        Command::Cover { body, points, mode, grid, refine, tol } => {
            let body = read_body(&body)?;
            let config = read_configuration(&points)?;
            if !(tol >= 0.0) {
                return Err(Failure::Invalid(format!("tol: must be non-negative, got {tol}")));
            }
            let result = match mode {
                CoverMode::Translate => translation_cover(&config.points, &body, tol)?,
                CoverMode::Rigid => {
                    rigid_cover(&config.points, &body, RigidParams { grid_n: grid, refine_iters: refine, tol })?
                }
            };
            emit(out, &result);
        }
        Command::HellyEst { body, points, budget, seed, grid } => {
            let body = read_body(&body)?;
            let config = read_configuration(&points)?;
            let params = RigidParams { grid_n: grid, ..RigidParams::default() };
            emit(out, &empirical_helly_number(&config.points, &body, budget, seed, params)?);
        }
        Command::Bound { body } => {
            let body = read_body(&body)?;
            emit(out, &bound_summary(&body)?);
        }
        Command::Plot { body, cert, radius, out: path } => {
            let body = read_body(&body)?;
            let scene = match cert {
                Some(cert_path) => {
                    let cert = read_certificate(&cert_path)?;
                    if cert.body != body {
                        return Err(Failure::Invalid(format!(
                            "{}: body: certificate body differs from --body",
                            cert_path.display()
                        )));
                    }
                    Scene::from_certificate(&cert)?
                }
                None => {
                    let mut scene = Scene::with_incircle(body.clone())?;
                    if let Some(r) = radius {
                        let center = scene.incircle.as_ref().map(|c| c.center).unwrap_or(Point2::ORIGIN);
                        scene.add_marked(center, &marked_set(&body, center, r)?);
                    }
                    scene
                }
            };
            scene.write(&path)?;
            let _ = writeln!(out, "{}", path.display());
        }
    }
    Ok(EXIT_OK)
}
