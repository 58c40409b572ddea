use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use exfrac::littlewood::{littlewood_bound, RadialProfile};
use exfrac::measures;
use exfrac::optimizer::{optimize_mu, perturbation_audit, OptConfig, StepSchedule};
use exfrac::oracle;
use exfrac::report::{self, VerifyOptions};
use exfrac::shapes::{self, NamedShape};
use exfrac::{Circle, Figure, Tolerance};

#[derive(Parser)]
#[command(name = "exfrac", version, about = "Exterior fraction of convex figures sharing a diameter with a circle")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the identity suite; exits non-zero if any check fails.
    Verify {
        #[arg(long)]
        json: bool,
        /// Tolerance for values computed on chord discretizations.
        #[arg(long, default_value_t = 1e-6)]
        area_tol: f64,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// List or emit the named figures.
    Shapes {
        #[command(subcommand)]
        action: ShapesAction,
    },
    /// Exterior fraction of a figure against a circle.
    Mu {
        /// Library name (`isosceles:<radians>` allowed) or a figure JSON file.
        #[arg(long)]
        shape: String,
        /// `cx,cy,r`; defaults to the circle on KL.
        #[arg(long)]
        circle: Option<String>,
        /// Replace arcs by chords of at most this sagitta first.
        #[arg(long)]
        clipped: Option<f64>,
    },
    /// Radial area and chord bound of a profile `{"theta": [...], "rho": [...]}`.
    Littlewood {
        #[arg(long)]
        profile: PathBuf,
    },
    /// Search for the polygon on KL with the largest exterior fraction.
    Optimize {
        #[arg(long, default_value_t = 16)]
        points: usize,
        #[arg(long, default_value_t = 20_000)]
        iters: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        restarts: usize,
        #[arg(long)]
        allow_lower: bool,
        #[arg(long, default_value_t = 0.05)]
        step: f64,
        #[arg(long, default_value_t = 0.01)]
        decay: f64,
        /// Also write the best figure as JSON.
        #[arg(long)]
        figure_out: Option<PathBuf>,
    },
    /// Monte Carlo estimate of the area or the exterior fraction.
    Oracle {
        #[arg(long)]
        shape: String,
        #[arg(long)]
        circle: Option<String>,
        #[arg(long, default_value_t = 10_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Quantity::Mu)]
        quantity: Quantity,
    },
    /// Arc-bulge and strip perturbations of a figure with diameter KL.
    Audit {
        #[arg(long)]
        shape: String,
    },
    /// Draw a figure with its circle and shaded exterior as SVG.
    Render {
        name: String,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum ShapesAction {
    List,
    Emit { name: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum Quantity {
    Area,
    Mu,
}

/// A library name, or a path to a figure JSON document.
fn load_shape(spec: &str) -> Result<NamedShape> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = fs::read_to_string(path).with_context(|| format!("reading {spec}"))?;
        let figure = Figure::from_json(&text).with_context(|| format!("parsing {spec}"))?;
        return Ok(NamedShape {
            name: path.file_stem().map_or_else(|| spec.to_owned(), |s| s.to_string_lossy().into_owned()),
            figure,
            reference_circle: Some(Circle::reference()),
            shares_kl: false,
            expected: Default::default(),
        });
    }
    Ok(shapes::by_name(spec)?)
}

fn circle_arg(c: Option<&str>) -> Result<Circle> {
    Ok(match c {
        Some(s) => Circle::parse(s)?,
        None => Circle::reference(),
    })
}

fn print_json<T: serde::Serialize>(v: &T) -> Result<()> {
    out(&(serde_json::to_string_pretty(v)? + "\n"))
}

/// Writes to stdout, turning a closed pipe into an error instead of a panic.
fn out(s: &str) -> Result<()> {
    let mut stdout = io::stdout().lock();
    stdout.write_all(s.as_bytes())?;
    stdout.flush()?;
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    let tol = Tolerance::default();
    match cli.command {
        Command::Verify {
            json,
            area_tol,
            samples,
            seed,
        } => {
            let r = report::verify(&VerifyOptions {
                area_tol,
                oracle_samples: samples,
                seed,
            });
            if json {
                print_json(&r)?;
            } else {
                out(&r.table())?;
            }
            return Ok(if r.overall { ExitCode::SUCCESS } else { ExitCode::FAILURE });
        }
        Command::Shapes { action } => match action {
            ShapesAction::List => {
                out(&shapes::LIBRARY.map(|n| format!("{n}\n")).concat())?;
            }
            ShapesAction::Emit { name } => out(&(shapes::by_name(&name)?.figure.to_json()? + "\n"))?,
        },
        Command::Mu { shape, circle, clipped } => {
            let f = load_shape(&shape)?.figure;
            let c = circle_arg(circle.as_deref())?;
            let r = match clipped {
                Some(s) => measures::mu_clipped(&f, &c, s)?,
                None => measures::mu(&f, &c, &tol)?,
            };
            print_json(&r)?;
        }
        Command::Littlewood { profile } => {
            let text = fs::read_to_string(&profile).with_context(|| format!("reading {}", profile.display()))?;
            let p: RadialProfile = serde_json::from_str(&text).context("parsing profile")?;
            print_json(&littlewood_bound(&p))?;
        }
        Command::Optimize {
            points,
            iters,
            seed,
            restarts,
            allow_lower,
            step,
            decay,
            figure_out,
        } => {
            let t = optimize_mu(&OptConfig {
                n_points: points,
                iterations: iters,
                seed,
                step_schedule: StepSchedule { initial: step, decay },
                restarts,
                allow_lower,
            })?;
            if let Some(path) = figure_out {
                fs::write(&path, t.best_figure.to_json()? + "\n")
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            print_json(&t)?;
        }
        Command::Oracle {
            shape,
            circle,
            samples,
            seed,
            quantity,
        } => {
            let f = load_shape(&shape)?.figure;
            let est = match quantity {
                Quantity::Area => oracle::mc_area(&f, samples, seed)?,
                Quantity::Mu => oracle::mc_mu(&f, &circle_arg(circle.as_deref())?, samples, seed)?,
            };
            print_json(&est)?;
        }
        Command::Audit { shape } => {
            let f = load_shape(&shape)?.figure;
            print_json(&perturbation_audit(&f, &tol)?)?;
        }
        Command::Render { name, out } => {
            let svg = report::render_shape(&load_shape(&name)?, &tol)?;
            fs::write(&out, svg).with_context(|| format!("writing {}", out.display()))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
