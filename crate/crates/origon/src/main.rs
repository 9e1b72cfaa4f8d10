//! Command-line front end: validate parameters, inspect critical
//! angles, construct and export gadget patterns, and run the sweep.
//!
//! Angles cross the CLI boundary in degrees; everything inside the
//! library is radians.

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use origon::canonical::build_pair;
use origon::critical::{critical_geometric, critical_numeric};
use origon::error::{Error, Side};
use origon::export::{pair_to_fold, to_fold, to_svg, RenderOptions};
use origon::frame::{build_frame, Frame};
use origon::negative::{canonical_numeric, negative_pattern};
use origon::params::{validate, GadgetParams, RawParams};
use origon::pattern::CreasePattern;
use origon::positive::{admissible_interval, positive_pattern, DividingChoice};
use origon::verify::{run_sweep, SweepConfig};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "origon", version, about = "Construct and export origon gadget crease patterns")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct AngleArgs {
    /// Apex angle alpha in degrees.
    #[arg(long)]
    alpha: f64,
    /// Left base angle beta_L in degrees.
    #[arg(long)]
    beta_l: f64,
    /// Right base angle beta_R in degrees.
    #[arg(long)]
    beta_r: f64,
    /// Left pleat turn delta_L in degrees.
    #[arg(long, default_value_t = 0.0)]
    delta_l: f64,
    /// Right pleat turn delta_R in degrees.
    #[arg(long, default_value_t = 0.0)]
    delta_r: f64,
}

impl AngleArgs {
    fn validated(&self) -> Result<GadgetParams, Error> {
        validate(RawParams::from_degrees(
            self.alpha,
            self.beta_l,
            self.beta_r,
            self.delta_l,
            self.delta_r,
        ))
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum Kind {
    Positive,
    Negative,
    Pair,
}

#[derive(Copy, Clone, ValueEnum)]
enum Format {
    Fold,
    Svg,
}

/// `phi-l=<degrees>`, `critical-l`, `critical-r` or `canonical`.
#[derive(Clone)]
struct Dividing(DividingChoice);

impl std::str::FromStr for Dividing {
    type Err = String;

    fn from_str(s: &str) -> Result<Dividing, String> {
        match s {
            "critical-l" => Ok(Dividing(DividingChoice::CriticalLeft)),
            "critical-r" => Ok(Dividing(DividingChoice::CriticalRight)),
            "canonical" => Ok(Dividing(DividingChoice::Canonical)),
            other => {
                let deg = other
                    .strip_prefix("phi-l=")
                    .ok_or_else(|| {
                        format!("expected phi-l=<deg>, critical-l, critical-r or canonical, got {other}")
                    })?
                    .parse::<f64>()
                    .map_err(|e| format!("bad phi-l value: {e}"))?;
                Ok(Dividing(DividingChoice::PhiL(deg.to_radians())))
            }
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check the five input angles and print the derived scalars.
    Validate(AngleArgs),
    /// Print critical angles, the canonical dividing point and the
    /// admissible interval.
    Critical(AngleArgs),
    /// Construct one gadget pattern and write it out.
    Construct {
        #[command(flatten)]
        angles: AngleArgs,
        #[arg(long, value_enum, default_value = "positive")]
        kind: Kind,
        /// Dividing point choice (positive gadgets only).
        #[arg(long, default_value = "canonical")]
        dividing: Dividing,
        #[arg(long, value_enum, default_value = "fold")]
        format: Format,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Construct the canonical pair (positive, negative and hybrid).
    Pair {
        #[command(flatten)]
        angles: AngleArgs,
        #[arg(long, value_enum, default_value = "fold")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the randomized sweep and print one line per check.
    Verify {
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Write a set of example patterns into a directory.
    ExportDemo {
        /// Target directory (created if missing).
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(match err {
                Error::ConditionViolation { .. } | Error::InvalidRawParams(_) => 2,
                Error::NotConstructible { .. } => 3,
                _ => 1,
            })
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Validate(angles) => {
            let p = angles.validated()?;
            println!("valid");
            println!("gamma   = {:.10} deg", p.gamma().to_degrees());
            println!("gamma_L = {:.10} deg", p.gamma_side(Side::Left).to_degrees());
            println!("gamma_R = {:.10} deg", p.gamma_side(Side::Right).to_degrees());
            println!("r       = {:.10}", p.radius_ratio());
            Ok(ExitCode::SUCCESS)
        }
        Command::Critical(angles) => {
            let p = angles.validated()?;
            let frame = build_frame(&p)?;
            let geo = critical_geometric(&frame)?;
            let zeta_l = critical_numeric(&p, Side::Left);
            let zeta_r = critical_numeric(&p, Side::Right);
            let (lo, hi) = admissible_interval(&p);
            let phi_c = canonical_numeric(&p)?.phi_l();
            println!("zeta_L     = {:.10} deg", zeta_l.to_degrees());
            println!("zeta_R     = {:.10} deg", zeta_r.to_degrees());
            println!("phi_L(D_L) = {:.10} deg", (2.0 * zeta_l).to_degrees());
            println!("phi_L(D_R) = {:.10} deg", (p.gamma() - 2.0 * zeta_r).to_degrees());
            println!("phi_L(D_c) = {:.10} deg", phi_c.to_degrees());
            println!(
                "admissible phi_L = [{:.10}, {:.10}] deg",
                lo.to_degrees(),
                hi.to_degrees()
            );
            println!("trichotomy L = {}", geo.side(Side::Left).case());
            println!("trichotomy R = {}", geo.side(Side::Right).case());
            Ok(ExitCode::SUCCESS)
        }
        Command::Construct { angles, kind, dividing, format, out } => {
            let p = angles.validated()?;
            let frame = build_frame(&p)?;
            let doc = match kind {
                Kind::Positive => render(&positive_pattern(&frame, dividing.0)?, format)?,
                Kind::Negative => render(&negative_pattern(&frame)?, format)?,
                Kind::Pair => pair_doc(&frame, format)?,
            };
            emit(doc, out)
        }
        Command::Pair { angles, format, out } => {
            let p = angles.validated()?;
            let frame = build_frame(&p)?;
            emit(pair_doc(&frame, format)?, out)
        }
        Command::Verify { samples, seed, tol } => {
            let cfg = SweepConfig { samples, seed, tolerance: tol, checks: Vec::new() };
            let report = run_sweep(&cfg)?;
            print!("{}", report.render());
            if report.all_passed() {
                Ok(ExitCode::SUCCESS)
            } else {
                eprintln!("error: sweep checks failed");
                Ok(ExitCode::from(1))
            }
        }
        Command::ExportDemo { out } => {
            std::fs::create_dir_all(&out)
                .map_err(|e| Error::InvalidPattern(format!("cannot create {}: {e}", out.display())))?;
            let opts = RenderOptions::default();
            for (name, raw) in [
                ("square", RawParams::from_degrees(90.0, 90.0, 90.0, 0.0, 0.0)),
                ("skewed", RawParams::from_degrees(100.0, 80.0, 70.0, 10.0, 0.0)),
            ] {
                let frame = build_frame(&validate(raw)?)?;
                let pair = build_pair(&frame)?;
                write_file(&out.join(format!("{name}-pair.fold")), pair_to_fold(&pair)?)?;
                write_file(&out.join(format!("{name}-positive.svg")), to_svg(&pair.positive, &opts)?)?;
                write_file(&out.join(format!("{name}-negative.svg")), to_svg(&pair.negative, &opts)?)?;
                write_file(&out.join(format!("{name}-hybrid.svg")), to_svg(&pair.hybrid, &opts)?)?;
            }
            println!("wrote demo patterns to {}", out.display());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn render(cp: &CreasePattern, format: Format) -> Result<String, Error> {
    match format {
        Format::Fold => to_fold(cp),
        Format::Svg => to_svg(cp, &RenderOptions::default()),
    }
}

fn pair_doc(frame: &Frame, format: Format) -> Result<String, Error> {
    let pair = build_pair(frame)?;
    match format {
        Format::Fold => pair_to_fold(&pair),
        // One SVG can show only one assignment set; the hybrid carries
        // every crease of the pair.
        Format::Svg => to_svg(&pair.hybrid, &RenderOptions::default()),
    }
}

fn emit(doc: String, out: Option<PathBuf>) -> Result<ExitCode, Error> {
    match out {
        Some(path) => write_file(&path, doc)?,
        None => print!("{doc}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn write_file(path: &std::path::Path, doc: String) -> Result<(), Error> {
    std::fs::write(path, doc)
        .map_err(|e| Error::InvalidPattern(format!("cannot write {}: {e}", path.display())))
}
