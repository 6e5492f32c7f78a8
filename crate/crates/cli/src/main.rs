//! `bisfan`: bisectors of two sites under polyhedral norms, exactly.
//!
//! Exit codes: 0 success, 2 usage/parse errors, 3 domain errors,
//! 4 internal invariant breach.

mod io;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::io::parse_site;
use crate::run::{build_ball, cmd_cells, cmd_count_suite, cmd_equiv, cmd_export_cones, parse_dims};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(String),
    Internal(String),
}

impl From<bisfan_core::Error> for CliError {
    fn from(e: bisfan_core::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyOpt {
    /// Centrally symmetric polygon (dim = vertex count 2n, or --vertices)
    Polygon,
    /// l-infinity ball [-1,1]^d
    Cube,
    /// l1 ball conv{±e_i}
    L1,
    /// Discrete Wasserstein ball conv{e_i - e_j} on the sum-zero hyperplane
    Wasserstein,
    /// Centrally symmetric V-representation from --vertices
    Vrep,
}

impl FamilyOpt {
    pub fn name(self) -> &'static str {
        match self {
            FamilyOpt::Polygon => "polygon",
            FamilyOpt::Cube => "cube",
            FamilyOpt::L1 => "l1",
            FamilyOpt::Wasserstein => "wasserstein",
            FamilyOpt::Vrep => "vrep",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Off,
}

#[derive(Args, Debug)]
struct BallArgs {
    /// Norm family
    #[arg(long, value_enum)]
    family: FamilyOpt,
    /// Dimension (polygon: the vertex count 2n)
    #[arg(long)]
    dim: Option<usize>,
    /// V-representation JSON file
    #[arg(long)]
    vertices: Option<PathBuf>,
}

#[derive(Parser, Debug)]
#[command(
    name = "bisfan",
    version,
    about = "Bisectors of two sites under polyhedral norms, in exact rational arithmetic"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate the nonempty maximal cells of the bisector of 0 and --site
    Cells {
        #[command(flatten)]
        ball: BallArgs,
        /// Site as comma-separated rationals, e.g. 5,2,-1 or 1/2,3
        #[arg(long)]
        site: String,
        /// Output file (stdout when absent)
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Decide equivalence of the bisectors of (0, site) and (0, site-b)
    Equiv {
        #[command(flatten)]
        ball: BallArgs,
        #[arg(long)]
        site: String,
        #[arg(long)]
        site_b: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Cell-count table over a dimension range with seeded generic sites
    CountSuite {
        /// Norm family (polygon sizes are n, giving 2n-gons)
        #[arg(long, value_enum)]
        family: FamilyOpt,
        /// Size range lo..hi (inclusive) or a single size
        #[arg(long)]
        dims: String,
        /// Generic sites per size
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Sampling seed; pins the output byte-for-byte
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Export every bisection cone of a 3D ball, intersected with the ball,
    /// as an OFF mesh collection plus a JSON index
    ExportCones {
        /// V-representation JSON file (dim 3, centrally symmetric)
        #[arg(long)]
        vertices: PathBuf,
        /// Output path prefix (writes `<prefix>.off` and `<prefix>.json`)
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "off")]
        format: Format,
    },
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Cells {
            ball,
            site,
            out,
            format,
        } => {
            let unit_ball = build_ball(ball.family, ball.dim, ball.vertices.as_deref())?;
            let site = parse_site(&site)?;
            cmd_cells(&unit_ball, ball.family, &site, out.as_deref(), format)
        }
        Command::Equiv {
            ball,
            site,
            site_b,
            out,
            format,
        } => {
            let unit_ball = build_ball(ball.family, ball.dim, ball.vertices.as_deref())?;
            let a = parse_site(&site)?;
            let b = parse_site(&site_b)?;
            cmd_equiv(&unit_ball, ball.family, &a, &b, out.as_deref(), format)
        }
        Command::CountSuite {
            family,
            dims,
            samples,
            seed,
            out,
            format,
        } => {
            let range = parse_dims(&dims)?;
            cmd_count_suite(family, range, samples, seed, out.as_deref(), format)
        }
        Command::ExportCones {
            vertices,
            out,
            format,
        } => cmd_export_cones(&vertices, out.as_deref(), format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(CliError::Internal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(4)
        }
    }
}
