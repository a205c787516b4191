//! `valdist`: counting functions, Jensen identities and zero-set statistics
//! for exponential sums and Dirichlet series from the command line.
//!
//! Exit codes: 0 success, 1 a check did not hold or a computation failed,
//! 2 usage or config error. Every run writes a manifest JSON: to
//! `--manifest` when given, else next to `--out` as `<out>.manifest.json`,
//! else to stderr.

mod commands;
mod config;
mod error;
mod output;
mod parse;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::error::CliError;
use crate::output::Manifest;

#[derive(Debug, Parser)]
#[command(name = "valdist", version, about = "Value distribution of exponential sums and Dirichlet series")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: Global,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Output path (file, or directory for `verify`); stdout when omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Manifest path.
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,
    /// Worker threads; defaults to the hardware count.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Seed of the randomized sampling checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Numerical tolerance: winding tolerance for counts, evaluation
    /// tolerance for `eval`, residual threshold for `jensen` and `poisson`.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Distance below which two located zeros are the same point.
    #[arg(long = "match-tol", global = true, default_value_t = valdist_core::symdiff::DEFAULT_MATCH_TOL)]
    pub match_tol: f64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate f and f' at a point.
    Eval {
        #[arg(long = "fn")]
        function: PathBuf,
        /// Point, as `x,y` or `x+yi`.
        #[arg(long, allow_hyphen_values = true)]
        s: String,
    },
    /// Count solutions of f = a (or poles with `--a inf`) in |s| ≤ r.
    Count {
        #[arg(long = "fn")]
        function: PathBuf,
        #[arg(long)]
        r: f64,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        a: String,
    },
    /// Locate solutions of f = a (or poles) with multiplicities.
    Zeros {
        #[arg(long = "fn")]
        function: PathBuf,
        #[arg(long)]
        r: f64,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        a: String,
    },
    /// Counting table over a radius grid, as CSV.
    Table {
        #[arg(long = "fn")]
        function: PathBuf,
        /// `a:b:n` linear or `a:b:nlog` logarithmic.
        #[arg(long, default_value = "5:50:8log")]
        grid: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        a: String,
    },
    /// Jensen identity residual on |s| = r.
    Jensen {
        #[arg(long = "fn")]
        function: PathBuf,
        #[arg(long)]
        r: f64,
        /// Quadrature tolerance of the boundary average.
        #[arg(long = "quad-tol", default_value_t = 1e-12)]
        quad_tol: f64,
    },
    /// Poisson–Jensen residual at an interior point.
    Poisson {
        #[arg(long = "fn")]
        function: PathBuf,
        #[arg(long)]
        r: f64,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
    },
    /// Genus-one product over a zero list and its growth bound.
    Product {
        /// JSON array of `[re, im]` zeros.
        #[arg(long)]
        zeros: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        s: Option<String>,
        /// Random points checked against the growth bound.
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
    /// Iterated difference quotient Λ^d f at a point.
    Lambda {
        #[arg(long = "fn")]
        function: PathBuf,
        #[arg(long, default_value_t = valdist_core::toolkit::DEFAULT_TAU)]
        tau: f64,
        #[arg(long, default_value_t = 1)]
        d: u32,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
    },
    /// Exclusion disks for a point list, or an annulus point for a function.
    Cartan {
        /// JSON array of `[re, im]` points.
        #[arg(long, conflicts_with = "function")]
        points: Option<PathBuf>,
        #[arg(long, requires = "points")]
        h: Option<f64>,
        #[arg(long = "fn")]
        function: Option<PathBuf>,
        #[arg(long = "R1", default_value_t = 32.0)]
        r1: f64,
        /// Outside samples checked against the product lower bound.
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
    /// Translation numbers of a finite sum, optionally with the Rouché
    /// recurrence from a seed disk.
    Translation {
        #[arg(long = "fn")]
        function: PathBuf,
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        sigma0: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        start: f64,
        #[arg(long)]
        end: f64,
        /// Every window of this length must contain a translation number.
        #[arg(long)]
        window: f64,
        #[arg(long, default_value_t = 1e-3)]
        step: f64,
        /// Center of the seed disk.
        #[arg(long, allow_hyphen_values = true)]
        center: Option<String>,
        #[arg(long, default_value_t = 0.3)]
        rho: f64,
        /// Radii of the recurrence lower bounds.
        #[arg(long)]
        radii: Option<String>,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        a: String,
    },
    /// Symmetric difference of the zero sets of F and G.
    Symdiff {
        #[arg(long = "F")]
        f: PathBuf,
        #[arg(long = "G")]
        g: PathBuf,
        #[arg(long = "T", conflicts_with = "grid")]
        t: Option<f64>,
        #[arg(long)]
        grid: Option<String>,
    },
    /// Full catalog suite; exit 0 iff every check holds.
    Verify {
        #[arg(long)]
        grid: Option<String>,
        /// Radii per entry when the entry's own range is used.
        #[arg(long, default_value_t = 8)]
        points: usize,
        #[arg(long, default_value_t = valdist_core::verify::DEFAULT_THETA)]
        theta: f64,
    },
    /// List the catalog.
    Catalog,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Eval { .. } => "eval",
            Command::Count { .. } => "count",
            Command::Zeros { .. } => "zeros",
            Command::Table { .. } => "table",
            Command::Jensen { .. } => "jensen",
            Command::Poisson { .. } => "poisson",
            Command::Product { .. } => "product",
            Command::Lambda { .. } => "lambda",
            Command::Cartan { .. } => "cartan",
            Command::Translation { .. } => "translation",
            Command::Symdiff { .. } => "symdiff",
            Command::Verify { .. } => "verify",
            Command::Catalog => "catalog",
        }
    }
}

fn write_manifest(m: &Manifest, global: &Global) -> Result<(), CliError> {
    let text = output::json_text(&serde_json::to_value(m).expect("manifest serializes"));
    let path = global.manifest.clone().or_else(|| {
        global.out.as_ref().map(|o| {
            if o.is_dir() {
                o.join("manifest.json")
            } else {
                let mut p = o.clone().into_os_string();
                p.push(".manifest.json");
                PathBuf::from(p)
            }
        })
    });
    match path {
        Some(p) => output::write_file(&p, &text),
        None => {
            eprint!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let threads = cli.global.threads.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
        eprintln!("valdist: thread pool: {e}");
        return ExitCode::from(2);
    }
    let mut manifest = Manifest::new(cli.command.name(), argv[1..].to_vec(), cli.global.seed, threads);
    let start = Instant::now();
    let result = commands::run(&cli, &mut manifest);
    let code = match &result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("valdist {}: {e}", cli.command.name());
            e.exit_code()
        }
    };
    manifest.exit_code = code;
    manifest.wall_time_seconds = start.elapsed().as_secs_f64();
    if let Err(e) = write_manifest(&manifest, &cli.global) {
        eprintln!("valdist: manifest: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
