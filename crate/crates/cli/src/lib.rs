//! The `endograph` command-line tool.
//!
//! [`run`] takes arguments and streams so the whole tool can be driven from
//! tests; `main` only wires it to the process.

use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
pub mod gallery;
mod input;

pub use input::{load_object, Loaded};

/// Version tag of every report the tool writes.
pub const REPORT_VERSION: &str = "endograph-report/1";

/// Environment variable holding the worker count for parallel commands.
pub const WORKERS_ENV: &str = "ENDOGRAPH_WORKERS";

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn failure(message: impl Into<String>) -> Self {
        CliError {
            code: 1,
            message: message.into(),
        }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<endograph::Error> for CliError {
    fn from(e: endograph::Error) -> Self {
        match e {
            endograph::Error::InvalidArgument(_) | endograph::Error::Domain(_) => CliError::usage(e.to_string()),
            _ => CliError::failure(e.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(name = "endograph", version, about = "Metrics and convergence diagnostics for fuzzy sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum MetricName {
    Hend,
    Hsend,
    Dinf,
    Dp,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum TrajectoryFormat {
    Csv,
    Doc,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Doc,
    Table,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum NetMode {
    End,
    Send,
}

#[derive(Args, Debug)]
struct EpsArg {
    /// Resolution, in (0,1).
    #[arg(long)]
    eps: f64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate every set of a document.
    Validate {
        /// Document path, or `-` for stdin.
        file: String,
    },
    /// Distance between two sets, given as `path` or `path#name`.
    Dist {
        #[arg(long, value_enum)]
        metric: MetricName,
        /// Exponent for `dp`, finite and at least 1.
        #[arg(long)]
        p: Option<f64>,
        a: String,
        b: String,
    },
    /// Irregular level sets D, P, P_0 and F of one set.
    Classify { file: String },
    /// Metric trajectories of a gallery family against its limit.
    Seq {
        #[arg(long)]
        family: String,
        /// `a..b` or `a..=b` or a comma list.
        #[arg(long)]
        n: String,
        /// Replace the family's limit by a set from a document.
        #[arg(long)]
        limit: Option<String>,
        /// Comma list of exponents for `d_p`.
        #[arg(long, default_value = "1,2")]
        p: String,
        /// Uniform ladder size for sampled families.
        #[arg(long)]
        levels: Option<usize>,
        #[arg(long, value_enum, default_value = "doc")]
        format: TrajectoryFormat,
    },
    /// ε-net certificates of the level unions of a collection.
    Net {
        file: String,
        #[command(flatten)]
        eps: EpsArg,
        /// Comma list of levels in (0,1] for `end` mode.
        #[arg(long, default_value = "1")]
        levels: String,
        #[arg(long, value_enum, default_value = "end")]
        mode: NetMode,
        /// Collection name; all sets when omitted.
        #[arg(long)]
        collection: Option<String>,
    },
    /// Replace every cut by the grid points within ε of it.
    Project {
        file: String,
        /// Comma list of grid points: reals, labels, or `x:y` coordinates.
        #[arg(long)]
        grid: String,
        #[command(flatten)]
        eps: EpsArg,
    },
    /// Replace the levels up to ε by the 0-level.
    Flatten {
        file: String,
        #[command(flatten)]
        eps: EpsArg,
    },
    /// Freeze the cuts at levels up to ε at the ε-cut.
    Truncate {
        file: String,
        #[command(flatten)]
        eps: EpsArg,
    },
    /// Recompute a named example and compare with its expected values.
    Gallery {
        /// One of the gallery names, or `all`.
        name: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, value_enum, default_value = "doc")]
        format: TableFormat,
    },
}

/// Runs the tool and returns the exit code.
pub fn run<I, S>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut input = input::Inputs::new(stdin);
    let result = match cli.command {
        Command::Validate { file } => commands::validate(&mut input, &file),
        Command::Dist { metric, p, a, b } => commands::dist(&mut input, metric, p, &a, &b),
        Command::Classify { file } => commands::classify(&mut input, &file),
        Command::Seq {
            family,
            n,
            limit,
            p,
            levels,
            format,
        } => commands::seq(&mut input, &family, &n, limit.as_deref(), &p, levels, format),
        Command::Net {
            file,
            eps,
            levels,
            mode,
            collection,
        } => commands::net(&mut input, &file, eps.eps, &levels, mode, collection.as_deref()),
        Command::Project { file, grid, eps } => commands::project(&mut input, &file, &grid, eps.eps),
        Command::Flatten { file, eps } => commands::flatten(&mut input, &file, eps.eps),
        Command::Truncate { file, eps } => commands::truncate(&mut input, &file, eps.eps),
        Command::Gallery { name, n, p, format } => commands::gallery(&name, n, p, format),
    };
    match result {
        Ok(o) => {
            let _ = out.write_all(o.text.as_bytes());
            if !o.ok {
                if let Some(m) = o.failure {
                    let _ = writeln!(err, "{m}");
                }
                return 1;
            }
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}

/// What a command printed and whether its checks held.
pub struct Output {
    pub text: String,
    pub ok: bool,
    pub failure: Option<String>,
}

impl Output {
    fn ok(text: String) -> Self {
        Output {
            text,
            ok: true,
            failure: None,
        }
    }
}

/// Worker pool sized from [`WORKERS_ENV`], or rayon's default.
pub fn pool() -> CliResult<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(WORKERS_ENV) {
        let n: usize = v
            .trim()
            .parse()
            .map_err(|_| CliError::usage(format!("{WORKERS_ENV}={v:?} is not a worker count")))?;
        b = b.num_threads(n);
    }
    b.build().map_err(|e| CliError::failure(e.to_string()))
}
