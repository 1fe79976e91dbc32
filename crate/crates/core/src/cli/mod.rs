//! Command-line front end.
//!
//! Every run produces one JSON [`Report`] on stdout (or in `--out`), or a
//! plain-text view of it with `--format text`; failures
//! print a JSON diagnostic on stderr and exit with 1 (bad input),
//! 2 (refused as too large) or 3 (internal invariant violated).

mod commands;
mod report;
mod text;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use commands::execute;
pub use report::{diagnostic, digest, exit_code, InputDigest, Report};

/// Seed used when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Parser, Debug, Clone)]
#[command(name = "quiverbox", version, about = "Complexes, boxes and parameter numbers of quiver algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Field override: Q or F<p>, e.g. F3.
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Seed for randomized steps; echoed in the report.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// `json` (the default) or `text` for a readable table view.
    #[arg(long, global = true, default_value = "json", value_parser = ["json", "text"])]
    pub format: String,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Algebra presentations.
    Algebra {
        #[command(subcommand)]
        action: AlgebraAction,
    },
    /// Sliced boxes.
    Box {
        #[command(subcommand)]
        action: BoxAction,
    },
    /// Complexes of projectives.
    Complex {
        #[command(subcommand)]
        action: ComplexAction,
    },
    /// Parameter numbers.
    Par {
        #[command(subcommand)]
        action: ParAction,
    },
    /// One-parameter families of algebras.
    Family {
        #[command(subcommand)]
        action: FamilyAction,
    },
    /// The bundled degenerating family.
    Brustle {
        #[command(subcommand)]
        action: BrustleAction,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum AlgebraAction {
    /// Dimensions, Peirce and radical tables, the ν table and invariant checks.
    Inspect { path: PathBuf },
}

#[derive(Subcommand, Debug, Clone)]
pub enum BoxAction {
    /// Objects, arrows and relations of the sliced box on a window.
    Build {
        path: PathBuf,
        /// Degree window `lo..top`.
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        /// List every object, arrow and relation.
        #[arg(long)]
        full: bool,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum ComplexAction {
    /// d² = 0, Peirce blocks, minimality and the box relations.
    Check { path: PathBuf },
    /// Homology dimensions split by vertex.
    Homology { path: PathBuf },
    /// Cancel contractible summands.
    Minimalize { path: PathBuf },
    /// Isomorphism of two minimal complexes.
    Iso { path: PathBuf, other: PathBuf },
}

#[derive(Subcommand, Debug, Clone)]
pub enum ParAction {
    /// Estimate par(R, I, A) for a vector rank.
    Estimate {
        path: PathBuf,
        /// Rank tuples per degree, e.g. `1,0/1,1`.
        #[arg(long)]
        ranks: String,
        /// Lowest degree of the ranks.
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        lo: i64,
        /// `J` or `J^k`.
        #[arg(long, default_value = "J")]
        ideal: String,
        /// exact, tangent or sample.
        #[arg(long, default_value = "exact")]
        mode: String,
        #[arg(long, default_value_t = 24)]
        samples: usize,
        /// Largest number of projective points enumerated.
        #[arg(long, default_value_t = 2_000_000)]
        cap: u64,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum FamilyAction {
    /// Fibre dimensions on a grid against the generic dimension.
    Dims {
        path: PathBuf,
        /// `all`, `a..b` or a comma list; defaults to `all` over F_p and `0..4` over Q.
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
    },
    /// The flat fibre at a point and the relations it adds.
    Flatlimit {
        path: PathBuf,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        at: String,
    },
    /// par of free ranks b·(1, …, 1) across a grid.
    Parscan {
        path: PathBuf,
        /// Free-rank sequence b, e.g. `1,1`.
        #[arg(long)]
        ranks: String,
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
        #[arg(long, default_value = "exact")]
        mode: String,
        /// Special point for the semicontinuity check.
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        at: String,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum BrustleAction {
    /// Dimensions at 0 and 1, the flat limit at 0 and a small par table.
    Demo {
        /// Free-rank sequence for the par table.
        #[arg(long, default_value = "1,1")]
        ranks: String,
    },
}

/// Parse arguments, run, write the report. Returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let out = cli.out.clone();
    match execute(&cli) {
        Ok((report, code)) => {
            let text = if cli.format == "text" {
                text::render(&report)
            } else {
                report.to_json()
            };
            match out {
                Some(p) => {
                    if let Err(e) = std::fs::write(&p, text) {
                        let err = crate::Error::Io {
                            path: p.display().to_string(),
                            source: e,
                        };
                        eprint!("{}", diagnostic(&err));
                        return exit_code(&err);
                    }
                }
                None => print!("{text}"),
            }
            code
        }
        Err(e) => {
            eprint!("{}", diagnostic(&e));
            exit_code(&e)
        }
    }
}
