//! Command-line front end for `hodge-core`.
//!
//! Each subcommand is a pure function from loaded manifests to an
//! [`Outcome`](commands::Outcome); the binary only prints it and exits.

pub mod commands;
pub mod render;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use hodge_core::ParseOptions;

pub use commands::Outcome;
pub use render::RenderedDiamond;

const DIAMOND_HELP: &str =
    "Diamonds are printed top vertex first: row k (k = 0..2n) lists h[p][q] \
with p + q = k, p decreasing from left to right.

Exit codes: 0 success, 2 parse or validation error, 3 unknown name, \
4 precondition violated, 5 contract audit failure.";

#[derive(Debug, Parser)]
#[command(name = "hodge", version, about = "Hodge diamonds, blow-ups and birational audits", after_help = DIAMOND_HELP)]
pub struct Cli {
    /// Manifest file; repeatable, later files may reference earlier names.
    #[arg(long = "manifest", value_name = "PATH", global = true)]
    pub manifests: Vec<PathBuf>,

    /// Colon-separated files or directories, used when no --manifest is given.
    #[arg(
        long,
        env = "HODGE_MANIFEST_PATH",
        value_name = "PATHS",
        hide_env_values = true
    )]
    pub manifest_path: Option<String>,

    /// Accept unknown manifest keys.
    #[arg(long, global = true)]
    pub lenient: bool,

    /// Emit a canonical JSON manifest instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a model's diamond, Betti numbers, flags and defect.
    Show { name: String },
    /// Blow up an ambient model along one or more centers.
    Blowup {
        #[arg(long)]
        ambient: String,
        /// Center component; repeat for a disconnected center.
        #[arg(long = "center", required = true)]
        centers: Vec<String>,
        /// Also write the JSON result to this file.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Run a factorization script and report h^{1,1}, b_2 and count_delta.
    Factor {
        #[arg(long)]
        script: String,
        /// Compare bimeromorphic invariants of the endpoints.
        #[arg(long)]
        audit: bool,
    },
    /// Validate models and report symmetry, defect and degeneracy.
    Check { name: Option<String> },
}

impl Cli {
    fn manifest_files(&self) -> Result<Vec<PathBuf>, Outcome> {
        if !self.manifests.is_empty() {
            return Ok(self.manifests.clone());
        }
        match &self.manifest_path {
            Some(value) => commands::search_path(value).map_err(|e| Outcome {
                stdout: String::new(),
                stderr: format!("error: HODGE_MANIFEST_PATH: {e}\n"),
                code: commands::EXIT_INVALID,
            }),
            None => Ok(Vec::new()),
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let options = ParseOptions {
        lenient: cli.lenient,
    };
    let sources = match cli
        .manifest_files()
        .and_then(|p| commands::read_sources(&p))
    {
        Ok(s) => s,
        Err(o) => return o,
    };
    if let Command::Check { name } = &cli.command {
        return commands::check(&sources, &options, name.as_deref(), cli.json);
    }
    let registry = match commands::Registry::load(&sources, &options) {
        Ok(r) => r,
        Err(o) => return o,
    };
    match &cli.command {
        Command::Show { name } => commands::show(&registry, name, cli.json),
        Command::Blowup {
            ambient,
            centers,
            out,
        } => commands::blowup(&registry, ambient, centers, out.as_deref(), cli.json),
        Command::Factor { script, audit } => commands::factor(&registry, script, *audit, cli.json),
        Command::Check { .. } => unreachable!("handled above"),
    }
}
