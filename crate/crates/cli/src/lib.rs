//! Command-line front end for `hopfcyc-core`: the JSON algebra file format,
//! a disk cache for operator matrices, and table/JSON/CSV reports.

pub mod commands;
pub mod emit;
pub mod error;
pub mod format;
pub mod input;
pub mod store;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use hopfcyc_core::omega::OpKind;

use commands::{CohomologyOptions, ComplexKind, IdentityOptions, OperatorOptions};
use emit::Format;
use error::CliError;
use input::{Input, TwistSpec};

#[derive(Debug, Parser)]
#[command(name = "hopfcyc", version, about = "Exact Hopf-cyclic computations on small Hopf algebras")]
pub struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value = "table")]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Source {
    /// Algebra file (JSON).
    pub file: Option<PathBuf>,
    /// A builtin algebra: trivial, group:Z2, group:Z3, group:Z4, group:S3,
    /// functions:Z2, functions:Z3, sweedler.
    #[arg(long)]
    pub builtin: Option<String>,
}

impl Source {
    fn load(&self) -> Result<Input, CliError> {
        Input::load(self.file.as_deref(), self.builtin.as_deref())
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the Hopf algebra axioms.
    Validate {
        #[command(flatten)]
        source: Source,
    },
    /// Operator identities, stability and coordinate formulas.
    Identities {
        #[command(flatten)]
        source: Source,
        /// Modular pair: DELTA-SIGMA by name (eps-1, eps-g) or DELTA;SIGMA
        /// with coefficient lists.
        #[arg(long, default_value = "eps-1")]
        pair: String,
        /// Twisting character: auto (eps and delta o S), none (eps only),
        /// a character name or coefficients.
        #[arg(long, default_value = "auto")]
        twist: TwistSpec,
        /// Largest degree (default 3 for dimension >= 6, else 4).
        #[arg(short = 'N', long)]
        max_degree: Option<usize>,
    },
    /// Hochschild and cyclic cohomology tables.
    Cohomology {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value = "eps-1")]
        pair: String,
        #[arg(long, value_enum, default_value = "cm")]
        complex: ComplexKind,
        /// Cutoff N; degrees 0..N-1 are reported.
        #[arg(short = 'N', long)]
        max_degree: Option<usize>,
        /// Automorphism for --complex f-twisted: id or twist:ALPHA;BETA.
        #[arg(long = "f", default_value = "id")]
        automorphism: String,
    },
    /// Exact matrix of one operator on Omega_n.
    Operators {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        pair: Option<String>,
        /// d, b, b', kappa, kappa', B, B' or xi.
        #[arg(long)]
        op: OpKind,
        #[arg(long)]
        degree: usize,
        /// none, auto (delta o S of --pair), a character name or coefficients.
        #[arg(long, default_value = "none")]
        twist: TwistSpec,
    },
    /// Print the algebra in the JSON file format.
    Export {
        #[command(flatten)]
        source: Source,
    },
}

/// Runs a parsed command: the rendered output and whether every check passed.
pub fn run(cli: &Cli) -> Result<(String, bool), CliError> {
    let doc = match &cli.command {
        Command::Validate { source } => commands::validate(&source.load()?),
        Command::Identities {
            source,
            pair,
            twist,
            max_degree,
        } => commands::identities(
            &source.load()?,
            &IdentityOptions {
                pair: pair.clone(),
                twist: twist.clone(),
                max_degree: *max_degree,
            },
        )?,
        Command::Cohomology {
            source,
            pair,
            complex,
            max_degree,
            automorphism,
        } => commands::cohomology(
            &source.load()?,
            &CohomologyOptions {
                pair: pair.clone(),
                complex: *complex,
                max_degree: *max_degree,
                automorphism: automorphism.clone(),
            },
        )?,
        Command::Operators {
            source,
            pair,
            op,
            degree,
            twist,
        } => commands::operators(
            &source.load()?,
            &OperatorOptions {
                pair: pair.clone(),
                op: *op,
                degree: *degree,
                twist: twist.clone(),
            },
        )?,
        Command::Export { source } => return Ok((source.load()?.file.to_json(), true)),
    };
    Ok((doc.render(cli.format), doc.passed))
}
