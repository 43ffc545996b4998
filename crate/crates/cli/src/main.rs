mod cache;
mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use inducibility::exec::DEFAULT_BUDGET;

use crate::cache::Cache;
use crate::report::Format;

/// Exact induced-subgraph densities of graph constructions.
#[derive(Debug, Parser)]
#[command(name = "inducibility", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    /// Directory for cached results.
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    /// Largest number of enumerated items an exact computation may visit.
    #[arg(long, default_value_t = DEFAULT_BUDGET, global = true)]
    pub budget: u64,
    /// Evaluate in floating point; required for `alpha`.
    #[arg(long, global = true)]
    pub approx: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProfileFlavor {
    Induced,
    Repetitive,
    Labeled,
    Spectral,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DensityFlavor {
    Induced,
    Repetitive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Exoo4,
    Headline,
    Appendix5,
    All,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The t-vertex profile of a construction.
    Profile {
        #[arg(long)]
        t: usize,
        #[arg(long, value_enum, default_value = "repetitive")]
        flavor: ProfileFlavor,
        expr: String,
    },
    /// The density of a quantum graph.
    Density {
        /// Order; inferred from the quantum graph when omitted.
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        quantum: String,
        #[arg(long, value_enum, default_value = "repetitive")]
        flavor: DensityFlavor,
        expr: String,
    },
    /// The limit profile of the nested blow-up of a loopless graph.
    NestedProfile {
        #[arg(long)]
        t: usize,
        /// Also print the transition matrix.
        #[arg(long)]
        matrix: bool,
        expr: String,
    },
    /// The density of a quantum graph in a tensor product of blow-ups and
    /// at most one nested blow-up.
    Limit {
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        quantum: String,
        /// Comma-separated factor expressions.
        #[arg(long)]
        factors: Option<String>,
        /// Graph whose nested blow-up is a further factor.
        #[arg(long)]
        nested: Option<String>,
    },
    /// A seeded Monte Carlo estimate of the t-profile.
    Estimate {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sample distinct vertices (induced profile) instead of with replacement.
        #[arg(long)]
        without_replacement: bool,
        /// Count only cliques and independent sets.
        #[arg(long)]
        monochromatic: bool,
        expr: String,
    },
    /// Closed-form bounds for paths and cycles.
    Bounds {
        #[arg(long)]
        t: usize,
    },
    /// Recompute the catalogued constructions.
    Tables {
        #[arg(long, value_enum, default_value = "all")]
        which: Which,
    },
    /// graph6 conversion.
    Convert {
        #[arg(long, conflicts_with = "encode", required_unless_present = "encode")]
        graph6: Option<String>,
        #[arg(long)]
        encode: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((output, ok)) => {
            print!("{output}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

/// Rendered output and whether the command succeeded in full.
fn run(cli: &Cli) -> Result<(String, bool), Box<dyn std::error::Error>> {
    let cache = match &cli.global.cache {
        Some(dir) => Some((Cache::open(dir)?, Cache::key(commands::cache_material(cli)?.as_bytes()))),
        None => None,
    };
    if let Some((cache, key)) = &cache {
        if let Some(hit) = cache.get(key) {
            return Ok((hit, true));
        }
    }
    let report = commands::execute(cli)?;
    let output = report.render(cli.global.format);
    let ok = report.all_rows_pass();
    if let (Some((cache, key)), true) = (&cache, ok) {
        cache.put(key, &output)?;
    }
    Ok((output, ok))
}
