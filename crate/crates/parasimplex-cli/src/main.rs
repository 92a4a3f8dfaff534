//! `parasimplex`: inspect parasimplex maps, slice objects and duality
//! constructions, and run the named verification suites.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 for
//! usage, configuration and input errors.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use parasimplex::homposet::SliceVariant;
use parasimplex::verify::JsonKind;

#[derive(Parser, Debug)]
#[command(name = "parasimplex", version, about = "Parasimplices, slice objects and their symmetries over F_p")]
pub struct Cli {
    /// Prime field characteristic; repeat to give `verify` several primes.
    #[arg(long = "prime", global = true, value_name = "P")]
    pub primes: Vec<u32>,
    /// Seed for every random choice.
    #[arg(long, global = true, env = "PARASIMPLEX_SEED")]
    pub seed: Option<u64>,
    /// Number of random instances to generate and check.
    #[arg(long, global = true)]
    pub trials: Option<usize>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Emit Graphviz DOT for the index poset.
    #[arg(long, global = true, conflicts_with = "json")]
    pub dot: bool,
    #[command(subcommand)]
    pub command: Command,
}

/// Where an object comes from: a JSON file, or a seeded random draw.
#[derive(Args, Debug, Clone)]
pub struct Source {
    /// Read the object from a JSON file (`-` for stdin) instead of drawing it.
    #[arg(long, value_name = "PATH")]
    pub input: Option<PathBuf>,
    /// Largest dimension per degree of random complexes.
    #[arg(long, default_value_t = 2)]
    pub max_dim: usize,
    /// Random complexes live in degrees `0..=max_degree`.
    #[arg(long, default_value_t = 2)]
    pub max_degree: i32,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Variant {
    Slice,
    Domain,
    Triangular,
    Cubical,
}

impl From<Variant> for SliceVariant {
    fn from(v: Variant) -> Self {
        match v {
            Variant::Slice => SliceVariant::Slice,
            Variant::Domain => SliceVariant::Domain,
            Variant::Triangular => SliceVariant::Triangular,
            Variant::Cubical => SliceVariant::Cubical,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Shape {
    Chain,
    Cube,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Operations on one map `Λ_k -> Λ_n` given by its coordinates.
    Para {
        /// Target parameter `n`.
        n: usize,
        /// Coordinates `f(0) … f(k)`.
        #[arg(required = true, allow_negative_numbers = true)]
        coords: Vec<i64>,
    },
    /// A slice model of `D_{n,k}` as a poset.
    Poset {
        n: usize,
        k: usize,
        #[arg(long, value_enum, default_value = "slice")]
        variant: Variant,
    },
    /// Homology of a chain complex.
    Chain {
        #[command(flatten)]
        source: Source,
    },
    /// Homology profile of a diagram over a chain or a cube.
    Diagram {
        #[arg(long, value_enum, default_value = "cube")]
        shape: Shape,
        /// Length of the chain or dimension of the cube.
        #[arg(long, default_value_t = 2)]
        size: usize,
        #[command(flatten)]
        source: Source,
    },
    /// Window extension, J-cubes and d^h[-1] on objects of `D_{n,k}`.
    Snk {
        n: Option<usize>,
        k: Option<usize>,
        #[command(flatten)]
        source: Source,
    },
    /// The equivalence `Φ_{n,k}` and its round trip, `s3` and `ξ` checks.
    Phi {
        n: Option<usize>,
        k: Option<usize>,
        /// Print the image object as JSON.
        #[arg(long)]
        emit: bool,
        #[command(flatten)]
        source: Source,
    },
    /// Functorial Toda brackets of coherent data of length `n`.
    Toda {
        n: Option<usize>,
        #[command(flatten)]
        source: Source,
    },
    /// The filtered object of a diagram over `[n]` and its triangles.
    Filter {
        n: Option<usize>,
        #[command(flatten)]
        source: Source,
    },
    /// Triangle data of objects of `D_{n,k}`.
    Triangle {
        n: Option<usize>,
        k: Option<usize>,
        #[command(flatten)]
        source: Source,
    },
    /// Run named verification suites and write a JSON-lines report.
    Verify {
        /// Suite name, or `all`.
        #[arg(long)]
        suite: Option<String>,
        /// Suite configuration as JSON; flags override its fields.
        #[arg(long, value_name = "PATH")]
        config: Option<PathBuf>,
        /// Write the report here as JSON lines.
        #[arg(long, value_name = "PATH")]
        output: Option<PathBuf>,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long)]
        k_max: Option<usize>,
        /// List the registered suites and exit.
        #[arg(long)]
        list: bool,
    },
    /// Parse, canonicalize and re-parse a JSON document.
    Io {
        path: PathBuf,
        /// Document type; inferred from the keys when omitted.
        #[arg(long, value_parser = parse_kind)]
        kind: Option<JsonKind>,
    },
}

fn parse_kind(s: &str) -> Result<JsonKind, String> {
    serde_json::from_value(serde_json::Value::String(s.into())).map_err(|_| {
        let names: Vec<String> = JsonKind::ALL
            .iter()
            .map(|k| serde_json::to_value(k).expect("kinds serialize").as_str().unwrap_or_default().to_owned())
            .collect();
        format!("unknown kind {s:?}; expected one of {}", names.join(", "))
    })
}

/// 0 when every check passed, 1 when one failed, 2 when nothing could run.
fn exit_code(outcome: &anyhow::Result<bool>) -> u8 {
    match outcome {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(_) => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = commands::dispatch(&cli);
    if let Err(e) = &outcome {
        eprintln!("error: {e:#}");
    }
    ExitCode::from(exit_code(&outcome))
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Ok(true)), 0);
        assert_eq!(exit_code(&Ok(false)), 1);
        assert_eq!(exit_code(&Err(anyhow::anyhow!("bad config"))), 2);
    }

    #[test]
    fn argument_definitions_are_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn kinds_parse_by_snake_case_name() {
        assert_eq!(parse_kind("para_map"), Ok(JsonKind::ParaMap));
        assert_eq!(parse_kind("toda_data"), Ok(JsonKind::TodaData));
        assert!(parse_kind("ParaMap").unwrap_err().contains("para_map"));
    }
}
