//! `kmx`: batch queries over root systems, Dynkin indices, affine algebras, affine
//! Weyl groups and the lattice model of the affine Grassmannian.
//!
//! Exit codes: 0 on success, 1 on a domain error (structured JSON on stdout),
//! 2 on a usage error (diagnostic on stderr).

mod commands;
mod render;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kmx_core::rootsys::TypeLabel;
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Parser, Debug)]
#[command(name = "kmx", version, about = "Exact computations around Dynkin indices and affine Grassmannians")]
struct Cli {
    /// Output format; CSV and table are flattened views of the JSON payload.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads for parallel scans (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Cap on enumeration work (candidate rows examined by point counts).
    #[arg(long, global = true, env = "KMX_BUDGET", default_value_t = 500_000_000)]
    budget: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Args, Debug, Clone)]
struct TypeArgs {
    /// Cartan type, one of A..G.
    #[arg(long = "type", value_parser = parse_type)]
    label: TypeLabel,
    #[arg(long)]
    rank: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dynkin index of the irreducible module with a given highest weight.
    Index {
        #[command(flatten)]
        ty: TypeArgs,
        /// Highest weight in fundamental-weight coordinates, e.g. `1,0,0`; `0` means the trivial weight.
        #[arg(long)]
        weight: IntList,
    },
    /// Dual Coxeter number of one type, or the whole table with `--all`.
    DualCoxeter {
        #[arg(long, conflicts_with_all = ["label", "rank"])]
        all: bool,
        #[arg(long = "type", value_parser = parse_type, required_unless_present = "all")]
        label: Option<TypeLabel>,
        #[arg(long, required_unless_present = "all")]
        rank: Option<usize>,
    },
    /// Dominant weights integrable at a given level.
    IntegrableWeights {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long)]
        level: i64,
    },
    /// Bracket of two elements of the centrally extended loop algebra of sl_n.
    AffineBracket {
        #[arg(long)]
        n: usize,
        /// JSON: `{"summands":[{"matrix":[["0","1"],["0","0"]],"poly":{"1":"1"}}],"central":"0"}`.
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
    },
    /// Cosets of the affine Weyl group modulo the finite one, by minimal length.
    Schubert {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long)]
        upto: usize,
        /// Attach the Poincaré polynomial of each Schubert variety.
        #[arg(long)]
        poincare: bool,
        /// Evaluate the Poincaré polynomials at `q`.
        #[arg(long, requires = "poincare")]
        q: Option<u64>,
    },
    /// Lattice model of the affine Grassmannian of SL_N.
    Latgrass {
        #[command(subcommand)]
        action: LatgrassCommand,
    },
    /// First Chern class of the determinant bundle from c₂ of the associated bundle.
    DetClass {
        /// Coefficient `l` in `c₂ = l α̃β̃`; alternatively give a representation.
        #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["label", "rank", "weight"])]
        l: Option<i64>,
        #[arg(long = "type", value_parser = parse_type, requires_all = ["rank", "weight"])]
        label: Option<TypeLabel>,
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long)]
        weight: Option<IntList>,
    },
    /// Sweeps an identity over a range of cases and reports every comparison.
    IdentityCheck {
        #[arg(long, value_enum)]
        identity: Identity,
        #[arg(long)]
        upto: u64,
        /// Seed for randomized corpora.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
enum LatgrassCommand {
    /// Number of lattice points over F_q by echelon-form scan.
    Count {
        #[arg(long = "N")]
        size: usize,
        #[arg(long = "n")]
        depth: usize,
        #[arg(long)]
        q: u64,
    },
    /// Whether a column span is a lattice point.
    Member {
        #[arg(long = "N")]
        size: usize,
        #[arg(long = "n")]
        depth: usize,
        /// JSON array of `2nN` rows of rational strings; columns span the subspace.
        #[arg(long)]
        basis: String,
    },
    /// The lattice `g L₀` after normalizing `det g`.
    Lattice {
        #[arg(long = "n")]
        depth: usize,
        /// JSON `N × N` array of Laurent polynomial strings such as `"t^-1+2"`.
        #[arg(long)]
        matrix: String,
    },
    /// The point `diag(t^{n_1}, …, t^{n_N}) L₀`.
    Cocharacter {
        #[arg(long = "n")]
        depth: usize,
        #[arg(long, allow_hyphen_values = true)]
        mu: IntList,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Identity {
    /// `½ Σ (m-2n)² = C(m+2, 3)` for `m = 0..=upto`.
    WeightString,
    /// Chern recursion `c₂(W(m)) = C(m+2, 3)`.
    ChernC2,
    /// Weight-sum and string-sum indices of `W(m)`.
    TwoRouteIndex,
    /// Antisymmetry and Jacobi on `upto` random triples for each of sl₂, sl₃, sl₄.
    BracketLaws,
}

/// Envelope of every successful run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QueryResult {
    pub command: String,
    pub payload: Value,
    pub provenance: Vec<String>,
}

pub enum CliError {
    Usage(String),
    Domain(kmx_core::Error),
}

impl From<kmx_core::Error> for CliError {
    fn from(e: kmx_core::Error) -> Self {
        CliError::Domain(e)
    }
}

fn parse_type(s: &str) -> Result<TypeLabel, String> {
    s.parse::<TypeLabel>().map_err(|e| e.to_string())
}

/// Comma-separated integers, e.g. `1,-1,0`.
#[derive(Clone, Debug)]
pub struct IntList(pub Vec<i64>);

impl std::str::FromStr for IntList {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        s.split(',')
            .map(|x| x.trim().parse::<i64>().map_err(|e| format!("{x:?}: {e}")))
            .collect::<Result<_, _>>()
            .map(IntList)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let command = argv.join(" ");
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global().ok();
    }
    match commands::run(&cli) {
        Ok((payload, provenance)) => {
            let result = QueryResult { command, payload, provenance };
            match render::render(&result, cli.format) {
                Ok(text) => {
                    print!("{text}");
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            }
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Domain(e)) => {
            println!("{}", serde_json::to_string_pretty(&render::error_json(&command, &e)).expect("plain JSON"));
            ExitCode::from(1)
        }
    }
}
