use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

/// Exact root decisions and claim audits for the associated polynomials of
/// A^n + B^n = C^n.
///
/// Exit status: 0 when everything audited held, 1 when a violation or
/// counterexample witness was produced, 2 on usage or input errors.
#[derive(Debug, Parser)]
#[command(
    name = "assocpoly",
    version,
    subcommand_required = false,
    arg_required_else_help = true
)]
pub struct Cli {
    /// Flat key/value TOML file supplying defaults for any option (flags win)
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Write the machine-readable report to standard output instead of a file
    #[arg(long, global = true)]
    pub json: bool,

    /// Report path [default: reports/<command>-<config hash>.json]
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Leave run metadata (timings, worker count) out of the report
    #[arg(long, global = true)]
    pub canonical: bool,

    /// Re-run every witness stored in a report or witness file
    #[arg(long, value_name = "FILE")]
    pub replay: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the associated polynomial of an offset pair as JSON
    Construct(ConstructArgs),
    /// Decide integer roots and approximate every root of a polynomial
    Roots(RootsArgs),
    /// Audit parity, divisibility, pairing and coefficient claims
    Audit(AuditArgs),
    /// Brute-force triple search or offset-grid sweep
    Search(SearchArgs),
    /// Re-run every witness stored in a report or witness file
    Replay(ReplayArgs),
}

#[derive(Debug, Clone, Args)]
pub struct PairArgs {
    /// First offset (D, or F for the positive variant)
    #[arg(long, allow_negative_numbers = true)]
    pub d: Option<BigInt>,

    /// Second offset (E, or G for the positive variant)
    #[arg(long, allow_negative_numbers = true)]
    pub e: Option<BigInt>,

    /// Offset variant: alternating (D, E) or positive (F, G) [default: alternating]
    #[arg(long)]
    pub variant: Option<String>,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[command(flatten)]
    pub pair: PairArgs,

    /// Exponent, an odd prime
    #[arg(long)]
    pub n: Option<u32>,
}

#[derive(Debug, Args)]
pub struct RootsArgs {
    #[command(flatten)]
    pub pair: PairArgs,

    /// Exponent, an odd prime (with --d/--e)
    #[arg(long)]
    pub n: Option<u32>,

    /// Integer coefficients, leading first, comma separated
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, conflicts_with_all = ["d", "e", "poly_json"])]
    pub coeffs: Option<Vec<BigInt>>,

    /// Polynomial JSON file as printed by `construct`
    #[arg(long, value_name = "PATH", conflicts_with_all = ["d", "e"])]
    pub poly_json: Option<PathBuf>,

    /// Binary precision of the numeric roots [default: 128]
    #[arg(long, env = "ASSOCPOLY_PRECISION")]
    pub precision: Option<u32>,

    /// Integrality tolerance for root pairing [default: 1e-6]
    #[arg(long)]
    pub tolerance: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Claim {
    /// Evenness of every binom(n,k)(D^k+E^k)
    #[value(name = "lhs-parity", alias = "lemma2")]
    LhsParity,
    /// D^(n-1)+E^(n-1) = 2 mod 4
    #[value(name = "mod4")]
    Mod4,
    /// X^m+Y^m = 2 mod 4 for odd X, Y and even m
    #[value(name = "power-sum-mod4", alias = "appendix-b")]
    PowerSumMod4,
    /// Integer sum and product pairing of the non-designated roots
    Pairs,
    /// Coefficient identities against the numeric roots
    Equations,
    /// Every integer root is even
    EvenRoots,
    /// Even designated root forces even tail sums
    TailParity,
    /// Every claim above
    All,
}

#[derive(Debug, Args)]
pub struct AuditArgs {
    /// Claim to audit
    #[arg(long, value_enum)]
    pub claim: Option<Claim>,

    #[command(flatten)]
    pub pair: PairArgs,

    /// Exponents, comma separated odd primes [default: 3,5,7]
    #[arg(long, value_delimiter = ',')]
    pub n: Option<Vec<u32>>,

    /// Lower grid bound for both offsets [default: 1]
    #[arg(long, allow_negative_numbers = true)]
    pub min: Option<i64>,

    /// Upper grid bound for both offsets [default: 51]
    #[arg(long, allow_negative_numbers = true)]
    pub max: Option<i64>,

    /// Largest odd base for power-sum-mod4 [default: 999]
    #[arg(long)]
    pub x_max: Option<u64>,

    /// Largest even exponent for power-sum-mod4 [default: 20]
    #[arg(long)]
    pub n_max: Option<u32>,

    /// Binary precision of the numeric roots [default: 128]
    #[arg(long, env = "ASSOCPOLY_PRECISION")]
    pub precision: Option<u32>,

    /// Integrality tolerance [default: 1e-6]
    #[arg(long)]
    pub tolerance: Option<f64>,

    /// Worker threads [default: 1]
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// triples (direct equation test) or offsets (grid sweep) [default: triples]
    #[arg(long)]
    pub mode: Option<String>,

    /// Lower bound for every coordinate [default: 1]
    #[arg(long, allow_negative_numbers = true)]
    pub min: Option<i64>,

    /// Upper bound for every coordinate [default: 51]
    #[arg(long, allow_negative_numbers = true)]
    pub max: Option<i64>,

    /// Exponents, comma separated [default: 3,5,7]
    #[arg(long, value_delimiter = ',')]
    pub n: Option<Vec<u32>>,

    /// Offset variant for the sweep [default: alternating]
    #[arg(long)]
    pub variant: Option<String>,

    /// Worker threads [default: 1]
    #[arg(long)]
    pub jobs: Option<usize>,

    /// Machine output format [default: json]
    #[arg(long, value_enum)]
    pub format: Option<Format>,

    /// Largest |A^n + B^n - C^n| recorded as a near miss [default: 10]
    #[arg(long)]
    pub near_miss: Option<u64>,

    /// Seed for the sampled identity spot checks [default: 0]
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct ReplayArgs {
    /// Report or witness JSON file
    pub file: PathBuf,
}
