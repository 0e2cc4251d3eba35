//! `expanders`: one subcommand per library area. Reports go to stdout or
//! `--out`, each carrying the [`RunManifest`] that reproduces it.
//!
//! Exit codes: 0 success, 1 failed precondition or bad input, 2 a size cap
//! or iteration limit was hit, 64 usage error.

mod commands;
mod manifest;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;

pub use manifest::RunManifest;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Lib(#[from] expanders::Error),
    #[error("{0}: {1}")]
    Io(String, std::io::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(e) if e.is_limit() => 2,
            CliError::Lib(_) | CliError::Io(..) => 1,
            CliError::Usage(_) => 64,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "expanders", version, about = "Expander graphs, codes and sieve experiments")]
struct Cli {
    /// Root seed; every random task derives its seeds from it.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (default: all cores). Does not change any output.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Structure of a graph: connectivity, girth, exact expansion.
    Graph(GraphArgs),
    /// Spectrum summary and Ramanujan check.
    Spectral(SpectralArgs),
    /// Cayley graph of a finite matrix group.
    Cayley(CayleyArgs),
    /// Iterated zig-zag family from a searched or given base graph.
    Zigzag(ZigzagArgs),
    /// Cycle codes and Tanner-code certificates.
    Code(CodeArgs),
    /// Product replacement walk: distance to uniform over time.
    Prodrep(ProdrepArgs),
    /// Legendre counts, local densities and sifted sums.
    Sieve(SieveArgs),
    /// Orbit enumeration and prime-factor counts along orbits.
    Orbit(OrbitArgs),
    /// Random matrix walks: hit-probability decay and Galois statistics.
    Walk(WalkArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphPreset {
    K4,
    C6,
    Petersen,
}

/// Exactly one graph source.
#[derive(Args, Debug, Serialize)]
#[group(required = true, multiple = false)]
pub struct GraphSource {
    /// Graph file in the rotation text format.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub preset: Option<GraphPreset>,
    /// A random `k`-regular graph on `n` vertices, given as `n,k`.
    #[arg(long, value_parser = parse_pair)]
    pub random: Option<(usize, usize)>,
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected n,k")?;
    Ok((a.trim().parse().map_err(|_| "bad n")?, b.trim().parse().map_err(|_| "bad k")?))
}

#[derive(Args, Debug, Serialize)]
pub struct GraphArgs {
    #[command(flatten)]
    pub source: GraphSource,
    /// Also write the graph in the text format.
    #[arg(long)]
    pub write: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct SpectralArgs {
    #[command(flatten)]
    pub source: GraphSource,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CayleyPreset {
    /// `(1 ±t; 0 1)`, `(1 0; ±t 1)` in `SL_2(F_p)`.
    Sl2Onetwothree,
}

#[derive(Args, Debug, Serialize)]
#[group(skip)]
#[command(group(ArgGroup::new("cayley_source").required(true).args(["preset", "gens"])))]
pub struct CayleyArgs {
    #[arg(long)]
    pub preset: Option<CayleyPreset>,
    /// Generator file with a nonzero modulus; inverses are added.
    #[arg(long)]
    pub gens: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub t: i64,
    #[arg(long, default_value_t = 5)]
    pub p: u64,
    #[arg(long)]
    pub write: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct ZigzagArgs {
    /// Base graph file with `d⁴` vertices; searched when absent.
    #[arg(long)]
    pub base: Option<PathBuf>,
    /// Degree of the searched base graph.
    #[arg(long, default_value_t = 3)]
    pub d: usize,
    #[arg(long, default_value_t = 3)]
    pub levels: usize,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    #[arg(long, default_value_t = 0.9)]
    pub threshold: f64,
    #[arg(long, default_value_t = 400)]
    pub switches: usize,
    /// Write the base and every level as graph files into this directory.
    #[arg(long)]
    pub dump_dir: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Labeling {
    Port,
    Random,
}

#[derive(Args, Debug, Serialize)]
pub struct CodeArgs {
    #[command(flatten)]
    pub source: GraphSource,
    /// Inner code file; without it the cycle code is reported.
    #[arg(long)]
    pub inner: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Labeling::Port)]
    pub labeling: Labeling,
    /// Write the resulting code's parity-check matrix here.
    #[arg(long)]
    pub write_code: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug, Serialize)]
pub struct ProdrepArgs {
    /// `cyclic:N`, `sym:N` or `sl2:P`.
    #[arg(long)]
    pub group: String,
    #[arg(long, default_value_t = 2)]
    pub r: usize,
    #[arg(long, default_value_t = 20)]
    pub tmax: usize,
    #[arg(long, default_value_t = 10_000)]
    pub trials: usize,
    #[arg(long)]
    pub lazy: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Args, Debug, Serialize)]
#[group(skip)]
#[command(group(ArgGroup::new("sieve_task").required(true).args(["legendre", "poly", "beta"])))]
pub struct SieveArgs {
    /// `π(x) − π(√x)` by inclusion–exclusion, checked against a direct sieve.
    #[arg(long)]
    pub legendre: Option<f64>,
    /// `S(f, z)` for `1 ≤ n ≤ x`.
    #[arg(long)]
    pub poly: Option<String>,
    /// `β(d)` for this polynomial.
    #[arg(long)]
    pub beta: Option<String>,
    #[arg(long, default_value_t = 30)]
    pub x: u64,
    #[arg(long, default_value_t = 3)]
    pub z: u64,
    #[arg(long, default_value_t = 1)]
    pub d: u64,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrbitPreset {
    /// Descartes quadruples under the four reflections.
    Apollonian,
    /// The primitive Pythagorean tree from (3,4,5).
    Pythagorean,
    /// `(7 6; 8 7)^{±1}` on (1,1), on the conic 4x² − 3y² = 1.
    Pell,
    /// `(3 −1; 1 0)^{±1}` on (2,1): even-index Fibonacci pairs.
    Fibonacci,
}

#[derive(Args, Debug, Serialize)]
#[group(skip)]
#[command(group(ArgGroup::new("orbit_source").required(true).args(["preset", "gens"])))]
pub struct OrbitArgs {
    #[arg(long)]
    pub preset: Option<OrbitPreset>,
    /// Integer generator file (modulus 0), inverse-closed.
    #[arg(long, requires = "base")]
    pub gens: Option<PathBuf>,
    /// Base point, comma-separated.
    #[arg(long)]
    pub base: Option<String>,
    /// Root quadruple for the Apollonian preset.
    #[arg(long, default_value = "18,23,27,146")]
    pub root: String,
    /// Word length bound.
    #[arg(long, alias = "depth", default_value_t = 3)]
    pub radius: usize,
    /// Report `ν(f(x))` over the orbit instead of dumping it.
    #[arg(long)]
    pub poly: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WalkPreset {
    /// Elementary generators of `SL_2(Z)`.
    Sl2,
    /// Elementary generators of `SL_3(Z)`.
    Sl3,
}

#[derive(Args, Debug, Serialize)]
#[group(skip)]
#[command(group(ArgGroup::new("walk_source").required(true).args(["preset", "gens"])))]
pub struct WalkArgs {
    #[arg(long)]
    pub preset: Option<WalkPreset>,
    /// Integer generator file (modulus 0), inverse-closed, determinant 1.
    #[arg(long)]
    pub gens: Option<PathBuf>,
    #[arg(long, default_value_t = 60)]
    pub steps: usize,
    #[arg(long, default_value_t = 10_000)]
    pub trials: usize,
    #[arg(long = "mod", default_value_t = 101)]
    pub modulus: u64,
    /// `disc`, `always`, `power:m` or `subset:FILE`.
    #[arg(long, default_value = "disc")]
    pub predicate: String,
    /// Right end of the decay-fit window (default `min(steps, 60)`).
    #[arg(long)]
    pub kmax: Option<usize>,
    /// Factor characteristic polynomials mod these primes instead.
    #[arg(long, value_delimiter = ',')]
    pub primes: Option<Vec<u64>>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(64),
            };
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(64);
        }
    }
    match commands::run(&cli.command, cli.seed).and_then(|text| emit(cli.out.as_deref(), &text)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn emit(out: Option<&std::path::Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(p.display().to_string(), e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
