use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use hypercover::{Family, Mode, Rational, Relax};
use num_bigint::BigInt;

#[derive(Debug, Parser)]
#[command(name = "hypercover", version, about = "Low-load cuph covers and partitions of graphs and uniform hypergraphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integral or half-integral biclique partition of a graph from vertex classes.
    Ep(EpArgs),
    /// d-cuph partition of a d-uniform hypergraph through its projection graphs.
    Lift(LiftArgs),
    /// Randomized fractional biclique partition for large minimum degree (exact or Monte Carlo).
    Dense(DenseArgs),
    /// Exact optimal max load of a small instance.
    Oracle(OracleArgs),
    /// Generate a seeded random hypergraph and check the density lower bound.
    Random(RandomArgs),
    /// Read a host and a cover file and validate the cover.
    Verify(VerifyArgs),
    /// Run every applicable construction and report the smallest max load.
    Bound(BoundArgs),
}

/// `auto` or an explicit value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Auto<T> {
    Auto,
    Value(T),
}

impl<T: FromStr> FromStr for Auto<T>
where
    T::Err: std::fmt::Display,
{
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "auto" {
            Ok(Auto::Auto)
        } else {
            s.parse().map(Auto::Value).map_err(|e| format!("expected `auto` or a value: {e}"))
        }
    }
}

/// Exact rational from `a/b`, an integer, or a finite decimal such as `0.25`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rat(pub Rational);

impl FromStr for Rat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let bad = || format!("{s:?} is not a rational (use a/b, an integer or a decimal)");
        let int = |t: &str| -> Result<BigInt, String> {
            let digits = t.strip_prefix('-').unwrap_or(t);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            t.parse().map_err(|_| bad())
        };
        if let Some((num, den)) = s.split_once('/') {
            let den = int(den)?;
            if den == BigInt::from(0) {
                return Err(format!("{s:?} has a zero denominator"));
            }
            return Ok(Rat(Rational::new(int(num)?, den)));
        }
        if let Some((whole, frac)) = s.split_once('.') {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let negative = whole.starts_with('-');
            let whole = if whole == "-" || whole.is_empty() { BigInt::from(0) } else { int(whole)? };
            let scale = BigInt::from(10u8).pow(frac.len() as u32);
            let frac = Rational::new(frac.parse().map_err(|_| bad())?, scale);
            let magnitude = Rational::from_integer(whole.magnitude().clone().into()) + frac;
            return Ok(Rat(if negative { -magnitude } else { magnitude }));
        }
        Ok(Rat(Rational::from_integer(int(s)?)))
    }
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    match s {
        "cover" => Ok(Mode::Cover),
        "partition" => Ok(Mode::Partition),
        _ => Err("expected `cover` or `partition`".into()),
    }
}

fn parse_family(s: &str) -> Result<Family, String> {
    match s {
        "cb" => Ok(Family::Cb),
        "cm" => Ok(Family::Cm),
        _ => Err("expected `cb` or `cm`".into()),
    }
}

fn parse_relax(s: &str) -> Result<Relax, String> {
    match s {
        "fractional" => Ok(Relax::Fractional),
        "integral" => Ok(Relax::Integral),
        _ => Err("expected `fractional` or `integral`".into()),
    }
}

#[derive(Clone, Debug, Args)]
pub struct Common {
    /// Worker threads; 0 uses one per core. Results do not depend on it.
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
    /// Print the summary as JSON instead of `key: value` lines.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct EpArgs {
    /// Host graph (.uhg).
    #[arg(long)]
    pub input: PathBuf,
    /// Write the cover here (.cover).
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Class size.
    #[arg(long, default_value = "auto")]
    pub k: Auto<usize>,
    #[arg(long, default_value = "integral", value_parser = parse_relax)]
    pub relax: Relax,
    /// Random edge orientation from this seed; lower-to-higher index otherwise.
    #[arg(long)]
    pub seed: Option<u64>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct LiftArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, default_value = "auto")]
    pub k: Auto<usize>,
    #[arg(long, default_value = "integral", value_parser = parse_relax)]
    pub relax: Relax,
    /// Random choice of the (d-2)-set of each edge from this seed; smallest vertices otherwise.
    #[arg(long)]
    pub seed: Option<u64>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct DenseArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Membership probability in (0, 1).
    #[arg(long, default_value = "auto")]
    pub p: Auto<Rat>,
    /// Degree slack: every vertex needs degree at least n - m.
    #[arg(long, default_value = "auto")]
    pub m: Auto<usize>,
    /// Monte Carlo check with this many samples instead of exact enumeration.
    #[arg(long)]
    pub samples: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Count the weight of outcomes with an empty side in loads and total weight.
    #[arg(long)]
    pub keep_degenerate: bool,
    /// Vertex limit for exact enumeration.
    #[arg(long)]
    pub limit: Option<usize>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Write the optimal certificate here (.cover).
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, default_value = "cb", value_parser = parse_family)]
    pub family: Family,
    #[arg(long, default_value = "cover", value_parser = parse_mode)]
    pub mode: Mode,
    #[arg(long, default_value = "fractional", value_parser = parse_relax)]
    pub relax: Relax,
    /// Vertex limit for the subgraph catalog.
    #[arg(long)]
    pub limit: Option<usize>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct RandomArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    /// Edge probability in [0, 1].
    #[arg(long, default_value = "1/2")]
    pub p: Rat,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the hypergraph here (.uhg).
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Also compute the fractional multipartite cover optimum.
    #[arg(long)]
    pub with_lp: bool,
    /// Vertex limit for the exhaustive density and LP steps.
    #[arg(long)]
    pub limit: Option<usize>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Cover file to check against the host.
    #[arg(long)]
    pub cover: PathBuf,
    #[arg(long, default_value = "cover", value_parser = parse_mode)]
    pub mode: Mode,
    /// Required family; inferred from the part counts when absent.
    #[arg(long, value_parser = parse_family)]
    pub family: Option<Family>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Write the cover achieving the bound here (.cover).
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Cross-check against the exact fractional biclique cover optimum.
    #[arg(long)]
    pub oracle: bool,
    /// Vertex limit for exact enumeration (dense construction and oracle).
    #[arg(long)]
    pub limit: Option<usize>,
    #[command(flatten)]
    pub common: Common,
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::Ep(a) => &a.common,
            Command::Lift(a) => &a.common,
            Command::Dense(a) => &a.common,
            Command::Oracle(a) => &a.common,
            Command::Random(a) => &a.common,
            Command::Verify(a) => &a.common,
            Command::Bound(a) => &a.common,
        }
    }
}
