use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug, Serialize)]
#[command(name = "ffstat", version, about = "Variance experiments for arithmetic functions over F_q[t]")]
pub struct Cli {
    /// Seed for every randomized step
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Worker threads (0 = all cores)
    #[arg(long, global = true, default_value_t = 0)]
    pub workers: usize,

    /// Maximum number of polynomials one step may enumerate
    #[arg(long, global = true, default_value_t = 100_000_000)]
    pub budget: u128,

    /// Maximum number of Dirichlet characters one step may enumerate
    #[arg(long, global = true, default_value_t = 100_000)]
    pub char_budget: u128,

    /// Output file (stdout if absent)
    #[arg(long, global = true)]
    #[serde(skip)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Tolerance for exact-identity comparisons
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tolerance: f64,

    /// Record wall-clock timings (reports are then no longer byte-reproducible)
    #[arg(long, global = true)]
    pub timing: bool,

    /// Report theory predictions outside the hypotheses of their theorem
    #[arg(long = "allow-out-of-range", global = true)]
    pub allow_out_of_range: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectralMode {
    /// Compute the spectral side when the character budget allows it
    Auto,
    Always,
    Never,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HallMode {
    Variance,
    Pairs,
    Singular,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct FieldArgs {
    /// Field sizes, e.g. `5,9,13`
    #[arg(long, value_parser = parse_list::<u32>, conflicts_with = "p")]
    pub q: Option<List<u32>>,

    /// Characteristic, with `--k`
    #[arg(long)]
    pub p: Option<u32>,

    /// Extension degree, with `--p`
    #[arg(long, requires = "p")]
    pub k: Option<u32>,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Variance of sums over short intervals
    VarianceSi {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_parser = parse_list::<usize>)]
        n: List<usize>,
        /// Interval parameters (default: every `0 <= h <= n - 2`)
        #[arg(long, value_parser = parse_list::<usize>)]
        h: Option<List<usize>>,
        #[arg(long, default_value = "mu")]
        alpha: String,
        #[arg(long, value_enum, default_value_t = SpectralMode::Auto)]
        spectral: SpectralMode,
    },
    /// Variance of sums over arithmetic progressions
    VarianceAp {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_parser = parse_list::<usize>)]
        n: List<usize>,
        /// Moduli: `t^m`, `irr:d`, `split:d`, `mixed:d`, or coefficients lowest first
        #[arg(long, num_args = 1.., required = true)]
        modulus: Vec<String>,
        #[arg(long, default_value = "mu")]
        alpha: String,
        #[arg(long, value_enum, default_value_t = SpectralMode::Auto)]
        spectral: SpectralMode,
    },
    /// Brute-force against spectral variances over a grid
    IdentitySuite {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_parser = parse_list::<usize>, default_value = "3..7")]
        n: List<usize>,
    },
    /// L-functions: inverse roots and Frobenius classes
    Lfunc {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, num_args = 1.., required = true)]
        modulus: Vec<String>,
        /// Emit one line per character
        #[arg(long)]
        dump: bool,
    },
    /// Averages of matrix statistics over Frobenius classes
    Equidist {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, num_args = 1.., required = true)]
        modulus: Vec<String>,
        /// `sym:K`, `trace4` or `product:M`
        #[arg(long, default_value = "sym:1")]
        stat: String,
        #[arg(long, value_enum, default_value_t = Parity::Odd)]
        parity: Parity,
    },
    /// Monte Carlo matrix integrals over U(N)
    Rmt {
        #[arg(long = "N", value_parser = parse_list::<usize>)]
        dim: List<usize>,
        #[arg(long, value_parser = parse_list::<usize>, default_value = "1")]
        k: List<usize>,
        /// `sym`, `trace4` or `product`
        #[arg(long, default_value = "sym")]
        stat: String,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
    },
    /// Squarefree pair correlations and the fixed-q variance
    Hall {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_parser = parse_list::<usize>, default_value = "10")]
        n: List<usize>,
        #[arg(long, value_parser = parse_list::<usize>, default_value = "0,1")]
        h: List<usize>,
        /// Euler product cutoff degree
        #[arg(long, default_value_t = 6)]
        cutoff: usize,
        #[arg(long, value_enum, default_value_t = HallMode::Variance)]
        what: HallMode,
    },
    /// Run the acceptance battery
    Verify {
        /// Only the exact-identity suite over F_3
        #[arg(long)]
        quick: bool,
    },
}

/// A comma-separated list with `a..b` inclusive ranges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct List<T>(pub Vec<T>);

pub fn parse_list<T>(s: &str) -> Result<List<T>, String>
where
    T: FromStr + Copy + TryFrom<u64>,
    <T as FromStr>::Err: std::fmt::Display,
{
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if let Some((a, b)) = part.split_once("..") {
            let a: u64 = a.trim().parse().map_err(|e| format!("{part:?}: {e}"))?;
            let b: u64 = b.trim().parse().map_err(|e| format!("{part:?}: {e}"))?;
            if a > b {
                return Err(format!("empty range {part:?}"));
            }
            for x in a..=b {
                out.push(T::try_from(x).map_err(|_| format!("{x} out of range"))?);
            }
        } else {
            out.push(part.parse::<T>().map_err(|e| format!("{part:?}: {e}"))?);
        }
    }
    if out.is_empty() {
        return Err("empty list".into());
    }
    Ok(List(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists_and_ranges() {
        assert_eq!(parse_list::<u32>("5,9,13").unwrap().0, vec![5, 9, 13]);
        assert_eq!(parse_list::<usize>("3..5,8").unwrap().0, vec![3, 4, 5, 8]);
        assert!(parse_list::<usize>("5..3").is_err());
        assert!(parse_list::<usize>("").is_err());
    }
}
