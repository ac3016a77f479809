use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hcube_core::C64;
use serde::Serialize;

#[derive(Debug, Parser, Serialize)]
#[command(name = "hcube", version, about = "Fourier analysis and inequality checks on the discrete cube")]
pub struct Cli {
    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads (default: THREADS, then the number of cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Also print the full JSON result on stdout when writing to --out.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Build an extremal or basic function.
    #[command(subcommand)]
    Construct(Construct),
    /// Apply an operator to a function file.
    Apply(ApplyArgs),
    /// Run a numerical check and emit a report.
    #[command(subcommand)]
    Verify(Check),
    /// Search for large Bernstein ratios.
    Search(SearchArgs),
    /// Merge report files into one table.
    Report(ReportArgs),
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Construct {
    /// T_d((δ₁ + ⋯ + δ_n)/n).
    Chebyshev {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
    /// The k-fold composition of the six-variable cubic (k = 1 only as a table).
    Kushilevitz {
        #[arg(long)]
        k: u32,
    },
    /// The character w_S.
    Character {
        #[arg(long)]
        n: usize,
        /// Bit j set means j+1 ∈ S; accepts 0b…, 0x… or decimal.
        #[arg(long, value_parser = parse_mask)]
        mask: usize,
    },
    /// Indicator of a subcube.
    Subcube {
        #[arg(long)]
        n: usize,
        /// Fixed coordinates, e.g. `1=+1,3=-1` (1-based).
        #[arg(long, value_parser = parse_fixings)]
        fix: Fixings,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Fixings(pub Vec<(usize, i8)>);

#[derive(Debug, Args, Serialize)]
pub struct ApplyArgs {
    /// Input function or spectrum file.
    #[arg(long = "in", global = true)]
    pub input: Option<PathBuf>,
    #[command(subcommand)]
    pub op: ApplyOp,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ApplyOp {
    /// Δ^k.
    Laplacian {
        #[arg(long, default_value_t = 1)]
        k: u32,
    },
    /// e^{−tΔ}.
    Heat {
        #[arg(long)]
        t: f64,
    },
    /// (Δ + γI)^z.
    Power {
        /// Complex exponent such as `0.5`, `0+1i` or `1-2i`.
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        z: C64,
        #[arg(long, default_value_t = 0.0)]
        gamma: f64,
    },
    /// Keep levels ≤ low or ≥ tail.
    Project {
        #[arg(long, conflicts_with = "tail", required_unless_present = "tail")]
        low: Option<usize>,
        #[arg(long)]
        tail: Option<usize>,
    },
    /// ∂_j (1-based j).
    Partial {
        #[arg(long)]
        j: usize,
    },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    #[command(name = "bm-l2")]
    BmL2 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
    Bernstein(SearchArgs),
    #[command(name = "boolean-l1")]
    BooleanL1,
    Corma {
        #[arg(long, value_parser = parse_exponent)]
        p: f64,
    },
    #[command(name = "heat-tail")]
    HeatTail(SampledArgs),
    Helo(SampledArgs),
    Imaginary {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_exponent)]
        p: f64,
        /// Comma-separated u values.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "-2,-1,-0.5,0.5,1,2")]
        u: Vec<f64>,
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
    Chebyshev {
        /// Comma-separated dimensions.
        #[arg(long, value_delimiter = ',', default_value = "4,8,16")]
        n: Vec<usize>,
        #[arg(long)]
        d: usize,
    },
    Kushilevitz {
        #[arg(long)]
        k: u32,
    },
    #[command(name = "three-lines")]
    ThreeLines {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, value_parser = parse_exponent)]
        p: f64,
        #[arg(long)]
        eps: f64,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
        /// Sample points per boundary line.
        #[arg(long, default_value_t = 129)]
        samples: usize,
    },
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SampledArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub d: usize,
    #[arg(long, value_parser = parse_exponent)]
    pub p: f64,
    #[arg(long)]
    pub eps: f64,
    /// Comma-separated times.
    #[arg(long, value_delimiter = ',', default_value = "0.1,0.5,1")]
    pub t: Vec<f64>,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SearchArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub d: usize,
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    /// Exponent; `inf` for the sup norm.
    #[arg(long, value_parser = parse_exponent)]
    pub p: f64,
    #[arg(long, default_value_t = 1.0)]
    pub eps: f64,
    #[arg(long, default_value_t = 8)]
    pub restarts: usize,
    #[arg(long, default_value_t = 400)]
    pub steps: usize,
    #[arg(long, default_value_t = 0.5)]
    pub step_size: f64,
    #[arg(long, default_value_t = 64.0)]
    pub smoothing_p: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct ReportArgs {
    /// Glob pattern of report files.
    #[arg(long)]
    pub glob: String,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    pub format: TableFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TableFormat {
    Csv,
    Md,
}

pub fn parse_exponent(s: &str) -> Result<f64, String> {
    match s.trim().to_ascii_lowercase().as_str() {
        "inf" | "infinity" => Ok(f64::INFINITY),
        other => other
            .parse::<f64>()
            .ok()
            .filter(|p| p.is_finite())
            .ok_or_else(|| format!("invalid exponent {s:?}")),
    }
}

pub fn parse_mask(s: &str) -> Result<usize, String> {
    let s = s.trim();
    let parsed = if let Some(bits) = s.strip_prefix("0b") {
        usize::from_str_radix(&bits.replace('_', ""), 2)
    } else if let Some(hex) = s.strip_prefix("0x") {
        usize::from_str_radix(&hex.replace('_', ""), 16)
    } else {
        s.parse()
    };
    parsed.map_err(|e| format!("invalid mask {s:?}: {e}"))
}

pub fn parse_complex(s: &str) -> Result<C64, String> {
    s.trim()
        .parse::<C64>()
        .map_err(|_| format!("invalid complex number {s:?}"))
}

pub fn parse_fixings(s: &str) -> Result<Fixings, String> {
    s.split(',')
        .filter(|part| !part.trim().is_empty())
        .map(|part| {
            let (j, sign) = part
                .split_once('=')
                .ok_or_else(|| format!("expected j=±1, got {part:?}"))?;
            let j: usize = j.trim().parse().map_err(|_| format!("bad coordinate in {part:?}"))?;
            let sign = match sign.trim() {
                "1" | "+1" => 1,
                "-1" => -1,
                other => return Err(format!("sign must be +1 or -1, got {other:?}")),
            };
            Ok((j, sign))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Fixings)
}
