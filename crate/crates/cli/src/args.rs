use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use smallcancel_core::montecarlo::{Axis, AxisRange, DEFAULT_CONFIDENCE, DEFAULT_SAMPLES};
use smallcancel_core::{EvalMode, Lambda};

/// Random group presentations and the C'(λ) small cancellation condition.
///
/// Exit status: 0 on success (for `check`, every presentation passes),
/// 1 when `check` finds a failing presentation, 2 on invalid input.
#[derive(Debug, Parser)]
#[command(name = "smallcancel", version, about, long_about = None)]
pub struct Cli {
    /// Worker threads; 0 uses every core. Results do not depend on it.
    #[arg(long, global = true, env = "SMALLCANCEL_THREADS")]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check presentations read from a file ("-" for stdin).
    Check(CheckArgs),
    /// Evaluate the lower and upper bounds at one parameter point.
    Bounds(BoundsArgs),
    /// Print random presentations.
    Sample(SampleArgs),
    /// Monte Carlo estimate of the probability of C'(λ).
    Estimate(EstimateArgs),
    /// Bounds and estimates over a one- or two-axis grid, as CSV.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, Args)]
pub struct ParamArgs {
    /// Number of generators.
    #[arg(short = 'r', long)]
    pub rank: u32,
    /// Relator length, or the longest length with --l1.
    #[arg(short = 'l', long)]
    pub length: u32,
    /// Shortest relator length [default: --length].
    #[arg(long)]
    pub l1: Option<u32>,
    /// Number of relators.
    #[arg(short = 'm', long)]
    pub relators: u32,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    pub file: PathBuf,
    #[arg(long, default_value = "1/6")]
    pub lambda: Lambda,
    /// List every violating piece, not just the first.
    #[arg(long)]
    pub all: bool,
    /// Use the quadratic pairwise comparison.
    #[arg(long)]
    pub naive: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Auto,
    Exact,
    Log,
}

impl From<Mode> for EvalMode {
    fn from(m: Mode) -> EvalMode {
        match m {
            Mode::Auto => EvalMode::Auto,
            Mode::Exact => EvalMode::Exact,
            Mode::Log => EvalMode::Log,
        }
    }
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, default_value = "1/6")]
    pub lambda: Lambda,
    /// Also report the parameter limits guaranteeing this probability.
    #[arg(long)]
    pub target_p: Option<f64>,
    #[arg(long, value_enum, default_value_t = Mode::Auto)]
    pub mode: Mode,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, default_value_t = 1)]
    pub count: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, default_value = "1/6")]
    pub lambda: Lambda,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_CONFIDENCE)]
    pub confidence: f64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Varying axis as AXIS:START:END[:STEP], AXIS one of r, l, m. At most two.
    #[arg(long, value_parser = parse_range)]
    pub vary: Vec<AxisRange>,
    /// Fixed axis as AXIS=VALUE.
    #[arg(long, value_parser = parse_fix)]
    pub fix: Vec<(Axis, u32)>,
    /// Shortest relator length; cells then draw lengths from l1..=l.
    #[arg(long)]
    pub l1: Option<u32>,
    /// Use round((2r-1)^(d*l)) relators per cell instead of an m axis.
    #[arg(long)]
    pub density: Option<f64>,
    #[arg(long, default_value = "1/6")]
    pub lambda: Lambda,
    /// Monte Carlo samples per cell; 0 skips estimation.
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_CONFIDENCE)]
    pub confidence: f64,
    #[arg(long, value_enum, default_value_t = Mode::Auto)]
    pub mode: Mode,
    /// Output file [default: stdout].
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_axis(s: &str) -> Result<Axis, String> {
    match s.trim() {
        "r" => Ok(Axis::R),
        "l" => Ok(Axis::L),
        "m" => Ok(Axis::M),
        other => Err(format!("unknown axis {other:?}, expected r, l or m")),
    }
}

fn number<T: FromStr>(s: &str) -> Result<T, String> {
    s.trim().parse().map_err(|_| format!("invalid number {s:?}"))
}

pub fn parse_range(s: &str) -> Result<AxisRange, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if !(3..=4).contains(&parts.len()) {
        return Err(format!("expected AXIS:START:END[:STEP], got {s:?}"));
    }
    Ok(AxisRange {
        axis: parse_axis(parts[0])?,
        start: number(parts[1])?,
        end: number(parts[2])?,
        step: parts.get(3).map_or(Ok(1), |p| number(p))?,
    })
}

pub fn parse_fix(s: &str) -> Result<(Axis, u32), String> {
    let (a, v) = s.split_once('=').ok_or_else(|| format!("expected AXIS=VALUE, got {s:?}"))?;
    Ok((parse_axis(a)?, number(v)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn clap_definition() {
        Cli::command().debug_assert();
    }

    #[test]
    fn ranges() {
        let r = parse_range("l:4:40").unwrap();
        assert_eq!((r.axis, r.start, r.end, r.step), (Axis::L, 4, 40, 1));
        assert_eq!(parse_range("m:1:30:3").unwrap().step, 3);
        assert!(parse_range("x:1:2").is_err());
        assert!(parse_range("l:4").is_err());
        assert!(parse_range("l:a:4").is_err());
        assert_eq!(parse_fix("r=20").unwrap(), (Axis::R, 20));
        assert!(parse_fix("r20").is_err());
    }
}
