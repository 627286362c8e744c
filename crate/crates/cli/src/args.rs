use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use probdel::Complex;

/// Fixed default seed so that `verify` runs are reproducible.
pub const DEFAULT_SEED: u64 = 0x5eed_de1e;

#[derive(Debug, Parser)]
#[command(
    name = "probdel",
    version,
    about = "Probabilistic quantum deletion machine simulator"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Seed for random draws.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the isometry and closed forms against simulation on random draws.
    Verify(VerifyArgs),
    /// Evaluate fidelities for one input and machine.
    Fidelity(FidelityArgs),
    /// Evaluate F1, F2 and their difference on a 1-D grid.
    Sweep(SweepArgs),
    /// Rebuild the extremum tables alongside published values.
    Table(TableArgs),
    /// Optimal error amplitude, best deletion fidelity and the minimax bound.
    Optimize(OptimizeArgs),
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
}

/// Parses `re` or `re,im`.
pub fn parse_complex(s: &str) -> Result<Complex, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let real = |t: &str| -> Result<f64, String> {
        let v: f64 = t.parse().map_err(|_| format!("`{t}` is not a number"))?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(format!("`{t}` is not finite"))
        }
    };
    match parts.as_slice() {
        [re] => Ok(Complex::new(real(re)?, 0.0)),
        [re, im] => Ok(Complex::new(real(re)?, real(im)?)),
        _ => Err(format!("expected `re` or `re,im`, got `{s}`")),
    }
}

#[derive(Debug, Clone, Args)]
pub struct FidelityArgs {
    /// Input amplitude a, as `re` or `re,im`.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub a: Complex,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub b: Complex,
    /// Deletion amplitude p.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub p: Complex,
    /// Error amplitude q; defaults to +√(1 − |p|²).
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub q: Option<Complex>,
    #[arg(long = "blank-m0", value_parser = parse_complex, allow_hyphen_values = true)]
    pub blank_m0: Option<Complex>,
    #[arg(long = "blank-m1", value_parser = parse_complex, allow_hyphen_values = true)]
    pub blank_m1: Option<Complex>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepVar {
    P,
    Ab,
    A,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Retention {
    Simulated,
    Printed,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub var: SweepVar,
    /// Real input amplitude a (p sweeps).
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<f64>,
    /// Real input amplitude b (p sweeps).
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<f64>,
    /// Real deletion amplitude p (ab and a sweeps).
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub max: Option<f64>,
    #[arg(long)]
    pub steps: Option<usize>,
    /// Retention-fidelity expression for the f1 column.
    #[arg(long, value_enum, default_value_t = Retention::Simulated)]
    pub retention: Retention,
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub which: u8,
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false, id = "target")]
pub struct OptimizeTarget {
    /// Optimize for this input product ab.
    #[arg(long, allow_hyphen_values = true)]
    pub ab: Option<f64>,
    /// Smallest best-achievable F2 over all inputs.
    #[arg(long)]
    pub minimax: bool,
    /// Best achievable F2 as a function of the input amplitude a.
    #[arg(long)]
    pub curve: bool,
}

#[derive(Debug, Clone, Args)]
pub struct OptimizeArgs {
    #[command(flatten)]
    pub target: OptimizeTarget,
    /// Grid points for --curve.
    #[arg(long, default_value_t = 1001)]
    pub steps: usize,
}
