use std::ops::RangeInclusive;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hydrocone::algebra::{parse_rat, Rat};

#[derive(Parser, Debug)]
#[command(
    name = "hydrocone",
    version,
    about = "Parametrix symbols and Green-operator asymptotics for hydrogen on a cone"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print h⁻¹ᵢ(w) per channel with pole inventories.
    Parametrix(Common),
    /// Print the G_I/G_II term ledger and the grouped expansion.
    Green(Common),
    /// Run the exact cross-checks.
    Verify(VerifyArgs),
    /// Evaluate Q₀/Q₁ numerically on a bound state.
    Qcheck(Common),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    JsonLines,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Parametrix order N [default: 2, or 8 for `verify`].
    #[arg(long)]
    pub order: Option<u32>,
    /// Channel range `a..b` (inclusive) or a single channel.
    #[arg(long, value_parser = parse_channels)]
    pub channels: Option<RangeInclusive<u32>>,
    #[arg(long, default_value = "1", value_parser = parse_rational, allow_hyphen_values = true)]
    pub gamma: Rat,
    #[arg(long = "gamma-tilde", value_parser = parse_rational, allow_hyphen_values = true)]
    pub gamma_tilde: Option<Rat>,
    /// Nuclear charge: a rational, or `sym` to keep it symbolic.
    #[arg(long = "Z", value_parser = parse_param, allow_hyphen_values = true)]
    pub z: Option<Param>,
    /// Energy: a rational, or `sym`.
    #[arg(long = "E", value_parser = parse_param, conflicts_with = "n", allow_hyphen_values = true)]
    pub e: Option<Param>,
    /// Principal quantum number; sets E = −Z²/(2n²).
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub l: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Tolerance for the numeric checks.
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Param {
    Symbolic,
    Value(Rat),
}

impl Common {
    /// Channel range, defaulting to `0..=default`.
    pub fn channel_range(&self, default: u32) -> RangeInclusive<u32> {
        self.channels.clone().unwrap_or(0..=default)
    }

    pub fn z_value(&self) -> Option<&Rat> {
        match &self.z {
            Some(Param::Value(v)) => Some(v),
            _ => None,
        }
    }

    pub fn e_value(&self) -> Option<&Rat> {
        match &self.e {
            Some(Param::Value(v)) => Some(v),
            _ => None,
        }
    }
}

fn parse_rational(s: &str) -> Result<Rat, String> {
    parse_rat(s).ok_or_else(|| format!("not a rational number: {s}"))
}

fn parse_param(s: &str) -> Result<Param, String> {
    if s.eq_ignore_ascii_case("sym") {
        Ok(Param::Symbolic)
    } else {
        parse_rational(s).map(Param::Value)
    }
}

fn parse_channels(s: &str) -> Result<RangeInclusive<u32>, String> {
    let num = |t: &str| t.trim().parse::<u32>().map_err(|_| format!("bad channel bound: {t}"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => {
            let a = num(s)?;
            (a, a)
        }
    };
    if a > b {
        return Err(format!("empty channel range {s}"));
    }
    Ok(a..=b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use hydrocone::algebra::rat;

    #[test]
    fn channel_ranges() {
        assert_eq!(parse_channels("0..2").unwrap(), 0..=2);
        assert_eq!(parse_channels("1..=3").unwrap(), 1..=3);
        assert_eq!(parse_channels("4").unwrap(), 4..=4);
        assert!(parse_channels("3..1").is_err());
        assert!(parse_channels("a..b").is_err());
    }

    #[test]
    fn params() {
        assert_eq!(parse_param("sym").unwrap(), Param::Symbolic);
        assert_eq!(parse_param("-1/8").unwrap(), Param::Value(rat(-1, 8)));
        assert_eq!(parse_rational("0.75").unwrap(), rat(3, 4));
    }
}
