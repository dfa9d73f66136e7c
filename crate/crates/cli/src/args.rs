//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "rothyp", version, about = "Curvature, L_k operators and classification of rotational hypersurfaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Principal curvatures, H, K and the s-table at sample points.
    Curvature(SpecArgs),
    /// Closed against numeric L_kG at sample points.
    Lk(LkArgs),
    /// Fit L_{n-3}G = AG and classify the profile.
    Classify(ClassifyArgs),
    /// Integrate a minimal profile.
    SolveMinimal(MinimalArgs),
    /// Exact constants of the elimination step for a range of n.
    Audit(AuditArgs),
    /// Emit the classification fixture set.
    Fixtures(FixtureArgs),
    /// Coordinate grid of the immersion.
    Export(ExportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct SpecArgs {
    /// Profile specification document (JSON).
    #[arg(long)]
    pub spec: PathBuf,
    /// Overrides the dimension stored in the spec.
    #[arg(long)]
    pub n: Option<String>,
    #[arg(long, default_value_t = 64)]
    pub samples: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct LkArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    /// Operator order, or `auto` for n - 3.
    #[arg(long, default_value = "auto")]
    pub k: String,
    /// Largest accepted relative error between the two routes.
    #[arg(long, default_value_t = 1e-4)]
    pub tol: f64,
}

#[derive(Debug, Clone, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    #[arg(long)]
    pub tol_fit: Option<f64>,
    #[arg(long)]
    pub tol_flat: Option<f64>,
    #[arg(long)]
    pub tol_min: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct MinimalArgs {
    #[arg(long)]
    pub n: String,
    /// First-integral constant; `inf` gives the hyperplane.
    #[arg(long)]
    pub c1: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub c2: f64,
    /// Range of f as `a..b`.
    #[arg(long)]
    pub f_range: String,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub branch: i32,
    #[arg(long, default_value_t = 64)]
    pub samples: usize,
    /// Maximum |H| accepted along the solution.
    #[arg(long, default_value_t = 1e-6)]
    pub tol_min: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct AuditArgs {
    /// Single n or inclusive range `a..b`.
    #[arg(long, default_value = "3..12")]
    pub n: String,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct FixtureArgs {
    #[arg(long, default_value = "3")]
    pub n: String,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct ExportArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    /// Points per angle coordinate.
    #[arg(long, default_value_t = 8)]
    pub angle_samples: usize,
}

/// Parses `7` or `3..12` (inclusive).
pub fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("invalid integer `{t}` in `--n {s}`"));
    match s.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            let (a, b) = (parse(a)?, parse(b)?);
            if a > b {
                return Err(format!("empty range `{s}`"));
            }
            Ok((a, b))
        }
        None => {
            let v = parse(s)?;
            Ok((v, v))
        }
    }
}

/// Parses a single integer for flags that do not take ranges.
pub fn parse_single(s: &str) -> Result<usize, String> {
    match parse_range(s)? {
        (a, b) if a == b => Ok(a),
        _ => Err(format!("`--n {s}` must be a single integer here")),
    }
}

/// Parses `a..b` into two reals.
pub fn parse_real_range(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected `a..b`, got `{s}`"))?;
    let p = |t: &str| t.trim().parse::<f64>().map_err(|_| format!("invalid number `{t}` in `{s}`"));
    Ok((p(a)?, p(b)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("3..12"), Ok((3, 12)));
        assert_eq!(parse_range("3..=5"), Ok((3, 5)));
        assert_eq!(parse_range("4"), Ok((4, 4)));
        assert!(parse_range("5..3").is_err());
        assert!(parse_single("3..4").is_err());
        assert_eq!(parse_real_range("0.5..2"), Ok((0.5, 2.0)));
    }
}
