use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use normplane::Vec2;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Compare the Busemann, Glogovskij and billiard bisectors on random ray pairs.
    Bisect,
    /// Equal tangent deviation of a body K measured in the norm of M.
    EqualTangent,
    /// Integral curves, conic fit, classification and boundary ODE residuals.
    OdeVerify,
    /// Seeded billiard-reflection sweep on random mirrors.
    Reflect,
    /// Billiard trajectory in a table.
    Billiard,
    /// Pedal-triangle scan over random acute triangles.
    Fagnano,
}

/// Sweeps and checks for bisectors, tangents and billiards in normed planes.
#[derive(Clone, Debug, Parser)]
#[command(name = "normplane", version)]
pub struct Args {
    #[arg(long, value_enum)]
    pub subcommand: Command,

    /// Unit ball M: a JSON file or inline JSON, e.g. '{"kind":"lp","p":4}'.
    #[arg(long)]
    pub ball: Option<String>,

    /// Body K or billiard table: JSON file or inline JSON
    /// '{"ball":{...},"center":[x,y],"scale":s}'.
    #[arg(long)]
    pub body: Option<String>,

    /// Sample count (pairs, exterior points, triangles, or grid size).
    #[arg(long)]
    pub samples: Option<usize>,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Threshold for the `within_tol` flag of the summary.
    #[arg(long)]
    pub tol: Option<f64>,

    /// Detailed report (CSV or JSON, depending on the subcommand).
    #[arg(long)]
    pub out: Option<PathBuf>,

    #[arg(long)]
    pub svg: Option<PathBuf>,

    /// Number of bounces for `billiard`.
    #[arg(long, default_value_t = 50)]
    pub bounces: usize,

    /// Start point `x,y` for `billiard`.
    #[arg(long, value_parser = parse_vec2, allow_hyphen_values = true)]
    pub start: Option<Vec2>,

    /// Initial direction `x,y` for `billiard`.
    #[arg(long, value_parser = parse_vec2, allow_hyphen_values = true)]
    pub dir: Option<Vec2>,
}

fn parse_vec2(s: &str) -> Result<Vec2, String> {
    let (x, y) = s.split_once(',').ok_or_else(|| format!("expected x,y, got {s:?}"))?;
    let x: f64 = x.trim().parse().map_err(|e| format!("{x:?}: {e}"))?;
    let y: f64 = y.trim().parse().map_err(|e| format!("{y:?}: {e}"))?;
    Vec2::try_new(x, y).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vec2_values() {
        assert_eq!(parse_vec2("-0.5, 2").unwrap(), Vec2::new(-0.5, 2.0));
        assert!(parse_vec2("1").is_err());
        assert!(parse_vec2("1,nan").is_err());
    }

    #[test]
    fn parses_flags() {
        let a = Args::try_parse_from([
            "normplane", "--subcommand", "equal-tangent", "--samples", "10", "--dir", "-1,0",
        ])
        .unwrap();
        assert_eq!(a.subcommand, Command::EqualTangent);
        assert_eq!(a.samples, Some(10));
        assert_eq!(a.seed, 0);
        assert_eq!(a.dir, Some(Vec2::new(-1.0, 0.0)));
    }
}
