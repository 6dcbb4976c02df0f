use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};

use lrlab_core::Vec3;
use lrlab_core::lrmodel::{BMinusVariant, GhzMode};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Unit {
    Deg,
    Rad,
}

impl Unit {
    pub fn to_rad(self, x: f64) -> f64 {
        match self {
            Unit::Deg => x.to_radians(),
            Unit::Rad => x,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum StateArg {
    Singlet,
    Hardy,
    Ghz3,
    Ghz4,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ExperimentArg {
    Singlet,
    Chsh,
    Ghz3,
    Ghz4,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum ModeArg {
    PaperZ,
    Table,
}

impl From<ModeArg> for GhzMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::PaperZ => GhzMode::PaperZ,
            ModeArg::Table => GhzMode::Table,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum VariantArg {
    Printed,
    Swapped,
}

impl From<VariantArg> for BMinusVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Printed => BMinusVariant::Printed,
            VariantArg::Swapped => BMinusVariant::Swapped,
        }
    }
}

/// `start:stop:count`, endpoints inclusive.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Grid {
    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count).map(|i| self.start + step * i as f64).collect()
    }
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, n] = parts.as_slice() else {
            return Err(format!("grid {s:?} is not start:stop:count"));
        };
        let start: f64 = a.trim().parse().map_err(|_| format!("bad grid start {a:?}"))?;
        let stop: f64 = b.trim().parse().map_err(|_| format!("bad grid stop {b:?}"))?;
        let count: usize = n.trim().parse().map_err(|_| format!("bad grid count {n:?}"))?;
        if !start.is_finite() || !stop.is_finite() {
            return Err("grid bounds must be finite".into());
        }
        if count == 0 {
            return Err("grid count must be at least 1".into());
        }
        Ok(Grid { start, stop, count })
    }
}

impl TryFrom<String> for Grid {
    type Error = String;

    fn try_from(s: String) -> Result<Self, String> {
        s.parse()
    }
}

impl From<Grid> for String {
    fn from(g: Grid) -> String {
        format!("{}:{}:{}", g.start, g.stop, g.count)
    }
}

/// Measurement directions as (polar, azimuth) pairs. On the command line:
/// `"θ1,φ1;θ2,φ2;…"`; in JSON: `[[θ1, φ1], …]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Directions(pub Vec<[f64; 2]>);

impl FromStr for Directions {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        s.split(';')
            .filter(|p| !p.trim().is_empty())
            .map(|p| {
                let xs: Vec<f64> = p
                    .split(',')
                    .map(|x| x.trim().parse::<f64>().map_err(|_| format!("bad angle {x:?}")))
                    .collect::<Result<_, _>>()?;
                match xs.as_slice() {
                    [t, f] => Ok([*t, *f]),
                    _ => Err(format!("direction {p:?} needs polar,azimuth")),
                }
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Directions)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceOverrides {
    /// Tolerance for exact algebraic identities.
    #[arg(long = "tol-identity")]
    pub identity: Option<f64>,
    /// Tolerance on the Hardy solver residual norm.
    #[arg(long = "tol-solver-residual")]
    pub solver_residual: Option<f64>,
    /// Tolerance on Hardy predictions from a converged solution.
    #[arg(long = "tol-solver-prediction")]
    pub solver_prediction: Option<f64>,
    /// Allowed deviation of Monte Carlo means, in standard errors.
    #[arg(long = "tol-sigma")]
    pub sigma: Option<f64>,
}

impl ToleranceOverrides {
    fn over(self, lower: ToleranceOverrides) -> ToleranceOverrides {
        ToleranceOverrides {
            identity: self.identity.or(lower.identity),
            solver_residual: self.solver_residual.or(lower.solver_residual),
            solver_prediction: self.solver_prediction.or(lower.solver_prediction),
            sigma: self.sigma.or(lower.sigma),
        }
    }
}

/// Every run parameter. Each field may come from a flag, an angles file or a
/// JSON config file, in that order of precedence.
#[derive(Clone, Debug, Default, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Command the config file is meant for; must match the subcommand.
    #[arg(skip)]
    pub command: Option<String>,

    /// Unit for every angle given; required whenever angles are.
    #[arg(long, value_enum)]
    pub unit: Option<Unit>,

    /// Directions as "polar,azimuth;polar,azimuth;…".
    #[arg(long)]
    pub directions: Option<Directions>,

    /// Hardy parameter θ.
    #[arg(long, allow_negative_numbers = true)]
    pub theta: Option<f64>,

    /// GHZ-3 state parameter α.
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,

    /// GHZ-3 state phase δ.
    #[arg(long, allow_negative_numbers = true)]
    pub delta: Option<f64>,

    /// θ grid for solve-hardy, or the sweep range for scan-chsh.
    #[arg(long)]
    pub theta_grid: Option<Grid>,

    #[arg(long)]
    pub seed: Option<u64>,

    /// Monte Carlo trials.
    #[arg(long)]
    pub trials: Option<u64>,

    /// Random tuples per state for `compare` and `identities`.
    #[arg(long)]
    pub samples: Option<usize>,

    #[command(flatten)]
    #[serde(default)]
    pub tolerances: ToleranceOverrides,

    /// Cross table: a built-in id or a path to a JSON table.
    #[arg(long)]
    pub table: Option<String>,

    #[arg(long, value_enum)]
    pub state: Option<StateArg>,

    #[arg(long, value_enum)]
    pub experiment: Option<ExperimentArg>,

    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,

    /// Form of the B− point on direction b in the Hardy model.
    #[arg(long, value_enum)]
    pub variant: Option<VariantArg>,

    #[arg(long)]
    pub workers: Option<usize>,

    /// Weight of λ = +1.
    #[arg(long)]
    pub p_plus: Option<f64>,

    /// Let table-mode GHZ mismatches fail the run.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub strict_table: Option<bool>,

    /// Output path; defaults to $LRLAB_OUT_DIR/<command>.<ext>, else stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,

    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<RunConfig, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("invalid config {}: {e}", path.display())))
    }

    /// Fields set in `self` win over those in `lower`.
    pub fn over(self, lower: RunConfig) -> RunConfig {
        RunConfig {
            command: self.command.or(lower.command),
            unit: self.unit.or(lower.unit),
            directions: self.directions.or(lower.directions),
            theta: self.theta.or(lower.theta),
            alpha: self.alpha.or(lower.alpha),
            delta: self.delta.or(lower.delta),
            theta_grid: self.theta_grid.or(lower.theta_grid),
            seed: self.seed.or(lower.seed),
            trials: self.trials.or(lower.trials),
            samples: self.samples.or(lower.samples),
            tolerances: self.tolerances.over(lower.tolerances),
            table: self.table.or(lower.table),
            state: self.state.or(lower.state),
            experiment: self.experiment.or(lower.experiment),
            mode: self.mode.or(lower.mode),
            variant: self.variant.or(lower.variant),
            workers: self.workers.or(lower.workers),
            p_plus: self.p_plus.or(lower.p_plus),
            strict_table: self.strict_table.or(lower.strict_table),
            out: self.out.or(lower.out),
            format: self.format.or(lower.format),
        }
    }

    fn has_angles(&self) -> bool {
        self.directions.is_some()
            || self.theta.is_some()
            || self.alpha.is_some()
            || self.delta.is_some()
            || self.theta_grid.is_some()
    }

    /// Rejects angle parameters that arrive without a unit.
    pub fn check_unit(&self) -> Result<(), CliError> {
        if self.has_angles() && self.unit.is_none() {
            return Err(CliError::Usage("angles given without --unit deg|rad".into()));
        }
        Ok(())
    }

    fn unit(&self) -> Unit {
        self.unit.unwrap_or(Unit::Rad)
    }

    pub fn angle(&self, value: Option<f64>, name: &str) -> Result<f64, CliError> {
        value
            .map(|v| self.unit().to_rad(v))
            .ok_or_else(|| CliError::Usage(format!("--{name} is required")))
    }

    /// Exactly `count` unit directions.
    pub fn directions(&self, count: usize) -> Result<Vec<Vec3>, CliError> {
        let d = self
            .directions
            .as_ref()
            .ok_or_else(|| CliError::Usage(format!("--directions with {count} entries is required")))?;
        if d.0.len() != count {
            return Err(CliError::Usage(format!(
                "expected {count} directions, got {}",
                d.0.len()
            )));
        }
        Ok(d.0
            .iter()
            .map(|[t, p]| Vec3::spherical(self.unit().to_rad(*t), self.unit().to_rad(*p)))
            .collect())
    }

    pub fn grid_rad(&self) -> Option<Vec<f64>> {
        self.theta_grid
            .map(|g| g.values().into_iter().map(|x| self.unit().to_rad(x)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        let g: Grid = "0:90:19".parse().unwrap();
        let v = g.values();
        assert_eq!(v.len(), 19);
        assert_eq!((v[0], v[18], v[1]), (0.0, 90.0, 5.0));
        assert_eq!("1:2:1".parse::<Grid>().unwrap().values(), vec![1.0]);
        assert!("0:1:0".parse::<Grid>().is_err());
        assert!("0:inf:3".parse::<Grid>().is_err());
        assert!("0:1".parse::<Grid>().is_err());
    }

    #[test]
    fn directions_parsing() {
        let d: Directions = "0,0; 90,45".parse().unwrap();
        assert_eq!(d.0, vec![[0.0, 0.0], [90.0, 45.0]]);
        assert!("1,2,3".parse::<Directions>().is_err());
    }

    #[test]
    fn flags_override_file() {
        let file: RunConfig = serde_json::from_str(r#"{"seed": 3, "unit": "deg", "theta": 10}"#).unwrap();
        let cli = RunConfig {
            seed: Some(5),
            ..Default::default()
        };
        let c = cli.over(file);
        assert_eq!(c.seed, Some(5));
        assert_eq!(c.theta, Some(10.0));
        assert!((c.angle(c.theta, "theta").unwrap() - 10f64.to_radians()).abs() < 1e-15);
    }

    #[test]
    fn unit_is_mandatory_with_angles() {
        let c = RunConfig {
            theta: Some(0.3),
            ..Default::default()
        };
        assert!(c.check_unit().is_err());
        assert!(RunConfig::default().check_unit().is_ok());
    }

    #[test]
    fn unknown_config_keys_rejected() {
        assert!(serde_json::from_str::<RunConfig>(r#"{"sed": 3}"#).is_err());
    }
}
