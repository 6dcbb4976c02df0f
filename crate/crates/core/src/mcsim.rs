//! Seeded hidden-variable ensembles.
//!
//! λ for trial `i` is drawn from a ChaCha8 stream keyed by the seed, at word
//! position `2i`, so any trial can be regenerated on its own. Trials are summed
//! in fixed blocks and the block sums are combined pairwise in index order,
//! which makes a report bit-identical for every worker count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ga3::{HiddenVariable, Vec3, bivector_beable, handed_product};
use crate::lrmodel::grouped_oct_product;
use crate::sphere7::{CrossTable, beable7, embed_ghz3, embed_ghz4};

const BLOCK: u64 = 4096;
const SIGN_ZERO: f64 = 1e-12;

/// Weights of λ = +1 and λ = −1.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Distribution {
    pub plus: f64,
    pub minus: f64,
}

impl Default for Distribution {
    fn default() -> Self {
        Self::UNIFORM
    }
}

impl Distribution {
    pub const UNIFORM: Distribution = Distribution { plus: 0.5, minus: 0.5 };

    pub fn new(plus: f64, minus: f64) -> Result<Self> {
        let d = Self { plus, minus };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.plus >= 0.0 && self.minus >= 0.0) || (self.plus + self.minus - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "λ weights ({}, {}) must be nonnegative and sum to 1",
                self.plus, self.minus
            )));
        }
        Ok(())
    }
}

/// The measurement directions of one experiment.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Experiment {
    Singlet { a: Vec3, b: Vec3 },
    Chsh { a: Vec3, a_prime: Vec3, b: Vec3, b_prime: Vec3 },
    Ghz4 { n: [Vec3; 4] },
    Ghz3 { n: [Vec3; 3], alpha: f64, delta: f64 },
}

impl Experiment {
    /// Number of oriented components (3 on S³, 7 on S⁷).
    pub fn oriented_dim(&self) -> usize {
        match self {
            Experiment::Singlet { .. } | Experiment::Chsh { .. } => 3,
            Experiment::Ghz4 { .. } | Experiment::Ghz3 { .. } => 7,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnsembleConfig {
    pub trials: u64,
    pub seed: u64,
    #[serde(default)]
    pub distribution: Distribution,
    pub experiment: Experiment,
    /// Cross table for S⁷ experiments.
    #[serde(default = "default_table")]
    pub table: String,
}

fn default_table() -> String {
    "fano-cyclic".to_string()
}

impl EnsembleConfig {
    pub fn new(experiment: Experiment, trials: u64, seed: u64) -> Self {
        Self {
            trials,
            seed,
            distribution: Distribution::UNIFORM,
            experiment,
            table: default_table(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnsembleReport {
    pub trials: u64,
    pub seed: u64,
    pub config: EnsembleConfig,
    pub scalar_mean: f64,
    pub oriented_mean: Vec<f64>,
    /// Standard error of each oriented component.
    pub oriented_sigma: Vec<f64>,
    /// Mean of the ±1 extraction (sign of the scalar part, else of the
    /// largest oriented component). An interpretation; not part of the model.
    pub sign_channel_mean: f64,
    pub sign_channel_deviation: f64,
    pub lambda_plus_fraction: f64,
}

impl EnsembleReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// λ draws keyed by `(seed, trial index)`.
#[derive(Clone, Debug)]
pub struct LambdaStream {
    rng: ChaCha8Rng,
    plus: f64,
}

impl LambdaStream {
    pub fn new(seed: u64, distribution: Distribution) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            plus: distribution.plus,
        }
    }

    /// Positions the stream so the next draw is the one for `trial`.
    pub fn seek(&mut self, trial: u64) {
        self.rng.set_word_pos(2 * trial as u128);
    }
}

/// Draws the next λ.
pub fn sample_lambda(stream: &mut LambdaStream) -> HiddenVariable {
    let u: f64 = stream.rng.random();
    if u < stream.plus {
        HiddenVariable::Right
    } else {
        HiddenVariable::Left
    }
}

/// λ for a single trial, independent of any other draw.
pub fn lambda_at(seed: u64, distribution: Distribution, trial: u64) -> HiddenVariable {
    let mut s = LambdaStream::new(seed, distribution);
    s.seek(trial);
    sample_lambda(&mut s)
}

/// One trial: `[scalar, oriented…, sign, λ=+1 indicator]`.
type Sample = Vec<f64>;

fn sign_channel(scalar: f64, oriented: &[f64]) -> f64 {
    if scalar.abs() > SIGN_ZERO {
        return scalar.signum();
    }
    let largest = oriented
        .iter()
        .copied()
        .fold(0.0f64, |m, x| if x.abs() > m.abs() { x } else { m });
    if largest == 0.0 { 0.0 } else { largest.signum() }
}

struct Evaluator<'a> {
    experiment: &'a Experiment,
    table: CrossTable,
}

impl Evaluator<'_> {
    fn sample(&self, l: HiddenVariable) -> Result<Sample> {
        let terms: Vec<(f64, f64, Vec<f64>)> = match self.experiment {
            Experiment::Singlet { a, b } => vec![self.pair(1.0, a, b, l)?],
            Experiment::Chsh { a, a_prime, b, b_prime } => vec![
                self.pair(1.0, a, b, l)?,
                self.pair(1.0, a, b_prime, l)?,
                self.pair(1.0, a_prime, b, l)?,
                self.pair(-1.0, a_prime, b_prime, l)?,
            ],
            Experiment::Ghz4 { n } => {
                let e = embed_ghz4(&n[0], &n[1], &n[2], &n[3])?;
                vec![self.s7(&e, l)?]
            }
            Experiment::Ghz3 { n, alpha, delta } => {
                let e = embed_ghz3(&n[0], &n[1], &n[2], *alpha, *delta)?;
                vec![self.s7(&e, l)?]
            }
        };
        let dim = self.experiment.oriented_dim();
        let mut out = vec![0.0; dim + 3];
        for (coef, s, o) in terms {
            out[0] += coef * s;
            for k in 0..dim {
                out[1 + k] += coef * o[k];
            }
            out[dim + 1] += coef * sign_channel(s, &o);
        }
        out[dim + 2] = if l == HiddenVariable::Right { 1.0 } else { 0.0 };
        Ok(out)
    }

    fn pair(&self, coef: f64, a: &Vec3, b: &Vec3, l: HiddenVariable) -> Result<(f64, f64, Vec<f64>)> {
        let p = handed_product(&bivector_beable(a, l)?, &bivector_beable(b, l)?, l);
        Ok((coef, p.s, p.b.to_array().to_vec()))
    }

    fn s7(&self, n: &[crate::sphere7::Vec7], l: HiddenVariable) -> Result<(f64, f64, Vec<f64>)> {
        let pts = n.iter().map(|v| beable7(v, l)).collect::<Result<Vec<_>>>()?;
        let p = grouped_oct_product(&pts, l, &self.table)?;
        Ok((1.0, p.a, p.x.0.to_vec()))
    }
}

/// Per-block sums of `x − ref` and `(x − ref)²`, component-wise.
#[derive(Clone, Debug)]
struct Sums {
    s1: Vec<f64>,
    s2: Vec<f64>,
}

impl Sums {
    fn combine(a: &Sums, b: &Sums) -> Sums {
        Sums {
            s1: a.s1.iter().zip(&b.s1).map(|(x, y)| x + y).collect(),
            s2: a.s2.iter().zip(&b.s2).map(|(x, y)| x + y).collect(),
        }
    }
}

fn pairwise(items: &[Sums]) -> Sums {
    match items {
        [one] => one.clone(),
        _ => {
            let mid = items.len() / 2;
            Sums::combine(&pairwise(&items[..mid]), &pairwise(&items[mid..]))
        }
    }
}

/// Runs the ensemble on the global rayon pool.
pub fn run_ensemble(config: &EnsembleConfig) -> Result<EnsembleReport> {
    run(config)
}

/// Runs the ensemble on a dedicated pool of `workers` threads.
pub fn run_ensemble_with_workers(config: &EnsembleConfig, workers: usize) -> Result<EnsembleReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    pool.install(|| run(config))
}

fn run(config: &EnsembleConfig) -> Result<EnsembleReport> {
    if config.trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    config.distribution.validate()?;
    let table = CrossTable::builtin(&config.table)
        .ok_or_else(|| Error::InvalidCrossTable(format!("unknown table id {:?}", config.table)))?;
    let eval = Evaluator {
        experiment: &config.experiment,
        table,
    };

    // Every trial is shifted by trial 0 so λ-independent components sum to
    // exactly zero and their mean is reproduced exactly.
    let reference = eval.sample(lambda_at(config.seed, config.distribution, 0))?;
    let width = reference.len();
    let n_blocks = config.trials.div_ceil(BLOCK);
    let blocks = (0..n_blocks)
        .into_par_iter()
        .map(|blk| {
            let start = blk * BLOCK;
            let end = (start + BLOCK).min(config.trials);
            let mut stream = LambdaStream::new(config.seed, config.distribution);
            stream.seek(start);
            let mut sums = Sums {
                s1: vec![0.0; width],
                s2: vec![0.0; width],
            };
            for _ in start..end {
                let x = eval.sample(sample_lambda(&mut stream))?;
                for k in 0..width {
                    let d = x[k] - reference[k];
                    sums.s1[k] += d;
                    sums.s2[k] += d * d;
                }
            }
            Ok(sums)
        })
        .collect::<Result<Vec<Sums>>>()?;
    let total = pairwise(&blocks);

    let n = config.trials as f64;
    let mean: Vec<f64> = (0..width).map(|k| reference[k] + total.s1[k] / n).collect();
    let sigma: Vec<f64> = (0..width)
        .map(|k| {
            let var = (total.s2[k] - total.s1[k] * total.s1[k] / n).max(0.0) / (n - 1.0).max(1.0);
            (var / n).sqrt()
        })
        .collect();
    let dim = config.experiment.oriented_dim();
    Ok(EnsembleReport {
        trials: config.trials,
        seed: config.seed,
        config: config.clone(),
        scalar_mean: mean[0],
        oriented_mean: mean[1..=dim].to_vec(),
        oriented_sigma: sigma[1..=dim].to_vec(),
        sign_channel_mean: mean[dim + 1],
        sign_channel_deviation: mean[dim + 1] - mean[0],
        lambda_plus_fraction: mean[dim + 2],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lrmodel::singlet_correlation;
    use std::f64::consts::PI;

    fn singlet(theta: f64) -> Experiment {
        Experiment::Singlet {
            a: Vec3::Z,
            b: Vec3::spherical(theta, 0.4),
        }
    }

    #[test]
    fn uniform_lambda_is_balanced() {
        let mut s = LambdaStream::new(42, Distribution::UNIFORM);
        let n = 1_000_000;
        let sum: f64 = (0..n).map(|_| sample_lambda(&mut s).sign()).sum();
        assert!((sum / n as f64).abs() < 5e-3);
    }

    #[test]
    fn degenerate_distribution() {
        let d = Distribution::new(1.0, 0.0).unwrap();
        let mut s = LambdaStream::new(3, d);
        assert!((0..1000).all(|_| sample_lambda(&mut s) == HiddenVariable::Right));
        assert!(Distribution::new(0.7, 0.7).is_err());
        assert!(Distribution::new(-0.1, 1.1).is_err());
    }

    #[test]
    fn lambda_is_keyed_by_index() {
        let mut s = LambdaStream::new(9, Distribution::UNIFORM);
        let seq: Vec<_> = (0..100).map(|_| sample_lambda(&mut s)).collect();
        for (i, l) in seq.iter().enumerate() {
            assert_eq!(*l, lambda_at(9, Distribution::UNIFORM, i as u64));
        }
    }

    #[test]
    fn singlet_scalar_mean_is_exact() {
        let theta = 2.0 * PI / 3.0;
        let exp = singlet(theta);
        let Experiment::Singlet { a, b } = &exp else { unreachable!() };
        let exact = singlet_correlation(a, b).unwrap();
        for trials in [1, 2, 7, 5000] {
            let r = run_ensemble(&EnsembleConfig::new(exp.clone(), trials, 11)).unwrap();
            assert_eq!(r.scalar_mean, exact);
        }
        assert!((exact - 0.5).abs() < 1e-15);
    }

    #[test]
    fn zero_trials_rejected() {
        assert!(run_ensemble(&EnsembleConfig::new(singlet(1.0), 0, 1)).is_err());
    }

    #[test]
    fn unknown_table_rejected() {
        let mut c = EnsembleConfig::new(Experiment::Ghz4 { n: [Vec3::Z; 4] }, 10, 1);
        c.table = "nope".into();
        assert!(matches!(run_ensemble(&c), Err(Error::InvalidCrossTable(_))));
    }

    #[test]
    fn worker_count_does_not_change_report() {
        let c = EnsembleConfig::new(singlet(1.1), 50_000, 5);
        let one = run_ensemble_with_workers(&c, 1).unwrap();
        let four = run_ensemble_with_workers(&c, 4).unwrap();
        assert_eq!(one, four);
        assert_eq!(one.to_json().unwrap(), four.to_json().unwrap());
    }

    #[test]
    fn oriented_part_averages_out() {
        let c = EnsembleConfig::new(singlet(1.1), 200_000, 8);
        let r = run_ensemble(&c).unwrap();
        for (m, s) in r.oriented_mean.iter().zip(&r.oriented_sigma) {
            assert!(m.abs() <= 5.0 * s, "{m} vs {s}");
        }
        assert!((r.lambda_plus_fraction - 0.5).abs() < 0.01);
    }

    #[test]
    fn sign_channel_rule() {
        assert_eq!(sign_channel(-0.3, &[1.0, 0.0, 0.0]), -1.0);
        assert_eq!(sign_channel(0.0, &[0.1, -0.5, 0.2]), -1.0);
        assert_eq!(sign_channel(0.0, &[0.0; 3]), 0.0);
    }

    #[test]
    fn chsh_scalar_mean() {
        let [a, a_prime, b, b_prime] = [0.0f64, 90.0, 225.0, 135.0].map(|d| Vec3::spherical(d.to_radians(), 0.0));
        let r = run_ensemble(&EnsembleConfig::new(Experiment::Chsh { a, a_prime, b, b_prime }, 1000, 2)).unwrap();
        assert!((r.scalar_mean - crate::tolerances::TSIRELSON).abs() < 1e-12);
    }
}
