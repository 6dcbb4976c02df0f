use std::f64::consts::PI;
use std::path::Path;

use clap::ValueEnum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use lrlab_core::ga3::{bivector_beable, handed_product, product_chain};
use lrlab_core::lrmodel::{
    BMinusVariant, ComparisonReport, GhzMode, HardyScan, Verdict, chsh_model, chsh_model_bound, ghz3_model,
    ghz4_model, scan_hardy, singlet_correlation,
};
use lrlab_core::mcsim::{Distribution, EnsembleConfig, EnsembleReport, Experiment, run_ensemble, run_ensemble_with_workers};
use lrlab_core::qmref::{
    HardyPair, SpinObservable, StateKind, chsh_qm, correlation2, hardy_amplitude, make_state, tensor_expectation,
};
use lrlab_core::sphere7::{oct_product, z_deviation};
use lrlab_core::{CrossTable, HiddenVariable, Multivector3, SevenPoint, Vec3, Vec7, tolerances};

use crate::config::{ExperimentArg, RunConfig, StateArg, ToleranceOverrides};
use crate::output::Artifact;
use crate::{CliError, ModelKind};

const DEFAULT_SAMPLES: usize = 1000;
const DEFAULT_TRIALS: u64 = 1_000_000;
const COMPARE_TRIALS: u64 = 20_000;
const HARDY_THETAS: [f64; 5] = [0.0, PI / 6.0, PI / 4.0, PI / 3.0, PI / 2.0];

pub fn dispatch(name: &str, kind: Option<ModelKind>, cfg: &RunConfig) -> Result<Artifact, CliError> {
    match name {
        "identities" => identities(cfg),
        "qm" => qm(cfg),
        "model" => model(kind.expect("model kind"), cfg),
        "solve-hardy" => solve_hardy(cfg),
        "scan-chsh" => scan_chsh(cfg),
        "mc" => mc(cfg),
        "compare" => compare(cfg),
        _ => unreachable!("unknown command {name}"),
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value).map_err(lrlab_core::Error::from)?;
    s.push('\n');
    Ok(s)
}

fn to_csv<R: Serialize>(headers: &[&str], rows: &[R]) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    let csv_err = |e: csv::Error| lrlab_core::Error::from(e);
    w.write_record(headers).map_err(csv_err)?;
    for r in rows {
        w.serialize(r).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn report_artifact(name: String, report: &ComparisonReport) -> Result<Artifact, CliError> {
    Ok(Artifact {
        name,
        json: to_json(report)?,
        csv: Some(report.to_csv()?),
        passed: report.passed(),
    })
}

pub fn resolve_table(id: Option<&str>) -> Result<CrossTable, CliError> {
    let id = id.unwrap_or("fano-cyclic");
    if let Some(t) = CrossTable::builtin(id) {
        return Ok(t);
    }
    let path = Path::new(id);
    if !path.is_file() {
        return Err(CliError::Usage(format!("{id:?} is neither a built-in table nor a file")));
    }
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {id}: {e}")))?;
    CrossTable::from_json(&text).map_err(|e| CliError::Usage(e.to_string()))
}

/// Replaces the default tolerance of each row class with its override and
/// recomputes the verdicts.
pub fn apply_tolerances(report: &mut ComparisonReport, tol: &ToleranceOverrides) {
    for row in &mut report.rows {
        let over = if row.tolerance == tolerances::IDENTITY || row.tolerance == tolerances::BIVECTOR_IDENTITY {
            tol.identity
        } else if row.tolerance == tolerances::SOLVER_RESIDUAL {
            tol.solver_residual
        } else if row.tolerance == tolerances::SOLVER_PREDICTION {
            tol.solver_prediction
        } else if row.tolerance == tolerances::SIGMA_BOUND {
            tol.sigma
        } else {
            None
        };
        if let Some(t) = over {
            row.tolerance = t;
            row.verdict = Verdict::from_residual(row.residual, t);
        }
    }
}

fn random_unit(rng: &mut ChaCha8Rng) -> Vec3 {
    let theta = (1.0 - 2.0 * rng.random::<f64>()).acos();
    Vec3::spherical(theta, rng.random_range(-PI..PI))
}

fn random_vec7(rng: &mut ChaCha8Rng) -> Vec7 {
    Vec7(std::array::from_fn(|_| rng.random_range(-1.0..1.0)))
}

fn variant(cfg: &RunConfig) -> BMinusVariant {
    cfg.variant.map_or(BMinusVariant::Printed, Into::into)
}

fn mode(cfg: &RunConfig) -> GhzMode {
    cfg.mode.map_or(GhzMode::PaperZ, Into::into)
}

fn identities(cfg: &RunConfig) -> Result<Artifact, CliError> {
    let samples = cfg.samples.unwrap_or(DEFAULT_SAMPLES);
    let seed = cfg.seed.unwrap_or(0);
    let table = resolve_table(cfg.table.as_deref())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let (mut two, mut triple, mut quad, mut assoc) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for _ in 0..samples {
        let [a, b, c, d] = [0; 4].map(|_| random_unit(&mut rng));
        for l in HiddenVariable::BOTH {
            let bv = |n: &Vec3| bivector_beable(n, l);
            let p = handed_product(&bv(&a)?, &bv(&b)?, l);
            two = two.max(p.max_abs_diff(&Multivector3::even(-a.dot(&b), a.cross(&b).scale(-l.sign()))));

            let t = product_chain(&[bv(&a)?, bv(&b)?, bv(&c)?], l)?;
            let expect = Multivector3::even(
                a.dot(&b.cross(&c)),
                (a.cross(&b.cross(&c)) - a.scale(b.dot(&c))).scale(l.sign()),
            );
            triple = triple.max(t.max_abs_diff(&expect));

            let q = product_chain(&[bv(&a)?, bv(&b)?, bv(&c)?, bv(&d)?], l)?;
            let (ab, cd) = (a.cross(&b), c.cross(&d));
            let expect = Multivector3::even(
                a.dot(&b) * c.dot(&d) - ab.dot(&cd),
                (cd.scale(a.dot(&b)) + ab.scale(c.dot(&d)) - ab.cross(&cd)).scale(l.sign()),
            );
            quad = quad.max(q.max_abs_diff(&expect));
        }
        let [x, y, z] =
            [0; 3].map(|_| Multivector3::from_components(std::array::from_fn(|_| rng.random_range(-1.0..1.0))));
        assoc = assoc.max(((x * y) * z).max_abs_diff(&(x * (y * z))));
    }

    let (mut anti, mut orth, mut norm, mut mixed, mut octnorm) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let (mut z_orth, mut z_other) = (0.0f64, 0.0f64);
    for _ in 0..samples {
        let [x, y, w] = [0; 3].map(|_| random_vec7(&mut rng));
        let xy = table.cross(&x, &y);
        anti = anti.max((xy + table.cross(&y, &x)).norm());
        orth = orth.max(x.dot(&xy).abs()).max(y.dot(&xy).abs());
        norm = norm.max((xy.norm_sq() - (x.norm_sq() * y.norm_sq() - x.dot(&y).powi(2))).abs());
        mixed = mixed.max((xy.dot(&w) - x.dot(&table.cross(&y, &w))).abs());
        let (p, q) = (SevenPoint::new(rng.random_range(-1.0..1.0), x), SevenPoint::new(rng.random_range(-1.0..1.0), y));
        octnorm = octnorm.max((oct_product(&p, &q, &table).norm() - p.norm() * q.norm()).abs());

        let [n2, n3, n4] = [0; 3].map(|_| {
            let v = random_vec7(&mut rng);
            v.scale(1.0 / v.norm())
        });
        let z = z_deviation(&n2, &n3, &n4, &table);
        z_orth = z_orth
            .max(z.dot(&n2).abs())
            .max(z.dot(&n3).abs())
            .max(z.dot(&n4).abs())
            .max(z.dot(&table.cross(&n3, &n4)).abs());
        z_other = z_other
            .max(z.dot(&table.cross(&n2, &n3)).abs())
            .max(z.dot(&table.cross(&n4, &n2)).abs());
    }
    // basis triples spanning a quaternionic subalgebra have zero jacobiator, so take the largest
    let mut jac = 0.0f64;
    for i in 1..=7 {
        for j in i + 1..=7 {
            for k in j + 1..=7 {
                let (x, y, z) = (Vec7::basis(i), Vec7::basis(j), Vec7::basis(k));
                let sum = table.cross(&x, &table.cross(&y, &z))
                    + table.cross(&y, &table.cross(&z, &x))
                    + table.cross(&z, &table.cross(&x, &y));
                jac = jac.max(sum.norm());
            }
        }
    }

    let mut report = ComparisonReport::new("identities", Some(table.id().to_string()), Some(seed));
    report.add("ga3 two-beable product", two, 0.0, tolerances::BIVECTOR_IDENTITY, true);
    report.add("ga3 triple product", triple, 0.0, tolerances::IDENTITY, true);
    report.add("ga3 quadruple product", quad, 0.0, tolerances::IDENTITY, true);
    report.add("ga3 associativity", assoc, 0.0, tolerances::IDENTITY, true);
    report.add("s7 antisymmetry", anti, 0.0, tolerances::IDENTITY, true);
    report.add("s7 orthogonality", orth, 0.0, tolerances::IDENTITY, true);
    report.add("s7 norm identity", norm, 0.0, tolerances::IDENTITY, true);
    report.add("s7 mixed product", mixed, 0.0, tolerances::IDENTITY, true);
    report.add("s7 point norm multiplicative", octnorm, 0.0, tolerances::IDENTITY, true);
    report.add("s7 Z orthogonal to N2, N3, N4, N3×N4", z_orth, 0.0, tolerances::IDENTITY, true);
    report.add("s7 Z against N2×N3, N4×N2", z_other, 0.0, tolerances::IDENTITY, false);
    report.add("s7 jacobiator shortfall below 0.1", (0.1 - jac).max(0.0), 0.0, 0.0, true);
    apply_tolerances(&mut report, &cfg.tolerances);
    report_artifact("identities".into(), &report)
}

#[derive(Serialize)]
struct Value {
    label: String,
    value: f64,
}

#[derive(Serialize)]
struct Values {
    state: StateKind,
    values: Vec<Value>,
}

fn state_kind(cfg: &RunConfig, state: StateArg) -> Result<StateKind, CliError> {
    Ok(match state {
        StateArg::Singlet => StateKind::Singlet,
        StateArg::Hardy => StateKind::Hardy {
            theta: cfg.angle(cfg.theta, "theta")?,
        },
        StateArg::Ghz4 => StateKind::Ghz4,
        StateArg::Ghz3 => StateKind::Ghz3 {
            alpha: cfg.angle(cfg.alpha, "alpha")?,
            delta: cfg.angle(cfg.delta, "delta")?,
        },
        StateArg::All => return Err(CliError::Usage("qm needs a single --state".into())),
    })
}

fn qm(cfg: &RunConfig) -> Result<Artifact, CliError> {
    let state = cfg.state.ok_or_else(|| CliError::Usage("--state is required".into()))?;
    let kind = state_kind(cfg, state)?;
    let psi = make_state(&kind)?;
    let values = match &kind {
        StateKind::Hardy { theta } => HardyPair::all()
            .into_iter()
            .map(|pair| {
                Ok(Value {
                    label: pair.label(),
                    value: hardy_amplitude(*theta, pair)?,
                })
            })
            .collect::<Result<Vec<_>, CliError>>()?,
        _ => {
            let n = cfg.directions(psi.n_qubits())?;
            vec![Value {
                label: "expectation".into(),
                value: tensor_expectation(&psi, &SpinObservable::new(n)?)?,
            }]
        }
    };
    let csv = to_csv(&["label", "value"], &values)?;
    Ok(Artifact {
        name: "qm".into(),
        json: to_json(&Values { state: kind, values })?,
        csv: Some(csv),
        passed: true,
    })
}

fn arr<const N: usize>(v: Vec<Vec3>) -> [Vec3; N] {
    v.try_into().expect("direction count checked")
}

fn model(kind: ModelKind, cfg: &RunConfig) -> Result<Artifact, CliError> {
    let table = resolve_table(cfg.table.as_deref())?;
    let mut report = match kind {
        ModelKind::Singlet => {
            let [a, b] = arr(cfg.directions(2)?);
            let mut r = ComparisonReport::new("singlet", None, None);
            let qm = correlation2(&make_state(&StateKind::Singlet)?, &a, &b)?;
            r.add("singlet E(a,b)", singlet_correlation(&a, &b)?, qm, tolerances::IDENTITY, true);
            r
        }
        ModelKind::Chsh => {
            let [a, a2, b, b2] = arr(cfg.directions(4)?);
            let mut r = ComparisonReport::new("chsh", None, None);
            let model = chsh_model(&a, &a2, &b, &b2)?;
            let qm = chsh_qm(&make_state(&StateKind::Singlet)?, &a, &a2, &b, &b2)?;
            r.add("chsh", model, qm, tolerances::IDENTITY, true);
            r
        }
        ModelKind::Hardy => {
            let theta = cfg.angle(cfg.theta, "theta")?;
            scan_hardy(&[theta], variant(cfg))?.to_report()
        }
        ModelKind::Ghz4 => {
            let n = arr(cfg.directions(4)?);
            ghz4_model(&n, mode(cfg), &table)?.report
        }
        ModelKind::Ghz3 => {
            let n = arr(cfg.directions(3)?);
            let (alpha, delta) = (cfg.angle(cfg.alpha, "alpha")?, cfg.angle(cfg.delta, "delta")?);
            ghz3_model(&n, alpha, delta, mode(cfg), &table)?.report
        }
    };
    if cfg.strict_table == Some(true) {
        report.gate_all();
    }
    apply_tolerances(&mut report, &cfg.tolerances);
    let name = format!("model-{}", kind.to_possible_value().expect("named").get_name());
    report_artifact(name, &report)
}

#[derive(Serialize)]
struct HardyCsvRow {
    theta: f64,
    residual_norm: f64,
    converged: bool,
    failing_equations: String,
}

fn solve_hardy(cfg: &RunConfig) -> Result<Artifact, CliError> {
    let grid = cfg.theta_grid.ok_or_else(|| CliError::Usage("--theta-grid start:stop:count is required".into()))?;
    let thetas = cfg.grid_rad().expect("grid present");
    if let Some(t) = thetas.iter().find(|t| !(0.0..=PI / 2.0 + 1e-12).contains(*t)) {
        return Err(CliError::Usage(format!("θ = {t} rad outside [0, π/2]")));
    }
    let scan: HardyScan = scan_hardy(&thetas, variant(cfg))?;
    let mut report = scan.to_report();
    apply_tolerances(&mut report, &cfg.tolerances);
    let rows: Vec<HardyCsvRow> = scan
        .points
        .iter()
        .zip(grid.values())
        .map(|(p, theta)| HardyCsvRow {
            theta,
            residual_norm: p.angles.residual_norm,
            converged: p.converged,
            failing_equations: p.failing.join(";"),
        })
        .collect();
    Ok(Artifact {
        name: "solve-hardy".into(),
        json: to_json(&scan)?,
        csv: Some(to_csv(&["theta", "residual_norm", "converged", "failing_equations"], &rows)?),
        passed: report.passed(),
    })
}

#[derive(Serialize)]
struct ChshRow {
    phi: f64,
    model: f64,
    qm: f64,
    bound: f64,
}

fn scan_chsh(cfg: &RunConfig) -> Result<Artifact, CliError> {
    let (phis, rad): (Vec<f64>, Vec<f64>) = match cfg.theta_grid {
        Some(g) => (g.values(), cfg.grid_rad().expect("grid present")),
        None => {
            let v: Vec<f64> = (0..=360).map(|i| (i as f64).to_radians()).collect();
            (v.clone(), v)
        }
    };
    let psi = make_state(&StateKind::Singlet)?;
    let tol = cfg.tolerances.identity.unwrap_or(tolerances::IDENTITY);
    let mut passed = true;
    let mut rows = Vec::with_capacity(phis.len());
    for (phi, r) in phis.into_iter().zip(rad) {
        let d = |k: f64| Vec3::spherical(k * r, 0.0);
        let (a, b, a2, b2) = (d(0.0), d(1.0), d(2.0), d(-1.0));
        let model = chsh_model(&a, &a2, &b, &b2)?;
        let qm = chsh_qm(&psi, &a, &a2, &b, &b2)?;
        passed &= (model - qm).abs() <= tol;
        rows.push(ChshRow {
            phi,
            model,
            qm,
            bound: chsh_model_bound(&a, &a2, &b, &b2)?,
        });
    }
    Ok(Artifact {
        name: "scan-chsh".into(),
        json: to_json(&rows)?,
        csv: Some(to_csv(&["phi", "model", "qm", "bound"], &rows)?),
        passed,
    })
}

fn experiment(cfg: &RunConfig) -> Result<Experiment, CliError> {
    Ok(match cfg.experiment.unwrap_or(ExperimentArg::Singlet) {
        ExperimentArg::Singlet => {
            let [a, b] = arr(cfg.directions(2)?);
            Experiment::Singlet { a, b }
        }
        ExperimentArg::Chsh => {
            let [a, a_prime, b, b_prime] = arr(cfg.directions(4)?);
            Experiment::Chsh { a, a_prime, b, b_prime }
        }
        ExperimentArg::Ghz4 => Experiment::Ghz4 {
            n: arr(cfg.directions(4)?),
        },
        ExperimentArg::Ghz3 => Experiment::Ghz3 {
            n: arr(cfg.directions(3)?),
            alpha: cfg.angle(cfg.alpha, "alpha")?,
            delta: cfg.angle(cfg.delta, "delta")?,
        },
    })
}

fn ensemble_config(cfg: &RunConfig, experiment: Experiment, trials: u64, seed: u64) -> Result<EnsembleConfig, CliError> {
    let mut config = EnsembleConfig::new(experiment, trials, seed);
    let p = cfg.p_plus.unwrap_or(0.5);
    config.distribution = Distribution::new(p, 1.0 - p).map_err(|e| CliError::Usage(e.to_string()))?;
    if let Some(t) = &cfg.table {
        if CrossTable::builtin(t).is_none() {
            return Err(CliError::Usage(format!("mc takes a built-in table id, not {t:?}")));
        }
        config.table = t.clone();
    }
    Ok(config)
}

fn ensemble(cfg: &RunConfig, config: &EnsembleConfig) -> Result<EnsembleReport, CliError> {
    Ok(match cfg.workers {
        Some(0) => return Err(CliError::Usage("--workers must be positive".into())),
        Some(w) => run_ensemble_with_workers(config, w)?,
        None => run_ensemble(config)?,
    })
}

fn mc(cfg: &RunConfig) -> Result<Artifact, CliError> {
    let trials = cfg.trials.unwrap_or(DEFAULT_TRIALS);
    if trials == 0 {
        return Err(CliError::Usage("--trials must be positive".into()));
    }
    let config = ensemble_config(cfg, experiment(cfg)?, trials, cfg.seed.unwrap_or(0))?;
    let report = ensemble(cfg, &config)?;
    // the oriented parts flip with λ, so under equal weights they average out
    let sigma = cfg.tolerances.sigma.unwrap_or(tolerances::SIGMA_BOUND);
    let passed = config.distribution != Distribution::UNIFORM || max_z_score(&report) <= sigma;
    let mut rows = vec![
        Value { label: "scalar_mean".into(), value: report.scalar_mean },
        Value { label: "sign_channel_mean".into(), value: report.sign_channel_mean },
        Value { label: "sign_channel_deviation".into(), value: report.sign_channel_deviation },
        Value { label: "lambda_plus_fraction".into(), value: report.lambda_plus_fraction },
    ];
    for (i, (m, s)) in report.oriented_mean.iter().zip(&report.oriented_sigma).enumerate() {
        rows.push(Value { label: format!("oriented_mean[{i}]"), value: *m });
        rows.push(Value { label: format!("oriented_sigma[{i}]"), value: *s });
    }
    Ok(Artifact {
        name: "mc".into(),
        json: to_json(&report)?,
        csv: Some(to_csv(&["label", "value"], &rows)?),
        passed,
    })
}

/// Largest `|mean|/σ` over the oriented components; a component with zero
/// spread counts only if its mean is nonzero.
fn max_z_score(r: &EnsembleReport) -> f64 {
    r.oriented_mean
        .iter()
        .zip(&r.oriented_sigma)
        .map(|(m, s)| match (*m == 0.0, *s == 0.0) {
            (true, _) => 0.0,
            (false, true) => f64::INFINITY,
            (false, false) => (m / s).abs(),
        })
        .fold(0.0, f64::max)
}

fn ensemble_scalar_row(
    report: &mut ComparisonReport,
    cfg: &RunConfig,
    label: &str,
    experiment: Experiment,
    oracle: f64,
    seed: u64,
) -> Result<f64, CliError> {
    let config = ensemble_config(cfg, experiment, COMPARE_TRIALS, seed)?;
    let r = ensemble(cfg, &config)?;
    report.add(format!("{label} ensemble scalar"), r.scalar_mean, oracle, tolerances::IDENTITY, true);
    Ok(r.scalar_mean)
}

fn compare(cfg: &RunConfig) -> Result<Artifact, CliError> {
    let state = cfg.state.unwrap_or(StateArg::All);
    let samples = cfg.samples.unwrap_or(DEFAULT_SAMPLES);
    let seed = cfg.seed.unwrap_or(0);
    let table = resolve_table(cfg.table.as_deref())?;
    let strict = cfg.strict_table == Some(true);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let wants = |s: StateArg| state == StateArg::All || state == s;

    let mut report = ComparisonReport::new(mode(cfg).as_str(), Some(table.id().to_string()), Some(seed));

    if wants(StateArg::Singlet) {
        let psi = make_state(&StateKind::Singlet)?;
        let mut first = None;
        for i in 0..samples {
            let [a, a2, b, b2] = [0; 4].map(|_| random_unit(&mut rng));
            first.get_or_insert((a, b));
            report.add(
                format!("singlet #{i} E(a,b)"),
                singlet_correlation(&a, &b)?,
                correlation2(&psi, &a, &b)?,
                tolerances::IDENTITY,
                true,
            );
            report.add(
                format!("singlet #{i} chsh"),
                chsh_model(&a, &a2, &b, &b2)?,
                chsh_qm(&psi, &a, &a2, &b, &b2)?,
                tolerances::IDENTITY,
                true,
            );
        }
        if let Some((a, b)) = first {
            let oracle = correlation2(&psi, &a, &b)?;
            ensemble_scalar_row(&mut report, cfg, "singlet", Experiment::Singlet { a, b }, oracle, seed)?;
        }
    }

    if wants(StateArg::Hardy) {
        report.extend(scan_hardy(&HARDY_THETAS, variant(cfg))?.to_report());
    }

    if wants(StateArg::Ghz4) {
        let psi = make_state(&StateKind::Ghz4)?;
        let mut first = None;
        for i in 0..samples {
            let n = [0; 4].map(|_| random_unit(&mut rng));
            first.get_or_insert(n);
            let mut r = ghz4_model(&n, mode(cfg), &table)?.report;
            r.prefix_labels(&format!("ghz4 #{i}"));
            report.extend(r);
        }
        if let Some(n) = first {
            let oracle = tensor_expectation(&psi, &SpinObservable::new(n.to_vec())?)?;
            let table_value = lrlab_core::lrmodel::ghz4_table(&n, &table)?;
            // the ensemble multiplies with the table, so its scalar is the table-mode value
            let scalar = ensemble_scalar_row(&mut report, cfg, "ghz4", Experiment::Ghz4 { n }, table_value, seed)?;
            report.add("ghz4 ensemble scalar vs qm", scalar, oracle, tolerances::IDENTITY, false);
        }
    }

    if wants(StateArg::Ghz3) {
        for i in 0..samples {
            let n = [0; 3].map(|_| random_unit(&mut rng));
            let alpha = rng.random_range(0.0..PI);
            let delta = rng.random_range(-PI..PI);
            let mut r = ghz3_model(&n, alpha, delta, mode(cfg), &table)?.report;
            r.prefix_labels(&format!("ghz3 #{i}"));
            report.extend(r);
        }
    }

    if strict {
        report.gate_all();
    }
    apply_tolerances(&mut report, &cfg.tolerances);
    report_artifact("compare".into(), &report)
}
