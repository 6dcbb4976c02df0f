//! Cross-module checks: model evaluators against the quantum oracle, the
//! decomposition engine and the ensemble simulator.

use std::f64::consts::{FRAC_PI_4, PI, TAU};

use lrlab_core::ga3::{HiddenVariable, Vec3, bivector_beable};
use lrlab_core::lrmodel::{
    Axis, Beable, BMinusVariant, GhzMode, HardyAngles, Space, canonical_decomposition, chsh_model, ghz4_model,
    ghz4_table, hardy_joint, solve_hardy,
};
use lrlab_core::mcsim::{EnsembleConfig, Experiment, run_ensemble};
use lrlab_core::qmref::{HardyPair, HardySetting, StateKind, chsh_qm, hardy_amplitude, make_state};
use lrlab_core::sphere7::{CrossTable, beable7, embed_ghz4};
use lrlab_core::tolerances::TSIRELSON;
use lrlab_core::ga3::Sign;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn unit(rng: &mut ChaCha8Rng) -> Vec3 {
    Vec3::spherical(rng.random::<f64>() * PI, rng.random::<f64>() * TAU)
}

#[test]
fn chsh_model_agrees_with_singlet_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let state = make_state(&StateKind::Singlet).unwrap();
    for _ in 0..1000 {
        let [a, a2, b, b2] = [0; 4].map(|_| unit(&mut rng));
        let m = chsh_model(&a, &a2, &b, &b2).unwrap();
        let q = chsh_qm(&state, &a, &a2, &b, &b2).unwrap();
        assert!((m - q).abs() < 1e-12);
    }
}

#[test]
fn random_coplanar_chsh_stays_below_tsirelson() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let mut best = 0.0f64;
    for _ in 0..100_000 {
        let [a, a2, b, b2] = [0; 4].map(|_| Vec3::spherical(rng.random::<f64>() * TAU, 0.0));
        best = best.max(chsh_model(&a, &a2, &b, &b2).unwrap().abs());
    }
    assert!(best <= TSIRELSON + 1e-12);
    assert!(best > 2.7);
}

#[test]
fn ghz4_decomposition_matches_table_value() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let table = CrossTable::fano_cyclic();
    for _ in 0..200 {
        let n = [0; 4].map(|_| unit(&mut rng));
        let e = embed_ghz4(&n[0], &n[1], &n[2], &n[3]).unwrap();
        for l in HiddenVariable::BOTH {
            let bs: Vec<Beable> = e.iter().map(|v| Beable::S7(beable7(v, l).unwrap())).collect();
            let d = canonical_decomposition(&bs, Space::S7, l, &table).unwrap();
            assert!((d.f - ghz4_table(&n, &table).unwrap()).abs() < 1e-12);
        }
    }
}

#[test]
fn singlet_decomposition_has_sine_magnitude() {
    let table = CrossTable::fano_cyclic();
    let a = Vec3::spherical(0.2, 0.9);
    let b = Vec3::spherical(1.7, -0.4);
    let l = HiddenVariable::Left;
    let bs = [a, b].map(|n| Beable::S3(bivector_beable(&n, l).unwrap()));
    let d = canonical_decomposition(&bs, Space::S3, l, &table).unwrap();
    let theta = a.dot(&b).acos();
    assert!((d.f + theta.cos()).abs() < 1e-15);
    assert!((d.g - theta.sin()).abs() < 1e-15);
    // N points along −(a×b)/|a×b|
    let axis = a.cross(&b);
    let expect = axis.scale(-1.0 / axis.norm());
    let Axis::S3(n) = d.n else { panic!("S³ axis expected") };
    assert!(n.max_abs_diff(&expect) < 1e-14, "{n:?}");
}

#[test]
fn ghz4_ensemble_matches_table_mode() {
    let n = [0.4, 1.3, 2.2, 0.9].map(|t| Vec3::spherical(t, 2.0 * t));
    let table = CrossTable::fano_cyclic();
    let r = run_ensemble(&EnsembleConfig::new(Experiment::Ghz4 { n }, 1_000_000, 4)).unwrap();
    let model = ghz4_model(&n, GhzMode::Table, &table).unwrap().value;
    assert!((r.scalar_mean - model).abs() < 1e-12);
    for (m, s) in r.oriented_mean.iter().zip(&r.oriented_sigma) {
        assert!(m.abs() <= 5.0 * s);
    }
}

#[test]
fn ghz3_ensemble_scalar_is_seed_independent() {
    let n = [0.4, 1.3, 2.2].map(|t| Vec3::spherical(t, -t));
    let exp = Experiment::Ghz3 { n, alpha: 0.8, delta: 0.3 };
    let a = run_ensemble(&EnsembleConfig::new(exp.clone(), 10_000, 1)).unwrap();
    let b = run_ensemble(&EnsembleConfig::new(exp, 10_000, 2)).unwrap();
    assert_eq!(a.scalar_mean, b.scalar_mean);
    assert_ne!(a.oriented_mean, b.oriented_mean);
}

#[test]
fn hardy_model_at_symmetric_point() {
    let angles = solve_hardy(0.0, None).unwrap();
    assert!(angles.converged());
    for pair in HardyPair::all() {
        let model = hardy_joint(&angles, pair, BMinusVariant::Printed).unwrap().value;
        let oracle = hardy_amplitude(0.0, pair).unwrap();
        // only the vanishing amplitudes are forced by the constraint system
        if oracle == 0.0 {
            assert!(model.abs() < 1e-8, "{}", pair.label());
        }
    }
}

#[test]
fn hardy_continuation_reaches_same_residual_class() {
    let a0 = solve_hardy(0.0, None).unwrap();
    let a1 = solve_hardy(FRAC_PI_4, Some(&a0)).unwrap();
    let cold = solve_hardy(FRAC_PI_4, None).unwrap();
    assert!(a1.residual_norm <= cold.residual_norm + 1e-9);
    let again = HardyAngles::new(a1.theta, a1.angles());
    assert_eq!(again.residual_norm, a1.residual_norm);
}

#[test]
fn hardy_joint_oriented_part_is_audited() {
    let a = HardyAngles::new(0.5, [0.3, 0.6, 0.9, 1.2, 0.2, 0.4, 0.8]);
    let pair = HardyPair::new(HardySetting::new(true, Sign::Plus), HardySetting::new(false, Sign::Minus));
    let j = hardy_joint(&a, pair, BMinusVariant::Printed).unwrap();
    assert!((j.value * j.value + j.decomposition.g * j.decomposition.g - 1.0).abs() < 1e-12);
}
