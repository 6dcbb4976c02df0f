//! Local-realistic model evaluators.

mod decomposition;
mod ghz;
mod hardy;
mod report;

pub use decomposition::{
    Axis, Beable, DecompositionResult, Space, canonical_decomposition, decompose_s3, decompose_s7,
    grouped_oct_product, product_point,
};
pub use ghz::{GhzEvaluation, GhzMode, ghz3_model, ghz3_paper_z, ghz3_table, ghz4_model, ghz4_paper_z, ghz4_table};
pub use hardy::{
    BMinusVariant, HardyAngles, HardyJoint, HardyScan, HardyScanPoint, HardySite, N_RESIDUALS,
    RESIDUAL_LABELS, hardy_joint, hardy_point, headline_pairs, hardy_residuals, hardy_residuals_printed, scan_hardy, solve_hardy,
};
pub use report::{CSV_HEADERS, ComparisonReport, ReportMetadata, ReportRow, Verdict};

use crate::error::Result;
use crate::ga3::{HiddenVariable, Vec3, bivector_beable, handed_product};

/// `E(a,b)`: the scalar part of `(μ·a)(μ·b)`, which does not depend on λ.
pub fn singlet_correlation(a: &Vec3, b: &Vec3) -> Result<f64> {
    let l = HiddenVariable::Right;
    Ok(handed_product(&bivector_beable(a, l)?, &bivector_beable(b, l)?, l).s)
}

/// `E(a,b) + E(a,b′) + E(a′,b) − E(a′,b′)` under the model.
pub fn chsh_model(a: &Vec3, a2: &Vec3, b: &Vec3, b2: &Vec3) -> Result<f64> {
    Ok(singlet_correlation(a, b)? + singlet_correlation(a, b2)? + singlet_correlation(a2, b)?
        - singlet_correlation(a2, b2)?)
}

/// `2√(1 − (a×a′)·(b′×b))`, clamped at zero against rounding.
pub fn chsh_model_bound(a: &Vec3, a2: &Vec3, b: &Vec3, b2: &Vec3) -> Result<f64> {
    for n in [a, a2, b, b2] {
        n.ensure_unit()?;
    }
    let k = a.cross(a2).dot(&b2.cross(b));
    Ok(2.0 * (1.0 - k).max(0.0).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tolerances::TSIRELSON;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn coplanar(deg: [f64; 4]) -> [Vec3; 4] {
        deg.map(|d| Vec3::spherical(d.to_radians(), 0.0))
    }

    #[test]
    fn singlet_examples() {
        let a = Vec3::spherical(0.4, 1.2);
        assert_eq!(singlet_correlation(&a, &a).unwrap(), -a.dot(&a));
        assert!((singlet_correlation(&a, &a).unwrap() + 1.0).abs() < 1e-15);
        assert_eq!(singlet_correlation(&Vec3::X, &Vec3::Y).unwrap(), 0.0);
        let b = Vec3::spherical(PI / 3.0, 0.0);
        assert!((singlet_correlation(&Vec3::Z, &b).unwrap() + 0.5).abs() < 1e-15);
        assert!(singlet_correlation(&Vec3::new(2.0, 0.0, 0.0), &b).is_err());
    }

    #[test]
    fn chsh_optimal_quadruple() {
        let [a, a2, b, b2] = coplanar([0.0, 90.0, 225.0, 135.0]);
        // the four relative angles are 225°, 135°, 135°, 45°, so every term contributes +1/√2
        assert!((chsh_model(&a, &a2, &b, &b2).unwrap() - TSIRELSON).abs() < 1e-12);
        let [a, a2, b, b2] = coplanar([0.0, 90.0, 45.0, 135.0]);
        assert!((chsh_model_bound(&a, &a2, &b, &b2).unwrap() - TSIRELSON).abs() < 1e-12);
        assert!((chsh_model_bound(&a, &a, &b, &b2).unwrap() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn bound_does_not_dominate_pointwise() {
        // a = 0°, a′ = 90°, b = 45°, b′ = −45°: three relative angles of 45° and one of 135°
        let [a, a2, b, b2] = coplanar([0.0, 90.0, 45.0, -45.0]);
        assert!((chsh_model(&a, &a2, &b, &b2).unwrap() + TSIRELSON).abs() < 1e-12);
        assert!(chsh_model_bound(&a, &a2, &b, &b2).unwrap() < 1e-7);
    }

    #[test]
    fn chsh_collapse() {
        let [a, _, b, _] = coplanar([10.0, 0.0, 70.0, 0.0]);
        let v = chsh_model(&a, &a, &b, &b).unwrap();
        assert!((v + 2.0 * (60.0f64).to_radians().cos()).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn bound_in_range(t in prop::array::uniform4(0.0f64..2.0 * PI), p in prop::array::uniform4(-PI..PI)) {
            let v: Vec<Vec3> = (0..4).map(|i| Vec3::spherical(t[i], p[i])).collect();
            let bound = chsh_model_bound(&v[0], &v[1], &v[2], &v[3]).unwrap();
            prop_assert!((-1e-12..=TSIRELSON + 1e-12).contains(&bound));
        }

        #[test]
        fn coplanar_chsh_below_tsirelson(t in prop::array::uniform4(0.0f64..2.0 * PI)) {
            let [a, a2, b, b2] = t.map(|x| Vec3::spherical(x, 0.0));
            prop_assert!(chsh_model(&a, &a2, &b, &b2).unwrap().abs() <= TSIRELSON + 1e-12);
        }
    }
}
