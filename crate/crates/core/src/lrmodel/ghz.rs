//! GHZ-3 and GHZ-4 correlations on the 7-sphere.
//!
//! Two evaluation modes. `PaperZ` uses the postulated deviation vector (a
//! multiple of ê₃), `Table` multiplies the beables with a concrete cross
//! table, which fixes the deviation vector by definition.

use serde::{Deserialize, Serialize};

use super::decomposition::grouped_oct_product;
use super::report::ComparisonReport;
use crate::error::Result;
use crate::ga3::{HiddenVariable, Vec3};
use crate::qmref::{SpinObservable, StateKind, make_state, tensor_expectation};
use crate::sphere7::{CrossTable, Vec7, beable7, embed_ghz3, embed_ghz4, postulated_z, z_deviation};
use crate::tolerances;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GhzMode {
    #[default]
    PaperZ,
    Table,
}

impl GhzMode {
    pub fn as_str(self) -> &'static str {
        match self {
            GhzMode::PaperZ => "paper_z",
            GhzMode::Table => "table",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GhzEvaluation {
    pub value: f64,
    pub report: ComparisonReport,
}

/// `(P·Q)(R·S) − (P·R)(Q·S) + (P·S)(Q·R) − P·Z`.
fn lagrange_form(p: &Vec7, q: &Vec7, r: &Vec7, s: &Vec7, z: &Vec7) -> f64 {
    p.dot(q) * r.dot(s) - p.dot(r) * q.dot(s) + p.dot(s) * q.dot(r) - p.dot(z)
}

/// `(P·Q)(R·S) − (P×Q)·(R×S)`.
fn direct_form(p: &Vec7, q: &Vec7, r: &Vec7, s: &Vec7, table: &CrossTable) -> f64 {
    p.dot(q) * r.dot(s) - table.cross(p, q).dot(&table.cross(r, s))
}

fn scalar_of_product(n: &[Vec7; 4], table: &CrossTable) -> Result<f64> {
    let l = HiddenVariable::Right;
    let pts = n.iter().map(|v| beable7(v, l)).collect::<Result<Vec<_>>>()?;
    Ok(grouped_oct_product(&pts, l, table)?.a)
}

/// GHZ-4 value with the postulated `Z = ê₃ n2z n3z n4z`.
pub fn ghz4_paper_z(n: &[Vec3; 4]) -> Result<f64> {
    let e = embed_ghz4(&n[0], &n[1], &n[2], &n[3])?;
    let z = postulated_z(n[1].z * n[2].z * n[3].z, 0.0);
    Ok(lagrange_form(&e[0], &e[1], &e[2], &e[3], &z))
}

/// GHZ-4 value as the scalar part of `(AB)(CD)` under `table`.
pub fn ghz4_table(n: &[Vec3; 4], table: &CrossTable) -> Result<f64> {
    scalar_of_product(&embed_ghz4(&n[0], &n[1], &n[2], &n[3])?, table)
}

/// GHZ-3 value with the postulated `Z = ê₃ n1z n2z n3z`.
pub fn ghz3_paper_z(n: &[Vec3; 3], alpha: f64, delta: f64) -> Result<f64> {
    let e = embed_ghz3(&n[0], &n[1], &n[2], alpha, delta)?;
    let z = postulated_z(n[0].z * n[1].z * n[2].z, 0.0);
    Ok(lagrange_form(&e[0], &e[1], &e[2], &e[3], &z))
}

/// GHZ-3 value as the scalar part of `(P A)(B C)` with the reference point `P`.
pub fn ghz3_table(n: &[Vec3; 3], alpha: f64, delta: f64, table: &CrossTable) -> Result<f64> {
    scalar_of_product(&embed_ghz3(&n[0], &n[1], &n[2], alpha, delta)?, table)
}

fn assemble(
    e: &[Vec7; 4],
    paper_z: f64,
    table_value: f64,
    qm: f64,
    mode: GhzMode,
    table: &CrossTable,
) -> GhzEvaluation {
    let direct = direct_form(&e[0], &e[1], &e[2], &e[3], table);
    let z = z_deviation(&e[1], &e[2], &e[3], table);
    let lagrange = lagrange_form(&e[0], &e[1], &e[2], &e[3], &z);

    let mut report = ComparisonReport::new(mode.as_str(), Some(table.id().to_string()), None);
    report.add("paper_z vs qm", paper_z, qm, tolerances::IDENTITY, true);
    report.add("table vs qm", table_value, qm, tolerances::IDENTITY, false);
    report.add("table direct vs lagrange", direct, lagrange, tolerances::IDENTITY, true);
    report.add("table product vs direct", table_value, direct, tolerances::IDENTITY, true);
    report.add("table vs paper_z", table_value, paper_z, tolerances::IDENTITY, false);
    let value = match mode {
        GhzMode::PaperZ => paper_z,
        GhzMode::Table => table_value,
    };
    GhzEvaluation { value, report }
}

/// Evaluates the GHZ-4 model in `mode` and reports both modes against the
/// brute-force quantum value. Only the paper_z comparison and the table-mode
/// internal identities gate the report.
pub fn ghz4_model(n: &[Vec3; 4], mode: GhzMode, table: &CrossTable) -> Result<GhzEvaluation> {
    let e = embed_ghz4(&n[0], &n[1], &n[2], &n[3])?;
    let qm = tensor_expectation(&make_state(&StateKind::Ghz4)?, &SpinObservable::new(n.to_vec())?)?;
    Ok(assemble(&e, ghz4_paper_z(n)?, ghz4_table(n, table)?, qm, mode, table))
}

pub fn ghz3_model(
    n: &[Vec3; 3],
    alpha: f64,
    delta: f64,
    mode: GhzMode,
    table: &CrossTable,
) -> Result<GhzEvaluation> {
    let e = embed_ghz3(&n[0], &n[1], &n[2], alpha, delta)?;
    let qm = tensor_expectation(
        &make_state(&StateKind::Ghz3 { alpha, delta })?,
        &SpinObservable::new(n.to_vec())?,
    )?;
    Ok(assemble(
        &e,
        ghz3_paper_z(n, alpha, delta)?,
        ghz3_table(n, alpha, delta, table)?,
        qm,
        mode,
        table,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmref::{ghz3_closed_form, ghz4_closed_form};
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn arb_unit() -> impl Strategy<Value = Vec3> {
        (0.0f64..PI, -PI..PI).prop_map(|(t, p)| Vec3::spherical(t, p))
    }

    #[test]
    fn ghz4_examples() {
        assert!((ghz4_paper_z(&[Vec3::Z; 4]).unwrap() - 1.0).abs() < 1e-15);
        assert!((ghz4_paper_z(&[Vec3::X; 4]).unwrap() + 1.0).abs() < 1e-15);
    }

    #[test]
    fn ghz3_examples() {
        assert!((ghz3_paper_z(&[Vec3::Z; 3], 0.0, 0.3).unwrap() - 1.0).abs() < 1e-15);
        assert!((ghz3_paper_z(&[Vec3::X; 3], FRAC_PI_2, 0.0).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn model_report_passes_for_paper_z() {
        let n = [0.3, 1.1, 2.0, 0.7].map(|t| Vec3::spherical(t, t * 1.7));
        let table = CrossTable::fano_cyclic();
        let ev = ghz4_model(&n, GhzMode::PaperZ, &table).unwrap();
        assert!(ev.report.passed(), "{:#?}", ev.report);
        assert_eq!(ev.value, ghz4_paper_z(&n).unwrap());
        let ev = ghz4_model(&n, GhzMode::Table, &table).unwrap();
        assert_eq!(ev.value, ghz4_table(&n, &table).unwrap());
        assert_eq!(ev.report.metadata.table_id.as_deref(), Some("fano-cyclic"));
    }

    proptest! {
        #[test]
        fn ghz4_paper_z_matches_closed_form(n in prop::array::uniform4(arb_unit())) {
            prop_assert!((ghz4_paper_z(&n).unwrap() - ghz4_closed_form(&n)).abs() < 1e-12);
        }

        #[test]
        fn ghz3_paper_z_matches_closed_form(n in prop::array::uniform3(arb_unit()), alpha in 0.0f64..PI, delta in -PI..PI) {
            let v = ghz3_paper_z(&n, alpha, delta).unwrap();
            prop_assert!((v - ghz3_closed_form(&n, alpha, delta)).abs() < 1e-12);
        }

        #[test]
        fn table_identities_hold_for_both_tables(n in prop::array::uniform4(arb_unit()), alpha in 0.0f64..PI, delta in -PI..PI) {
            for table in [CrossTable::fano_cyclic(), CrossTable::cayley_dickson()] {
                let ev = ghz4_model(&n, GhzMode::Table, &table).unwrap();
                prop_assert!(ev.report.passed(), "{:#?}", ev.report);
                let m = [n[0], n[1], n[2]];
                let ev = ghz3_model(&m, alpha, delta, GhzMode::Table, &table).unwrap();
                prop_assert!(ev.report.passed(), "{:#?}", ev.report);
            }
        }
    }
}
