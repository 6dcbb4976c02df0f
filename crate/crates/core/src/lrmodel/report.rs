use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::Result;

/// CSV column order; fixed.
pub const CSV_HEADERS: [&str; 6] = ["label", "model", "oracle", "residual", "tolerance", "verdict"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Match,
    Mismatch,
}

impl Verdict {
    pub fn from_residual(residual: f64, tolerance: f64) -> Self {
        if residual.abs() <= tolerance {
            Verdict::Match
        } else {
            Verdict::Mismatch
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Match => "match",
            Verdict::Mismatch => "mismatch",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub label: String,
    pub model: f64,
    pub oracle: f64,
    pub residual: f64,
    pub tolerance: f64,
    pub verdict: Verdict,
    /// Whether a mismatch in this row fails the report. Informational rows
    /// (e.g. table-mode GHZ values) carry `false`.
    pub gating: bool,
}

impl ReportRow {
    pub fn new(label: impl Into<String>, model: f64, oracle: f64, tolerance: f64, gating: bool) -> Self {
        let residual = model - oracle;
        Self {
            label: label.into(),
            model,
            oracle,
            residual,
            tolerance,
            verdict: Verdict::from_residual(residual, tolerance),
            gating,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ReportMetadata {
    pub mode: String,
    pub table_id: Option<String>,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub metadata: ReportMetadata,
    pub rows: Vec<ReportRow>,
}

impl ComparisonReport {
    pub fn new(mode: impl Into<String>, table_id: Option<String>, seed: Option<u64>) -> Self {
        Self {
            metadata: ReportMetadata {
                mode: mode.into(),
                table_id,
                seed,
            },
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: ReportRow) {
        self.rows.push(row);
    }

    pub fn add(&mut self, label: impl Into<String>, model: f64, oracle: f64, tolerance: f64, gating: bool) {
        self.rows.push(ReportRow::new(label, model, oracle, tolerance, gating));
    }

    pub fn extend(&mut self, other: ComparisonReport) {
        self.rows.extend(other.rows);
    }

    pub fn prefix_labels(&mut self, prefix: &str) {
        for r in &mut self.rows {
            r.label = format!("{prefix} {}", r.label);
        }
    }

    /// Marks every row as gating.
    pub fn gate_all(&mut self) {
        for r in &mut self.rows {
            r.gating = true;
        }
    }

    /// True when no gating row is a mismatch.
    pub fn passed(&self) -> bool {
        self.rows
            .iter()
            .all(|r| !r.gating || r.verdict == Verdict::Match)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &ReportRow> {
        self.rows.iter().filter(|r| r.verdict == Verdict::Mismatch)
    }

    /// Largest |residual| over gating rows.
    pub fn max_gating_residual(&self) -> f64 {
        self.rows
            .iter()
            .filter(|r| r.gating)
            .map(|r| r.residual.abs())
            .fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Writes the six fixed columns. Floats use the shortest round-trip form.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(CSV_HEADERS)?;
        for r in &self.rows {
            out.write_record([
                r.label.clone(),
                r.model.to_string(),
                r.oracle.to_string(),
                r.residual.to_string(),
                r.tolerance.to_string(),
                r.verdict.as_str().to_string(),
            ])?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is utf-8"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_boundary_is_inclusive() {
        assert_eq!(Verdict::from_residual(1e-12, 1e-12), Verdict::Match);
        assert_eq!(Verdict::from_residual(-1.5e-12, 1e-12), Verdict::Mismatch);
        assert_eq!(Verdict::from_residual(f64::NAN, 1.0), Verdict::Mismatch);
    }

    #[test]
    fn empty_report_is_header_only() {
        let r = ComparisonReport::new("paper_z", None, None);
        assert_eq!(r.to_csv().unwrap(), "label,model,oracle,residual,tolerance,verdict\n");
        assert!(r.passed());
    }

    #[test]
    fn json_round_trip() {
        let mut r = ComparisonReport::new("table", Some("fano-cyclic".into()), Some(7));
        r.add("a", 0.1 + 0.2, 0.3, 1e-12, true);
        r.add("b, with comma", -1.0 / 3.0, 0.5, 1e-12, false);
        let back = ComparisonReport::from_json(&r.to_json().unwrap()).unwrap();
        assert_eq!(back, r);
        assert!(r.passed());
        r.gate_all();
        assert!(!r.passed());
        assert_eq!(r.mismatches().count(), 1);
    }

    #[test]
    fn csv_quotes_labels() {
        let mut r = ComparisonReport::default();
        r.add("x,y", 1.0, 1.0, 0.0, true);
        assert_eq!(r.to_csv().unwrap().lines().nth(1).unwrap(), "\"x,y\",1,1,0,0,match");
    }
}
