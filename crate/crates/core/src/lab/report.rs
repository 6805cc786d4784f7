use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::config::ExperimentConfig;
use crate::error::{LabError, Result};

pub const SCHEMA: &str = "querylab-report/1";

/// A flat report row with a fixed CSV column order.
pub trait Row: Serialize {
    const COLUMNS: &'static [&'static str];
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Invariant {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

impl Invariant {
    pub fn new(name: &str, holds: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.to_owned(),
            holds,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report<R> {
    pub schema: &'static str,
    pub command: String,
    pub config: ExperimentConfig,
    pub rows: Vec<R>,
    pub summary: serde_json::Value,
    pub invariants: Vec<Invariant>,
    pub ok: bool,
}

impl<R: Row> Report<R> {
    pub fn new(
        command: &str,
        config: &ExperimentConfig,
        rows: Vec<R>,
        summary: serde_json::Value,
        invariants: Vec<Invariant>,
    ) -> Self {
        let ok = invariants.iter().all(|i| i.holds);
        Self {
            schema: SCHEMA,
            command: command.to_owned(),
            config: config.clone(),
            rows,
            summary,
            invariants,
            ok,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self).map_err(|e| LabError::Numerical(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }

    /// Header line plus one record per row.
    pub fn to_csv(&self) -> Result<String> {
        let io = |e: csv::Error| LabError::Domain(format!("csv: {e}"));
        let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
        w.write_record(R::COLUMNS).map_err(io)?;
        for row in &self.rows {
            w.serialize(row).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| LabError::Domain(format!("csv: {e}")))?;
        String::from_utf8(bytes).map_err(|e| LabError::Domain(e.to_string()))
    }

    /// Writes `<prefix>.json` and `<prefix>.csv`; returns both paths.
    pub fn write(&self, prefix: &Path) -> Result<(PathBuf, PathBuf)> {
        let json = prefix.with_extension("json");
        let csv = prefix.with_extension("csv");
        let io = |p: &Path, e: std::io::Error| LabError::Domain(format!("writing {}: {e}", p.display()));
        std::fs::write(&json, self.to_json()?).map_err(|e| io(&json, e))?;
        std::fs::write(&csv, self.to_csv()?).map_err(|e| io(&csv, e))?;
        Ok((json, csv))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct Demo {
        n: usize,
        x: Option<f64>,
    }

    impl Row for Demo {
        const COLUMNS: &'static [&'static str] = &["n", "x"];
    }

    #[test]
    fn csv_layout() {
        let cfg = ExperimentConfig::default();
        let empty: Report<Demo> = Report::new("demo", &cfg, vec![], serde_json::Value::Null, vec![]);
        assert_eq!(empty.to_csv().unwrap(), "n,x\n");
        assert!(empty.ok);
        let rows = vec![Demo { n: 1, x: Some(0.5) }, Demo { n: 2, x: None }];
        let rep = Report::new("demo", &cfg, rows, serde_json::Value::Null, vec![Invariant::new("i", false, "")]);
        assert_eq!(rep.to_csv().unwrap(), "n,x\n1,0.5\n2,\n");
        assert!(!rep.ok);
        assert!(rep.to_json().unwrap().contains("\"schema\": \"querylab-report/1\""));
    }
}
