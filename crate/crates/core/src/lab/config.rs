use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::algorithms::ComparatorKind;
use crate::error::{domain, LabError, Result};
use crate::polymethod::ZeroMode;

/// Environment variable naming a JSON config file.
pub const CONFIG_ENV: &str = "QUERYLAB_CONFIG";
/// Seed used when neither the config nor the command line sets one.
pub const DEFAULT_SEED: u64 = 7;
/// Largest `N` for closed-form sweeps.
pub const MAX_SWEEP_N: usize = 1 << 12;
/// Largest `N` whose rows carry the symmetrized degree column.
pub const MAX_DEGREE_N: usize = 32;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub n_grid: Vec<usize>,
    /// Promise weights.
    pub t_grid: Vec<usize>,
    /// Grover iteration counts (or `k` for `amplify`); empty means the
    /// command's default.
    #[serde(rename = "T_grid")]
    pub iter_grid: Vec<usize>,
    pub a: f64,
    pub b: f64,
    pub mode: ZeroMode,
    pub eta: f64,
    pub repetitions: usize,
    pub query_budget: usize,
    pub comparator: ComparatorKind,
    pub seed: u64,
    /// Random superpositions tried per reduction gadget.
    pub trials: usize,
    /// Output prefix; `<out>.json` and `<out>.csv` are written.
    pub out: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            n_grid: Vec::new(),
            t_grid: Vec::new(),
            iter_grid: Vec::new(),
            a: 1.0,
            b: 1.0,
            mode: ZeroMode::Strict,
            eta: 0.05,
            repetitions: 9,
            query_budget: 12,
            comparator: ComparatorKind::Coherent,
            seed: DEFAULT_SEED,
            trials: 10_000,
            out: None,
        }
    }
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| domain(format!("config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| LabError::Domain(format!("reading {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// The file named by `explicit`, else by `QUERYLAB_CONFIG`, else defaults.
    pub fn resolve(explicit: Option<&Path>) -> Result<Self> {
        match explicit {
            Some(p) => Self::load(p),
            None => match std::env::var_os(CONFIG_ENV) {
                Some(p) if !p.is_empty() => Self::load(Path::new(&p)),
                _ => Ok(Self::default()),
            },
        }
    }

    /// Structural checks shared by all commands; per-cell limits are
    /// reported on the rows instead.
    pub fn validate(&self) -> Result<()> {
        crate::bounds::CRConstants::new(self.a, self.b)?;
        if !(self.eta >= 0.0 && self.eta <= 1.0) {
            return Err(domain(format!("eta = {} outside [0, 1]", self.eta)));
        }
        Ok(())
    }

    pub fn grid_or(&self, grid: &[usize], default: &[usize]) -> Vec<usize> {
        if grid.is_empty() {
            default.to_vec()
        } else {
            grid.to_vec()
        }
    }
}
