use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Discretization;

/// Default bound on `|λ|` for eigenvalues entering spectrum errors.
pub const DEFAULT_LAMBDA_CAP: f64 = 50.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    /// `-u''' + g u = h` with power-law `g`, `h`.
    Ode3,
    /// Eigenvalues of `-d²/dθ² + ε g`.
    Spectrum2,
    /// Eigenvalues of `-i d³/dθ³ + ε g`.
    Spectrum3,
    /// Riemann–Hilbert problem with jump `1 + ε Σ_{j≠0} (1+|j|)^{-α} z^j`.
    Rhp,
}

impl ExperimentKind {
    pub fn is_spectrum(self) -> bool {
        matches!(self, ExperimentKind::Spectrum2 | ExperimentKind::Spectrum3)
    }

    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::Ode3 => "ode3",
            ExperimentKind::Spectrum2 => "spectrum2",
            ExperimentKind::Spectrum3 => "spectrum3",
            ExperimentKind::Rhp => "rhp",
        }
    }
}

/// One experiment, read from JSON. Unknown keys are rejected.
///
/// `epsilon` scales the jump perturbation for `rhp` and the potential for
/// the spectrum experiments; `ode3` ignores it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    pub alpha: f64,
    pub epsilon: f64,
    pub s: f64,
    pub t: f64,
    #[serde(rename = "N_list")]
    pub n_list: Vec<usize>,
    #[serde(rename = "N_ref")]
    pub n_ref: usize,
    pub mode: Discretization,
    pub output_path: PathBuf,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_cap: Option<f64>,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| Error::Io { path: path.to_owned(), source })?;
        Self::from_json(&text).map_err(|e| match e {
            Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        let Some(&largest) = self.n_list.last() else {
            return bad("N_list must not be empty".into());
        };
        if self.n_list.contains(&0) {
            return bad("N_list entries must be positive".into());
        }
        if !self.n_list.windows(2).all(|w| w[0] < w[1]) {
            return bad("N_list must be strictly ascending".into());
        }
        if self.n_ref <= largest {
            return bad(format!("N_ref ({}) must exceed max(N_list) ({largest})", self.n_ref));
        }
        if !(self.alpha > 0.5) {
            return bad(format!("alpha must exceed 1/2, got {}", self.alpha));
        }
        for (name, v) in [("epsilon", self.epsilon), ("s", self.s), ("t", self.t)] {
            if !v.is_finite() {
                return bad(format!("{name} must be finite"));
            }
        }
        if let Some(cap) = self.lambda_cap {
            if !(cap > 0.0) {
                return bad(format!("lambda_cap must be positive, got {cap}"));
            }
        }
        Ok(())
    }

    pub fn lambda_cap(&self) -> f64 {
        self.lambda_cap.unwrap_or(DEFAULT_LAMBDA_CAP)
    }

    /// Rate the experiment is expected to show: `s - t - 3` for `ode3`,
    /// `s - t` for `rhp` and the upper bound `-ℓ` for spectra.
    pub fn expected_slope(&self) -> f64 {
        match self.experiment {
            ExperimentKind::Ode3 => self.s - self.t - 3.0,
            ExperimentKind::Rhp => self.s - self.t,
            ExperimentKind::Spectrum2 | ExperimentKind::Spectrum3 => -self.ell(),
        }
    }

    /// Smoothness index of the power-law coefficients, `⌊α - 1/2⌋`.
    pub fn ell(&self) -> f64 {
        (self.alpha - 0.5).floor()
    }
}
