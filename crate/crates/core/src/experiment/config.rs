use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::ModelParams;
use crate::reaction::Reaction;
use crate::schemes::{default_frame_stride, Grid, SchemeKind};
use crate::shooting::{Integrator, ShootingConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Cubic,
    Pwl,
}

/// Flat run description. Every key may come from a TOML file or an override.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub family: Family,
    /// `κ` for the cubic, `m` for the piecewise affine reaction.
    #[serde(alias = "kappa", alias = "m")]
    pub strength: f64,
    pub alpha: f64,
    pub tau: f64,
    pub sigma: f64,
    pub a: f64,
    pub dx: f64,
    pub dt: f64,
    #[serde(rename = "L")]
    pub length: f64,
    #[serde(rename = "T")]
    pub horizon: f64,
    pub schemes: Vec<SchemeKind>,
    /// Scout&spot level; `α` when absent.
    pub theta: Option<f64>,
    /// Scout&spot step gap; `T/(2dt)` when absent.
    pub p: Option<usize>,
    /// LeVeque–Yee averaging window; `[T/2, T]` when absent.
    pub ly_window: Option<[f64; 2]>,
    /// Steps between recorded frames; 0.1 time units when absent.
    pub frame_stride: Option<usize>,
    pub du: f64,
    pub epsilon: f64,
    pub integrator: Integrator,
    /// α-grid for `exact`, `shoot` and `sweep`.
    pub alphas: Vec<f64>,
    /// φ-steps swept for the convergence study.
    pub du_grid: Vec<f64>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        let shooting = ShootingConfig::default();
        Self {
            family: Family::Cubic,
            strength: 1.0,
            alpha: 0.25,
            tau: 1.0,
            sigma: 0.0,
            a: 1.0,
            dx: 0.1,
            dt: 1e-3,
            length: 50.0,
            horizon: 20.0,
            schemes: vec![SchemeKind::FirstOrder, SchemeKind::Lienard],
            theta: None,
            p: None,
            ly_window: None,
            frame_stride: None,
            du: shooting.du,
            epsilon: shooting.epsilon,
            integrator: shooting.integrator,
            alphas: (1..=9).map(|k| 0.05 * k as f64).collect(),
            du_grid: vec![1e-2, 1e-3, 1e-4, 1e-5],
        }
    }
}

impl ExperimentConfig {
    /// Reads a TOML file and layers `key = value` overrides on top.
    pub fn load(path: Option<&Path>, overrides: &[(String, String)]) -> Result<Self> {
        let mut table = match path {
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| Error::InvalidConfig(format!("cannot read {}: {e}", p.display())))?;
                text.parse::<toml::Table>()
                    .map_err(|e| Error::InvalidConfig(format!("{}: {e}", p.display())))?
            }
            None => toml::Table::new(),
        };
        for (key, raw) in overrides {
            table.insert(key.clone(), override_value(raw));
        }
        let config: Self = table
            .try_into()
            .map_err(|e: toml::de::Error| Error::InvalidConfig(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        self.model()?;
        self.params()?;
        self.grid()?;
        self.shooting().validate()?;
        for &scheme in &self.schemes {
            if scheme == SchemeKind::Kinetic && self.sigma != self.tau {
                return Err(Error::WrongRegime { sigma: self.sigma, tau: self.tau });
            }
        }
        if let Some(theta) = self.theta {
            if !(theta > 0.0 && theta < 1.0) {
                return Err(Error::InvalidConfig(format!("theta must lie in (0, 1), got {theta}")));
            }
        }
        if self.p == Some(0) || self.frame_stride == Some(0) {
            return Err(Error::InvalidConfig("p and frame_stride must be positive".into()));
        }
        if let Some([t0, t1]) = self.ly_window {
            if !(t0 < t1) {
                return Err(Error::InvalidConfig(format!("empty LY window [{t0}, {t1}]")));
            }
        }
        for &alpha in &self.alphas {
            self.model_at(alpha)?;
        }
        if self.du_grid.iter().any(|&du| !(du > 0.0)) {
            return Err(Error::InvalidConfig("du_grid entries must be positive".into()));
        }
        Ok(())
    }

    pub fn model(&self) -> Result<Reaction> {
        self.model_at(self.alpha)
    }

    pub fn model_at(&self, alpha: f64) -> Result<Reaction> {
        match self.family {
            Family::Cubic => Reaction::cubic(self.strength, alpha),
            Family::Pwl => Reaction::piecewise_affine(self.strength, alpha),
        }
    }

    pub fn params(&self) -> Result<ModelParams> {
        ModelParams::new(self.tau, self.sigma, self.a)
    }

    pub fn grid(&self) -> Result<Grid> {
        Grid::new(self.dx, self.dt, self.length, self.horizon)
    }

    pub fn shooting(&self) -> ShootingConfig {
        ShootingConfig { du: self.du, epsilon: self.epsilon, integrator: self.integrator, ..Default::default() }
    }

    pub fn theta_at(&self, alpha: f64) -> f64 {
        self.theta.unwrap_or(alpha)
    }

    pub fn p_steps(&self, grid: &Grid) -> usize {
        self.p.unwrap_or((grid.steps / 2).max(1))
    }

    pub fn stride(&self, grid: &Grid) -> usize {
        self.frame_stride.unwrap_or_else(|| default_frame_stride(grid))
    }

    pub fn window(&self, grid: &Grid) -> (f64, f64) {
        let end = grid.steps as f64 * grid.dt;
        match self.ly_window {
            Some([t0, t1]) => (t0, t1),
            None => (0.5 * end, end),
        }
    }
}

/// Parses `raw` as a TOML value, falling back to a bare string.
fn override_value(raw: &str) -> toml::Value {
    format!("v = {raw}")
        .parse::<toml::Table>()
        .ok()
        .and_then(|mut t| t.remove("v"))
        .unwrap_or_else(|| toml::Value::String(raw.to_string()))
}
