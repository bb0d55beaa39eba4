use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Uniform space-time mesh on `[0, L] × [0, T]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub dx: f64,
    pub dt: f64,
    pub length: f64,
    pub horizon: f64,
    /// Node count `floor(L/dx) + 1`.
    pub nodes: usize,
    /// Step count `floor(T/dt)`.
    pub steps: usize,
}

// Guards the floors against `50 / 0.1 = 499.99999999999994`.
const FLOOR_SLACK: f64 = 1e-9;

impl Grid {
    pub fn new(dx: f64, dt: f64, length: f64, horizon: f64) -> Result<Self> {
        for (name, value) in [("dx", dx), ("dt", dt), ("L", length), ("T", horizon)] {
            if !(value > 0.0 && value.is_finite()) {
                return Err(Error::InvalidConfig(format!("{name} must be positive, got {value}")));
            }
        }
        let nodes = (length / dx + FLOOR_SLACK).floor() as usize + 1;
        if nodes < 3 {
            return Err(Error::InvalidConfig(format!("grid needs at least 3 nodes, got {nodes}")));
        }
        let steps = (horizon / dt + FLOOR_SLACK).floor() as usize;
        Ok(Self { dx, dt, length, horizon, nodes, steps })
    }

    pub fn x(&self, j: usize) -> f64 {
        j as f64 * self.dx
    }

    pub fn xs(&self) -> Vec<f64> {
        (0..self.nodes).map(|j| self.x(j)).collect()
    }

    /// `dt/dx²`, small for the stiff-diffusion regime these schemes target.
    pub fn parabolic_ratio(&self) -> f64 {
        self.dt / (self.dx * self.dx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_mesh_counts() {
        let g = Grid::new(0.1, 1e-3, 50.0, 20.0).unwrap();
        assert_eq!(g.nodes, 501);
        assert_eq!(g.steps, 20_000);
        assert!((g.parabolic_ratio() - 0.1).abs() < 1e-15);
        assert!((g.x(500) - 50.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_degenerate_meshes() {
        assert!(Grid::new(1.0, 0.1, 1.0, 1.0).is_err());
        assert!(Grid::new(0.0, 0.1, 1.0, 1.0).is_err());
        assert!(Grid::new(0.1, -1.0, 1.0, 1.0).is_err());
    }
}
