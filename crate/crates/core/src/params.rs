use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficients of `τ u_tt + (u − σ f(u))_t = a u_xx + f(u)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    /// Inertia (relaxation) time.
    pub tau: f64,
    /// Weight of the time-differentiated reaction, `0 ≤ σ ≤ τ`.
    pub sigma: f64,
    /// Diffusivity.
    pub a: f64,
}

impl ModelParams {
    pub fn new(tau: f64, sigma: f64, a: f64) -> Result<Self> {
        if !(tau >= 0.0 && tau.is_finite()) {
            return Err(Error::InvalidConfig(format!("tau must be non-negative, got {tau}")));
        }
        if !(sigma >= 0.0 && sigma <= tau) {
            return Err(Error::InvalidConfig(format!(
                "sigma must satisfy 0 <= sigma <= tau, got sigma = {sigma}, tau = {tau}"
            )));
        }
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::InvalidConfig(format!("a must be positive, got {a}")));
        }
        Ok(Self { tau, sigma, a })
    }

    /// Pure damping, `σ = 0`.
    pub fn damped(tau: f64, a: f64) -> Result<Self> {
        Self::new(tau, 0.0, a)
    }

    /// Relaxation, `σ = τ`.
    pub fn relaxed(tau: f64, a: f64) -> Result<Self> {
        Self::new(tau, tau, a)
    }

    pub fn parabolic(a: f64) -> Result<Self> {
        Self::new(0.0, 0.0, a)
    }

    /// Characteristic speed `sqrt(a/τ)`; infinite in the parabolic limit.
    pub fn characteristic_speed(&self) -> f64 {
        if self.tau > 0.0 {
            (self.a / self.tau).sqrt()
        } else {
            f64::INFINITY
        }
    }

    /// `a − τc²`, the coefficient of the second derivative in the profile equation.
    pub fn wave_operator(&self, c: f64) -> f64 {
        self.a - self.tau * c * c
    }

    pub fn is_relaxation(&self) -> bool {
        self.tau > 0.0 && self.sigma == self.tau
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_sigma_range() {
        assert!(ModelParams::new(1.0, 0.5, 1.0).is_ok());
        assert!(ModelParams::new(1.0, 1.5, 1.0).is_err());
        assert!(ModelParams::new(-1.0, 0.0, 1.0).is_err());
        assert!(ModelParams::new(1.0, 0.0, 0.0).is_err());
        assert!(ModelParams::relaxed(2.0, 1.0).unwrap().is_relaxation());
        assert!(!ModelParams::damped(2.0, 1.0).unwrap().is_relaxation());
    }

    #[test]
    fn characteristic_speed() {
        let p = ModelParams::damped(4.0, 1.0).unwrap();
        assert_eq!(p.characteristic_speed(), 0.5);
        assert_eq!(p.wave_operator(0.5), 0.0);
        assert!(ModelParams::parabolic(1.0).unwrap().characteristic_speed().is_infinite());
    }
}
