//! Closed-form front speeds and profiles.
//!
//! These cover the parabolic and purely damped cubic, the piecewise affine
//! reaction for any `0 ≤ σ ≤ τ`, and the zero-speed profile of equal wells.

use crate::error::{Error, Result};
use crate::reaction::Reaction;

/// Parabolic cubic speed `c₀ = sqrt(2aκ)(1/2 − α)`.
pub fn parabolic_cubic_speed(a: f64, kappa: f64, alpha: f64) -> f64 {
    (2.0 * a * kappa).sqrt() * (0.5 - alpha)
}

/// Damped cubic speed (`σ = 0`), `c_τ = c₀ / sqrt(1 + τc₀²/a)`.
///
/// Solves `c² (1 + 2κτ(1/2 − α)²) = 2aκ(1/2 − α)²`, which puts `a` (not `a²`)
/// under the square root.
pub fn damped_cubic_speed(a: f64, kappa: f64, alpha: f64, tau: f64) -> f64 {
    let c0 = parabolic_cubic_speed(a, kappa, alpha);
    c0 / (1.0 + tau * c0 * c0 / a).sqrt()
}

/// Exact speed for the piecewise affine reaction, any `0 ≤ σ ≤ τ`.
pub fn pwl_speed(a: f64, m: f64, alpha: f64, sigma: f64, tau: f64) -> f64 {
    let relax = (1.0 + m * sigma).powi(2);
    let denom = relax * alpha * (1.0 - alpha) + m * tau * (2.0 * alpha - 1.0).powi(2);
    (m * a / denom).sqrt() * (1.0 - 2.0 * alpha)
}

/// `φ(ξ) = 1 / (1 + exp(sqrt(κ/2a)(ξ − ξ₀)))`.
pub fn parabolic_cubic_profile(xi: f64, a: f64, kappa: f64, xi0: f64) -> f64 {
    1.0 / (1.0 + ((kappa / (2.0 * a)).sqrt() * (xi - xi0)).exp())
}

const EQUAL_DEPTH_TOL: f64 = 1e-12;

const PROFILE_STEP: f64 = 1e-3;

/// Standing front for equal wells, normalized `φ(0) = 1/2`.
///
/// Integrates `φ' = −sqrt(2/a) sqrt(W(φ) − W(0))` outward from `ξ = 0` with RK4.
pub fn equal_depth_profile(model: &Reaction, a: f64, xi_grid: &[f64]) -> Result<Vec<f64>> {
    let gap = model.well_gap();
    if gap.abs() > EQUAL_DEPTH_TOL {
        return Err(Error::NotEqualDepth { gap });
    }
    let w0 = model.eval_w(0.0);
    let scale = (2.0 / a).sqrt();
    let rhs = |phi: f64| -scale * (model.eval_w(phi.clamp(0.0, 1.0)) - w0).max(0.0).sqrt();
    let rk4 = |phi: f64, h: f64| {
        let k1 = rhs(phi);
        let k2 = rhs(phi + 0.5 * h * k1);
        let k3 = rhs(phi + 0.5 * h * k2);
        let k4 = rhs(phi + h * k3);
        phi + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    };
    let march = |xi: f64| -> f64 {
        let steps = (xi.abs() / PROFILE_STEP).ceil().max(1.0) as usize;
        let h = xi / steps as f64;
        (0..steps).fold(0.5, |phi, _| rk4(phi, h))
    };
    Ok(xi_grid.iter().map(|&xi| if xi == 0.0 { 0.5 } else { march(xi) }).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parabolic_speed_values() {
        assert_eq!(parabolic_cubic_speed(1.0, 1.0, 0.5), 0.0);
        assert!((parabolic_cubic_speed(1.0, 1.0, 0.25) - 0.353_553_4).abs() < 1e-7);
        assert!((parabolic_cubic_speed(1.0, 1.0, 0.125) - 0.530_330_1).abs() < 1e-7);
        assert!(parabolic_cubic_speed(1.0, 1.0, 0.75) < 0.0);
    }

    #[test]
    fn damped_speed_values() {
        assert!((damped_cubic_speed(1.0, 1.0, 0.25, 1.0) - 0.333_333_3).abs() < 1e-7);
        assert!((damped_cubic_speed(1.0, 1.0, 0.05, 1.0) - 0.536_895_0).abs() < 1e-7);
        assert_eq!(damped_cubic_speed(1.0, 1.0, 0.25, 0.0), parabolic_cubic_speed(1.0, 1.0, 0.25));
    }

    #[test]
    fn damped_speed_solves_its_defining_relation() {
        for &a in &[0.3, 1.0, 2.5] {
            for &kappa in &[0.5, 1.0, 7.0] {
                for &tau in &[0.0, 0.1, 1.0, 4.0] {
                    for k in 1..10 {
                        let alpha = k as f64 * 0.05;
                        let c = damped_cubic_speed(a, kappa, alpha, tau);
                        let rhs = (2.0 * (a - tau * c * c) * kappa).sqrt() * (0.5 - alpha);
                        assert!((c - rhs).abs() < 1e-12);
                        assert!(a - tau * c * c > 0.0);
                        if tau > 0.0 {
                            assert!(c < parabolic_cubic_speed(a, kappa, alpha));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn pwl_speed_values() {
        assert!((pwl_speed(1.0, 1.0, 0.25, 0.0, 1.0) - 0.755_928_9).abs() < 1e-7);
        assert!((pwl_speed(1.0, 1.0, 0.125, 0.0, 1.0) - 0.914_991_4).abs() < 1e-7);
        assert!((pwl_speed(1.0, 1.0, 0.25, 1.0, 1.0) - 0.5).abs() < 1e-15);
        assert_eq!(pwl_speed(1.0, 2.0, 0.5, 0.3, 1.0), 0.0);
    }

    #[test]
    fn pwl_speed_decreases_in_sigma_and_tau() {
        for k in 1..20 {
            let alpha = k as f64 * 0.05;
            if (alpha - 0.5).abs() < 1e-12 {
                continue;
            }
            let c00 = pwl_speed(1.0, 1.0, alpha, 0.0, 0.0);
            let mut prev = f64::INFINITY;
            for s in 0..=10 {
                let sigma = s as f64 * 0.1;
                let c = pwl_speed(1.0, 1.0, alpha, sigma, 1.0);
                assert!(c.abs() < prev, "alpha={alpha} sigma={sigma}");
                prev = c.abs();
                assert!(((c - c00) / c00) < 0.0);
                assert!(1.0 - c * c > 0.0);
            }
            let c1 = pwl_speed(1.0, 1.0, alpha, 0.0, 0.5).abs();
            let c2 = pwl_speed(1.0, 1.0, alpha, 0.0, 1.0).abs();
            assert!(c2 < c1);
        }
    }

    #[test]
    fn logistic_profile_values() {
        assert_eq!(parabolic_cubic_profile(3.0, 1.0, 1.0, 3.0), 0.5);
        assert!(parabolic_cubic_profile(1e3, 1.0, 1.0, 0.0) < 1e-100);
        let e = std::f64::consts::E;
        assert!((parabolic_cubic_profile(1.0, 1.0, 2.0, 0.0) - 1.0 / (1.0 + e)).abs() < 1e-15);
    }

    #[test]
    fn equal_depth_cubic_matches_logistic() {
        let model = Reaction::cubic(1.0, 0.5).unwrap();
        let grid: Vec<f64> = (-100..=100).map(|k| k as f64 * 0.1).collect();
        let profile = equal_depth_profile(&model, 1.0, &grid).unwrap();
        assert_eq!(profile[100], 0.5);
        for (xi, phi) in grid.iter().zip(&profile) {
            let exact = parabolic_cubic_profile(*xi, 1.0, 1.0, 0.0);
            assert!((phi - exact).abs() < 1e-8, "xi={xi}: {phi} vs {exact}");
        }
    }

    #[test]
    fn equal_depth_profile_rescales_with_kappa() {
        let grid: Vec<f64> = (-40..=40).map(|k| k as f64 * 0.1).collect();
        let scaled: Vec<f64> = grid.iter().map(|x| x * 2f64.sqrt()).collect();
        let slow = equal_depth_profile(&Reaction::cubic(1.0, 0.5).unwrap(), 1.0, &scaled).unwrap();
        let fast = equal_depth_profile(&Reaction::cubic(2.0, 0.5).unwrap(), 1.0, &grid).unwrap();
        for (s, f) in slow.iter().zip(&fast) {
            assert!((s - f).abs() < 1e-9);
        }
    }

    #[test]
    fn equal_depth_pwl_profile_is_monotone() {
        let grid: Vec<f64> = (-30..=30).map(|k| k as f64 * 0.2).collect();
        let model = Reaction::piecewise_affine(1.0, 0.5).unwrap();
        let profile = equal_depth_profile(&model, 1.0, &grid).unwrap();
        assert!(profile.windows(2).all(|w| w[1] < w[0]));
        // W = s²/2 on the lower branch, so φ = e^{-ξ}/2 for ξ > 0.
        for (xi, phi) in grid.iter().zip(&profile) {
            if *xi >= 0.0 {
                assert!((phi - 0.5 * (-xi).exp()).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn unequal_wells_rejected() {
        let model = Reaction::cubic(1.0, 0.25).unwrap();
        assert!(matches!(equal_depth_profile(&model, 1.0, &[0.0]), Err(Error::NotEqualDepth { .. })));
    }
}
