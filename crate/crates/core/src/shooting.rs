//! Phase-plane shooting for the bistable front speed.
//!
//! In the `(φ, v = φ')` plane a front `1 → 0` is a saddle-to-saddle connection.
//! Writing `v` as a function of `φ`, the profile equation becomes
//!
//! ```text
//! dv/dφ = (W'(φ)/v − c (1 + σ W''(φ))) / (a − τ c²)
//! ```
//!
//! The branch leaving `(0, 0)` and the branch leaving `(1, 0)` are launched
//! along their eigendirections and integrated to `φ = α`; the speed is the
//! root of their difference `h(c) = v₀(α) − v₁(α)`, found by bisection.
//! With this orientation `h` is decreasing in `c`: positive below the front
//! speed and negative above it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::ModelParams;
use crate::reaction::{Branch, Reaction};

/// Value of `h` reported when one of the branches hits `v = 0` early.
pub const MISMATCH_SENTINEL: f64 = 1e6;

/// Which saddle a manifold branch leaves from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    FromZero,
    FromOne,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Integrator {
    /// Explicit Euler in `φ`; first order in `du`.
    Euler,
    /// Classical fourth-order Runge–Kutta in `φ`.
    Rk4,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShootingConfig {
    /// Step in `φ`.
    pub du: f64,
    /// Launch offset from each saddle.
    pub epsilon: f64,
    /// Relative shrink of the bracket `±sqrt(a/τ)`.
    pub bracket_margin: f64,
    /// Bisection stops when the bracket is narrower than this.
    pub c_tol: f64,
    pub max_iter: usize,
    /// A branch with `v ≥ −v_floor` before `φ = α` has crossed zero.
    pub v_floor: f64,
    pub integrator: Integrator,
}

impl Default for ShootingConfig {
    fn default() -> Self {
        Self {
            du: 1e-5,
            epsilon: 1e-8,
            bracket_margin: 1e-6,
            c_tol: 1e-10,
            max_iter: 200,
            v_floor: 1e-14,
            integrator: Integrator::Euler,
        }
    }
}

impl ShootingConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::InvalidConfig(what.to_string()));
        if !(self.du > 0.0 && self.du < 0.5) {
            return bad("du must lie in (0, 0.5)");
        }
        if !(self.epsilon > 0.0 && self.epsilon < self.du) {
            return bad("epsilon must be positive and smaller than du");
        }
        if !(self.bracket_margin > 0.0 && self.bracket_margin < 1.0) {
            return bad("bracket margin must lie in (0, 1)");
        }
        if !(self.c_tol > 0.0) || self.max_iter == 0 {
            return bad("bisection tolerance and iteration cap must be positive");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShootingResult {
    pub c_star: f64,
    pub iterations: usize,
    pub final_mismatch: f64,
    pub bracket_history: Vec<(f64, f64)>,
}

/// Roots `(λ₋, λ₊)` of `(a − τc²)λ² + c(1 + σW''(ū))λ − W''(ū)`.
pub fn eigenvalues(model: &Reaction, params: &ModelParams, ubar: f64, c: f64) -> Result<(f64, f64)> {
    let d2w = model.eval_d2w(ubar)?;
    roots(params, d2w, c, ubar)
}

fn roots(params: &ModelParams, d2w: f64, c: f64, ubar: f64) -> Result<(f64, f64)> {
    let op = params.wave_operator(c);
    if op <= 0.0 {
        return Err(Error::DegenerateWaveOperator { value: op });
    }
    let drag = c * (1.0 + params.sigma * d2w);
    let discriminant = drag * drag + 4.0 * op * d2w;
    if discriminant < 0.0 {
        return Err(Error::ComplexRoots { ubar, discriminant });
    }
    let root = discriminant.sqrt();
    Ok(((-drag - root) / (2.0 * op), (-drag + root) / (2.0 * op)))
}

/// Integrates one manifold branch from its saddle to `φ = α` and returns `v(α)`.
pub fn integrate_manifold(
    model: &Reaction,
    params: &ModelParams,
    c: f64,
    side: Side,
    config: &ShootingConfig,
) -> Result<f64> {
    let op = params.wave_operator(c);
    if op <= 0.0 {
        return Err(Error::DegenerateWaveOperator { value: op });
    }
    let alpha = model.alpha();
    let eps = config.epsilon;
    let (start, v_start, branch) = match side {
        Side::FromZero => (eps, eigenvalues(model, params, 0.0, c)?.0 * eps, Branch::Below),
        Side::FromOne => (1.0 - eps, -eigenvalues(model, params, 1.0, c)?.1 * eps, Branch::Above),
    };
    let sigma = params.sigma;
    let slope = |phi: f64, v: f64| {
        let dw = model.dw_one_sided(phi, branch);
        let d2w = model.d2w_one_sided(phi, branch);
        (dw / v - c * (1.0 + sigma * d2w)) / op
    };
    let crossed = |v: f64| !(v < -config.v_floor);

    let span = alpha - start;
    let steps = ((span.abs() / config.du) - 1e-9).ceil().max(1.0) as usize;
    let dir = span.signum();
    let node = |k: usize| if k == steps { alpha } else { start + dir * config.du * k as f64 };

    let mut v = v_start;
    for k in 0..steps {
        let phi = node(k);
        let h = node(k + 1) - phi;
        v = match config.integrator {
            Integrator::Euler => v + h * slope(phi, v),
            Integrator::Rk4 => {
                let k1 = slope(phi, v);
                let v2 = v + 0.5 * h * k1;
                if crossed(v2) {
                    return Err(Error::EarlyZeroCrossing { side, phi });
                }
                let k2 = slope(phi + 0.5 * h, v2);
                let v3 = v + 0.5 * h * k2;
                if crossed(v3) {
                    return Err(Error::EarlyZeroCrossing { side, phi });
                }
                let k3 = slope(phi + 0.5 * h, v3);
                let v4 = v + h * k3;
                if crossed(v4) {
                    return Err(Error::EarlyZeroCrossing { side, phi });
                }
                let k4 = slope(phi + h, v4);
                v + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            }
        };
        if crossed(v) && k + 1 < steps {
            return Err(Error::EarlyZeroCrossing { side, phi: node(k + 1) });
        }
    }
    // v → 0 exactly at φ = α is the approach to the node (α, 0), not a crossing.
    Ok(v)
}

/// `h(c) = v₀(α) − v₁(α)`; early zero crossings map to `±MISMATCH_SENTINEL`.
pub fn mismatch(model: &Reaction, params: &ModelParams, c: f64, config: &ShootingConfig) -> Result<f64> {
    let from_zero = match integrate_manifold(model, params, c, Side::FromZero, config) {
        Ok(v) => v,
        Err(Error::EarlyZeroCrossing { .. }) => return Ok(MISMATCH_SENTINEL),
        Err(e) => return Err(e),
    };
    match integrate_manifold(model, params, c, Side::FromOne, config) {
        Ok(v) => Ok(from_zero - v),
        Err(Error::EarlyZeroCrossing { .. }) => Ok(-MISMATCH_SENTINEL),
        Err(e) => Err(e),
    }
}

/// Initial bisection bracket for `c`.
///
/// For `τ > 0` this is `±(1 − margin) sqrt(a/τ)`. In the parabolic limit it starts
/// from `±sqrt(2a s)` (`s` the reaction strength) and doubles until `h` changes sign.
pub fn initial_bracket(model: &Reaction, params: &ModelParams, config: &ShootingConfig) -> Result<(f64, f64)> {
    if params.tau > 0.0 {
        let c = (1.0 - config.bracket_margin) * params.characteristic_speed();
        return Ok((-c, c));
    }
    let mut c = (2.0 * params.a * model.strength()).sqrt();
    for _ in 0..40 {
        let lo = mismatch(model, params, -c, config)?;
        let hi = mismatch(model, params, c, config)?;
        if lo.signum() != hi.signum() {
            return Ok((-c, c));
        }
        c *= 2.0;
    }
    Err(Error::NoSignChange { lo: -c, hi: c })
}

/// Bisects `h` on the initial bracket down to `c_tol`.
pub fn find_speed(model: &Reaction, params: &ModelParams, config: &ShootingConfig) -> Result<ShootingResult> {
    config.validate()?;
    let (mut lo, mut hi) = initial_bracket(model, params, config)?;
    let mut h_lo = mismatch(model, params, lo, config)?;
    let h_hi = mismatch(model, params, hi, config)?;
    if h_lo == 0.0 {
        return Ok(ShootingResult { c_star: lo, iterations: 0, final_mismatch: 0.0, bracket_history: vec![(lo, hi)] });
    }
    if h_hi == 0.0 {
        return Ok(ShootingResult { c_star: hi, iterations: 0, final_mismatch: 0.0, bracket_history: vec![(lo, hi)] });
    }
    if h_lo.signum() == h_hi.signum() {
        return Err(Error::NoSignChange { lo, hi });
    }

    let mut history = vec![(lo, hi)];
    let mut iterations = 0;
    while hi - lo > config.c_tol {
        if iterations == config.max_iter {
            return Err(Error::NonConvergence { iterations });
        }
        iterations += 1;
        let mid = 0.5 * (lo + hi);
        let h_mid = mismatch(model, params, mid, config)?;
        if h_mid == 0.0 {
            lo = mid;
            hi = mid;
        } else if h_mid.signum() == h_lo.signum() {
            lo = mid;
            h_lo = h_mid;
        } else {
            hi = mid;
        }
        history.push((lo, hi));
    }
    let c_star = 0.5 * (lo + hi);
    let final_mismatch = mismatch(model, params, c_star, config)?;
    Ok(ShootingResult { c_star, iterations, final_mismatch, bracket_history: history })
}
