//! Bistable reaction terms and their double-well potentials.
//!
//! Every model exposes `f`, `f'`, the potential `W(u) = -∫₀ᵘ f` (so `W(0) = 0`)
//! and `W''`. Closed forms only, so the potential is exact.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which one-sided limit to take at a discontinuity of the reaction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Below,
    Above,
}

/// `f(u) = κ u (u − α)(1 − u)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CubicReaction {
    pub kappa: f64,
    pub alpha: f64,
}

/// `f(u) = −m u` for `u < α`, `m (1 − u)` for `u ≥ α`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PiecewiseAffineReaction {
    pub m: f64,
    pub alpha: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Reaction {
    Cubic(CubicReaction),
    PiecewiseAffine(PiecewiseAffineReaction),
}

impl CubicReaction {
    pub fn new(kappa: f64, alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        if !(kappa > 0.0 && kappa.is_finite()) {
            return Err(Error::InvalidConfig(format!("kappa must be positive, got {kappa}")));
        }
        Ok(Self { kappa, alpha })
    }

    pub fn f(&self, u: f64) -> f64 {
        self.kappa * u * (u - self.alpha) * (1.0 - u)
    }

    pub fn df(&self, u: f64) -> f64 {
        self.kappa * (-3.0 * u * u + 2.0 * (1.0 + self.alpha) * u - self.alpha)
    }

    pub fn potential(&self, u: f64) -> f64 {
        let a = self.alpha;
        self.kappa * u * u * (6.0 * a - 4.0 * (1.0 + a) * u + 3.0 * u * u) / 12.0
    }
}

impl PiecewiseAffineReaction {
    pub fn new(m: f64, alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        if !(m > 0.0 && m.is_finite()) {
            return Err(Error::InvalidConfig(format!("m must be positive, got {m}")));
        }
        Ok(Self { m, alpha })
    }

    pub fn f(&self, u: f64) -> f64 {
        if u < self.alpha {
            -self.m * u
        } else {
            self.m * (1.0 - u)
        }
    }

    pub fn potential(&self, u: f64) -> f64 {
        let quad = 0.5 * self.m * u * u;
        if u < self.alpha {
            quad
        } else {
            quad - self.m * (u - self.alpha)
        }
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidConfig(format!("alpha must lie in (0, 1), got {alpha}")))
    }
}

impl Reaction {
    pub fn cubic(kappa: f64, alpha: f64) -> Result<Self> {
        CubicReaction::new(kappa, alpha).map(Reaction::Cubic)
    }

    pub fn piecewise_affine(m: f64, alpha: f64) -> Result<Self> {
        PiecewiseAffineReaction::new(m, alpha).map(Reaction::PiecewiseAffine)
    }

    /// The unstable intermediate zero (or jump location).
    pub fn alpha(&self) -> f64 {
        match self {
            Reaction::Cubic(c) => c.alpha,
            Reaction::PiecewiseAffine(p) => p.alpha,
        }
    }

    /// Reaction strength: κ for the cubic, m for the piecewise affine model.
    pub fn strength(&self) -> f64 {
        match self {
            Reaction::Cubic(c) => c.kappa,
            Reaction::PiecewiseAffine(p) => p.m,
        }
    }

    pub fn is_discontinuous(&self) -> bool {
        matches!(self, Reaction::PiecewiseAffine(_))
    }

    pub fn eval_f(&self, u: f64) -> f64 {
        match self {
            Reaction::Cubic(c) => c.f(u),
            Reaction::PiecewiseAffine(p) => p.f(u),
        }
    }

    /// `f'(u)`; undefined at the jump of the piecewise model.
    pub fn eval_df(&self, u: f64) -> Result<f64> {
        match self {
            Reaction::Cubic(c) => Ok(c.df(u)),
            Reaction::PiecewiseAffine(p) => {
                if u == p.alpha {
                    Err(Error::EvaluationAtJump { alpha: p.alpha })
                } else {
                    Ok(-p.m)
                }
            }
        }
    }

    pub fn eval_w(&self, u: f64) -> f64 {
        match self {
            Reaction::Cubic(c) => c.potential(u),
            Reaction::PiecewiseAffine(p) => p.potential(u),
        }
    }

    /// `W'(u) = −f(u)`.
    pub fn eval_dw(&self, u: f64) -> f64 {
        -self.eval_f(u)
    }

    pub fn eval_d2w(&self, u: f64) -> Result<f64> {
        self.eval_df(u).map(|d| -d)
    }

    /// `W'` with the limit taken from the given side at a jump.
    pub fn dw_one_sided(&self, u: f64, branch: Branch) -> f64 {
        match (self, branch) {
            (Reaction::PiecewiseAffine(p), Branch::Below) if u >= p.alpha => p.m * u,
            (Reaction::PiecewiseAffine(p), Branch::Above) if u < p.alpha => -p.m * (1.0 - u),
            _ => self.eval_dw(u),
        }
    }

    /// `W''` with the limit taken from the given side; total for every `u`.
    pub fn d2w_one_sided(&self, u: f64, _branch: Branch) -> f64 {
        match self {
            Reaction::Cubic(c) => -c.df(u),
            Reaction::PiecewiseAffine(p) => p.m,
        }
    }

    /// `W(1) − W(0)`: negative when the state 1 invades.
    pub fn well_gap(&self) -> f64 {
        self.eval_w(1.0) - self.eval_w(0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Composite 5-point Gauss–Legendre, split at the jump so each panel is smooth.
    fn gauss_integral(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
        const X: [f64; 5] = [
            0.0,
            -0.538_469_310_105_683_1,
            0.538_469_310_105_683_1,
            -0.906_179_845_938_664,
            0.906_179_845_938_664,
        ];
        const W: [f64; 5] = [
            0.568_888_888_888_888_9,
            0.478_628_670_499_366_5,
            0.478_628_670_499_366_5,
            0.236_926_885_056_189_1,
            0.236_926_885_056_189_1,
        ];
        let h = (b - a) / panels as f64;
        (0..panels)
            .map(|k| {
                let mid = a + (k as f64 + 0.5) * h;
                X.iter().zip(W.iter()).map(|(x, w)| w * f(mid + 0.5 * h * x)).sum::<f64>() * 0.5 * h
            })
            .sum()
    }

    fn potential_by_quadrature(model: &Reaction, u: f64) -> f64 {
        let alpha = model.alpha();
        let f = |s| model.eval_f(s);
        if model.is_discontinuous() && u > alpha {
            -(gauss_integral(f, 0.0, alpha, 64) + gauss_integral(f, alpha, u, 64))
        } else {
            -gauss_integral(f, 0.0, u, 64)
        }
    }

    fn models() -> Vec<Reaction> {
        let mut out = Vec::new();
        for &alpha in &[0.05, 0.125, 0.25, 0.4, 0.5, 0.6, 0.875] {
            out.push(Reaction::cubic(1.0, alpha).unwrap());
            out.push(Reaction::cubic(7.0, alpha).unwrap());
            out.push(Reaction::piecewise_affine(1.0, alpha).unwrap());
            out.push(Reaction::piecewise_affine(2.5, alpha).unwrap());
        }
        out
    }

    #[test]
    fn zeros_of_f() {
        assert_eq!(Reaction::cubic(1.0, 0.25).unwrap().eval_f(0.0), 0.0);
        let c = Reaction::cubic(7.0, 0.4).unwrap();
        assert_eq!(c.eval_f(0.4), 0.0);
        assert_eq!(c.eval_f(1.0), 0.0);
        let p = Reaction::piecewise_affine(1.0, 0.25).unwrap();
        assert!((p.eval_f(0.2) + 0.2).abs() < 1e-15);
        assert_eq!(p.eval_f(0.0), 0.0);
        assert_eq!(p.eval_f(1.0), 0.0);
    }

    #[test]
    fn potential_examples() {
        let c = Reaction::cubic(1.0, 0.25).unwrap();
        assert!((c.eval_w(1.0) + 1.0 / 24.0).abs() < 1e-15);
        let p = Reaction::piecewise_affine(1.0, 0.25).unwrap();
        assert!((p.eval_w(1.0) + 0.25).abs() < 1e-15);
        for m in models() {
            assert_eq!(m.eval_w(0.0), 0.0);
        }
    }

    #[test]
    fn derivative_examples() {
        let c = Reaction::cubic(1.0, 0.25).unwrap();
        let h = 1e-5;
        let fd = |u: f64| (c.eval_f(u + h) - c.eval_f(u - h)) / (2.0 * h);
        assert!((c.eval_df(0.0).unwrap() - fd(0.0)).abs() < 1e-9);
        assert!((c.eval_df(0.0).unwrap() + 0.25).abs() < 1e-15);
        assert!((c.eval_d2w(0.0).unwrap() - 0.25).abs() < 1e-15);
        assert!((c.eval_d2w(1.0).unwrap() + fd(1.0)).abs() < 1e-9);
        assert!((c.eval_d2w(1.0).unwrap() - 0.75).abs() < 1e-15);

        let p = Reaction::piecewise_affine(1.0, 0.25).unwrap();
        assert_eq!(p.eval_d2w(0.1).unwrap(), 1.0);
    }

    #[test]
    fn jump_derivative_is_an_error() {
        let p = Reaction::piecewise_affine(1.0, 0.25).unwrap();
        assert_eq!(p.eval_df(0.25), Err(Error::EvaluationAtJump { alpha: 0.25 }));
        assert!(p.eval_d2w(0.25).is_err());
        assert_eq!(p.d2w_one_sided(0.25, Branch::Below), 1.0);
        assert!((p.dw_one_sided(0.25, Branch::Below) - 0.25).abs() < 1e-15);
        assert!((p.dw_one_sided(0.25, Branch::Above) + 0.75).abs() < 1e-15);
    }

    #[test]
    fn second_derivative_matches_finite_differences() {
        let h = 1e-4;
        for model in models() {
            for k in 0..=200 {
                let u = -0.5 + 2.0 * k as f64 / 200.0;
                if model.is_discontinuous() && (u - model.alpha()).abs() <= 2.0 * h {
                    continue;
                }
                let df = model.eval_df(u).unwrap();
                assert_eq!(model.eval_d2w(u).unwrap() + df, 0.0);
                let fd = (model.eval_f(u + h) - model.eval_f(u - h)) / (2.0 * h);
                assert!((df - fd).abs() < 1e-6 * model.strength(), "{model:?} u={u}");
                // W' = -f
                let dw = (model.eval_w(u + h) - model.eval_w(u - h)) / (2.0 * h);
                assert!((dw + model.eval_f(u)).abs() < 1e-6 * model.strength());
            }
        }
    }

    #[test]
    fn potential_matches_quadrature() {
        for model in models() {
            for k in 1..=50 {
                let u = k as f64 / 50.0;
                let exact = model.eval_w(u);
                let quad = potential_by_quadrature(&model, u);
                assert!(
                    (exact - quad).abs() <= 1e-10 * exact.abs().max(1e-6),
                    "{model:?} u={u}: {exact} vs {quad}"
                );
            }
        }
    }

    #[test]
    fn well_gap_sign_follows_alpha() {
        for k in 1..20 {
            let alpha = k as f64 / 20.0;
            for model in [Reaction::cubic(3.0, alpha).unwrap(), Reaction::piecewise_affine(2.0, alpha).unwrap()] {
                let gap = model.well_gap();
                if alpha < 0.5 {
                    assert!(gap < 0.0);
                } else if alpha > 0.5 {
                    assert!(gap > 0.0);
                } else {
                    assert!(gap.abs() < 1e-15);
                }
            }
        }
        let p = Reaction::piecewise_affine(1.5, 0.3).unwrap();
        assert!((p.well_gap() - 1.5 * (0.3 - 0.5)).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(Reaction::cubic(0.0, 0.3).is_err());
        assert!(Reaction::cubic(1.0, 1.0).is_err());
        assert!(Reaction::piecewise_affine(-1.0, 0.3).is_err());
        assert!(Reaction::piecewise_affine(1.0, 0.0).is_err());
    }
}
