//! IMEX finite-difference schemes on `[0, L]` with zero-flux walls.
//!
//! Diffusion and relaxation are implicit with constant coefficients, so each
//! run factors its banded operator once; the reaction is explicit.

mod grid;
mod steps;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{BandedLu, BandedMatrix, TridiagonalLu};
use crate::params::ModelParams;
use crate::reaction::Reaction;

pub use grid::Grid;
pub use steps::{step_first_order, step_kinetic, step_lienard};

/// Source term seen by the schemes. `df` is only queried when `σ ≠ 0`.
pub trait ReactionTerm {
    fn f(&self, u: f64) -> f64;
    fn df(&self, u: f64) -> f64;
    fn potential(&self, u: f64) -> f64;
}

impl ReactionTerm for Reaction {
    fn f(&self, u: f64) -> f64 {
        self.eval_f(u)
    }

    fn df(&self, u: f64) -> f64 {
        self.eval_df(u).unwrap_or(f64::NAN)
    }

    fn potential(&self, u: f64) -> f64 {
        self.eval_w(u)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SchemeKind {
    /// Reduction to `(u, v = u_t)`.
    FirstOrder,
    /// `τ u_t = v − u + σ f(u)`, `v_t = a u_xx + f(u)`.
    Lienard,
    /// Upwind transport-relaxation in diagonal variables; needs `σ = τ`.
    Kinetic,
}

impl SchemeKind {
    pub const ALL: [SchemeKind; 3] = [SchemeKind::FirstOrder, SchemeKind::Lienard, SchemeKind::Kinetic];

    pub fn name(self) -> &'static str {
        match self {
            SchemeKind::FirstOrder => "first-order",
            SchemeKind::Lienard => "lienard",
            SchemeKind::Kinetic => "kinetic",
        }
    }
}

impl fmt::Display for SchemeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SchemeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "first-order" | "first_order" | "firstorder" => Ok(SchemeKind::FirstOrder),
            "lienard" | "liénard" => Ok(SchemeKind::Lienard),
            "kinetic" => Ok(SchemeKind::Kinetic),
            other => Err(Error::InvalidConfig(format!("unknown scheme `{other}`"))),
        }
    }
}

/// Scheme-specific companion of `u`.
#[derive(Debug, Clone, PartialEq)]
pub enum Auxiliary {
    /// `v` of the first-order or Liénard formulation.
    Velocity(Vec<f64>),
    /// Left-moving `r` and right-moving `s`, `u = r + s`.
    Diagonal { r: Vec<f64>, s: Vec<f64> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimState {
    pub kind: SchemeKind,
    pub u: Vec<f64>,
    pub aux: Auxiliary,
    pub t: f64,
    pub step: usize,
}

impl SimState {
    pub fn velocity(&self) -> Option<&[f64]> {
        match &self.aux {
            Auxiliary::Velocity(v) => Some(v),
            Auxiliary::Diagonal { .. } => None,
        }
    }

    pub fn diagonal(&self) -> Option<(&[f64], &[f64])> {
        match &self.aux {
            Auxiliary::Diagonal { r, s } => Some((r, s)),
            Auxiliary::Velocity(_) => None,
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) enum Operator {
    Tridiagonal(TridiagonalLu),
    Banded(BandedLu),
}

/// Factored left-hand side plus the coefficients that built it.
#[derive(Debug, Clone)]
pub struct SchemeMatrices {
    pub kind: SchemeKind,
    /// Diffusion (or transport) number of the scheme.
    pub alpha: f64,
    /// Relaxation number of the scheme.
    pub beta: f64,
    pub(crate) operator: Operator,
}

/// Checks the scheme can run on this model and regime.
pub fn check_regime(kind: SchemeKind, model: &Reaction, params: &ModelParams) -> Result<()> {
    if params.tau <= 0.0 {
        return Err(Error::InvalidConfig("the hyperbolic schemes need tau > 0".into()));
    }
    if kind == SchemeKind::Kinetic && params.sigma != params.tau {
        return Err(Error::WrongRegime { sigma: params.sigma, tau: params.tau });
    }
    if model.is_discontinuous() && params.sigma != 0.0 {
        return Err(Error::InvalidConfig(
            "a discontinuous reaction is only supported with sigma = 0".into(),
        ));
    }
    Ok(())
}

impl SchemeMatrices {
    pub fn build(kind: SchemeKind, params: &ModelParams, grid: &Grid) -> Result<Self> {
        if params.tau <= 0.0 {
            return Err(Error::InvalidConfig("the hyperbolic schemes need tau > 0".into()));
        }
        let n = grid.nodes;
        let dx2 = grid.dx * grid.dx;
        match kind {
            SchemeKind::FirstOrder => {
                let alpha = params.a * grid.dt / (params.tau * dx2);
                let beta = grid.dt / params.tau;
                let gamma = alpha * grid.dt / (1.0 + beta);
                let operator = Operator::Tridiagonal(neumann_helmholtz(n, gamma)?);
                Ok(Self { kind, alpha, beta, operator })
            }
            SchemeKind::Lienard => {
                let alpha = params.a * grid.dt / dx2;
                let beta = grid.dt / params.tau;
                let gamma = alpha * beta / (1.0 + beta);
                let operator = Operator::Tridiagonal(neumann_helmholtz(n, gamma)?);
                Ok(Self { kind, alpha, beta, operator })
            }
            SchemeKind::Kinetic => {
                let speed = (params.a / params.tau).sqrt();
                let alpha = speed * grid.dt / grid.dx;
                let beta = grid.dt / (2.0 * params.tau);
                let operator = Operator::Banded(BandedLu::factor(kinetic_matrix(n, alpha, beta))?);
                Ok(Self { kind, alpha, beta, operator })
            }
        }
    }

    pub(crate) fn solve_in_place(&self, rhs: &mut [f64]) {
        match &self.operator {
            Operator::Tridiagonal(lu) => lu.solve_in_place(rhs),
            Operator::Banded(lu) => lu.solve_in_place(rhs),
        }
    }
}

/// `I − γΔ` with mirror ghosts folded into the end rows.
fn neumann_helmholtz(n: usize, gamma: f64) -> Result<TridiagonalLu> {
    let (sub, diag, sup) = neumann_helmholtz_bands(n, gamma);
    TridiagonalLu::factor(&sub, &diag, &sup)
}

pub(crate) fn neumann_helmholtz_bands(n: usize, gamma: f64) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let mut diag = vec![1.0 + 2.0 * gamma; n];
    diag[0] = 1.0 + gamma;
    diag[n - 1] = 1.0 + gamma;
    let mut sub = vec![-gamma; n];
    sub[0] = 0.0;
    let mut sup = vec![-gamma; n];
    sup[n - 1] = 0.0;
    (sub, diag, sup)
}

/// Interleaved `(r₀, s₀, r₁, s₁, …)` operator; wall reflection `r_J := s_{J−1}`,
/// `s_{−1} := r₀`.
pub(crate) fn kinetic_matrix(n: usize, alpha: f64, beta: f64) -> BandedMatrix {
    let mut m = BandedMatrix::zeros(2 * n, 2, 2);
    for j in 0..n {
        let (r, s) = (2 * j, 2 * j + 1);
        m.add(r, r, 1.0 + alpha + beta);
        m.add(r, s, -beta);
        if j + 1 < n {
            m.add(r, r + 2, -alpha);
        } else {
            m.add(r, s, -alpha);
        }
        m.add(s, s, 1.0 + alpha + beta);
        m.add(s, r, -beta);
        if j > 0 {
            m.add(s, s - 2, -alpha);
        } else {
            m.add(s, r, -alpha);
        }
    }
    m
}

/// State at rest: `u_t = 0` in each formulation.
pub fn init_profile(
    kind: SchemeKind,
    source: &impl ReactionTerm,
    params: &ModelParams,
    u: Vec<f64>,
) -> SimState {
    let aux = match kind {
        SchemeKind::FirstOrder => Auxiliary::Velocity(vec![0.0; u.len()]),
        SchemeKind::Lienard => {
            Auxiliary::Velocity(u.iter().map(|&x| x - params.sigma * source.f(x)).collect())
        }
        SchemeKind::Kinetic => {
            let half: Vec<f64> = u.iter().map(|x| 0.5 * x).collect();
            Auxiliary::Diagonal { r: half.clone(), s: half }
        }
    };
    SimState { kind, u, aux, t: 0.0, step: 0 }
}

/// Step from 1 to 0 at `x = L/2`.
pub fn riemann_datum(grid: &Grid) -> Vec<f64> {
    let mid = 0.5 * grid.length;
    (0..grid.nodes).map(|j| if grid.x(j) < mid { 1.0 } else { 0.0 }).collect()
}

pub fn init_riemann(
    kind: SchemeKind,
    source: &impl ReactionTerm,
    params: &ModelParams,
    grid: &Grid,
) -> SimState {
    init_profile(kind, source, params, riemann_datum(grid))
}

/// Advances `state` by one `dt` with the scheme it was built for.
pub fn step(
    state: &mut SimState,
    source: &impl ReactionTerm,
    params: &ModelParams,
    grid: &Grid,
    matrices: &SchemeMatrices,
) -> Result<()> {
    match state.kind {
        SchemeKind::FirstOrder => step_first_order(state, source, params, grid, matrices),
        SchemeKind::Lienard => step_lienard(state, source, params, grid, matrices),
        SchemeKind::Kinetic => step_kinetic(state, source, params, grid, matrices),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    pub step: usize,
    pub t: f64,
    pub u: Vec<f64>,
}

/// Steps between recorded frames when none is given: 0.1 time units.
pub fn default_frame_stride(grid: &Grid) -> usize {
    ((0.1 / grid.dt).round() as usize).max(1)
}

/// Riemann run over `[0, T]`, recording `u` at step 0, every `frame_stride`
/// steps and at the final step.
pub fn run(
    kind: SchemeKind,
    model: &Reaction,
    params: &ModelParams,
    grid: &Grid,
    frame_stride: usize,
) -> Result<Vec<Frame>> {
    check_regime(kind, model, params)?;
    let state = init_riemann(kind, model, params, grid);
    run_from(state, model, params, grid, frame_stride)
}

/// Like [`run`] from an arbitrary initial state.
pub fn run_from(
    mut state: SimState,
    source: &impl ReactionTerm,
    params: &ModelParams,
    grid: &Grid,
    frame_stride: usize,
) -> Result<Vec<Frame>> {
    if frame_stride == 0 {
        return Err(Error::InvalidConfig("frame stride must be positive".into()));
    }
    let matrices = SchemeMatrices::build(state.kind, params, grid)?;
    let snapshot = |s: &SimState| Frame { step: s.step, t: s.t, u: s.u.clone() };
    let mut frames = vec![snapshot(&state)];
    for n in 1..=grid.steps {
        step(&mut state, source, params, grid, &matrices)?;
        if n % frame_stride == 0 || n == grid.steps {
            frames.push(snapshot(&state));
        }
    }
    Ok(frames)
}

/// Pointwise `u_t` as each formulation represents it.
pub fn time_derivative(
    state: &SimState,
    source: &impl ReactionTerm,
    params: &ModelParams,
    grid: &Grid,
) -> Vec<f64> {
    match (&state.aux, state.kind) {
        (Auxiliary::Velocity(v), SchemeKind::Lienard) => state
            .u
            .iter()
            .zip(v)
            .map(|(&u, &v)| (v - u + params.sigma * source.f(u)) / params.tau)
            .collect(),
        (Auxiliary::Velocity(v), _) => v.clone(),
        (Auxiliary::Diagonal { r, s }, _) => {
            let speed = (params.a / params.tau).sqrt();
            let flux: Vec<f64> = r.iter().zip(s).map(|(r, s)| speed * (s - r)).collect();
            let n = flux.len();
            (0..n)
                .map(|j| {
                    let dflux = if j == 0 {
                        (flux[1] - flux[0]) / grid.dx
                    } else if j == n - 1 {
                        (flux[n - 1] - flux[n - 2]) / grid.dx
                    } else {
                        (flux[j + 1] - flux[j - 1]) / (2.0 * grid.dx)
                    };
                    source.f(state.u[j]) - dflux
                })
                .collect()
        }
    }
}

/// `Σ [ (τ/2) u_t² + W(u) ]` with trapezoidal weights plus `Σ (a/2)(Δ₊u/dx)² dx`.
pub fn discrete_energy(
    state: &SimState,
    source: &impl ReactionTerm,
    params: &ModelParams,
    grid: &Grid,
) -> f64 {
    let ut = time_derivative(state, source, params, grid);
    let n = state.u.len();
    let local: f64 = (0..n)
        .map(|j| {
            let weight = if j == 0 || j == n - 1 { 0.5 } else { 1.0 };
            weight * (0.5 * params.tau * ut[j] * ut[j] + source.potential(state.u[j]))
        })
        .sum();
    let gradient: f64 = state
        .u
        .windows(2)
        .map(|w| {
            let g = (w[1] - w[0]) / grid.dx;
            0.5 * params.a * g * g
        })
        .sum();
    grid.dx * (local + gradient)
}
