//! Orchestration: closed-form tables, shooting, simulation, estimation and sweeps.
//!
//! Independent jobs fan out over rayon and are collected in input order, so a
//! given configuration always produces the same rows.

mod config;
mod output;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use config::{ExperimentConfig, Family};
pub use output::{read_frames, write_csv, write_frames, write_state};

use crate::error::{Error, Result};
use crate::estimators::{leveque_yee_series, scout_and_spot, SpeedEstimate};
use crate::exact::{damped_cubic_speed, parabolic_cubic_speed, pwl_speed};
use crate::params::ModelParams;
use crate::schemes::{run, Frame, SchemeKind};
use crate::shooting::{find_speed, ShootingConfig};

/// Jump `φ₊ − φ₋` of the simulated `1 → 0` fronts.
pub const FRONT_JUMP: f64 = -1.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExactRow {
    pub alpha: f64,
    pub c0: f64,
    pub c_tau: f64,
    pub c_pwl: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShootRow {
    pub alpha: f64,
    pub c_star: f64,
    pub iterations: usize,
    pub mismatch: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorRow {
    pub alpha: f64,
    pub c_ex: f64,
    pub scheme: SchemeKind,
    pub c_ss: f64,
    #[serde(rename = "E_ss")]
    pub e_ss: f64,
    pub c_ly: f64,
    #[serde(rename = "E_ly")]
    pub e_ly: f64,
}

impl ErrorRow {
    pub fn new(alpha: f64, c_ex: f64, scheme: SchemeKind, c_ss: f64, c_ly: f64) -> Self {
        Self {
            alpha,
            c_ex,
            scheme,
            c_ss,
            e_ss: relative_error(c_ss, c_ex),
            c_ly,
            e_ly: relative_error(c_ly, c_ex),
        }
    }
}

pub fn relative_error(value: f64, reference: f64) -> f64 {
    (value - reference).abs() / reference.abs()
}

/// Speeds against `α` for the three model classes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpeedRow {
    pub alpha: f64,
    pub c_parabolic: f64,
    pub c_damped: f64,
    pub c_relaxation: f64,
    pub c_pwl: f64,
}

/// Shooter error against the closed form at one `du`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrderRow {
    pub alpha: f64,
    pub du: f64,
    pub c_star: f64,
    pub c_exact: f64,
    #[serde(rename = "E")]
    pub error: f64,
    pub error_over_du: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimateRow {
    pub method: &'static str,
    pub value: f64,
    pub quantum: f64,
    pub t_start: f64,
    pub t_end: f64,
    pub std_dev: f64,
}

impl From<&SpeedEstimate> for EstimateRow {
    fn from(e: &SpeedEstimate) -> Self {
        let method = match e.method {
            crate::estimators::Method::ScoutSpot => "scout-spot",
            crate::estimators::Method::LeVequeYee => "leveque-yee",
        };
        Self { method, value: e.value, quantum: e.quantum, t_start: e.window.0, t_end: e.window.1, std_dev: e.std_dev }
    }
}

/// Reference experiments: damped cubic, damped piecewise affine, relaxed cubic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TableKind {
    A,
    Apwl,
    B,
}

impl TableKind {
    pub const ALPHAS: [f64; 3] = [0.125, 0.25, 0.375];

    /// Applies the table's model, regime and scheme list to `base`.
    pub fn configure(self, base: &ExperimentConfig) -> ExperimentConfig {
        let mut c = base.clone();
        c.tau = 1.0;
        c.theta = None;
        match self {
            TableKind::A => {
                c.family = Family::Cubic;
                c.sigma = 0.0;
                c.schemes = vec![SchemeKind::FirstOrder, SchemeKind::Lienard];
            }
            TableKind::Apwl => {
                c.family = Family::Pwl;
                c.sigma = 0.0;
                c.schemes = vec![SchemeKind::FirstOrder, SchemeKind::Lienard];
            }
            TableKind::B => {
                c.family = Family::Cubic;
                c.sigma = 1.0;
                c.schemes = SchemeKind::ALL.to_vec();
            }
        }
        c
    }
}

impl fmt::Display for TableKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableKind::A => "A",
            TableKind::Apwl => "Apwl",
            TableKind::B => "B",
        })
    }
}

impl FromStr for TableKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "a" => Ok(TableKind::A),
            "apwl" => Ok(TableKind::Apwl),
            "b" => Ok(TableKind::B),
            other => Err(Error::InvalidConfig(format!("unknown table `{other}` (expected A, Apwl or B)"))),
        }
    }
}

pub fn exact_rows(config: &ExperimentConfig) -> Vec<ExactRow> {
    let (a, k, tau, sigma) = (config.a, config.strength, config.tau, config.sigma);
    config
        .alphas
        .iter()
        .map(|&alpha| ExactRow {
            alpha,
            c0: parabolic_cubic_speed(a, k, alpha),
            c_tau: damped_cubic_speed(a, k, alpha, tau),
            c_pwl: pwl_speed(a, k, alpha, sigma, tau),
        })
        .collect()
}

pub fn shoot_rows(config: &ExperimentConfig) -> Result<Vec<ShootRow>> {
    let params = config.params()?;
    let shooting = config.shooting();
    config
        .alphas
        .par_iter()
        .map(|&alpha| {
            let result = find_speed(&config.model_at(alpha)?, &params, &shooting)?;
            Ok(ShootRow {
                alpha,
                c_star: result.c_star,
                iterations: result.iterations,
                mismatch: result.final_mismatch,
            })
        })
        .collect()
}

/// Frames of one Riemann run of `scheme` with the configured model at `config.alpha`.
pub fn simulate(config: &ExperimentConfig, scheme: SchemeKind) -> Result<Vec<Frame>> {
    let grid = config.grid()?;
    run(scheme, &config.model()?, &config.params()?, &grid, config.stride(&grid))
}

/// Scout&spot between the frames `p` steps before the last and the last, and
/// LeVeque–Yee over the configured window.
pub fn estimate(frames: &[Frame], config: &ExperimentConfig, theta: f64) -> Result<(SpeedEstimate, SpeedEstimate)> {
    let grid = config.grid()?;
    let last = frames.last().ok_or_else(|| Error::InvalidConfig("no frames to estimate from".into()))?;
    let p = config.p_steps(&grid);
    let t_a = last.t - p as f64 * grid.dt;
    let first = frames
        .iter()
        .find(|f| (f.t - t_a).abs() <= 0.5 * grid.dt)
        .ok_or_else(|| Error::InvalidConfig(format!("no frame recorded at t = {t_a}; adjust p or frame_stride")))?;
    let ss = scout_and_spot(&first.u, &last.u, theta, grid.dx, grid.dt, p)?;
    let ss = SpeedEstimate { window: (first.t, last.t), ..ss };
    let ly = leveque_yee_series(frames, FRONT_JUMP, grid.dx, config.window(&grid))?;
    Ok((ss, ly))
}

/// Reference speed: closed form where one exists, otherwise the shooter.
pub fn reference_speed(config: &ExperimentConfig, alpha: f64) -> Result<f64> {
    let (a, k, tau, sigma) = (config.a, config.strength, config.tau, config.sigma);
    match config.family {
        Family::Pwl => Ok(pwl_speed(a, k, alpha, sigma, tau)),
        Family::Cubic if sigma == 0.0 => Ok(damped_cubic_speed(a, k, alpha, tau)),
        Family::Cubic => {
            Ok(find_speed(&config.model_at(alpha)?, &config.params()?, &ShootingConfig::default())?.c_star)
        }
    }
}

/// One row per `(α, scheme)` cell of the chosen table, in that order.
pub fn table_rows(base: &ExperimentConfig, which: TableKind) -> Result<Vec<ErrorRow>> {
    let config = which.configure(base);
    config.validate()?;
    let references = TableKind::ALPHAS
        .par_iter()
        .map(|&alpha| reference_speed(&config, alpha))
        .collect::<Result<Vec<f64>>>()?;
    let jobs: Vec<(usize, SchemeKind)> = (0..TableKind::ALPHAS.len())
        .flat_map(|i| config.schemes.iter().map(move |&s| (i, s)))
        .collect();
    jobs.par_iter()
        .map(|&(i, scheme)| {
            let alpha = TableKind::ALPHAS[i];
            let cell = ExperimentConfig { alpha, ..config.clone() };
            let frames = simulate(&cell, scheme)?;
            let (ss, ly) = estimate(&frames, &cell, cell.theta_at(alpha))?;
            Ok(ErrorRow::new(alpha, references[i], scheme, ss.value, ly.value))
        })
        .collect()
}

/// Parabolic, damped, relaxed (shooter) and piecewise affine speeds over `config.alphas`.
pub fn speed_sweep(config: &ExperimentConfig) -> Result<Vec<SpeedRow>> {
    let relaxed = ModelParams::relaxed(config.tau, config.a)?;
    let shooting = config.shooting();
    let (a, k, tau, sigma) = (config.a, config.strength, config.tau, config.sigma);
    config
        .alphas
        .par_iter()
        .map(|&alpha| {
            let cubic = crate::reaction::Reaction::cubic(k, alpha)?;
            Ok(SpeedRow {
                alpha,
                c_parabolic: parabolic_cubic_speed(a, k, alpha),
                c_damped: damped_cubic_speed(a, k, alpha, tau),
                c_relaxation: find_speed(&cubic, &relaxed, &shooting)?.c_star,
                c_pwl: pwl_speed(a, k, alpha, sigma, tau),
            })
        })
        .collect()
}

/// Shooter error for the damped cubic over `config.alphas × config.du_grid`.
pub fn order_sweep(config: &ExperimentConfig) -> Result<Vec<OrderRow>> {
    let params = ModelParams::damped(config.tau, config.a)?;
    let jobs: Vec<(f64, f64)> = config
        .alphas
        .iter()
        .flat_map(|&alpha| config.du_grid.iter().map(move |&du| (alpha, du)))
        .collect();
    jobs.par_iter()
        .map(|&(alpha, du)| {
            let model = crate::reaction::Reaction::cubic(config.strength, alpha)?;
            let shooting = ShootingConfig { du, ..config.shooting() };
            shooting.validate()?;
            let c_star = find_speed(&model, &params, &shooting)?.c_star;
            let c_exact = damped_cubic_speed(config.a, config.strength, alpha, config.tau);
            let error = relative_error(c_star, c_exact);
            Ok(OrderRow { alpha, du, c_star, c_exact, error, error_over_du: error / du })
        })
        .collect()
}
