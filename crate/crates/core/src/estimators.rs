//! Front speed from simulation frames.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::schemes::Frame;

/// Cells past the crossing inside which re-crossings are tolerated.
pub const CROSSING_BAND: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ScoutSpot,
    LeVequeYee,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpeedEstimate {
    pub value: f64,
    pub method: Method,
    /// Resolution `dx/(p·dt)` of scout&spot; zero for LeVeque–Yee.
    pub quantum: f64,
    /// Time interval the estimate draws on.
    pub window: (f64, f64),
    /// Spread of the per-frame LeVeque–Yee values; zero for scout&spot.
    pub std_dev: f64,
}

/// First index with `u_j < θ`, for fronts decreasing in `j`.
pub fn crossing_index(u: &[f64], theta: f64) -> Result<usize> {
    let first = u.iter().position(|&x| x < theta).ok_or(Error::NoCrossing { theta })?;
    if first == 0 {
        return Err(Error::NoCrossing { theta });
    }
    if let Some(offset) = u[first + CROSSING_BAND.min(u.len() - first)..]
        .iter()
        .position(|&x| x >= theta)
    {
        let again = first + CROSSING_BAND + offset;
        return Err(Error::MultipleCrossings { theta, first, again });
    }
    Ok(first)
}

/// Scout&spot: displacement of the `θ`-crossing between frames `p` steps apart.
pub fn scout_and_spot(
    frame_a: &[f64],
    frame_b: &[f64],
    theta: f64,
    dx: f64,
    dt: f64,
    p: usize,
) -> Result<SpeedEstimate> {
    if p == 0 {
        return Err(Error::InvalidConfig("scout&spot needs p > 0".into()));
    }
    let ja = crossing_index(frame_a, theta)? as f64;
    let jb = crossing_index(frame_b, theta)? as f64;
    let elapsed = p as f64 * dt;
    Ok(SpeedEstimate {
        value: (jb - ja) * dx / elapsed,
        method: Method::ScoutSpot,
        quantum: dx / elapsed,
        window: (0.0, elapsed),
        std_dev: 0.0,
    })
}

/// LeVeque–Yee speed between consecutive states: `Σ (uⁿ − uⁿ⁺¹) dx / (dt·[φ])`.
pub fn leveque_yee_step(u_n: &[f64], u_np1: &[f64], jump: f64, dx: f64, dt: f64) -> Result<f64> {
    if jump.abs() < 1e-12 {
        return Err(Error::ZeroJump { jump });
    }
    let sum: f64 = u_n.iter().zip(u_np1).map(|(a, b)| a - b).sum();
    Ok(sum * dx / (dt * jump))
}

/// Mean and spread of LeVeque–Yee values over consecutive frames with both
/// times in `window`; each pair is scaled by its own time gap.
pub fn leveque_yee_series(frames: &[Frame], jump: f64, dx: f64, window: (f64, f64)) -> Result<SpeedEstimate> {
    let slack = 1e-9 * window.1.abs().max(1.0);
    let inside: Vec<&Frame> = frames
        .iter()
        .filter(|f| f.t >= window.0 - slack && f.t <= window.1 + slack)
        .collect();
    if inside.len() < 2 {
        return Err(Error::InvalidConfig(format!(
            "LeVeque–Yee needs at least two frames in [{}, {}]",
            window.0, window.1
        )));
    }
    let values = inside
        .windows(2)
        .map(|w| leveque_yee_step(&w[0].u, &w[1].u, jump, dx, w[1].t - w[0].t))
        .collect::<Result<Vec<f64>>>()?;
    let count = values.len() as f64;
    let mean = values.iter().sum::<f64>() / count;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / count;
    Ok(SpeedEstimate {
        value: mean,
        method: Method::LeVequeYee,
        quantum: 0.0,
        window: (inside[0].t, inside[inside.len() - 1].t),
        std_dev: var.sqrt(),
    })
}
