use super::{Auxiliary, Grid, ReactionTerm, SchemeKind, SchemeMatrices, SimState};
use crate::error::{Error, Result};
use crate::params::ModelParams;

fn expect_kind(state: &SimState, matrices: &SchemeMatrices, kind: SchemeKind) {
    assert_eq!(state.kind, kind, "state built for another scheme");
    assert_eq!(matrices.kind, kind, "matrices built for another scheme");
}

fn finish(state: &mut SimState, grid: &Grid) -> Result<()> {
    state.step += 1;
    state.t = state.step as f64 * grid.dt;
    let finite = state.u.iter().all(|x| x.is_finite())
        && match &state.aux {
            Auxiliary::Velocity(v) => v.iter().all(|x| x.is_finite()),
            Auxiliary::Diagonal { r, s } => r.iter().chain(s).all(|x| x.is_finite()),
        };
    if finite {
        Ok(())
    } else {
        Err(Error::BlowUp { step: state.step })
    }
}

/// One step of the `(u, v)` reduction. Eliminating `v^{n+1} = (u^{n+1} − u^n)/dt`
/// leaves `(I − γΔ) u^{n+1} = u^n + dt/(1+β) [v^n + βf + σβ f′ v^n]`.
pub fn step_first_order(
    state: &mut SimState,
    source: &impl ReactionTerm,
    params: &ModelParams,
    grid: &Grid,
    matrices: &SchemeMatrices,
) -> Result<()> {
    expect_kind(state, matrices, SchemeKind::FirstOrder);
    let beta = matrices.beta;
    let scale = grid.dt / (1.0 + beta);
    let Auxiliary::Velocity(v) = &mut state.aux else {
        unreachable!("first-order state carries a velocity")
    };
    let mut next: Vec<f64> = state
        .u
        .iter()
        .zip(v.iter())
        .map(|(&u, &v)| {
            let mut forcing = v + beta * source.f(u);
            if params.sigma != 0.0 {
                forcing += params.sigma * beta * source.df(u) * v;
            }
            u + scale * forcing
        })
        .collect();
    matrices.solve_in_place(&mut next);
    for ((vj, &new), &old) in v.iter_mut().zip(&next).zip(&state.u) {
        *vj = (new - old) / grid.dt;
    }
    state.u = next;
    finish(state, grid)
}

/// One Liénard step: `(I − γΔ) u^{n+1} = [u^n + βσf + β(v^n + dt f)]/(1+β)` with
/// `γ = αβ/(1+β)`, then `v^{n+1} = v^n + dt f + αΔu^{n+1}`.
pub fn step_lienard(
    state: &mut SimState,
    source: &impl ReactionTerm,
    params: &ModelParams,
    grid: &Grid,
    matrices: &SchemeMatrices,
) -> Result<()> {
    expect_kind(state, matrices, SchemeKind::Lienard);
    let (alpha, beta) = (matrices.alpha, matrices.beta);
    let Auxiliary::Velocity(v) = &mut state.aux else {
        unreachable!("Liénard state carries a velocity")
    };
    let reaction: Vec<f64> = state.u.iter().map(|&u| source.f(u)).collect();
    let mut next: Vec<f64> = state
        .u
        .iter()
        .zip(v.iter())
        .zip(&reaction)
        .map(|((&u, &v), &f)| (u + beta * params.sigma * f + beta * (v + grid.dt * f)) / (1.0 + beta))
        .collect();
    matrices.solve_in_place(&mut next);
    let n = next.len();
    for j in 0..n {
        let left = next[j.saturating_sub(1)];
        let right = next[(j + 1).min(n - 1)];
        let laplacian = left - 2.0 * next[j] + right;
        v[j] += grid.dt * reaction[j] + alpha * laplacian;
    }
    state.u = next;
    finish(state, grid)
}

/// One kinetic step on the interleaved diagonal variables; `f(u^n) dt/2` feeds
/// both `r` and `s`.
pub fn step_kinetic(
    state: &mut SimState,
    source: &impl ReactionTerm,
    params: &ModelParams,
    grid: &Grid,
    matrices: &SchemeMatrices,
) -> Result<()> {
    expect_kind(state, matrices, SchemeKind::Kinetic);
    if params.sigma != params.tau {
        return Err(Error::WrongRegime { sigma: params.sigma, tau: params.tau });
    }
    let Auxiliary::Diagonal { r, s } = &mut state.aux else {
        unreachable!("kinetic state carries diagonal variables")
    };
    let n = state.u.len();
    let mut rhs = vec![0.0; 2 * n];
    for j in 0..n {
        let half = 0.5 * grid.dt * source.f(state.u[j]);
        rhs[2 * j] = r[j] + half;
        rhs[2 * j + 1] = s[j] + half;
    }
    matrices.solve_in_place(&mut rhs);
    for j in 0..n {
        r[j] = rhs[2 * j];
        s[j] = rhs[2 * j + 1];
        state.u[j] = r[j] + s[j];
    }
    finish(state, grid)
}
