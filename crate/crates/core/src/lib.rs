//! Propagation speed of bistable fronts in hyperbolic reaction-diffusion equations
//!
//! ```text
//! τ u_tt + (u − σ f(u))_t = a u_xx + f(u),   0 ≤ σ ≤ τ
//! ```
//!
//! Three independent routes to the speed: closed forms ([`exact`]), phase-plane
//! shooting ([`shooting`]), and IMEX simulation ([`schemes`]) followed by
//! a dynamical estimate ([`estimators`]). [`experiment`] wires them into tables
//! and sweeps.

pub mod error;
pub mod estimators;
pub mod exact;
pub mod experiment;
pub mod linalg;
pub mod params;
pub mod quadrature;
pub mod reaction;
pub mod schemes;
pub mod shooting;

pub use error::{Error, Result};
pub use params::ModelParams;
pub use reaction::Reaction;
