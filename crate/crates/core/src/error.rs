use thiserror::Error;

use crate::shooting::Side;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("derivative of the piecewise affine reaction requested at its jump u = {alpha}")]
    EvaluationAtJump { alpha: f64 },
    #[error("potential wells differ in depth: W(1) - W(0) = {gap:e}")]
    NotEqualDepth { gap: f64 },
    #[error("wave operator degenerate: a - tau c^2 = {value:e} <= 0")]
    DegenerateWaveOperator { value: f64 },
    #[error("linearization at u = {ubar} has complex roots (discriminant {discriminant:e})")]
    ComplexRoots { ubar: f64, discriminant: f64 },
    #[error("{side:?} manifold reached v = 0 at phi = {phi} before the matching point")]
    EarlyZeroCrossing { side: Side, phi: f64 },
    #[error("mismatch has the same sign at both bracket ends [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },
    #[error("bisection did not reach tolerance after {iterations} iterations")]
    NonConvergence { iterations: usize },
    #[error("zero pivot in row {row} while factoring")]
    SingularMatrix { row: usize },
    #[error("non-finite value at step {step}")]
    BlowUp { step: usize },
    #[error("kinetic scheme requires sigma == tau (got sigma = {sigma}, tau = {tau})")]
    WrongRegime { sigma: f64, tau: f64 },
    #[error("frame never crosses threshold {theta}")]
    NoCrossing { theta: f64 },
    #[error("frame crosses threshold {theta} more than once (first at {first}, again at {again})")]
    MultipleCrossings { theta: f64, first: usize, again: usize },
    #[error("asymptotic jump too small: {jump:e}")]
    ZeroJump { jump: f64 },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code: 1 for rejected input, 2 for numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BlowUp { .. }
            | Error::NonConvergence { .. }
            | Error::NoSignChange { .. }
            | Error::EarlyZeroCrossing { .. }
            | Error::DegenerateWaveOperator { .. }
            | Error::ComplexRoots { .. }
            | Error::NoCrossing { .. }
            | Error::MultipleCrossings { .. }
            | Error::ZeroJump { .. }
            | Error::SingularMatrix { .. } => 2,
            _ => 1,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
