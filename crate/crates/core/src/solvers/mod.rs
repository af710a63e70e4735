//! Kaczmarz row-selection strategies and the shared projection loop.

mod select;
mod solve;

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use select::{
    gk_candidate_set, gk_pick, grk_index_set, grk_threshold, rgrk_threshold, rk_pick,
    weighted_sample,
};
pub use solve::{kaczmarz_step, solve};

/// The generator used for every randomized choice in the crate.
pub type SolverRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SolverRng {
    SolverRng::seed_from_u64(seed)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    /// Randomized Kaczmarz: rows sampled with probability ∝ ‖A^(i)‖₂².
    Rk,
    /// Greedy randomized Kaczmarz.
    Grk,
    /// Relaxed greedy randomized Kaczmarz, parameterized by θ.
    Rgrk,
    /// Greedy Kaczmarz: maximum residual, then maximum distance.
    Gk,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Rk, Method::Grk, Method::Rgrk, Method::Gk];

    pub fn tag(self) -> &'static str {
        match self {
            Method::Rk => "RK",
            Method::Grk => "GRK",
            Method::Rgrk => "RGRK",
            Method::Gk => "GK",
        }
    }

    pub fn is_randomized(self) -> bool {
        self != Method::Gk
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "rk" => Ok(Method::Rk),
            "grk" => Ok(Method::Grk),
            "rgrk" => Ok(Method::Rgrk),
            "gk" => Ok(Method::Gk),
            other => Err(Error::Parameter(format!("unknown method '{other}'"))),
        }
    }
}

/// A row-selection rule plus its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Strategy {
    pub method: Method,
    /// Relaxation parameter; only read by RGRK.
    pub theta: f64,
    /// PRNG seed; ignored by GK.
    pub seed: u64,
}

impl Strategy {
    pub const DEFAULT_THETA: f64 = 1.0;

    pub fn new(method: Method, theta: f64, seed: u64) -> Result<Self> {
        let strategy = Self {
            method,
            theta,
            seed,
        };
        strategy.validate()?;
        Ok(strategy)
    }

    pub fn gk() -> Self {
        Self {
            method: Method::Gk,
            theta: Self::DEFAULT_THETA,
            seed: 0,
        }
    }

    pub fn grk(seed: u64) -> Self {
        Self {
            method: Method::Grk,
            theta: 0.5,
            seed,
        }
    }

    pub fn rgrk(theta: f64, seed: u64) -> Result<Self> {
        Self::new(Method::Rgrk, theta, seed)
    }

    pub fn rk(seed: u64) -> Self {
        Self {
            method: Method::Rk,
            theta: Self::DEFAULT_THETA,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_theta(self.theta)
    }
}

pub(crate) fn check_theta(theta: f64) -> Result<()> {
    if (0.0..=1.0).contains(&theta) {
        Ok(())
    } else {
        Err(Error::Parameter(format!("theta must lie in [0, 1], got {theta}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StopMode {
    /// RES = ‖x_k − x★‖₂² / ‖x★‖₂² against the problem's known solution.
    KnownSolution,
    /// ‖r_k‖₂ / ‖b‖₂.
    RelativeResidual,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TraceLevel {
    None,
    /// Per-iteration selection records.
    Indices,
    /// Selection records, candidate sets, iterates and norm histories.
    Full,
}

impl FromStr for TraceLevel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "none" => Ok(TraceLevel::None),
            "indices" => Ok(TraceLevel::Indices),
            "full" => Ok(TraceLevel::Full),
            other => Err(Error::Parameter(format!("unknown trace level '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveConfig {
    pub max_iters: usize,
    pub res_tol: f64,
    pub stop_mode: StopMode,
    pub trace: TraceLevel,
}

impl Default for SolveConfig {
    fn default() -> Self {
        Self {
            max_iters: 200_000,
            res_tol: 1e-6,
            stop_mode: StopMode::KnownSolution,
            trace: TraceLevel::None,
        }
    }
}

impl SolveConfig {
    pub fn with_trace(mut self, trace: TraceLevel) -> Self {
        self.trace = trace;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_iters == 0 {
            return Err(Error::Config("max_iters must be at least 1".into()));
        }
        if !(self.res_tol > 0.0 && self.res_tol.is_finite()) {
            return Err(Error::Config(format!(
                "res_tol must be positive, got {}",
                self.res_tol
            )));
        }
        Ok(())
    }
}

/// What happened at iteration `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationRecord<T> {
    pub k: usize,
    /// Size of the candidate set (`U_k`, `V_k` or `R_k`; all rows for RK).
    pub candidates: usize,
    pub chosen: usize,
    /// Sum of ‖A^(i)‖₂² over the candidate set.
    pub candidate_sq_norm_sum: T,
}

#[derive(Debug, Clone)]
pub struct SolveReport<T> {
    pub method: Method,
    pub theta: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Stopping metric at exit: RES or relative residual, per `stop_mode`.
    pub final_res: T,
    pub stop_mode: StopMode,
    pub trace: TraceLevel,
    pub solution: Vec<T>,
    /// Setup plus iteration loop.
    pub elapsed: Duration,
    pub index_trace: Vec<IterationRecord<T>>,
    /// ‖x_k − x★‖₂² for k = 0..=iterations (full trace, known solution only).
    pub error_history: Vec<T>,
    /// ‖r_k‖₂ for k = 0..=iterations (full trace).
    pub residual_history: Vec<T>,
    /// x_0..=x_K (full trace).
    pub iterates: Vec<Vec<T>>,
    /// Candidate sets per iteration (full trace; empty for RK).
    pub candidate_sets: Vec<Vec<usize>>,
}
