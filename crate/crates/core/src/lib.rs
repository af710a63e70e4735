//! Greedy Kaczmarz (GK) and its randomized comparators (GRK, RGRK, RK) for
//! consistent linear systems A·x = b, with spectral analysis tools that
//! evaluate and check the GK convergence bounds on recorded runs.
//!
//! Everything numeric is generic over [`Scalar`] (`f32` or `f64`); the
//! aliases below fix the scalar to `f64`.

pub mod analysis;
pub mod bench;
pub mod cli;
pub mod error;
pub mod io;
pub mod linalg;
pub mod scalar;
pub mod solvers;

pub use error::{Error, Result};
pub use io::Problem;
pub use linalg::MatrixHandle;
pub use scalar::Scalar;
pub use solvers::{
    kaczmarz_step, solve, IterationRecord, Method, SolveConfig, SolveReport, StopMode, Strategy,
    TraceLevel,
};

pub type Matrix = MatrixHandle<f64>;
pub type Problem64 = Problem<f64>;
pub type Report = SolveReport<f64>;
pub type Record = IterationRecord<f64>;
