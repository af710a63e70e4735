//! Spectral quantities, GK convergence-factor bounds, the expected factors of
//! GRK/RGRK, and a-posteriori checks of recorded runs against them.
//!
//! Singular values come from a full SVD computed in `f64` whatever the scalar
//! type of the matrix; results are converted back. Desk scale only: both
//! [`lambda_min_pos`] and [`min_norm_solution`] refuse matrices with
//! `min(m, n) > SVD_SIZE_CAP`.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::io::Problem;
use crate::linalg::{max_abs, sq_distance, sq_norm, MatrixHandle};
use crate::scalar::Scalar;
use crate::solvers::{check_theta, Method, SolveReport, TraceLevel};

pub const SVD_SIZE_CAP: usize = 2000;

/// Relative slack on the per-step contraction and envelope checks.
pub const CONTRACTION_SLACK: f64 = 1e-10;
/// Relative tolerance of the Pythagoras identity check.
pub const PYTHAGORAS_TOL: f64 = 1e-10;
/// Tolerance of the zeroed-row check, scaled by ‖b‖_∞.
pub const ZEROED_ROW_TOL: f64 = 1e-12;
/// Relative slack on monotonicity: a step along a row whose residual is
/// already at rounding level may move the error by an ulp either way.
pub const MONOTONE_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralInfo<T> {
    /// Smallest positive eigenvalue of AᵀA, i.e. σ_rank².
    pub lambda_min_pos: T,
    pub rank: usize,
    pub sigma_max: T,
    pub sigma_min_pos: T,
    /// All singular values, descending.
    pub singular_values: Vec<T>,
}

impl<T: Scalar> SpectralInfo<T> {
    /// σ_max / σ_min over the retained (positive) singular values.
    pub fn condition_number(&self) -> T {
        self.sigma_max / self.sigma_min_pos
    }

    pub fn is_rank_deficient(&self) -> bool {
        self.rank < self.singular_values.len()
    }
}

fn check_svd_size<T: Scalar>(a: &MatrixHandle<T>) -> Result<()> {
    let size = a.rows().min(a.cols());
    if size > SVD_SIZE_CAP {
        return Err(Error::Domain(format!(
            "full SVD limited to min(m, n) <= {SVD_SIZE_CAP}, got {size}"
        )));
    }
    Ok(())
}

fn to_nalgebra<T: Scalar>(a: &MatrixHandle<T>) -> DMatrix<f64> {
    let values: Vec<f64> = a.to_row_major().into_iter().map(Scalar::as_f64).collect();
    DMatrix::from_row_slice(a.rows(), a.cols(), &values)
}

/// Numerical rank: count of σ > σ_max·max(m, n)·ε.
fn rank_of<T: Scalar>(sigma: &[f64], m: usize, n: usize) -> usize {
    let sigma_max = sigma.first().copied().unwrap_or(0.0);
    let cutoff = sigma_max * m.max(n) as f64 * T::epsilon().as_f64();
    sigma.iter().filter(|&&s| s > cutoff).count()
}

fn sorted_desc(values: impl Iterator<Item = f64>) -> Vec<f64> {
    let mut v: Vec<f64> = values.collect();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

pub fn lambda_min_pos<T: Scalar>(a: &MatrixHandle<T>) -> Result<SpectralInfo<T>> {
    check_svd_size(a)?;
    let sigma = sorted_desc(to_nalgebra(a).singular_values().iter().copied());
    let rank = rank_of::<T>(&sigma, a.rows(), a.cols());
    if rank == 0 {
        return Err(Error::Domain("matrix has no positive singular value".into()));
    }
    let sigma_min_pos = sigma[rank - 1];
    Ok(SpectralInfo {
        lambda_min_pos: T::of(sigma_min_pos * sigma_min_pos),
        rank,
        sigma_max: T::of(sigma[0]),
        sigma_min_pos: T::of(sigma_min_pos),
        singular_values: sigma.into_iter().map(T::of).collect(),
    })
}

/// Least-Euclidean-norm solution A†b through the SVD, with the rank cutoff of
/// [`lambda_min_pos`]. Fails when the result does not solve the system.
pub fn min_norm_solution<T: Scalar>(a: &MatrixHandle<T>, b: &[T]) -> Result<Vec<T>> {
    check_svd_size(a)?;
    if b.len() != a.rows() {
        return Err(Error::Shape(format!(
            "b has length {}, matrix has {} rows",
            b.len(),
            a.rows()
        )));
    }
    let svd = to_nalgebra(a).svd(true, true);
    let u = svd.u.as_ref().expect("U requested");
    let v_t = svd.v_t.as_ref().expect("Vᵀ requested");
    let sigma: Vec<f64> = svd.singular_values.iter().copied().collect();
    let rank = rank_of::<T>(&sorted_desc(sigma.iter().copied()), a.rows(), a.cols());
    let cutoff = sorted_desc(sigma.iter().copied())
        .get(rank.wrapping_sub(1))
        .copied()
        .unwrap_or(f64::INFINITY);

    let b64: Vec<f64> = b.iter().map(|v| v.as_f64()).collect();
    let mut x = vec![0.0f64; a.cols()];
    for (k, &s) in sigma.iter().enumerate() {
        if s < cutoff || s == 0.0 {
            continue;
        }
        let coef = u.column(k).iter().zip(&b64).map(|(p, q)| p * q).sum::<f64>() / s;
        for (xj, vj) in x.iter_mut().zip(v_t.row(k).iter()) {
            *xj += coef * vj;
        }
    }
    let x: Vec<T> = x.into_iter().map(T::of).collect();

    let r = a.residual(b, &x)?;
    let b_norm = sq_norm(b).sqrt().as_f64();
    let rel = sq_norm(&r).sqrt().as_f64() / b_norm.max(f64::MIN_POSITIVE);
    let tol = 1e-8f64.max(T::epsilon().as_f64() * 1e3);
    if b_norm > 0.0 && rel > tol {
        return Err(Error::Inconsistent(rel));
    }
    Ok(x)
}

/// Replaces the problem's known solution with A†b, the limit of every
/// Kaczmarz variant started in the row space (x₀ = 0).
pub fn with_min_norm_reference<T: Scalar>(problem: Problem<T>) -> Result<Problem<T>> {
    let x = min_norm_solution(&problem.matrix, &problem.rhs)?;
    let mut problem = problem;
    problem.x_star = Some(x);
    Ok(problem)
}

fn set_norm_sum<T: Scalar>(a: &MatrixHandle<T>, set: &[usize]) -> Result<T> {
    if set.is_empty() {
        return Err(Error::Contract("candidate set is empty".into()));
    }
    set.iter()
        .try_fold(T::zero(), |acc, &i| Ok(acc + a.row_sq_norm(i)?))
}

/// Precomputed λ_min(AᵀA) and row-norm data for evaluating bound factors.
#[derive(Debug, Clone)]
pub struct FactorContext<T> {
    pub lambda: T,
    pub rows: usize,
    pub frobenius_sq: T,
    pub min_row_sq_norm: T,
}

impl<T: Scalar> FactorContext<T> {
    pub fn new(a: &MatrixHandle<T>) -> Result<Self> {
        let lambda = lambda_min_pos(a)?.lambda_min_pos;
        Ok(Self::with_lambda(a, lambda))
    }

    pub fn with_lambda(a: &MatrixHandle<T>, lambda: T) -> Self {
        Self {
            lambda,
            rows: a.rows(),
            frobenius_sq: a.frobenius_sq(),
            min_row_sq_norm: a.min_row_sq_norm(),
        }
    }

    fn m(&self) -> T {
        T::of(self.rows as f64)
    }

    fn m_minus_one(&self) -> Result<T> {
        if self.rows < 2 {
            return Err(Error::Domain(
                "factor has an (m − 1) denominator; a one-row system converges in one step".into(),
            ));
        }
        Ok(T::of((self.rows - 1) as f64))
    }

    /// 1 − λ / (|R₀| · Σ_{R₀}‖A^(i)‖₂² · m)
    pub fn initial(&self, count: usize, norm_sum: T) -> T {
        T::one() - self.lambda / (T::of(count as f64) * norm_sum * self.m())
    }

    /// 1 − λ / (|R_k| · Σ_{R_k}‖A^(i)‖₂² · (m − 1))
    pub fn step(&self, count: usize, norm_sum: T) -> Result<T> {
        Ok(T::one() - self.lambda / (T::of(count as f64) * norm_sum * self.m_minus_one()?))
    }

    /// (1 − λ/(αβ(m − 1)))^(k−1) · initial factor
    pub fn envelope(&self, alpha: usize, beta: T, k: usize, r0_count: usize, r0_norm_sum: T) -> Result<T> {
        if k == 0 {
            return Err(Error::Domain("envelope is defined for k >= 1".into()));
        }
        let initial = self.initial(r0_count, r0_norm_sum);
        if k == 1 {
            return Ok(initial);
        }
        let per_step = T::one() - self.lambda / (T::of(alpha as f64) * beta * self.m_minus_one()?);
        Ok(per_step.powi((k - 1) as i32) * initial)
    }

    /// 1 − ½(1/(‖A‖_F² − min‖A^(i)‖₂²) + 1/‖A‖_F²)·λ
    pub fn grk_expected(&self) -> Result<T> {
        self.m_minus_one()?;
        let half = T::of(0.5);
        let f = self.frobenius_sq;
        Ok(T::one() - half * (T::one() / (f - self.min_row_sq_norm) + T::one() / f) * self.lambda)
    }

    /// 1 − (θ/(‖A‖_F² − min‖A^(i)‖₂²) + (1 − θ)/‖A‖_F²)·λ
    pub fn rgrk_expected(&self, theta: f64) -> Result<T> {
        check_theta(theta)?;
        self.m_minus_one()?;
        let theta = T::of(theta);
        let f = self.frobenius_sq;
        Ok(T::one() - (theta / (f - self.min_row_sq_norm) + (T::one() - theta) / f) * self.lambda)
    }

    /// The three factors bracketing the GK envelope rate:
    /// (1 − λ/(min‖A^(i)‖₂²(m−1)), 1 − λ/(αβ(m−1)), 1 − λ/(m‖A‖_F²(m−1))).
    pub fn rate_bracket(&self, alpha: usize, beta: T) -> Result<(T, T, T)> {
        let mm1 = self.m_minus_one()?;
        let one = T::one();
        Ok((
            one - self.lambda / (self.min_row_sq_norm * mm1),
            one - self.lambda / (T::of(alpha as f64) * beta * mm1),
            one - self.lambda / (self.m() * self.frobenius_sq * mm1),
        ))
    }
}

/// (min‖A^(i)‖₂²·(m − 1), ‖A‖_F² − min‖A^(i)‖₂², ‖A‖_F²): nondecreasing, last step strict.
pub fn row_norm_chain<T: Scalar>(a: &MatrixHandle<T>) -> Result<(T, T, T)> {
    if a.rows() < 2 {
        return Err(Error::Domain("needs at least two rows".into()));
    }
    let min = a.min_row_sq_norm();
    let f = a.frobenius_sq();
    Ok((min * T::of((a.rows() - 1) as f64), f - min, f))
}

pub fn gk_bound_initial<T: Scalar>(a: &MatrixHandle<T>, r0: &[usize]) -> Result<T> {
    let sum = set_norm_sum(a, r0)?;
    Ok(FactorContext::new(a)?.initial(r0.len(), sum))
}

pub fn gk_bound_step<T: Scalar>(a: &MatrixHandle<T>, rk: &[usize]) -> Result<T> {
    let sum = set_norm_sum(a, rk)?;
    if a.rows() < 2 {
        return Err(Error::Domain("step factor needs m >= 2".into()));
    }
    FactorContext::new(a)?.step(rk.len(), sum)
}

pub fn gk_bound_envelope<T: Scalar>(a: &MatrixHandle<T>, alpha: usize, beta: T, k: usize, r0: &[usize]) -> Result<T> {
    let sum = set_norm_sum(a, r0)?;
    FactorContext::new(a)?.envelope(alpha, beta, k, r0.len(), sum)
}

pub fn grk_expected_factor<T: Scalar>(a: &MatrixHandle<T>) -> Result<T> {
    if a.rows() < 2 {
        return Err(Error::Domain("needs at least two rows".into()));
    }
    FactorContext::new(a)?.grk_expected()
}

pub fn rgrk_expected_factor<T: Scalar>(a: &MatrixHandle<T>, theta: f64) -> Result<T> {
    check_theta(theta)?;
    if a.rows() < 2 {
        return Err(Error::Domain("needs at least two rows".into()));
    }
    FactorContext::new(a)?.rgrk_expected(theta)
}

/// Bound quantities for one recorded GK run.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub lambda_min: f64,
    pub rank: usize,
    /// rank < min(m, n); the condition number then uses the smallest positive σ.
    pub rank_deficient: bool,
    pub condition_number: f64,
    pub rows: usize,
    pub iterations: usize,
    /// max |R_k| over the run.
    pub alpha: usize,
    /// max Σ_{R_k} ‖A^(i)‖₂² over the run.
    pub beta: f64,
    pub min_row_sq_norm: f64,
    pub frobenius_sq: f64,
    pub factor_initial: f64,
    /// Per-iteration step factors for k ≥ 1; `None` when m = 1.
    pub factor_step: Option<Vec<f64>>,
    /// Envelope multiplier at the final iteration.
    pub factor_envelope: Option<f64>,
    pub grk_factor: Option<f64>,
    pub rgrk_factor: Option<f64>,
    pub theta: f64,
    /// `rate_bracket(alpha, beta)` when m ≥ 2.
    pub rate_bracket: Option<(f64, f64, f64)>,
}

/// Computes α, β and every factor for a run recorded with at least index tracing.
pub fn bound_report<T: Scalar>(problem: &Problem<T>, report: &SolveReport<T>, theta: f64) -> Result<BoundReport> {
    let a = &problem.matrix;
    if report.trace < TraceLevel::Indices {
        return Err(Error::Config("bound report needs an index trace".into()));
    }
    let trace = &report.index_trace;
    let first = trace
        .first()
        .ok_or_else(|| Error::Domain("run took no iterations".into()))?;
    let spectral = lambda_min_pos(a)?;
    let ctx = FactorContext::with_lambda(a, spectral.lambda_min_pos);
    let alpha = trace.iter().map(|t| t.candidates).max().unwrap_or(0);
    let beta = trace
        .iter()
        .map(|t| t.candidate_sq_norm_sum)
        .fold(T::zero(), T::max);
    let multi = a.rows() >= 2;
    let factor_step = if multi {
        Some(
            trace
                .iter()
                .skip(1)
                .map(|t| ctx.step(t.candidates, t.candidate_sq_norm_sum).map(Scalar::as_f64))
                .collect::<Result<Vec<_>>>()?,
        )
    } else {
        None
    };
    let k = trace.len();
    let factor_envelope = if multi || k == 1 {
        Some(ctx.envelope(alpha, beta, k, first.candidates, first.candidate_sq_norm_sum)?.as_f64())
    } else {
        None
    };
    Ok(BoundReport {
        lambda_min: spectral.lambda_min_pos.as_f64(),
        rank: spectral.rank,
        rank_deficient: spectral.is_rank_deficient(),
        condition_number: spectral.condition_number().as_f64(),
        rows: a.rows(),
        iterations: report.iterations,
        alpha,
        beta: beta.as_f64(),
        min_row_sq_norm: ctx.min_row_sq_norm.as_f64(),
        frobenius_sq: ctx.frobenius_sq.as_f64(),
        factor_initial: ctx.initial(first.candidates, first.candidate_sq_norm_sum).as_f64(),
        factor_step,
        factor_envelope,
        grk_factor: ctx.grk_expected().ok().map(Scalar::as_f64),
        rgrk_factor: ctx.rgrk_expected(theta).ok().map(Scalar::as_f64),
        theta,
        rate_bracket: ctx
            .rate_bracket(alpha, beta)
            .ok()
            .map(|(p, q, r)| (p.as_f64(), q.as_f64(), r.as_f64())),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum CheckStatus {
    Passed,
    /// First failing iteration.
    Failed { iteration: usize },
    Skipped { reason: String },
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub status: CheckStatus,
    /// Largest observed value of (measured − allowed); ≤ 0 means every step passed.
    pub worst_margin: f64,
    pub steps_checked: usize,
}

impl Check {
    fn skipped(name: &'static str, reason: &str) -> Self {
        Self {
            name,
            status: CheckStatus::Skipped {
                reason: reason.into(),
            },
            worst_margin: f64::NEG_INFINITY,
            steps_checked: 0,
        }
    }

    pub fn passed(&self) -> bool {
        !matches!(self.status, CheckStatus::Failed { .. })
    }
}

struct Tally {
    name: &'static str,
    worst: f64,
    first_failure: Option<usize>,
    steps: usize,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            worst: f64::NEG_INFINITY,
            first_failure: None,
            steps: 0,
        }
    }

    /// Records `measured ≤ allowed` at iteration `k`.
    fn record(&mut self, k: usize, measured: f64, allowed: f64) {
        let margin = measured - allowed;
        self.steps += 1;
        // NaN margins count as failures
        if !(margin <= 0.0) && self.first_failure.is_none() {
            self.first_failure = Some(k);
        }
        if margin > self.worst || margin.is_nan() {
            self.worst = margin;
        }
    }

    fn finish(self) -> Check {
        Check {
            name: self.name,
            status: match self.first_failure {
                Some(iteration) => CheckStatus::Failed { iteration },
                None => CheckStatus::Passed,
            },
            worst_margin: self.worst,
            steps_checked: self.steps,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Verification {
    pub checks: Vec<Check>,
}

impl Verification {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Replays a fully traced run against the problem's known solution x★.
///
/// Checks, per iteration: the Pythagoras identity
/// ‖x_{k+1}−x★‖² = ‖x_k−x★‖² − ‖x_{k+1}−x_k‖²; that the selected row's residual
/// vanishes after the step; that the error is non-increasing. For GK runs it
/// also checks the k = 0 factor, the per-step factors for k ≥ 1 and the
/// cumulative envelope. The GK bounds assume x★ = A†b and x₀ in the row space.
pub fn verify_run<T: Scalar>(problem: &Problem<T>, report: &SolveReport<T>) -> Result<Verification> {
    let factors = if report.method == Method::Gk {
        Some(FactorContext::new(&problem.matrix)?)
    } else {
        None
    };
    verify_run_with(problem, report, factors.as_ref())
}

/// [`verify_run`] with a precomputed factor context (GK checks are skipped without one).
pub fn verify_run_with<T: Scalar>(
    problem: &Problem<T>,
    report: &SolveReport<T>,
    factors: Option<&FactorContext<T>>,
) -> Result<Verification> {
    if report.trace != TraceLevel::Full || report.iterates.len() != report.iterations + 1 {
        return Err(Error::Config("verification needs a full trace".into()));
    }
    let x_star = problem
        .x_star
        .as_deref()
        .ok_or_else(|| Error::Config("verification needs a known solution".into()))?;
    let a = &problem.matrix;
    let b = &problem.rhs;
    let b_inf = max_abs(b).as_f64();
    let errors: Vec<f64> = report
        .iterates
        .iter()
        .map(|x| sq_distance(x, x_star).as_f64())
        .collect();

    let mut pythagoras = Tally::new("pythagoras");
    let mut zeroed = Tally::new("zeroed_row");
    let mut monotone = Tally::new("monotone_error");
    for (k, rec) in report.index_trace.iter().enumerate() {
        let (x, next) = (&report.iterates[k], &report.iterates[k + 1]);
        let step_sq = sq_distance(next, x).as_f64();
        let deviation = (errors[k + 1] - (errors[k] - step_sq)).abs();
        pythagoras.record(k, deviation, PYTHAGORAS_TOL * errors[k]);
        let r_i = (b[rec.chosen] - a.row(rec.chosen).dot(next)).abs().as_f64();
        zeroed.record(k, r_i, ZEROED_ROW_TOL * b_inf);
        monotone.record(k, errors[k + 1], (1.0 + MONOTONE_SLACK) * errors[k]);
    }
    let mut checks = vec![pythagoras.finish(), zeroed.finish(), monotone.finish()];

    const GK_CHECKS: [&str; 3] = ["gk_initial_factor", "gk_step_factor", "gk_envelope"];
    match (report.method, factors) {
        (Method::Gk, Some(ctx)) if !report.index_trace.is_empty() => {
            let trace = &report.index_trace;
            let e0 = errors[0];
            let mut initial = Tally::new(GK_CHECKS[0]);
            let f0 = ctx.initial(trace[0].candidates, trace[0].candidate_sq_norm_sum).as_f64();
            initial.record(0, errors[1], (f0 + CONTRACTION_SLACK) * e0);
            checks.push(initial.finish());

            if ctx.rows < 2 {
                checks.push(Check::skipped(GK_CHECKS[1], "m = 1"));
            } else {
                let mut step = Tally::new(GK_CHECKS[1]);
                for (k, rec) in trace.iter().enumerate().skip(1) {
                    let f = ctx.step(rec.candidates, rec.candidate_sq_norm_sum)?.as_f64();
                    step.record(k, errors[k + 1], (f + CONTRACTION_SLACK) * errors[k]);
                }
                checks.push(step.finish());
            }

            let alpha = trace.iter().map(|t| t.candidates).max().unwrap_or(1);
            let beta = trace
                .iter()
                .map(|t| t.candidate_sq_norm_sum)
                .fold(T::zero(), T::max);
            let mut envelope = Tally::new(GK_CHECKS[2]);
            for k in 1..=trace.len() {
                if ctx.rows < 2 && k > 1 {
                    break;
                }
                let env = ctx
                    .envelope(alpha, beta, k, trace[0].candidates, trace[0].candidate_sq_norm_sum)?
                    .as_f64();
                envelope.record(k, errors[k], (env + CONTRACTION_SLACK) * e0);
            }
            checks.push(envelope.finish());
        }
        (Method::Gk, Some(_)) => {
            checks.extend(GK_CHECKS.iter().map(|n| Check::skipped(n, "no iterations")));
        }
        (Method::Gk, None) => {
            checks.extend(GK_CHECKS.iter().map(|n| Check::skipped(n, "no factor context")));
        }
        _ => {
            checks.extend(GK_CHECKS.iter().map(|n| Check::skipped(n, "GK-specific bound")));
        }
    }
    Ok(Verification { checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[f64]]) -> MatrixHandle<f64> {
        MatrixHandle::from_rows(rows).unwrap()
    }

    fn identity(n: usize) -> MatrixHandle<f64> {
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        MatrixHandle::from_rows(&rows).unwrap()
    }

    #[test]
    fn spectral_examples() {
        let s = lambda_min_pos(&identity(2)).unwrap();
        assert!((s.lambda_min_pos - 1.0).abs() < 1e-14);
        assert_eq!(s.rank, 2);

        let s = lambda_min_pos(&m(&[&[2.0, 0.0]])).unwrap();
        assert!((s.lambda_min_pos - 4.0).abs() < 1e-14);
        assert_eq!(s.rank, 1);

        let s = lambda_min_pos(&m(&[&[1.0, 1.0], &[1.0, 1.0]])).unwrap();
        assert!((s.lambda_min_pos - 4.0).abs() < 1e-13);
        assert_eq!(s.rank, 1);
        assert!(s.is_rank_deficient());
    }

    #[test]
    fn min_norm_examples() {
        let x = min_norm_solution(&identity(2), &[1.0, 2.0]).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-14 && (x[1] - 2.0).abs() < 1e-14);

        let x = min_norm_solution(&m(&[&[1.0, 1.0]]), &[2.0]).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-14 && (x[1] - 1.0).abs() < 1e-14);

        let x = min_norm_solution(&m(&[&[1.0, 0.0], &[1.0, 0.0]]), &[3.0, 3.0]).unwrap();
        assert!((x[0] - 3.0).abs() < 1e-14 && x[1].abs() < 1e-14);

        let err = min_norm_solution(&m(&[&[1.0, 0.0], &[1.0, 0.0]]), &[3.0, 4.0]).unwrap_err();
        assert!(matches!(err, Error::Inconsistent(_)));
    }

    #[test]
    fn initial_factor_examples() {
        assert!((gk_bound_initial(&identity(2), &[0]).unwrap() - 0.5).abs() < 1e-15);
        for n in 2..6 {
            let all: Vec<usize> = (0..n).collect();
            let f = gk_bound_initial(&identity(n), &all).unwrap();
            assert!((f - (1.0 - (n as f64).powi(-3))).abs() < 1e-14);
            assert!(f < 1.0);
        }
    }

    #[test]
    fn step_factor_examples() {
        assert!(gk_bound_step(&identity(2), &[0]).unwrap().abs() < 1e-15);
        let d = m(&[&[1.0, 0.0], &[0.0, 2.0]]);
        assert!((gk_bound_step(&d, &[1]).unwrap() - 0.75).abs() < 1e-14);
        // growing the candidate set weakly increases the factor
        let a = identity(4);
        let f1 = gk_bound_step(&a, &[0]).unwrap();
        let f2 = gk_bound_step(&a, &[0, 1]).unwrap();
        let f3 = gk_bound_step(&a, &[0, 1, 2]).unwrap();
        assert!(f1 <= f2 && f2 <= f3);
        assert!(matches!(gk_bound_step(&m(&[&[1.0, 2.0]]), &[0]), Err(Error::Domain(_))));
    }

    #[test]
    fn envelope_examples() {
        let a = identity(2);
        let init = gk_bound_initial(&a, &[0]).unwrap();
        assert_eq!(gk_bound_envelope(&a, 1, 1.0, 1, &[0]).unwrap(), init);
        assert!(gk_bound_envelope(&a, 1, 1.0, 2, &[0]).unwrap().abs() < 1e-15);
        let row = m(&[&[1.0, 2.0]]);
        assert!(gk_bound_envelope(&row, 1, 5.0, 1, &[0]).is_ok());
        assert!(gk_bound_envelope(&row, 1, 5.0, 2, &[0]).is_err());
    }

    #[test]
    fn expected_factor_examples() {
        assert!((grk_expected_factor(&identity(2)).unwrap() - 0.25).abs() < 1e-15);
        assert!((grk_expected_factor(&identity(3)).unwrap() - 7.0 / 12.0).abs() < 1e-15);
        assert!((rgrk_expected_factor(&identity(2), 0.5).unwrap() - 0.25).abs() < 1e-15);
        assert!(rgrk_expected_factor(&identity(2), 1.0).unwrap().abs() < 1e-15);
        assert!((rgrk_expected_factor(&identity(2), 0.0).unwrap() - 0.5).abs() < 1e-15);
        assert!(matches!(rgrk_expected_factor(&identity(2), 2.0), Err(Error::Parameter(_))));
        assert!(matches!(grk_expected_factor(&m(&[&[1.0]])), Err(Error::Domain(_))));
    }

    #[test]
    fn row_norm_chain_on_small_matrix() {
        let a = m(&[&[1.0, 0.0], &[0.0, 2.0], &[1.0, 1.0]]);
        let (lo, mid, hi) = row_norm_chain(&a).unwrap();
        assert_eq!((lo, mid, hi), (2.0, 6.0, 7.0));
    }
}
