use std::time::Instant;

use super::select::{
    cumulative, max_abs_set, max_distance, max_ratio, sample_by_residual, sample_cumulative,
    threshold_set,
};
use super::{
    seeded_rng, IterationRecord, Method, SolveConfig, SolveReport, SolverRng, StopMode, Strategy,
    TraceLevel,
};
use crate::error::{Error, Result};
use crate::io::Problem;
use crate::linalg::{sq_distance, sq_norm, MatrixHandle};
use crate::scalar::Scalar;

/// Projects `x` onto the hyperplane A^(i)·x = b^(i).
pub fn kaczmarz_step<T: Scalar>(x: &[T], a: &MatrixHandle<T>, b: &[T], i: usize) -> Result<Vec<T>> {
    a.check_system(b, x)?;
    if i >= a.rows() {
        return Err(Error::Index {
            index: i,
            len: a.rows(),
        });
    }
    let row = a.row(i);
    let r_i = b[i] - row.dot(x);
    let mut next = x.to_vec();
    row.axpy(r_i / a.cached_row_sq_norm(i), &mut next);
    Ok(next)
}

enum Selector<T> {
    Uniform { cumulative: Vec<T> },
    Threshold { norms: Vec<T>, inv_frob: T, theta: T, grk: bool },
    Greedy,
}

struct Selection<T> {
    chosen: usize,
    candidates: usize,
    norm_sum: T,
}

impl<T: Scalar> Selector<T> {
    fn new(a: &MatrixHandle<T>, strategy: &Strategy) -> Self {
        match strategy.method {
            Method::Rk => Selector::Uniform {
                cumulative: cumulative(&a.row_sq_norms()),
            },
            Method::Grk | Method::Rgrk => {
                let norms = a.row_sq_norms();
                Selector::Threshold {
                    inv_frob: T::one() / a.frobenius_sq(),
                    norms,
                    theta: T::of(strategy.theta),
                    grk: strategy.method == Method::Grk,
                }
            }
            Method::Gk => Selector::Greedy,
        }
    }

    /// `None` when the residual is exactly zero.
    #[inline]
    fn select(
        &self,
        a: &MatrixHandle<T>,
        r: &[T],
        set: &mut Vec<usize>,
        rng: &mut SolverRng,
    ) -> Result<Option<Selection<T>>> {
        match self {
            Selector::Greedy => {
                if max_abs_set(r, set).is_zero() {
                    return Ok(None);
                }
                let (chosen, norm_sum) = max_distance(r, a, set);
                Ok(Some(Selection {
                    chosen,
                    candidates: set.len(),
                    norm_sum,
                }))
            }
            Selector::Threshold {
                norms,
                inv_frob,
                theta,
                grk,
            } => {
                let r_sq = sq_norm(r);
                if r_sq.is_zero() {
                    return Ok(None);
                }
                let (best, argmax) = max_ratio(r, norms);
                let eps = if *grk {
                    T::of(0.5) * (best / r_sq + *inv_frob)
                } else {
                    *theta * (best / r_sq) + (T::one() - *theta) * *inv_frob
                };
                threshold_set(r, norms, eps * r_sq, argmax, set);
                let chosen = sample_by_residual(r, set, rng).ok_or_else(|| {
                    Error::Contract("greedy index set carries no residual weight".into())
                })?;
                Ok(Some(Selection {
                    chosen,
                    candidates: set.len(),
                    norm_sum: set.iter().fold(T::zero(), |acc, &i| acc + norms[i]),
                }))
            }
            Selector::Uniform { cumulative } => {
                if r.iter().all(|v| v.is_zero()) {
                    return Ok(None);
                }
                Ok(Some(Selection {
                    chosen: sample_cumulative(cumulative, rng),
                    candidates: a.rows(),
                    norm_sum: *cumulative.last().expect("nonempty"),
                }))
            }
        }
    }
}

/// Runs selection and projection until the stopping metric reaches
/// `config.res_tol` or `config.max_iters` steps have been taken. The residual
/// is recomputed as b − A·x_k at every iteration.
pub fn solve<T: Scalar>(problem: &Problem<T>, strategy: &Strategy, config: &SolveConfig) -> Result<SolveReport<T>> {
    strategy.validate()?;
    config.validate()?;
    problem.check_dims()?;
    let a = &problem.matrix;
    let b = &problem.rhs;
    let x_star = match (config.stop_mode, &problem.x_star) {
        (StopMode::KnownSolution, None) => {
            return Err(Error::Config(
                "RES stopping needs a known solution x★".into(),
            ))
        }
        (_, x_star) => x_star.as_deref(),
    };
    let tol = T::of(config.res_tol);
    let x_star_sq = x_star.map(sq_norm);
    let b_norm = sq_norm(b).sqrt();
    let full = config.trace == TraceLevel::Full;
    let keep_records = config.trace >= TraceLevel::Indices;

    let mut report = SolveReport {
        method: strategy.method,
        theta: strategy.theta,
        iterations: 0,
        converged: false,
        final_res: T::infinity(),
        stop_mode: config.stop_mode,
        trace: config.trace,
        solution: Vec::new(),
        elapsed: Default::default(),
        index_trace: Vec::new(),
        error_history: Vec::new(),
        residual_history: Vec::new(),
        iterates: Vec::new(),
        candidate_sets: Vec::new(),
    };

    let started = Instant::now();
    let selector = Selector::new(a, strategy);
    let mut rng = seeded_rng(strategy.seed);
    let mut x = problem.x0.clone();
    let mut r = vec![T::zero(); a.rows()];
    let mut set = Vec::with_capacity(a.rows());
    let mut k = 0;

    loop {
        let error_sq = x_star.map(|xs| sq_distance(&x, xs));
        if full {
            report.iterates.push(x.clone());
            if let Some(e) = error_sq {
                report.error_history.push(e);
            }
        }
        if config.stop_mode == StopMode::KnownSolution {
            let e = error_sq.expect("checked above");
            let xs_sq = x_star_sq.expect("checked above");
            let res = if xs_sq.is_zero() { e } else { e / xs_sq };
            report.final_res = res;
            if res <= tol {
                report.converged = true;
                if full {
                    a.residual_into(b, &x, &mut r);
                    report.residual_history.push(sq_norm(&r).sqrt());
                }
                break;
            }
        }

        a.residual_into(b, &x, &mut r);
        if full || config.stop_mode == StopMode::RelativeResidual {
            let r_norm = sq_norm(&r).sqrt();
            if full {
                report.residual_history.push(r_norm);
            }
            if config.stop_mode == StopMode::RelativeResidual {
                let rel = if b_norm.is_zero() { r_norm } else { r_norm / b_norm };
                report.final_res = rel;
                if rel <= tol {
                    report.converged = true;
                    break;
                }
            }
        }
        if k == config.max_iters {
            break;
        }

        let Some(sel) = selector.select(a, &r, &mut set, &mut rng)? else {
            // exact solution of the system reached
            report.converged = true;
            break;
        };
        let i = sel.chosen;
        a.row(i).axpy(r[i] / a.cached_row_sq_norm(i), &mut x);

        if keep_records {
            report.index_trace.push(IterationRecord {
                k,
                candidates: sel.candidates,
                chosen: i,
                candidate_sq_norm_sum: sel.norm_sum,
            });
        }
        if full && strategy.method != Method::Rk {
            report.candidate_sets.push(set.clone());
        }
        k += 1;
    }

    report.elapsed = started.elapsed();
    report.iterations = k;
    report.solution = x;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn identity(m: usize) -> MatrixHandle<f64> {
        let mut v = vec![0.0; m * m];
        for i in 0..m {
            v[i * m + i] = 1.0;
        }
        MatrixHandle::from_dense(m, m, v).unwrap()
    }

    #[test]
    fn step_examples() {
        let a = MatrixHandle::from_rows(&[[1.0, 0.0], [0.0, 1.0]]).unwrap();
        assert_eq!(kaczmarz_step(&[0.0, 0.0], &a, &[1.0, 5.0], 0).unwrap(), vec![1.0, 0.0]);
        assert_eq!(kaczmarz_step(&[1.0, 7.0], &a, &[1.0, 5.0], 0).unwrap(), vec![1.0, 7.0]);

        let a = MatrixHandle::from_rows(&[[3.0f64, 4.0]]).unwrap();
        let x = kaczmarz_step(&[0.0, 0.0], &a, &[10.0], 0).unwrap();
        // oracle: x + (b_i − a·x)/‖a‖² · a
        let expected = [10.0 / 25.0 * 3.0, 10.0 / 25.0 * 4.0];
        assert!((x[0] - expected[0]).abs() < 1e-15 && (x[1] - expected[1]).abs() < 1e-15);
        assert!((x[0] - 1.2).abs() < 1e-15 && (x[1] - 1.6).abs() < 1e-15);
        assert!(kaczmarz_step(&[0.0, 0.0], &a, &[10.0], 1).is_err());
    }

    #[test]
    fn gk_solves_identity_in_two_steps() {
        let problem = Problem::new(identity(2), vec![1.0, 2.0])
            .unwrap()
            .with_solution(vec![1.0, 2.0])
            .unwrap();
        let cfg = SolveConfig::default().with_trace(TraceLevel::Indices);
        let report = solve(&problem, &Strategy::gk(), &cfg).unwrap();
        assert!(report.converged);
        assert_eq!(report.iterations, 2);
        assert_eq!(report.solution, vec![1.0, 2.0]);
        let picks: Vec<usize> = report.index_trace.iter().map(|t| t.chosen).collect();
        assert_eq!(picks, vec![1, 0]);
    }

    #[test]
    fn start_at_solution_takes_no_steps() {
        let problem = Problem::new(identity(3), vec![1.0, 2.0, 3.0])
            .unwrap()
            .with_solution(vec![1.0, 2.0, 3.0])
            .unwrap()
            .with_start(vec![1.0, 2.0, 3.0])
            .unwrap();
        for strategy in [Strategy::gk(), Strategy::grk(1), Strategy::rk(1)] {
            let report = solve(&problem, &strategy, &SolveConfig::default()).unwrap();
            assert!(report.converged);
            assert_eq!(report.iterations, 0);
        }
    }

    #[test]
    fn iteration_cap_is_honored() {
        let a = MatrixHandle::from_rows(&[[1.0, 1.0], [1.0, -1.0], [2.0, 1.0]]).unwrap();
        let problem = Problem::new(a, vec![2.0, 0.0, 3.0])
            .unwrap()
            .with_solution(vec![1.0, 1.0])
            .unwrap();
        let cfg = SolveConfig {
            max_iters: 1,
            ..SolveConfig::default()
        };
        let report = solve(&problem, &Strategy::gk(), &cfg).unwrap();
        assert!(!report.converged);
        assert_eq!(report.iterations, 1);
    }

    #[test]
    fn known_solution_mode_requires_x_star() {
        let problem = Problem::new(identity(2), vec![1.0, 2.0]).unwrap();
        let err = solve(&problem, &Strategy::gk(), &SolveConfig::default()).unwrap_err();
        assert!(matches!(err, Error::Config(_)));
        let cfg = SolveConfig {
            stop_mode: StopMode::RelativeResidual,
            ..SolveConfig::default()
        };
        let report = solve(&problem, &Strategy::gk(), &cfg).unwrap();
        assert!(report.converged);
    }

    #[test]
    fn zero_residual_stops_as_converged() {
        // x★ is not the iterate's limit, but the system is solved exactly after one step
        let a = MatrixHandle::from_rows(&[[1.0, 1.0]]).unwrap();
        let problem = Problem::new(a, vec![2.0])
            .unwrap()
            .with_solution(vec![2.0, 0.0])
            .unwrap();
        let report = solve(&problem, &Strategy::gk(), &SolveConfig::default()).unwrap();
        assert!(report.converged);
        assert_eq!(report.iterations, 1);
        assert_eq!(report.solution, vec![1.0, 1.0]);
    }

    #[test]
    fn generic_over_f32() {
        let a = MatrixHandle::<f32>::from_rows(&[[2.0, 1.0], [1.0, 3.0], [1.0, -1.0]]).unwrap();
        let x_star = vec![1.0f32, -2.0];
        let b = a.matvec(&x_star).unwrap();
        let problem = Problem::new(a, b).unwrap().with_solution(x_star).unwrap();
        for strategy in [Strategy::gk(), Strategy::grk(3), Strategy::rgrk(1.0, 3).unwrap(), Strategy::rk(3)] {
            let report = solve(&problem, &strategy, &SolveConfig::default()).unwrap();
            assert!(report.converged, "{:?}", strategy.method);
            assert!(report.final_res <= 1e-6);
        }
    }
}
