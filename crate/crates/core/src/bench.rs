//! Repeated-run comparisons: mean iteration counts, mean wall time and the
//! GRK/GK and RGRK/GK speed-up ratios.

use crate::error::Result;
use crate::io::Problem;
use crate::scalar::Scalar;
use crate::solvers::{solve, Method, SolveConfig, Strategy};

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub label: String,
    pub m: usize,
    pub n: usize,
    pub density: f64,
    pub method: Method,
    /// Set for RGRK only.
    pub theta: Option<f64>,
    pub mean_it: f64,
    pub mean_cpu_seconds: f64,
    pub it_speedup_1: Option<f64>,
    pub it_speedup_2: Option<f64>,
    pub cpu_speedup_1: Option<f64>,
    pub cpu_speedup_2: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct BenchTable {
    pub repeats: usize,
    pub rows: Vec<BenchRow>,
}

#[derive(Debug, Clone)]
pub struct BenchOptions {
    pub methods: Vec<Method>,
    pub repeats: usize,
    pub theta: f64,
    pub seed_base: u64,
    pub config: SolveConfig,
}

impl Default for BenchOptions {
    fn default() -> Self {
        Self {
            methods: vec![Method::Grk, Method::Rgrk, Method::Gk],
            repeats: 50,
            theta: Strategy::DEFAULT_THETA,
            seed_base: 0,
            config: SolveConfig::default(),
        }
    }
}

/// Per-method iteration counts and wall times of every repeat.
#[derive(Debug, Clone, Default)]
pub struct MethodSamples {
    pub iterations: Vec<usize>,
    pub seconds: Vec<f64>,
    pub converged: usize,
}

impl MethodSamples {
    pub fn mean_it(&self) -> f64 {
        mean(self.iterations.iter().map(|&k| k as f64))
    }

    pub fn mean_seconds(&self) -> f64 {
        mean(self.seconds.iter().copied())
    }
}

fn mean(values: impl ExactSizeIterator<Item = f64>) -> f64 {
    let n = values.len();
    if n == 0 {
        return f64::NAN;
    }
    values.sum::<f64>() / n as f64
}

/// Runs every method `repeats` times on one problem. Repeat `j` uses seed
/// `seed_base + j`; methods are interleaved within a repeat and each solve
/// starts from an empty row-norm cache.
pub fn sample_methods<T: Scalar>(problem: &mut Problem<T>, options: &BenchOptions) -> Result<Vec<(Method, MethodSamples)>> {
    let mut samples: Vec<(Method, MethodSamples)> =
        options.methods.iter().map(|&m| (m, MethodSamples::default())).collect();
    for j in 0..options.repeats {
        let seed = options.seed_base.wrapping_add(j as u64);
        for (method, acc) in samples.iter_mut() {
            let strategy = Strategy::new(*method, theta_for(*method, options.theta), seed)?;
            problem.matrix.reset_norm_cache();
            let report = solve(problem, &strategy, &options.config)?;
            acc.iterations.push(report.iterations);
            acc.seconds.push(report.elapsed.as_secs_f64());
            acc.converged += usize::from(report.converged);
        }
    }
    Ok(samples)
}

fn theta_for(method: Method, theta: f64) -> f64 {
    match method {
        Method::Rgrk => theta,
        Method::Grk => 0.5,
        _ => Strategy::DEFAULT_THETA,
    }
}

/// Report rows for one problem from its samples; speed-ups appear only when
/// GRK, RGRK and GK all ran.
pub fn rows_for<T: Scalar>(problem: &Problem<T>, samples: &[(Method, MethodSamples)], theta: f64) -> Vec<BenchRow> {
    let find = |m: Method| samples.iter().find(|(k, _)| *k == m).map(|(_, s)| s);
    let ratios = match (find(Method::Grk), find(Method::Rgrk), find(Method::Gk)) {
        (Some(grk), Some(rgrk), Some(gk)) => Some([
            grk.mean_it() / gk.mean_it(),
            rgrk.mean_it() / gk.mean_it(),
            grk.mean_seconds() / gk.mean_seconds(),
            rgrk.mean_seconds() / gk.mean_seconds(),
        ]),
        _ => None,
    };
    let a = &problem.matrix;
    let density = a.density();
    samples
        .iter()
        .map(|(method, s)| BenchRow {
            label: problem.label.clone(),
            m: a.rows(),
            n: a.cols(),
            density,
            method: *method,
            theta: (*method == Method::Rgrk).then_some(theta),
            mean_it: s.mean_it(),
            mean_cpu_seconds: s.mean_seconds(),
            it_speedup_1: ratios.map(|r| r[0]),
            it_speedup_2: ratios.map(|r| r[1]),
            cpu_speedup_1: ratios.map(|r| r[2]),
            cpu_speedup_2: ratios.map(|r| r[3]),
        })
        .collect()
}

pub fn bench_problem<T: Scalar>(problem: &mut Problem<T>, options: &BenchOptions) -> Result<Vec<BenchRow>> {
    let samples = sample_methods(problem, options)?;
    Ok(rows_for(problem, &samples, options.theta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::{gen_gaussian, make_consistent_problem};

    #[test]
    fn gk_iterations_are_constant_across_repeats() {
        let a = gen_gaussian::<f64>(200, 20, 3).unwrap();
        let mut p = make_consistent_problem(a, 4).unwrap().with_label("g");
        let options = BenchOptions {
            repeats: 5,
            ..BenchOptions::default()
        };
        let samples = sample_methods(&mut p, &options).unwrap();
        let gk = &samples.iter().find(|(m, _)| *m == Method::Gk).unwrap().1;
        assert!(gk.iterations.windows(2).all(|w| w[0] == w[1]));
        assert_eq!(gk.converged, 5);

        let rows = rows_for(&p, &samples, options.theta);
        assert_eq!(rows.len(), 3);
        for row in &rows {
            assert_eq!(row.density, 1.0);
            let s1 = row.it_speedup_1.unwrap();
            let grk = rows.iter().find(|r| r.method == Method::Grk).unwrap().mean_it;
            let gk = rows.iter().find(|r| r.method == Method::Gk).unwrap().mean_it;
            assert!((s1 - grk / gk).abs() <= 1e-12 * s1);
        }
        assert_eq!(rows.iter().find(|r| r.method == Method::Rgrk).unwrap().theta, Some(1.0));
    }

    #[test]
    fn ratios_need_all_three_methods() {
        let a = gen_gaussian::<f64>(50, 10, 1).unwrap();
        let mut p = make_consistent_problem(a, 2).unwrap();
        let options = BenchOptions {
            methods: vec![Method::Gk, Method::Rk],
            repeats: 2,
            ..BenchOptions::default()
        };
        let rows = bench_problem(&mut p, &options).unwrap();
        assert!(rows.iter().all(|r| r.it_speedup_1.is_none() && r.cpu_speedup_2.is_none()));
    }
}
