//! Problem construction, Matrix Market files and result serialization.

mod matrix_market;
mod report;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::{check_finite, sq_norm, MatrixHandle};
use crate::scalar::Scalar;
use crate::solvers::seeded_rng;

pub use matrix_market::{
    read_matrix_market, read_matrix_market_file, read_matrix_market_with_header,
    write_matrix_market, write_matrix_market_array, MatrixMarketHeader, MmField, MmFormat,
    MmSymmetry,
};
pub use report::{
    format_sig6, read_report_csv, read_vector_csv, write_report_csv, write_solve_report_csv,
    write_solve_report_jsonl, write_vector_csv, REPORT_CSV_HEADER,
};

/// A consistent system A·x = b with an optional known solution and a start vector.
#[derive(Debug, Clone)]
pub struct Problem<T> {
    pub matrix: MatrixHandle<T>,
    pub rhs: Vec<T>,
    pub x_star: Option<Vec<T>>,
    pub x0: Vec<T>,
    pub label: String,
}

impl<T: Scalar> Problem<T> {
    /// Problem with start vector x₀ = 0 and no known solution.
    pub fn new(matrix: MatrixHandle<T>, rhs: Vec<T>) -> Result<Self> {
        if rhs.len() != matrix.rows() {
            return Err(Error::Shape(format!(
                "b has length {}, matrix has {} rows",
                rhs.len(),
                matrix.rows()
            )));
        }
        check_finite(&rhs)?;
        let x0 = vec![T::zero(); matrix.cols()];
        Ok(Self {
            matrix,
            rhs,
            x_star: None,
            x0,
            label: String::new(),
        })
    }

    /// Attaches a known solution; it must satisfy ‖A·x★ − b‖₂ ≤ 1e−10·max(1, ‖b‖₂)
    /// (measured at the scalar's precision).
    pub fn with_solution(mut self, x_star: Vec<T>) -> Result<Self> {
        if x_star.len() != self.matrix.cols() {
            return Err(Error::Shape(format!(
                "x★ has length {}, matrix has {} columns",
                x_star.len(),
                self.matrix.cols()
            )));
        }
        check_finite(&x_star)?;
        let r = self.matrix.residual(&self.rhs, &x_star)?;
        let r_norm = sq_norm(&r).sqrt().as_f64();
        let b_norm = sq_norm(&self.rhs).sqrt().as_f64().max(1.0);
        let tol = 1e-10f64.max(T::epsilon().as_f64() * 64.0);
        if r_norm > tol * b_norm {
            return Err(Error::Inconsistent(r_norm / b_norm));
        }
        self.x_star = Some(x_star);
        Ok(self)
    }

    pub fn with_start(mut self, x0: Vec<T>) -> Result<Self> {
        if x0.len() != self.matrix.cols() {
            return Err(Error::Shape(format!(
                "x₀ has length {}, matrix has {} columns",
                x0.len(),
                self.matrix.cols()
            )));
        }
        check_finite(&x0)?;
        self.x0 = x0;
        Ok(self)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub(crate) fn check_dims(&self) -> Result<()> {
        self.matrix.check_system(&self.rhs, &self.x0)?;
        if let Some(xs) = &self.x_star {
            if xs.len() != self.matrix.cols() {
                return Err(Error::Shape("x★ length differs from column count".into()));
            }
        }
        Ok(())
    }
}

/// Seeded i.i.d. standard normal vector (ChaCha8 stream, ziggurat sampling).
pub fn gaussian_vector<T: Scalar>(len: usize, seed: u64) -> Vec<T> {
    let mut rng = seeded_rng(seed);
    (0..len)
        .map(|_| T::of(rng.sample::<f64, _>(StandardNormal)))
        .collect()
}

/// Dense `m × n` matrix of i.i.d. standard normal entries, filled row by row.
pub fn gen_gaussian<T: Scalar>(m: usize, n: usize, seed: u64) -> Result<MatrixHandle<T>> {
    MatrixHandle::from_dense(m, n, gaussian_vector(m * n, seed))
}

/// Draws x★ ~ N(0, I) and sets b = A·x★, x₀ = 0.
pub fn make_consistent_problem<T: Scalar>(matrix: MatrixHandle<T>, seed: u64) -> Result<Problem<T>> {
    let x_star = gaussian_vector(matrix.cols(), seed);
    let rhs = matrix.matvec(&x_star)?;
    Ok(Problem {
        x0: vec![T::zero(); matrix.cols()],
        matrix,
        rhs,
        x_star: Some(x_star),
        label: String::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_is_deterministic_per_seed() {
        let a: MatrixHandle<f64> = gen_gaussian(30, 7, 42).unwrap();
        let b: MatrixHandle<f64> = gen_gaussian(30, 7, 42).unwrap();
        let c: MatrixHandle<f64> = gen_gaussian(30, 7, 43).unwrap();
        assert_eq!(a.to_row_major(), b.to_row_major());
        assert_ne!(a.to_row_major(), c.to_row_major());
    }

    #[test]
    fn gaussian_moments() {
        for seed in [1, 2, 3] {
            let v = gen_gaussian::<f64>(1000, 50, seed).unwrap().to_row_major();
            let n = v.len() as f64;
            let mean = v.iter().sum::<f64>() / n;
            let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
            assert!(mean.abs() <= 0.02, "mean {mean}");
            assert!((var - 1.0).abs() <= 0.05, "var {var}");
        }
    }

    #[test]
    fn consistent_problem_on_identity() {
        let a = MatrixHandle::from_rows(&[[1.0, 0.0], [0.0, 1.0]]).unwrap();
        let p = make_consistent_problem(a, 9).unwrap();
        assert_eq!(p.rhs, p.x_star.clone().unwrap());
        assert_eq!(p.x0, vec![0.0, 0.0]);
        let r = p.matrix.residual(&p.rhs, p.x_star.as_ref().unwrap()).unwrap();
        assert!(r.iter().all(|v| *v == 0.0));
    }

    #[test]
    fn inconsistent_solution_is_rejected() {
        let a = MatrixHandle::from_rows(&[[1.0, 0.0], [1.0, 0.0]]).unwrap();
        let p = Problem::new(a, vec![1.0, 2.0]).unwrap();
        assert!(matches!(p.with_solution(vec![1.0, 0.0]), Err(Error::Inconsistent(_))));
    }

    #[test]
    fn problem_shape_errors() {
        let a = MatrixHandle::from_rows(&[[1.0, 0.0]]).unwrap();
        assert!(Problem::new(a.clone(), vec![1.0, 2.0]).is_err());
        let p = Problem::new(a, vec![1.0]).unwrap();
        assert!(p.clone().with_start(vec![0.0]).is_err());
        assert!(p.with_solution(vec![1.0]).is_err());
    }
}
