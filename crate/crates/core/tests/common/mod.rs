#![allow(dead_code)]

use greedy_kaczmarz::io::{gen_gaussian, gaussian_vector};
use greedy_kaczmarz::{Matrix, Problem};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Vertex-edge incidence matrix of the rook graph on a `p × q` board: one row
/// per pair of cells sharing neither a row nor a column, −1 at the lower cell
/// and +1 at the higher one.
pub fn chessboard_b1(p: usize, q: usize) -> Matrix {
    let cells = p * q;
    let mut triplets = Vec::new();
    let mut edge = 0;
    for u in 0..cells {
        for v in u + 1..cells {
            if u / q != v / q && u % q != v % q {
                triplets.push((edge, u, -1.0));
                triplets.push((edge, v, 1.0));
                edge += 1;
            }
        }
    }
    Matrix::from_triplets(edge, cells, &triplets).unwrap()
}

/// Stacks `copies` copies of the rows of `base`.
pub fn stack_copies(base: &Matrix, copies: usize) -> Matrix {
    let v = base.to_row_major();
    let mut all = Vec::with_capacity(v.len() * copies);
    for _ in 0..copies {
        all.extend_from_slice(&v);
    }
    Matrix::from_dense(base.rows() * copies, base.cols(), all).unwrap()
}

/// `rows × cols` matrix of rank at most `rank` (product of two Gaussian factors).
pub fn low_rank(rows: usize, cols: usize, rank: usize, seed: u64) -> Matrix {
    let l = gen_gaussian::<f64>(rows, rank, seed).unwrap().to_row_major();
    let r = gen_gaussian::<f64>(rank, cols, seed.wrapping_add(1)).unwrap().to_row_major();
    let mut v = vec![0.0; rows * cols];
    for i in 0..rows {
        for j in 0..cols {
            v[i * cols + j] = (0..rank).map(|k| l[i * rank + k] * r[k * cols + j]).sum();
        }
    }
    Matrix::from_dense(rows, cols, v).unwrap()
}

/// Matrix with entries in {−1, 0, 1, 2} and a nonzero diagonal-position entry per row.
pub fn small_integer_matrix(rows: usize, cols: usize, seed: u64) -> Matrix {
    let mut g = rng(seed);
    let pick = [-1.0, 0.0, 1.0, 2.0];
    let mut v = vec![0.0; rows * cols];
    for i in 0..rows {
        for j in 0..cols {
            v[i * cols + j] = pick[g.random_range(0..4)];
        }
        let d = i % cols;
        if v[i * cols + d] == 0.0 {
            v[i * cols + d] = 1.0;
        }
    }
    Matrix::from_dense(rows, cols, v).unwrap()
}

/// b = A·x with a Gaussian x, x₀ = 0, no known solution attached.
pub fn consistent_rhs(a: Matrix, seed: u64) -> Problem<f64> {
    let x = gaussian_vector(a.cols(), seed);
    let b = a.matvec(&x).unwrap();
    Problem::new(a, b).unwrap()
}

/// Σ_j A_ij², straight from the entries.
pub fn brute_row_sq_norm(a: &Matrix, i: usize) -> f64 {
    (0..a.cols()).map(|j| a.get(i, j) * a.get(i, j)).sum()
}

pub fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

pub fn distance(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
}
