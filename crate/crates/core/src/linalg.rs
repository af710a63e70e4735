//! Row-oriented matrix storage shared by every solver.
//!
//! A [`MatrixHandle`] is immutable once built, apart from its squared row norm
//! cache. The cache is filled lazily, one row at a time, through `OnceLock`
//! cells so concurrent readers never race: GK only ever asks for the rows in
//! its candidate set, while GRK/RGRK fill everything up front.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
enum Storage<T> {
    /// Row-major, `rows * cols` values.
    Dense(Vec<T>),
    Csr {
        offsets: Vec<usize>,
        indices: Vec<usize>,
        values: Vec<T>,
    },
}

/// Dense row-major or CSR matrix with cached squared row norms.
#[derive(Debug, Clone)]
pub struct MatrixHandle<T> {
    rows: usize,
    cols: usize,
    storage: Storage<T>,
    row_sq_norms: Vec<OnceLock<T>>,
    frob_sq: OnceLock<T>,
}

/// Borrowed view of one matrix row.
#[derive(Debug, Clone, Copy)]
pub enum Row<'a, T> {
    Dense(&'a [T]),
    Sparse { indices: &'a [usize], values: &'a [T] },
}

/// Number of partial sums in [`Row::dot`].
pub const LANES: usize = 8;

#[inline]
fn reduce_lanes<T: Scalar>(a: [T; LANES]) -> T {
    ((a[0] + a[4]) + (a[2] + a[6])) + ((a[1] + a[5]) + (a[3] + a[7]))
}

impl<'a, T: Scalar> Row<'a, T> {
    /// Inner product with `x`. Products are accumulated in [`LANES`] partial
    /// sums keyed by column index modulo `LANES`, so dense and sparse storage
    /// of the same row give identical results.
    #[inline(always)]
    pub fn dot(&self, x: &[T]) -> T {
        let mut acc = [T::zero(); LANES];
        match *self {
            Row::Dense(values) => {
                let (x, _) = x.split_at(values.len());
                let mut a_chunks = values.chunks_exact(LANES);
                let mut x_chunks = x.chunks_exact(LANES);
                for (a, xs) in (&mut a_chunks).zip(&mut x_chunks) {
                    let a: &[T; LANES] = a.try_into().expect("exact chunk");
                    let xs: &[T; LANES] = xs.try_into().expect("exact chunk");
                    for l in 0..LANES {
                        acc[l] += a[l] * xs[l];
                    }
                }
                for (l, (a, xi)) in a_chunks.remainder().iter().zip(x_chunks.remainder()).enumerate() {
                    acc[l] += *a * *xi;
                }
            }
            Row::Sparse { indices, values } => {
                for (j, a) in indices.iter().zip(values) {
                    acc[*j % LANES] += *a * x[*j];
                }
            }
        }
        reduce_lanes(acc)
    }

    /// `y += alpha * row`
    #[inline]
    pub fn axpy(&self, alpha: T, y: &mut [T]) {
        match *self {
            Row::Dense(values) => {
                for (yi, a) in y.iter_mut().zip(values) {
                    *yi += alpha * *a;
                }
            }
            Row::Sparse { indices, values } => {
                for (j, a) in indices.iter().zip(values) {
                    y[*j] += alpha * *a;
                }
            }
        }
    }

    pub fn sq_norm(&self) -> T {
        let values = match *self {
            Row::Dense(values) => values,
            Row::Sparse { values, .. } => values,
        };
        values.iter().fold(T::zero(), |acc, &v| acc + v * v)
    }

    /// `(column, value)` pairs of the stored entries.
    pub fn entries(&self) -> Box<dyn Iterator<Item = (usize, T)> + 'a> {
        match *self {
            Row::Dense(values) => Box::new(values.iter().copied().enumerate()),
            Row::Sparse { indices, values } => {
                Box::new(indices.iter().copied().zip(values.iter().copied()))
            }
        }
    }
}

impl<T: Scalar> MatrixHandle<T> {
    /// Builds a dense matrix from row-major values.
    pub fn from_dense(rows: usize, cols: usize, values: Vec<T>) -> Result<Self> {
        check_dims(rows, cols)?;
        if values.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} values for a {rows}x{cols} matrix",
                values.len()
            )));
        }
        check_finite(&values)?;
        for (i, row) in values.chunks_exact(cols).enumerate() {
            if row.iter().all(|v| v.is_zero()) {
                return Err(zero_row(i));
            }
        }
        Ok(Self::assemble(rows, cols, Storage::Dense(values)))
    }

    /// Builds a dense matrix from a slice of equally long rows.
    pub fn from_rows<R: AsRef<[T]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut values = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::Shape(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            values.extend_from_slice(row);
        }
        Self::from_dense(rows.len(), cols, values)
    }

    /// Builds a CSR matrix. Column indices must be strictly increasing within each row.
    pub fn from_csr(
        rows: usize,
        cols: usize,
        offsets: Vec<usize>,
        indices: Vec<usize>,
        values: Vec<T>,
    ) -> Result<Self> {
        check_dims(rows, cols)?;
        if offsets.len() != rows + 1 {
            return Err(Error::Validation(format!(
                "{} row offsets for {rows} rows",
                offsets.len()
            )));
        }
        if indices.len() != values.len() {
            return Err(Error::Validation(format!(
                "{} column indices but {} values",
                indices.len(),
                values.len()
            )));
        }
        if offsets[0] != 0 || offsets[rows] != values.len() {
            return Err(Error::Validation(
                "row offsets must start at 0 and end at nnz".into(),
            ));
        }
        if offsets.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Validation("row offsets must be nondecreasing".into()));
        }
        check_finite(&values)?;
        for i in 0..rows {
            let span = offsets[i]..offsets[i + 1];
            let cols_in_row = &indices[span.clone()];
            if let Some(&j) = cols_in_row.iter().find(|&&j| j >= cols) {
                return Err(Error::Validation(format!(
                    "column index {j} in row {i} out of range for {cols} columns"
                )));
            }
            if cols_in_row.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Validation(format!(
                    "column indices of row {i} are not strictly increasing"
                )));
            }
            if values[span].iter().all(|v| v.is_zero()) {
                return Err(zero_row(i));
            }
        }
        Ok(Self::assemble(
            rows,
            cols,
            Storage::Csr {
                offsets,
                indices,
                values,
            },
        ))
    }

    /// Builds a CSR matrix from `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets(rows: usize, cols: usize, triplets: &[(usize, usize, T)]) -> Result<Self> {
        check_dims(rows, cols)?;
        let mut sorted = triplets.to_vec();
        for &(i, j, _) in &sorted {
            if i >= rows || j >= cols {
                return Err(Error::Validation(format!(
                    "entry ({i}, {j}) outside a {rows}x{cols} matrix"
                )));
            }
        }
        sorted.sort_by_key(|&(i, j, _)| (i, j));
        let mut offsets = vec![0usize; rows + 1];
        let mut indices = Vec::with_capacity(sorted.len());
        let mut values: Vec<T> = Vec::with_capacity(sorted.len());
        let mut last: Option<(usize, usize)> = None;
        for (i, j, v) in sorted {
            if last == Some((i, j)) {
                *values.last_mut().expect("duplicate follows an entry") += v;
                continue;
            }
            offsets[i + 1] += 1;
            indices.push(j);
            values.push(v);
            last = Some((i, j));
        }
        for i in 0..rows {
            offsets[i + 1] += offsets[i];
        }
        Self::from_csr(rows, cols, offsets, indices, values)
    }

    fn assemble(rows: usize, cols: usize, storage: Storage<T>) -> Self {
        Self {
            rows,
            cols,
            storage,
            row_sq_norms: (0..rows).map(|_| OnceLock::new()).collect(),
            frob_sq: OnceLock::new(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_sparse(&self) -> bool {
        matches!(self.storage, Storage::Csr { .. })
    }

    /// Number of stored entries with a nonzero value.
    pub fn nnz(&self) -> usize {
        match &self.storage {
            Storage::Dense(values) => values.iter().filter(|v| !v.is_zero()).count(),
            Storage::Csr { values, .. } => values.iter().filter(|v| !v.is_zero()).count(),
        }
    }

    /// `nnz / (rows * cols)`
    pub fn density(&self) -> f64 {
        self.nnz() as f64 / (self.rows as f64 * self.cols as f64)
    }

    /// Row `i`. Panics if `i >= rows`.
    #[inline]
    pub fn row(&self, i: usize) -> Row<'_, T> {
        match &self.storage {
            Storage::Dense(values) => Row::Dense(&values[i * self.cols..(i + 1) * self.cols]),
            Storage::Csr {
                offsets,
                indices,
                values,
            } => {
                let span = offsets[i]..offsets[i + 1];
                Row::Sparse {
                    indices: &indices[span.clone()],
                    values: &values[span],
                }
            }
        }
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        match self.row(i) {
            Row::Dense(values) => values[j],
            Row::Sparse { indices, values } => indices
                .binary_search(&j)
                .map_or(T::zero(), |pos| values[pos]),
        }
    }

    /// `‖A^(i)‖₂²`, computed once and then served from the cache.
    pub fn row_sq_norm(&self, i: usize) -> Result<T> {
        if i >= self.rows {
            return Err(Error::Index {
                index: i,
                len: self.rows,
            });
        }
        Ok(self.cached_row_sq_norm(i))
    }

    #[inline]
    pub(crate) fn cached_row_sq_norm(&self, i: usize) -> T {
        *self.row_sq_norms[i].get_or_init(|| self.row(i).sq_norm())
    }

    /// Number of rows whose squared norm has been computed so far.
    pub fn cached_row_norms(&self) -> usize {
        self.row_sq_norms.iter().filter(|c| c.get().is_some()).count()
    }

    /// All squared row norms, filling the cache.
    pub fn row_sq_norms(&self) -> Vec<T> {
        (0..self.rows).map(|i| self.cached_row_sq_norm(i)).collect()
    }

    /// `‖A‖_F²` as the sum of the squared row norms, filling the row cache.
    pub fn frobenius_sq(&self) -> T {
        *self.frob_sq.get_or_init(|| {
            (0..self.rows).fold(T::zero(), |acc, i| acc + self.cached_row_sq_norm(i))
        })
    }

    pub fn min_row_sq_norm(&self) -> T {
        (0..self.rows)
            .map(|i| self.cached_row_sq_norm(i))
            .fold(T::infinity(), T::min)
    }

    /// Drops every cached norm, so the next solve pays for its own norm computations.
    pub fn reset_norm_cache(&mut self) {
        for cell in &mut self.row_sq_norms {
            cell.take();
        }
        self.frob_sq.take();
    }

    pub fn matvec(&self, x: &[T]) -> Result<Vec<T>> {
        if x.len() != self.cols {
            return Err(Error::Shape(format!(
                "x has length {}, matrix has {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok((0..self.rows).map(|i| self.row(i).dot(x)).collect())
    }

    /// `b − A·x`, computed from scratch.
    pub fn residual(&self, b: &[T], x: &[T]) -> Result<Vec<T>> {
        self.check_system(b, x)?;
        let mut r = vec![T::zero(); self.rows];
        self.residual_into(b, x, &mut r);
        Ok(r)
    }

    /// Unchecked residual into a caller-owned buffer; lengths must already match.
    #[inline]
    pub(crate) fn residual_into(&self, b: &[T], x: &[T], r: &mut [T]) {
        match &self.storage {
            Storage::Dense(values) => {
                #[cfg(target_arch = "x86_64")]
                if std::arch::is_x86_feature_detected!("avx2") {
                    // SAFETY: AVX2 support was just detected
                    unsafe { dense_residual_avx2(values, self.cols, b, x, r) };
                    return;
                }
                dense_residual(values, self.cols, b, x, r);
            }
            Storage::Csr {
                offsets,
                indices,
                values,
            } => {
                for (i, (ri, bi)) in r.iter_mut().zip(b).enumerate() {
                    let span = offsets[i]..offsets[i + 1];
                    let row = Row::Sparse {
                        indices: &indices[span.clone()],
                        values: &values[span],
                    };
                    *ri = *bi - row.dot(x);
                }
            }
        }
    }

    pub(crate) fn check_system(&self, b: &[T], x: &[T]) -> Result<()> {
        if b.len() != self.rows {
            return Err(Error::Shape(format!(
                "b has length {}, matrix has {} rows",
                b.len(),
                self.rows
            )));
        }
        if x.len() != self.cols {
            return Err(Error::Shape(format!(
                "x has length {}, matrix has {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok(())
    }

    /// Same matrix in CSR storage, keeping only nonzero values.
    pub fn to_csr(&self) -> Self {
        let mut offsets = Vec::with_capacity(self.rows + 1);
        let mut indices = Vec::new();
        let mut values = Vec::new();
        offsets.push(0);
        for i in 0..self.rows {
            for (j, v) in self.row(i).entries() {
                if !v.is_zero() {
                    indices.push(j);
                    values.push(v);
                }
            }
            offsets.push(values.len());
        }
        Self::assemble(
            self.rows,
            self.cols,
            Storage::Csr {
                offsets,
                indices,
                values,
            },
        )
    }

    pub fn to_dense(&self) -> Self {
        let mut values = vec![T::zero(); self.rows * self.cols];
        for i in 0..self.rows {
            for (j, v) in self.row(i).entries() {
                values[i * self.cols + j] = v;
            }
        }
        Self::assemble(self.rows, self.cols, Storage::Dense(values))
    }

    /// Row-major copy of all entries.
    pub fn to_row_major(&self) -> Vec<T> {
        match self.to_dense().storage {
            Storage::Dense(values) => values,
            Storage::Csr { .. } => unreachable!("to_dense yields dense storage"),
        }
    }

    /// Same values in another scalar type.
    pub fn cast<U: Scalar>(&self) -> Result<MatrixHandle<U>> {
        let conv = |v: &[T]| v.iter().map(|x| U::of(x.as_f64())).collect::<Vec<U>>();
        match &self.storage {
            Storage::Dense(values) => MatrixHandle::from_dense(self.rows, self.cols, conv(values)),
            Storage::Csr {
                offsets,
                indices,
                values,
            } => MatrixHandle::from_csr(
                self.rows,
                self.cols,
                offsets.clone(),
                indices.clone(),
                conv(values),
            ),
        }
    }
}

impl<T: PartialEq> PartialEq for MatrixHandle<T> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.storage == other.storage
    }
}

#[inline(always)]
fn dense_residual<T: Scalar>(values: &[T], cols: usize, b: &[T], x: &[T], r: &mut [T]) {
    for ((ri, bi), row) in r.iter_mut().zip(b).zip(values.chunks_exact(cols)) {
        *ri = *bi - Row::Dense(row).dot(x);
    }
}

/// [`dense_residual`] compiled for AVX2; same operations in the same order.
#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "avx2")]
unsafe fn dense_residual_avx2<T: Scalar>(values: &[T], cols: usize, b: &[T], x: &[T], r: &mut [T]) {
    dense_residual(values, cols, b, x, r)
}

pub fn dot<T: Scalar>(x: &[T], y: &[T]) -> T {
    x.iter().zip(y).fold(T::zero(), |acc, (a, b)| acc + *a * *b)
}

pub fn sq_norm<T: Scalar>(x: &[T]) -> T {
    dot(x, x)
}

/// `‖x − y‖₂²`
pub fn sq_distance<T: Scalar>(x: &[T], y: &[T]) -> T {
    x.iter().zip(y).fold(T::zero(), |acc, (a, b)| {
        let d = *a - *b;
        acc + d * d
    })
}

pub fn max_abs<T: Scalar>(x: &[T]) -> T {
    x.iter().fold(T::zero(), |acc, v| acc.max(v.abs()))
}

pub(crate) fn check_finite<T: Scalar>(values: &[T]) -> Result<()> {
    match values.iter().position(|v| !v.is_finite()) {
        Some(pos) => Err(Error::Validation(format!("non-finite value at position {pos}"))),
        None => Ok(()),
    }
}

fn check_dims(rows: usize, cols: usize) -> Result<()> {
    if rows == 0 || cols == 0 {
        return Err(Error::Shape(format!(
            "matrix must be at least 1x1, got {rows}x{cols}"
        )));
    }
    Ok(())
}

fn zero_row(i: usize) -> Error {
    Error::Validation(format!("row {i} has no nonzero entries"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn identity(m: usize) -> MatrixHandle<f64> {
        let mut v = vec![0.0; m * m];
        for i in 0..m {
            v[i * m + i] = 1.0;
        }
        MatrixHandle::from_dense(m, m, v).unwrap()
    }

    #[test]
    fn row_sq_norm_examples() {
        assert_eq!(identity(2).row_sq_norm(0).unwrap(), 1.0);
        let a = MatrixHandle::from_rows(&[[3.0, 4.0]]).unwrap();
        assert_eq!(a.row_sq_norm(0).unwrap(), 25.0);
        // brute-force dot product
        assert_eq!(a.row_sq_norm(0).unwrap(), 3.0 * 3.0 + 4.0 * 4.0);
        assert!(matches!(a.row_sq_norm(1), Err(Error::Index { index: 1, len: 1 })));
    }

    #[test]
    fn zero_rows_are_rejected() {
        let err = MatrixHandle::from_rows(&[[1.0, 0.0], [0.0, 0.0]]).unwrap_err();
        assert!(err.to_string().contains("row 1"), "{err}");
        // explicit stored zero in CSR
        let err =
            MatrixHandle::<f64>::from_csr(2, 2, vec![0, 1, 2], vec![0, 1], vec![1.0, 0.0]).unwrap_err();
        assert!(matches!(err, Error::Validation(_)));
    }

    #[test]
    fn malformed_csr_is_rejected() {
        let bad_offsets = MatrixHandle::<f64>::from_csr(2, 2, vec![0, 2, 1], vec![0, 1], vec![1.0, 1.0]);
        assert!(bad_offsets.is_err());
        let bad_col = MatrixHandle::<f64>::from_csr(1, 2, vec![0, 1], vec![2], vec![1.0]);
        assert!(bad_col.is_err());
        let nan = MatrixHandle::from_dense(1, 1, vec![f64::NAN]);
        assert!(nan.is_err());
        assert!(MatrixHandle::<f64>::from_dense(0, 1, vec![]).is_err());
    }

    #[test]
    fn norm_cache_is_lazy() {
        let a = MatrixHandle::from_rows(&[[1.0, 2.0], [3.0, 4.0], [5.0, 6.0]]).unwrap();
        assert_eq!(a.cached_row_norms(), 0);
        a.row_sq_norm(1).unwrap();
        assert_eq!(a.cached_row_norms(), 1);
        assert_eq!(a.frobenius_sq(), 91.0);
        assert_eq!(a.cached_row_norms(), 3);
        let mut a = a;
        a.reset_norm_cache();
        assert_eq!(a.cached_row_norms(), 0);
    }

    #[test]
    fn residual_examples() {
        let i2 = identity(2);
        assert_eq!(i2.residual(&[1.0, 2.0], &[0.0, 0.0]).unwrap(), vec![1.0, 2.0]);
        assert_eq!(i2.residual(&[1.0, 2.0], &[1.0, 2.0]).unwrap(), vec![0.0, 0.0]);
        let a = MatrixHandle::from_rows(&[[1.0, 1.0], [1.0, -1.0]]).unwrap();
        assert_eq!(a.residual(&[3.0, 1.0], &[1.0, 1.0]).unwrap(), vec![1.0, 1.0]);
        assert!(matches!(i2.residual(&[1.0], &[0.0, 0.0]), Err(Error::Shape(_))));
        assert!(matches!(i2.residual(&[1.0, 2.0], &[0.0]), Err(Error::Shape(_))));
    }

    #[test]
    fn frobenius_examples() {
        assert_eq!(identity(2).frobenius_sq(), 2.0);
        assert_eq!(MatrixHandle::from_rows(&[[3.0, 4.0]]).unwrap().frobenius_sq(), 25.0);
        assert_eq!(
            MatrixHandle::from_rows(&[[1.0, 0.0], [0.0, 2.0]]).unwrap().frobenius_sq(),
            5.0
        );
    }

    #[test]
    fn triplets_sum_duplicates() {
        let a = MatrixHandle::from_triplets(2, 2, &[(1, 1, 1.0), (0, 0, 2.0), (1, 1, 3.0)]).unwrap();
        assert_eq!(a.get(0, 0), 2.0);
        assert_eq!(a.get(1, 1), 4.0);
        assert_eq!(a.get(0, 1), 0.0);
        assert_eq!(a.nnz(), 2);
        assert_eq!(a.density(), 0.5);
    }

    #[test]
    fn concurrent_norm_fill_is_consistent() {
        let values: Vec<f64> = (0..400).map(|k| (k % 7) as f64 + 1.0).collect();
        let a = MatrixHandle::from_dense(20, 20, values).unwrap();
        let expected: Vec<f64> = (0..20).map(|i| a.row(i).sq_norm()).collect();
        std::thread::scope(|s| {
            for _ in 0..4 {
                s.spawn(|| {
                    for i in (0..20).rev() {
                        assert_eq!(a.row_sq_norm(i).unwrap(), expected[i]);
                    }
                });
            }
        });
        assert_eq!(a.row_sq_norms(), expected);
    }

    fn dense_matrix() -> impl Strategy<Value = (usize, usize, Vec<f64>)> {
        (1usize..40, 1usize..40).prop_flat_map(|(m, n)| {
            proptest::collection::vec(
                prop_oneof![Just(0.0), -10.0..10.0f64],
                m * n,
            )
            .prop_map(move |mut v| {
                // keep every row nonzero
                for i in 0..m {
                    v[i * n + i % n] = 1.0 + i as f64;
                }
                (m, n, v)
            })
        })
    }

    proptest! {
        #[test]
        fn frobenius_is_sum_of_row_norms((m, n, v) in dense_matrix()) {
            let a = MatrixHandle::from_dense(m, n, v).unwrap();
            let sum: f64 = (0..m).map(|i| a.row_sq_norm(i).unwrap()).sum();
            assert_relative_eq!(a.frobenius_sq(), sum, max_relative = 1e-14);
        }

        #[test]
        fn dense_and_csr_agree((m, n, v) in dense_matrix(), seed in 0u64..1000) {
            let dense = MatrixHandle::from_dense(m, n, v).unwrap();
            let csr = dense.to_csr();
            prop_assert!(csr.is_sparse());
            let x: Vec<f64> = (0..n).map(|j| ((j as u64 * 31 + seed) % 17) as f64 - 8.0).collect();
            let b: Vec<f64> = (0..m).map(|i| (i as f64).sin()).collect();
            let rd = dense.residual(&b, &x).unwrap();
            let rc = csr.residual(&b, &x).unwrap();
            for (p, q) in rd.iter().zip(&rc) {
                prop_assert!((p - q).abs() <= 1e-15 * p.abs().max(q.abs()));
            }
            prop_assert_eq!(csr.to_dense(), dense);
        }

        #[test]
        fn residual_plus_product_is_rhs((m, n, v) in dense_matrix(), shift in -3.0..3.0f64) {
            let a = MatrixHandle::from_dense(m, n, v).unwrap();
            let x: Vec<f64> = (0..n).map(|j| shift + j as f64 * 0.25).collect();
            let b: Vec<f64> = (0..m).map(|i| (i as f64 * 0.7).cos() * 5.0).collect();
            let r = a.residual(&b, &x).unwrap();
            let ax = a.matvec(&x).unwrap();
            for i in 0..m {
                let scale = b[i].abs().max(ax[i].abs()).max(1.0);
                prop_assert!((r[i] + ax[i] - b[i]).abs() <= 1e-13 * scale);
            }
        }
    }
}
