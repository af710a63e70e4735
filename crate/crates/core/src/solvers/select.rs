use rand::Rng;

use super::{check_theta, SolverRng};
use crate::error::{Error, Result};
use crate::linalg::{sq_norm, MatrixHandle};
use crate::scalar::Scalar;

/// GRK threshold ε_k = ½(max_i(|r^(i)|²/‖A^(i)‖₂²)/‖r‖₂² + 1/‖A‖_F²).
pub fn grk_threshold<T: Scalar>(r: &[T], a: &MatrixHandle<T>) -> Result<T> {
    let (r_sq, max_ratio, _) = residual_stats(r, a)?;
    let half = T::of(0.5);
    Ok(half * (max_ratio / r_sq + T::one() / a.frobenius_sq()))
}

/// RGRK threshold ε_k = θ·max_i(|r^(i)|²/‖A^(i)‖₂²)/‖r‖₂² + (1 − θ)/‖A‖_F².
pub fn rgrk_threshold<T: Scalar>(r: &[T], a: &MatrixHandle<T>, theta: f64) -> Result<T> {
    check_theta(theta)?;
    let (r_sq, max_ratio, _) = residual_stats(r, a)?;
    let theta = T::of(theta);
    Ok(theta * (max_ratio / r_sq) + (T::one() - theta) / a.frobenius_sq())
}

/// Indices with |r^(i)|² ≥ ε‖r‖₂²‖A^(i)‖₂².
///
/// The first maximizer of |r^(i)|²/‖A^(i)‖₂² always qualifies in exact
/// arithmetic; it is admitted explicitly so rounding cannot empty the set.
pub fn grk_index_set<T: Scalar>(r: &[T], a: &MatrixHandle<T>, eps: T) -> Result<Vec<usize>> {
    let (r_sq, _, argmax) = residual_stats(r, a)?;
    let norms = a.row_sq_norms();
    let mut set = Vec::new();
    threshold_set(r, &norms, eps * r_sq, argmax, &mut set);
    Ok(set)
}

/// Draws a member of `idx_set` with probability ∝ |r^(i)|², by inverse CDF
/// over the cumulative weights in ascending index order. Consumes one draw.
pub fn weighted_sample<T: Scalar>(r: &[T], idx_set: &[usize], rng: &mut SolverRng) -> Result<usize> {
    if idx_set.is_empty() {
        return Err(Error::Contract("cannot sample from an empty index set".into()));
    }
    if let Some(&i) = idx_set.iter().find(|&&i| i >= r.len()) {
        return Err(Error::Index {
            index: i,
            len: r.len(),
        });
    }
    sample_by_residual(r, idx_set, rng)
        .ok_or_else(|| Error::Contract("residual vanishes on the index set".into()))
}

/// All indices attaining max_i |r^(i)|, by exact comparison in one left-to-right scan.
pub fn gk_candidate_set<T: Scalar>(r: &[T]) -> Result<Vec<usize>> {
    let mut set = Vec::new();
    if max_abs_set(r, &mut set).is_zero() {
        return Err(Error::Contract("residual is zero; the solve has converged".into()));
    }
    Ok(set)
}

/// Member of `candidates` maximizing |r^(i)|²/‖A^(i)‖₂², smallest index on ties.
/// Only the candidates' row norms are computed.
pub fn gk_pick<T: Scalar>(r: &[T], a: &MatrixHandle<T>, candidates: &[usize]) -> Result<usize> {
    if candidates.is_empty() {
        return Err(Error::Contract("empty candidate set".into()));
    }
    if let Some(&i) = candidates.iter().find(|&&i| i >= r.len() || i >= a.rows()) {
        return Err(Error::Index {
            index: i,
            len: a.rows(),
        });
    }
    Ok(max_distance(r, a, candidates).0)
}

/// Row sampled with probability ‖A^(i)‖₂²/‖A‖_F².
pub fn rk_pick<T: Scalar>(a: &MatrixHandle<T>, rng: &mut SolverRng) -> usize {
    sample_cumulative(&cumulative(&a.row_sq_norms()), rng)
}

// ---- loop helpers -------------------------------------------------------

/// (‖r‖₂², max ratio, first argmax of the ratio)
fn residual_stats<T: Scalar>(r: &[T], a: &MatrixHandle<T>) -> Result<(T, T, usize)> {
    if r.len() != a.rows() {
        return Err(Error::Shape(format!(
            "residual has length {}, matrix has {} rows",
            r.len(),
            a.rows()
        )));
    }
    let r_sq = sq_norm(r);
    if r_sq.is_zero() {
        return Err(Error::Contract("residual is zero; the solve has converged".into()));
    }
    let norms = a.row_sq_norms();
    let (max_ratio, argmax) = max_ratio(r, &norms);
    Ok((r_sq, max_ratio, argmax))
}

#[inline]
pub(super) fn max_ratio<T: Scalar>(r: &[T], norms: &[T]) -> (T, usize) {
    let mut best = T::neg_infinity();
    let mut argmax = 0;
    for (i, (ri, ni)) in r.iter().zip(norms).enumerate() {
        let ratio = *ri * *ri / *ni;
        if ratio > best {
            best = ratio;
            argmax = i;
        }
    }
    (best, argmax)
}

/// Fills `set` with {i : |r^(i)|² ≥ cutoff·‖A^(i)‖₂²} ∪ {argmax}.
#[inline]
pub(super) fn threshold_set<T: Scalar>(
    r: &[T],
    norms: &[T],
    cutoff: T,
    argmax: usize,
    set: &mut Vec<usize>,
) {
    set.clear();
    for (i, (ri, ni)) in r.iter().zip(norms).enumerate() {
        if *ri * *ri >= cutoff * *ni || i == argmax {
            set.push(i);
        }
    }
}

/// Fills `set` with the maximizers of |r^(i)| and returns the maximum.
#[inline]
pub(super) fn max_abs_set<T: Scalar>(r: &[T], set: &mut Vec<usize>) -> T {
    set.clear();
    let mut best = T::neg_infinity();
    for (i, ri) in r.iter().enumerate() {
        let v = ri.abs();
        if v > best {
            best = v;
            set.clear();
            set.push(i);
        } else if v == best {
            set.push(i);
        }
    }
    best
}

/// (chosen index, Σ ‖A^(i)‖₂² over candidates)
#[inline]
pub(super) fn max_distance<T: Scalar>(r: &[T], a: &MatrixHandle<T>, candidates: &[usize]) -> (usize, T) {
    let mut chosen = candidates[0];
    let mut best = T::neg_infinity();
    let mut norm_sum = T::zero();
    for &i in candidates {
        let norm = a.cached_row_sq_norm(i);
        norm_sum += norm;
        let ratio = r[i] * r[i] / norm;
        if ratio > best {
            best = ratio;
            chosen = i;
        }
    }
    (chosen, norm_sum)
}

#[inline]
pub(super) fn sample_by_residual<T: Scalar>(r: &[T], set: &[usize], rng: &mut SolverRng) -> Option<usize> {
    let u = T::of(rng.random::<f64>());
    let total = set.iter().fold(T::zero(), |acc, &i| acc + r[i] * r[i]);
    if total.is_zero() {
        return None;
    }
    let target = u * total;
    let mut acc = T::zero();
    let mut last_positive = None;
    for &i in set {
        let w = r[i] * r[i];
        if w.is_zero() {
            continue;
        }
        acc += w;
        last_positive = Some(i);
        if acc > target {
            return Some(i);
        }
    }
    // u rounded up to 1 in a narrow scalar type
    last_positive
}

pub(super) fn cumulative<T: Scalar>(weights: &[T]) -> Vec<T> {
    let mut acc = T::zero();
    weights
        .iter()
        .map(|&w| {
            acc += w;
            acc
        })
        .collect()
}

#[inline]
pub(super) fn sample_cumulative<T: Scalar>(cum: &[T], rng: &mut SolverRng) -> usize {
    let total = *cum.last().expect("matrix has at least one row");
    let target = T::of(rng.random::<f64>()) * total;
    cum.partition_point(|&c| c <= target).min(cum.len() - 1)
}
