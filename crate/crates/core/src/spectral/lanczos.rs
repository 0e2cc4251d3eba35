//! Two-pass Lanczos for the extreme adjacency eigenvalues of large graphs.
//!
//! The constant vector is an eigenvector with eigenvalue `k` for every
//! `k`-regular graph, so the iteration runs on its orthogonal complement and
//! the extreme Ritz values there are `λ1` and `λ_{n-1}`. Only the
//! three-term recurrence is kept (no reorthogonalisation): spurious copies of
//! converged Ritz values can appear but the extremes stay correct. Ritz
//! vectors are rebuilt in a second pass that replays the recurrence, so
//! memory is a few vectors of length `n` regardless of the iteration count.
//!
//! Dot products are reduced over fixed-size chunks in index order, which
//! makes both passes bit-for-bit identical for any thread count.

use crate::error::{Error, Result};
use crate::graph::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const CHUNK: usize = 4096;

#[derive(Clone, Copy, Debug)]
pub struct LanczosOptions {
    pub max_iter: usize,
    /// Required `‖A y − θ y‖` for both extreme Ritz pairs.
    pub residual_tol: f64,
    pub seed: u64,
}

impl Default for LanczosOptions {
    fn default() -> Self {
        LanczosOptions { max_iter: 6000, residual_tol: 1e-8, seed: 0x5eed }
    }
}

/// Extreme eigenpairs on the complement of the constant vector.
#[derive(Clone, Debug)]
pub struct Extremes {
    pub largest: f64,
    pub smallest: f64,
    pub residual: f64,
    pub iterations: usize,
}

fn matvec(g: &Graph, x: &[f64], y: &mut [f64]) {
    let k = g.k();
    let rot = g.rot_table();
    y.par_chunks_mut(CHUNK).enumerate().for_each(|(c, out)| {
        let base = c * CHUNK;
        for (i, slot) in out.iter_mut().enumerate() {
            let v = base + i;
            *slot = rot[v * k..(v + 1) * k].iter().map(|&(w, _)| x[w as usize]).sum();
        }
    });
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    let parts: Vec<f64> = a
        .par_chunks(CHUNK)
        .zip(b.par_chunks(CHUNK))
        .map(|(x, y)| x.iter().zip(y).map(|(p, q)| p * q).sum())
        .collect();
    parts.into_iter().sum()
}

fn remove_mean(x: &mut [f64]) {
    let s: f64 = {
        let parts: Vec<f64> = x.par_chunks(CHUNK).map(|c| c.iter().sum()).collect();
        parts.into_iter().sum()
    };
    let mean = s / x.len() as f64;
    x.par_iter_mut().for_each(|v| *v -= mean);
}

/// One Lanczos step: given `q_prev`, `q`, `beta_prev`, writes the next basis
/// vector into `q_prev` (then swapped) and returns `(alpha, beta)`.
struct Recurrence<'a> {
    g: &'a Graph,
    q_prev: Vec<f64>,
    q: Vec<f64>,
    w: Vec<f64>,
    beta_prev: f64,
}

impl<'a> Recurrence<'a> {
    fn new(g: &'a Graph, seed: u64) -> Self {
        let n = g.n();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut q: Vec<f64> = (0..n).map(|_| rng.random::<f64>() - 0.5).collect();
        remove_mean(&mut q);
        let norm = dot(&q, &q).sqrt();
        q.iter_mut().for_each(|v| *v /= norm);
        Recurrence { g, q_prev: vec![0.0; n], q, w: vec![0.0; n], beta_prev: 0.0 }
    }

    fn step(&mut self) -> (f64, f64) {
        matvec(self.g, &self.q, &mut self.w);
        remove_mean(&mut self.w);
        let alpha = dot(&self.q, &self.w);
        let (bp, q, qp) = (self.beta_prev, &self.q, &self.q_prev);
        self.w
            .par_iter_mut()
            .zip(q.par_iter().zip(qp.par_iter()))
            .for_each(|(w, (a, b))| *w -= alpha * a + bp * b);
        let beta = dot(&self.w, &self.w).sqrt();
        if beta > 0.0 {
            let inv = 1.0 / beta;
            std::mem::swap(&mut self.q_prev, &mut self.q);
            std::mem::swap(&mut self.q, &mut self.w);
            self.q.par_iter_mut().for_each(|v| *v *= inv);
        }
        self.beta_prev = beta;
        (alpha, beta)
    }
}

/// Runs Lanczos until both extreme Ritz pairs have residual below the
/// tolerance.
pub fn extreme_eigenvalues(g: &Graph, opts: &LanczosOptions) -> Result<Extremes> {
    let n = g.n();
    if n < 2 {
        return Err(Error::invalid("need at least two vertices"));
    }
    let max_iter = opts.max_iter.min(n - 1).max(1);
    let mut alphas = Vec::new();
    let mut betas = Vec::new();
    let mut rec = Recurrence::new(g, opts.seed);
    let mut next_check = 20usize;
    let mut last_estimate = f64::INFINITY;
    loop {
        let (a, b) = rec.step();
        alphas.push(a);
        betas.push(b);
        let m = alphas.len();
        let exhausted = b <= 1e-12 * (g.k() as f64);
        if m >= next_check || m >= max_iter || exhausted {
            next_check = m + (m / 4).max(20);
            let off = &betas[..m - 1];
            let hi = tridiag_extreme(&alphas, off, true);
            let lo = tridiag_extreme(&alphas, off, false);
            // Paige's residual estimate: |beta_m * last component|.
            let est = hi.1.last().unwrap().abs().max(lo.1.last().unwrap().abs()) * b;
            last_estimate = est;
            if est < opts.residual_tol * 0.5 || exhausted || m >= max_iter {
                let residual = ritz_residuals(g, opts.seed, &hi, &lo, m);
                if residual <= opts.residual_tol {
                    return Ok(Extremes { largest: hi.0, smallest: lo.0, residual, iterations: m });
                }
                if exhausted || m >= max_iter {
                    return Err(Error::NoConvergence { residual, iterations: m });
                }
            }
        }
        if m >= max_iter {
            return Err(Error::NoConvergence { residual: last_estimate, iterations: m });
        }
    }
}

/// Replays the recurrence to assemble the two Ritz vectors and returns the
/// larger of their true residual norms.
fn ritz_residuals(
    g: &Graph,
    seed: u64,
    hi: &(f64, Vec<f64>),
    lo: &(f64, Vec<f64>),
    m: usize,
) -> f64 {
    let n = g.n();
    let mut y_hi = vec![0.0; n];
    let mut y_lo = vec![0.0; n];
    let mut rec = Recurrence::new(g, seed);
    for j in 0..m {
        let (sh, sl) = (hi.1[j], lo.1[j]);
        y_hi.par_iter_mut()
            .zip(y_lo.par_iter_mut())
            .zip(rec.q.par_iter())
            .for_each(|((a, b), q)| {
                *a += sh * q;
                *b += sl * q;
            });
        if j + 1 < m {
            rec.step();
        }
    }
    let residual = |y: &mut Vec<f64>, theta: f64| -> f64 {
        remove_mean(y);
        let norm = dot(y, y).sqrt();
        y.iter_mut().for_each(|v| *v /= norm);
        let mut ay = vec![0.0; n];
        matvec(g, y, &mut ay);
        ay.iter_mut().zip(y.iter()).for_each(|(a, v)| *a -= theta * v);
        dot(&ay, &ay).sqrt()
    };
    residual(&mut y_hi, hi.0).max(residual(&mut y_lo, lo.0))
}

/// Number of eigenvalues of the symmetric tridiagonal matrix below `x`
/// (Sturm sequence count).
fn count_below(diag: &[f64], off: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut d = 1.0f64;
    for i in 0..diag.len() {
        let b2 = if i == 0 { 0.0 } else { off[i - 1] * off[i - 1] };
        d = diag[i] - x - if d == 0.0 { b2 / f64::EPSILON } else { b2 / d };
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

/// Largest (or smallest) eigenvalue of a symmetric tridiagonal matrix by
/// bisection, with its unit eigenvector by inverse iteration.
pub(crate) fn tridiag_extreme(diag: &[f64], off: &[f64], largest: bool) -> (f64, Vec<f64>) {
    let m = diag.len();
    let bound = (0..m)
        .map(|i| {
            let l = if i > 0 { off[i - 1].abs() } else { 0.0 };
            let r = if i < m - 1 { off[i].abs() } else { 0.0 };
            diag[i].abs() + l + r
        })
        .fold(0.0, f64::max)
        + 1.0;
    let (mut lo, mut hi) = (-bound, bound);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let below = count_below(diag, off, mid);
        let go_up = if largest { below < m } else { below < 1 };
        if go_up {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let theta = 0.5 * (lo + hi);
    (theta, inverse_iteration(diag, off, theta))
}

fn inverse_iteration(diag: &[f64], off: &[f64], theta: f64) -> Vec<f64> {
    let m = diag.len();
    if m == 1 {
        return vec![1.0];
    }
    let scale = diag.iter().chain(off).fold(1.0f64, |a, b| a.max(b.abs()));
    let shift = theta + scale * 1e-13;
    let mut x = vec![1.0; m];
    for _ in 0..3 {
        x = solve_tridiag(diag, off, shift, &x);
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        x.iter_mut().for_each(|v| *v /= norm);
    }
    x
}

/// Solves `(T − shift I) x = b` by Gaussian elimination with partial
/// pivoting; the upper factor has bandwidth two.
fn solve_tridiag(diag: &[f64], off: &[f64], shift: f64, b: &[f64]) -> Vec<f64> {
    let m = diag.len();
    let guard = |p: f64| if p.abs() < 1e-300 { 1e-300 } else { p };
    let mut upper = vec![[0.0f64; 3]; m];
    let mut urhs = vec![0.0f64; m];
    // working row: entries at columns i, i+1, i+2
    let mut w = [diag[0] - shift, off[0], 0.0];
    let mut wr = b[0];
    for i in 0..m - 1 {
        let next = [off[i], diag[i + 1] - shift, if i + 2 < m { off[i + 1] } else { 0.0 }];
        let nr = b[i + 1];
        let (p, pr, o, or) = if next[0].abs() > w[0].abs() {
            (next, nr, w, wr)
        } else {
            (w, wr, next, nr)
        };
        let piv = guard(p[0]);
        upper[i] = [piv, p[1], p[2]];
        urhs[i] = pr;
        let f = o[0] / piv;
        w = [o[1] - f * p[1], o[2] - f * p[2], 0.0];
        wr = or - f * pr;
    }
    upper[m - 1] = [guard(w[0]), 0.0, 0.0];
    urhs[m - 1] = wr;
    let mut x = vec![0.0; m];
    for i in (0..m).rev() {
        let mut s = urhs[i];
        if i + 1 < m {
            s -= upper[i][1] * x[i + 1];
        }
        if i + 2 < m {
            s -= upper[i][2] * x[i + 2];
        }
        x[i] = s / upper[i][0];
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;

    #[test]
    fn tridiagonal_extremes_match_dense() {
        let diag = [2.0, -1.0, 0.5, 3.0, 0.0, 1.5];
        let off = [1.0, 0.3, -2.0, 0.7, 1.1];
        let mut t = DMatrix::<f64>::zeros(6, 6);
        for i in 0..6 {
            t[(i, i)] = diag[i];
            if i < 5 {
                t[(i, i + 1)] = off[i];
                t[(i + 1, i)] = off[i];
            }
        }
        let eig = t.clone().symmetric_eigen();
        let max = eig.eigenvalues.max();
        let min = eig.eigenvalues.min();
        for (largest, expect) in [(true, max), (false, min)] {
            let (theta, v) = tridiag_extreme(&diag, &off, largest);
            assert!((theta - expect).abs() < 1e-10, "{theta} vs {expect}");
            let tv = &t * DMatrix::from_column_slice(6, 1, &v);
            let r: f64 = (0..6).map(|i| (tv[i] - theta * v[i]).powi(2)).sum::<f64>().sqrt();
            assert!(r < 1e-8, "residual {r}");
        }
    }

    #[test]
    fn petersen_extremes() {
        let e = extreme_eigenvalues(&Graph::petersen(), &LanczosOptions::default()).unwrap();
        assert!((e.largest - 1.0).abs() < 1e-8);
        assert!((e.smallest + 2.0).abs() < 1e-8);
    }
}
