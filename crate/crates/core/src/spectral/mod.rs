//! Adjacency spectra and the certificates derived from them.
//!
//! Graphs up to [`DENSE_CAP`] vertices get their full spectrum from a dense
//! symmetric eigensolver. Larger graphs get only `λ0 = k`, `λ1` and `λ_{n-1}`
//! from [`lanczos`], which is all the certificates here need.

pub mod lanczos;

use crate::error::{Error, Result};
use crate::graph::{bipartition, components, Graph};
use serde::{Deserialize, Serialize};

pub use lanczos::{extreme_eigenvalues, Extremes, LanczosOptions};

/// Absolute tolerance for eigenvalue comparisons.
pub const TOL: f64 = 1e-9;
/// Eigenvalues closer than this are reported as one value with multiplicity.
pub const MULTIPLICITY_TOL: f64 = 1e-6;
/// Largest vertex count handled by the dense solver.
pub const DENSE_CAP: usize = 4096;

#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    n: usize,
    k: usize,
    /// Descending. For a partial spectrum: `[λ0, λ1, λ_{n-1}]`.
    eigenvalues: Vec<f64>,
    partial: bool,
    pub tol: f64,
}

impl Spectrum {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_partial(&self) -> bool {
        self.partial
    }

    /// Known eigenvalues, descending.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn lambda0(&self) -> f64 {
        self.eigenvalues[0]
    }

    /// Second largest eigenvalue (counting multiplicity); `λ0` when `n = 1`.
    pub fn lambda1(&self) -> f64 {
        *self.eigenvalues.get(1).unwrap_or(&self.eigenvalues[0])
    }

    pub fn lambda_min(&self) -> f64 {
        *self.eigenvalues.last().unwrap()
    }

    /// `λ(X)`: the largest `|λ|` among eigenvalues not within `tol` of `±k`,
    /// or 0 if there are none.
    pub fn lambda_abs(&self) -> f64 {
        let k = self.k as f64;
        self.eigenvalues
            .iter()
            .map(|l| l.abs())
            .filter(|a| *a < k - self.tol)
            .fold(0.0, f64::max)
    }

    /// `max(|λ1|, |λ_{n-1}|)`: every eigenvalue except the top one.
    pub fn lambda_nontrivial(&self) -> f64 {
        if self.n < 2 {
            return 0.0;
        }
        self.lambda1().abs().max(self.lambda_min().abs())
    }

    /// Distinct eigenvalues with multiplicities, grouped at
    /// [`MULTIPLICITY_TOL`].
    pub fn multiplicities(&self) -> Vec<(f64, usize)> {
        let mut out: Vec<(f64, usize)> = Vec::new();
        for &l in &self.eigenvalues {
            match out.last_mut() {
                Some((v, m)) if (*v - l).abs() < MULTIPLICITY_TOL => *m += 1,
                _ => out.push((l, 1)),
            }
        }
        out
    }

    pub fn report(&self) -> SpectrumReport {
        let lambda_abs = self.lambda_abs();
        let bound = ramanujan_bound(self.k);
        SpectrumReport {
            n: self.n,
            k: self.k,
            lambda0: self.lambda0(),
            lambda1: self.lambda1(),
            lambda_min: self.lambda_min(),
            lambda_abs,
            ramanujan: lambda_abs <= bound + self.tol,
            margin: bound - lambda_abs,
        }
    }
}

/// Summary emitted as JSON by the CLI.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub n: usize,
    pub k: usize,
    pub lambda0: f64,
    pub lambda1: f64,
    pub lambda_min: f64,
    pub lambda_abs: f64,
    pub ramanujan: bool,
    pub margin: f64,
}

/// Full spectrum for `n <= DENSE_CAP`, extremes otherwise.
pub fn spectrum(g: &Graph) -> Result<Spectrum> {
    if g.n() <= DENSE_CAP {
        Ok(spectrum_dense(g))
    } else {
        spectrum_extremes(g, &LanczosOptions::default())
    }
}

pub fn spectrum_dense(g: &Graph) -> Spectrum {
    let a = g.adjacency_matrix().map(|x| x as f64);
    let mut eig: Vec<f64> = a.symmetric_eigenvalues().iter().copied().collect();
    eig.sort_by(|a, b| b.total_cmp(a));
    Spectrum { n: g.n(), k: g.k(), eigenvalues: eig, partial: false, tol: TOL }
}

/// `λ0 = k` (the constant eigenvector) plus the Lanczos extremes on its
/// complement.
pub fn spectrum_extremes(g: &Graph, opts: &LanczosOptions) -> Result<Spectrum> {
    let k = g.k() as f64;
    let eigenvalues = if g.n() == 1 {
        vec![k]
    } else {
        let e = extreme_eigenvalues(g, opts)?;
        vec![k, e.largest.min(k), e.smallest]
    };
    Ok(Spectrum { n: g.n(), k: g.k(), eigenvalues, partial: true, tol: TOL.max(opts.residual_tol) })
}

/// `λ(X)` of a spectrum, for a graph of degree `k`.
pub fn lambda_abs(s: &Spectrum) -> f64 {
    s.lambda_abs()
}

/// `(connected, bipartite)` read from the spectrum: connected iff
/// `λ1 < k`, bipartite iff `λ_{n-1} = -k`, both up to `tol`.
pub fn connectivity_tests(s: &Spectrum) -> (bool, bool) {
    let k = s.k as f64;
    let connected = s.n == 1 || s.lambda1() < k - s.tol;
    let bipartite = (s.lambda_min() + k).abs() <= s.tol;
    (connected, bipartite)
}

/// [`connectivity_tests`] cross-checked against BFS.
pub fn connectivity_checked(g: &Graph, s: &Spectrum) -> Result<(bool, bool)> {
    let (connected, bipartite) = connectivity_tests(s);
    let bfs_connected = components(g).len() == 1;
    if connected != bfs_connected {
        return Err(Error::Inconsistent(format!(
            "spectrum says connected = {connected} (λ1 = {}), BFS says {bfs_connected}",
            s.lambda1()
        )));
    }
    if bfs_connected {
        let bfs_bipartite = bipartition(g).is_some();
        if bipartite != bfs_bipartite {
            return Err(Error::Inconsistent(format!(
                "spectrum says bipartite = {bipartite} (λ_min = {}), 2-colouring says {bfs_bipartite}",
                s.lambda_min()
            )));
        }
    }
    Ok((connected, bipartite))
}

/// `2 sqrt(k - 1)`.
pub fn ramanujan_bound(k: usize) -> f64 {
    2.0 * ((k as f64) - 1.0).max(0.0).sqrt()
}

/// The asymptotic floor `2 sqrt(k - 1)` for `λ` of large `k`-regular graphs.
pub fn alon_boppana_floor(k: usize) -> Result<f64> {
    if k < 3 {
        return Err(Error::invalid(format!("the floor is stated for k >= 3, got {k}")));
    }
    Ok(ramanujan_bound(k))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RamanujanCheck {
    pub ramanujan: bool,
    pub lambda_abs: f64,
    pub bound: f64,
    /// `bound - lambda_abs`; negative when the check fails.
    pub margin: f64,
}

pub fn is_ramanujan(g: &Graph) -> Result<RamanujanCheck> {
    let s = spectrum(g)?;
    let lambda_abs = s.lambda_abs();
    let bound = ramanujan_bound(g.k());
    Ok(RamanujanCheck {
        ramanujan: lambda_abs <= bound + s.tol,
        lambda_abs,
        bound,
        margin: bound - lambda_abs,
    })
}

/// `((k - λ1) / 2, sqrt((k + λ1)(k - λ1)))`, the spectral bracket on the
/// Cheeger constant. Both ends are 0 when `λ1 = k`.
pub fn cheeger_bounds(s: &Spectrum) -> (f64, f64) {
    let k = s.k as f64;
    let l1 = s.lambda1().min(k);
    if k - l1 <= s.tol {
        return (0.0, 0.0);
    }
    ((k - l1) / 2.0, ((k + l1) * (k - l1)).max(0.0).sqrt())
}

/// Lower bound on the Kazhdan constant of `(G, Σ)` from the Cayley graph's
/// spectral gap: `sqrt(2 (k - λ1) / k)`.
pub fn kazhdan_lower_bound(g: &Graph) -> Result<f64> {
    let s = spectrum(g)?;
    Ok(kazhdan_from_spectrum(&s))
}

pub fn kazhdan_from_spectrum(s: &Spectrum) -> f64 {
    let k = s.k as f64;
    let gap = (k - s.lambda1()).max(0.0);
    if gap <= s.tol {
        return 0.0;
    }
    (2.0 * gap / k).sqrt()
}

/// Distances of the walk `μ_t = (A/k)^t μ_0` to uniform, in L2, with the
/// spectral bound `(λ/k)^t ‖μ_0 − u‖`.
#[derive(Clone, Debug, PartialEq)]
pub struct MixingProfile {
    pub ratio: f64,
    pub distances: Vec<f64>,
    pub bounds: Vec<f64>,
}

impl MixingProfile {
    /// First step at which the measured distance exceeds the bound by more
    /// than `slack`, if any.
    pub fn first_violation(&self, slack: f64) -> Option<usize> {
        self.distances
            .iter()
            .zip(&self.bounds)
            .position(|(d, b)| *d > b + slack)
    }
}

pub fn mixing_profile(g: &Graph, mu0: &[f64], tmax: usize) -> Result<MixingProfile> {
    let s = spectrum(g)?;
    mixing_profile_with(g, &s, mu0, tmax)
}

/// As [`mixing_profile`] with a precomputed spectrum.
pub fn mixing_profile_with(g: &Graph, s: &Spectrum, mu0: &[f64], tmax: usize) -> Result<MixingProfile> {
    let n = g.n();
    if mu0.len() != n {
        return Err(Error::Mismatch { expected: n, found: mu0.len() });
    }
    let total: f64 = mu0.iter().sum();
    if mu0.iter().any(|&x| x < 0.0) || (total - 1.0).abs() > 1e-9 {
        return Err(Error::invalid("initial distribution must be non-negative and sum to 1"));
    }
    let comps = components(g);
    if comps.len() > 1 {
        return Err(Error::Disconnected(comps[0][0], comps[1][0]));
    }
    if let Some(colors) = bipartition(g) {
        let side = (0..n).filter(|&v| !colors[v]).collect();
        return Err(Error::Bipartite { side });
    }
    let k = g.k() as f64;
    let ratio = s.lambda_abs() / k;
    let u = 1.0 / n as f64;
    let dist = |mu: &[f64]| mu.iter().map(|x| (x - u) * (x - u)).sum::<f64>().sqrt();
    let mut mu = mu0.to_vec();
    let d0 = dist(&mu);
    let mut distances = Vec::with_capacity(tmax + 1);
    let mut bounds = Vec::with_capacity(tmax + 1);
    for t in 0..=tmax {
        if t > 0 {
            mu = (0..n).map(|v| g.neighbors(v).map(|w| mu[w]).sum::<f64>() / k).collect();
        }
        distances.push(dist(&mu));
        bounds.push(ratio.powi(t as i32) * d0);
    }
    Ok(MixingProfile { ratio, distances, bounds })
}
