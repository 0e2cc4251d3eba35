//! Binary linear codes: cycle codes of graphs, Tanner codes over an inner
//! code, exact minimum distance for small dimension, and the Alon–Chung
//! edge-count check.

mod alon_chung;
mod gf2;

pub use alon_chung::{alon_chung_check, alon_chung_check_with, alon_chung_lambda, AlonChung};
pub use gf2::{BitMatrix, BitVec};

use crate::error::{Error, Result};
use crate::graph::{Graph, Port};
use crate::spectral::spectrum;
use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Largest dimension [`min_distance_exact`] enumerates.
pub const MINDIST_CAP: usize = 28;
const TOL: f64 = 1e-12;

/// `C = {x : Hx = 0}`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearCode {
    h: BitMatrix,
    dim: usize,
    mindist: Option<usize>,
}

impl LinearCode {
    /// The code with parity-check matrix `h`; rows may be redundant.
    pub fn from_parity_check(h: BitMatrix) -> Self {
        let dim = h.cols() - h.rank();
        LinearCode { h, dim, mindist: None }
    }

    /// The span of `gens`, which must all have length `n`.
    pub fn from_generators(n: usize, gens: Vec<BitVec>) -> Self {
        let g = BitMatrix::from_rows(n, gens);
        LinearCode::from_parity_check(BitMatrix::from_rows(n, g.null_space()))
    }

    pub fn repetition(n: usize) -> Self {
        let rows = (1..n)
            .map(|i| {
                let mut r = BitVec::unit(n, 0);
                r.set(i, true);
                r
            })
            .collect();
        LinearCode::from_parity_check(BitMatrix::from_rows(n, rows))
    }

    /// The `[n, n−1, 2]` even-weight code.
    pub fn even_weight(n: usize) -> Self {
        LinearCode::from_parity_check(BitMatrix::from_rows(n, vec![BitVec::from_bools(&vec![true; n])]))
    }

    /// All of `F_2^n`.
    pub fn full(n: usize) -> Self {
        LinearCode::from_parity_check(BitMatrix::new(n))
    }

    /// `{0}`.
    pub fn zero(n: usize) -> Self {
        LinearCode::from_parity_check(BitMatrix::from_rows(n, (0..n).map(|i| BitVec::unit(n, i)).collect()))
    }

    pub fn n(&self) -> usize {
        self.h.cols()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn parity_check(&self) -> &BitMatrix {
        &self.h
    }

    pub fn rate(&self) -> f64 {
        self.dim as f64 / self.n() as f64
    }

    /// The stored minimum distance, if it has been computed.
    pub fn mindist(&self) -> Option<usize> {
        self.mindist
    }

    /// Computes and stores the minimum distance. `None` for the zero code.
    pub fn compute_mindist(&mut self) -> Result<Option<usize>> {
        let d = min_distance_exact(self)?;
        self.mindist = d;
        Ok(d)
    }

    /// A basis of the code.
    pub fn generators(&self) -> Vec<BitVec> {
        self.h.null_space()
    }

    pub fn contains(&self, word: &BitVec) -> bool {
        word.len() == self.n() && self.h.mul_vec(word).is_zero()
    }

    /// Every codeword, for small dimension.
    pub fn codewords(&self) -> Result<Vec<BitVec>> {
        if self.dim > 20 {
            return Err(Error::cap("code dimension", self.dim as u128, 20u128));
        }
        let gens = self.generators();
        Ok((0u64..1 << self.dim)
            .map(|mask| {
                let mut w = BitVec::zeros(self.n());
                for (i, g) in gens.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        w.xor_with(g);
                    }
                }
                w
            })
            .collect())
    }
}

/// `H·word`.
pub fn syndrome(c: &LinearCode, word: &BitVec) -> Result<BitVec> {
    if word.len() != c.n() {
        return Err(Error::Mismatch { expected: c.n(), found: word.len() });
    }
    Ok(c.h.mul_vec(word))
}

/// Minimum nonzero codeword weight by Gray-code enumeration of all `2^dim`
/// codewords. `None` for the zero code.
pub fn min_distance_exact(c: &LinearCode) -> Result<Option<usize>> {
    let k = c.dim;
    if k > MINDIST_CAP {
        return Err(Error::cap("code dimension", k as u128, MINDIST_CAP as u128));
    }
    if k == 0 {
        return Ok(None);
    }
    let gens: Vec<Vec<u64>> = c.generators().iter().map(|g| g.words().to_vec()).collect();
    let high = k.min(8);
    let low = k - high;
    let best = (0u64..1 << high)
        .into_par_iter()
        .map(|prefix| {
            let mut x = vec![0u64; gens[0].len()];
            for j in 0..high {
                if prefix >> j & 1 == 1 {
                    xor_into(&mut x, &gens[low + j]);
                }
            }
            let mut best = if prefix != 0 { weight(&x) } else { usize::MAX };
            for i in 1u64..1 << low {
                xor_into(&mut x, &gens[i.trailing_zeros() as usize]);
                best = best.min(weight(&x));
            }
            best
        })
        .min()
        .unwrap();
    Ok(Some(best))
}

fn xor_into(x: &mut [u64], y: &[u64]) {
    for (a, b) in x.iter_mut().zip(y) {
        *a ^= b;
    }
}

fn weight(x: &[u64]) -> usize {
    x.iter().map(|w| w.count_ones() as usize).sum()
}

/// Edge index of every port, following [`Graph::pairings`].
fn edge_ids(g: &Graph) -> (Vec<(Port, Port)>, Vec<usize>) {
    let edges = g.pairings();
    let mut id = vec![0usize; g.n() * g.k()];
    for (e, &((v, p), (w, q))) in edges.iter().enumerate() {
        id[v * g.k() + p] = e;
        id[w * g.k() + q] = e;
    }
    (edges, id)
}

#[derive(Clone, Debug, PartialEq)]
pub struct CycleCode {
    pub code: LinearCode,
    /// Bit `i` is the `i`-th entry of [`Graph::pairings`].
    pub edges: Vec<(Port, Port)>,
    pub components: usize,
    /// `|E| − |V| + components`.
    pub expected_dim: usize,
}

impl CycleCode {
    pub fn connected(&self) -> bool {
        self.components == 1
    }
}

/// The code on the edges of `g` whose words have even degree at every
/// vertex. A loop sits twice in its vertex's row and cancels; a half-loop
/// sits once.
pub fn cycle_code(g: &Graph) -> CycleCode {
    let (edges, id) = edge_ids(g);
    let m = edges.len();
    let mut h = BitMatrix::new(m);
    for v in 0..g.n() {
        let mut row = BitVec::zeros(m);
        for p in 0..g.k() {
            row.flip(id[v * g.k() + p]);
        }
        h.push(row);
    }
    let components = crate::graph::components(g).len();
    CycleCode { code: LinearCode::from_parity_check(h), edges, components, expected_dim: m + components - g.n() }
}

/// For each vertex, a bijection from ports to local positions `0..r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeLabeling {
    labels: Vec<Vec<u32>>,
}

impl EdgeLabeling {
    pub fn new(labels: Vec<Vec<u32>>) -> Result<Self> {
        for (v, l) in labels.iter().enumerate() {
            let mut seen = vec![false; l.len()];
            for &x in l {
                if (x as usize) >= l.len() || std::mem::replace(&mut seen[x as usize], true) {
                    return Err(Error::invalid(format!("labeling at vertex {v} is not a bijection")));
                }
            }
        }
        Ok(EdgeLabeling { labels })
    }

    /// Port `p` gets label `p`.
    pub fn by_port(g: &Graph) -> Self {
        EdgeLabeling { labels: vec![(0..g.k() as u32).collect(); g.n()] }
    }

    /// An independent uniformly random bijection at every vertex.
    pub fn random(g: &Graph, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let labels = (0..g.n())
            .map(|_| {
                let mut l: Vec<u32> = (0..g.k() as u32).collect();
                l.shuffle(&mut rng);
                l
            })
            .collect();
        EdgeLabeling { labels }
    }

    pub fn label(&self, v: usize, p: usize) -> usize {
        self.labels[v][p] as usize
    }
}

/// `C(X, C_0)`: the words on the edges of `X` whose local view at every
/// vertex, read through the labeling, lies in `C_0`. Each parity row of
/// `C_0` becomes one row per vertex.
pub fn tanner_code(g: &Graph, c0: &LinearCode, lab: &EdgeLabeling) -> Result<LinearCode> {
    let r = g.k();
    if c0.n() != r {
        return Err(Error::Mismatch { expected: r, found: c0.n() });
    }
    if lab.labels.len() != g.n() || lab.labels.iter().any(|l| l.len() != r) {
        return Err(Error::invalid("labeling does not match the graph"));
    }
    let (edges, id) = edge_ids(g);
    let mut h = BitMatrix::new(edges.len());
    for v in 0..g.n() {
        for row0 in c0.parity_check().rows() {
            let mut row = BitVec::zeros(edges.len());
            for p in 0..r {
                if row0.get(lab.label(v, p)) {
                    row.flip(id[v * r + p]);
                }
            }
            h.push(row);
        }
    }
    Ok(LinearCode::from_parity_check(h))
}

/// Rate and distance of a Tanner code against the expander-code bounds.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub n: usize,
    pub dim: usize,
    pub rate: f64,
    pub rate_bound: f64,
    /// Set when `rate_bound ≤ 0`, which every code meets.
    pub rate_vacuous: bool,
    pub mindist: Option<usize>,
    pub delta: Option<f64>,
    pub delta_bound: f64,
    pub lambda_normalized: f64,
    /// Whether the measured values meet both bounds. The distance bound is
    /// only checked when the exact oracle ran.
    pub verified: bool,
}

/// Builds `C(X, C_0)` and checks it against `rate ≥ 2r_0 − 1` and
/// `δ ≥ ((δ_0 − λ)/(1 − λ))²` with `λ` the largest nontrivial `|eigenvalue|`
/// of `X` over `r`.
pub fn rate_distance_certificate(g: &Graph, c0: &LinearCode, lab: &EdgeLabeling) -> Result<Certificate> {
    let r = g.k();
    let mut c0 = c0.clone();
    let d0 = c0
        .compute_mindist()?
        .ok_or_else(|| Error::Refused("the inner code is zero".into()))?;
    if !g.is_connected() {
        return Err(Error::Refused("graph is disconnected".into()));
    }
    let lambda = spectrum(g)?.lambda_nontrivial() / r as f64;
    let delta0 = d0 as f64 / r as f64;
    if lambda >= delta0 {
        return Err(Error::Refused(format!("λ = {lambda:.6} is not below δ0 = {delta0:.6}")));
    }
    let r0 = c0.dim() as f64 / r as f64;
    let rate_bound = 2.0 * r0 - 1.0;
    let delta_bound = ((delta0 - lambda) / (1.0 - lambda)).powi(2);
    let mut code = tanner_code(g, &c0, lab)?;
    let n = code.n();
    let mindist = if code.dim() <= MINDIST_CAP { code.compute_mindist()? } else { None };
    let rate = code.dim() as f64 / n as f64;
    let delta = mindist.map(|d| d as f64 / n as f64);
    let verified = rate >= rate_bound - TOL && delta.is_none_or(|d| d >= delta_bound - TOL);
    Ok(Certificate {
        n,
        dim: code.dim(),
        rate,
        rate_bound,
        rate_vacuous: rate_bound <= 0.0,
        mindist,
        delta,
        delta_bound,
        lambda_normalized: lambda,
        verified,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct InnerSearch {
    pub code: LinearCode,
    pub found: bool,
    /// Set when the code came from the greedy lexicode fallback.
    pub lexicode: bool,
}

fn qualifies(c: &LinearCode, r: usize, rate_floor: Ratio<u64>, delta_floor: f64) -> bool {
    let rate_ok = (c.dim() as u64) * rate_floor.denom() > rate_floor.numer() * r as u64;
    rate_ok && c.mindist().is_some_and(|d| d as f64 / r as f64 > delta_floor)
}

/// Looks for a length-`r` code with `dim/r > rate_floor` and
/// `d/r > delta_floor`.
///
/// Trial `t` draws a random parity-check matrix with just enough rows to
/// clear the rate floor, from seed `seed + t`. If no trial qualifies and
/// `r ≤ 14`, the greedy linear lexicode of the smallest admissible distance
/// is tried. Otherwise the best candidate seen comes back with `found`
/// unset.
pub fn inner_code_search(
    r: usize,
    rate_floor: Ratio<u64>,
    delta_floor: f64,
    seed: u64,
    trials: usize,
) -> Result<InnerSearch> {
    if r < 3 {
        return Err(Error::invalid(format!("length {r} < 3")));
    }
    if r > 63 {
        return Err(Error::cap("inner code length", r as u128, 63u128));
    }
    // smallest dimension strictly above the floor
    let kmin = ((rate_floor * Ratio::from_integer(r as u64)).floor().to_integer() + 1) as usize;
    let mut best: Option<LinearCode> = None;
    let score = |c: &LinearCode| (c.mindist().unwrap_or(0), c.dim());
    if kmin <= r {
        let m = r - kmin;
        for t in 0..trials {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(t as u64));
            let rows = (0..m)
                .map(|_| BitVec::from_bools(&(0..r).map(|_| rng.random_bool(0.5)).collect::<Vec<_>>()))
                .collect();
            let mut c = LinearCode::from_parity_check(BitMatrix::from_rows(r, rows));
            c.compute_mindist()?;
            if qualifies(&c, r, rate_floor, delta_floor) {
                return Ok(InnerSearch { code: c, found: true, lexicode: false });
            }
            if best.as_ref().is_none_or(|b| score(&c) > score(b)) {
                best = Some(c);
            }
        }
    }
    if r <= 14 {
        let d = (delta_floor * r as f64).floor() as usize + 1;
        let mut c = lexicode(r, d);
        c.compute_mindist()?;
        if qualifies(&c, r, rate_floor, delta_floor) {
            return Ok(InnerSearch { code: c, found: true, lexicode: true });
        }
        if best.as_ref().is_none_or(|b| score(&c) > score(b)) {
            best = Some(c);
        }
    }
    Ok(InnerSearch { code: best.unwrap_or_else(|| LinearCode::zero(r)), found: false, lexicode: false })
}

/// The linear lexicode of length `r` and distance `d`: scan `1..2^r` in
/// order, adding each vector at distance `≥ d` from the current span.
fn lexicode(r: usize, d: usize) -> LinearCode {
    let mut span: Vec<u64> = vec![0];
    let mut gens = Vec::new();
    for v in 1u64..1 << r {
        if span.iter().all(|&c| ((c ^ v).count_ones() as usize) >= d) {
            gens.push(v);
            let shifted: Vec<u64> = span.iter().map(|&c| c ^ v).collect();
            span.extend(shifted);
        }
    }
    let gens = gens
        .into_iter()
        .map(|v| BitVec::from_bools(&(0..r).map(|i| v >> i & 1 == 1).collect::<Vec<_>>()))
        .collect();
    LinearCode::from_generators(r, gens)
}

/// Parses the code file format: `rows n`, then `rows` lines of `n` digits.
pub fn read_code(text: &str) -> Result<LinearCode> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (hl, header) = lines.next().ok_or(Error::Parse { line: 1, message: "empty input".into() })?;
    let nums: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::Parse { line: hl + 1, message: format!("bad number {t:?}") }))
        .collect::<Result<_>>()?;
    let [rows, n] = nums[..] else {
        return Err(Error::Parse { line: hl + 1, message: "expected `rows n`".into() });
    };
    let mut h = BitMatrix::new(n);
    for (i, l) in lines {
        let l = l.trim();
        if l.len() != n || !l.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(Error::Parse { line: i + 1, message: format!("expected {n} binary digits") });
        }
        h.push(BitVec::from_bools(&l.bytes().map(|b| b == b'1').collect::<Vec<_>>()));
    }
    if h.row_count() != rows {
        return Err(Error::Parse { line: hl + 1, message: format!("header says {rows} rows, found {}", h.row_count()) });
    }
    Ok(LinearCode::from_parity_check(h))
}

pub fn write_code(c: &LinearCode) -> String {
    let mut out = format!("{} {}\n", c.h.row_count(), c.n());
    for r in c.h.rows() {
        out.push_str(&format!("{r:?}\n"));
    }
    out
}

/// Codeword sets compared as sets, for small codes.
pub fn same_code(a: &LinearCode, b: &LinearCode) -> bool {
    if a.n() != b.n() || a.dim() != b.dim() {
        return false;
    }
    a.generators().iter().all(|g| b.contains(g))
}
