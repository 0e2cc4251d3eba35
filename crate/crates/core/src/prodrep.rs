//! Product replacement: the graph `Ω_r(G)` of generating `r`-tuples under
//! the moves `L_{ij}^±`, `R_{ij}^±`, random walks on it, and their distance
//! to uniform.
//!
//! Tuples hold element indices into a [`GroupTable`]. Indices `i`, `j` of a
//! move are 0-based.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::group::{GroupElement, GroupTable};
use crate::spectral::spectrum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// Largest `|Ω_r(G)|` built as a graph.
pub const OMEGA_CAP: usize = 1 << 20;
/// Largest `|G|^r` scanned while enumerating `Ω_r(G)`.
const TUPLE_SPACE_CAP: u128 = 1 << 26;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    /// `h_j ↦ h_i^{±1} h_j`.
    Left,
    /// `h_j ↦ h_j h_i^{±1}`.
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Move {
    pub side: Side,
    pub i: usize,
    pub j: usize,
    /// `true` for `h_i`, `false` for `h_i⁻¹`.
    pub plus: bool,
}

impl Move {
    pub fn inverse(self) -> Move {
        Move { plus: !self.plus, ..self }
    }
}

/// All `4r(r−1)` moves in port order: side, then `i`, then `j ≠ i`, then
/// sign with `+` first.
pub fn moves(r: usize) -> Vec<Move> {
    let mut out = Vec::with_capacity(4 * r * r.saturating_sub(1));
    for side in [Side::Left, Side::Right] {
        for i in 0..r {
            for j in (0..r).filter(|&j| j != i) {
                for plus in [true, false] {
                    out.push(Move { side, i, j, plus });
                }
            }
        }
    }
    out
}

fn port_of(m: Move, r: usize) -> usize {
    let side = match m.side {
        Side::Left => 0,
        Side::Right => 1,
    };
    let jj = if m.j < m.i { m.j } else { m.j - 1 };
    ((side * r + m.i) * (r - 1) + jj) * 2 + usize::from(!m.plus)
}

pub fn apply_move<E: GroupElement>(tbl: &GroupTable<E>, t: &[usize], m: Move) -> Result<Vec<usize>> {
    if m.i == m.j {
        return Err(Error::invalid(format!("move indices coincide: i = j = {}", m.i)));
    }
    if m.i >= t.len() || m.j >= t.len() {
        return Err(Error::invalid(format!("move ({}, {}) out of range for width {}", m.i, m.j, t.len())));
    }
    Ok(apply_unchecked(tbl, t, m))
}

fn apply_unchecked<E: GroupElement>(tbl: &GroupTable<E>, t: &[usize], m: Move) -> Vec<usize> {
    let hi = if m.plus { t[m.i] } else { tbl.inv(t[m.i]) };
    let mut out = t.to_vec();
    out[m.j] = match m.side {
        Side::Left => tbl.mul(hi, t[m.j]),
        Side::Right => tbl.mul(t[m.j], hi),
    };
    out
}

/// `Ω_r(G)` with its vertex list; vertex `v` is `tuples[v]`.
#[derive(Clone, Debug)]
pub struct Omega {
    pub graph: Graph,
    pub tuples: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl Omega {
    pub fn index_of(&self, t: &[usize]) -> Option<usize> {
        self.index.get(t).copied()
    }
}

/// Builds `Ω_r(G)`: vertices are the generating `r`-tuples in
/// lexicographic order of element indices, port `p` applies `moves(r)[p]`.
pub fn omega_graph<E: GroupElement>(tbl: &GroupTable<E>, r: usize) -> Result<Omega> {
    if r < 2 {
        return Err(Error::invalid(format!("width {r} < 2 admits no moves")));
    }
    let g = tbl.order();
    let space = (g as u128).checked_pow(r as u32).unwrap_or(u128::MAX);
    if space > TUPLE_SPACE_CAP {
        return Err(Error::cap("|G|^r", space, TUPLE_SPACE_CAP));
    }
    let mut memo: HashMap<Vec<usize>, bool> = HashMap::new();
    let mut tuples = Vec::new();
    for code in 0..space as usize {
        let t: Vec<usize> = (0..r).rev().map(|i| code / g.pow(i as u32) % g).collect();
        let mut key = t.clone();
        key.sort_unstable();
        key.dedup();
        let gen = *memo.entry(key).or_insert_with_key(|k| tbl.generates(k));
        if gen {
            tuples.push(t);
        }
    }
    if tuples.len() > OMEGA_CAP {
        return Err(Error::cap("|Ω_r(G)|", tuples.len() as u128, OMEGA_CAP as u128));
    }
    let index: HashMap<Vec<usize>, usize> = tuples.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
    let ms = moves(r);
    let mut rot = Vec::with_capacity(tuples.len() * ms.len());
    for t in &tuples {
        for &m in &ms {
            let u = apply_unchecked(tbl, t, m);
            rot.push((index[&u] as u32, port_of(m.inverse(), r) as u32));
        }
    }
    let graph = Graph::from_rotation(tuples.len(), ms.len(), rot)?;
    Ok(Omega { graph, tuples, index })
}

/// `(g_1, …, g_k, e, …, e)` of width `r`.
pub fn padded_start<E: GroupElement>(tbl: &GroupTable<E>, gens: &[usize], r: usize) -> Result<Vec<usize>> {
    if gens.len() > r {
        return Err(Error::invalid(format!("{} generators do not fit width {r}", gens.len())));
    }
    let mut t = gens.to_vec();
    t.resize(r, tbl.identity());
    Ok(t)
}

/// `steps` uniform moves from `start`, then one uniform coordinate.
/// With `lazy`, each step first stays put with probability ½.
pub fn pr_walk<E: GroupElement>(
    tbl: &GroupTable<E>,
    start: &[usize],
    steps: usize,
    seed: u64,
    lazy: bool,
) -> Result<(Vec<usize>, usize)> {
    let r = start.len();
    if r < 2 {
        return Err(Error::invalid(format!("width {r} < 2 admits no moves")));
    }
    if !tbl.generates(start) {
        return Err(Error::invalid("start tuple does not generate the group"));
    }
    let ms = moves(r);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = start.to_vec();
    for _ in 0..steps {
        if lazy && rng.random_bool(0.5) {
            continue;
        }
        t = apply_unchecked(tbl, &t, ms[rng.random_range(0..ms.len())]);
    }
    let pick = t[rng.random_range(0..r)];
    Ok((t, pick))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TvRow {
    pub step: usize,
    pub tv_empirical: f64,
    pub tv_exact: f64,
    /// `½√N · ρ^t · ‖μ_0 − u‖₂` with `ρ` the walk's second largest
    /// `|eigenvalue|`.
    pub bound: f64,
}

/// Distance to uniform on `Ω_r(G)` at steps `0..=tmax`: empirical from
/// `trials` walks (walk `w` seeded `seed + w`) and exact by powering the
/// transition matrix.
pub fn tv_profile<E: GroupElement>(
    tbl: &GroupTable<E>,
    start: &[usize],
    tmax: usize,
    trials: usize,
    seed: u64,
    lazy: bool,
) -> Result<Vec<TvRow>> {
    let omega = omega_graph(tbl, start.len())?;
    tv_profile_on(&omega, start, tmax, trials, seed, lazy)
}

pub fn tv_profile_on(
    omega: &Omega,
    start: &[usize],
    tmax: usize,
    trials: usize,
    seed: u64,
    lazy: bool,
) -> Result<Vec<TvRow>> {
    let g = &omega.graph;
    let n = g.n();
    let k = g.k();
    let s0 = omega.index_of(start).ok_or_else(|| Error::invalid("start tuple does not generate the group"))?;
    if trials == 0 {
        return Err(Error::invalid("no trials"));
    }

    let paths: Vec<Vec<u32>> = (0..trials)
        .into_par_iter()
        .map(|w| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(w as u64));
            let mut v = s0;
            let mut path = Vec::with_capacity(tmax + 1);
            path.push(v as u32);
            for _ in 0..tmax {
                if !(lazy && rng.random_bool(0.5)) {
                    v = g.rot(v, rng.random_range(0..k)).0;
                }
                path.push(v as u32);
            }
            path
        })
        .collect();
    let mut counts = vec![vec![0u32; n]; tmax + 1];
    for p in &paths {
        for (t, &v) in p.iter().enumerate() {
            counts[t][v as usize] += 1;
        }
    }

    let s = spectrum(g)?;
    let kf = k as f64;
    let rho = if lazy { (1.0 + s.lambda1() / kf) / 2.0 } else { s.lambda_nontrivial() / kf };
    let u = 1.0 / n as f64;
    let l2_0 = ((1.0 - u).powi(2) + (n - 1) as f64 * u * u).sqrt();
    let nbrs = g.weighted_neighbors();

    let mut mu = vec![0.0; n];
    mu[s0] = 1.0;
    let mut rows = Vec::with_capacity(tmax + 1);
    for (t, c) in counts.iter().enumerate() {
        let tv_exact = 0.5 * mu.iter().map(|x| (x - u).abs()).sum::<f64>();
        let tv_empirical = 0.5 * c.iter().map(|&x| (x as f64 / trials as f64 - u).abs()).sum::<f64>();
        let bound = 0.5 * (n as f64).sqrt() * rho.powi(t as i32) * l2_0;
        rows.push(TvRow { step: t, tv_empirical, tv_exact, bound });
        let mut next = vec![0.0; n];
        for (v, nb) in nbrs.iter().enumerate() {
            for &(w, mult) in nb {
                next[w] += mu[v] * mult as f64 / kf;
            }
        }
        if lazy {
            for (x, m) in next.iter_mut().zip(&mu) {
                *x = 0.5 * (*x + m);
            }
        }
        mu = next;
    }
    Ok(rows)
}

/// `step,tv_empirical,tv_exact,bound` lines with a header.
pub fn tv_csv(rows: &[TvRow]) -> String {
    let mut out = String::from("step,tv_empirical,tv_exact,bound\n");
    for r in rows {
        out.push_str(&format!("{},{},{},{}\n", r.step, r.tv_empirical, r.tv_exact, r.bound));
    }
    out
}
