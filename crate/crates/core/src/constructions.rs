//! Zig-zag products, the iterated zig-zag family, and random regular graphs.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spectral::{spectrum, spectrum_extremes, LanczosOptions, Spectrum, DENSE_CAP};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Levels larger than this many vertices are not built.
pub const VERTEX_CAP: usize = 1 << 20;

/// `X ∘ Y` for an `(n, m)`-graph `X` and a `d`-regular `Y` on `m` vertices.
///
/// Vertex `(v, i)` is numbered `v * m + i`; port `(a, b)` is `a * d + b`.
/// The step from `(v, i)` along `(a, b)` takes port `a` of `Y` at `i`, the
/// `X`-edge at the port reached, then port `b` of `Y`; the reverse step uses
/// the two `Y`-ports met on the way, swapped.
pub fn zigzag(x: &Graph, y: &Graph) -> Result<Graph> {
    let m = x.k();
    if y.n() != m {
        return Err(Error::Mismatch { expected: m, found: y.n() });
    }
    let d = y.k();
    let n = x.n();
    let rot: Vec<(u32, u32)> = (0..n * m)
        .into_par_iter()
        .flat_map_iter(|vi| {
            let (v, i) = (vi / m, vi % m);
            (0..d * d).map(move |ab| {
                let (a, b) = (ab / d, ab % d);
                let (i1, a_back) = y.rot(i, a);
                let (w, i2) = x.rot(v, i1);
                let (j, b_back) = y.rot(i2, b);
                ((w * m + j) as u32, (b_back * d + a_back) as u32)
            })
        })
        .collect();
    Ok(Graph::from_rotation_unchecked(n * m, d * d, rot))
}

/// Configuration model: the `n·k` ports are shuffled and paired in order.
/// Loops and parallel edges are kept.
pub fn random_regular(n: usize, k: usize, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::invalid("n must be positive"));
    }
    if (n * k) % 2 == 1 {
        return Err(Error::invalid(format!("n·k = {} is odd", n * k)));
    }
    Ok(configuration(n, k, seed))
}

/// The configuration model allowing odd `n·k`: the last port in the
/// shuffled order is left as a half-loop, fixed by the rotation map.
pub fn random_regular_odd(n: usize, k: usize, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::invalid("n must be positive"));
    }
    Ok(configuration(n, k, seed))
}

fn configuration(n: usize, k: usize, seed: u64) -> Graph {
    let partner = configuration_partners(n * k, &mut ChaCha8Rng::seed_from_u64(seed));
    from_partners(n, k, &partner)
}

/// A random port pairing; with an odd port count the last port in shuffled
/// order is its own partner.
fn configuration_partners(ports: usize, rng: &mut ChaCha8Rng) -> Vec<u32> {
    let mut order: Vec<u32> = (0..ports as u32).collect();
    order.shuffle(rng);
    let mut partner = vec![0u32; ports];
    for pair in order.chunks(2) {
        match *pair {
            [a, b] => {
                partner[a as usize] = b;
                partner[b as usize] = a;
            }
            [a] => partner[a as usize] = a,
            _ => unreachable!(),
        }
    }
    partner
}

fn from_partners(n: usize, k: usize, partner: &[u32]) -> Graph {
    let rot = partner.iter().map(|&x| (x / k as u32, x % k as u32)).collect();
    Graph::from_rotation_unchecked(n, k, rot)
}

/// Spectrum used for gaps: dense when small, Lanczos extremes otherwise.
fn spectrum_for_gap(g: &Graph, opts: &LanczosOptions) -> Result<Spectrum> {
    if g.n() <= DENSE_CAP {
        spectrum(g)
    } else {
        spectrum_extremes(g, opts)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BaseSearchOptions {
    pub trials: usize,
    /// Largest acceptable `λ(X)/d`.
    pub threshold: f64,
    /// Double-edge switches tried per trial after the initial draw.
    pub switches: usize,
}

impl Default for BaseSearchOptions {
    fn default() -> Self {
        BaseSearchOptions { trials: 200, threshold: 0.9, switches: 400 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BaseSearch {
    pub trial: usize,
    pub seed: u64,
    /// `λ(X)/d` of the winner.
    pub ratio: f64,
}

fn ratio_of(g: &Graph) -> f64 {
    spectrum(g).map(|s| s.lambda_abs() / g.k() as f64).unwrap_or(f64::INFINITY)
}

/// One trial: a configuration-model draw, then random double-edge switches
/// `{a–b, c–e} → {a–c, b–e}` kept whenever `λ(X)/d` does not grow.
fn base_trial(n: usize, d: usize, seed: u64, switches: usize) -> (Graph, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut partner = configuration_partners(n * d, &mut rng);
    let mut g = from_partners(n, d, &partner);
    let mut best = ratio_of(&g);
    let paired: Vec<u32> = (0..partner.len() as u32).filter(|&x| partner[x as usize] != x).collect();
    if paired.len() < 4 {
        return (g, best);
    }
    for _ in 0..switches {
        let a = *paired.choose(&mut rng).unwrap();
        let c = *paired.choose(&mut rng).unwrap();
        let (b, e) = (partner[a as usize], partner[c as usize]);
        if a == c || a == e {
            continue;
        }
        let mut next = partner.clone();
        next[a as usize] = c;
        next[c as usize] = a;
        next[b as usize] = e;
        next[e as usize] = b;
        let h = from_partners(n, d, &next);
        let r = ratio_of(&h);
        if r <= best {
            best = r;
            partner = next;
            g = h;
        }
    }
    (g, best)
}

/// Searches for a `d`-regular graph on `d⁴` vertices with small `λ(X)/d`.
///
/// Trial `t` uses seed `seed + t`: a configuration-model draw improved by
/// double-edge switches. The best trial wins, ties to the earliest. Fails
/// unless its ratio is at most `opts.threshold`. For odd `d` the port count
/// `d⁵` is odd, so every candidate carries one half-loop.
pub fn base_graph_search(d: usize, seed: u64, opts: &BaseSearchOptions) -> Result<(Graph, BaseSearch)> {
    if d < 3 {
        return Err(Error::invalid(format!("degree {d} < 3")));
    }
    if opts.trials == 0 {
        return Err(Error::invalid("no trials"));
    }
    let n = d.pow(4);
    let scored: Vec<(usize, f64)> = (0..opts.trials)
        .into_par_iter()
        .map(|t| (t, base_trial(n, d, seed.wrapping_add(t as u64), opts.switches).1))
        .collect();
    let (trial, ratio) = scored
        .into_iter()
        .fold((0, f64::INFINITY), |best, cur| if cur.1 < best.1 { cur } else { best });
    if ratio > opts.threshold {
        return Err(Error::ThresholdUnmet { best: ratio });
    }
    let s = seed.wrapping_add(trial as u64);
    Ok((base_trial(n, d, s, opts.switches).0, BaseSearch { trial, seed: s, ratio }))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelReport {
    pub level: usize,
    pub n: usize,
    pub k: usize,
    pub lambda_abs_normalized: f64,
}

/// `X_1 = X²`, `X_{i+1} = X_i² ∘ X`.
#[derive(Clone, Debug)]
pub struct ZigZagFamily {
    pub base: Graph,
    pub levels: Vec<Graph>,
    pub gaps: Vec<f64>,
    /// Set when a level would have exceeded the vertex cap.
    pub truncated: bool,
}

impl ZigZagFamily {
    pub fn report(&self) -> Vec<LevelReport> {
        self.levels
            .iter()
            .zip(&self.gaps)
            .enumerate()
            .map(|(i, (g, &gap))| LevelReport { level: i + 1, n: g.n(), k: g.k(), lambda_abs_normalized: gap })
            .collect()
    }
}

pub fn iterate_family(base: &Graph, levels: usize) -> Result<ZigZagFamily> {
    iterate_family_with(base, levels, VERTEX_CAP, &LanczosOptions::default())
}

pub fn iterate_family_with(
    base: &Graph,
    levels: usize,
    vertex_cap: usize,
    opts: &LanczosOptions,
) -> Result<ZigZagFamily> {
    let d = base.k();
    if base.n() != d.pow(4) {
        return Err(Error::Mismatch { expected: d.pow(4), found: base.n() });
    }
    let mut fam = ZigZagFamily { base: base.clone(), levels: Vec::new(), gaps: Vec::new(), truncated: false };
    for level in 1..=levels {
        let size = if level == 1 { base.n() } else { fam.levels.last().unwrap().n() * base.n() };
        if size > vertex_cap {
            fam.truncated = true;
            break;
        }
        let g = match fam.levels.last() {
            None => base.square(),
            Some(prev) => zigzag(&prev.square(), base)?,
        };
        debug_assert_eq!((g.n(), g.k()), (d.pow(4 * level as u32), d * d));
        let s = spectrum_for_gap(&g, opts)?;
        fam.gaps.push(s.lambda_abs() / (d * d) as f64);
        fam.levels.push(g);
    }
    Ok(fam)
}
