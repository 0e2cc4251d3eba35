//! Exhaustive vertex-expansion and Cheeger constants.
//!
//! Subsets are enumerated as bitmasks. The mask is split into a high part,
//! scanned in parallel, and a low part of at most 16 vertices whose
//! neighbourhood unions and internal edge counts are tabulated once. For a
//! fixed high part the remaining per-mask work is a handful of table lookups.

use super::{components, Graph, VertexSet};
use crate::error::{Error, Result};
use num_rational::Ratio;
use rayon::prelude::*;

/// Largest vertex count accepted by [`expansion_exact`] and [`cheeger_exact`].
pub const EXACT_CAP: usize = 24;

const LOW_BITS: usize = 16;

/// An exact ratio together with a vertex set attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutWitness {
    pub value: Ratio<u64>,
    pub witness: VertexSet,
}

/// `min |∂Y| / |Y|` over nonempty `Y` with `|Y| <= n / 2`.
///
/// A disconnected graph has value 0, witnessed by its smallest component.
pub fn expansion_exact(g: &Graph) -> Result<CutWitness> {
    check_cap(g)?;
    if let Some(w) = disconnected_witness(g) {
        return Ok(w);
    }
    let n = g.n();
    let table = Tables::new(g);
    let (value, mask) = table
        .scan(false, |size, boundary, _cut| {
            (size as usize * 2 <= n).then(|| Ratio::new(boundary as u64, size as u64))
        })
        .expect("a connected graph with n >= 2 has a set of size <= n/2");
    Ok(CutWitness { value, witness: VertexSet::from_mask(n, mask) })
}

/// `min |E(Y, Y')| / min(|Y|, |Y'|)` over partitions `V = Y ⊔ Y'` into two
/// nonempty parts, parallel edges counted with multiplicity.
pub fn cheeger_exact(g: &Graph) -> Result<CutWitness> {
    check_cap(g)?;
    if let Some(w) = disconnected_witness(g) {
        return Ok(w);
    }
    let n = g.n();
    let table = Tables::new(g);
    // Y and its complement give the same ratio: keep the top vertex outside Y.
    let (value, mask) = table
        .scan(true, |size, _boundary, cut| {
            let small = (size as usize).min(n - size as usize) as u64;
            Some(Ratio::new(cut, small))
        })
        .expect("n >= 2 has a proper partition");
    Ok(CutWitness { value, witness: VertexSet::from_mask(n, mask) })
}

fn check_cap(g: &Graph) -> Result<()> {
    if g.n() > EXACT_CAP {
        return Err(Error::cap("vertex count for exact mode", g.n() as u128, EXACT_CAP as u128));
    }
    if g.n() < 2 {
        return Err(Error::invalid("exact expansion needs at least two vertices"));
    }
    Ok(())
}

fn disconnected_witness(g: &Graph) -> Option<CutWitness> {
    let comps = components(g);
    if comps.len() == 1 {
        return None;
    }
    let smallest = comps.into_iter().min_by_key(|c| (c.len(), c[0])).unwrap();
    Some(CutWitness {
        value: Ratio::from_integer(0),
        witness: VertexSet::from_iter(g.n(), smallest),
    })
}

struct Tables {
    n: usize,
    lo: usize,
    hi: usize,
    /// Neighbour mask of each vertex (loops excluded).
    nbr: Vec<u32>,
    /// Non-loop degree of each vertex.
    deg: Vec<u64>,
    /// Off-diagonal adjacency, row-major.
    adj: Vec<u64>,
    /// Per low mask: union of neighbour masks, non-loop degree sum, and the
    /// ordered-pair internal edge count `sum_{u != v in L} A[u][v]`.
    lo_union: Vec<u32>,
    lo_deg: Vec<u64>,
    lo_inner: Vec<u64>,
}

impl Tables {
    fn new(g: &Graph) -> Self {
        let n = g.n();
        let a = g.adjacency_matrix();
        let mut adj = vec![0u64; n * n];
        let mut nbr = vec![0u32; n];
        let mut deg = vec![0u64; n];
        for u in 0..n {
            for v in 0..n {
                if u != v && a[(u, v)] > 0 {
                    adj[u * n + v] = a[(u, v)] as u64;
                    nbr[u] |= 1 << v;
                    deg[u] += a[(u, v)] as u64;
                }
            }
        }
        let lo = n.min(LOW_BITS);
        let size = 1usize << lo;
        let mut lo_union = vec![0u32; size];
        let mut lo_deg = vec![0u64; size];
        let mut lo_inner = vec![0u64; size];
        for mask in 1..size {
            let v = mask.trailing_zeros() as usize;
            let rest = mask & (mask - 1);
            lo_union[mask] = lo_union[rest] | nbr[v];
            lo_deg[mask] = lo_deg[rest] + deg[v];
            let to_rest: u64 = ones(rest as u64).map(|u| adj[v * n + u]).sum();
            lo_inner[mask] = lo_inner[rest] + 2 * to_rest;
        }
        Tables { n, lo, hi: n - lo, nbr, deg, adj, lo_union, lo_deg, lo_inner }
    }

    /// Minimum of `f(size, boundary, cut)` over nonempty proper subsets, ties
    /// broken by the smallest mask. With `skip_top`, subsets containing
    /// vertex `n - 1` are skipped.
    fn scan<F>(&self, skip_top: bool, f: F) -> Option<(Ratio<u64>, u64)>
    where
        F: Fn(u32, u32, u64) -> Option<Ratio<u64>> + Sync,
    {
        let n = self.n;
        let full: u64 = (1u64 << n) - 1;
        let hi_count = 1u64 << self.hi;
        (0..hi_count)
            .into_par_iter()
            .filter_map(|h| {
                let hmask = h << self.lo;
                if skip_top && hmask >> (n - 1) & 1 == 1 {
                    return None;
                }
                let hi_vertices: Vec<usize> = ones(hmask).collect();
                let h_union = hi_vertices.iter().fold(0u32, |acc, &v| acc | self.nbr[v]);
                let h_deg: u64 = hi_vertices.iter().map(|&v| self.deg[v]).sum();
                let mut h_inner = 0u64;
                for &u in &hi_vertices {
                    for &v in &hi_vertices {
                        h_inner += self.adj[u * n + v];
                    }
                }
                // edges from each low vertex into the high part
                let to_h: Vec<u64> = (0..self.lo)
                    .map(|v| hi_vertices.iter().map(|&u| self.adj[v * n + u]).sum())
                    .collect();
                let mut cross = vec![0u64; 1 << self.lo];
                let mut best: Option<(Ratio<u64>, u64)> = None;
                for l in 0..(1usize << self.lo) {
                    if l > 0 {
                        let v = l.trailing_zeros() as usize;
                        cross[l] = cross[l & (l - 1)] + to_h[v];
                    }
                    let mask = hmask | l as u64;
                    if mask == 0 || mask == full {
                        continue;
                    }
                    if skip_top && mask >> (n - 1) & 1 == 1 {
                        continue;
                    }
                    let size = mask.count_ones();
                    let union = (h_union | self.lo_union[l]) as u64;
                    let boundary = (union & !mask & full).count_ones();
                    let inner = h_inner + self.lo_inner[l] + 2 * cross[l];
                    let cut = h_deg + self.lo_deg[l] - inner;
                    if let Some(r) = f(size, boundary, cut) {
                        if best.is_none_or(|b| (r, mask) < b) {
                            best = Some((r, mask));
                        }
                    }
                }
                best
            })
            .min()
    }
}

fn ones(mut x: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if x == 0 {
            None
        } else {
            let v = x.trailing_zeros() as usize;
            x &= x - 1;
            Some(v)
        }
    })
}
