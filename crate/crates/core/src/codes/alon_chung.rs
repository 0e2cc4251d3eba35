use crate::error::Result;
use crate::graph::{Graph, VertexSet};
use crate::spectral::spectrum;
use serde::{Deserialize, Serialize};

const TOL: f64 = 1e-9;

/// Edges inside `Y` against `½rγ²m`, with the allowed deviation
/// `(r/2)λγ(1−γ)m`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlonChung {
    pub edges: usize,
    pub expected: f64,
    pub deviation: f64,
    pub bound: f64,
    pub ok: bool,
}

/// `λ/r` as used by the edge-count lemma: the largest `|eigenvalue|` other
/// than the top one, over `r`. For a bipartite graph this is 1.
pub fn alon_chung_lambda(g: &Graph) -> Result<f64> {
    Ok(spectrum(g)?.lambda_nontrivial() / g.k() as f64)
}

pub fn alon_chung_check(g: &Graph, y: &VertexSet) -> Result<AlonChung> {
    Ok(alon_chung_check_with(g, alon_chung_lambda(g)?, y))
}

/// The check with a precomputed normalized `λ`, for sweeps over many
/// subsets of one graph.
pub fn alon_chung_check_with(g: &Graph, lambda: f64, y: &VertexSet) -> AlonChung {
    let m = g.n() as f64;
    let r = g.k() as f64;
    let gamma = y.len() as f64 / m;
    let edges = g.internal_edges(y);
    let expected = 0.5 * r * gamma * gamma * m;
    let deviation = (edges as f64 - expected).abs();
    let bound = 0.5 * r * lambda * gamma * (1.0 - gamma) * m;
    AlonChung { edges, expected, deviation, bound, ok: deviation <= bound + TOL }
}
