use super::Graph;
use crate::error::{Error, Result};
use rayon::prelude::*;
use std::collections::VecDeque;

/// Connected components, each sorted, ordered by smallest vertex.
pub fn components(g: &Graph) -> Vec<Vec<usize>> {
    let mut comp = vec![usize::MAX; g.n()];
    let mut out = Vec::new();
    for s in 0..g.n() {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![s];
        comp[s] = id;
        let mut head = 0;
        while head < members.len() {
            let u = members[head];
            head += 1;
            for w in g.neighbors(u) {
                if comp[w] == usize::MAX {
                    comp[w] = id;
                    members.push(w);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

/// Two-colouring by BFS. Returns the colour of each vertex, or `None` when
/// some component has an odd cycle (loops included).
pub fn bipartition(g: &Graph) -> Option<Vec<bool>> {
    let mut color: Vec<Option<bool>> = vec![None; g.n()];
    let mut queue = VecDeque::new();
    for s in 0..g.n() {
        if color[s].is_some() {
            continue;
        }
        color[s] = Some(false);
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            let cu = color[u].unwrap();
            for w in g.neighbors(u) {
                match color[w] {
                    None => {
                        color[w] = Some(!cu);
                        queue.push_back(w);
                    }
                    Some(cw) if cw == cu => return None,
                    _ => {}
                }
            }
        }
    }
    Some(color.into_iter().map(Option::unwrap).collect())
}

/// Girth of an arbitrary (not necessarily regular) undirected multigraph.
///
/// Runs a BFS from every vertex, never walking back along the edge it
/// arrived by; a non-tree edge between depths `a` and `b` closes a walk of
/// length `a + b + 1`, and the minimum over all roots is the girth.
pub fn girth_of_edges(n: usize, edges: &[(usize, usize)]) -> Option<usize> {
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (e, &(u, v)) in edges.iter().enumerate() {
        if u == v {
            return Some(1);
        }
        adj[u].push((v, e));
        adj[v].push((u, e));
    }
    let per_root = |root: usize| -> usize {
        let mut best = usize::MAX;
        let mut dist = vec![usize::MAX; n];
        let mut parent_edge = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        dist[root] = 0;
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            if 2 * dist[u] >= best {
                break;
            }
            for &(w, e) in &adj[u] {
                if e == parent_edge[u] {
                    continue;
                }
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent_edge[w] = e;
                    queue.push_back(w);
                } else {
                    best = best.min(dist[u] + dist[w] + 1);
                }
            }
        }
        best
    };
    let best = (0..n).into_par_iter().map(per_root).min().unwrap_or(usize::MAX);
    (best != usize::MAX).then_some(best)
}

fn bfs_eccentricity(g: &Graph, root: usize, dist: &mut [usize]) -> std::result::Result<usize, usize> {
    dist.fill(usize::MAX);
    dist[root] = 0;
    let mut queue = VecDeque::with_capacity(g.n());
    queue.push_back(root);
    let mut seen = 1;
    let mut ecc = 0;
    while let Some(u) = queue.pop_front() {
        ecc = dist[u];
        for w in g.neighbors(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                seen += 1;
                queue.push_back(w);
            }
        }
    }
    if seen == g.n() {
        Ok(ecc)
    } else {
        Err(dist.iter().position(|&d| d == usize::MAX).unwrap())
    }
}

pub(super) fn eccentricities(g: &Graph) -> Result<Vec<usize>> {
    (0..g.n())
        .into_par_iter()
        .map_init(
            || vec![0usize; g.n()],
            |dist, v| bfs_eccentricity(g, v, dist).map_err(|w| Error::Disconnected(v, w)),
        )
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

pub(super) fn diameter(g: &Graph) -> Result<usize> {
    Ok(eccentricities(g)?.into_iter().max().unwrap_or(0))
}
