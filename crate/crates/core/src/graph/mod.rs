//! Finite regular multigraphs stored as rotation maps.
//!
//! A [`Graph`] with `n` vertices and degree `k` is an involution on the
//! `n * k` ports `(v, p)`: `rot(v, p) = (w, q)` says that port `p` of `v` is
//! wired to port `q` of `w`. Loops and parallel edges are allowed. A port that
//! is wired to a *different* port of the same vertex is an ordinary loop and
//! adds 2 to the diagonal of the adjacency matrix; a port wired to itself is a
//! half-loop and adds 1. Either way every row of the adjacency matrix sums to
//! `k`.

mod exact;
mod io;
mod paths;
mod vertex_set;

pub use exact::{cheeger_exact, expansion_exact, CutWitness, EXACT_CAP};
pub use io::{read_graph, write_graph};
pub use paths::{bipartition, components, girth_of_edges};
pub use vertex_set::VertexSet;

use crate::error::{Error, Result};
use nalgebra::DMatrix;

/// One end of a port pairing: `(vertex, port)`.
pub type Port = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    k: usize,
    // rot[v * k + p] = (w, q)
    rot: Vec<(u32, u32)>,
}

impl Graph {
    /// Builds a graph from an explicit list of port pairings.
    ///
    /// Every port `(v, p)` with `v < n`, `p < k` must occur in exactly one
    /// pairing. A pairing of a port with itself is a half-loop.
    pub fn from_pairings(n: usize, k: usize, pairings: &[(Port, Port)]) -> Result<Graph> {
        if n == 0 || k == 0 {
            return Err(Error::invalid(format!("need n >= 1 and k >= 1, got n = {n}, k = {k}")));
        }
        check_u32(n, k)?;
        const UNSET: (u32, u32) = (u32::MAX, u32::MAX);
        let mut rot = vec![UNSET; n * k];
        let set = |a: Port, b: Port, rot: &mut Vec<(u32, u32)>| -> Result<()> {
            for &(v, p) in &[a, b] {
                if v >= n || p >= k {
                    return Err(Error::PortOutOfRange { vertex: v, port: p, n, k });
                }
            }
            if rot[a.0 * k + a.1] != UNSET {
                return Err(Error::DuplicatePort { vertex: a.0, port: a.1 });
            }
            rot[a.0 * k + a.1] = (b.0 as u32, b.1 as u32);
            Ok(())
        };
        for &(a, b) in pairings {
            set(a, b, &mut rot)?;
            if a != b {
                set(b, a, &mut rot)?;
            }
        }
        if let Some(i) = rot.iter().position(|&x| x == UNSET) {
            return Err(Error::DanglingPort { vertex: i / k, port: i % k });
        }
        Ok(Graph { n, k, rot })
    }

    /// Builds a graph from a full rotation table, `rot[v * k + p] = (w, q)`,
    /// checking that it is an involution.
    pub fn from_rotation(n: usize, k: usize, rot: Vec<(u32, u32)>) -> Result<Graph> {
        if n == 0 || k == 0 {
            return Err(Error::invalid(format!("need n >= 1 and k >= 1, got n = {n}, k = {k}")));
        }
        check_u32(n, k)?;
        if rot.len() != n * k {
            return Err(Error::Mismatch { expected: n * k, found: rot.len() });
        }
        let g = Graph { n, k, rot };
        g.check_involution()?;
        Ok(g)
    }

    pub(crate) fn from_rotation_unchecked(n: usize, k: usize, rot: Vec<(u32, u32)>) -> Graph {
        debug_assert_eq!(rot.len(), n * k);
        Graph { n, k, rot }
    }

    /// Simple graph from an undirected edge list; ports of each vertex are
    /// assigned to its neighbours in ascending order. Fails if the result is
    /// not regular.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::invalid(format!("edge ({u}, {v}) out of range for n = {n}")));
            }
            nbrs[u].push(v);
            if u != v {
                nbrs[v].push(u);
            }
        }
        let k = nbrs.first().map_or(0, Vec::len);
        if let Some(v) = nbrs.iter().position(|l| l.len() != k) {
            return Err(Error::invalid(format!(
                "edge list is not regular: vertex {v} has degree {}, vertex 0 has {k}",
                nbrs[v].len()
            )));
        }
        // Order each vertex's port list by (neighbour, edge index) so parallel
        // edges receive consecutive ports.
        let mut ports: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (e, &(u, v)) in edges.iter().enumerate() {
            ports[u].push((v, e));
            if u != v {
                ports[v].push((u, e));
            }
        }
        for l in &mut ports {
            l.sort_unstable();
        }
        let mut pairings = Vec::with_capacity(edges.len());
        for (e, &(u, v)) in edges.iter().enumerate() {
            let pu = ports[u].iter().position(|&x| x == (v, e)).unwrap();
            let pv = if u == v {
                // a simple-graph loop: wire port to itself
                pu
            } else {
                ports[v].iter().position(|&x| x == (u, e)).unwrap()
            };
            pairings.push(((u, pu), (v, pv)));
        }
        Graph::from_pairings(n, k, &pairings)
    }

    /// Complete graph `K_n` (`n >= 2`).
    pub fn complete(n: usize) -> Graph {
        assert!(n >= 2, "K_n needs n >= 2");
        let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Graph::from_edges(n, &edges).expect("complete graph is regular")
    }

    /// Cycle `C_n` (`n >= 3`).
    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "C_n needs n >= 3");
        let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
        Graph::from_edges(n, &edges).expect("cycle is regular")
    }

    /// The Petersen graph: outer 5-cycle 0..5, inner pentagram 5..10.
    pub fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, &edges).expect("Petersen graph is regular")
    }

    /// Disjoint union of two graphs of equal degree.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        if self.k != other.k {
            return Err(Error::Mismatch { expected: self.k, found: other.k });
        }
        let shift = self.n as u32;
        let mut rot = self.rot.clone();
        rot.extend(other.rot.iter().map(|&(w, q)| (w + shift, q)));
        Ok(Graph::from_rotation_unchecked(self.n + other.n, self.k, rot))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Degree.
    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn rot(&self, v: usize, p: usize) -> Port {
        let (w, q) = self.rot[v * self.k + p];
        (w as usize, q as usize)
    }

    pub(crate) fn rot_table(&self) -> &[(u32, u32)] {
        &self.rot
    }

    /// Neighbours of `v` in port order, with repetition.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.rot[v * self.k..(v + 1) * self.k]
            .iter()
            .map(|&(w, _)| w as usize)
    }

    /// Every pairing once, as `((v, p), (w, q))` with `(v, p) <= (w, q)`,
    /// in ascending order of `(v, p)`.
    pub fn pairings(&self) -> Vec<(Port, Port)> {
        let mut out = Vec::with_capacity(self.n * self.k / 2 + 1);
        for v in 0..self.n {
            for p in 0..self.k {
                let (w, q) = self.rot(v, p);
                if (v, p) <= (w, q) {
                    out.push(((v, p), (w, q)));
                }
            }
        }
        out
    }

    /// Number of edges, counting each pairing (including half-loops) once.
    pub fn edge_count(&self) -> usize {
        self.pairings().len()
    }

    pub fn check_involution(&self) -> Result<()> {
        for v in 0..self.n {
            for p in 0..self.k {
                let (w, q) = self.rot[v * self.k + p];
                let (w, q) = (w as usize, q as usize);
                if w >= self.n || q >= self.k {
                    return Err(Error::PortOutOfRange { vertex: w, port: q, n: self.n, k: self.k });
                }
                if self.rot(w, q) != (v, p) {
                    return Err(Error::DuplicatePort { vertex: w, port: q });
                }
            }
        }
        Ok(())
    }

    /// Symmetric adjacency matrix; each port `(v, p) -> (w, q)` adds one to
    /// `A[v][w]`.
    pub fn adjacency_matrix(&self) -> DMatrix<i64> {
        let mut a = DMatrix::<i64>::zeros(self.n, self.n);
        for v in 0..self.n {
            for w in self.neighbors(v) {
                a[(v, w)] += 1;
            }
        }
        a
    }

    /// Per-vertex list of `(neighbour, multiplicity)` with ascending
    /// neighbours.
    pub fn weighted_neighbors(&self) -> Vec<Vec<(usize, u32)>> {
        (0..self.n)
            .map(|v| {
                let mut l: Vec<usize> = self.neighbors(v).collect();
                l.sort_unstable();
                let mut out: Vec<(usize, u32)> = Vec::new();
                for w in l {
                    match out.last_mut() {
                        Some((u, m)) if *u == w => *m += 1,
                        _ => out.push((w, 1)),
                    }
                }
                out
            })
            .collect()
    }

    /// Vertices outside `y` adjacent to some vertex of `y`.
    pub fn boundary(&self, y: &VertexSet) -> VertexSet {
        let mut out = VertexSet::new(self.n);
        for v in y.iter() {
            for w in self.neighbors(v) {
                if !y.contains(w) {
                    out.insert(w);
                }
            }
        }
        out
    }

    /// Number of edges with one end in `y` and the other outside, with
    /// multiplicity.
    pub fn cut_size(&self, y: &VertexSet) -> usize {
        y.iter()
            .map(|v| self.neighbors(v).filter(|&w| !y.contains(w)).count())
            .sum()
    }

    /// Number of edges with both ends in `y`; each loop at a vertex of `y`
    /// counts once.
    pub fn internal_edges(&self, y: &VertexSet) -> usize {
        self.pairings()
            .into_iter()
            .filter(|&((v, _), (w, _))| y.contains(v) && y.contains(w))
            .count()
    }

    /// The graph on the same vertices whose edges are the paths of length two:
    /// port `p * k + q` of `v` follows port `p`, then port `q`.
    pub fn square(&self) -> Graph {
        let k = self.k;
        let k2 = k * k;
        let mut rot = Vec::with_capacity(self.n * k2);
        for v in 0..self.n {
            for p in 0..k {
                let (w, p_back) = self.rot(v, p);
                for q in 0..k {
                    let (u, q_back) = self.rot(w, q);
                    rot.push((u as u32, (q_back * k + p_back) as u32));
                }
            }
        }
        Graph::from_rotation_unchecked(self.n, k2, rot)
    }

    pub fn is_connected(&self) -> bool {
        components(self).len() == 1
    }

    /// Shortest cycle length; `None` for forests. Loops give 1, parallel
    /// edges give 2.
    pub fn girth(&self) -> Option<usize> {
        let edges: Vec<(usize, usize)> = self
            .pairings()
            .into_iter()
            .map(|((v, _), (w, _))| (v, w))
            .collect();
        girth_of_edges(self.n, &edges)
    }

    /// Largest BFS eccentricity.
    pub fn diameter(&self) -> Result<usize> {
        paths::diameter(self)
    }

    /// BFS eccentricity of every vertex.
    pub fn eccentricities(&self) -> Result<Vec<usize>> {
        paths::eccentricities(self)
    }
}

fn check_u32(n: usize, k: usize) -> Result<()> {
    if n > u32::MAX as usize || k > u32::MAX as usize {
        return Err(Error::cap("graph size", (n.max(k)) as u128, u32::MAX as u128));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_graphs() {
        let k2 = Graph::from_pairings(2, 1, &[((0, 0), (1, 0))]).unwrap();
        assert_eq!(k2.adjacency_matrix(), DMatrix::from_row_slice(2, 2, &[0, 1, 1, 0]));
        let loop1 = Graph::from_pairings(1, 2, &[((0, 0), (0, 1))]).unwrap();
        assert_eq!(loop1.adjacency_matrix()[(0, 0)], 2);
        let half = Graph::from_pairings(1, 1, &[((0, 0), (0, 0))]).unwrap();
        assert_eq!(half.adjacency_matrix()[(0, 0)], 1);
    }

    #[test]
    fn k4_from_cross_pairings() {
        // port of u toward v is the rank of v among u's neighbours
        let port = |u: usize, v: usize| if v < u { v } else { v - 1 };
        let mut pairings = Vec::new();
        for u in 0..4 {
            for v in u + 1..4 {
                pairings.push(((u, port(u, v)), (v, port(v, u))));
            }
        }
        assert_eq!(pairings.len(), 6);
        let g = Graph::from_pairings(4, 3, &pairings).unwrap();
        let a = g.adjacency_matrix();
        for i in 0..4 {
            let row: i64 = (0..4).map(|j| a[(i, j)]).sum();
            assert_eq!(row, 3);
            assert_eq!(a[(i, i)], 0);
        }
        assert_eq!(g, Graph::complete(4));
    }

    #[test]
    fn pairing_errors_name_the_port() {
        assert_eq!(
            Graph::from_pairings(2, 1, &[((0, 0), (1, 0)), ((1, 0), (0, 0))]),
            Err(Error::DuplicatePort { vertex: 1, port: 0 })
        );
        assert_eq!(
            Graph::from_pairings(2, 2, &[((0, 0), (1, 0))]),
            Err(Error::DanglingPort { vertex: 0, port: 1 })
        );
        assert_eq!(
            Graph::from_pairings(2, 1, &[((0, 0), (2, 0))]),
            Err(Error::PortOutOfRange { vertex: 2, port: 0, n: 2, k: 1 })
        );
    }

    #[test]
    fn c6_adjacency_is_circulant() {
        let a = Graph::cycle(6).adjacency_matrix();
        for i in 0..6 {
            for j in 0..6 {
                let d = (i as i64 - j as i64).rem_euclid(6);
                assert_eq!(a[(i, j)], (d == 1 || d == 5) as i64);
            }
        }
    }

    #[test]
    fn boundary_examples() {
        let k4 = Graph::complete(4);
        assert_eq!(k4.boundary(&VertexSet::from_iter(4, [0])).to_vec(), vec![1, 2, 3]);
        let c6 = Graph::cycle(6);
        assert_eq!(c6.boundary(&VertexSet::from_iter(6, [0, 1, 2])).to_vec(), vec![3, 5]);
        assert!(c6.boundary(&VertexSet::full(6)).is_empty());
    }

    #[test]
    fn square_examples() {
        let c4 = Graph::cycle(4).square();
        assert_eq!(c4.k(), 4);
        let expect = DMatrix::from_row_slice(
            4,
            4,
            &[2, 0, 2, 0, 0, 2, 0, 2, 2, 0, 2, 0, 0, 2, 0, 2],
        );
        assert_eq!(c4.adjacency_matrix(), expect);

        let k2 = Graph::complete(2).square();
        assert_eq!(k2.adjacency_matrix(), DMatrix::from_row_slice(2, 2, &[1, 0, 0, 1]));
        k2.check_involution().unwrap();
    }

    #[test]
    fn girth_and_diameter_examples() {
        assert_eq!(Graph::petersen().girth(), Some(5));
        assert_eq!(Graph::complete(4).girth(), Some(3));
        assert_eq!(girth_of_edges(4, &[(0, 1), (1, 2), (1, 3)]), None);
        assert_eq!(Graph::complete(4).diameter().unwrap(), 1);
        assert_eq!(Graph::cycle(6).diameter().unwrap(), 3);
        assert_eq!(Graph::petersen().diameter().unwrap(), 2);
        let two = Graph::complete(4).disjoint_union(&Graph::complete(4)).unwrap();
        assert!(matches!(two.diameter(), Err(Error::Disconnected(_, _))));
    }

    #[test]
    fn loops_and_bigons_in_girth() {
        let loop1 = Graph::from_pairings(1, 2, &[((0, 0), (0, 1))]).unwrap();
        assert_eq!(loop1.girth(), Some(1));
        let bigon = Graph::from_pairings(2, 2, &[((0, 0), (1, 0)), ((0, 1), (1, 1))]).unwrap();
        assert_eq!(bigon.girth(), Some(2));
    }
}
