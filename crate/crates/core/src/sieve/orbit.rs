//! Orbits of integer matrix groups on `Z^n`: word balls `B(k)·b`, the
//! Apollonian group on Descartes quadruples, and the Pythagorean tree.

use crate::error::{Error, Result};
use crate::group::ZMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

/// Default cap on enumerated points.
pub const POINT_CAP: usize = 100_000;
/// Entries above `2^MAGNITUDE_BITS` in absolute value stop the search.
pub const MAGNITUDE_BITS: u64 = 512;

pub type Point = Vec<BigInt>;

pub fn point(v: &[i64]) -> Point {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// The points of `B(radius)·b`, in breadth-first order.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitBall {
    pub generators: Vec<ZMatrix>,
    pub base: Point,
    pub radius: usize,
    pub points: Vec<Point>,
    /// Word length at which each point was first reached.
    pub depth: Vec<usize>,
    /// Set when a cap stopped the search before `radius`.
    pub truncated: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct OrbitCaps {
    pub points: usize,
    pub magnitude_bits: u64,
}

impl Default for OrbitCaps {
    fn default() -> Self {
        OrbitCaps { points: POINT_CAP, magnitude_bits: MAGNITUDE_BITS }
    }
}

/// Orbit dump: one comma-separated vector per line.
pub fn orbit_csv(points: &[Point]) -> String {
    let mut out = String::new();
    for p in points {
        let parts: Vec<String> = p.iter().map(|x| x.to_string()).collect();
        out.push_str(&parts.join(","));
        out.push('\n');
    }
    out
}

/// Parses a comma-separated integer vector.
pub fn parse_point(text: &str) -> Result<Point> {
    text.trim()
        .split(',')
        .map(|t| t.trim().parse::<BigInt>().map_err(|_| Error::invalid(format!("bad integer {t:?}"))))
        .collect()
}

/// Breadth-first search over words in `gens`; points are deduplicated and
/// kept in discovery order.
pub fn orbit_ball(gens: &[ZMatrix], b: &[BigInt], radius: usize) -> Result<OrbitBall> {
    orbit_ball_with(gens, b, radius, OrbitCaps::default())
}

pub fn orbit_ball_with(gens: &[ZMatrix], b: &[BigInt], radius: usize, caps: OrbitCaps) -> Result<OrbitBall> {
    check_dims(gens, b)?;
    for g in gens {
        let inv = g.inverse_unimodular().ok_or_else(|| Error::invalid(format!("{g:?} is not invertible over Z")))?;
        if !gens.contains(&inv) {
            return Err(Error::invalid(format!("inverse of {g:?} is missing")));
        }
    }
    Ok(bfs(gens, b, radius, caps))
}

fn check_dims(gens: &[ZMatrix], b: &[BigInt]) -> Result<()> {
    if gens.is_empty() {
        return Err(Error::invalid("no generators"));
    }
    for g in gens {
        if g.dim() != b.len() {
            return Err(Error::Mismatch { expected: b.len(), found: g.dim() });
        }
    }
    Ok(())
}

fn bfs(gens: &[ZMatrix], b: &[BigInt], radius: usize, caps: OrbitCaps) -> OrbitBall {
    let mut seen: HashSet<Point> = HashSet::new();
    seen.insert(b.to_vec());
    let mut points = vec![b.to_vec()];
    let mut depth = vec![0];
    let mut frontier = 0..1;
    let mut truncated = false;
    'levels: for level in 1..=radius {
        let images: Vec<Point> = points[frontier.clone()]
            .par_iter()
            .flat_map_iter(|p| gens.iter().map(move |g| g.apply(p)))
            .collect();
        let start = points.len();
        for q in images {
            if q.iter().any(|x| x.bits() > caps.magnitude_bits) || points.len() >= caps.points {
                truncated = true;
                break 'levels;
            }
            if seen.insert(q.clone()) {
                points.push(q);
                depth.push(level);
            }
        }
        frontier = start..points.len();
    }
    OrbitBall { generators: gens.to_vec(), base: b.to_vec(), radius, points, depth, truncated }
}

/// `F(a) = 2Σa_i² − (Σa_i)²`.
pub fn descartes_form(a: &[BigInt]) -> BigInt {
    let sq: BigInt = a.iter().map(|x| x * x).sum();
    let s: BigInt = a.iter().sum();
    BigInt::from(2) * sq - &s * &s
}

/// Gram matrix of `F`: `Q = 2I − J`, so `F(a) = aᵀQa`.
pub fn descartes_gram() -> ZMatrix {
    let e: Vec<i64> = (0..16).map(|i| if i / 4 == i % 4 { 1 } else { -1 }).collect();
    ZMatrix::from_rows(4, &e)
}

/// `S_1, …, S_4`: `S_i` replaces `a_i` by `2Σ_{j≠i} a_j − a_i`.
pub fn apollonian_generators() -> [ZMatrix; 4] {
    std::array::from_fn(|i| {
        let mut e = vec![0i64; 16];
        for r in 0..4 {
            for c in 0..4 {
                e[r * 4 + c] = if r != i {
                    i64::from(r == c)
                } else if c == i {
                    -1
                } else {
                    2
                };
            }
        }
        ZMatrix::from_rows(4, &e)
    })
}

/// Reduced-word enumeration of the Apollonian orbit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApollonianOrbit {
    /// Distinct quadruples in discovery order; the root first.
    pub quadruples: Vec<Vec<i128>>,
    /// Reduced words of each length `0..=depth`: `1, 4, 12, 36, …`.
    pub words_per_depth: Vec<usize>,
    /// Words whose quadruple had already been reached.
    pub collisions: usize,
    /// Every curvature of every distinct quadruple, ascending.
    pub curvatures: Vec<i128>,
}

/// Applies `S_1, …, S_4` along reduced words (no letter twice in a row) up
/// to length `depth`. Fails if the root is off the cone `F = 0`.
pub fn apollonian_orbit(root: [i64; 4], depth: usize) -> Result<ApollonianOrbit> {
    let r: Point = point(&root);
    if !descartes_form(&r).is_zero() {
        return Err(Error::invalid(format!("F{root:?} = {} ≠ 0", descartes_form(&r))));
    }
    let cap = 4 * 3usize.saturating_pow(depth.saturating_sub(1) as u32);
    if depth > 0 && cap > POINT_CAP * 4 {
        return Err(Error::cap("Apollonian words at the last depth", cap as u128, (POINT_CAP * 4) as u128));
    }
    let root: [i128; 4] = root.map(|x| x as i128);
    let mut seen: HashSet<[i128; 4]> = HashSet::from([root]);
    let mut quadruples = vec![root];
    let mut words_per_depth = vec![1];
    let mut collisions = 0;
    // (quadruple, last letter), 4 meaning none
    let mut frontier = vec![(root, 4usize)];
    for _ in 0..depth {
        let mut next = Vec::with_capacity(frontier.len() * 3);
        for &(q, last) in &frontier {
            for i in (0..4).filter(|&i| i != last) {
                let mut a = q;
                let others: i128 = (0..4).filter(|&j| j != i).map(|j| q[j]).sum();
                a[i] = 2 * others - q[i];
                if seen.insert(a) {
                    quadruples.push(a);
                } else {
                    collisions += 1;
                }
                next.push((a, i));
            }
        }
        words_per_depth.push(next.len());
        frontier = next;
    }
    let mut curvatures: Vec<i128> = quadruples.iter().flatten().copied().collect();
    curvatures.sort_unstable();
    Ok(ApollonianOrbit {
        quadruples: quadruples.into_iter().map(|q| q.to_vec()).collect(),
        words_per_depth,
        collisions,
        curvatures,
    })
}

/// `Q = diag(1, 1, −1)`.
pub fn pythagorean_gram() -> ZMatrix {
    ZMatrix::from_rows(3, &[1, 0, 0, 0, 1, 0, 0, 0, -1])
}

/// The three tree generators, as found by [`pythagorean_bootstrap_search`].
pub fn pythagorean_generators() -> [ZMatrix; 3] {
    [
        ZMatrix::from_rows(3, &[1, -2, 2, 2, -1, 2, 2, -2, 3]),
        ZMatrix::from_rows(3, &[1, 2, 2, 2, 1, 2, 2, 2, 3]),
        ZMatrix::from_rows(3, &[-1, 2, 2, -2, 1, 2, -2, 2, 3]),
    ]
}

/// Primitive triples `(x1, x2, x3)` with `x1` odd, `x2` even, all positive
/// and `x3 ≤ bound`, in ascending order.
pub fn primitive_triples(bound: i64) -> Vec<[i64; 3]> {
    let mut out = Vec::new();
    for m in 2i64.. {
        if m * m + 1 > bound {
            break;
        }
        for n in 1..m {
            if (m - n) % 2 == 1 && m.gcd(&n) == 1 && m * m + n * n <= bound {
                out.push([m * m - n * n, 2 * m * n, m * m + n * n]);
            }
        }
    }
    out.sort();
    out
}

/// Searches `3×3` matrices with entries in `[−3, 3]` for those preserving
/// `x1² + x2² − x3²` that send every test triple (primitive, `x1` odd,
/// hypotenuse ≤ 200) to a positive triple with `x1` odd and a larger
/// hypotenuse. Candidates are built column by column: the columns of such
/// a matrix have `Q`-norms `1, 1, −1` and are pairwise `Q`-orthogonal.
pub fn pythagorean_bootstrap_search() -> Vec<ZMatrix> {
    let qn = |v: &[i64; 3]| v[0] * v[0] + v[1] * v[1] - v[2] * v[2];
    let qdot = |a: &[i64; 3], b: &[i64; 3]| a[0] * b[0] + a[1] * b[1] - a[2] * b[2];
    let mut cube = Vec::new();
    for a in -3..=3 {
        for b in -3..=3 {
            for c in -3..=3 {
                cube.push([a, b, c]);
            }
        }
    }
    let space: Vec<&[i64; 3]> = cube.iter().filter(|v| qn(v) == 1).collect();
    let time: Vec<&[i64; 3]> = cube.iter().filter(|v| qn(v) == -1).collect();
    let tests = primitive_triples(200);
    let mut found = Vec::new();
    for c1 in &space {
        for c2 in space.iter().filter(|c2| qdot(c1, c2) == 0) {
            for c3 in time.iter().filter(|c3| qdot(c1, c3) == 0 && qdot(c2, c3) == 0) {
                let m = [[c1[0], c2[0], c3[0]], [c1[1], c2[1], c3[1]], [c1[2], c2[2], c3[2]]];
                let good = tests.iter().all(|t| {
                    let y: Vec<i64> = m.iter().map(|row| row.iter().zip(t).map(|(a, b)| a * b).sum()).collect();
                    y.iter().all(|&v| v > 0) && y[0] % 2 == 1 && y[2] > t[2]
                });
                if good {
                    found.push(ZMatrix::from_rows(3, &m.concat()));
                }
            }
        }
    }
    found.sort_by_key(|m| m.entries().to_vec());
    found
}

/// The Pythagorean tree from `(3, 4, 5)` to the given depth.
pub fn pythagorean_orbit(depth: usize) -> OrbitBall {
    bfs(&pythagorean_generators(), &point(&[3, 4, 5]), depth, OrbitCaps::default())
}

fn with_inverse(m: ZMatrix) -> Vec<ZMatrix> {
    let inv = m.inverse_unimodular().expect("unimodular");
    vec![m, inv]
}

/// `⟨(7 6; 8 7)^{±1}⟩` acting on `(1, 1)`; the orbit lies on
/// `4x² − 3y² = 1`.
pub fn pell_preset() -> (Vec<ZMatrix>, Point) {
    (with_inverse(ZMatrix::from_rows(2, &[7, 6, 8, 7])), point(&[1, 1]))
}

/// `⟨(3 −1; 1 0)^{±1}⟩` acting on `(2, 1)`; the orbit consists of pairs of
/// even-index Fibonacci numbers.
pub fn fibonacci_preset() -> (Vec<ZMatrix>, Point) {
    (with_inverse(ZMatrix::from_rows(2, &[3, -1, 1, 0])), point(&[2, 1]))
}

/// `gcd` of the coordinates.
pub fn content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// `Mᵀ Q M = Q`.
pub fn preserves_form(m: &ZMatrix, q: &ZMatrix) -> bool {
    &m.transpose().mul(q).mul(m) == q
}

/// Extended Fibonacci numbers with `f_0 = f_1 = 1`, so `f_n = F_{n+1}` in
/// the convention `F_1 = F_2 = 1`, and `f_{n} = f_{n+2} − f_{n+1}` below 0.
pub fn fibonacci(n: i64) -> BigInt {
    // F_m for m = n + 1, with F_{−m} = (−1)^{m+1} F_m
    let m = n + 1;
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    for _ in 0..m.unsigned_abs() {
        let c = &a + &b;
        a = b;
        b = c;
    }
    if m < 0 && m % 2 == 0 {
        -a
    } else {
        a
    }
}

/// The `n` with `p = (f_{2n}, f_{2n−2})`, if there is one.
pub fn even_fibonacci_index(p: &[BigInt]) -> Option<i64> {
    if p.len() != 2 {
        return None;
    }
    // |f_k| ≥ φ^(|k|−3), so |k| ≤ 1.5·bits + 3
    let bits = p.iter().map(|x| x.bits()).max().unwrap_or(0) as i64;
    let limit = 2 * bits + 4;
    (-limit..=limit).find(|&n| fibonacci(2 * n) == p[0] && fibonacci(2 * n - 2) == p[1])
}

/// Signed value of a binary quadratic form `ax² + bxy + cy²`.
pub fn binary_form(a: i64, b: i64, c: i64, p: &[BigInt]) -> BigInt {
    let (x, y) = (&p[0], &p[1]);
    BigInt::from(a) * x * x + BigInt::from(b) * x * y + BigInt::from(c) * y * y
}
