//! Square matrices over `Z/m` and over `Z`.

use super::element::GroupElement;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

/// A `d × d` matrix with entries reduced into `[0, m)`, row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModMatrix {
    d: usize,
    m: u64,
    entries: Vec<u64>,
}

impl ModMatrix {
    /// Reduces `entries` (row-major, length `d²`) modulo `m`.
    pub fn new(d: usize, m: u64, entries: &[i64]) -> Self {
        assert!(m >= 2, "modulus must be at least 2");
        assert_eq!(entries.len(), d * d, "need d² entries");
        let mi = m as i128;
        let entries = entries.iter().map(|&x| (x as i128).rem_euclid(mi) as u64).collect();
        ModMatrix { d, m, entries }
    }

    pub fn identity(d: usize, m: u64) -> Self {
        let mut e = vec![0i64; d * d];
        for i in 0..d {
            e[i * d + i] = 1;
        }
        ModMatrix::new(d, m, &e)
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.d + j]
    }

    /// Row-major entry list, the canonical encoding.
    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn trace(&self) -> u64 {
        (0..self.d).fold(0u128, |acc, i| (acc + self.get(i, i) as u128) % self.m as u128) as u64
    }

    pub fn det(&self) -> u64 {
        let m = self.m as i128;
        let rows: Vec<Vec<i128>> = (0..self.d)
            .map(|i| (0..self.d).map(|j| self.get(i, j) as i128).collect())
            .collect();
        laplace_det(&rows, &|x| x.rem_euclid(m)) as u64
    }

    /// Characteristic polynomial `det(xI − A)` mod `m`, coefficients from the
    /// constant term up, monic.
    pub fn charpoly(&self) -> Vec<u64> {
        let z = ZMatrix::from_rows(
            self.d,
            &(0..self.d * self.d).map(|i| self.entries[i] as i64).collect::<Vec<_>>(),
        );
        let m = BigInt::from(self.m);
        z.charpoly()
            .iter()
            .map(|c| c.mod_floor(&m).to_u64().unwrap())
            .collect()
    }
}

impl fmt::Debug for ModMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[u64]> = self.entries.chunks(self.d).collect();
        write!(f, "{rows:?} mod {}", self.m)
    }
}

impl GroupElement for ModMatrix {
    fn op(&self, rhs: &Self) -> Self {
        let (d, m) = (self.d, self.m as u128);
        let mut out = vec![0u64; d * d];
        for i in 0..d {
            for j in 0..d {
                let mut acc = 0u128;
                for l in 0..d {
                    acc += self.entries[i * d + l] as u128 * rhs.entries[l * d + j] as u128;
                    if acc >= 1 << 120 {
                        acc %= m;
                    }
                }
                out[i * d + j] = (acc % m) as u64;
            }
        }
        ModMatrix { d, m: self.m, entries: out }
    }

    /// Adjugate times the inverse determinant. Panics when the determinant
    /// is not a unit mod `m`.
    fn inv(&self) -> Self {
        let (d, m) = (self.d, self.m as i128);
        let det = self.det() as i128;
        let det_inv = mod_inverse(det, m).expect("determinant is not a unit");
        let rows: Vec<Vec<i128>> = (0..d)
            .map(|i| (0..d).map(|j| self.get(i, j) as i128).collect())
            .collect();
        let mut out = vec![0i64; d * d];
        for i in 0..d {
            for j in 0..d {
                // adj[i][j] = (-1)^{i+j} · minor(j, i)
                let minor: Vec<Vec<i128>> = rows
                    .iter()
                    .enumerate()
                    .filter(|&(r, _)| r != j)
                    .map(|(_, row)| {
                        row.iter().enumerate().filter(|&(c, _)| c != i).map(|(_, &x)| x).collect()
                    })
                    .collect();
                let mut c = if d == 1 { 1 } else { laplace_det(&minor, &|x| x.rem_euclid(m)) };
                if (i + j) % 2 == 1 {
                    c = (-c).rem_euclid(m);
                }
                out[i * d + j] = ((c * det_inv).rem_euclid(m)) as i64;
            }
        }
        ModMatrix::new(d, self.m, &out)
    }

    fn identity_like(&self) -> Self {
        ModMatrix::identity(self.d, self.m)
    }

    fn compatible(&self, other: &Self) -> bool {
        self.d == other.d && self.m == other.m
    }
}

fn laplace_det(rows: &[Vec<i128>], reduce: &dyn Fn(i128) -> i128) -> i128 {
    let d = rows.len();
    match d {
        0 => 1,
        1 => reduce(rows[0][0]),
        2 => reduce(rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]),
        _ => {
            let mut acc = 0i128;
            for c in 0..d {
                if rows[0][c] == 0 {
                    continue;
                }
                let minor: Vec<Vec<i128>> = rows[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, &x)| x).collect())
                    .collect();
                let term = reduce(rows[0][c] * laplace_det(&minor, reduce));
                acc = if c % 2 == 0 { reduce(acc + term) } else { reduce(acc - term) };
            }
            acc
        }
    }
}

pub(crate) fn mod_inverse(a: i128, m: i128) -> Option<i128> {
    let (mut old_r, mut r) = (a.rem_euclid(m), m);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1 || m == 1).then(|| old_s.rem_euclid(m))
}

/// A `d × d` integer matrix with arbitrary-precision entries, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ZMatrix {
    d: usize,
    entries: Vec<BigInt>,
}

impl ZMatrix {
    pub fn from_rows(d: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), d * d, "need d² entries");
        ZMatrix { d, entries: entries.iter().map(|&x| BigInt::from(x)).collect() }
    }

    pub fn from_big(d: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(entries.len(), d * d, "need d² entries");
        ZMatrix { d, entries }
    }

    pub fn identity(d: usize) -> Self {
        let mut e = vec![0i64; d * d];
        for i in 0..d {
            e[i * d + i] = 1;
        }
        ZMatrix::from_rows(d, &e)
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.d + j]
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn mul(&self, rhs: &ZMatrix) -> ZMatrix {
        let d = self.d;
        assert_eq!(d, rhs.d, "dimension mismatch");
        let mut out = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let mut acc = BigInt::zero();
                for l in 0..d {
                    acc += &self.entries[i * d + l] * &rhs.entries[l * d + j];
                }
                out.push(acc);
            }
        }
        ZMatrix { d, entries: out }
    }

    pub fn transpose(&self) -> ZMatrix {
        let d = self.d;
        let entries = (0..d * d).map(|i| self.entries[(i % d) * d + i / d].clone()).collect();
        ZMatrix { d, entries }
    }

    /// `M v` for a column vector `v`.
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.d, "vector length mismatch");
        (0..self.d)
            .map(|i| (0..self.d).map(|j| &self.entries[i * self.d + j] * &v[j]).sum())
            .collect()
    }

    pub fn trace(&self) -> BigInt {
        (0..self.d).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn det(&self) -> BigInt {
        // Bareiss fraction-free elimination.
        let d = self.d;
        if d == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = self.entries.chunks(d).map(|r| r.to_vec()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..d - 1 {
            if a[k][k].is_zero() {
                match (k + 1..d).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..d {
                for j in k + 1..d {
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[d - 1][d - 1]
    }

    /// Inverse of a matrix with determinant `±1`; `None` otherwise.
    pub fn inverse_unimodular(&self) -> Option<ZMatrix> {
        let det = self.det();
        if det.abs() != BigInt::one() {
            return None;
        }
        let d = self.d;
        if d == 1 {
            return Some(ZMatrix::from_big(1, vec![det]));
        }
        let mut out = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let minor: Vec<BigInt> = (0..d)
                    .filter(|&r| r != j)
                    .flat_map(|r| (0..d).filter(|&c| c != i).map(move |c| (r, c)))
                    .map(|(r, c)| self.entries[r * d + c].clone())
                    .collect();
                let c = ZMatrix::from_big(d - 1, minor).det();
                let c = if (i + j) % 2 == 1 { -c } else { c };
                out.push(c * &det);
            }
        }
        Some(ZMatrix { d, entries: out })
    }

    pub fn reduce(&self, m: u64) -> ModMatrix {
        let mb = BigInt::from(m);
        let entries: Vec<u64> = self
            .entries
            .iter()
            .map(|x| x.mod_floor(&mb).to_u64().unwrap())
            .collect();
        ModMatrix { d: self.d, m, entries }
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> BigInt {
        self.entries.iter().map(|x| x.abs()).max().unwrap_or_default()
    }

    /// Characteristic polynomial `det(xI − A)`, coefficients from the
    /// constant term up (monic, length `d + 1`), by Faddeev–LeVerrier.
    pub fn charpoly(&self) -> Vec<BigInt> {
        let d = self.d;
        let mut coeffs = vec![BigInt::zero(); d + 1];
        coeffs[d] = BigInt::one();
        let mut m_k = ZMatrix::from_big(d, vec![BigInt::zero(); d * d]);
        for k in 1..=d {
            // M_k = A M_{k-1} + c_{d-k+1} I
            let mut next = self.mul(&m_k);
            for i in 0..d {
                next.entries[i * d + i] += &coeffs[d - k + 1];
            }
            m_k = next;
            let am = self.mul(&m_k);
            let c = -am.trace() / BigInt::from(k as i64);
            coeffs[d - k] = c;
        }
        coeffs
    }
}

impl fmt::Debug for ZMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = self
            .entries
            .chunks(self.d)
            .map(|r| r.iter().map(|x| x.to_string()).collect())
            .collect();
        write!(f, "{rows:?}")
    }
}

/// Parses a generator file: a header `d m count`, then `count` blocks of
/// `d` lines of `d` integers. `m = 0` means integer matrices; otherwise the
/// entries are meant mod `m` and are returned unreduced. Blank lines and `#`
/// comments are skipped.
pub fn parse_generator_file(text: &str) -> Result<(u64, Vec<ZMatrix>)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hl, header) = lines.next().ok_or_else(|| Error::Parse { line: 1, message: "empty file".into() })?;
    let nums: Vec<u64> = header
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::Parse { line: hl, message: format!("bad header field {t:?}") }))
        .collect::<Result<_>>()?;
    let &[d, m, count] = nums.as_slice() else {
        return Err(Error::Parse { line: hl, message: "header must be \"d m count\"".into() });
    };
    let (d, count) = (d as usize, count as usize);
    if d == 0 || m == 1 {
        return Err(Error::Parse { line: hl, message: format!("bad header d = {d}, m = {m}") });
    }
    let mut out = Vec::with_capacity(count);
    let mut last = hl;
    for _ in 0..count {
        let mut entries = Vec::with_capacity(d * d);
        for _ in 0..d {
            let (ln, row) = lines
                .next()
                .ok_or_else(|| Error::Parse { line: last + 1, message: "file ends inside a matrix".into() })?;
            last = ln;
            let before = entries.len();
            for t in row.split_whitespace() {
                entries.push(
                    t.parse::<BigInt>().map_err(|_| Error::Parse { line: ln, message: format!("bad entry {t:?}") })?,
                );
            }
            if entries.len() - before != d {
                return Err(Error::Parse { line: ln, message: format!("expected {d} entries") });
            }
        }
        out.push(ZMatrix::from_big(d, entries));
    }
    if let Some((ln, _)) = lines.next() {
        return Err(Error::Parse { line: ln, message: "trailing data after the last matrix".into() });
    }
    Ok((m, out))
}

/// Inverse of [`parse_generator_file`].
pub fn write_generator_file(m: u64, ms: &[ZMatrix]) -> String {
    let d = ms.first().map_or(0, |x| x.d);
    let mut s = format!("{d} {m} {}\n", ms.len());
    for x in ms {
        for row in x.entries.chunks(x.d) {
            let r: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            s.push_str(&r.join(" "));
            s.push('\n');
        }
    }
    s
}

/// `|SL_d(Z/q)| = q^{d²−1} ∏_{p | q} ∏_{i=2}^{d} (1 − p^{−i})`.
pub fn sl_order_formula(d: usize, q: u64) -> u128 {
    assert!(q >= 2 && d >= 1);
    let mut order: u128 = (q as u128).pow((d * d - 1) as u32);
    let mut rest = q;
    let mut p = 2;
    while rest > 1 {
        if p * p > rest {
            p = rest;
        }
        if rest % p == 0 {
            while rest % p == 0 {
                rest /= p;
            }
            for i in 2..=d as u32 {
                let pi = (p as u128).pow(i);
                order = order / pi * (pi - 1);
            }
        }
        p += 1;
    }
    order
}

/// `|SL_d(Z/q)|` by counting all `q^{d²}` matrices with determinant 1.
pub fn sl_order_enumerated(d: usize, q: u64, cap: u128) -> Result<u64> {
    let total = (q as u128).pow((d * d) as u32);
    if total > cap {
        return Err(Error::cap("matrices to enumerate", total, cap));
    }
    let mut count = 0u64;
    let mut e = vec![0i64; d * d];
    let qi = q as i128;
    for idx in 0..total {
        let mut x = idx;
        for slot in e.iter_mut() {
            *slot = (x % q as u128) as i64;
            x /= q as u128;
        }
        let rows: Vec<Vec<i128>> = e.chunks(d).map(|r| r.iter().map(|&v| v as i128).collect()).collect();
        if laplace_det(&rows, &|v| v.rem_euclid(qi)) == 1 % qi {
            count += 1;
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mod_matrix_inverse_and_det() {
        let a = ModMatrix::new(2, 7, &[2, 3, 1, 2]);
        assert_eq!(a.det(), 1);
        assert_eq!(a.op(&a.inv()), ModMatrix::identity(2, 7));
        let b = ModMatrix::new(3, 10, &[1, 2, 3, 0, 1, 4, 5, 6, 0]);
        assert_eq!(b.det(), 1);
        assert_eq!(b.inv().op(&b), ModMatrix::identity(3, 10));
        assert_eq!(ModMatrix::new(2, 5, &[-1, 6, 0, 1]).entries(), &[4, 1, 0, 1]);
    }

    #[test]
    fn generator_file_round_trip() {
        let ms = vec![ZMatrix::from_rows(2, &[1, 1, 0, 1]), ZMatrix::from_rows(2, &[1, -1, 0, 1])];
        let text = write_generator_file(0, &ms);
        assert_eq!(text, "2 0 2\n1 1\n0 1\n1 -1\n0 1\n");
        assert_eq!(parse_generator_file(&text).unwrap(), (0, ms));
        let (m, one) = parse_generator_file("# sl2\n2 7 1\n\n1 3\n0 1\n").unwrap();
        assert_eq!((m, one[0].reduce(7).entries()), (7, &[1u64, 3, 0, 1][..]));
        assert!(matches!(parse_generator_file("2 0 1\n1 0 0\n0 1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_generator_file("2 0 2\n1 0\n0 1\n"), Err(Error::Parse { line: 4, .. })));
        assert!(parse_generator_file("2 0 1\n1 0\n0 1\n5\n").is_err());
    }

    #[test]
    fn zmatrix_arithmetic() {
        let a = ZMatrix::from_rows(2, &[7, 6, 8, 7]);
        assert_eq!(a.det(), BigInt::from(1));
        let inv = a.inverse_unimodular().unwrap();
        assert_eq!(inv, ZMatrix::from_rows(2, &[7, -6, -8, 7]));
        assert_eq!(a.mul(&inv), ZMatrix::identity(2));
        let c = ZMatrix::from_rows(3, &[2, 0, 1, 1, 3, 2, 1, 1, 1]);
        // det = 2(3-2) - 0 + 1(1-3) = 0
        assert_eq!(c.det(), BigInt::from(0));
        assert!(c.inverse_unimodular().is_none());
    }

    #[test]
    fn charpoly_matches_trace_and_det() {
        let a = ZMatrix::from_rows(3, &[1, 2, 0, 0, 1, 3, 4, 0, 1]);
        let cp = a.charpoly();
        assert_eq!(cp[3], BigInt::from(1));
        assert_eq!(cp[2], -a.trace());
        assert_eq!(cp[0], -a.det());
        let two = ZMatrix::from_rows(2, &[2, 1, 1, 1]);
        assert_eq!(two.charpoly(), vec![BigInt::from(1), BigInt::from(-3), BigInt::from(1)]);
    }

    #[test]
    fn sl_order_formula_matches_enumeration() {
        for q in 2..=8u64 {
            let e = sl_order_enumerated(2, q, 1 << 24).unwrap();
            assert_eq!(e as u128, sl_order_formula(2, q), "q = {q}");
        }
        assert_eq!(sl_order_enumerated(3, 2, 1 << 24).unwrap(), 168);
        assert_eq!(sl_order_formula(3, 2), 168);
        assert_eq!(sl_order_formula(2, 5), 120);
        assert_eq!(sl_order_formula(2, 3), 24);
    }
}
