use std::fmt;
use std::hash::Hash;

/// A finite-group element with its own multiplication.
///
/// Elements carry enough shape information (dimension, modulus, degree) to
/// build their own identity.
pub trait GroupElement: Clone + Eq + Hash + fmt::Debug + Send + Sync {
    /// `self · rhs`.
    fn op(&self, rhs: &Self) -> Self;

    fn inv(&self) -> Self;

    /// Identity of the group `self` lives in.
    fn identity_like(&self) -> Self;

    /// Whether `self` and `other` can be multiplied.
    fn compatible(&self, _other: &Self) -> bool {
        true
    }

    fn is_identity(&self) -> bool {
        *self == self.identity_like()
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.identity_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.op(&base);
            }
            base = base.op(&base);
            e >>= 1;
        }
        acc
    }

    /// `g · self · g⁻¹`.
    fn conjugate_by(&self, g: &Self) -> Self {
        g.op(self).op(&g.inv())
    }
}

/// A permutation of `0..n`; `(a · b)(x) = a(b(x))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u32).collect())
    }

    /// From an image list; panics if `images` is not a permutation.
    pub fn from_images(images: Vec<u32>) -> Self {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            assert!((i as usize) < images.len() && !seen[i as usize], "not a permutation");
            seen[i as usize] = true;
        }
        Perm(images)
    }

    /// From disjoint cycles on `0..n`, e.g. `&[&[0, 1]]` for the
    /// transposition `(0 1)`.
    pub fn from_cycles(n: usize, cycles: &[&[u32]]) -> Self {
        let mut img: Vec<u32> = (0..n as u32).collect();
        for c in cycles {
            for (i, &x) in c.iter().enumerate() {
                img[x as usize] = c[(i + 1) % c.len()];
            }
        }
        Perm::from_images(img)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    /// Cycle lengths in descending order, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x] as usize;
                len += 1;
            }
            out.push(len);
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    /// All permutations of `0..n` in lexicographic order of image lists.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur: Vec<u32> = (0..n as u32).collect();
        loop {
            out.push(Perm(cur.clone()));
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        out
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.0)
    }
}

impl GroupElement for Perm {
    fn op(&self, rhs: &Self) -> Self {
        Perm(rhs.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    fn inv(&self) -> Self {
        let mut out = vec![0u32; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            out[x as usize] = i as u32;
        }
        Perm(out)
    }

    fn identity_like(&self) -> Self {
        Perm::identity(self.0.len())
    }

    fn compatible(&self, other: &Self) -> bool {
        self.0.len() == other.0.len()
    }
}

/// An element of the additive group `Z/n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Cyclic {
    pub n: u64,
    pub a: u64,
}

impl Cyclic {
    pub fn new(n: u64, a: i64) -> Self {
        assert!(n >= 1);
        Cyclic { n, a: a.rem_euclid(n as i64) as u64 }
    }
}

impl GroupElement for Cyclic {
    fn op(&self, rhs: &Self) -> Self {
        Cyclic { n: self.n, a: (self.a + rhs.a) % self.n }
    }

    fn inv(&self) -> Self {
        Cyclic { n: self.n, a: (self.n - self.a) % self.n }
    }

    fn identity_like(&self) -> Self {
        Cyclic { n: self.n, a: 0 }
    }

    fn compatible(&self, other: &Self) -> bool {
        self.n == other.n
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perm_basics() {
        let t = Perm::from_cycles(3, &[&[0, 1]]);
        let c = Perm::from_cycles(3, &[&[0, 1, 2]]);
        assert_eq!(t.op(&t), Perm::identity(3));
        assert_eq!(c.pow(3), Perm::identity(3));
        assert_eq!(c.op(&c.inv()), Perm::identity(3));
        assert_eq!(c.cycle_type(), vec![3]);
        assert_eq!(t.cycle_type(), vec![2, 1]);
        // (t·c)(0) = t(c(0)) = t(1) = 0
        assert_eq!(t.op(&c).apply(0), 0);
        assert_eq!(Perm::all(4).len(), 24);
    }

    #[test]
    fn cyclic_basics() {
        let a = Cyclic::new(5, 3);
        assert_eq!(a.op(&a), Cyclic::new(5, 1));
        assert_eq!(a.inv(), Cyclic::new(5, 2));
        assert_eq!(a.pow(5), a.identity_like());
        assert_eq!(Cyclic::new(5, -1).a, 4);
    }
}
