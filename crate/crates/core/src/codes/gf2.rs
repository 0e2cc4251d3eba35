use std::fmt;

/// A bit vector packed into `u64` words, bit `i` in word `i / 64`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec { len, words: vec![0; len.div_ceil(64)] }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = BitVec::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = BitVec::zeros(len);
        v.set(i, true);
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, b: bool) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        if b {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len);
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn xor_with(&mut self, other: &BitVec) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Parity of the bitwise AND.
    pub fn dot(&self, other: &BitVec) -> bool {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones()).sum::<u32>() % 2 == 1
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&i| self.get(i))
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// A matrix over GF(2) stored as packed rows.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVec>,
}

impl BitMatrix {
    pub fn new(cols: usize) -> Self {
        BitMatrix { cols, rows: Vec::new() }
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "row length mismatch");
        BitMatrix { cols, rows }
    }

    pub fn push(&mut self, row: BitVec) {
        assert_eq!(row.len(), self.cols);
        self.rows.push(row);
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn column(&self, c: usize) -> BitVec {
        BitVec::from_bools(&self.rows.iter().map(|r| r.get(c)).collect::<Vec<_>>())
    }

    /// `M·x`.
    pub fn mul_vec(&self, x: &BitVec) -> BitVec {
        BitVec::from_bools(&self.rows.iter().map(|r| r.dot(x)).collect::<Vec<_>>())
    }

    /// Reduced row echelon form: the nonzero rows and their pivot columns.
    pub fn rref(&self) -> (Vec<BitVec>, Vec<usize>) {
        let mut basis: Vec<BitVec> = Vec::new();
        let mut pivots: Vec<usize> = Vec::new();
        for r in &self.rows {
            let mut r = r.clone();
            for (b, &p) in basis.iter().zip(&pivots) {
                if r.get(p) {
                    r.xor_with(b);
                }
            }
            if let Some(p) = r.first_one() {
                for b in basis.iter_mut() {
                    if b.get(p) {
                        b.xor_with(&r);
                    }
                }
                basis.push(r);
                pivots.push(p);
            }
        }
        let mut order: Vec<usize> = (0..basis.len()).collect();
        order.sort_by_key(|&i| pivots[i]);
        (order.iter().map(|&i| basis[i].clone()).collect(), order.iter().map(|&i| pivots[i]).collect())
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of `{x : M·x = 0}`, one vector per free column in ascending
    /// order.
    pub fn null_space(&self) -> Vec<BitVec> {
        let (basis, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = BitVec::unit(self.cols, f);
                for (b, &p) in basis.iter().zip(&pivots) {
                    if b.get(f) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }
}
