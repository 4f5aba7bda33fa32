//! Bit-packed linear algebra over GF(2).
//!
//! Vectors and matrix rows are stored as packed `u64` words so that row
//! operations, dot products and matrix-vector products are word-parallel.

use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

fn word_count(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A fixed-length vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; word_count(len)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for w in v.words.iter_mut() {
            *w = u64::MAX;
        }
        v.clear_tail();
        v
    }

    /// Unit vector with a single one at `index`.
    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    /// Builds a vector from a `0`/`1` string, index 0 first.
    pub fn parse(text: &str) -> Result<Self> {
        let bits = text
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse {
                    line: 0,
                    message: format!("invalid bit character {other:?}"),
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_bools(&bits))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, index: usize) -> bool {
        assert!(index < self.len, "bit index {index} out of range {}", self.len);
        (self.words[index / WORD] >> (index % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, index: usize, value: bool) {
        assert!(index < self.len, "bit index {index} out of range {}", self.len);
        let mask = 1u64 << (index % WORD);
        if value {
            self.words[index / WORD] |= mask;
        } else {
            self.words[index / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, index: usize) {
        assert!(index < self.len, "bit index {index} out of range {}", self.len);
        self.words[index / WORD] ^= 1u64 << (index % WORD);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "length mismatch in xor");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn and(&self, other: &BitVec) -> BitVec {
        assert_eq!(self.len, other.len, "length mismatch in and");
        BitVec {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    /// Inner product modulo 2.
    pub fn dot(&self, other: &BitVec) -> bool {
        assert_eq!(self.len, other.len, "length mismatch in dot");
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones & 1 == 1
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Indices of the set bits, ascending.
    pub fn ones_indices(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| self.get(i)).collect()
    }

    /// Concatenation `(self; other)`.
    pub fn concat(&self, other: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.len + other.len);
        for i in self.ones_indices() {
            out.set(i, true);
        }
        for i in other.ones_indices() {
            out.set(self.len + i, true);
        }
        out
    }

    pub fn slice(&self, start: usize, len: usize) -> BitVec {
        let mut out = BitVec::zeros(len);
        for i in 0..len {
            if self.get(start + i) {
                out.set(i, true);
            }
        }
        out
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

impl std::ops::BitXor for &BitVec {
    type Output = BitVec;
    fn bitxor(self, rhs: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.xor_assign(rhs);
        out
    }
}

/// A dense matrix over GF(2), stored as packed rows.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVec>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BitVec::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: Vec<BitVec>) -> Self {
        let cols = rows.first().map_or(0, BitVec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self {
            rows: rows.len(),
            cols,
            data: rows,
        }
    }

    /// Builds a matrix from nested `0`/`1` values (row-major).
    pub fn from_u8_rows(rows: &[&[u8]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| BitVec::from_bools(&r.iter().map(|&b| b != 0).collect::<Vec<_>>()))
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &BitVec {
        &self.data[r]
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].get(c)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.data[r].set(c, value);
    }

    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        assert_eq!(self.cols, v.len(), "dimension mismatch in mul_vec");
        let mut out = BitVec::zeros(self.rows);
        for (r, row) in self.data.iter().enumerate() {
            if row.dot(v) {
                out.set(r, true);
            }
        }
        out
    }

    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for (r, row) in self.data.iter().enumerate() {
            for k in row.ones_indices() {
                out.data[r].xor_assign(&other.data[k]);
            }
        }
        out
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.cols, self.rows);
        for (r, row) in self.data.iter().enumerate() {
            for c in row.ones_indices() {
                out.set(c, r, true);
            }
        }
        out
    }

    /// Non-negative integer power by repeated squaring.
    pub fn pow(&self, mut exp: u64) -> BitMatrix {
        assert_eq!(self.rows, self.cols, "pow of non-square matrix");
        let mut base = self.clone();
        let mut acc = BitMatrix::identity(self.rows);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            exp >>= 1;
        }
        acc
    }

    pub fn to_u8_rows(&self) -> Vec<Vec<u8>> {
        self.data
            .iter()
            .map(|r| r.iter().map(u8::from).collect())
            .collect()
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows, self.cols)?;
        for row in &self.data {
            writeln!(f, "  {row}")?;
        }
        write!(f, "]")
    }
}

/// Solution set of an affine system `A x = b` over GF(2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSolution {
    /// One particular solution.
    pub particular: BitVec,
    /// Basis of the null space of `A`.
    pub kernel: Vec<BitVec>,
}

impl AffineSolution {
    /// Enumerates all solutions. Only sensible for small kernels.
    pub fn enumerate(&self) -> Vec<BitVec> {
        let k = self.kernel.len();
        assert!(k < 20, "kernel dimension {k} too large to enumerate");
        (0u32..(1 << k))
            .map(|mask| {
                let mut x = self.particular.clone();
                for (i, basis) in self.kernel.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        x.xor_assign(basis);
                    }
                }
                x
            })
            .collect()
    }
}

/// Solves `A x = b` by Gauss-Jordan elimination. Returns `None` when the
/// system is inconsistent.
pub fn solve_affine(a: &BitMatrix, b: &BitVec) -> Option<AffineSolution> {
    assert_eq!(a.rows(), b.len(), "rhs length mismatch");
    let n = a.cols();
    // Augmented rows: [A | b]
    let mut rows: Vec<BitVec> = (0..a.rows())
        .map(|r| {
            let mut aug = BitVec::zeros(n + 1);
            for c in a.row(r).ones_indices() {
                aug.set(c, true);
            }
            aug.set(n, b.get(r));
            aug
        })
        .collect();

    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r].get(col)) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row.get(col) {
                row.xor_assign(&pivot_row);
            }
        }
        pivots.push(col);
        rank += 1;
    }

    if rows[rank..].iter().any(|r| r.get(n)) {
        return None;
    }

    let mut particular = BitVec::zeros(n);
    for (r, &col) in pivots.iter().enumerate() {
        particular.set(col, rows[r].get(n));
    }

    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut v = BitVec::unit(n, f);
            for (r, &col) in pivots.iter().enumerate() {
                if rows[r].get(f) {
                    v.set(col, true);
                }
            }
            v
        })
        .collect();

    Some(AffineSolution { particular, kernel })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn ones_clears_tail_bits() {
        let v = BitVec::ones(70);
        assert_eq!(v.count_ones(), 70);
        assert_eq!(v.words()[1], (1u64 << 6) - 1);
    }

    #[test]
    fn display_and_parse() {
        let v = BitVec::parse("10110").unwrap();
        assert_eq!(v.to_string(), "10110");
        assert_eq!(v.ones_indices(), vec![0, 2, 3]);
        assert!(BitVec::parse("10x").is_err());
    }

    #[test]
    fn pow_matches_repeated_mul() {
        let m = BitMatrix::from_u8_rows(&[&[0, 1, 1], &[1, 0, 0], &[1, 1, 0]]);
        let mut acc = BitMatrix::identity(3);
        for e in 0..9 {
            assert_eq!(m.pow(e), acc);
            acc = acc.mul(&m);
        }
    }

    #[test]
    fn solve_inconsistent() {
        // x0 = 1, x0 = 0
        let a = BitMatrix::from_u8_rows(&[&[1, 0], &[1, 0]]);
        let b = BitVec::parse("10").unwrap();
        assert!(solve_affine(&a, &b).is_none());
    }

    #[test]
    fn solve_one_free_variable() {
        // x0 + x1 = 1
        let a = BitMatrix::from_u8_rows(&[&[1, 1]]);
        let b = BitVec::parse("1").unwrap();
        let sol = solve_affine(&a, &b).unwrap();
        let mut all: Vec<String> = sol.enumerate().iter().map(|v| v.to_string()).collect();
        all.sort();
        assert_eq!(all, vec!["01", "10"]);
    }

    proptest! {
        #[test]
        fn solutions_satisfy_system(
            bits in proptest::collection::vec(any::<bool>(), 5 * 7),
            x in proptest::collection::vec(any::<bool>(), 7),
        ) {
            let rows: Vec<BitVec> = bits.chunks(7).map(BitVec::from_bools).collect();
            let a = BitMatrix::from_rows(rows);
            let x = BitVec::from_bools(&x);
            let b = a.mul_vec(&x);
            let sol = solve_affine(&a, &b).expect("constructed system is consistent");
            prop_assert_eq!(a.mul_vec(&sol.particular), b.clone());
            for k in &sol.kernel {
                prop_assert!(a.mul_vec(k).is_zero());
            }
            prop_assert!(sol.enumerate().contains(&x));
        }

        #[test]
        fn transpose_is_involution(bits in proptest::collection::vec(any::<bool>(), 4 * 9)) {
            let rows: Vec<BitVec> = bits.chunks(9).map(BitVec::from_bools).collect();
            let a = BitMatrix::from_rows(rows);
            prop_assert_eq!(a.transpose().transpose(), a);
        }
    }
}
