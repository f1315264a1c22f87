//! Bit-packed vectors and matrices over GF(2).
//!
//! Rows are stored as `u64` words, least significant bit first. Row
//! reduction works on whole words, so a rank computation on an `r × c`
//! matrix costs `O(r² · c / 64)`.

use std::fmt;

const WORD: usize = 64;

fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

/// A fixed-length vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// Unit vector with a single set bit at `index`.
    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Builds a vector from the low `len` bits of `word` (`len ≤ 64`).
    pub fn from_u64(len: usize, word: u64) -> Self {
        assert!(len <= WORD, "from_u64 supports at most 64 bits");
        let mut v = Self::zeros(len);
        if len > 0 {
            let mask = if len == WORD { u64::MAX } else { (1u64 << len) - 1 };
            v.words[0] = word & mask;
        }
        v
    }

    /// Packs the vector into a single word (`len ≤ 64`).
    pub fn to_u64(&self) -> u64 {
        assert!(self.len <= WORD, "to_u64 supports at most 64 bits");
        self.words.first().copied().unwrap_or(0)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, index: usize) -> bool {
        debug_assert!(index < self.len);
        (self.words[index / WORD] >> (index % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, index: usize, value: bool) {
        debug_assert!(index < self.len);
        let bit = 1u64 << (index % WORD);
        if value {
            self.words[index / WORD] |= bit;
        } else {
            self.words[index / WORD] &= !bit;
        }
    }

    #[inline]
    pub fn flip(&mut self, index: usize) {
        debug_assert!(index < self.len);
        self.words[index / WORD] ^= 1u64 << (index % WORD);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn or(&self, other: &BitVec) -> BitVec {
        debug_assert_eq!(self.len, other.len);
        BitVec {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect(),
        }
    }

    /// Standard inner product over GF(2).
    pub fn dot(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Indices of set bits in increasing order.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let tz = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(wi * WORD + tz)
                }
            })
        })
    }

    /// Keeps only the listed positions, in the given order.
    pub fn select(&self, positions: &[usize]) -> BitVec {
        let mut out = BitVec::zeros(positions.len());
        for (i, &p) in positions.iter().enumerate() {
            if self.get(p) {
                out.set(i, true);
            }
        }
        out
    }

    /// Concatenates `self` and `other`.
    pub fn concat(&self, other: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.len + other.len);
        for i in self.ones() {
            out.set(i, true);
        }
        for i in other.ones() {
            out.set(self.len + i, true);
        }
        out
    }

    fn first_one_from(&self, start: usize) -> Option<usize> {
        if start >= self.len {
            return None;
        }
        let mut wi = start / WORD;
        let mut w = self.words[wi] & (u64::MAX << (start % WORD));
        loop {
            if w != 0 {
                let idx = wi * WORD + w.trailing_zeros() as usize;
                return (idx < self.len).then_some(idx);
            }
            wi += 1;
            if wi >= self.words.len() {
                return None;
            }
            w = self.words[wi];
        }
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec(")?;
        for i in 0..self.len {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        write!(f, ")")
    }
}

/// Result of reducing a matrix to row echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    /// Reduced matrix with the same shape as the input; zero rows last.
    pub matrix: BitMatrix,
    pub rank: usize,
    /// Pivot column of each of the first `rank` rows.
    pub pivots: Vec<usize>,
}

/// A dense matrix over GF(2) stored row-wise.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVec>,
}

impl BitMatrix {
    /// Matrix with `cols` columns and no rows.
    pub fn new(cols: usize) -> Self {
        Self {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: vec![BitVec::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            cols: n,
            rows: (0..n).map(|i| BitVec::unit(n, i)).collect(),
        }
    }

    /// Builds a matrix from rows; every row must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "row length mismatch");
        Self { cols, rows }
    }

    /// Builds a matrix from a nested array of 0/1 entries.
    pub fn from_dense(cols: usize, entries: &[&[u8]]) -> Self {
        let rows = entries
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols);
                BitVec::from_bools(&r.iter().map(|&b| b != 0).collect::<Vec<_>>())
            })
            .collect();
        Self { cols, rows }
    }

    pub fn push_row(&mut self, row: BitVec) {
        assert_eq!(row.len(), self.cols, "row length mismatch");
        self.rows.push(row);
    }

    #[inline]
    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn num_cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<BitVec> {
        self.rows
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value);
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.cols, self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.ones() {
                out.rows[c].set(r, true);
            }
        }
        out
    }

    /// Keeps only the listed columns, in the given order.
    pub fn select_columns(&self, columns: &[usize]) -> BitMatrix {
        BitMatrix {
            cols: columns.len(),
            rows: self.rows.iter().map(|r| r.select(columns)).collect(),
        }
    }

    /// `self · other` over GF(2).
    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.rows.len(), "inner dimension mismatch");
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc = BitVec::zeros(other.cols);
                for i in r.ones() {
                    acc.xor_assign(&other.rows[i]);
                }
                acc
            })
            .collect();
        BitMatrix {
            cols: other.cols,
            rows,
        }
    }

    /// `v · self`: the combination of rows selected by `v`.
    pub fn combine_rows(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.rows.len());
        let mut acc = BitVec::zeros(self.cols);
        for i in v.ones() {
            acc.xor_assign(&self.rows[i]);
        }
        acc
    }

    /// `self · v` for a column vector `v`.
    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.cols);
        let mut out = BitVec::zeros(self.rows.len());
        for (i, r) in self.rows.iter().enumerate() {
            if r.dot(v) {
                out.set(i, true);
            }
        }
        out
    }

    /// Reduced row echelon form.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        Rref {
            rank: pivots.len(),
            matrix: m,
            pivots,
        }
    }

    /// Reduces in place and returns the pivot columns.
    fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next = 0;
        let mut col = 0;
        while next < self.rows.len() && col < self.cols {
            // Earliest pivot column among the remaining rows.
            let mut best: Option<(usize, usize)> = None;
            for r in next..self.rows.len() {
                if let Some(c) = self.rows[r].first_one_from(col) {
                    if best.is_none_or(|(_, bc)| c < bc) {
                        best = Some((r, c));
                        if c == col {
                            break;
                        }
                    }
                }
            }
            let Some((r, c)) = best else { break };
            self.rows.swap(next, r);
            let pivot_row = self.rows[next].clone();
            for (i, row) in self.rows.iter_mut().enumerate() {
                if i != next && row.get(c) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(c);
            next += 1;
            col = c + 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// RREF with the zero rows dropped: a canonical basis of the row span.
    pub fn row_basis(&self) -> BitMatrix {
        let Rref {
            mut matrix, rank, ..
        } = self.rref();
        matrix.rows.truncate(rank);
        matrix
    }

    /// Basis of the right kernel `{v : self · v = 0}`.
    pub fn nullspace(&self) -> BitMatrix {
        let Rref { matrix, pivots, .. } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = BitMatrix::new(self.cols);
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = BitVec::unit(self.cols, free);
            for (row, &p) in matrix.rows.iter().zip(&pivots) {
                if row.get(free) {
                    v.set(p, true);
                }
            }
            basis.push_row(v);
        }
        basis
    }

    /// Basis of the left kernel `{c : c · self = 0}`.
    pub fn left_nullspace(&self) -> BitMatrix {
        self.transpose().nullspace()
    }

    /// True iff `v` lies in the row span.
    pub fn span_contains(&self, v: &BitVec) -> bool {
        let mut with = self.clone();
        let before = with.rank();
        with.push_row(v.clone());
        with.rank() == before
    }

    /// True iff both matrices have the same row span.
    pub fn same_span(&self, other: &BitMatrix) -> bool {
        self.cols == other.cols && self.row_basis() == other.row_basis()
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<BitMatrix> {
        let n = self.rows.len();
        if n != self.cols {
            return None;
        }
        if n == 0 {
            return Some(BitMatrix::new(0));
        }
        let augmented = BitMatrix {
            cols: 2 * n,
            rows: self
                .rows
                .iter()
                .enumerate()
                .map(|(i, r)| r.concat(&BitVec::unit(n, i)))
                .collect(),
        };
        let Rref {
            matrix, pivots, ..
        } = augmented.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let right: Vec<usize> = (n..2 * n).collect();
        Some(matrix.select_columns(&right))
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows.len(), self.cols)?;
        for r in &self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                write!(f, "{}", u8::from(r.get(c)))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_matrix_has_rank_zero() {
        assert_eq!(BitMatrix::zeros(4, 7).rank(), 0);
        assert_eq!(BitMatrix::new(3).rank(), 0);
    }

    #[test]
    fn identity_has_full_rank() {
        for n in [1, 5, 64, 65, 130] {
            assert_eq!(BitMatrix::identity(n).rank(), n);
        }
    }

    #[test]
    fn deleted_k3_tableau_has_rank_three() {
        let m = BitMatrix::from_dense(4, &[&[0, 0, 1, 1], &[1, 0, 0, 1], &[0, 1, 1, 0]]);
        let r = m.rref();
        assert_eq!(r.rank, 3);
        assert_eq!(r.pivots, vec![0, 1, 2]);
        assert!(r.matrix.same_span(&m));
    }

    #[test]
    fn nullspace_is_orthogonal_and_complete() {
        let m = BitMatrix::from_dense(
            6,
            &[&[1, 0, 1, 1, 0, 0], &[0, 1, 1, 0, 1, 0], &[1, 1, 0, 1, 1, 0]],
        );
        let k = m.nullspace();
        assert_eq!(k.num_rows() + m.rank(), 6);
        for v in k.rows() {
            assert!(m.mul_vec(v).is_zero());
        }
        assert_eq!(k.rank(), k.num_rows());
    }

    #[test]
    fn inverse_roundtrip() {
        let m = BitMatrix::from_dense(3, &[&[1, 1, 0], &[0, 1, 1], &[0, 0, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), BitMatrix::identity(3));
        let singular = BitMatrix::from_dense(2, &[&[1, 1], &[1, 1]]);
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn ones_iterates_across_words() {
        let mut v = BitVec::zeros(200);
        for i in [0, 63, 64, 127, 199] {
            v.set(i, true);
        }
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![0, 63, 64, 127, 199]);
        assert_eq!(v.count_ones(), 5);
    }
}
