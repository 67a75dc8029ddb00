//! Bit-packed dense matrices over GF(2).
//!
//! Each row occupies `words` consecutive `u64`s; bit `j % 64` of word
//! `j / 64` holds column `j`.

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64).max(1);
        BitMatrix { rows, cols, words, data: vec![0; rows * words] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BitMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        (self.data[i * self.words + j / 64] >> (j % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        let w = &mut self.data[i * self.words + j / 64];
        if v {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize, j: usize) {
        self.data[i * self.words + j / 64] ^= 1 << (j % 64);
    }

    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.words..(i + 1) * self.words]
    }

    pub fn row_words_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.words..(i + 1) * self.words]
    }

    /// Appends a row given as packed words (length must equal `words`).
    pub fn push_row(&mut self, row: &[u64]) {
        assert_eq!(row.len(), self.words);
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    fn xor_rows(&mut self, dst: usize, src: usize, from_word: usize) {
        let w = self.words;
        let (a, b) = if dst < src {
            let (lo, hi) = self.data.split_at_mut(src * w);
            (&mut lo[dst * w..dst * w + w], &hi[..w])
        } else {
            let (lo, hi) = self.data.split_at_mut(dst * w);
            (&mut hi[..w], &lo[src * w..src * w + w])
        };
        for k in from_word..w {
            a[k] ^= b[k];
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let w = self.words;
        for k in 0..w {
            self.data.swap(a * w + k, b * w + k);
        }
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| self.get(i, c)) else { continue };
            self.swap_rows(r, piv);
            let fw = c / 64;
            for i in 0..self.rows {
                if i != r && self.get(i, c) {
                    self.xor_rows(i, r, fw);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Row echelon form (no back substitution) in place; returns pivots.
    pub fn echelon_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| self.get(i, c)) else { continue };
            self.swap_rows(r, piv);
            let fw = c / 64;
            for i in r + 1..self.rows {
                if self.get(i, c) {
                    self.xor_rows(i, r, fw);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().echelon_in_place().len()
    }

    /// Basis of `{v : self · v = 0}`, each vector packed as a one-row matrix.
    pub fn nullspace(&self) -> BitMatrix {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut out = BitMatrix::zero(0, self.cols);
        for f in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = BitMatrix::zero(1, self.cols);
            v.set(0, f, true);
            for (i, &pc) in pivots.iter().enumerate() {
                if m.get(i, f) {
                    v.set(0, pc, true);
                }
            }
            out.push_row(v.row_words(0));
        }
        out
    }

    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = BitMatrix::zero(self.rows, other.cols);
        let w = other.words;
        for i in 0..self.rows {
            let mut acc = vec![0u64; w];
            for k in 0..self.cols {
                if self.get(i, k) {
                    for (a, b) in acc.iter_mut().zip(other.row_words(k)) {
                        *a ^= b;
                    }
                }
            }
            out.row_words_mut(i).copy_from_slice(&acc);
        }
        out
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    t.set(j, i, true);
                }
            }
        }
        t
    }
}

/// Incremental echelon basis over GF(2): rows are reduced against the
/// current pivots as they arrive, which keeps memory proportional to the
/// rank rather than the number of equations.
pub struct BitEchelon {
    cols: usize,
    words: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
    /// pivot column -> row index
    pivot_row: Vec<Option<usize>>,
}

impl BitEchelon {
    pub fn new(cols: usize) -> Self {
        let words = cols.div_ceil(64).max(1);
        BitEchelon { cols, words, rows: Vec::new(), pivots: Vec::new(), pivot_row: vec![None; cols] }
    }

    pub fn words(&self) -> usize {
        self.words
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row` and inserts it when independent; returns whether it was.
    pub fn insert(&mut self, mut row: Vec<u64>) -> bool {
        debug_assert_eq!(row.len(), self.words);
        loop {
            let Some(lead) = leading_bit(&row) else { return false };
            match self.pivot_row[lead] {
                Some(r) => {
                    let src = &self.rows[r];
                    for k in lead / 64..self.words {
                        row[k] ^= src[k];
                    }
                }
                None => {
                    self.pivot_row[lead] = Some(self.rows.len());
                    self.pivots.push(lead);
                    self.rows.push(row);
                    return true;
                }
            }
        }
    }

    /// Basis of the right kernel of the accumulated row space.
    pub fn nullspace(&self) -> Vec<Vec<u64>> {
        let mut m = BitMatrix::zero(0, self.cols);
        for r in &self.rows {
            m.push_row(r);
        }
        let ns = m.nullspace();
        (0..ns.rows()).map(|i| ns.row_words(i).to_vec()).collect()
    }
}

fn leading_bit(row: &[u64]) -> Option<usize> {
    row.iter().enumerate().find(|(_, &w)| w != 0).map(|(k, &w)| k * 64 + w.trailing_zeros() as usize)
}

pub fn bit_get(row: &[u64], j: usize) -> bool {
    (row[j / 64] >> (j % 64)) & 1 == 1
}

pub fn bit_flip(row: &mut [u64], j: usize) {
    row[j / 64] ^= 1 << (j % 64);
}
