use std::fmt;
use std::hash::{Hash, Hasher};

use super::bitmat::BitMatrix;
use super::field::{Field, FieldRef};
use crate::error::{Error, Result};

/// Dense matrix over a finite field, row-major.
///
/// Groups act on row vectors from the right: `v ↦ v·A`.
#[derive(Clone)]
pub struct Matrix {
    field: FieldRef,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Row-packed GF(2) kernels are used at or above this size.
const PACKED_THRESHOLD: usize = 16;

impl Matrix {
    pub fn new(field: &FieldRef, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!("{} entries for {rows}x{cols}", data.len())));
        }
        if let Some(&bad) = data.iter().find(|&&x| x >= field.q()) {
            return Err(Error::invalid(format!("entry {bad} outside GF({})", field.q())));
        }
        Ok(Matrix { field: field.clone(), rows, cols, data })
    }

    pub fn zero(field: &FieldRef, rows: usize, cols: usize) -> Self {
        Matrix { field: field.clone(), rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: &FieldRef, n: usize) -> Self {
        Matrix::scalar(field, n, 1)
    }

    pub fn scalar(field: &FieldRef, n: usize, s: u32) -> Self {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = s;
        }
        m
    }

    pub fn from_rows(field: &FieldRef, rows: &[Vec<u32>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Matrix::new(field, r, c, rows.concat())
    }

    /// Builds from signed integers reduced into the prime field.
    pub fn from_ints(field: &FieldRef, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let data = rows.iter().flat_map(|row| row.iter().map(|&x| field.from_int(x))).collect();
        Matrix { field: field.clone(), rows: r, cols: c, data }
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn check_field(&self, other: &Matrix) -> Result<()> {
        if !self.field.same(&other.field) {
            return Err(Error::FieldMismatch(format!("{:?} vs {:?}", self.field, other.field)));
        }
        Ok(())
    }

    fn is_gf2(&self) -> bool {
        self.field.q() == 2
    }

    pub fn to_bits(&self) -> BitMatrix {
        let mut b = BitMatrix::zero(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) != 0 {
                    b.set(i, j, true);
                }
            }
        }
        b
    }

    pub fn from_bits(field: &FieldRef, b: &BitMatrix) -> Self {
        let mut m = Matrix::zero(field, b.rows(), b.cols());
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                if b.get(i, j) {
                    m.set(i, j, 1);
                }
            }
        }
        m
    }

    /// Matrix product; fails on shape or field mismatch.
    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.is_gf2() && self.rows.min(self.cols).min(other.cols) >= PACKED_THRESHOLD {
            return Ok(Matrix::from_bits(&self.field, &self.to_bits().mul(&other.to_bits())));
        }
        Ok(self.mul_generic(other))
    }

    /// Schoolbook product without any specialised path. Shapes must agree.
    pub fn mul_generic(&self, other: &Matrix) -> Matrix {
        let f = &*self.field;
        let n = other.cols;
        let mut out = vec![0u32; self.rows * n];
        for i in 0..self.rows {
            let orow = &mut out[i * n..(i + 1) * n];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                let brow = &other.data[k * n..(k + 1) * n];
                if a == 1 {
                    for (o, &b) in orow.iter_mut().zip(brow) {
                        *o = f.add(*o, b);
                    }
                } else {
                    for (o, &b) in orow.iter_mut().zip(brow) {
                        if b != 0 {
                            *o = f.add(*o, f.mul(a, b));
                        }
                    }
                }
            }
        }
        Matrix { field: self.field.clone(), rows: self.rows, cols: n, data: out }
    }

    /// Product of matrices known to be compatible.
    pub fn mul_unchecked(&self, other: &Matrix) -> Matrix {
        self.mul(other).expect("compatible matrices")
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch("matrix sum".into()));
        }
        let f = &*self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.add(&other.scale(self.field.neg(1)))
    }

    pub fn scale(&self, s: u32) -> Matrix {
        let f = &*self.field;
        let data = self.data.iter().map(|&a| f.mul(a, s)).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    /// Kronecker product; row index of the result is `i * b.rows + k`.
    pub fn kron(&self, b: &Matrix) -> Matrix {
        let f = &*self.field;
        let (r, c) = (self.rows * b.rows, self.cols * b.cols);
        let mut m = Matrix::zero(&self.field, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..b.rows {
                    for l in 0..b.cols {
                        m.set(i * b.rows + k, j * b.cols + l, f.mul(a, b.get(k, l)));
                    }
                }
            }
        }
        m
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, b: &Matrix) -> Matrix {
        let mut m = Matrix::zero(&self.field, self.rows + b.rows, self.cols + b.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j));
            }
        }
        for i in 0..b.rows {
            for j in 0..b.cols {
                m.set(self.rows + i, self.cols + j, b.get(i, j));
            }
        }
        m
    }

    /// Submatrix of the given rows (all columns).
    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let data = idx.iter().flat_map(|&i| self.row(i).iter().copied()).collect();
        Matrix { field: self.field.clone(), rows: idx.len(), cols: self.cols, data }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_scalar_value() == Some(1)
    }

    /// The scalar `s` when the matrix equals `s·I`.
    pub fn is_scalar_value(&self) -> Option<u32> {
        if !self.is_square() || self.rows == 0 {
            return None;
        }
        let s = self.get(0, 0);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let want = if i == j { s } else { 0 };
                if self.get(i, j) != want {
                    return None;
                }
            }
        }
        Some(s)
    }

    pub fn trace(&self) -> u32 {
        (0..self.rows.min(self.cols)).fold(0, |acc, i| self.field.add(acc, self.get(i, i)))
    }

    /// Reduced row echelon form, rank, and pivot columns.
    pub fn rref(&self) -> (Matrix, usize, Vec<usize>) {
        if self.is_gf2() && self.rows.max(self.cols) >= PACKED_THRESHOLD {
            let mut b = self.to_bits();
            let piv = b.rref_in_place();
            return (Matrix::from_bits(&self.field, &b), piv.len(), piv);
        }
        self.rref_generic()
    }

    /// Field-generic elimination, also the reference for the packed path.
    pub fn rref_generic(&self) -> (Matrix, usize, Vec<usize>) {
        let f = &*self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        let cols = self.cols;
        for c in 0..cols {
            if r == m.rows {
                break;
            }
            let Some(piv) = (r..m.rows).find(|&i| m.get(i, c) != 0) else { continue };
            if piv != r {
                for j in 0..cols {
                    m.data.swap(piv * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(m.get(r, c));
            if inv != 1 {
                for j in c..cols {
                    let v = m.get(r, j);
                    m.set(r, j, f.mul(v, inv));
                }
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor == 0 {
                    continue;
                }
                let nf = f.neg(factor);
                for j in c..cols {
                    let v = m.get(r, j);
                    if v != 0 {
                        let cur = m.get(i, j);
                        m.set(i, j, f.add(cur, f.mul(nf, v)));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, r, pivots)
    }

    pub fn rank(&self) -> usize {
        if self.is_gf2() {
            return self.to_bits().rank();
        }
        self.rref().1
    }

    /// Basis of the right kernel `{v : self·vᵀ = 0}`, as row vectors.
    pub fn nullspace(&self) -> Vec<Vec<u32>> {
        if self.is_gf2() && self.rows.max(self.cols) >= PACKED_THRESHOLD {
            let ns = self.to_bits().nullspace();
            return (0..ns.rows())
                .map(|i| (0..self.cols).map(|j| ns.get(i, j) as u32).collect())
                .collect();
        }
        self.nullspace_generic()
    }

    pub fn nullspace_generic(&self) -> Vec<Vec<u32>> {
        let f = &*self.field;
        let (r, _, pivots) = self.rref_generic();
        kernel_from_rref(f, &r, &pivots, self.cols)
    }

    /// Basis of the left kernel `{v : v·self = 0}`.
    pub fn left_nullspace(&self) -> Vec<Vec<u32>> {
        self.transpose().nullspace()
    }

    /// Some `x` with `self·x = b` (column convention), or `None`.
    pub fn solve_linear(&self, b: &[u32]) -> Result<Option<Vec<u32>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!("rhs length {} for {} rows", b.len(), self.rows)));
        }
        let mut aug = Matrix::zero(&self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b[i]);
        }
        let (r, _, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0; self.cols];
        for (i, &c) in pivots.iter().enumerate() {
            x[c] = r.get(i, self.cols);
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zero(&self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let (r, _, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zero(&self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j));
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn det(&self) -> u32 {
        assert!(self.is_square());
        let f = &*self.field;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = 1;
        for c in 0..n {
            let Some(piv) = (c..n).find(|&i| m.get(i, c) != 0) else { return 0 };
            if piv != c {
                for j in 0..n {
                    m.data.swap(piv * n + j, c * n + j);
                }
                det = f.neg(det);
            }
            let d = m.get(c, c);
            det = f.mul(det, d);
            let inv = f.inv(d);
            for i in c + 1..n {
                let factor = f.mul(m.get(i, c), inv);
                if factor == 0 {
                    continue;
                }
                for j in c..n {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn pow(&self, mut n: u64) -> Matrix {
        let mut r = Matrix::identity(&self.field, self.rows);
        let mut b = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                r = r.mul_unchecked(&b);
            }
            b = b.mul_unchecked(&b);
            n >>= 1;
        }
        r
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[u32]) -> Vec<u32> {
        let f = &*self.field;
        let mut out = vec![0u32; self.cols];
        for (k, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let row = self.row(k);
            for (o, &b) in out.iter_mut().zip(row) {
                if b != 0 {
                    *o = f.add(*o, f.mul(a, b));
                }
            }
        }
        out
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        let f = &*self.field;
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b))))
            .collect()
    }

    /// Divides by the first nonzero entry so that it becomes 1; returns the scalar removed.
    pub fn normalize_projective(&mut self) -> u32 {
        let Some(&lead) = self.data.iter().find(|&&x| x != 0) else { return 1 };
        if lead != 1 {
            let inv = self.field.inv(lead);
            let f = self.field.clone();
            for x in self.data.iter_mut() {
                *x = f.mul(*x, inv);
            }
        }
        lead
    }

    /// Maps every entry through a field embedding into `target`.
    pub fn map_field(&self, target: &FieldRef, map: &[u32]) -> Matrix {
        Matrix {
            field: target.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| map[x as usize]).collect(),
        }
    }

    /// Lexicographic comparison of entry encodings in row-major order.
    pub fn lex_cmp(&self, other: &Matrix) -> std::cmp::Ordering {
        self.data.cmp(&other.data)
    }

    /// Text block `matrix <r> <c> over <p>^<e>` followed by the rows.
    pub fn to_text(&self) -> String {
        let mut s = format!("matrix {} {} over {}\n", self.rows, self.cols, self.field);
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    /// Parses one matrix block from `lines`, starting at `*pos`.
    /// `line_offset` is added to reported line numbers.
    pub fn parse_block(lines: &[&str], pos: &mut usize, line_offset: usize) -> Result<Matrix> {
        let header_no = *pos;
        let header = lines.get(*pos).ok_or_else(|| Error::parse(header_no + line_offset, 1, "missing matrix header"))?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        if toks.len() != 5 || toks[0] != "matrix" || toks[3] != "over" {
            return Err(Error::parse(header_no + line_offset, 1, "expected `matrix <rows> <cols> over <p>^<e>`"));
        }
        let num = |t: &str, col: usize| -> Result<usize> {
            t.parse().map_err(|_| Error::parse(header_no + line_offset, col, format!("bad integer `{t}`")))
        };
        let rows = num(toks[1], 8)?;
        let cols = num(toks[2], 8)?;
        let field = parse_field_token(toks[4]).map_err(|e| Error::parse(header_no + line_offset, 1, e.to_string()))?;
        *pos += 1;
        let mut data = Vec::with_capacity(rows * cols);
        for _ in 0..rows {
            let ln = *pos;
            let line = lines.get(ln).ok_or_else(|| Error::parse(ln + line_offset, 1, "missing matrix row"))?;
            let vals: Vec<&str> = line.split_whitespace().collect();
            if vals.len() != cols {
                return Err(Error::parse(ln + line_offset, 1, format!("expected {cols} entries, found {}", vals.len())));
            }
            for v in vals {
                let x: u32 = v.parse().map_err(|_| Error::parse(ln + line_offset, 1, format!("bad entry `{v}`")))?;
                if x >= field.q() {
                    return Err(Error::parse(ln + line_offset, 1, format!("entry {x} outside field")));
                }
                data.push(x);
            }
            *pos += 1;
        }
        Matrix::new(&field, rows, cols, data)
    }

    pub fn from_text(text: &str) -> Result<Matrix> {
        let lines: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).collect();
        let mut pos = 0;
        Matrix::parse_block(&lines, &mut pos, 1)
    }
}

/// Parses `p^e` (or a bare prime `p`).
pub fn parse_field_token(tok: &str) -> Result<FieldRef> {
    let (p, e) = match tok.split_once('^') {
        Some((p, e)) => (p.parse::<u32>(), e.parse::<u32>()),
        None => (tok.parse::<u32>(), Ok(1)),
    };
    match (p, e) {
        (Ok(p), Ok(e)) => Field::get(p, e),
        _ => Err(Error::invalid(format!("bad field `{tok}`"))),
    }
}

pub(crate) fn kernel_from_rref(f: &Field, r: &Matrix, pivots: &[usize], cols: usize) -> Vec<Vec<u32>> {
    let mut is_pivot = vec![false; cols];
    for &c in pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0u32; cols];
        v[free] = 1;
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(r.get(i, free));
        }
        basis.push(v);
    }
    basis
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.field.same(&other.field) && self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl Eq for Matrix {}

impl Hash for Matrix {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
        self.cols.hash(state);
        self.data.hash(state);
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random(field: &FieldRef, r: usize, c: usize, rng: &mut ChaCha8Rng) -> Matrix {
        let data = (0..r * c).map(|_| rng.gen_range(0..field.q())).collect();
        Matrix::new(field, r, c, data).unwrap()
    }

    /// Textbook triple loop over field operations only.
    fn schoolbook(a: &Matrix, b: &Matrix) -> Matrix {
        let f = a.field().clone();
        let mut out = Matrix::zero(&f, a.rows(), b.cols());
        for i in 0..a.rows() {
            for j in 0..b.cols() {
                let mut s = 0;
                for k in 0..a.cols() {
                    s = f.add(s, f.mul(a.get(i, k), b.get(k, j)));
                }
                out.set(i, j, s);
            }
        }
        out
    }

    #[test]
    fn identity_times_m() {
        let f = Field::get(3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let m = random(&f, 4, 4, &mut rng);
        assert_eq!(Matrix::identity(&f, 4).mul(&m).unwrap(), m);
    }

    #[test]
    fn gf2_unipotent_squares_to_identity() {
        let f = Field::get(2, 1).unwrap();
        let m = Matrix::from_ints(&f, &[&[1, 1], &[0, 1]]);
        assert!(m.mul(&m).unwrap().is_identity());
    }

    #[test]
    fn gf9_product_matches_schoolbook() {
        let f = Field::get(3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let a = random(&f, 8, 8, &mut rng);
            let b = random(&f, 8, 8, &mut rng);
            assert_eq!(a.mul(&b).unwrap(), schoolbook(&a, &b));
        }
    }

    #[test]
    fn mismatches_are_errors() {
        let f2 = Field::get(2, 1).unwrap();
        let f3 = Field::get(3, 1).unwrap();
        assert!(Matrix::identity(&f2, 2).mul(&Matrix::identity(&f3, 2)).is_err());
        assert!(Matrix::zero(&f2, 2, 3).mul(&Matrix::zero(&f2, 2, 3)).is_err());
    }

    #[test]
    fn rank_edge_cases() {
        let f = Field::get(5, 1).unwrap();
        assert_eq!(Matrix::zero(&f, 3, 4).rref().1, 0);
        assert_eq!(Matrix::identity(&f, 6).rref().1, 6);
    }

    /// Rank of a small matrix as the size of its largest nonsingular minor.
    fn minor_rank(m: &Matrix) -> usize {
        let (r, c) = (m.rows(), m.cols());
        let mut best = 0;
        for k in 1..=r.min(c) {
            let mut found = false;
            for rs in subsets(r, k) {
                for cs in subsets(c, k) {
                    let mut sub = Matrix::zero(m.field(), k, k);
                    for (a, &i) in rs.iter().enumerate() {
                        for (b, &j) in cs.iter().enumerate() {
                            sub.set(a, b, m.get(i, j));
                        }
                    }
                    if sub.det() != 0 {
                        found = true;
                        break;
                    }
                }
                if found {
                    break;
                }
            }
            if found {
                best = k;
            } else {
                break;
            }
        }
        best
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        (0u32..1 << n).filter(|m| m.count_ones() as usize == k).map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect()).collect()
    }

    #[test]
    fn gf2_rank_matches_minor_oracle_on_slices() {
        let f = Field::get(2, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(20);
        for _ in 0..10 {
            let m = random(&f, 20, 30, &mut rng);
            for s in 0..4 {
                let rows: Vec<usize> = (0..5).map(|i| (i + 5 * s) % 20).collect();
                let mut slice = Matrix::zero(&f, 5, 5);
                for (a, &i) in rows.iter().enumerate() {
                    for b in 0..5 {
                        slice.set(a, b, m.get(i, b + 6 * s));
                    }
                }
                assert_eq!(slice.rank(), minor_rank(&slice));
            }
        }
    }

    #[test]
    fn nullspace_edge_cases() {
        let f = Field::get(7, 1).unwrap();
        assert!(Matrix::identity(&f, 4).nullspace().is_empty());
        assert_eq!(Matrix::zero(&f, 3, 3).nullspace().len(), 3);
    }

    #[test]
    fn nullspace_vectors_are_annihilated() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for q in [2u64, 3, 4, 9, 25] {
            let f = Field::of_order(q).unwrap();
            for _ in 0..10 {
                let r = rng.gen_range(1..20);
                let c = rng.gen_range(1..20);
                let m = random(&f, r, c, &mut rng);
                let ns = m.nullspace();
                assert_eq!(ns.len() + m.rank(), c);
                for v in ns {
                    assert!(m.mul_vec(&v).iter().all(|&x| x == 0));
                }
            }
        }
    }

    #[test]
    fn solve_identity_and_inconsistent() {
        let f = Field::get(3, 1).unwrap();
        let b = vec![2, 0, 1];
        assert_eq!(Matrix::identity(&f, 3).solve_linear(&b).unwrap(), Some(b));
        let z = Matrix::zero(&f, 1, 1);
        assert_eq!(z.solve_linear(&[1]).unwrap(), None);
    }

    #[test]
    fn solvable_systems_have_zero_residual() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let f = Field::get(2, 2).unwrap();
        for _ in 0..20 {
            let a = random(&f, 12, 9, &mut rng);
            let x: Vec<u32> = (0..9).map(|_| rng.gen_range(0..4)).collect();
            let b = a.mul_vec(&x);
            let sol = a.solve_linear(&b).unwrap().unwrap();
            assert_eq!(a.mul_vec(&sol), b);
        }
    }

    #[test]
    fn packed_and_generic_paths_agree() {
        let f = Field::get(2, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..1000 {
            let r = rng.gen_range(1..=64);
            let c = rng.gen_range(1..=64);
            let k = rng.gen_range(1..=64);
            let a = random(&f, r, c, &mut rng);
            let b = random(&f, c, k, &mut rng);
            assert_eq!(Matrix::from_bits(&f, &a.to_bits().mul(&b.to_bits())), a.mul_generic(&b));
            let mut bits = a.to_bits();
            let piv = bits.rref_in_place();
            let (g, rank, gp) = a.rref_generic();
            assert_eq!(piv, gp);
            assert_eq!(piv.len(), rank);
            assert_eq!(Matrix::from_bits(&f, &bits), g);
            let ns = a.to_bits().nullspace();
            let nsg = a.nullspace_generic();
            assert_eq!(ns.rows(), nsg.len());
            for (i, v) in nsg.iter().enumerate() {
                let packed: Vec<u32> = (0..c).map(|j| ns.get(i, j) as u32).collect();
                assert_eq!(&packed, v);
            }
        }
    }

    #[test]
    fn inverse_and_det() {
        let f = Field::get(3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..20 {
            let m = random(&f, 5, 5, &mut rng);
            match m.inverse() {
                Some(inv) => {
                    assert_ne!(m.det(), 0);
                    assert!(m.mul(&inv).unwrap().is_identity());
                }
                None => assert_eq!(m.det(), 0),
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let f = Field::get(3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let m = random(&f, 3, 4, &mut rng);
        let text = m.to_text();
        assert!(text.starts_with("matrix 3 4 over 3^2\n"));
        assert_eq!(Matrix::from_text(&text).unwrap(), m);
        assert!(Matrix::from_text("matrix 1 2 over 3^1\n0 5\n").is_err());
    }
}
