//! Invariant bilinear and quadratic forms.
//!
//! A bilinear form with Gram matrix `B` is invariant when `g·B·gᵀ = B`, i.e.
//! `B` is a module map from `V` to its dual. A quadratic form over GF(2) is
//! stored as an upper-triangular `U` with `Q(x) = x·U·xᵀ`.

use super::meataxe::{hom_space, MeataxeOptions};
use super::module::GModule;
use crate::error::{Error, Result};
use crate::gf::{vector, Field, FieldRef, Matrix};

/// Enumerating more combinations than this is refused.
const MAX_COMBINATIONS: u64 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearForm {
    pub gram: Matrix,
}

impl BilinearForm {
    pub fn eval(&self, x: &[u32], y: &[u32]) -> u32 {
        vector::dot(self.gram.field(), &self.gram.vec_mul(x), y)
    }

    pub fn is_alternating(&self) -> bool {
        let f = self.gram.field();
        let n = self.gram.rows();
        (0..n).all(|i| self.gram.get(i, i) == 0 && (0..n).all(|j| self.gram.get(i, j) == f.neg(self.gram.get(j, i))))
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.gram.is_invertible()
    }

    pub fn is_invariant_under(&self, g: &Matrix) -> bool {
        g.mul_unchecked(&self.gram).mul_unchecked(&g.transpose()) == self.gram
    }

    /// Dimension of the radical `{x : B(x, ·) = 0}`.
    pub fn radical_dim(&self) -> usize {
        self.gram.rows() - self.gram.rank()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    /// Upper-triangular representative.
    pub upper: Matrix,
}

impl QuadraticForm {
    pub fn new(upper: Matrix) -> Result<Self> {
        if !upper.is_square() {
            return Err(Error::invalid("quadratic form matrix must be square"));
        }
        let n = upper.rows();
        let mut u = upper;
        let f = u.field().clone();
        for i in 0..n {
            for j in 0..i {
                let v = u.get(j, i);
                u.set(j, i, f.add(v, u.get(i, j)));
                u.set(i, j, 0);
            }
        }
        Ok(QuadraticForm { upper: u })
    }

    /// `Σ_{i≤j} x_i U_ij x_j` with a hyperbolic-pair matrix.
    pub fn hyperbolic(field: &FieldRef, n: usize) -> Self {
        let mut u = Matrix::zero(field, 2 * n, 2 * n);
        for i in 0..n {
            u.set(2 * i, 2 * i + 1, 1);
        }
        QuadraticForm { upper: u }
    }

    pub fn dim(&self) -> usize {
        self.upper.rows()
    }

    pub fn eval(&self, x: &[u32]) -> u32 {
        vector::dot(self.upper.field(), &self.upper.vec_mul(x), x)
    }

    pub fn polarization(&self) -> BilinearForm {
        BilinearForm { gram: self.upper.add(&self.upper.transpose()).expect("square") }
    }

    /// `Q(x·g) = Q(x)` for all `x`.
    pub fn is_invariant_under(&self, g: &Matrix) -> bool {
        let img = QuadraticForm::new(g.mul_unchecked(&self.upper).mul_unchecked(&g.transpose())).expect("square");
        img.upper == self.upper
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.polarization().is_nondegenerate()
    }

    /// Arf invariant over GF(2) of a form with nondegenerate polarization,
    /// from a symplectic basis: `Σ Q(eᵢ)Q(fᵢ)`.
    pub fn arf(&self) -> Result<u32> {
        let f = self.upper.field().clone();
        if f.q() != 2 {
            return Err(Error::invalid("Arf invariant implemented over GF(2) only"));
        }
        let b = self.polarization();
        if !b.is_nondegenerate() {
            return Err(Error::Precondition("polarization is degenerate".into()));
        }
        let n = self.dim();
        let mut pool: Vec<Vec<u32>> = (0..n).map(|i| crate::gf::vector::unit(n, i)).collect();
        let mut arf = 0;
        while let Some(e) = pool.pop() {
            let Some(k) = pool.iter().position(|v| b.eval(&e, v) == 1) else {
                return Err(Error::Internal("symplectic basis construction failed".into()));
            };
            let fv = pool.swap_remove(k);
            arf ^= self.eval(&e) & self.eval(&fv);
            // project the rest onto the complement of ⟨e, f⟩
            for v in pool.iter_mut() {
                let a = b.eval(v, &fv);
                let c = b.eval(v, &e);
                vector::axpy(&f, v, a, &e);
                vector::axpy(&f, v, c, &fv);
            }
        }
        Ok(arf)
    }

    /// `+1` for Arf invariant 0 (maximal Witt index), `−1` otherwise.
    pub fn sign(&self) -> Result<i32> {
        Ok(if self.arf()? == 0 { 1 } else { -1 })
    }

    /// Number of zeros of `Q`, by enumeration.
    pub fn zero_count(&self) -> u64 {
        let f = self.upper.field();
        let n = self.dim();
        let q = f.q() as u64;
        (0..q.pow(n as u32)).filter(|&c| self.eval(&vector::decode(f.q(), n, c)) == 0).count() as u64
    }
}

/// Basis of the space of invariant bilinear forms.
pub fn invariant_bilinear_forms(m: &GModule, opts: &MeataxeOptions) -> Result<Vec<Matrix>> {
    let dual = m.dual();
    if super::meataxe::is_irreducible(m, opts)?.is_irreducible() {
        super::meataxe::hom_from_irreducible(m, &dual, opts)
    } else {
        hom_space(m, &dual)
    }
}

/// Lexicographically least (row-major Gram) nonzero combination of `basis`
/// that satisfies `keep`.
fn least_combination<T>(
    f: &Field,
    basis: &[Matrix],
    mut build: impl FnMut(Matrix) -> T,
    keep: impl Fn(&T) -> bool,
    key: impl Fn(&T) -> &Matrix,
) -> Result<Option<T>> {
    let q = f.q() as u64;
    let k = basis.len() as u32;
    if k == 0 {
        return Ok(None);
    }
    let total = q.checked_pow(k).filter(|&t| t <= MAX_COMBINATIONS).ok_or_else(|| {
        Error::Budget(format!("invariant form space of dimension {k} too large to enumerate"))
    })?;
    let mut best: Option<T> = None;
    for c in 1..total {
        let coeffs = vector::decode(f.q(), k as usize, c);
        let mut g = Matrix::zero(basis[0].field(), basis[0].rows(), basis[0].cols());
        for (ci, b) in coeffs.iter().zip(basis) {
            if *ci != 0 {
                g = g.add(&b.scale(*ci))?;
            }
        }
        let cand = build(g);
        if keep(&cand) && best.as_ref().is_none_or(|b| key(&cand).lex_cmp(key(b)).is_lt()) {
            best = Some(cand);
        }
    }
    Ok(best)
}

/// Restricts a form space to its alternating members.
fn alternating_subspace(f: &FieldRef, basis: &[Matrix]) -> Vec<Matrix> {
    if basis.is_empty() {
        return Vec::new();
    }
    let n = basis[0].rows();
    // equations: B_ii = 0 and B_ij + B_ji = 0
    let rows = n + n * (n - 1) / 2;
    let mut sys = Matrix::zero(f, rows, basis.len());
    for (c, b) in basis.iter().enumerate() {
        let mut r = 0;
        for i in 0..n {
            sys.set(r, c, b.get(i, i));
            r += 1;
            for j in i + 1..n {
                sys.set(r, c, f.add(b.get(i, j), b.get(j, i)));
                r += 1;
            }
        }
    }
    sys.nullspace()
        .into_iter()
        .map(|coeffs| {
            let mut g = Matrix::zero(f, n, n);
            for (ci, b) in coeffs.iter().zip(basis) {
                g = g.add(&b.scale(*ci)).expect("shape");
            }
            g
        })
        .collect()
}

/// Invariant nondegenerate alternating form with lexicographically least Gram matrix.
pub fn invariant_alternating_form(m: &GModule, opts: &MeataxeOptions) -> Result<Option<BilinearForm>> {
    if m.dim() % 2 == 1 {
        return Ok(None);
    }
    let space = alternating_subspace(m.field(), &invariant_bilinear_forms(m, opts)?);
    least_combination(m.field(), &space, |g| BilinearForm { gram: g }, |b| b.is_nondegenerate(), |b| &b.gram)
}

/// Basis of invariant quadratic forms over GF(2), as upper-triangular matrices.
pub fn invariant_quadratic_forms(m: &GModule) -> Result<Vec<Matrix>> {
    let f = m.field().clone();
    if f.q() != 2 {
        return Err(Error::invalid("quadratic forms are handled over GF(2) only"));
    }
    let d = m.dim();
    let unknowns: Vec<(usize, usize)> = (0..d).flat_map(|i| (i..d).map(move |j| (i, j))).collect();
    let per_gen = unknowns.len();
    let mut sys = Matrix::zero(&f, per_gen * m.num_gens().max(1), per_gen);
    for (gi, g) in m.generators().iter().enumerate() {
        for (c, &(k, l)) in unknowns.iter().enumerate() {
            // x·g·E_kl·gᵀ·xᵀ = (x·g)_k (x·g)_l, reduced to upper-triangular form, minus E_kl
            for (r, &(i, j)) in unknowns.iter().enumerate() {
                let mut v = g.get(i, k) & g.get(j, l);
                if i != j {
                    v ^= g.get(j, k) & g.get(i, l);
                }
                if (i, j) == (k, l) {
                    v ^= 1;
                }
                sys.set(gi * per_gen + r, c, v);
            }
        }
    }
    Ok(sys
        .nullspace()
        .into_iter()
        .map(|sol| {
            let mut u = Matrix::zero(&f, d, d);
            for (&(i, j), &v) in unknowns.iter().zip(&sol) {
                u.set(i, j, v);
            }
            u
        })
        .collect())
}

/// Invariant quadratic form with nondegenerate polarization and least upper-triangular matrix.
pub fn invariant_quadratic_form(m: &GModule) -> Result<Option<QuadraticForm>> {
    if m.dim() % 2 == 1 {
        return Ok(None);
    }
    let space = invariant_quadratic_forms(m)?;
    least_combination(m.field(), &space, |u| QuadraticForm { upper: u }, |q| q.is_nondegenerate(), |q| &q.upper)
}
