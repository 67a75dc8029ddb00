//! Exact arithmetic and dense linear algebra over small finite fields.

mod bitmat;
mod field;
mod matrix;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub use bitmat::{bit_flip, bit_get, BitEchelon, BitMatrix};
pub use field::{is_irreducible, is_prime, prime_power, Field, FieldRef, MAX_FIELD_ORDER};
pub use matrix::{parse_field_token, Matrix};

/// A field element bundled with its field, for convenient arithmetic.
#[derive(Clone)]
pub struct FieldElement {
    field: FieldRef,
    value: u32,
}

impl FieldElement {
    pub fn new(field: &FieldRef, value: u32) -> Self {
        assert!(value < field.q());
        FieldElement { field: field.clone(), value }
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    /// Coefficients over the prime field, lowest first.
    pub fn coefficients(&self) -> Vec<u32> {
        self.field.digits(self.value)
    }

    pub fn inv(&self) -> Option<Self> {
        (self.value != 0).then(|| FieldElement::new(&self.field, self.field.inv(self.value)))
    }

    pub fn pow(&self, n: u64) -> Self {
        FieldElement::new(&self.field, self.field.pow(self.value, n))
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field.same(&other.field) && self.value == other.value
    }
}

impl Eq for FieldElement {}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{:?}", self.value, self.field)
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: Self) -> FieldElement {
        FieldElement::new(&self.field, self.field.add(self.value, rhs.value))
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: Self) -> FieldElement {
        FieldElement::new(&self.field, self.field.sub(self.value, rhs.value))
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: Self) -> FieldElement {
        FieldElement::new(&self.field, self.field.mul(self.value, rhs.value))
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::new(&self.field, self.field.neg(self.value))
    }
}

/// Row-vector helpers over a field.
pub mod vector {
    use super::Field;

    pub fn add(f: &Field, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()
    }

    pub fn sub(f: &Field, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(&x, &y)| f.sub(x, y)).collect()
    }

    pub fn scale(f: &Field, a: &[u32], s: u32) -> Vec<u32> {
        a.iter().map(|&x| f.mul(x, s)).collect()
    }

    /// `a += s·b`
    pub fn axpy(f: &Field, a: &mut [u32], s: u32, b: &[u32]) {
        if s == 0 {
            return;
        }
        for (x, &y) in a.iter_mut().zip(b) {
            if y != 0 {
                *x = f.add(*x, f.mul(s, y));
            }
        }
    }

    pub fn dot(f: &Field, a: &[u32], b: &[u32]) -> u32 {
        a.iter().zip(b).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
    }

    /// The `i`-th standard basis vector of length `n`.
    pub fn unit(n: usize, i: usize) -> Vec<u32> {
        let mut v = vec![0; n];
        v[i] = 1;
        v
    }

    pub fn is_zero(a: &[u32]) -> bool {
        a.iter().all(|&x| x == 0)
    }

    /// Scales so the first nonzero entry is 1.
    pub fn normalize(f: &Field, a: &mut [u32]) {
        if let Some(&lead) = a.iter().find(|&&x| x != 0) {
            if lead != 1 {
                let inv = f.inv(lead);
                for x in a.iter_mut() {
                    *x = f.mul(*x, inv);
                }
            }
        }
    }

    /// Packs a vector into an integer in base q (first entry least significant).
    pub fn encode(q: u32, a: &[u32]) -> u64 {
        a.iter().rev().fold(0u64, |acc, &x| acc * q as u64 + x as u64)
    }

    pub fn decode(q: u32, n: usize, mut code: u64) -> Vec<u32> {
        let mut v = Vec::with_capacity(n);
        for _ in 0..n {
            v.push((code % q as u64) as u32);
            code /= q as u64;
        }
        v
    }
}

/// Incremental echelonised span of row vectors, used for spinning
/// submodules and testing membership.
#[derive(Clone)]
pub struct Span {
    field: FieldRef,
    dim: usize,
    /// Echelon rows, each with leading entry 1 at `pivots[i]`.
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Span {
    pub fn new(field: &FieldRef, dim: usize) -> Self {
        Span { field: field.clone(), dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Reduces `v` against the span; the remainder is zero iff `v` is inside.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let f = &*self.field;
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = w[p];
            if c != 0 {
                vector::axpy(f, &mut w, f.neg(c), row);
            }
        }
        w
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        vector::is_zero(&self.reduce(v))
    }

    /// Adds `v`; returns the reduced, normalised new row when independent.
    pub fn insert(&mut self, v: &[u32]) -> Option<Vec<u32>> {
        let f = self.field.clone();
        let mut w = self.reduce(v);
        let p = w.iter().position(|&x| x != 0)?;
        vector::normalize(&f, &mut w);
        self.rows.push(w.clone());
        self.pivots.push(p);
        Some(w)
    }

    /// Echelon basis rows (not fully reduced).
    pub fn basis(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` (which must lie in the span) w.r.t. `basis()`.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        let f = &*self.field;
        let mut w = v.to_vec();
        let mut coords = vec![0; self.rows.len()];
        for (i, (row, &p)) in self.rows.iter().zip(&self.pivots).enumerate() {
            let c = w[p];
            if c != 0 {
                coords[i] = c;
                vector::axpy(f, &mut w, f.neg(c), row);
            }
        }
        vector::is_zero(&w).then_some(coords)
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_rows(&self.field, &self.rows).unwrap_or_else(|_| Matrix::zero(&self.field, 0, self.dim))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const BUNDLED: [(u32, u32); 10] = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1), (17, 1), (5, 2), (2, 6)];

    proptest! {
        #[test]
        fn field_axioms(idx in 0usize..BUNDLED.len(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
            let (p, e) = BUNDLED[idx];
            let f = Field::get(p, e).unwrap();
            let q = f.q();
            let (a, b, c) = (a % q, b % q, c % q);
            prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
            prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            prop_assert_eq!(f.add(a, f.neg(a)), 0);
            prop_assert_eq!(f.mul(a, b), f.mul(b, a));
            if a != 0 {
                prop_assert_eq!(f.mul(a, f.inv(a)), 1);
            }
        }

        #[test]
        fn rank_nullity(seed in any::<u64>(), r in 1usize..12, c in 1usize..12, idx in 0usize..4) {
            use rand::{Rng, SeedableRng};
            let (p, e) = BUNDLED[idx];
            let f = Field::get(p, e).unwrap();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let data = (0..r * c).map(|_| rng.gen_range(0..f.q())).collect();
            let m = Matrix::new(&f, r, c, data).unwrap();
            prop_assert_eq!(m.rank() + m.nullspace().len(), c);
        }
    }

    #[test]
    fn element_wrapper() {
        let f = Field::get(3, 2).unwrap();
        let a = FieldElement::new(&f, 5);
        let b = FieldElement::new(&f, 7);
        assert_eq!(&(&a * &b) * &b.inv().unwrap(), a);
        assert_eq!(&(&a + &b) - &b, a);
        assert_eq!(a.coefficients(), vec![2, 1]);
    }

    #[test]
    fn span_membership_and_coordinates() {
        let f = Field::get(5, 1).unwrap();
        let mut s = Span::new(&f, 3);
        assert!(s.insert(&[1, 2, 0]).is_some());
        assert!(s.insert(&[0, 1, 1]).is_some());
        assert!(s.insert(&[1, 3, 1]).is_none());
        assert!(s.contains(&[2, 4, 0]));
        assert!(!s.contains(&[0, 0, 1]));
        let v = [3, 3, 2];
        let coords = s.coordinates(&v).unwrap();
        let mut back = vec![0; 3];
        for (c, row) in coords.iter().zip(s.basis()) {
            vector::axpy(&f, &mut back, *c, row);
        }
        assert_eq!(back, v);
    }
}
