use std::fmt::Debug;
use std::hash::Hash;

use super::perm::Perm;
use crate::gf::{vector, Matrix};

/// An element of a finite group with right-action conventions.
pub trait GroupElement: Clone + Eq + Hash + Debug + Send + Sync + 'static {
    fn mul(&self, other: &Self) -> Self;
    fn inv(&self) -> Self;
    /// The identity of the group containing `self`.
    fn one_like(&self) -> Self;
    fn is_one(&self) -> bool;

    /// `g⁻¹·self·g`
    fn conj(&self, g: &Self) -> Self {
        g.inv().mul(self).mul(g)
    }

    /// `[self, g] = self⁻¹·g⁻¹·self·g`
    fn comm(&self, g: &Self) -> Self {
        self.inv().mul(&g.inv()).mul(self).mul(g)
    }

    fn pow(&self, n: i64) -> Self {
        let mut base = if n < 0 { self.inv() } else { self.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = self.one_like();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// Order by repeated multiplication; `None` past `cap`.
    fn order_capped(&self, cap: u64) -> Option<u64> {
        let mut x = self.clone();
        for k in 1..=cap {
            if x.is_one() {
                return Some(k);
            }
            x = x.mul(self);
        }
        None
    }
}

/// A faithful action on points encoded as `u64`.
pub trait Action: GroupElement {
    fn act(&self, pt: u64) -> u64;
    /// Points whose pointwise stabiliser is trivial, in order of preference as base points.
    fn base_candidates(&self) -> Vec<u64>;
}

impl GroupElement for Perm {
    fn mul(&self, other: &Self) -> Self {
        self.compose(other)
    }
    fn inv(&self) -> Self {
        self.inverse()
    }
    fn one_like(&self) -> Self {
        Perm::identity(self.degree())
    }
    fn is_one(&self) -> bool {
        self.is_id()
    }
    fn order_capped(&self, _cap: u64) -> Option<u64> {
        Some(self.order())
    }
}

impl Action for Perm {
    fn act(&self, pt: u64) -> u64 {
        self.image(pt as usize) as u64
    }
    fn base_candidates(&self) -> Vec<u64> {
        (0..self.degree() as u64).collect()
    }
}

/// Invertible matrices acting on row vectors, points encoded base `q`.
impl GroupElement for Matrix {
    fn mul(&self, other: &Self) -> Self {
        self.mul_unchecked(other)
    }
    fn inv(&self) -> Self {
        self.inverse().expect("group element must be invertible")
    }
    fn one_like(&self) -> Self {
        Matrix::identity(self.field(), self.rows())
    }
    fn is_one(&self) -> bool {
        self.is_identity()
    }
}

impl Action for Matrix {
    fn act(&self, pt: u64) -> u64 {
        let q = self.field().q();
        let v = vector::decode(q, self.rows(), pt);
        vector::encode(q, &self.vec_mul(&v))
    }
    fn base_candidates(&self) -> Vec<u64> {
        let q = self.field().q();
        let n = self.rows();
        (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                vector::encode(q, &v)
            })
            .collect()
    }
}

/// A matrix modulo scalars, stored with first nonzero entry equal to 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjMat(Matrix);

impl ProjMat {
    pub fn new(mut m: Matrix) -> Self {
        m.normalize_projective();
        ProjMat(m)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }
}

impl Debug for ProjMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "proj {:?}", self.0)
    }
}

impl GroupElement for ProjMat {
    fn mul(&self, other: &Self) -> Self {
        ProjMat::new(self.0.mul_unchecked(&other.0))
    }
    fn inv(&self) -> Self {
        ProjMat::new(self.0.inv())
    }
    fn one_like(&self) -> Self {
        ProjMat(self.0.one_like())
    }
    fn is_one(&self) -> bool {
        self.0.is_identity()
    }
}

impl Action for ProjMat {
    /// Acts on normalised vectors, i.e. points of projective space.
    fn act(&self, pt: u64) -> u64 {
        let f = self.0.field();
        let v = vector::decode(f.q(), self.0.rows(), pt);
        let mut w = self.0.vec_mul(&v);
        vector::normalize(f, &mut w);
        vector::encode(f.q(), &w)
    }
    /// Coordinate points followed by the all-ones point (a projective frame).
    fn base_candidates(&self) -> Vec<u64> {
        let q = self.0.field().q();
        let mut pts = self.0.base_candidates();
        pts.push(vector::encode(q, &vec![1; self.0.rows()]));
        pts
    }
}

/// Tag bit separating the second factor's points in a [`Pair`].
pub const PAIR_TAG: u64 = 1 << 63;

/// An element of a direct product acting on the disjoint union of the two point sets.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Pair<A, B>(pub A, pub B);

impl<A: GroupElement, B: GroupElement> GroupElement for Pair<A, B> {
    fn mul(&self, other: &Self) -> Self {
        Pair(self.0.mul(&other.0), self.1.mul(&other.1))
    }
    fn inv(&self) -> Self {
        Pair(self.0.inv(), self.1.inv())
    }
    fn one_like(&self) -> Self {
        Pair(self.0.one_like(), self.1.one_like())
    }
    fn is_one(&self) -> bool {
        self.0.is_one() && self.1.is_one()
    }
}

impl<A: Action, B: Action> Action for Pair<A, B> {
    fn act(&self, pt: u64) -> u64 {
        if pt & PAIR_TAG == 0 {
            self.0.act(pt)
        } else {
            self.1.act(pt & !PAIR_TAG) | PAIR_TAG
        }
    }
    fn base_candidates(&self) -> Vec<u64> {
        let mut pts = self.0.base_candidates();
        pts.extend(self.1.base_candidates().into_iter().map(|p| p | PAIR_TAG));
        pts
    }
}

/// Largest dimension for which vectors over GF(q) can be encoded as points.
pub fn max_encodable_dim(q: u32) -> usize {
    let mut n = 0;
    let mut total: u128 = 1;
    while total * q as u128 <= (1u128 << 63) {
        total *= q as u128;
        n += 1;
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;
    use rand::{Rng, SeedableRng};

    #[test]
    fn projective_normalisation_is_a_congruence() {
        let f = Field::get(3, 2).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let random_inv = |rng: &mut rand_chacha::ChaCha8Rng| loop {
            let data = (0..16).map(|_| rng.gen_range(0..9)).collect();
            let m = Matrix::new(&f, 4, 4, data).unwrap();
            if m.is_invertible() {
                return m;
            }
        };
        for _ in 0..50 {
            let x = random_inv(&mut rng);
            let y = random_inv(&mut rng);
            let s = rng.gen_range(1..9);
            let t = rng.gen_range(1..9);
            let lhs = ProjMat::new(x.clone()).mul(&ProjMat::new(y.clone()));
            let rhs = ProjMat::new(x.scale(s)).mul(&ProjMat::new(y.scale(t)));
            assert_eq!(lhs, rhs);
            assert_eq!(lhs, ProjMat::new(x.mul(&y).unwrap()));
        }
    }

    #[test]
    fn matrix_action_is_a_right_action() {
        let f = Field::get(2, 1).unwrap();
        let a = Matrix::from_ints(&f, &[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]);
        let b = Matrix::from_ints(&f, &[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]);
        for pt in 0..8 {
            assert_eq!(a.mul(&b).unwrap().act(pt), b.act(a.act(pt)));
        }
        assert_eq!(max_encodable_dim(2), 63);
    }
}
