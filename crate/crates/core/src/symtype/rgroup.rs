//! The central extension `0 → GF(r) → R → V → 0` with commutators given by
//! `f` and `r`-th powers by `Q`, realised on pairs `(v, a)`.

use rand::{Rng, SeedableRng};
use serde::Serialize;

use super::form::{FormData, Kind};
use crate::error::{Error, Result};
use crate::gf::{vector, Matrix};
use crate::groupcore::{Group, Perm};

/// An element `(v, a)` with `v ∈ V`, `a ∈ GF(r)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RElt {
    pub v: Vec<u32>,
    pub a: u32,
}

#[derive(Clone, Debug)]
pub struct SymplecticTypeGroup {
    fd: FormData,
    /// Bilinear cochain with `β − βᵀ = f`; `β(v, v) = Q(v)` when `r = 2`.
    beta: Matrix,
}

/// Exhaustive law checks run up to this order; larger groups are sampled.
pub const EXHAUSTIVE_LAW_LIMIT: u64 = 1 << 10;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct LawReport {
    pub order: u64,
    pub exhaustive: bool,
    pub pairs_checked: u64,
    pub commutator_law: bool,
    pub power_law: bool,
    pub associative: bool,
}

impl LawReport {
    pub fn holds(&self) -> bool {
        self.commutator_law && self.power_law && self.associative
    }
}

/// Builds `R` from form data. The cochain is `f/2` for odd `r` and the
/// upper-triangular matrix of `Q` for `r = 2`.
pub fn construct_r(fd: &FormData) -> SymplecticTypeGroup {
    let fld = fd.field();
    let beta = match fd.quadratic() {
        Some(u) => u.clone(),
        None => fd.gram().scale(fld.inv(2)),
    };
    SymplecticTypeGroup { fd: fd.clone(), beta }
}

impl SymplecticTypeGroup {
    pub fn form_data(&self) -> &FormData {
        &self.fd
    }

    pub fn kind(&self) -> Kind {
        self.fd.kind()
    }

    pub fn r(&self) -> u32 {
        self.fd.r()
    }

    pub fn n(&self) -> usize {
        self.fd.n()
    }

    pub fn beta(&self) -> &Matrix {
        &self.beta
    }

    /// `r^{1+dim V}`: `r^{1+2n}`, or `2^{2+2n}` for `4∘2^{1+2n}`.
    pub fn order(&self) -> u64 {
        (self.r() as u64).pow(1 + self.fd.dim() as u32)
    }

    pub fn beta_eval(&self, u: &[u32], v: &[u32]) -> u32 {
        vector::dot(self.fd.field(), &self.beta.vec_mul(u), v)
    }

    pub fn one(&self) -> RElt {
        RElt { v: vec![0; self.fd.dim()], a: 0 }
    }

    pub fn central(&self, a: u32) -> RElt {
        RElt { v: vec![0; self.fd.dim()], a }
    }

    /// `(u, a)(v, b) = (u + v, a + b + β(u, v))`.
    pub fn mul(&self, x: &RElt, y: &RElt) -> RElt {
        let f = self.fd.field();
        RElt { v: vector::add(f, &x.v, &y.v), a: f.add(f.add(x.a, y.a), self.beta_eval(&x.v, &y.v)) }
    }

    pub fn inv(&self, x: &RElt) -> RElt {
        let f = self.fd.field();
        RElt { v: vector::scale(f, &x.v, f.neg(1)), a: f.add(f.neg(x.a), self.beta_eval(&x.v, &x.v)) }
    }

    pub fn pow(&self, x: &RElt, k: u64) -> RElt {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(&acc, x);
        }
        acc
    }

    /// `x⁻¹y⁻¹xy`.
    pub fn comm(&self, x: &RElt, y: &RElt) -> RElt {
        let xy = self.mul(x, y);
        let yx = self.mul(y, x);
        self.mul(&self.inv(&yx), &xy)
    }

    /// `(b_i, 0)` for the standard basis of `V`, then the central `(0, 1)`.
    pub fn generators(&self) -> Vec<RElt> {
        let d = self.fd.dim();
        let mut gens: Vec<RElt> = (0..d).map(|i| RElt { v: vector::unit(d, i), a: 0 }).collect();
        gens.push(self.central(1));
        gens
    }

    pub fn encode(&self, x: &RElt) -> u64 {
        vector::encode(self.r(), &x.v) * self.r() as u64 + x.a as u64
    }

    pub fn decode(&self, code: u64) -> RElt {
        let r = self.r() as u64;
        RElt { v: vector::decode(self.r(), self.fd.dim(), code / r), a: (code % r) as u32 }
    }

    pub fn elements(&self) -> impl Iterator<Item = RElt> + '_ {
        (0..self.order()).map(|c| self.decode(c))
    }

    pub fn random_element(&self, rng: &mut impl Rng) -> RElt {
        self.decode(rng.gen_range(0..self.order()))
    }

    /// Checks `[x, y] = f(xπ, yπ)`, the power law and associativity on every
    /// pair (or triple sample) when `|R| ≤ 2¹⁰`, on `samples` random ones otherwise.
    pub fn check_laws(&self, samples: u64, seed: u64) -> LawReport {
        let r = self.r() as u64;
        let comm_ok = |x: &RElt, y: &RElt| self.comm(x, y) == self.central(self.fd.f(&x.v, &y.v));
        let power_ok = |x: &RElt| {
            let want = if r == 2 { self.fd.q(&x.v) } else { 0 };
            self.pow(x, r) == self.central(want)
        };
        let exhaustive = self.order() <= EXHAUSTIVE_LAW_LIMIT;
        let mut report = LawReport {
            order: self.order(),
            exhaustive,
            pairs_checked: 0,
            commutator_law: true,
            power_law: true,
            associative: true,
        };
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let check_triple = |x: &RElt, y: &RElt, z: &RElt, report: &mut LawReport| {
            report.pairs_checked += 1;
            report.commutator_law &= comm_ok(x, y);
            report.associative &= self.mul(&self.mul(x, y), z) == self.mul(x, &self.mul(y, z));
        };
        if exhaustive {
            let all: Vec<RElt> = self.elements().collect();
            for x in &all {
                report.power_law &= power_ok(x);
                for (j, y) in all.iter().enumerate() {
                    // associativity on a rotating third argument keeps this quadratic
                    let z = &all[(j * 7 + 3) % all.len()];
                    check_triple(x, y, z, &mut report);
                }
            }
        } else {
            for _ in 0..samples {
                let x = self.random_element(&mut rng);
                let y = self.random_element(&mut rng);
                let z = self.random_element(&mut rng);
                report.power_law &= power_ok(&x);
                check_triple(&x, &y, &z, &mut report);
            }
        }
        report
    }

    /// Right regular action on `r^{1+dim V}` points; refuses groups above `cap` points.
    pub fn regular_perms(&self, gens: &[RElt], cap: u64) -> Result<Vec<Perm>> {
        if self.order() > cap {
            return Err(Error::CapExceeded(format!("regular representation of degree {} above {cap}", self.order())));
        }
        let all: Vec<RElt> = self.elements().collect();
        gens.iter()
            .map(|g| Perm::from_images(all.iter().map(|x| self.encode(&self.mul(x, g)) as u32).collect()))
            .collect()
    }

    /// `R` as a permutation group via the regular action.
    pub fn perm_group(&self) -> Result<Group<Perm>> {
        Group::from_gens(self.regular_perms(&self.generators(), 1 << 14)?)
    }
}
