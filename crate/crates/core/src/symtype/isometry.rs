//! Isometry groups of form data and their lifts to automorphisms of `R`.

use rand::{Rng, SeedableRng};

use super::form::{FormData, Kind};
use super::rgroup::{RElt, SymplecticTypeGroup};
use crate::error::{Error, Result};
use crate::gf::{vector, Matrix};
use crate::groupcore::Group;

/// `|Sp_{2n}(q)| = q^{n²} ∏_{i=1}^{n} (q^{2i} − 1)`.
pub fn sp_order(n: usize, q: u64) -> u128 {
    let q = q as u128;
    let mut o = q.pow((n * n) as u32);
    for i in 1..=n as u32 {
        o *= q.pow(2 * i) - 1;
    }
    o
}

/// `|O^ε_{2n}(2)| = 2 · 2^{n(n−1)} (2^n − ε) ∏_{i=1}^{n−1} (4^i − 1)`.
pub fn orthogonal_order_2(n: usize, eps: i32) -> u128 {
    let mut o: u128 = 2 * (1u128 << (n * (n - 1)));
    o = if eps > 0 { o * ((1u128 << n) - 1) } else { o * ((1u128 << n) + 1) };
    for i in 1..n as u32 {
        o *= 4u128.pow(i) - 1;
    }
    o
}

/// Order of the isometry group of `fd` (fixing the radical pointwise).
pub fn isometry_group_order(fd: &FormData) -> u128 {
    match fd.kind() {
        Kind::Odd => sp_order(fd.n(), fd.r() as u64),
        Kind::Central4 => sp_order(fd.n(), 2),
        Kind::Plus => orthogonal_order_2(fd.n(), 1),
        Kind::Minus => orthogonal_order_2(fd.n(), -1),
    }
}

/// Transvection `x ↦ x + f(x, w)·w` as a matrix on row vectors.
fn transvection(fd: &FormData, w: &[u32]) -> Matrix {
    let fld = fd.field();
    let d = fd.dim();
    let col = fd.gram().mul_vec(w);
    let mut t = Matrix::identity(fld, d);
    for i in 0..d {
        for j in 0..d {
            t.set(i, j, fld.add(t.get(i, j), fld.mul(col[i], w[j])));
        }
    }
    t
}

/// Candidate transvection vectors in symplectic coordinates: basis vectors,
/// sums and differences of pairs, then seeded random vectors.
fn candidate_coords(fd: &FormData) -> Vec<Vec<u32>> {
    let fld = fd.field();
    let m = 2 * fd.n();
    let d = fd.dim();
    let mut out: Vec<Vec<u32>> = (0..m).map(|i| vector::unit(d, i)).collect();
    for i in 0..m {
        for j in i + 1..m {
            let mut v = vector::unit(d, i);
            v[j] = 1;
            out.push(v.clone());
            if fld.p() != 2 {
                v[j] = fld.neg(1);
                out.push(v);
            }
        }
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x150);
    for _ in 0..64 {
        let mut v: Vec<u32> = (0..d).map(|_| rng.gen_range(0..fld.q())).collect();
        for x in v.iter_mut().skip(m) {
            *x = 0;
        }
        out.push(v);
    }
    out
}

/// Generators of the isometry group of `fd` as a matrix group on row
/// vectors, certified by reaching the known order.
///
/// Transvections along vectors `w` preserve `f`; for `r = 2` they preserve
/// `Q` exactly when `Q(w) = 1`, and in the defect-one case each class of
/// `V/⟨z⟩` has one such representative. The remaining gap (orthogonal
/// transvections generate an index-2 subgroup of `O⁺₄(2)`) is closed by
/// a backtracking search for an isometry outside the current group.
pub fn isometry_group_generators(fd: &FormData) -> Result<Group<Matrix>> {
    let target = isometry_group_order(fd);
    let target64 = u64::try_from(target)
        .map_err(|_| Error::CapExceeded(format!("isometry group order {target} does not fit in 64 bits")))?;
    let fld = fd.field();
    let d = fd.dim();
    let bm = fd.symplectic_basis();
    let rad = fd.radical();
    let one = Matrix::identity(fld, d);
    let make = |gens: Vec<Matrix>| Group::new(gens, one.clone()).with_cap(target64.max(2)).with_known_order(target64);
    let mut gens: Vec<Matrix> = Vec::new();
    let mut group = make(gens.clone());
    for c in candidate_coords(fd) {
        if group.order()? == target64 {
            break;
        }
        let mut w = bm.vec_mul(&c);
        if vector::is_zero(&w) {
            continue;
        }
        if fld.p() == 2 {
            match fd.kind() {
                Kind::Central4 => {
                    if fd.q(&w) == 0 {
                        w = vector::add(fld, &w, &rad[0]);
                    }
                }
                _ if fd.q(&w) == 0 => continue,
                _ => {}
            }
        }
        let t = transvection(fd, &w);
        debug_assert!(fd.is_isometry(&t));
        if !group.contains(&t)? {
            gens.push(t);
            group = make(gens.clone());
        }
    }
    while group.order()? < target64 {
        let x = isometry_outside(fd, &group)?
            .ok_or_else(|| Error::Internal("isometry group generation fell short of the order formula".into()))?;
        gens.push(x);
        group = make(gens.clone());
    }
    if group.order()? != target64 {
        return Err(Error::Internal(format!("generated isometry group has order {} not {target}", group.order()?)));
    }
    Ok(group)
}

/// Backtracking over images of the standard basis for an isometry of `fd`
/// not in `group`. Only attempted when `r^dim ≤ 2¹⁰`.
fn isometry_outside(fd: &FormData, group: &Group<Matrix>) -> Result<Option<Matrix>> {
    let fld = fd.field();
    let d = fd.dim();
    let q = fld.q();
    if (q as u64).pow(d as u32) > 1 << 10 {
        return Ok(None);
    }
    let vecs: Vec<Vec<u32>> = (0..(q as u64).pow(d as u32)).map(|c| vector::decode(q, d, c)).collect();
    let rad = fd.radical();
    let mut rows: Vec<Vec<u32>> = Vec::new();
    fn go(
        fd: &FormData,
        vecs: &[Vec<u32>],
        rad: &[Vec<u32>],
        rows: &mut Vec<Vec<u32>>,
        group: &Group<Matrix>,
    ) -> Result<Option<Matrix>> {
        let d = fd.dim();
        let k = rows.len();
        if k == d {
            let m = Matrix::from_rows(fd.field(), rows)?;
            if fd.is_isometry(&m) && !group.contains(&m)? {
                return Ok(Some(m));
            }
            return Ok(None);
        }
        let ek = vector::unit(d, k);
        for v in vecs {
            if fd.q(v) != fd.q(&ek) {
                continue;
            }
            if (0..k).any(|i| fd.f(&rows[i], v) != fd.f(&vector::unit(d, i), &ek)) {
                continue;
            }
            if rad.iter().any(|z| z == &ek) && v != &ek {
                continue;
            }
            rows.push(v.clone());
            if let Some(m) = go(fd, vecs, rad, rows, group)? {
                return Ok(Some(m));
            }
            rows.pop();
        }
        Ok(None)
    }
    go(fd, &vecs, &rad, &mut rows, group)
}

/// Extends `g`, acting on the first `2n` symplectic coordinates and preserving
/// the standard alternating form there, to an isometry of `fd` in the
/// original coordinates. In the defect-one case the images are corrected by
/// the radical vector so that `Q` is preserved.
pub fn isometry_from_symplectic(fd: &FormData, g: &Matrix) -> Result<Matrix> {
    let fld = fd.field();
    let m = 2 * fd.n();
    let d = fd.dim();
    if g.rows() != m || !g.is_square() || !g.field().same(fld) {
        return Err(Error::DimensionMismatch(format!("expected a {m}×{m} matrix over GF({})", fld.q())));
    }
    let mut big = Matrix::identity(fld, d);
    for i in 0..m {
        for j in 0..m {
            big.set(i, j, g.get(i, j));
        }
    }
    let bm = fd.symplectic_basis();
    let bm_inv = bm.inverse().expect("basis");
    let mut x = bm_inv.mul_unchecked(&big).mul_unchecked(&bm);
    if fd.kind() == Kind::Central4 {
        let z = &fd.radical()[0];
        let mut rows = x.row_vecs();
        for (j, row) in rows.iter_mut().enumerate() {
            if fd.q(row) != fd.q(&vector::unit(d, j)) {
                *row = vector::add(fld, row, z);
            }
        }
        x = Matrix::from_rows(fld, &rows)?;
    }
    if !fd.is_isometry(&x) {
        return Err(Error::invalid("matrix does not induce an isometry of the form data"));
    }
    Ok(x)
}

/// The automorphism `(v, a) ↦ (v·x, a + λ(v))` of `R` induced by an isometry
/// `x`, with `λ(v) = v·Λ·vᵀ + c·v`.
///
/// `λ` must polarise to `D = x β xᵀ − β`. `Λ` is the strictly upper part of
/// `D` for `r = 2` and `D/2` otherwise; the linear part `c` is the least
/// vector (lexicographically) making `α` trivial on `Z(R)`.
#[derive(Clone, Debug)]
pub struct RAutomorphism {
    pub x: Matrix,
    pub lambda: Matrix,
    pub c: Vec<u32>,
}

impl RAutomorphism {
    pub fn from_isometry(r: &SymplecticTypeGroup, x: &Matrix) -> Result<RAutomorphism> {
        let fd = r.form_data();
        if !fd.is_isometry(x) {
            return Err(Error::invalid("not an isometry of the form data"));
        }
        let fld = fd.field();
        let d = fd.dim();
        let beta = r.beta();
        let dm = x.mul_unchecked(beta).mul_unchecked(&x.transpose()).sub(beta)?;
        if dm != dm.transpose() {
            return Err(Error::invalid("no automorphism lift: cochain defect is not symmetric"));
        }
        let mut lambda = Matrix::zero(fld, d, d);
        if fld.p() == 2 {
            for i in 0..d {
                if dm.get(i, i) != 0 {
                    return Err(Error::invalid("no automorphism lift: cochain defect is not alternating"));
                }
                for j in i + 1..d {
                    lambda.set(i, j, dm.get(i, j));
                }
            }
        } else {
            lambda = dm.scale(fld.inv(2));
        }
        let mut c = vec![0; d];
        for z in fd.radical() {
            let val = vector::dot(fld, &lambda.vec_mul(&z), &z);
            let cur = fld.add(val, vector::dot(fld, &c, &z));
            if cur != 0 {
                let k = z.iter().rposition(|&t| t != 0).expect("nonzero radical vector");
                c[k] = fld.sub(c[k], fld.div(cur, z[k]));
            }
        }
        Ok(RAutomorphism { x: x.clone(), lambda, c })
    }

    pub fn apply(&self, r: &SymplecticTypeGroup, g: &RElt) -> RElt {
        let fld = r.form_data().field();
        let quad = vector::dot(fld, &self.lambda.vec_mul(&g.v), &g.v);
        let lin = vector::dot(fld, &self.c, &g.v);
        RElt { v: self.x.vec_mul(&g.v), a: fld.add(g.a, fld.add(quad, lin)) }
    }

    /// Checks the homomorphism property on all pairs of generators and the
    /// triviality on the centre.
    pub fn verify(&self, r: &SymplecticTypeGroup) -> bool {
        let gens = r.generators();
        let hom = gens.iter().all(|a| {
            gens.iter().all(|b| self.apply(r, &r.mul(a, b)) == r.mul(&self.apply(r, a), &self.apply(r, b)))
        });
        let central = r.form_data().radical().iter().all(|z| {
            let e = RElt { v: z.clone(), a: 0 };
            self.apply(r, &e) == e
        });
        hom && central
    }
}
