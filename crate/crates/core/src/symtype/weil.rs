//! The faithful irreducible representation of dimension `r^n` and the
//! projective lifts of isometries into its normaliser.

use std::collections::HashMap;

use serde::Serialize;

use super::form::Kind;
use super::isometry::RAutomorphism;
use super::rgroup::{RElt, SymplecticTypeGroup};
use crate::error::{Error, Result};
use crate::gf::{vector, Field, FieldRef, Matrix};
use crate::groupcore::{Group, GroupElement, Homomorphism, ProjMat};
use crate::modrep::{hom_from_irreducible, is_irreducible, module_iso, GModule, MeataxeOptions};

/// Exhaustive faithfulness checks run up to this order.
pub const FAITHFUL_CHECK_LIMIT: u64 = 1 << 14;

/// A faithful irreducible representation `τ` of `R`.
///
/// Built as a tensor product over the hyperbolic pairs of a symplectic
/// basis `e_1, f_1, …, e_n, f_n (, z)`: pair `i` acts on the `i`-th tensor
/// factor `k^r` (functions on the line `⟨f_i⟩`), with `e_i` diagonal and
/// `f_i` a shift. For `r = 2` the local pair is twisted to match
/// `(Q(e_i), Q(f_i))`; in the defect-one case `z` acts as a primitive
/// fourth root of unity. `(0, 1)` acts as the scalar `ζ`.
#[derive(Clone, Debug)]
pub struct WeilRep {
    group: SymplecticTypeGroup,
    field: FieldRef,
    zeta: u32,
    basis: Matrix,
    basis_inv: Matrix,
    /// `τ(b_j, 0)` for the rows `b_j` of the symplectic basis.
    slots: Vec<Matrix>,
    module: GModule,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct WeilReport {
    pub kind: String,
    pub r: u32,
    pub n: usize,
    pub field: u32,
    pub dim: usize,
    pub faithful: bool,
    pub faithful_exhaustive: bool,
    pub irreducible: bool,
}

/// Smallest field order `q` prime to `r` with `r | q − 1`, and `4 | q − 1` in
/// the defect-one case.
pub fn default_weil_field(r: u32, kind: Kind) -> u32 {
    let m = if kind == Kind::Central4 { 4 } else { r };
    (2..)
        .find(|&q: &u32| q % r != 0 && (q - 1) % m == 0 && crate::gf::prime_power(q as u64).is_some())
        .expect("some prime power")
}

fn kron_slot(field: &FieldRef, x: &Matrix, r: usize, n: usize, i: usize) -> Matrix {
    let left = Matrix::identity(field, r.pow(i as u32));
    let right = Matrix::identity(field, r.pow((n - 1 - i) as u32));
    left.kron(x).kron(&right)
}

/// Local `2×2` matrices for a pair with `Q(e) = qe`, `Q(f) = qf`; both
/// anticommute and square to `(−1)^{Q}`.
fn local_pair_2(field: &FieldRef, qe: u32, qf: u32) -> Result<(Matrix, Matrix)> {
    let m1 = field.neg(1);
    let diag = Matrix::from_rows(field, &[vec![1, 0], vec![0, m1]])?;
    let swap = Matrix::from_rows(field, &[vec![0, 1], vec![1, 0]])?;
    let j = Matrix::from_rows(field, &[vec![0, 1], vec![m1, 0]])?;
    Ok(match (qe, qf) {
        (0, 0) => (diag, swap),
        (1, 0) => (j, diag),
        (0, 1) => (diag, j),
        _ => {
            let (a, b) = (0..field.q())
                .flat_map(|a| (0..field.q()).map(move |b| (a, b)))
                .find(|&(a, b)| field.add(field.mul(a, a), field.mul(b, b)) == m1)
                .ok_or_else(|| Error::invalid("field has no solution of a² + b² = −1"))?;
            (j, Matrix::from_rows(field, &[vec![a, b], vec![b, field.neg(a)]])?)
        }
    })
}

/// Local `r×r` pair for odd `r`: `E = diag(ζ^{tj})`, `F` the cyclic shift,
/// with `t` chosen so that `[E, F] = ζ`.
fn local_pair_odd(field: &FieldRef, r: u32, zeta: u32) -> Result<(Matrix, Matrix)> {
    let ru = r as usize;
    let diag = |t: u64| {
        let mut e = Matrix::zero(field, ru, ru);
        for j in 0..ru {
            e.set(j, j, field.pow(zeta, t * j as u64));
        }
        e
    };
    let mut shift = Matrix::zero(field, ru, ru);
    for j in 0..ru {
        shift.set(j, (j + 1) % ru, 1);
    }
    let c = diag(1).comm(&shift);
    let s = c.is_scalar_value().ok_or_else(|| Error::Internal("local commutator is not scalar".into()))?;
    let k = (1..r as u64).find(|&k| field.pow(zeta, k) == s).ok_or_else(|| Error::Internal("bad local commutator".into()))?;
    let t = (1..r as u64).find(|&t| (t * k) % r as u64 == 1).expect("r prime");
    Ok((diag(t), shift))
}

/// Builds the representation over `field` (given by its order).
pub fn weil_rep(group: &SymplecticTypeGroup, q: u32) -> Result<WeilRep> {
    let field = Field::of_order(q as u64)?;
    let r = group.r();
    let kind = group.kind();
    if field.p() == r || (q - 1) % r != 0 {
        return Err(Error::invalid(format!("GF({q}) lacks primitive {r}-th roots of unity")));
    }
    if kind == Kind::Central4 && (q - 1) % 4 != 0 {
        return Err(Error::invalid(format!("GF({q}) lacks primitive 4th roots of unity")));
    }
    let zeta = field.root_of_unity(r as u64).expect("checked divisibility");
    let fd = group.form_data();
    let n = fd.n();
    let bm = fd.symplectic_basis();
    let basis_inv = bm.inverse().expect("basis");
    let mut slots = Vec::with_capacity(fd.dim());
    for i in 0..n {
        let (e, f) = if r == 2 {
            local_pair_2(&field, fd.q(bm.row(2 * i)), fd.q(bm.row(2 * i + 1)))?
        } else {
            local_pair_odd(&field, r, zeta)?
        };
        slots.push(kron_slot(&field, &e, r as usize, n, i));
        slots.push(kron_slot(&field, &f, r as usize, n, i));
    }
    if kind == Kind::Central4 {
        let i4 = field.root_of_unity(4).expect("checked divisibility");
        slots.push(Matrix::scalar(&field, (r as usize).pow(n as u32), i4));
    }
    let dim = (r as usize).pow(n as u32);
    let mut w = WeilRep {
        group: group.clone(),
        field: field.clone(),
        zeta,
        basis: bm.clone(),
        basis_inv,
        slots,
        module: GModule::trivial(&field, dim, 0),
    };
    w.check_relations(&bm)?;
    let gens: Vec<Matrix> = group.generators().iter().map(|g| w.image(g)).collect();
    w.module = GModule::new(&field, dim, gens)?.with_name(kind.label(r, n), "R");
    Ok(w)
}

impl WeilRep {
    pub fn r_group(&self) -> &SymplecticTypeGroup {
        &self.group
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    /// The scalar by which `(0, 1)` acts.
    pub fn central_character(&self) -> u32 {
        self.zeta
    }

    /// Images of the generators of `R` (standard basis vectors, then `(0, 1)`).
    pub fn module(&self) -> &GModule {
        &self.module
    }

    /// Defining relations of `R` on the symplectic generators: `r`-th powers
    /// and pairwise commutators are the prescribed scalars.
    fn check_relations(&self, bm: &Matrix) -> Result<()> {
        let g = &self.group;
        let r = g.r() as u64;
        let elts: Vec<RElt> = bm.row_vecs().into_iter().map(|v| RElt { v, a: 0 }).collect();
        let scalar = |a: u32| Matrix::scalar(&self.field, self.dim_from_slots(), self.field.pow(self.zeta, a as u64));
        for (j, x) in elts.iter().enumerate() {
            let p = g.pow(x, r);
            if self.slots[j].pow(r) != scalar(p.a) {
                return Err(Error::Internal(format!("power relation fails on slot {j}")));
            }
            for (k, y) in elts.iter().enumerate().skip(j + 1) {
                let c = g.comm(x, y);
                if self.slots[j].comm(&self.slots[k]) != scalar(c.a) {
                    return Err(Error::Internal(format!("commutator relation fails on slots {j}, {k}")));
                }
            }
        }
        Ok(())
    }

    fn dim_from_slots(&self) -> usize {
        self.slots[0].rows()
    }

    /// `τ(v, a)`: writes `v = Σ c_j b_j`, takes the ordered product of
    /// `τ(b_j, 0)^{c_j}` and corrects by the central discrepancy.
    pub fn image(&self, x: &RElt) -> Matrix {
        let g = &self.group;
        let c = self.basis_inv.vec_mul(&x.v);
        let d = self.dim_from_slots();
        let mut m = Matrix::identity(&self.field, d);
        let mut acc = g.one();
        for (j, &cj) in c.iter().enumerate() {
            if cj == 0 {
                continue;
            }
            m = m.mul_unchecked(&self.slots[j].pow(cj as u64));
            let b = RElt { v: self.basis.row(j).to_vec(), a: 0 };
            acc = g.mul(&acc, &g.pow(&b, cj as u64));
        }
        debug_assert_eq!(acc.v, x.v);
        let fr = g.form_data().field();
        let e = fr.sub(x.a, acc.a);
        m.scale(self.field.pow(self.zeta, e as u64))
    }

    /// Whether only the identity of `R` maps to the identity matrix;
    /// exhaustive up to [`FAITHFUL_CHECK_LIMIT`], else on the centre
    /// (sufficient, as every nontrivial normal subgroup of an `r`-group meets the centre).
    pub fn is_faithful(&self) -> (bool, bool) {
        let g = &self.group;
        if g.order() <= FAITHFUL_CHECK_LIMIT {
            let ok = g.elements().all(|x| x == g.one() || !self.image(&x).is_identity());
            return (ok, true);
        }
        let mut centre: Vec<RElt> = (1..g.r()).map(|a| g.central(a)).collect();
        for z in g.form_data().radical() {
            centre.push(RElt { v: z, a: 0 });
        }
        (centre.iter().all(|x| !self.image(x).is_identity()), false)
    }

    pub fn is_irreducible(&self) -> Result<bool> {
        Ok(is_irreducible(&self.module, &MeataxeOptions::default())?.is_irreducible())
    }

    pub fn report(&self) -> Result<WeilReport> {
        let (faithful, exhaustive) = self.is_faithful();
        Ok(WeilReport {
            kind: self.group.kind().as_str().into(),
            r: self.group.r(),
            n: self.group.n(),
            field: self.field.q(),
            dim: self.dim(),
            faithful,
            faithful_exhaustive: exhaustive,
            irreducible: self.is_irreducible()?,
        })
    }
}

/// A matrix `P`, scalar-normalised, with `P⁻¹·τ(g)·P = τ(α(g))` where `α`
/// is the automorphism of `R` induced by the isometry `x`.
pub fn lift_isometry(w: &WeilRep, x: &Matrix) -> Result<ProjMat> {
    let g = &w.group;
    let alpha = RAutomorphism::from_isometry(g, x)?;
    if !alpha.verify(g) {
        return Err(Error::invalid("no lift: induced map is not an automorphism"));
    }
    let twisted: Vec<Matrix> = g.generators().iter().map(|y| w.image(&alpha.apply(g, y))).collect();
    let b = GModule::new(&w.field, w.dim(), twisted)?;
    let homs = hom_from_irreducible(&w.module, &b, &MeataxeOptions::default())?;
    match homs.as_slice() {
        [p] if p.is_invertible() => Ok(ProjMat::new(p.clone())),
        _ => Err(Error::Internal(format!("intertwiner space has dimension {} (expected 1)", homs.len()))),
    }
}

/// The projective group generated by `τ(R)` and lifts of isometries, with
/// its quotient map onto the isometry subgroup `S`.
pub struct NormalizerExtension {
    pub group: Group<ProjMat>,
    /// Sends `τ(R)` to 1 and each lift to its isometry.
    pub quotient: Homomorphism<ProjMat, Matrix>,
    pub lifts: Vec<ProjMat>,
    /// Number of leading generators of `group` that come from `τ(R)`.
    pub num_r_gens: usize,
    pub certificate: ExtensionCertificate,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ExtensionCertificate {
    pub order: u64,
    pub quotient_order: u64,
    pub kernel_order: u64,
    pub kernel_elementary_abelian: bool,
    /// The conjugation action on the kernel is isomorphic to the natural action on `V/rad V`.
    pub kernel_is_natural_module: bool,
}

impl ExtensionCertificate {
    pub fn holds(&self, r: u32, n: usize) -> bool {
        self.kernel_order == (r as u64).pow(2 * n as u32)
            && self.order == self.kernel_order * self.quotient_order
            && self.kernel_elementary_abelian
            && self.kernel_is_natural_module
    }
}

/// `⟨τ(R), P_s : s ∈ S⟩` modulo scalars, certified as an extension of `S`
/// by `R/Z(R)`.
pub fn normalizer_extension(w: &WeilRep, s_gens: &[Matrix]) -> Result<NormalizerExtension> {
    let g = &w.group;
    let fd = g.form_data();
    let two_n = 2 * fd.n();
    let bm = fd.symplectic_basis();
    let r_elts: Vec<RElt> = (0..two_n).map(|j| RElt { v: bm.row(j).to_vec(), a: 0 }).collect();
    let r_proj: Vec<ProjMat> = r_elts.iter().map(|x| ProjMat::new(w.image(x))).collect();
    let lifts: Vec<ProjMat> = s_gens.iter().map(|s| lift_isometry(w, s)).collect::<Result<_>>()?;
    let mut gens = r_proj.clone();
    gens.extend(lifts.iter().cloned());
    let one_p = ProjMat::new(Matrix::identity(&w.field, w.dim()));
    let group = Group::new(gens, one_p);
    let one_s = Matrix::identity(fd.field(), fd.dim());
    let target = Group::new(s_gens.to_vec(), one_s.clone());
    let mut images = vec![one_s; r_proj.len()];
    images.extend(s_gens.iter().cloned());
    let quotient = Homomorphism::new(group.clone(), target.clone(), images)?;
    if !quotient.is_well_defined()? {
        return Err(Error::Internal("lifts do not define a map onto the isometry subgroup".into()));
    }
    let order = group.order()?;
    let quotient_order = target.order()?;
    let kernel = quotient.kernel()?;
    let kernel_order = kernel.order()?;
    let r = g.r() as u64;
    let kernel_elementary_abelian =
        kernel.is_abelian() && kernel.generators().iter().all(|k| k.pow(r as i64).is_one());

    // coordinates of τ(V) modulo scalars in the symplectic basis of V/rad V
    let fr = fd.field();
    let mut coords: HashMap<ProjMat, Vec<u32>> = HashMap::new();
    for code in 0..r.pow(two_n as u32) {
        let c = vector::decode(g.r(), two_n, code);
        let mut v = vec![0; fd.dim()];
        for (j, &cj) in c.iter().enumerate() {
            vector::axpy(fr, &mut v, cj, bm.row(j));
        }
        coords.insert(ProjMat::new(w.image(&RElt { v, a: 0 })), c);
    }
    let mut by_conj = Vec::with_capacity(lifts.len());
    let mut natural = Vec::with_capacity(lifts.len());
    let bm_inv = bm.inverse().expect("basis");
    for (p, s) in lifts.iter().zip(s_gens) {
        let mut rows = Vec::with_capacity(two_n);
        for t in &r_proj {
            let c = coords
                .get(&t.conj(p))
                .ok_or_else(|| Error::Internal("lift does not normalise τ(R)".into()))?;
            rows.push(c.clone());
        }
        by_conj.push(Matrix::from_rows(fr, &rows)?);
        let sc = bm.mul_unchecked(s).mul_unchecked(&bm_inv);
        let nat: Vec<Vec<u32>> = (0..two_n).map(|j| sc.row(j)[..two_n].to_vec()).collect();
        natural.push(Matrix::from_rows(fr, &nat)?);
    }
    let kernel_is_natural_module = if lifts.is_empty() {
        true
    } else {
        let a = GModule::new(fr, two_n, by_conj)?;
        let b = GModule::new(fr, two_n, natural)?;
        module_iso(&a, &b, &MeataxeOptions::default())?.is_some()
    };
    let certificate =
        ExtensionCertificate { order, quotient_order, kernel_order, kernel_elementary_abelian, kernel_is_natural_module };
    Ok(NormalizerExtension { group, quotient, lifts, num_r_gens: r_proj.len(), certificate })
}
