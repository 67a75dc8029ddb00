//! Reduction of `H ≤ PGL_m(k)` with a nilpotent normal subgroup `N` acting
//! irreducibly to a faithful irreducible action of `H/N` on `E/Z(E)` for a
//! symplectic-type `r`-group `E`.
//!
//! Everything is computed in the matrix preimages: `Ñ` is generated by the
//! stored lifts of `N` together with a primitive fourth root of unity (odd
//! characteristic), and `H` acts on it by conjugation with the lifts of its
//! generators, which is independent of the choice of lift.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use super::lifts;
use crate::error::{Error, Result};
use crate::gf::{vector, Field, Matrix};
use crate::groupcore::{factorize, Group, GroupElement, ProjMat};
use crate::modrep::{hom_from_irreducible, is_irreducible, GModule, MeataxeOptions};
use crate::symtype::{classify_r, Kind};

/// Largest `|Ñ|` whose elements are enumerated for the normal-subgroup condition.
pub const NORMAL_ENUM_LIMIT: u64 = 1 << 16;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct HypothesisChecks {
    pub nilpotent: bool,
    pub scalar_z4: bool,
    pub irreducible: bool,
    pub normal_subgroups: bool,
    /// Distinct normal closures of `H`-classes of `Ñ` that were checked.
    pub normal_subgroups_checked: usize,
    pub scope: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct FeitTitsReport {
    pub r: u32,
    pub n: usize,
    pub m: usize,
    pub kind: Kind,
    pub h_order: u64,
    pub n_order: u64,
    pub e_order: u64,
    pub image_order: u64,
    pub faithful: bool,
    pub irreducible: bool,
    pub preserves_form: bool,
    /// `C_Ñ(E)` consists of scalars.
    pub centralizer_scalar: bool,
    pub hypotheses: HypothesisChecks,
    /// The commutator form on `E/Z(E)` in the coordinates used by `images`.
    #[serde(skip)]
    pub form: Matrix,
    /// Action of each generator of `H` on `E/Z(E)`, on row vectors.
    #[serde(skip)]
    pub images: Vec<Matrix>,
}

impl FeitTitsReport {
    /// `m = r^n`, the form is preserved, and the action of `H/N` is faithful and irreducible.
    pub fn holds(&self) -> bool {
        self.m as u64 == (self.r as u64).pow(self.n as u32) && self.preserves_form && self.faithful && self.irreducible
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct FeitTitsFailure {
    /// `(i)`–`(iv)` for the hypotheses, otherwise `normality`, `classification` or `dimension`.
    pub clause: String,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum FeitTitsOutcome {
    Reduced(Box<FeitTitsReport>),
    Failed(FeitTitsFailure),
}

impl FeitTitsOutcome {
    pub fn report(&self) -> Option<&FeitTitsReport> {
        match self {
            FeitTitsOutcome::Reduced(r) => Some(r),
            FeitTitsOutcome::Failed(_) => None,
        }
    }
}

fn fail(clause: &str, reason: impl Into<String>) -> Result<FeitTitsOutcome> {
    Ok(FeitTitsOutcome::Failed(FeitTitsFailure { clause: clause.into(), reason: reason.into() }))
}

fn is_scalar(m: &Matrix) -> bool {
    m.is_scalar_value().is_some()
}

/// Irreducible over the algebraic closure: irreducible with scalar endomorphisms only.
fn absolutely_irreducible(gens: Vec<Matrix>, field: &crate::gf::FieldRef, dim: usize, opts: &MeataxeOptions) -> Result<bool> {
    if gens.is_empty() {
        return Ok(dim == 1);
    }
    let m = GModule::new(field, dim, gens)?;
    Ok(is_irreducible(&m, opts)?.is_irreducible() && hom_from_irreducible(&m, &m, opts)?.len() == 1)
}

/// Runs the reduction. Hypothesis failures are reported as outcomes, not errors.
pub fn feit_tits_reduce(h: &Group<ProjMat>, n: &Group<ProjMat>, opts: &MeataxeOptions) -> Result<FeitTitsOutcome> {
    let Some(first) = h.generators().first() else {
        return Err(Error::invalid("H has no generators"));
    };
    let field = first.matrix().field().clone();
    let m = first.matrix().rows();
    let one = Matrix::identity(&field, m);
    if n.generators().iter().chain(h.generators()).any(|x| x.matrix().rows() != m || !x.matrix().field().same(&field)) {
        return Err(Error::DimensionMismatch("H and N must consist of matrices of one size over one field".into()));
    }
    for x in n.generators() {
        if !h.contains(x)? {
            return fail("normality", "a generator of N is not in H");
        }
    }
    if !n.is_normalized_by(h.generators())? {
        return fail("normality", "N is not normalised by the generators of H");
    }
    let h_order = h.order()?;
    let n_order = n.order()?;
    let h_lifts = lifts(h);
    let h_inv: Vec<Matrix> = h_lifts.iter().map(|x| x.inv()).collect();

    let mut n_gens = lifts(n);
    let scalar_z4 = if field.p() == 2 {
        true
    } else {
        let Some(i) = (1..field.q()).find(|&x| field.mul(x, x) == field.neg(1)) else {
            return fail("(ii)", format!("GF({}) has no primitive fourth root of unity", field.q()));
        };
        n_gens.push(Matrix::scalar(&field, m, i));
        true
    };
    let i_scalar = n_gens.last().filter(|_| field.p() != 2).cloned();
    let nt = Group::new(n_gens.clone(), one.clone());
    let nt_order = nt.order()?;
    if !nt.is_nilpotent()? {
        return fail("(i)", "N is not nilpotent");
    }
    if !absolutely_irreducible(n_gens.clone(), &field, m, opts)? {
        return fail("(iii)", "N does not act absolutely irreducibly");
    }
    if nt_order > NORMAL_ENUM_LIMIT {
        return Err(Error::CapExceeded(format!("preimage of N has order {nt_order} above {NORMAL_ENUM_LIMIT}")));
    }

    // H-classes of Ñ and the normal subgroups they generate
    let elements = nt.elements()?;
    let mut covered: HashSet<Matrix> = HashSet::new();
    let mut seen_closures: HashSet<Vec<Vec<u32>>> = HashSet::new();
    let mut closures: Vec<(u64, Group<Matrix>)> = Vec::new();
    for x in &elements {
        if covered.contains(x) {
            continue;
        }
        let mut class = vec![x.clone()];
        covered.insert(x.clone());
        let mut queue: VecDeque<Matrix> = VecDeque::from([x.clone()]);
        while let Some(y) = queue.pop_front() {
            for (g, gi) in h_lifts.iter().zip(&h_inv) {
                let z = gi.mul_unchecked(&y).mul_unchecked(g);
                if covered.insert(z.clone()) {
                    class.push(z.clone());
                    queue.push_back(z);
                }
            }
        }
        if x.is_one() {
            continue;
        }
        let closure = nt.subgroup(class);
        let mut key: Vec<Vec<u32>> = closure.elements()?.into_iter().map(|e| e.data().to_vec()).collect();
        key.sort();
        if seen_closures.insert(key) {
            closures.push((closure.order()?, closure));
        }
    }
    closures.sort_by_key(|(o, _)| *o);
    for (_, c) in &closures {
        let central = c.generators().iter().all(is_scalar);
        if !central && !absolutely_irreducible(c.generators().to_vec(), &field, m, opts)? {
            return fail("(iv)", "an H-normal subgroup of N is neither irreducible nor central");
        }
    }
    let hypotheses = HypothesisChecks {
        nilpotent: true,
        scalar_z4,
        irreducible: true,
        normal_subgroups: true,
        normal_subgroups_checked: closures.len(),
        scope: "normal closures of H-conjugacy classes in the preimage of N".into(),
    };

    // minimal noncentral normal subgroup, enlarged by Z₄ for r = 2
    let Some((e0_order, e0)) = closures.iter().find(|(_, c)| !c.generators().iter().all(is_scalar)) else {
        return fail("classification", "every H-normal subgroup of N is central");
    };
    let primes = factorize(*e0_order);
    if primes.len() != 1 {
        return fail("classification", format!("minimal noncentral normal subgroup has order {e0_order}, not a prime power"));
    }
    let r = primes[0].0;
    if r == field.p() as u64 {
        return fail("classification", "minimal noncentral normal subgroup has order divisible by the characteristic");
    }
    let e = match (&i_scalar, r) {
        (Some(i), 2) => {
            let mut gens = e0.generators().to_vec();
            gens.push(i.clone());
            nt.subgroup(gens)
        }
        _ => e0.clone(),
    };
    let e_order = e.order()?;
    let Some(cls) = classify_r(&e, r)? else {
        return fail("classification", format!("normal subgroup of order {e_order} is not of symplectic type"));
    };
    let nn = cls.n;
    if m as u64 != r.pow(nn as u32) {
        return fail("dimension", format!("degree {m} is not {r}^{nn}"));
    }

    let centralizer_scalar = elements
        .iter()
        .filter(|y| e.generators().iter().all(|g| y.mul_unchecked(g) == g.mul_unchecked(y)))
        .all(is_scalar);

    // coordinates of E/Z(E) in the classification basis
    let fr = Field::get(r as u32, 1)?;
    let d = 2 * nn;
    let mut coords: HashMap<Matrix, Vec<u32>> = HashMap::new();
    for code in 0..r.pow(d as u32) {
        let c = vector::decode(r as u32, d, code);
        let mut x = one.clone();
        for (b, &ci) in cls.basis.iter().zip(&c) {
            x = x.mul_unchecked(&b.pow(ci as u64));
        }
        for z in &cls.center {
            coords.insert(x.mul_unchecked(z), c.clone());
        }
    }
    let action = |g: &Matrix, gi: &Matrix| -> Result<Matrix> {
        let rows = cls
            .basis
            .iter()
            .map(|b| {
                coords
                    .get(&gi.mul_unchecked(b).mul_unchecked(g))
                    .cloned()
                    .ok_or_else(|| Error::Internal("conjugate of E is not E".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(&fr, &rows)
    };
    let images: Vec<Matrix> = h_lifts.iter().zip(&h_inv).map(|(g, gi)| action(g, gi)).collect::<Result<_>>()?;
    let f = cls.form.gram().clone();
    let preserves_form = images.iter().all(|x| x.mul_unchecked(&f).mul_unchecked(&x.transpose()) == f);
    let n_trivial = lifts(n).iter().all(|g| action(g, &g.inv()).map(|x| x.is_identity()).unwrap_or(false));
    let image = Group::new(images.clone(), Matrix::identity(&fr, d));
    let image_order = image.order()?;
    let faithful = n_trivial && image_order * n_order == h_order;
    let irreducible = !images.is_empty() && is_irreducible(&GModule::new(&fr, d, images.clone())?, opts)?.is_irreducible();

    Ok(FeitTitsOutcome::Reduced(Box::new(FeitTitsReport {
        r: r as u32,
        n: nn,
        m,
        kind: cls.kind,
        h_order,
        n_order,
        e_order,
        image_order,
        faithful,
        irreducible,
        preserves_form,
        centralizer_scalar,
        hypotheses,
        form: f,
        images,
    })))
}
