//! MeatAxe: irreducibility by Norton's criterion, chopping into composition
//! factors, and homomorphisms out of irreducible modules.
//!
//! Norton's criterion is applied with every vector of the kernel of a
//! singular group-algebra element (not only a single one), so a verdict is
//! never probabilistic: randomness only affects how quickly a usable
//! element with a small kernel is found.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::module::GModule;
use crate::error::{Error, Result};
use crate::gf::{vector, FieldRef, Matrix, Span};

/// Largest number of projective kernel points searched exhaustively.
const MAX_KERNEL_POINTS: u64 = 1 << 14;

#[derive(Clone, Copy, Debug)]
pub struct MeataxeOptions {
    pub seed: u64,
    /// Random algebra elements tried before giving up.
    pub budget: usize,
}

impl Default for MeataxeOptions {
    fn default() -> Self {
        MeataxeOptions { seed: 0x5eed, budget: 200 }
    }
}

/// A group-algebra element `Σ cᵢ·wᵢ` with `wᵢ` words in the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    pub terms: Vec<(u32, Vec<usize>)>,
}

impl AlgebraElement {
    pub fn evaluate(&self, m: &GModule) -> Matrix {
        let f = m.field();
        let mut acc = Matrix::zero(f, m.dim(), m.dim());
        for (c, w) in &self.terms {
            acc = acc.add(&m.word_matrix(w).scale(*c)).expect("same shape");
        }
        acc
    }

    /// Random element with coefficients drawn from `coeffs` (nonzero entries).
    fn random(rng: &mut ChaCha8Rng, ngens: usize, coeffs: &[u32]) -> Self {
        let nterms = rng.gen_range(2..=5);
        let terms = (0..nterms)
            .map(|_| {
                let len = rng.gen_range(1..=6);
                let w = (0..len).map(|_| rng.gen_range(0..ngens)).collect();
                (coeffs[rng.gen_range(0..coeffs.len())], w)
            })
            .collect();
        AlgebraElement { terms }
    }
}

/// A singular algebra element together with its kernel on some module.
#[derive(Clone, Debug)]
pub struct KernelWitness {
    pub element: AlgebraElement,
    pub kernel: Vec<Vec<u32>>,
}

/// Finds a singular algebra element of small nullity. `coeffs` restricts the
/// coefficients (used to stay inside a subfield).
pub(crate) fn find_singular(m: &GModule, opts: &MeataxeOptions, coeffs: &[u32], want_nullity: usize) -> Result<KernelWitness> {
    if m.num_gens() == 0 {
        // every vector is fixed; the zero element is singular with full kernel
        let kernel = (0..m.dim()).map(|i| crate::gf::vector::unit(m.dim(), i)).collect();
        return Ok(KernelWitness { element: AlgebraElement { terms: vec![] }, kernel });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ (m.dim() as u64).wrapping_mul(0x9e37_79b9));
    let mut best: Option<KernelWitness> = None;
    let mut since_found = 0;
    for _ in 0..opts.budget {
        let a = AlgebraElement::random(&mut rng, m.num_gens(), coeffs);
        let kernel = a.evaluate(m).left_nullspace();
        if !kernel.is_empty() && best.as_ref().is_none_or(|b| kernel.len() < b.kernel.len()) {
            let done = kernel.len() <= want_nullity;
            best = Some(KernelWitness { element: a, kernel });
            since_found = 0;
            if done {
                break;
            }
        } else if best.is_some() {
            since_found += 1;
            if since_found >= 24 {
                break;
            }
        }
    }
    best.ok_or_else(|| Error::Budget(format!("no singular algebra element found in {} tries", opts.budget)))
}

/// Calls `visit` on one representative of each 1-space of the row span of
/// `basis` until it returns false. Fails if the span has too many points and
/// `visit` never stopped early.
fn for_each_point(field: &FieldRef, basis: &[Vec<u32>], mut visit: impl FnMut(&[u32]) -> bool) -> Result<()> {
    let q = field.q() as u64;
    let k = basis.len() as u32;
    let n = basis[0].len();
    let mut seen = 0u64;
    // coefficient vectors whose last nonzero coordinate is 1; basis vectors come first
    let units = (0..k).map(|i| q.pow(i));
    let rest = (1..q.saturating_pow(k)).filter(|c| !c.is_power_of_two() || q != 2);
    for c in units.chain(rest) {
        let coeffs = vector::decode(field.q(), k as usize, c);
        if coeffs.iter().rev().find(|&&x| x != 0) != Some(&1) {
            continue;
        }
        seen += 1;
        if seen > MAX_KERNEL_POINTS {
            return Err(Error::Budget(format!("kernel of dimension {k} too large to search")));
        }
        let mut v = vec![0; n];
        for (ci, b) in coeffs.iter().zip(basis) {
            vector::axpy(field, &mut v, *ci, b);
        }
        if !visit(&v) {
            break;
        }
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub enum Irreducibility {
    Irreducible,
    /// Basis of a proper nonzero submodule.
    Reducible(Vec<Vec<u32>>),
}

impl Irreducibility {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Irreducibility::Irreducible)
    }
}

/// Transposed generators; spans invariant under them are the annihilators
/// of submodules.
fn transposed(m: &GModule) -> GModule {
    let gens = m.generators().iter().map(|g| g.transpose()).collect();
    GModule::from_parts_unchecked(m.field(), m.dim(), gens)
}

/// Annihilator `{u : u·wᵀ = 0 for all w}` of a span.
fn annihilator(dim: usize, span: &Span) -> Vec<Vec<u32>> {
    let m = span.to_matrix();
    if m.rows() == 0 {
        return (0..dim).map(|i| crate::gf::vector::unit(dim, i)).collect();
    }
    m.nullspace()
}

pub fn is_irreducible(m: &GModule, opts: &MeataxeOptions) -> Result<Irreducibility> {
    if m.dim() == 1 {
        return Ok(Irreducibility::Irreducible);
    }
    let f = m.field().clone();
    let all: Vec<u32> = (1..f.q()).collect();
    let w = find_singular(m, opts, &all, 1)?;
    let mut found = None;
    for_each_point(&f, &w.kernel, |v| {
        let s = m.spin(&[v.to_vec()]);
        if s.len() < m.dim() {
            found = Some(s.basis().to_vec());
            false
        } else {
            true
        }
    })?;
    if let Some(b) = found {
        return Ok(Irreducibility::Reducible(b));
    }
    let mt = transposed(m);
    let kt = w.element.evaluate(m).nullspace();
    for_each_point(&f, &kt, |v| {
        let s = mt.spin(&[v.to_vec()]);
        if s.len() < m.dim() {
            found = Some(annihilator(m.dim(), &s));
            false
        } else {
            true
        }
    })?;
    Ok(match found {
        Some(b) => Irreducibility::Reducible(b),
        None => Irreducibility::Irreducible,
    })
}

/// Composition factors in the order met by recursive splitting.
pub fn composition_factors(m: &GModule, opts: &MeataxeOptions) -> Result<Vec<GModule>> {
    let mut out = Vec::new();
    let mut stack = vec![m.clone()];
    while let Some(x) = stack.pop() {
        match is_irreducible(&x, opts)? {
            Irreducibility::Irreducible => out.push(x),
            Irreducibility::Reducible(b) => {
                let (sub, quo) = x.split_by(&b)?;
                stack.push(quo);
                stack.push(sub);
            }
        }
    }
    Ok(out)
}

/// Composition factors up to isomorphism, with multiplicities, sorted by dimension.
pub fn chop(m: &GModule, opts: &MeataxeOptions) -> Result<Vec<(GModule, usize)>> {
    let mut classes: Vec<(GModule, usize)> = Vec::new();
    for x in composition_factors(m, opts)? {
        let mut matched = false;
        for (y, mult) in classes.iter_mut() {
            if y.dim() == x.dim() && !hom_from_irreducible(y, &x, opts)?.is_empty() {
                *mult += 1;
                matched = true;
                break;
            }
        }
        if !matched {
            classes.push((x, 1));
        }
    }
    classes.sort_by_key(|(x, _)| x.dim());
    Ok(classes)
}

/// Spinning data for a vector: basis vectors as `(parent, generator)` steps from `v`.
#[derive(Clone, Debug)]
struct SpinRecipe {
    steps: Vec<(usize, usize)>,
}

fn spin_with_recipe(m: &GModule, v: &[u32]) -> (Vec<Vec<u32>>, SpinRecipe) {
    let mut span = Span::new(m.field(), m.dim());
    let mut vecs = vec![v.to_vec()];
    let mut steps = Vec::new();
    span.insert(v);
    let mut i = 0;
    while i < vecs.len() && vecs.len() < m.dim() {
        for (g, mat) in m.generators().iter().enumerate() {
            let w = mat.vec_mul(&vecs[i]);
            if span.insert(&w).is_some() {
                vecs.push(w);
                steps.push((i, g));
            }
        }
        i += 1;
    }
    (vecs, SpinRecipe { steps })
}

fn replay(m: &GModule, v: &[u32], r: &SpinRecipe) -> Vec<Vec<u32>> {
    let mut vecs = vec![v.to_vec()];
    for &(parent, g) in &r.steps {
        let w = m.generators()[g].vec_mul(&vecs[parent]);
        vecs.push(w);
    }
    vecs
}

/// Basis of `Hom(a, b)` for irreducible `a`, as `dim a × dim b` matrices `P`
/// with `a(g)·P = P·b(g)`.
pub fn hom_from_irreducible(a: &GModule, b: &GModule, opts: &MeataxeOptions) -> Result<Vec<Matrix>> {
    if !a.field().same(b.field()) || a.num_gens() != b.num_gens() {
        return Err(Error::invalid("modules over different fields or generator counts"));
    }
    let f = a.field().clone();
    let all: Vec<u32> = (1..f.q()).collect();
    let w = find_singular(a, opts, &all, 1)?;
    let (basis_a, recipe) = spin_with_recipe(a, &w.kernel[0]);
    if basis_a.len() != a.dim() {
        return Err(Error::Precondition("source module is reducible".into()));
    }
    let ra = Matrix::from_rows(&f, &basis_a)?;
    let ra_inv = ra.inverse().ok_or_else(|| Error::Internal("spun basis singular".into()))?;
    let kb = w.element.evaluate(b).left_nullspace();
    if kb.is_empty() {
        return Ok(Vec::new());
    }
    // candidate maps P_j = ra⁻¹·(replayed images of the j-th kernel vector)
    let cands: Vec<Matrix> =
        kb.iter().map(|v| ra_inv.mul_unchecked(&Matrix::from_rows(&f, &replay(b, v, &recipe)).expect("rows"))).collect();
    let (da, db) = (a.dim(), b.dim());
    let neq = a.num_gens() * da * db;
    let mut sys = Matrix::zero(&f, neq, cands.len());
    for (j, p) in cands.iter().enumerate() {
        for (k, (ga, gb)) in a.generators().iter().zip(b.generators()).enumerate() {
            let diff = ga.mul_unchecked(p).sub(&p.mul_unchecked(gb))?;
            for r in 0..da {
                for c in 0..db {
                    sys.set(k * da * db + r * db + c, j, diff.get(r, c));
                }
            }
        }
    }
    let sols = sys.nullspace();
    Ok(sols
        .into_iter()
        .map(|c| {
            let mut p = Matrix::zero(&f, da, db);
            for (cj, pj) in c.iter().zip(&cands) {
                p = p.add(&pj.scale(*cj)).expect("shape");
            }
            p
        })
        .collect())
}

/// Basis of `Hom(a, b)` by solving the full linear system; for small modules.
pub fn hom_space(a: &GModule, b: &GModule) -> Result<Vec<Matrix>> {
    if !a.field().same(b.field()) || a.num_gens() != b.num_gens() {
        return Err(Error::invalid("modules over different fields or generator counts"));
    }
    let f = a.field().clone();
    let (da, db) = (a.dim(), b.dim());
    let n = da * db;
    if n > 1 << 13 {
        return Err(Error::CapExceeded(format!("hom system with {n} unknowns")));
    }
    // unknown (i,j) of P; equation (k,r,c): Σ_i a_k[r,i] P[i,c] − Σ_j P[r,j] b_k[j,c]
    let mut sys = Matrix::zero(&f, a.num_gens() * n, n);
    for (k, (ga, gb)) in a.generators().iter().zip(b.generators()).enumerate() {
        for r in 0..da {
            for c in 0..db {
                let row = k * n + r * db + c;
                for i in 0..da {
                    let v = ga.get(r, i);
                    if v != 0 {
                        let col = i * db + c;
                        sys.set(row, col, f.add(sys.get(row, col), v));
                    }
                }
                for j in 0..db {
                    let v = gb.get(j, c);
                    if v != 0 {
                        let col = r * db + j;
                        sys.set(row, col, f.sub(sys.get(row, col), v));
                    }
                }
            }
        }
    }
    Ok(sys
        .nullspace()
        .into_iter()
        .map(|v| Matrix::new(&f, da, db, v).expect("shape"))
        .collect())
}

/// An invertible `P` with `a(g)·P = P·b(g)` for every generator, if one exists.
pub fn module_iso(a: &GModule, b: &GModule, opts: &MeataxeOptions) -> Result<Option<Matrix>> {
    if a.dim() != b.dim() || !a.field().same(b.field()) || a.num_gens() != b.num_gens() {
        return Ok(None);
    }
    let homs = if is_irreducible(a, opts)?.is_irreducible() {
        let h = hom_from_irreducible(a, b, opts)?;
        // a nonzero map out of an irreducible module of equal dimension is injective
        return Ok(h.into_iter().next().filter(|p| p.is_invertible()));
    } else {
        hom_space(a, b)?
    };
    first_invertible(a.field(), &homs, opts)
}

/// First invertible combination of `basis`, exhaustively for small spaces and
/// by seeded random sampling otherwise.
pub(crate) fn first_invertible(f: &FieldRef, basis: &[Matrix], opts: &MeataxeOptions) -> Result<Option<Matrix>> {
    if basis.is_empty() {
        return Ok(None);
    }
    let combo = |c: &[u32]| {
        let mut p = Matrix::zero(f, basis[0].rows(), basis[0].cols());
        for (ci, b) in c.iter().zip(basis) {
            if *ci != 0 {
                p = p.add(&b.scale(*ci)).expect("shape");
            }
        }
        p
    };
    let q = f.q() as u64;
    let k = basis.len() as u32;
    if (k as f64) * (q as f64).log2() <= 12.0 {
        for c in 1..q.pow(k) {
            let p = combo(&vector::decode(f.q(), k as usize, c));
            if p.is_invertible() {
                return Ok(Some(p));
            }
        }
        return Ok(None);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.budget {
        let c: Vec<u32> = (0..k).map(|_| rng.gen_range(0..f.q())).collect();
        let p = combo(&c);
        if p.is_invertible() {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

/// Degree over GF(p) of `End(m)` for irreducible `m` (a finite field by Schur).
pub fn endo_field_degree(m: &GModule, opts: &MeataxeOptions) -> Result<u32> {
    if !is_irreducible(m, opts)?.is_irreducible() {
        return Err(Error::Precondition("module is reducible".into()));
    }
    let k = hom_from_irreducible(m, m, opts)?.len() as u32;
    Ok(k * m.field().e())
}
