//! Clifford theory of a module relative to a normal subgroup: homogeneous
//! components, block systems when there is more than one, the tensor
//! factorisation of a homogeneous restriction, and the reduction of a
//! projective group with a nilpotent irreducible normal subgroup to a
//! symplectic action.

mod feit_tits;

pub use feit_tits::{feit_tits_reduce, FeitTitsFailure, FeitTitsOutcome, FeitTitsReport, HypothesisChecks, NORMAL_ENUM_LIMIT};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{Matrix, Span};
use crate::groupcore::{Group, Perm, ProjMat};
use crate::modrep::{chop, hom_from_irreducible, GModule, MeataxeOptions};

/// One isotypic summand of the restriction to `M`.
#[derive(Clone, Debug)]
pub struct HomogeneousComponent {
    pub basis: Vec<Vec<u32>>,
    /// Number of irreducible constituents (`m₁`).
    pub multiplicity: usize,
    /// Dimension of each constituent (`m₂`).
    pub irreducible_dim: usize,
    /// A representative irreducible `M`-module.
    pub constituent: GModule,
}

#[derive(Clone, Debug)]
pub struct CliffordDecomposition {
    pub dim: usize,
    /// Generators of `M` as matrices on `V`.
    pub normal_gens: Vec<Matrix>,
    pub components: Vec<HomogeneousComponent>,
    /// How each generator of `H` permutes the components.
    pub permutations: Vec<Perm>,
    pub transitive: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ComponentSummary {
    pub k: usize,
    pub multiplicities: Vec<usize>,
    pub irreducible_dims: Vec<usize>,
    pub transitive: bool,
}

impl CliffordDecomposition {
    pub fn k(&self) -> usize {
        self.components.len()
    }

    pub fn summary(&self) -> ComponentSummary {
        ComponentSummary {
            k: self.k(),
            multiplicities: self.components.iter().map(|c| c.multiplicity).collect(),
            irreducible_dims: self.components.iter().map(|c| c.irreducible_dim).collect(),
            transitive: self.transitive,
        }
    }
}

fn span_of(field: &crate::gf::FieldRef, dim: usize, vecs: &[Vec<u32>]) -> Span {
    let mut s = Span::new(field, dim);
    for v in vecs {
        s.insert(v);
    }
    s
}

/// Splits `V|M` into homogeneous components. Each component is the sum of
/// the images of all `M`-homomorphisms from one composition factor into `V`.
///
/// Fails if `M` is not normalised by the generators of `H` or if the
/// components do not span `V` (the restriction is not semisimple).
pub fn homogeneous_components(v: &GModule, m_gens: &[Matrix], opts: &MeataxeOptions) -> Result<CliffordDecomposition> {
    let f = v.field();
    let d = v.dim();
    let one = Matrix::identity(f, d);
    if m_gens.iter().any(|g| g.rows() != d || !g.is_square() || !g.field().same(f)) {
        return Err(Error::DimensionMismatch("normal subgroup generators do not act on the module".into()));
    }
    let m_gens: Vec<Matrix> = if m_gens.is_empty() { vec![one.clone()] } else { m_gens.to_vec() };
    let m_group = Group::new(m_gens.clone(), one);
    if !m_group.is_normalized_by(v.generators())? {
        return Err(Error::Precondition("M is not normalised by the generators of H".into()));
    }
    let vm = GModule::new(f, d, m_gens.clone())?;
    let mut components = Vec::new();
    let mut total = span_of(f, d, &[]);
    for (w, _) in chop(&vm, opts)? {
        let homs = hom_from_irreducible(&w, &vm, opts)?;
        let rows: Vec<Vec<u32>> = homs.iter().flat_map(|p| p.row_vecs()).collect();
        let span = span_of(f, d, &rows);
        for b in span.basis() {
            total.insert(b);
        }
        let basis = span.basis().to_vec();
        components.push(HomogeneousComponent {
            multiplicity: basis.len() / w.dim(),
            irreducible_dim: w.dim(),
            basis,
            constituent: w,
        });
    }
    if total.len() != d {
        return Err(Error::Precondition(format!(
            "homogeneous components span {} of {d} dimensions; restriction is not semisimple",
            total.len()
        )));
    }
    let spans: Vec<Span> = components.iter().map(|c| span_of(f, d, &c.basis)).collect();
    let mut permutations = Vec::with_capacity(v.num_gens());
    for h in v.generators() {
        let mut images = Vec::with_capacity(components.len());
        for c in &components {
            let moved: Vec<Vec<u32>> = c.basis.iter().map(|b| h.vec_mul(b)).collect();
            let j = spans
                .iter()
                .position(|s| moved.iter().all(|x| s.contains(x)))
                .ok_or_else(|| Error::Internal("generator does not permute the homogeneous components".into()))?;
            images.push(j as u32);
        }
        permutations.push(Perm::from_images(images)?);
    }
    let k = components.len();
    let mut seen = vec![false; k];
    seen[0] = true;
    let mut stack = vec![0usize];
    while let Some(i) = stack.pop() {
        for p in &permutations {
            let j = p.image(i);
            if !seen[j] {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    let transitive = seen.iter().all(|&s| s);
    Ok(CliffordDecomposition { dim: d, normal_gens: m_gens, components, permutations, transitive })
}

/// Subspaces permuted by the generators of `H`.
#[derive(Clone, Debug)]
pub struct BlockSystem {
    pub blocks: Vec<Vec<Vec<u32>>>,
    pub permutations: Vec<Perm>,
}

impl BlockSystem {
    /// Checks that the blocks form a direct sum decomposition of `V` and that
    /// each generator maps every block onto the block its permutation names.
    pub fn verify(&self, v: &GModule) -> bool {
        let f = v.field();
        let d = v.dim();
        let all: Vec<Vec<u32>> = self.blocks.iter().flatten().cloned().collect();
        if all.len() != d || span_of(f, d, &all).len() != d {
            return false;
        }
        let spans: Vec<Span> = self.blocks.iter().map(|b| span_of(f, d, b)).collect();
        v.generators().iter().zip(&self.permutations).all(|(h, p)| {
            self.blocks
                .iter()
                .enumerate()
                .all(|(i, b)| b.iter().all(|x| spans[p.image(i)].contains(&h.vec_mul(x))))
        })
    }
}

/// The component subspaces as a system of imprimitivity when there is more
/// than one component.
pub fn imprimitivity_witness(dec: &CliffordDecomposition) -> Option<BlockSystem> {
    (dec.k() > 1).then(|| BlockSystem {
        blocks: dec.components.iter().map(|c| c.basis.clone()).collect(),
        permutations: dec.permutations.clone(),
    })
}

/// `V ≅ U ⊗ W` with `W` irreducible under `M` and `U = Hom_M(W, V)`.
#[derive(Clone, Debug)]
pub struct TensorFactorization {
    /// `dim U`.
    pub m1: usize,
    /// `dim W`.
    pub m2: usize,
    /// Rows `(j, w) ↦ w·P_j` for a basis `P_j` of `Hom_M(W, V)`.
    pub basis: Matrix,
    /// Per generator of `H`, the `U` and `W` parts up to scalars.
    pub factors: Vec<(ProjMat, ProjMat)>,
}

impl TensorFactorization {
    /// Whether `A ⊗ C` agrees with the action of each generator up to scalars.
    pub fn reconstructs(&self, v: &GModule) -> bool {
        let Some(b_inv) = self.basis.inverse() else { return false };
        v.generators().iter().zip(&self.factors).all(|(h, (a, c))| {
            let x = self.basis.mul_unchecked(h).mul_unchecked(&b_inv);
            ProjMat::new(x) == ProjMat::new(a.matrix().kron(c.matrix()))
        })
    }
}

/// Writes `X` as `A ⊗ C` with `C` of size `m2`, if possible.
fn split_kron(x: &Matrix, m1: usize, m2: usize) -> Option<(Matrix, Matrix)> {
    let f = x.field();
    let fl = &**f;
    let (bi, bj) = (0..m1).flat_map(|i| (0..m1).map(move |j| (i, j))).find(|&(i, j)| {
        (0..m2).any(|p| (0..m2).any(|q| x.get(i * m2 + p, j * m2 + q) != 0))
    })?;
    let mut c = Matrix::zero(f, m2, m2);
    for p in 0..m2 {
        for q in 0..m2 {
            c.set(p, q, x.get(bi * m2 + p, bj * m2 + q));
        }
    }
    let (p0, q0) = (0..m2).flat_map(|p| (0..m2).map(move |q| (p, q))).find(|&(p, q)| c.get(p, q) != 0)?;
    let pivot = c.get(p0, q0);
    let mut a = Matrix::zero(f, m1, m1);
    for i in 0..m1 {
        for j in 0..m1 {
            a.set(i, j, fl.div(x.get(i * m2 + p0, j * m2 + q0), pivot));
        }
    }
    (a.kron(&c) == *x).then_some((a, c))
}

/// Factorises a homogeneous `V` as `U ⊗ W`. Returns `None` in the degenerate
/// cases `m₁ = 1` or `m₂ = 1`, where one side is scalar.
pub fn tensor_factorize(v: &GModule, dec: &CliffordDecomposition, opts: &MeataxeOptions) -> Result<Option<TensorFactorization>> {
    if dec.k() != 1 {
        return Err(Error::Precondition(format!("restriction has {} homogeneous components, expected 1", dec.k())));
    }
    let comp = &dec.components[0];
    let (m1, m2) = (comp.multiplicity, comp.irreducible_dim);
    if m1 == 1 || m2 == 1 {
        return Ok(None);
    }
    let f = v.field();
    let vm = GModule::new(f, v.dim(), dec.normal_gens.clone())?;
    let homs = hom_from_irreducible(&comp.constituent, &vm, opts)?;
    if homs.len() != m1 {
        return Err(Error::Precondition("constituent is not absolutely irreducible".into()));
    }
    let rows: Vec<Vec<u32>> = homs.iter().flat_map(|p| p.row_vecs()).collect();
    let basis = Matrix::from_rows(f, &rows)?;
    let b_inv = basis.inverse().ok_or_else(|| Error::Internal("intertwiner images are dependent".into()))?;
    let mut factors = Vec::with_capacity(v.num_gens());
    for h in v.generators() {
        let x = basis.mul_unchecked(h).mul_unchecked(&b_inv);
        let (a, c) = split_kron(&x, m1, m2)
            .ok_or_else(|| Error::Internal("generator does not act as a Kronecker product".into()))?;
        factors.push((ProjMat::new(a), ProjMat::new(c)));
    }
    Ok(Some(TensorFactorization { m1, m2, basis, factors }))
}

/// Matrix lifts of projective generators.
pub(crate) fn lifts(g: &Group<ProjMat>) -> Vec<Matrix> {
    g.generators().iter().map(|x| x.matrix().clone()).collect()
}

#[cfg(test)]
mod tests;
