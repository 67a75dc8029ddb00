//! `H²(S, M)` for a small group `S` through its Cayley graph.
//!
//! A normalised cocycle is the same thing as a right-regular model of the
//! extension: right multiplication by the lift of a generator `g` sends
//! `(m, x)` to `(m·g + a(x, g), xg)`. Choosing lifts along a BFS spanning
//! tree makes `a` vanish on tree edges. The remaining values on non-tree
//! edges define an extension exactly when each Schreier relator acts on
//! `M × S` as the same translation on every fibre. The solutions span
//! `Z²(S, M)` modulo `B²(S, M)`, but the lifts of the generators themselves
//! are still free, so the solutions are reduced modulo `B²` afterwards.

use std::collections::HashMap;

use super::RowSpace;
use crate::error::{Error, Result};
use crate::gf::{vector, FieldRef, Matrix};
use crate::groupcore::{Action, Group};
use crate::modrep::GModule;
use crate::presentations::{fox_coefficients, Letter, Presentation, Word};

/// Largest `|S|` accepted by [`h2_sylow`].
pub const H2_SYLOW_LIMIT: u64 = 256;

#[derive(Clone, Debug)]
pub struct CocycleSpace<E: Action> {
    gens: Vec<E>,
    elements: Vec<E>,
    index: HashMap<E, usize>,
    /// `mult[i·|S| + j]` is the index of `elements[i]·elements[j]`.
    mult: Vec<u32>,
    action: Vec<Matrix>,
    module: GModule,
    field: FieldRef,
    dim: usize,
    presentation: Presentation,
    h2_reps: Vec<Vec<u32>>,
    z1_basis: Vec<Vec<u32>>,
    b2_pivots: Vec<(usize, usize)>,
    unknowns: usize,
    equations: usize,
}

impl<E: Action> CocycleSpace<E> {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn module_dim(&self) -> usize {
        self.dim
    }

    /// The module on the generators of `S`.
    pub fn module(&self) -> &GModule {
        &self.module
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn generators(&self) -> &[E] {
        &self.gens
    }

    /// Elements in BFS order from the identity.
    pub fn elements(&self) -> &[E] {
        &self.elements
    }

    pub fn index_of(&self, x: &E) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn mul_index(&self, i: usize, j: usize) -> usize {
        self.mult[i * self.order() + j] as usize
    }

    /// Matrix of `elements[i]` on `M`.
    pub fn action(&self, i: usize) -> &Matrix {
        &self.action[i]
    }

    /// The Schreier presentation of `S` on its given generators, one
    /// relator per non-tree edge of the Cayley graph.
    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn dim_h2(&self) -> usize {
        self.h2_reps.len()
    }

    pub fn dim_z1(&self) -> usize {
        self.z1_basis.len()
    }

    pub fn dim_b2(&self) -> usize {
        self.b2_pivots.len()
    }

    pub fn dim_z2(&self) -> usize {
        self.dim_h2() + self.dim_b2()
    }

    /// Size of the linear system that was solved.
    pub fn system_size(&self) -> (usize, usize) {
        (self.equations, self.unknowns)
    }

    /// Cocycles whose classes form a basis of `H²(S, M)`.
    pub fn h2_representatives(&self) -> &[Vec<u32>] {
        &self.h2_reps
    }

    /// Crossed homomorphisms `c(xy) = c(x)·y + c(y)` as `|S|·dim M` vectors.
    pub fn z1_basis(&self) -> &[Vec<u32>] {
        &self.z1_basis
    }

    pub fn cochain_len(&self) -> usize {
        self.order() * self.order() * self.dim
    }

    pub fn value<'a>(&self, cochain: &'a [u32], x: usize, y: usize) -> &'a [u32] {
        let at = (x * self.order() + y) * self.dim;
        &cochain[at..at + self.dim]
    }

    /// `δc` for `c` the unit cochain with `c(elements[x]) = e_k`.
    pub fn coboundary(&self, x: usize, k: usize) -> Vec<u32> {
        coboundary_of(&self.mult, &self.action, &self.field, self.order(), self.dim, x, k)
    }

    /// `δc` over unit cochains completing `Z¹` to all normalised 1-cochains.
    pub fn b2_basis(&self) -> Vec<Vec<u32>> {
        self.b2_pivots.iter().map(|&(x, k)| self.coboundary(x, k)).collect()
    }

    /// `H²` representatives followed by a basis of `B²`.
    pub fn z2_basis(&self) -> Vec<Vec<u32>> {
        let mut out = self.h2_reps.clone();
        out.extend(self.b2_basis());
        out
    }

    /// Exhaustive check of normalisation and the cocycle identity on all triples.
    pub fn is_cocycle(&self, cochain: &[u32]) -> bool {
        let f = &*self.field;
        let n = self.order();
        if cochain.len() != self.cochain_len() {
            return false;
        }
        if (0..n).any(|x| !vector::is_zero(self.value(cochain, 0, x)) || !vector::is_zero(self.value(cochain, x, 0))) {
            return false;
        }
        for x in 0..n {
            for y in 0..n {
                let xy = self.mul_index(x, y);
                let axy = self.value(cochain, x, y);
                for z in 0..n {
                    let yz = self.mul_index(y, z);
                    let lhs = vector::add(f, &self.action[z].vec_mul(axy), self.value(cochain, xy, z));
                    let rhs = vector::add(f, self.value(cochain, x, yz), self.value(cochain, y, z));
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Whether `cochain` is a coboundary of a normalised 1-cochain.
    pub fn is_coboundary(&self, cochain: &[u32]) -> bool {
        let mut span = crate::gf::Span::new(&self.field, self.cochain_len());
        for b in self.b2_basis() {
            span.insert(&b);
        }
        span.contains(cochain)
    }
}

fn coboundary_of(mult: &[u32], action: &[Matrix], field: &FieldRef, n: usize, d: usize, x: usize, k: usize) -> Vec<u32> {
    let f = &**field;
    let mut out = vec![0; n * n * d];
    for a in 0..n {
        for b in 0..n {
            let at = (a * n + b) * d;
            if a == x {
                for c in 0..d {
                    out[at + c] = f.add(out[at + c], action[b].get(k, c));
                }
            }
            if b == x {
                out[at + k] = f.add(out[at + k], 1);
            }
            if mult[a * n + b] as usize == x {
                out[at + k] = f.sub(out[at + k], 1);
            }
        }
    }
    out
}

/// Letters of the tree path from the identity to `elements[i]`.
fn tree_path(parent: &[Option<(usize, usize)>], mut i: usize) -> Vec<Letter> {
    let mut out = Vec::new();
    while let Some((p, g)) = parent[i] {
        out.push(Letter { gen: g, inverse: false });
        i = p;
    }
    out.reverse();
    out
}

/// Computes `H²(S, M)`, `Z¹(S, M)` and a basis description of `B²(S, M)`.
/// The generators of `m` must correspond to those of `s`.
pub fn h2_sylow<E: Action>(s: &Group<E>, m: &GModule) -> Result<CocycleSpace<E>> {
    if m.num_gens() != s.generators().len() {
        return Err(Error::invalid(format!(
            "module has {} generators but the group has {}",
            m.num_gens(),
            s.generators().len()
        )));
    }
    if m.field().e() != 1 {
        return Err(Error::Precondition("coefficients must be a module over a prime field".into()));
    }
    let order = s.order()?;
    if order > H2_SYLOW_LIMIT {
        return Err(Error::CapExceeded(format!("|S| = {order} above {H2_SYLOW_LIMIT}")));
    }
    let field = m.field().clone();
    let f = &*field;
    let d = m.dim();
    let gens = s.generators().to_vec();
    let k = gens.len();

    // Cayley graph BFS
    let mut elements = vec![s.one().clone()];
    let mut index: HashMap<E, usize> = HashMap::from([(s.one().clone(), 0)]);
    let mut parent: Vec<Option<(usize, usize)>> = vec![None];
    let mut action = vec![Matrix::identity(&field, d)];
    let mut i = 0;
    while i < elements.len() {
        for (g, x) in gens.iter().enumerate() {
            let y = elements[i].mul(x);
            if !index.contains_key(&y) {
                index.insert(y.clone(), elements.len());
                elements.push(y);
                parent.push(Some((i, g)));
                action.push(action[i].mul_unchecked(&m.generators()[g]));
            }
        }
        i += 1;
    }
    let n = elements.len();
    if n as u64 != order {
        return Err(Error::Internal("Cayley graph does not cover the group".into()));
    }
    let mut mult = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            mult[a * n + b] = index[&elements[a].mul(&elements[b])] as u32;
        }
    }
    let step = |x: usize, g: usize| index[&elements[x].mul(&gens[g])];

    let mut nontree: Vec<(usize, usize)> = Vec::new();
    let mut edge_index: HashMap<(usize, usize), usize> = HashMap::new();
    for x in 0..n {
        for g in 0..k {
            let y = step(x, g);
            if action[x].mul_unchecked(&m.generators()[g]) != action[y] {
                return Err(Error::invalid("module generators do not define an action of the group"));
            }
            if parent[y] != Some((x, g)) {
                edge_index.insert((x, g), nontree.len());
                nontree.push((x, g));
            }
        }
    }
    let relators: Vec<Word> = nontree
        .iter()
        .map(|&(x, g)| {
            let mut letters = tree_path(&parent, x);
            letters.push(Letter { gen: g, inverse: false });
            letters.extend(tree_path(&parent, step(x, g)).into_iter().rev().map(Letter::inv));
            Word::new(letters)
        })
        .collect();
    let names: Vec<String> = (0..k).map(|g| format!("s{g}")).collect();
    let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let presentation = Presentation::new("S", &name_refs, relators.iter().filter(|w| !w.is_empty()).cloned().collect())?;

    // Fox-type steps: (edge source relative to the base fibre, generator, coefficient)
    let gen_inv: Vec<Matrix> = m.generators().iter().map(|x| x.inverse().expect("invertible")).collect();
    let mut relator_steps: Vec<Vec<(usize, usize, Matrix)>> = Vec::with_capacity(relators.len());
    for w in &relators {
        let letters = w.letters();
        let mut suffix = vec![Matrix::identity(&field, d); letters.len() + 1];
        for j in (0..letters.len()).rev() {
            let l = letters[j];
            let mat = if l.inverse { &gen_inv[l.gen] } else { &m.generators()[l.gen] };
            suffix[j] = mat.mul_unchecked(&suffix[j + 1]);
        }
        let mut pos = 0usize;
        let mut steps = Vec::with_capacity(letters.len());
        for (j, l) in letters.iter().enumerate() {
            if l.inverse {
                let src = index[&elements[pos].mul(&gens[l.gen].inv())];
                steps.push((src, l.gen, suffix[j].scale(f.neg(1))));
                pos = src;
            } else {
                steps.push((pos, l.gen, suffix[j + 1].clone()));
                pos = step(pos, l.gen);
            }
        }
        debug_assert_eq!(pos, 0);
        relator_steps.push(steps);
    }

    // translation of each relator on fibre y minus its translation on fibre 1
    let unknowns = nontree.len() * d;
    let mut rows = RowSpace::new(&field, unknowns);
    let mut equations = 0usize;
    let translation = |steps: &[(usize, usize, Matrix)], y: usize| -> HashMap<usize, Matrix> {
        let mut acc: HashMap<usize, Matrix> = HashMap::new();
        for (src, g, c) in steps {
            let src = mult[y * n + src] as usize;
            if let Some(&e) = edge_index.get(&(src, *g)) {
                let entry = acc.entry(e).or_insert_with(|| Matrix::zero(&field, d, d));
                *entry = entry.add(c).expect("shape");
            }
        }
        acc
    };
    for steps in &relator_steps {
        let base = translation(steps, 0);
        for y in 1..n {
            let mut at_y = translation(steps, y);
            for (e, c) in &base {
                let entry = at_y.entry(*e).or_insert_with(|| Matrix::zero(&field, d, d));
                *entry = entry.sub(c).expect("shape");
            }
            for out in 0..d {
                let mut row = vec![0u32; unknowns];
                for (e, c) in &at_y {
                    for inp in 0..d {
                        row[e * d + inp] = c.get(inp, out);
                    }
                }
                if !vector::is_zero(&row) {
                    rows.insert(&row);
                }
                equations += 1;
            }
        }
    }
    let solutions = rows.nullspace(&field, unknowns);

    // crossed homomorphisms from their values on generators
    let mut z1_rows = RowSpace::new(&field, k * d);
    for w in &presentation.rels {
        let coeffs = fox_coefficients(w, m.generators())?;
        for out in 0..d {
            let mut row = vec![0u32; k * d];
            for (g, c) in coeffs.iter().enumerate() {
                for inp in 0..d {
                    row[g * d + inp] = c.get(inp, out);
                }
            }
            z1_rows.insert(&row);
        }
    }
    let z1_basis: Vec<Vec<u32>> = if k == 0 {
        Vec::new()
    } else {
        z1_rows
            .nullspace(&field, k * d)
            .iter()
            .map(|gv| {
                let mut c = vec![0u32; n * d];
                for y in 1..n {
                    let (py, g) = parent[y].expect("non-root");
                    let v = vector::add(f, &m.generators()[g].vec_mul(&c[py * d..(py + 1) * d]), &gv[g * d..(g + 1) * d]);
                    c[y * d..(y + 1) * d].copy_from_slice(&v);
                }
                c
            })
            .collect()
    };
    let mut z1_span = crate::gf::Span::new(&field, n * d);
    for c in &z1_basis {
        z1_span.insert(c);
    }
    let pivots: std::collections::HashSet<usize> = z1_span.pivots().iter().copied().collect();
    let b2_pivots: Vec<(usize, usize)> =
        (1..n).flat_map(|x| (0..d).map(move |c| (x, c))).filter(|&(x, c)| !pivots.contains(&(x * d + c))).collect();

    // full normalised cochains from edge values
    let solution_cochains: Vec<Vec<u32>> = solutions
        .iter()
        .map(|sol| {
            let mut alpha = vec![0u32; n * n * d];
            for x in 0..n {
                for y in 1..n {
                    let (py, g) = parent[y].expect("non-root");
                    let prev_at = (x * n + py) * d;
                    let mut v = m.generators()[g].vec_mul(&alpha[prev_at..prev_at + d]);
                    let src = mult[x * n + py] as usize;
                    if let Some(&e) = edge_index.get(&(src, g)) {
                        v = vector::add(f, &v, &sol[e * d..(e + 1) * d]);
                    }
                    alpha[(x * n + y) * d..(x * n + y + 1) * d].copy_from_slice(&v);
                }
            }
            alpha
        })
        .collect();

    // The gauge fixes lifts of non-generator elements only; corrections to
    // the generator lifts still move solutions by coboundaries.
    let mut classes = crate::gf::Span::new(&field, n * n * d);
    for &(x, c) in &b2_pivots {
        classes.insert(&coboundary_of(&mult, &action, &field, n, d, x, c));
    }
    let h2_reps: Vec<Vec<u32>> = solution_cochains.into_iter().filter(|a| classes.insert(a).is_some()).collect();

    Ok(CocycleSpace {
        gens,
        elements,
        index,
        mult,
        action,
        module: m.clone(),
        field,
        dim: d,
        presentation,
        h2_reps,
        z1_basis,
        b2_pivots,
        unknowns,
        equations,
    })
}

/// Dimensions from the full inhomogeneous bar complex on normalised cochains.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BarDims {
    pub z2: usize,
    pub b2: usize,
    pub h2: usize,
}

/// Reference computation of `H²(S, M)` solving the cocycle identity on all
/// triples of nonidentity elements, with `B²` as the rank of the coboundary
/// map. Independent of the Cayley-graph method; cost grows like `|S|³`.
pub fn h2_full_bar<E: Action>(cs: &CocycleSpace<E>) -> BarDims {
    let field = cs.field().clone();
    let f = &*field;
    let n = cs.order();
    let d = cs.module_dim();
    let var = |x: usize, y: usize| ((x - 1) * (n - 1) + (y - 1)) * d;
    let unknowns = (n - 1) * (n - 1) * d;
    let mut rows = RowSpace::new(&field, unknowns);
    for x in 1..n {
        for y in 1..n {
            let xy = cs.mul_index(x, y);
            for z in 1..n {
                let yz = cs.mul_index(y, z);
                // α(x,y)·z + α(xy,z) − α(x,yz) − α(y,z)
                for out in 0..d {
                    let mut row = vec![0u32; unknowns];
                    for inp in 0..d {
                        row[var(x, y) + inp] = f.add(row[var(x, y) + inp], cs.action(z).get(inp, out));
                    }
                    if xy != 0 {
                        row[var(xy, z) + out] = f.add(row[var(xy, z) + out], 1);
                    }
                    if yz != 0 {
                        row[var(x, yz) + out] = f.sub(row[var(x, yz) + out], 1);
                    }
                    row[var(y, z) + out] = f.sub(row[var(y, z) + out], 1);
                    rows.insert(&row);
                }
            }
        }
    }
    let z2 = unknowns - rows.rank();
    let mut coboundaries = RowSpace::new(&field, cs.cochain_len());
    for x in 1..n {
        for c in 0..d {
            coboundaries.insert(&cs.coboundary(x, c));
        }
    }
    let b2 = coboundaries.rank();
    BarDims { z2, b2, h2: z2 - b2 }
}
