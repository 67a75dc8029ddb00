//! `H²(G, M)` as the stable subspace of `H²(S, M)` for a Sylow `p`-subgroup `S`.

use std::collections::HashMap;

use serde::Serialize;

use super::sylow::{h2_sylow, CocycleSpace};
use super::RowSpace;
use crate::error::{Error, Result};
use crate::gf::{vector, Field, Matrix, Span};
use crate::groupcore::{minimal_generators, Action, Group, Homomorphism};
use crate::modrep::GModule;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct H2Report {
    pub p: u32,
    pub group_order: u64,
    pub sylow_order: u64,
    pub module_dim: usize,
    pub dim_h2_sylow: usize,
    pub dim_h2_stable: usize,
    pub double_cosets: usize,
}

/// Representatives of `S\G/S`, the trivial double coset first.
///
/// Right cosets are named by the least base image of their elements, so
/// only `|G : S|` keys are stored.
pub fn double_coset_reps<E: Action>(g: &Group<E>, s: &Group<E>, cap: usize) -> Result<Vec<E>> {
    let base = g.bsgs()?.base();
    let s_elems = s.elements()?;
    let key = |x: &E| -> Vec<u64> {
        s_elems.iter().map(|t| base.iter().map(|&b| t.mul(x).act(b)).collect::<Vec<u64>>()).min().expect("nonempty")
    };
    let index = (g.order()? / s.order()?) as usize;
    if index > cap {
        return Err(Error::CapExceeded(format!("{index} cosets above {cap}")));
    }
    let mut reps: Vec<E> = vec![g.one().clone()];
    let mut seen: HashMap<Vec<u64>, usize> = HashMap::from([(key(g.one()), 0)]);
    let mut i = 0;
    while i < reps.len() && reps.len() < index {
        for x in g.generators() {
            let y = reps[i].mul(x);
            let ky = key(&y);
            if !seen.contains_key(&ky) {
                seen.insert(ky, reps.len());
                reps.push(y);
            }
        }
        i += 1;
    }
    if reps.len() != index {
        return Err(Error::Internal("coset enumeration did not reach the index".into()));
    }
    // orbits of S on the right cosets
    let mut orbit_of = vec![usize::MAX; index];
    let mut out = Vec::new();
    for start in 0..index {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        orbit_of[start] = out.len();
        let mut stack = vec![start];
        while let Some(c) = stack.pop() {
            for t in s.generators() {
                let d = seen[&key(&reps[c].mul(t))];
                if orbit_of[d] == usize::MAX {
                    orbit_of[d] = out.len();
                    stack.push(d);
                }
            }
        }
        out.push(reps[start].clone());
    }
    Ok(out)
}

fn combine(cs_len: usize, reps: &[Vec<u32>], coeffs: &[u32], field: &Field) -> Vec<u32> {
    let mut out = vec![0u32; cs_len];
    for (c, r) in coeffs.iter().zip(reps) {
        if *c != 0 {
            vector::axpy(field, &mut out, *c, r);
        }
    }
    out
}

/// Dimension of the subspace of `H²(S, M)` whose restrictions to every
/// `U = S ∩ S^g` agree with their `g`-conjugates modulo `B²(U, M)`.
///
/// `m` is a module for `G` on its generators and `cs` the cocycle space of
/// `S` with the restricted module.
pub fn stable_subspace<E: Action>(g: &Group<E>, s: &Group<E>, m: &GModule, cs: &CocycleSpace<E>) -> Result<usize> {
    let field = m.field().clone();
    let f = &*field;
    let d = m.dim();
    let h = cs.dim_h2();
    if h == 0 {
        return Ok(0);
    }
    let rho = Homomorphism::new(g.clone(), Group::new(m.generators().to_vec(), Matrix::identity(&field, d)), m.generators().to_vec())?;
    let reps = double_coset_reps(g, s, 1 << 20)?;
    let n = cs.order();
    let mut current: Vec<Vec<u32>> = (0..h).map(|i| vector::unit(h, i)).collect();
    for x in reps.iter().skip(1) {
        if current.is_empty() {
            break;
        }
        if cs.index_of(x).is_some() {
            continue;
        }
        let xi = x.inv();
        // U = S ∩ x⁻¹Sx with u ↦ x u x⁻¹ ∈ S
        let u: Vec<(usize, usize)> = (0..n)
            .filter_map(|i| cs.index_of(&x.mul(&cs.elements()[i]).mul(&xi)).map(|j| (i, j)))
            .collect();
        if u.len() <= 1 {
            continue;
        }
        let rx = rho.image(x)?;
        let pos: HashMap<usize, usize> = u.iter().enumerate().map(|(k, &(i, _))| (i, k)).collect();
        let cochains: Vec<Vec<u32>> =
            current.iter().map(|l| combine(cs.cochain_len(), cs.h2_representatives(), l, f)).collect();
        let nl = current.len();
        // unknowns: μ (nl), then c(u) for nonidentity u ∈ U
        let cvar = |k: usize| nl + (k - 1) * d;
        let cols = nl + (u.len() - 1) * d;
        let mut rows = RowSpace::new(&field, cols);
        for (ka, &(a, ca)) in u.iter().enumerate().skip(1) {
            for (kb, &(b, cb)) in u.iter().enumerate().skip(1) {
                let ab = cs.mul_index(a, b);
                let kab = pos[&ab];
                let diffs: Vec<Vec<u32>> = cochains
                    .iter()
                    .map(|al| vector::sub(f, cs.value(al, a, b), &rx.vec_mul(cs.value(al, ca, cb))))
                    .collect();
                for out in 0..d {
                    let mut row = vec![0u32; cols];
                    for (l, diff) in diffs.iter().enumerate() {
                        row[l] = diff[out];
                    }
                    // − (c(a)·b + c(b) − c(ab))
                    for inp in 0..d {
                        let at = cvar(ka) + inp;
                        row[at] = f.sub(row[at], cs.action(b).get(inp, out));
                    }
                    row[cvar(kb) + out] = f.sub(row[cvar(kb) + out], 1);
                    if kab != 0 {
                        row[cvar(kab) + out] = f.add(row[cvar(kab) + out], 1);
                    }
                    rows.insert(&row);
                }
            }
        }
        let mut next = Span::new(&field, h);
        for sol in rows.nullspace(&field, cols) {
            let mut v = vec![0u32; h];
            for (l, base) in current.iter().enumerate() {
                vector::axpy(f, &mut v, sol[l], base);
            }
            next.insert(&v);
        }
        current = next.basis().to_vec();
    }
    Ok(current.len())
}

/// `H²(G, M)` for a GF(p)-module given on the generators of `G`.
pub fn h2<E: Action>(g: &Group<E>, m: &GModule) -> Result<H2Report> {
    if m.num_gens() != g.generators().len() {
        return Err(Error::invalid("module and group have different generator counts"));
    }
    if m.field().e() != 1 {
        return Err(Error::Precondition("coefficients must be a module over a prime field".into()));
    }
    let p = m.field().p();
    let group_order = g.order()?;
    let rho = Homomorphism::new(
        g.clone(),
        Group::new(m.generators().to_vec(), Matrix::identity(m.field(), m.dim())),
        m.generators().to_vec(),
    )?;
    if !rho.is_well_defined()? {
        return Err(Error::invalid("module generators do not define a representation of the group"));
    }
    let sylow = g.sylow_subgroup(p as u64)?;
    let sylow_order = sylow.order()?;
    let gens = minimal_generators(&sylow, sylow.generators().to_vec())?;
    let s = g.subgroup(gens);
    let images = s.generators().iter().map(|x| rho.image(x)).collect::<Result<Vec<_>>>()?;
    let ms = GModule::new(m.field(), m.dim(), images)?;
    let cs = h2_sylow(&s, &ms)?;
    let double_cosets = double_coset_reps(g, &s, 1 << 20)?.len();
    let dim_h2_stable = stable_subspace(g, &s, m, &cs)?;
    Ok(H2Report {
        p,
        group_order,
        sylow_order,
        module_dim: m.dim(),
        dim_h2_sylow: cs.dim_h2(),
        dim_h2_stable,
        double_cosets,
    })
}
