//! Irreducible modules of bounded dimension, collected from composition
//! factors of tensor products of a faithful module (Burnside–Brauer).

use serde::Serialize;

use super::meataxe::{chop, hom_from_irreducible, MeataxeOptions};
use super::module::GModule;
use crate::error::Result;

#[derive(Clone, Debug)]
pub struct IrreducibleSearch {
    /// Pairwise nonisomorphic irreducibles of dimension ≤ `dmax`, sorted by dimension.
    pub modules: Vec<GModule>,
    pub certificate: CompletenessCertificate,
}

/// How far the search went; completeness is heuristic.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CompletenessCertificate {
    pub level: String,
    pub rounds: usize,
    pub stable_rounds: usize,
    /// Dimensions of every irreducible met, including those above `dmax`.
    pub seen_dims: Vec<usize>,
    pub tensor_cap: usize,
}

#[derive(Clone, Copy, Debug)]
pub struct IrreducibleOptions {
    pub dmax: usize,
    /// Tensor products above this dimension are not formed.
    pub tensor_cap: usize,
    pub max_rounds: usize,
    pub meataxe: MeataxeOptions,
}

impl IrreducibleOptions {
    pub fn new(dmax: usize) -> Self {
        IrreducibleOptions { dmax, tensor_cap: 160, max_rounds: 6, meataxe: MeataxeOptions::default() }
    }
}

fn is_new(found: &[GModule], x: &GModule, opts: &MeataxeOptions) -> Result<bool> {
    for y in found {
        if y.dim() == x.dim() && !hom_from_irreducible(y, x, opts)?.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All irreducibles of dimension ≤ `dmax` reachable from `faithful`.
///
/// Each round chops the tensor products `X ⊗ Y` of a newly found irreducible
/// `X` with every known irreducible `Y` (and the duals of new ones), within
/// the tensor cap. The search stops after two consecutive rounds that add
/// nothing of dimension ≤ `dmax`, or when no new module of any dimension
/// appears.
pub fn all_irreducibles_up_to_dim(faithful: &GModule, opts: &IrreducibleOptions) -> Result<IrreducibleSearch> {
    let mo = &opts.meataxe;
    let mut known: Vec<GModule> = vec![GModule::trivial(faithful.field(), 1, faithful.num_gens())];
    let mut fresh: Vec<GModule> = Vec::new();
    for (x, _) in chop(faithful, mo)? {
        if is_new(&known, &x, mo)? {
            known.push(x.clone());
            fresh.push(x);
        }
    }
    let mut stable = 0;
    let mut rounds = 0;
    while rounds < opts.max_rounds && stable < 2 && !fresh.is_empty() {
        rounds += 1;
        let mut next: Vec<GModule> = Vec::new();
        let mut products: Vec<GModule> = fresh.iter().map(|x| x.dual()).collect();
        for x in &fresh {
            for y in &known {
                if x.dim() * y.dim() <= opts.tensor_cap && x.dim() > 1 && y.dim() > 1 {
                    products.push(x.tensor(y)?);
                }
            }
        }
        let mut small_added = false;
        for p in products {
            for (x, _) in chop(&p, mo)? {
                if is_new(&known, &x, mo)? {
                    small_added |= x.dim() <= opts.dmax;
                    known.push(x.clone());
                    next.push(x);
                }
            }
        }
        stable = if small_added { 0 } else { stable + 1 };
        fresh = next;
    }
    let mut seen_dims: Vec<usize> = known.iter().map(|m| m.dim()).collect();
    seen_dims.sort_unstable();
    let level = if stable >= 2 || fresh.is_empty() { "stable (heuristic)" } else { "incomplete" };
    let mut modules: Vec<GModule> = known.into_iter().filter(|m| m.dim() <= opts.dmax).collect();
    modules.sort_by_key(|m| m.dim());
    Ok(IrreducibleSearch {
        modules,
        certificate: CompletenessCertificate {
            level: level.into(),
            rounds,
            stable_rounds: stable,
            seen_dims,
            tensor_cap: opts.tensor_cap,
        },
    })
}
