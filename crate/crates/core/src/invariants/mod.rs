//! Minimal permutation degree, least dimensions of faithful irreducible
//! GF(2)-modules (with or without an invariant symplectic form), the table
//! check built from them, and checkers for the subdirect-product and
//! multiplicativity inequalities.

mod subdirect;

pub use subdirect::{
    a5, check_multiplicative, check_subdirect, direct_power, direct_product, fiber_product, fiber_product_with, random_instance, sl2_5,
    MultiplicativeReport, SubdirectInstance, SubdirectReport,
};

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Field, Matrix};
use crate::groupcore::{Action, Group, Homomorphism, Perm};
use crate::modrep::{
    all_irreducibles_up_to_dim, invariant_alternating_form, is_irreducible, BilinearForm, GModule, IrreducibleOptions,
    MeataxeOptions,
};
use crate::presentations::{low_index_subgroups, LowIndexOptions, Presentation};

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub enum InvariantKind {
    /// Least degree of a faithful permutation representation.
    #[serde(rename = "P")]
    PermDegree,
    /// Least `n` with a faithful irreducible embedding in `Sp_{2n}(2)`.
    #[serde(rename = "n")]
    Symplectic,
    /// Least `n` with a faithful irreducible embedding in `GL_{2n}(2)`.
    #[serde(rename = "n_prime")]
    Linear,
}

impl InvariantKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "P" | "p" => Ok(InvariantKind::PermDegree),
            "n" => Ok(InvariantKind::Symplectic),
            "nprime" | "n_prime" | "n'" => Ok(InvariantKind::Linear),
            _ => Err(Error::invalid(format!("unknown invariant kind {s:?}; expected P, n or nprime"))),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Witness {
    /// Action on the cosets of a subgroup of least index.
    CosetAction {
        /// Images of each presentation generator on the cosets.
        perms: Vec<Vec<u32>>,
        /// Search nodes visited by the low-index search.
        nodes: u64,
    },
    /// A faithful irreducible module, with its alternating form for the symplectic invariant.
    Module {
        module: String,
        form: Option<Vec<Vec<u32>>>,
        /// Dimensions of the nontrivial irreducibles of dimension at most the bound.
        dims_found: Vec<usize>,
        level: String,
    },
    /// Nothing at or below the bound.
    Absent { dims_found: Vec<usize>, level: String },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct InvariantReport {
    pub group: String,
    pub kind: InvariantKind,
    /// `None` when the value exceeds `bound`.
    pub value: Option<usize>,
    /// Index bound for `P`, module dimension bound for `n` and `n'`.
    pub bound: usize,
    pub witness: Witness,
    pub seed: u64,
    pub elapsed_ms: u64,
}

/// `P(G)` for a simple group: the least index of a proper subgroup, if at most `cap`.
pub fn perm_degree(name: &str, pres: &Presentation, cap: usize, budget: Option<Duration>) -> Result<InvariantReport> {
    let start = Instant::now();
    let opts = LowIndexOptions { deadline: budget.map(|b| start + b) };
    let res = low_index_subgroups(pres, cap, &opts)?;
    if !res.complete {
        return Err(Error::Budget(format!("low-index search for {name} stopped after {} nodes", res.nodes)));
    }
    let best = res.tables.iter().filter(|t| t.index() > 1).min_by_key(|t| t.index());
    let (value, witness) = match best {
        Some(t) => (
            Some(t.index()),
            Witness::CosetAction { perms: t.perms().iter().map(|p| p.images().to_vec()).collect(), nodes: res.nodes },
        ),
        None => (None, Witness::CosetAction { perms: Vec::new(), nodes: res.nodes }),
    };
    Ok(InvariantReport {
        group: name.into(),
        kind: InvariantKind::PermDegree,
        value,
        bound: cap,
        witness,
        seed: 0,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// Nontrivial irreducible GF(2)-modules of dimension at most `dmax`,
/// reached from a faithful module.
pub fn small_irreducibles(faithful: &GModule, dmax: usize, seed: u64) -> Result<(Vec<GModule>, String)> {
    let mut opts = IrreducibleOptions::new(dmax);
    opts.meataxe.seed = seed;
    let search = all_irreducibles_up_to_dim(faithful, &opts)?;
    let modules = search.modules.into_iter().filter(|m| !m.generators().iter().all(Matrix::is_identity)).collect();
    Ok((modules, search.certificate.level))
}

fn is_faithful<E: Action>(g: &Group<E>, m: &GModule) -> Result<bool> {
    let one = Matrix::identity(m.field(), m.dim());
    let hom = Homomorphism::new(g.clone(), Group::new(m.generators().to_vec(), one), m.generators().to_vec())?;
    if !hom.is_well_defined()? {
        return Err(Error::invalid("module generators do not define a representation of the group"));
    }
    hom.is_injective()
}

fn module_invariant<E: Action>(
    name: &str,
    g: &Group<E>,
    faithful: &GModule,
    nmax: usize,
    kind: InvariantKind,
    seed: u64,
) -> Result<InvariantReport> {
    let start = Instant::now();
    if faithful.field().q() != 2 {
        return Err(Error::Precondition("the start module must be over GF(2)".into()));
    }
    let (modules, level) = small_irreducibles(faithful, 2 * nmax, seed)?;
    let dims_found: Vec<usize> = modules.iter().map(GModule::dim).collect();
    let opts = MeataxeOptions { seed, ..MeataxeOptions::default() };
    let mut found = None;
    for m in modules.iter().filter(|m| m.dim() % 2 == 0) {
        if !is_faithful(g, m)? {
            continue;
        }
        let form = match kind {
            InvariantKind::Symplectic => match invariant_alternating_form(m, &opts)? {
                Some(f) => Some(f.gram.row_vecs()),
                None => continue,
            },
            _ => None,
        };
        found = Some((m, form));
        break;
    }
    let (value, witness) = match found {
        Some((m, form)) => (
            Some(m.dim() / 2),
            Witness::Module { module: m.to_text(), form, dims_found, level },
        ),
        None => (None, Witness::Absent { dims_found, level }),
    };
    Ok(InvariantReport {
        group: name.into(),
        kind,
        value,
        bound: 2 * nmax,
        witness,
        seed,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// `n'_G`: least `n ≤ nmax` with a faithful irreducible `2n`-dimensional GF(2)-module.
pub fn n_prime<E: Action>(name: &str, g: &Group<E>, faithful: &GModule, nmax: usize, seed: u64) -> Result<InvariantReport> {
    module_invariant(name, g, faithful, nmax, InvariantKind::Linear, seed)
}

/// `n_G`: as [`n_prime`] but the module must carry an invariant nondegenerate alternating form.
pub fn n_symplectic<E: Action>(name: &str, g: &Group<E>, faithful: &GModule, nmax: usize, seed: u64) -> Result<InvariantReport> {
    module_invariant(name, g, faithful, nmax, InvariantKind::Symplectic, seed)
}

/// Re-checks a report's witness from its serialised data: the coset action
/// against `pres`, or the module against the generators of `g`.
pub fn validate_report<E: Action>(report: &InvariantReport, g: Option<&Group<E>>, pres: Option<&Presentation>) -> Result<bool> {
    match (&report.witness, report.value) {
        (Witness::CosetAction { perms, .. }, Some(v)) => {
            let pres = pres.ok_or_else(|| Error::invalid("a presentation is needed to check a coset action"))?;
            let perms = perms.iter().map(|p| Perm::from_images(p.clone())).collect::<Result<Vec<_>>>()?;
            if perms.len() != pres.num_gens() || perms.iter().any(|p| p.degree() != v) || v > report.bound {
                return Ok(false);
            }
            let one = Perm::identity(v);
            if !pres.rels.iter().all(|w| w.evaluate(&perms, &one).is_id()) {
                return Ok(false);
            }
            Ok(Group::new(perms, one).orbit(0).len() == v)
        }
        (Witness::Module { module, form, .. }, Some(v)) => {
            let g = g.ok_or_else(|| Error::invalid("the group is needed to check a module"))?;
            let m = GModule::parse(module)?;
            if m.dim() != 2 * v || m.dim() > report.bound || m.num_gens() != g.generators().len() {
                return Ok(false);
            }
            if !is_faithful(g, &m)? || !is_irreducible(&m, &MeataxeOptions::default())?.is_irreducible() {
                return Ok(false);
            }
            match (report.kind, form) {
                (InvariantKind::Symplectic, Some(rows)) => {
                    let b = BilinearForm { gram: Matrix::from_rows(m.field(), rows)? };
                    Ok(b.is_alternating() && b.is_nondegenerate() && m.generators().iter().all(|x| b.is_invariant_under(x)))
                }
                (InvariantKind::Symplectic, None) => Ok(false),
                _ => Ok(true),
            }
        }
        (Witness::Absent { dims_found, .. }, None) => Ok(dims_found.iter().all(|&d| d <= report.bound)),
        _ => Ok(false),
    }
}

/// One row of the table of permutation degrees and symplectic dimensions.
#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
pub struct TableRow {
    pub group: &'static str,
    pub p: usize,
    pub n: usize,
    /// Too large for a default run.
    pub extended: bool,
}

pub const TABLE: [TableRow; 4] = [
    TableRow { group: "psl2_17", p: 18, n: 4, extended: false },
    TableRow { group: "psp4_3", p: 27, n: 3, extended: false },
    TableRow { group: "psu3_3", p: 28, n: 3, extended: false },
    TableRow { group: "g2_3", p: 351, n: 7, extended: true },
];

#[derive(Clone, Debug, Serialize)]
pub struct TableRowResult {
    pub group: String,
    pub expected_p: usize,
    pub expected_n: usize,
    pub p: Option<usize>,
    pub n: Option<usize>,
    pub n_prime: Option<usize>,
    /// Nontrivial irreducible GF(2)-module dimensions up to `2·log₂ P`.
    pub small_module_dims: Vec<usize>,
    pub pass: bool,
    pub reports: Vec<InvariantReport>,
}

/// Recomputes `P` and `n` for one row from a presentation and a permutation
/// group on the same generators. Modules are searched up to `2·⌊log₂ P⌋`.
pub fn verify_table_row(
    row: &TableRow,
    pres: &Presentation,
    g: &Group<Perm>,
    budget: Option<Duration>,
    seed: u64,
) -> Result<TableRowResult> {
    let p_rep = perm_degree(row.group, pres, row.p, budget)?;
    let p = p_rep.value;
    let nmax = (p.unwrap_or(row.p) as f64).log2().floor() as usize;
    let f2 = Field::of_order(2)?;
    let faithful = GModule::permutation_module(&f2, g.generators())?;
    let n_rep = n_symplectic(row.group, g, &faithful, nmax, seed)?;
    let np_rep = n_prime(row.group, g, &faithful, nmax, seed)?;
    let small_module_dims = match &n_rep.witness {
        Witness::Module { dims_found, .. } | Witness::Absent { dims_found, .. } => {
            let mut d = dims_found.clone();
            d.dedup();
            d
        }
        Witness::CosetAction { .. } => Vec::new(),
    };
    let pass = p == Some(row.p) && n_rep.value == Some(row.n);
    Ok(TableRowResult {
        group: row.group.into(),
        expected_p: row.p,
        expected_n: row.n,
        p,
        n: n_rep.value,
        n_prime: np_rep.value,
        small_module_dims,
        pass,
        reports: vec![p_rep, n_rep, np_rep],
    })
}

#[cfg(test)]
mod tests;
