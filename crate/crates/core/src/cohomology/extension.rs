//! Extensions of a group by an elementary abelian normal subgroup: complement
//! search, minimality, and extensions built from explicit cocycles.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use super::sylow::CocycleSpace;
use crate::error::{Error, Result};
use crate::gf::{vector, Field, FieldRef, Matrix};
use crate::groupcore::{factorize, minimal_generators, Action, Group, Perm};
use crate::modrep::{is_irreducible, GModule, MeataxeOptions};
use crate::presentations::{fox_coefficients, todd_coxeter, Letter, Presentation, Word};

/// Largest `|E|` for the exhaustive minimality scan.
pub const EXHAUSTIVE_MINIMALITY_LIMIT: u64 = 10_000;

/// An elementary abelian `p`-group with coordinates in a fixed basis.
#[derive(Clone, Debug)]
pub struct ElementaryAbelian<E: Action> {
    field: FieldRef,
    basis: Vec<E>,
    coords: HashMap<E, Vec<u32>>,
}

impl<E: Action> ElementaryAbelian<E> {
    pub fn new(k: &Group<E>) -> Result<Self> {
        let order = k.order()?;
        let primes = factorize(order);
        if primes.len() > 1 || !k.is_abelian() {
            return Err(Error::Precondition(format!("kernel of order {order} is not an elementary abelian p-group")));
        }
        let p = primes.first().map_or(2, |&(p, _)| p as u32);
        let field = Field::get(p, 1)?;
        let basis = minimal_generators(k, k.generators().to_vec())?;
        let d = basis.len();
        let mut coords = HashMap::new();
        for code in 0..(p as u64).pow(d as u32) {
            let c = vector::decode(p, d, code);
            let x = basis.iter().zip(&c).fold(k.one().clone(), |acc, (b, &ci)| acc.mul(&b.pow(ci as i64)));
            coords.insert(x, c);
        }
        if coords.len() as u64 != order {
            return Err(Error::Precondition(format!("kernel of order {order} has exponent above {p}")));
        }
        Ok(ElementaryAbelian { field, basis, coords })
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[E] {
        &self.basis
    }

    pub fn coords(&self, x: &E) -> Option<&[u32]> {
        self.coords.get(x).map(Vec::as_slice)
    }

    pub fn element(&self, c: &[u32]) -> E {
        let one = self.coords.keys().next().expect("nonempty").one_like();
        self.basis.iter().zip(c).fold(one, |acc, (b, &ci)| acc.mul(&b.pow(ci as i64)))
    }

    /// Conjugation by `l` on row vectors: row `j` holds the coordinates of `l⁻¹·b_j·l`.
    pub fn action_matrix(&self, l: &E) -> Result<Matrix> {
        let li = l.inv();
        let rows = self
            .basis
            .iter()
            .map(|b| {
                self.coords(&li.mul(b).mul(l))
                    .map(<[u32]>::to_vec)
                    .ok_or_else(|| Error::Precondition("kernel is not normalised".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        if rows.is_empty() {
            return Ok(Matrix::zero(&self.field, 0, 0));
        }
        Matrix::from_rows(&self.field, &rows)
    }

    /// `K` as a module for the group generated by `gens`.
    pub fn module(&self, gens: &[E]) -> Result<GModule> {
        let mats = gens.iter().map(|g| self.action_matrix(g)).collect::<Result<Vec<_>>>()?;
        GModule::new(&self.field, self.dim(), mats)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SplitCertificate<E: Action> {
    pub splits: bool,
    pub p: u32,
    pub kernel_dim: usize,
    pub extension_order: u64,
    pub kernel_order: u64,
    /// Linear system `(equations, unknowns)` for the lift corrections.
    pub system: (usize, usize),
    pub complement_order: Option<u64>,
    pub meets_kernel_trivially: Option<bool>,
    #[serde(skip)]
    pub complement: Option<Vec<E>>,
}

fn check_setup<E: Action>(e: &Group<E>, k: &Group<E>, pres: &Presentation, lifts: &[E]) -> Result<()> {
    if lifts.len() != pres.num_gens() {
        return Err(Error::invalid(format!("{} lifts for {} quotient generators", lifts.len(), pres.num_gens())));
    }
    if !k.is_normalized_by(e.generators())? || !e.contains_group(k)? {
        return Err(Error::Precondition("K is not a normal subgroup of E".into()));
    }
    for l in lifts {
        if !e.contains(l)? {
            return Err(Error::invalid("a lift is not an element of E"));
        }
    }
    let mut gens = lifts.to_vec();
    gens.extend(k.generators().iter().cloned());
    if e.subgroup(gens).order()? != e.order()? {
        return Err(Error::invalid("lifts do not generate E modulo K"));
    }
    Ok(())
}

/// Searches for a complement to `K` by correcting the lifts `l_i` to `l_i·k_i`
/// so that every relator of `pres` holds. `pres` presents `E/K` on the images
/// of `lifts`.
///
/// A solution is certified by the order of the group it generates and by
/// checking that no nonidentity element of `K` lies in it. No solution means
/// no complement exists.
pub fn split_check<E: Action>(e: &Group<E>, k: &Group<E>, pres: &Presentation, lifts: &[E]) -> Result<SplitCertificate<E>> {
    check_setup(e, k, pres, lifts)?;
    let ea = ElementaryAbelian::new(k)?;
    let field = ea.field().clone();
    let f = &*field;
    let d = ea.dim();
    let ng = lifts.len();
    let e_order = e.order()?;
    let k_order = k.order()?;
    let mut cert = SplitCertificate {
        splits: false,
        p: field.p(),
        kernel_dim: d,
        extension_order: e_order,
        kernel_order: k_order,
        system: (pres.rels.len() * d, ng * d),
        complement_order: None,
        meets_kernel_trivially: None,
        complement: None,
    };
    let corrections: Vec<Vec<u32>> = if d == 0 || ng == 0 {
        vec![Vec::new(); ng]
    } else {
        let images = lifts.iter().map(|l| ea.action_matrix(l)).collect::<Result<Vec<_>>>()?;
        let one = e.one().clone();
        let mut a = Matrix::zero(&field, pres.rels.len() * d, ng * d);
        let mut b = vec![0u32; pres.rels.len() * d];
        for (w, rel) in pres.rels.iter().enumerate() {
            let defect = rel.evaluate(lifts, &one);
            let dc = ea
                .coords(&defect)
                .ok_or_else(|| Error::invalid(format!("relator {} does not evaluate into K", w + 1)))?;
            let coeffs = fox_coefficients(rel, &images)?;
            for c in 0..d {
                b[w * d + c] = f.neg(dc[c]);
                for (i, ci) in coeffs.iter().enumerate() {
                    for j in 0..d {
                        a.set(w * d + c, i * d + j, ci.get(j, c));
                    }
                }
            }
        }
        match a.solve_linear(&b)? {
            None => return Ok(cert),
            Some(x) => x.chunks(d).map(<[u32]>::to_vec).collect(),
        }
    };
    let complement: Vec<E> = lifts.iter().zip(&corrections).map(|(l, c)| l.mul(&ea.element(c))).collect();
    let c_group = e.subgroup(complement.clone());
    let c_order = c_group.order()?;
    if c_order * k_order != e_order {
        return Err(Error::Precondition(format!(
            "corrected lifts generate a group of order {c_order}; the presentation does not present E/K"
        )));
    }
    let mut trivial = true;
    for x in ea.coords.keys() {
        if !x.is_one() && c_group.contains(x)? {
            trivial = false;
            break;
        }
    }
    cert.splits = trivial;
    cert.complement_order = Some(c_order);
    cert.meets_kernel_trivially = Some(trivial);
    cert.complement = Some(complement);
    Ok(cert)
}

#[derive(Clone, Debug, Serialize)]
pub struct MinimalityCertificate<E: Action> {
    pub minimal: bool,
    /// `nonsplit` (irreducible kernel decided by the complement search) or `exhaustive`.
    pub method: String,
    pub extension_order: u64,
    pub kernel_order: u64,
    /// Pairs `(x, y)` examined by the exhaustive scan.
    pub pairs_checked: usize,
    /// Order of a proper subgroup that maps onto `E/K`, when one was found.
    pub witness_order: Option<u64>,
    #[serde(skip)]
    pub witness: Option<Vec<E>>,
}

/// Decides whether no proper subgroup of `E` maps onto `E/K`.
///
/// With an elementary abelian `K` that is irreducible under `E`, and a
/// presentation of `E/K` on `lifts`, a proper supplement meets `K` in an
/// `E`-invariant proper subspace, so it is a complement: minimal exactly
/// when there is none. Otherwise, for `|E|` at most
/// [`EXHAUSTIVE_MINIMALITY_LIMIT`], every pair `(x, y)` with `x` a class
/// representative is tested; this is complete when `E/K` is 2-generated.
pub fn minimal_extension_check<E: Action>(
    e: &Group<E>,
    k: &Group<E>,
    quotient: Option<(&Presentation, &[E])>,
    opts: &MeataxeOptions,
) -> Result<MinimalityCertificate<E>> {
    let e_order = e.order()?;
    let k_order = k.order()?;
    if !k.is_normalized_by(e.generators())? || !e.contains_group(k)? {
        return Err(Error::Precondition("K is not a normal subgroup of E".into()));
    }
    let mut cert = MinimalityCertificate {
        minimal: true,
        method: String::new(),
        extension_order: e_order,
        kernel_order: k_order,
        pairs_checked: 0,
        witness_order: None,
        witness: None,
    };
    if k_order == 1 {
        cert.method = "trivial kernel".into();
        return Ok(cert);
    }
    if let (Some((pres, lifts)), Ok(ea)) = (quotient, ElementaryAbelian::new(k)) {
        let module = ea.module(e.generators())?;
        if is_irreducible(&module, opts)?.is_irreducible() {
            let split = split_check(e, k, pres, lifts)?;
            cert.method = "nonsplit".into();
            cert.minimal = !split.splits;
            cert.witness_order = split.complement_order.filter(|_| split.splits);
            cert.witness = split.complement.filter(|_| split.splits);
            return Ok(cert);
        }
    }
    if e_order > EXHAUSTIVE_MINIMALITY_LIMIT {
        return Err(Error::CapExceeded(format!(
            "|E| = {e_order} above {EXHAUSTIVE_MINIMALITY_LIMIT} and the kernel is not an irreducible module with a given presentation"
        )));
    }
    cert.method = "exhaustive".into();
    let elements = e.elements()?;
    let k_elems = k.elements()?;
    // cosets of K
    let mut coset: HashMap<E, u32> = HashMap::with_capacity(elements.len());
    let mut reps: Vec<E> = Vec::new();
    for x in &elements {
        if coset.contains_key(x) {
            continue;
        }
        let c = reps.len() as u32;
        for t in &k_elems {
            coset.insert(t.mul(x), c);
        }
        reps.push(x.clone());
    }
    let q_order = reps.len();
    let image_is_quotient = |x: &E, y: &E| -> bool {
        let mut seen: HashSet<u32> = HashSet::from([0]);
        let mut queue = VecDeque::from([0u32]);
        while let Some(c) = queue.pop_front() {
            for g in [x, y] {
                let nc = coset[&reps[c as usize].mul(g)];
                if seen.insert(nc) {
                    queue.push_back(nc);
                }
            }
        }
        seen.len() == q_order
    };
    let mut any_generating = false;
    for class in e.conjugacy_classes()? {
        let x = &class[0];
        for y in &elements {
            cert.pairs_checked += 1;
            if !image_is_quotient(x, y) {
                continue;
            }
            any_generating = true;
            let h = e.subgroup(vec![x.clone(), y.clone()]);
            let h_order = h.order()?;
            if h_order < e_order {
                cert.minimal = false;
                cert.witness_order = Some(h_order);
                cert.witness = Some(vec![x.clone(), y.clone()]);
                return Ok(cert);
            }
        }
    }
    if !any_generating {
        return Err(Error::Precondition("E/K is not 2-generated; the exhaustive scan is incomplete".into()));
    }
    Ok(cert)
}

/// An extension of `M` by `Q` given by a presentation of `Q`, the action of
/// its generators on `M` and, for each relator `w`, the element `w(x̃)` of `M`.
#[derive(Clone, Debug)]
pub struct ExtensionSpec {
    pub quotient: Presentation,
    pub module: GModule,
    pub tails: Vec<Vec<u32>>,
}

/// A permutation representation of an [`ExtensionSpec`] on the cosets of
/// the trivial subgroup.
#[derive(Clone, Debug)]
pub struct ExtensionInstance {
    pub group: Group<Perm>,
    pub kernel: Group<Perm>,
    /// Images of the quotient generators.
    pub lifts: Vec<Perm>,
    /// Images of the basis of `M`.
    pub module_basis: Vec<Perm>,
    pub order: u64,
}

fn module_word(gen0: usize, v: &[u32]) -> Word {
    Word::new(v.iter().enumerate().flat_map(|(j, &c)| {
        std::iter::repeat(Letter { gen: gen0 + j, inverse: false }).take(c as usize)
    }))
}

impl ExtensionSpec {
    pub fn new(quotient: Presentation, module: GModule, tails: Vec<Vec<u32>>) -> Result<Self> {
        if module.num_gens() != quotient.num_gens() {
            return Err(Error::invalid("one module matrix per quotient generator is required"));
        }
        if module.field().e() != 1 {
            return Err(Error::Precondition("the module must be over a prime field".into()));
        }
        if tails.len() != quotient.rels.len() || tails.iter().any(|t| t.len() != module.dim()) {
            return Err(Error::invalid("one tail of module dimension per relator is required"));
        }
        Ok(ExtensionSpec { quotient, module, tails })
    }

    /// The extension defined by a normalised cocycle on `S`, over the
    /// Schreier presentation of `cs`. Generators lift to `(0, s)`.
    pub fn from_cocycle<E: Action>(cs: &CocycleSpace<E>, alpha: &[u32]) -> Result<Self> {
        if alpha.len() != cs.cochain_len() {
            return Err(Error::DimensionMismatch("cochain has the wrong length".into()));
        }
        let field = cs.field().clone();
        let f = &*field;
        let module = cs.module().clone();
        // model multiplication on (m, x) with x an element index
        let mul = |(m1, x): &(Vec<u32>, usize), (m2, y): &(Vec<u32>, usize)| -> (Vec<u32>, usize) {
            let mut m = cs.action(*y).vec_mul(m1);
            m = vector::add(f, &m, m2);
            m = vector::add(f, &m, cs.value(alpha, *x, *y));
            (m, cs.mul_index(*x, *y))
        };
        let gens = module_generator_indices(cs)?;
        let inverse_of = |i: usize| (0..cs.order()).find(|&j| cs.mul_index(i, j) == 0).expect("group");
        let mut tails = Vec::with_capacity(cs.presentation().rels.len());
        for w in &cs.presentation().rels {
            let mut acc = (vec![0u32; cs.module_dim()], 0usize);
            for l in w.letters() {
                let s = gens[l.gen];
                let factor = if l.inverse {
                    let si = inverse_of(s);
                    (vector::scale(f, cs.value(alpha, s, si), f.neg(1)), si)
                } else {
                    (vec![0u32; cs.module_dim()], s)
                };
                acc = mul(&acc, &factor);
            }
            if acc.1 != 0 {
                return Err(Error::Internal("relator is not trivial in S".into()));
            }
            tails.push(acc.0);
        }
        ExtensionSpec::new(cs.presentation().clone(), module, tails)
    }

    /// Presentation on the quotient generators followed by a basis of `M`.
    pub fn presentation(&self) -> Result<Presentation> {
        let ng = self.quotient.num_gens();
        let d = self.module.dim();
        let p = self.module.field().p();
        let mut names: Vec<String> = self.quotient.gens.clone();
        names.extend((0..d).map(|j| format!("m{j}")));
        let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let mut rels = Vec::new();
        for j in 0..d {
            rels.push(Word::gen(ng + j).pow(p as i64));
            for l in j + 1..d {
                rels.push(Word::gen(ng + j).inv().mul(&Word::gen(ng + l).inv()).mul(&Word::gen(ng + j)).mul(&Word::gen(ng + l)));
            }
        }
        for (i, a) in self.module.generators().iter().enumerate() {
            for (j, row) in a.row_vecs().iter().enumerate() {
                let conj = Word::gen(i).inv().mul(&Word::gen(ng + j)).mul(&Word::gen(i));
                rels.push(conj.mul(&module_word(ng, row).inv()));
            }
        }
        for (w, t) in self.quotient.rels.iter().zip(&self.tails) {
            rels.push(w.mul(&module_word(ng, t).inv()));
        }
        let rels: Vec<Word> = rels.into_iter().filter(|w| !w.is_empty()).collect();
        Presentation::new(&format!("{}.ext", self.quotient.name), &name_refs, rels)
    }

    /// Enumerates the extension and certifies `|E| = |Q|·|M|`.
    pub fn instantiate(&self, cap: usize) -> Result<ExtensionInstance> {
        let q_order = todd_coxeter(&self.quotient, &[], cap)?.index() as u64;
        let m_order = (self.module.field().p() as u64).pow(self.module.dim() as u32);
        let pres = self.presentation()?;
        let table = todd_coxeter(&pres, &[], cap)?;
        let order = table.index() as u64;
        if order != q_order * m_order {
            return Err(Error::Precondition(format!(
                "extension has order {order}, expected {q_order}·{m_order}; the tails are not consistent"
            )));
        }
        let perms = table.perms();
        let ng = self.quotient.num_gens();
        let one = Perm::identity(order as usize);
        let group = Group::new(perms.clone(), one.clone()).with_known_order(order);
        let module_basis = perms[ng..].to_vec();
        let kernel = group.subgroup(module_basis.clone());
        Ok(ExtensionInstance { group, kernel, lifts: perms[..ng].to_vec(), module_basis, order })
    }
}

/// Element index of each generator of `S` in `cs`.
fn module_generator_indices<E: Action>(cs: &CocycleSpace<E>) -> Result<Vec<usize>> {
    cs.generators()
        .iter()
        .map(|g| cs.index_of(g).ok_or_else(|| Error::Internal("generator missing from S".into())))
        .collect()
}
