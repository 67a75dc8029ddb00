//! Subdirect products of permutation groups on disjoint point sets, and the
//! checks `ℓ₁ + ⋯ + ℓ_r ≥ ℓ` and `n'_{T^ℓ} ≥ n'_T·2^{ℓ−1}`.

use std::collections::HashMap;

use serde::Serialize;

use super::n_prime;
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::groupcore::{Group, Homomorphism, Perm};
use crate::modrep::GModule;

/// `p` acting on `[off, off + p.degree())` inside `[0, total)`.
fn shift(p: &Perm, off: usize, total: usize) -> Perm {
    let mut img: Vec<u32> = (0..total as u32).collect();
    for (i, &x) in p.images().iter().enumerate() {
        img[off + i] = off as u32 + x;
    }
    Perm::from_images(img).expect("shifted permutation")
}

fn restrict(p: &Perm, off: usize, deg: usize) -> Result<Perm> {
    let img: Vec<u32> = p.images()[off..off + deg].iter().map(|&x| x.wrapping_sub(off as u32)).collect();
    Perm::from_images(img).map_err(|_| Error::Precondition("element does not preserve the factor's points".into()))
}

fn concat(parts: &[(&Perm, usize)], total: usize) -> Perm {
    let mut img: Vec<u32> = (0..total as u32).collect();
    for (p, off) in parts {
        for (i, &x) in p.images().iter().enumerate() {
            img[off + i] = *off as u32 + x;
        }
    }
    Perm::from_images(img).expect("concatenated permutation")
}

fn degree(g: &Group<Perm>) -> usize {
    g.one().degree()
}

/// Direct product on the disjoint union of the point sets, with the offset of each factor.
pub fn direct_product(groups: &[Group<Perm>]) -> (Group<Perm>, Vec<usize>) {
    let mut offsets = Vec::with_capacity(groups.len());
    let mut total = 0;
    for g in groups {
        offsets.push(total);
        total += degree(g);
    }
    let gens = groups
        .iter()
        .zip(&offsets)
        .flat_map(|(g, &off)| g.generators().iter().map(move |x| shift(x, off, total)))
        .collect();
    (Group::new(gens, Perm::identity(total)), offsets)
}

pub fn direct_power(t: &Group<Perm>, ell: usize) -> Group<Perm> {
    direct_product(&vec![t.clone(); ell]).0
}

/// `H ≤ H₁ × ⋯ × H_r` projecting onto every factor, with a soluble normal subgroup `N`.
#[derive(Clone, Debug)]
pub struct SubdirectInstance {
    pub factors: Vec<Group<Perm>>,
    pub offsets: Vec<usize>,
    pub h: Group<Perm>,
    pub n: Group<Perm>,
}

impl SubdirectInstance {
    /// Checks that the projections are onto and that `N` is soluble and normal in `H`.
    pub fn new(factors: Vec<Group<Perm>>, h: Group<Perm>, n: Group<Perm>) -> Result<Self> {
        let (_, offsets) = direct_product(&factors);
        let total: usize = factors.iter().map(degree).sum();
        if degree(&h) != total || degree(&n) != total {
            return Err(Error::DimensionMismatch(format!("H must act on the {total} points of the factors")));
        }
        let inst = SubdirectInstance { factors, offsets, h, n };
        for i in 0..inst.factors.len() {
            let p = inst.project(i, &inst.h)?;
            if !inst.factors[i].contains_group(&p)? || p.order()? != inst.factors[i].order()? {
                return Err(Error::Precondition(format!("projection to factor {} is not onto", i + 1)));
            }
        }
        if !inst.h.contains_group(&inst.n)? || !inst.n.is_normalized_by(inst.h.generators())? {
            return Err(Error::Precondition("N is not a normal subgroup of H".into()));
        }
        if !inst.n.is_soluble()? {
            return Err(Error::Precondition("N is not soluble".into()));
        }
        Ok(inst)
    }

    pub fn projection(&self, i: usize, x: &Perm) -> Result<Perm> {
        restrict(x, self.offsets[i], degree(&self.factors[i]))
    }

    /// Image of a subgroup of `H` in factor `i`.
    pub fn project(&self, i: usize, g: &Group<Perm>) -> Result<Group<Perm>> {
        let gens = g.generators().iter().map(|x| self.projection(i, x)).collect::<Result<Vec<_>>>()?;
        Ok(Group::new(gens, Perm::identity(degree(&self.factors[i]))))
    }
}

/// Action of elements of `g` on the right cosets of a normal subgroup `r`.
struct CosetAction {
    r_elems: Vec<Perm>,
    reps: Vec<Perm>,
    index: HashMap<Perm, usize>,
}

impl CosetAction {
    fn new(g: &Group<Perm>, r: &Group<Perm>) -> Result<Self> {
        let r_elems = r.elements()?;
        let mut act = CosetAction { r_elems, reps: vec![g.one().clone()], index: HashMap::new() };
        let k = act.key(g.one());
        act.index.insert(k, 0);
        let mut i = 0;
        while i < act.reps.len() {
            for x in g.generators() {
                let y = act.reps[i].compose(x);
                let ky = act.key(&y);
                if !act.index.contains_key(&ky) {
                    act.index.insert(ky, act.reps.len());
                    act.reps.push(y);
                }
            }
            i += 1;
        }
        Ok(act)
    }

    fn key(&self, y: &Perm) -> Perm {
        self.r_elems.iter().map(|t| t.compose(y)).min().expect("nonempty")
    }

    fn image(&self, x: &Perm) -> Perm {
        let img = self.reps.iter().map(|c| self.index[&self.key(&c.compose(x))] as u32).collect();
        Perm::from_images(img).expect("coset action")
    }
}

/// `{(a, b) : q₁(a) = q₂(b)}` for surjections onto one group, with `N` the
/// intersection with the product of the soluble radicals of the factors.
pub fn fiber_product(
    h1: &Group<Perm>,
    h2: &Group<Perm>,
    q1: &Homomorphism<Perm, Perm>,
    q2: &Homomorphism<Perm, Perm>,
) -> Result<SubdirectInstance> {
    fiber_product_with(h1, h2, q1, q2, None)
}

/// Checks that `rho` is a homomorphism from `h` whose kernel is the soluble
/// radical: the kernel is soluble and the image has no soluble normal subgroup.
fn check_radical_map(h: &Group<Perm>, rho: &Homomorphism<Perm, Perm>) -> Result<()> {
    if rho.source().generators() != h.generators() || !rho.is_well_defined()? {
        return Err(Error::invalid("radical quotient maps must be homomorphisms on the factor's generators"));
    }
    if !rho.kernel()?.is_soluble()? || rho.image_group().soluble_radical()?.order()? != 1 {
        return Err(Error::Precondition("a radical quotient map must have the soluble radical as kernel".into()));
    }
    Ok(())
}

/// As [`fiber_product`], optionally given maps `Hᵢ → Hᵢ/Rad(Hᵢ)` of small
/// degree; otherwise `Hᵢ/Rad(Hᵢ)` acts on the cosets of the radical.
pub fn fiber_product_with(
    h1: &Group<Perm>,
    h2: &Group<Perm>,
    q1: &Homomorphism<Perm, Perm>,
    q2: &Homomorphism<Perm, Perm>,
    radical_maps: Option<[&Homomorphism<Perm, Perm>; 2]>,
) -> Result<SubdirectInstance> {
    if q1.source().generators() != h1.generators() || q2.source().generators() != h2.generators() {
        return Err(Error::invalid("each map must be defined on the generators of its factor"));
    }
    if q1.target().generators() != q2.target().generators() {
        return Err(Error::invalid("the two maps must have the same target group"));
    }
    for q in [q1, q2] {
        if !q.is_well_defined()? || q.image_group().order()? != q.target().order()? {
            return Err(Error::Precondition("maps must be surjective homomorphisms".into()));
        }
    }
    let (_, offsets) = direct_product(&[h1.clone(), h2.clone()]);
    let total = degree(h1) + degree(h2);
    let mut gens = Vec::new();
    for a in h1.generators() {
        let b = q2.preimage(&q1.image(a)?)?.ok_or_else(|| Error::Internal("no preimage in the second factor".into()))?;
        gens.push(concat(&[(a, 0), (&b, offsets[1])], total));
    }
    for k in q2.kernel()?.generators() {
        gens.push(shift(k, offsets[1], total));
    }
    let h = Group::new(gens, Perm::identity(total));

    // images of H's generators in H₁/R₁ × H₂/R₂, each factor as a permutation group
    let factor_images: Vec<Box<dyn Fn(&Perm) -> Result<Perm>>> = match radical_maps {
        Some(maps) => {
            check_radical_map(h1, maps[0])?;
            check_radical_map(h2, maps[1])?;
            let [r1, r2] = [maps[0].clone(), maps[1].clone()];
            vec![Box::new(move |a| r1.image(a)), Box::new(move |b| r2.image(b))]
        }
        None => {
            let a1 = CosetAction::new(h1, &h1.soluble_radical()?)?;
            let a2 = CosetAction::new(h2, &h2.soluble_radical()?)?;
            vec![Box::new(move |a| Ok(a1.image(a))), Box::new(move |b| Ok(a2.image(b)))]
        }
    };
    let parts: Vec<(Perm, Perm)> = h
        .generators()
        .iter()
        .map(|x| Ok((factor_images[0](&restrict(x, 0, degree(h1))?)?, factor_images[1](&restrict(x, offsets[1], degree(h2))?)?)))
        .collect::<Result<_>>()?;
    let sizes = match parts.first() {
        Some((a, b)) => [a.degree(), b.degree()],
        None => [0, 0],
    };
    let target_images: Vec<Perm> =
        parts.iter().map(|(a, b)| concat(&[(a, 0), (b, sizes[0])], sizes[0] + sizes[1])).collect();
    let target = Group::new(target_images.clone(), Perm::identity(sizes[0] + sizes[1]));
    let n = Homomorphism::new(h.clone(), target, target_images)?.kernel()?;
    SubdirectInstance::new(vec![h1.clone(), h2.clone()], h, n)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SubdirectReport {
    /// `|T|`, recovered from `|H/N|`.
    pub simple_order: u64,
    pub ell: u32,
    pub ells: Vec<u32>,
    pub h_order: u64,
    pub n_order: u64,
    pub holds: bool,
}

/// `k` with `t^k = n`, if any.
fn log_exact(n: u64, t: u64) -> Option<u32> {
    let mut k = 0;
    let mut x = n;
    while x > 1 {
        if x % t != 0 {
            return None;
        }
        x /= t;
        k += 1;
    }
    Some(k)
}

/// Largest `k` and `t ≥ 60` with `t^k = n`.
fn perfect_power(n: u64) -> Option<(u64, u32)> {
    (1..=64u32).rev().find_map(|k| {
        let r = (n as f64).powf(1.0 / k as f64).round() as u64;
        (r.saturating_sub(1)..=r + 1).find(|&t| t >= 60 && t.checked_pow(k) == Some(n)).map(|t| (t, k))
    })
}

/// Computes `ℓ` from `H/N ≅ T^ℓ` and each `ℓ_i` from `H_i/Nπ_i ≅ T^{ℓ_i}`,
/// recognising powers of `T` by order alone.
pub fn check_subdirect(inst: &SubdirectInstance) -> Result<SubdirectReport> {
    let h_order = inst.h.order()?;
    let n_order = inst.n.order()?;
    let q = h_order / n_order;
    let (simple_order, ell) = if q == 1 {
        (1, 0)
    } else {
        perfect_power(q).ok_or_else(|| Error::Precondition(format!("|H/N| = {q} is not a power of a simple group order")))?
    };
    let mut ells = Vec::with_capacity(inst.factors.len());
    for i in 0..inst.factors.len() {
        let qi = inst.factors[i].order()? / inst.project(i, &inst.n)?.order()?;
        let li = if simple_order == 1 {
            (qi == 1).then_some(0)
        } else {
            log_exact(qi, simple_order)
        }
        .ok_or_else(|| Error::Precondition(format!("quotient of factor {} has order {qi}, not a power of {simple_order}", i + 1)))?;
        ells.push(li);
    }
    let holds = ells.iter().sum::<u32>() >= ell;
    Ok(SubdirectReport { simple_order, ell, ells, h_order, n_order, holds })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct MultiplicativeReport {
    pub ell: usize,
    pub n_t: usize,
    pub n_power: usize,
    /// `n'_T·2^{ℓ−1}`.
    pub bound: usize,
    pub holds: bool,
    pub equality: bool,
}

/// Computes `n'_{T^ℓ}` (searching `n ≤ nmax`) and compares it with
/// `n'_T·2^{ℓ−1}`. `claimed_n_t` replaces the computed `n'_T`.
pub fn check_multiplicative(
    t: &Group<Perm>,
    ell: usize,
    nmax: usize,
    claimed_n_t: Option<usize>,
    seed: u64,
) -> Result<MultiplicativeReport> {
    if ell == 0 {
        return Err(Error::invalid("ℓ must be positive"));
    }
    let f2 = Field::of_order(2)?;
    let n_t = match claimed_n_t {
        Some(v) => v,
        None => {
            let start = GModule::permutation_module(&f2, t.generators())?;
            n_prime("T", t, &start, nmax, seed)?
                .value
                .ok_or_else(|| Error::Budget(format!("n'_T exceeds {nmax}")))?
        }
    };
    let power = direct_power(t, ell);
    let start = GModule::permutation_module(&f2, power.generators())?;
    let n_power = n_prime("T^l", &power, &start, nmax, seed)?
        .value
        .ok_or_else(|| Error::Budget(format!("n' of the power exceeds {nmax}")))?;
    let bound = n_t << (ell - 1);
    Ok(MultiplicativeReport { ell, n_t, n_power, bound, holds: n_power >= bound, equality: n_power == bound })
}

fn perm_group(n: usize, gens: &[&str]) -> Group<Perm> {
    Group::new(gens.iter().map(|s| Perm::parse_cycles(n, s).expect("cycle notation")).collect(), Perm::identity(n))
}

/// `A₅` on five points, generated by an involution and a 3-cycle with product of order 5.
pub fn a5() -> Group<Perm> {
    perm_group(5, &["(0,1)(2,3)", "(0,2,4)"])
}

/// `SL₂(5)` on 24 points; its generators map onto those of [`a5`].
pub fn sl2_5() -> Group<Perm> {
    perm_group(
        24,
        &[
            "(0,19,3,4)(1,14,2,9)(5,20,23,8)(6,15,22,13)(7,10,21,18)(11,16,17,12)",
            "(0,20,19,3,8,4)(1,16,14,2,12,9)(5,21,15,23,7,13)(6,17,10,22,11,18)",
        ],
    )
}

/// Soluble groups of order at most 16.
fn decoration(i: usize) -> Group<Perm> {
    match i {
        0 => perm_group(1, &[]),
        1 => perm_group(2, &["(0,1)"]),
        2 => perm_group(3, &["(0,1,2)"]),
        3 => perm_group(4, &["(0,1,2,3)"]),
        4 => perm_group(4, &["(0,1)", "(2,3)"]),
        5 => perm_group(3, &["(0,1)", "(0,1,2)"]),
        6 => perm_group(4, &["(0,1,2,3)", "(0,2)"]),
        7 => perm_group(8, &["(0,1,2,3)(4,5,6,7)", "(0,4,2,6)(1,7,3,5)"]),
        8 => perm_group(6, &["(0,1)", "(2,3)", "(4,5)"]),
        9 => perm_group(4, &["(0,1)(2,3)", "(0,1,2)"]),
        10 => perm_group(5, &["(0,1,2,3,4)", "(1,4)(2,3)"]),
        11 => perm_group(6, &["(0,1,2,3)", "(4,5)"]),
        _ => perm_group(6, &["(0,1,2)", "(3,4,5)"]),
    }
}

const DECORATIONS: usize = 13;

struct Factor {
    group: Group<Perm>,
    quotient: Homomorphism<Perm, Perm>,
    /// Onto `S/Z(S)`, killing `D`: its kernel is the soluble radical.
    radical: Homomorphism<Perm, Perm>,
}

/// A factor `S × D` with its map onto `A₅` (or onto the trivial group).
fn factor(simple: usize, dec: usize, twist: bool, onto_a5: bool) -> Result<Factor> {
    let a5g = a5();
    let (s, top): (Group<Perm>, Group<Perm>) = match simple {
        0 => (a5g.clone(), a5g.clone()),
        1 => (sl2_5(), a5g.clone()),
        _ => {
            let (g, _) = direct_product(&[a5g.clone(), a5g.clone()]);
            (g.clone(), g)
        }
    };
    let d = decoration(dec);
    let (g, _) = direct_product(&[s, d.clone()]);
    let kill_d = |images: &[Perm], deg: usize| {
        let mut v = images.to_vec();
        v.extend(d.generators().iter().map(|_| Perm::identity(deg)));
        v
    };
    let radical = Homomorphism::new(g.clone(), top.clone(), kill_d(top.generators(), degree(&top)))?;
    // onto A₅ through the first simple factor
    let mut s_images = a5g.generators().to_vec();
    if simple == 2 {
        s_images.extend(a5g.generators().iter().map(|_| Perm::identity(5)));
    }
    let mut images = kill_d(&s_images, 5);
    let outer = Perm::parse_cycles(5, "(0,1)")?;
    if twist {
        images = images.iter().map(|x| outer.inverse().compose(x).compose(&outer)).collect();
    }
    let quotient = if onto_a5 {
        Homomorphism::new(g.clone(), a5g, images)?
    } else {
        let n = images.len();
        Homomorphism::new(g.clone(), perm_group(1, &[]), vec![Perm::identity(1); n])?
    };
    Ok(Factor { group: g, quotient, radical })
}

/// A seeded fiber product of two groups `S × D` over `A₅` or over the
/// trivial group, with `S ∈ {A₅, SL₂(5), A₅²}` and `D` soluble of order at most 16.
pub fn random_instance(seed: u64) -> Result<SubdirectInstance> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let onto_a5 = rng.gen_bool(0.6);
    let pick = |rng: &mut rand_chacha::ChaCha8Rng| {
        let simple = match rng.gen_range(0..10) {
            0..=4 => 0,
            5..=8 => 1,
            _ => 2,
        };
        let dec = if simple == 2 { 0 } else { rng.gen_range(0..DECORATIONS) };
        (simple, dec, rng.gen_bool(0.3))
    };
    let (s1, d1, t1) = pick(&mut rng);
    let (s2, d2, t2) = pick(&mut rng);
    let f1 = factor(s1, d1, t1, onto_a5)?;
    let f2 = factor(s2, d2, t2, onto_a5)?;
    fiber_product_with(&f1.group, &f2.group, &f1.quotient, &f2.quotient, Some([&f1.radical, &f2.radical]))
}
