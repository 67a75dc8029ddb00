use std::collections::{HashMap, HashSet, VecDeque};

use once_cell::sync::OnceCell;

use super::bsgs::{Bsgs, BuildOptions};
use super::element::Action;
use super::random::ProductReplacement;
use crate::error::{Error, Result};

/// Default bound on group orders and orbit lengths.
pub const DEFAULT_CAP: u64 = 10_000_000;

/// A finitely generated group of elements of one kind, with a lazily built BSGS.
#[derive(Clone, Debug)]
pub struct Group<E: Action> {
    gens: Vec<E>,
    one: E,
    cap: u64,
    seed: u64,
    known_order: Option<u64>,
    bsgs: OnceCell<Bsgs<E>>,
}

impl<E: Action> Group<E> {
    pub fn new(gens: Vec<E>, one: E) -> Self {
        Group { gens, one, cap: DEFAULT_CAP, seed: 1, known_order: None, bsgs: OnceCell::new() }
    }

    /// Group generated by a nonempty list.
    pub fn from_gens(gens: Vec<E>) -> Result<Self> {
        let one = gens.first().ok_or_else(|| Error::invalid("empty generator list"))?.one_like();
        Ok(Group::new(gens, one))
    }

    pub fn trivial(one: E) -> Self {
        Group::new(Vec::new(), one)
    }

    pub fn with_cap(mut self, cap: u64) -> Self {
        self.cap = cap;
        self.bsgs = OnceCell::new();
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// An order known by independent means, used to end the randomised phase early.
    pub fn with_known_order(mut self, n: u64) -> Self {
        self.known_order = Some(n);
        self
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn generators(&self) -> &[E] {
        &self.gens
    }

    pub fn one(&self) -> &E {
        &self.one
    }

    /// Subgroup with the same cap and seed.
    pub fn subgroup(&self, gens: Vec<E>) -> Group<E> {
        Group { gens, one: self.one.clone(), cap: self.cap, seed: self.seed, known_order: None, bsgs: OnceCell::new() }
    }

    pub fn bsgs(&self) -> Result<&Bsgs<E>> {
        self.bsgs.get_or_try_init(|| self.build_bsgs(&[]))
    }

    /// A BSGS whose base starts with `prefix` (not cached).
    pub fn bsgs_with_prefix(&self, prefix: &[u64]) -> Result<Bsgs<E>> {
        self.build_bsgs(prefix)
    }

    fn build_bsgs(&self, prefix: &[u64]) -> Result<Bsgs<E>> {
        let opts =
            BuildOptions { base_prefix: prefix.to_vec(), cap: self.cap, seed: self.seed, known_order: self.known_order };
        Bsgs::build(&self.gens, &self.one, &opts)
    }

    pub fn order(&self) -> Result<u64> {
        Ok(self.bsgs()?.order())
    }

    pub fn contains(&self, x: &E) -> Result<bool> {
        Ok(self.bsgs()?.contains(x))
    }

    pub fn is_trivial(&self) -> bool {
        self.gens.iter().all(|g| g.is_one())
    }

    pub fn is_abelian(&self) -> bool {
        self.gens.iter().enumerate().all(|(i, a)| self.gens[i + 1..].iter().all(|b| a.mul(b) == b.mul(a)))
    }

    /// Whether every generator of `h` lies in `self`.
    pub fn contains_group(&self, h: &Group<E>) -> Result<bool> {
        for g in h.generators() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether `self` is normalised by every generator of `by`.
    pub fn is_normalized_by(&self, by: &[E]) -> Result<bool> {
        for n in &self.gens {
            for g in by {
                if !self.contains(&n.conj(g))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Product-replacement element, reproducible from `seed`.
    pub fn random_element(&self, seed: u64) -> E {
        if self.gens.is_empty() {
            return self.one.clone();
        }
        ProductReplacement::new(&self.gens, seed).next_element()
    }

    /// Stream of product-replacement elements.
    pub fn random_stream(&self, seed: u64) -> impl Iterator<Item = E> {
        let mut pr = (!self.gens.is_empty()).then(|| ProductReplacement::new(&self.gens, seed));
        let one = self.one.clone();
        std::iter::from_fn(move || Some(pr.as_mut().map_or_else(|| one.clone(), |p| p.next_element())))
    }

    /// All elements via the BSGS.
    pub fn elements(&self) -> Result<Vec<E>> {
        Ok(self.bsgs()?.elements())
    }

    /// Smallest normal subgroup containing `seeds`.
    pub fn normal_closure(&self, seeds: &[E]) -> Result<Group<E>> {
        let mut n = self.subgroup(seeds.iter().filter(|s| !s.is_one()).cloned().collect());
        let mut queue: VecDeque<E> = n.gens.iter().cloned().collect();
        while let Some(x) = queue.pop_front() {
            for g in &self.gens {
                let y = x.conj(g);
                if !n.contains(&y)? {
                    let mut gens = n.gens.clone();
                    gens.push(y.clone());
                    n = self.subgroup(gens);
                    queue.push_back(y);
                }
            }
        }
        Ok(n)
    }

    pub fn derived_subgroup(&self) -> Result<Group<E>> {
        let mut comms = Vec::new();
        for (i, a) in self.gens.iter().enumerate() {
            for b in &self.gens[i + 1..] {
                let c = a.comm(b);
                if !c.is_one() {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(&comms)
    }

    /// Derived series down to its terminal member.
    pub fn derived_series(&self) -> Result<Vec<Group<E>>> {
        let mut series = vec![self.clone()];
        loop {
            let last = series.last().expect("nonempty");
            let d = last.derived_subgroup()?;
            if d.order()? == last.order()? {
                return Ok(series);
            }
            let trivial = d.order()? == 1;
            series.push(d);
            if trivial {
                return Ok(series);
            }
        }
    }

    /// Lower central series `γ₁ = G, γ_{i+1} = [γ_i, G]` until it stabilises.
    pub fn lower_central_series(&self) -> Result<Vec<Group<E>>> {
        let mut series = vec![self.clone()];
        loop {
            let last = series.last().expect("nonempty");
            // [N, G] for N ⊴ G is the normal closure of generator commutators
            let comms: Vec<E> = last
                .gens
                .iter()
                .flat_map(|x| self.gens.iter().map(move |g| x.comm(g)))
                .filter(|c| !c.is_one())
                .collect();
            let next = self.normal_closure(&comms)?;
            if next.order()? == last.order()? {
                return Ok(series);
            }
            let trivial = next.order()? == 1;
            series.push(next);
            if trivial {
                return Ok(series);
            }
        }
    }

    pub fn is_nilpotent(&self) -> Result<bool> {
        Ok(self.lower_central_series()?.last().expect("nonempty").order()? == 1)
    }

    pub fn is_soluble(&self) -> Result<bool> {
        Ok(self.derived_series()?.last().expect("nonempty").order()? == 1)
    }

    pub fn center(&self) -> Result<Group<E>> {
        let gens: Vec<E> = self
            .elements()?
            .into_iter()
            .filter(|x| !x.is_one() && self.gens.iter().all(|g| x.mul(g) == g.mul(x)))
            .collect();
        Ok(self.subgroup(minimal_generators(self, gens)?))
    }

    /// Conjugacy classes of an enumerable group, each listed with its representative first.
    pub fn conjugacy_classes(&self) -> Result<Vec<Vec<E>>> {
        let elems = self.elements()?;
        let mut seen: HashSet<E> = HashSet::with_capacity(elems.len());
        let mut classes = Vec::new();
        for x in elems {
            if seen.contains(&x) {
                continue;
            }
            let mut class = vec![x.clone()];
            seen.insert(x);
            let mut head = 0;
            while head < class.len() {
                let y = class[head].clone();
                head += 1;
                for g in &self.gens {
                    let z = y.conj(g);
                    if seen.insert(z.clone()) {
                        class.push(z);
                    }
                }
            }
            classes.push(class);
        }
        Ok(classes)
    }

    /// Largest soluble normal subgroup: grows `R` by normal closures of
    /// prime-power-order class representatives while the result stays soluble.
    pub fn soluble_radical(&self) -> Result<Group<E>> {
        let reps: Vec<E> = self
            .conjugacy_classes()?
            .into_iter()
            .map(|c| c[0].clone())
            .filter(|x| !x.is_one() && is_prime_power(x.order_capped(self.cap).unwrap_or(0)))
            .collect();
        let mut r = self.subgroup(Vec::new());
        loop {
            let mut grew = false;
            for x in &reps {
                if r.contains(x)? {
                    continue;
                }
                let mut seeds = r.gens.clone();
                seeds.push(x.clone());
                let cand = self.normal_closure(&seeds)?;
                if cand.is_soluble()? {
                    r = cand;
                    grew = true;
                }
            }
            if !grew {
                return Ok(r);
            }
        }
    }

    /// A Sylow `p`-subgroup, grown one `p`-element at a time inside the
    /// normaliser of the current `p`-subgroup (found by enumeration).
    pub fn sylow_subgroup(&self, p: u64) -> Result<Group<E>> {
        let n = self.order()?;
        let mut target = 1u64;
        let mut m = n;
        while m % p == 0 {
            m /= p;
            target *= p;
        }
        let elems = self.elements()?;
        let mut sylow = self.subgroup(Vec::new());
        while sylow.order()? < target {
            let mut found = None;
            for x in &elems {
                let ord = x.order_capped(n).unwrap_or(0);
                if ord <= 1 || !is_power_of(ord, p) || sylow.contains(x)? {
                    continue;
                }
                if sylow.is_normalized_by(std::slice::from_ref(x))? {
                    found = Some(x.clone());
                    break;
                }
            }
            let x = found.ok_or_else(|| Error::Internal("no p-element normalises a non-Sylow p-subgroup".into()))?;
            let mut gens = sylow.gens.clone();
            gens.push(x);
            sylow = self.subgroup(gens);
        }
        Ok(sylow)
    }

    /// Orbit of `pt` under the generators, in BFS order.
    pub fn orbit(&self, pt: u64) -> Vec<u64> {
        let mut seen = HashSet::from([pt]);
        let mut orbit = vec![pt];
        let mut head = 0;
        while head < orbit.len() {
            let x = orbit[head];
            head += 1;
            for g in &self.gens {
                let y = g.act(x);
                if seen.insert(y) {
                    orbit.push(y);
                }
            }
        }
        orbit
    }
}

/// Drops generators already in the span of the earlier ones.
pub fn minimal_generators<E: Action>(parent: &Group<E>, gens: Vec<E>) -> Result<Vec<E>> {
    let mut out: Vec<E> = Vec::new();
    for g in gens {
        if !parent.subgroup(out.clone()).contains(&g)? {
            out.push(g);
        }
    }
    Ok(out)
}

/// Elements of `⟨gens⟩` by breadth-first closure; the naive reference used by tests.
pub fn naive_closure<E: Action>(gens: &[E], one: &E, cap: usize) -> Result<Vec<E>> {
    let mut index: HashMap<E, ()> = HashMap::from([(one.clone(), ())]);
    let mut out = vec![one.clone()];
    let mut head = 0;
    while head < out.len() {
        let x = out[head].clone();
        head += 1;
        for g in gens {
            let y = x.mul(g);
            if !index.contains_key(&y) {
                if out.len() >= cap {
                    return Err(Error::CapExceeded(format!("closure larger than {cap}")));
                }
                index.insert(y.clone(), ());
                out.push(y);
            }
        }
    }
    Ok(out)
}

pub fn is_power_of(mut n: u64, p: u64) -> bool {
    if n == 0 {
        return false;
    }
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

pub fn is_prime_power(n: u64) -> bool {
    n > 1 && crate::gf::prime_power(n).is_some()
}

/// Prime factorisation as (prime, exponent) pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut e = 0;
        while n % d == 0 {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}
