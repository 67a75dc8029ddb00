//! Base and strong generating sets by Schreier–Sims.
//!
//! A randomised phase sifts product-replacement elements; a deterministic
//! phase then sifts every Schreier generator, so the result is exact
//! regardless of how the random phase went.

use std::collections::HashMap;

use super::element::Action;
use super::random::ProductReplacement;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Level<E> {
    point: u64,
    gens: Vec<E>,
    gens_inv: Vec<E>,
    orbit: Vec<u64>,
    pos: HashMap<u64, u32>,
    /// `orbit[j] = orbit[edge[j].1] ^ gens[edge[j].0]` for `j > 0`.
    edge: Vec<(u32, u32)>,
}

impl<E: Action> Level<E> {
    fn new(point: u64) -> Self {
        let mut pos = HashMap::new();
        pos.insert(point, 0);
        Level { point, gens: Vec::new(), gens_inv: Vec::new(), orbit: vec![point], pos, edge: vec![(0, 0)] }
    }

    pub fn point(&self) -> u64 {
        self.point
    }

    pub fn orbit(&self) -> &[u64] {
        &self.orbit
    }

    pub fn generators(&self) -> &[E] {
        &self.gens
    }

    fn add_gen(&mut self, g: E, cap: u64) -> Result<()> {
        self.gens_inv.push(g.inv());
        self.gens.push(g);
        let new = self.gens.len() - 1;
        let mut frontier = Vec::new();
        for j in 0..self.orbit.len() {
            let img = self.gens[new].act(self.orbit[j]);
            if !self.pos.contains_key(&img) {
                self.push_point(img, new, j, cap)?;
                frontier.push(self.orbit.len() - 1);
            }
        }
        let mut head = 0;
        while head < frontier.len() {
            let j = frontier[head];
            head += 1;
            for s in 0..self.gens.len() {
                let img = self.gens[s].act(self.orbit[j]);
                if !self.pos.contains_key(&img) {
                    self.push_point(img, s, j, cap)?;
                    frontier.push(self.orbit.len() - 1);
                }
            }
        }
        Ok(())
    }

    fn push_point(&mut self, pt: u64, gen: usize, parent: usize, cap: u64) -> Result<()> {
        if self.orbit.len() as u64 >= cap {
            return Err(Error::CapExceeded(format!("orbit longer than {cap}")));
        }
        self.pos.insert(pt, self.orbit.len() as u32);
        self.orbit.push(pt);
        self.edge.push((gen as u32, parent as u32));
        Ok(())
    }

    /// Multiplies `g` on the right by `u⁻¹` where `u` is the transversal
    /// element mapping the base point to its image under `g`.
    fn strip(&self, g: &E) -> Option<E> {
        let mut j = *self.pos.get(&g.act(self.point))? as usize;
        let mut h = g.clone();
        while j != 0 {
            let (s, parent) = self.edge[j];
            h = h.mul(&self.gens_inv[s as usize]);
            j = parent as usize;
        }
        Some(h)
    }

    /// Transversal element `u` with `point^u = orbit[j]`.
    pub fn transversal(&self, j: usize, one: &E) -> E {
        let mut path = Vec::new();
        let mut k = j;
        while k != 0 {
            let (s, parent) = self.edge[k];
            path.push(s as usize);
            k = parent as usize;
        }
        path.iter().rev().fold(one.clone(), |acc, &s| acc.mul(&self.gens[s]))
    }

    pub fn position(&self, pt: u64) -> Option<usize> {
        self.pos.get(&pt).map(|&j| j as usize)
    }
}

#[derive(Clone, Debug)]
pub struct Bsgs<E> {
    levels: Vec<Level<E>>,
    one: E,
}

/// Parameters for [`Bsgs::build`].
#[derive(Clone, Debug)]
pub struct BuildOptions {
    /// Leading base points; the stabiliser of any initial segment can then be read off.
    pub base_prefix: Vec<u64>,
    /// Bound on orbit lengths and on the group order.
    pub cap: u64,
    pub seed: u64,
    /// When the order is known independently, the random phase stops once it is reached.
    pub known_order: Option<u64>,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { base_prefix: Vec::new(), cap: 10_000_000, seed: 1, known_order: None }
    }
}

impl<E: Action> Bsgs<E> {
    pub fn build(gens: &[E], one: &E, opts: &BuildOptions) -> Result<Self> {
        let mut b = Bsgs { levels: Vec::new(), one: one.clone() };
        for &pt in &opts.base_prefix {
            if b.levels.iter().all(|l| l.point != pt) {
                b.levels.push(Level::new(pt));
            }
        }
        let gens: Vec<E> = gens.iter().filter(|g| !g.is_one()).cloned().collect();
        if gens.is_empty() {
            return Ok(b);
        }
        for g in &gens {
            let (h, stop) = b.sift(g, 0);
            if stop < b.levels.len() || !h.is_one() {
                b.insert(h, 0, stop, opts)?;
            }
        }
        let mut pr = ProductReplacement::new(&gens, opts.seed);
        let mut streak = 0;
        while streak < 12 {
            if opts.known_order.is_some_and(|n| b.order_u128() == n as u128) {
                return Ok(b);
            }
            let g = pr.next_element();
            let (h, stop) = b.sift(&g, 0);
            if stop < b.levels.len() || !h.is_one() {
                b.insert(h, 0, stop, opts)?;
                streak = 0;
            } else {
                streak += 1;
            }
        }
        if opts.known_order.is_some_and(|n| b.order_u128() == n as u128) {
            return Ok(b);
        }
        b.verify(opts)?;
        Ok(b)
    }

    /// Adds `h` (which fixes the first `from` base points) as a strong
    /// generator on levels `from..=stop`, extending the base if needed.
    fn insert(&mut self, h: E, from: usize, stop: usize, opts: &BuildOptions) -> Result<()> {
        if stop == self.levels.len() {
            let used: Vec<u64> = self.levels.iter().map(|l| l.point).collect();
            let pt = h
                .base_candidates()
                .into_iter()
                .find(|&p| !used.contains(&p) && h.act(p) != p)
                .ok_or_else(|| Error::Internal("nontrivial element fixes every base candidate".into()))?;
            self.levels.push(Level::new(pt));
        }
        for l in from..=stop {
            self.levels[l].add_gen(h.clone(), opts.cap)?;
        }
        if self.order_u128() > opts.cap as u128 {
            return Err(Error::CapExceeded(format!("group order exceeds {}", opts.cap)));
        }
        Ok(())
    }

    /// Deterministic completion: every Schreier generator of every level sifts.
    fn verify(&mut self, opts: &BuildOptions) -> Result<()> {
        let mut i = self.levels.len();
        'outer: while i > 0 {
            let lvl = i - 1;
            let mut j = 0;
            while j < self.levels[lvl].orbit.len() {
                let u = self.levels[lvl].transversal(j, &self.one);
                for s in 0..self.levels[lvl].gens.len() {
                    let us = u.mul(&self.levels[lvl].gens[s]);
                    let y = self.levels[lvl].strip(&us).expect("orbit is closed");
                    if y.is_one() {
                        continue;
                    }
                    let (h, stop) = self.sift(&y, lvl + 1);
                    if stop < self.levels.len() || !h.is_one() {
                        self.insert(h, lvl + 1, stop, opts)?;
                        i = stop + 1;
                        continue 'outer;
                    }
                }
                j += 1;
            }
            i -= 1;
        }
        Ok(())
    }

    /// Sifts from level `from`; returns the residue and the level where
    /// sifting stopped (`levels().len()` if it passed every level).
    pub fn sift(&self, g: &E, from: usize) -> (E, usize) {
        let mut h = g.clone();
        for (i, l) in self.levels.iter().enumerate().skip(from) {
            match l.strip(&h) {
                Some(next) => h = next,
                None => return (h, i),
            }
        }
        let n = self.levels.len();
        (h, n)
    }

    pub fn contains(&self, g: &E) -> bool {
        let (h, stop) = self.sift(g, 0);
        stop == self.levels.len() && h.is_one()
    }

    pub fn levels(&self) -> &[Level<E>] {
        &self.levels
    }

    pub fn base(&self) -> Vec<u64> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn strong_generators(&self) -> &[E] {
        self.levels.first().map(|l| l.gens.as_slice()).unwrap_or(&[])
    }

    fn order_u128(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn order(&self) -> u64 {
        self.order_u128() as u64
    }

    /// Writes `g` as `u_k ⋯ u_1` over transversals and reports the chosen
    /// orbit positions, level by level from the top. `None` if `g` is not a member.
    pub fn factor(&self, g: &E) -> Option<Vec<usize>> {
        let mut h = g.clone();
        let mut out = Vec::with_capacity(self.levels.len());
        for l in &self.levels {
            let pt = h.act(l.point);
            out.push(l.position(pt)?);
            h = l.strip(&h)?;
        }
        h.is_one().then_some(out)
    }

    /// Element whose transversal coordinates are `idx` (inverse of [`Bsgs::factor`]).
    pub fn element_at(&self, idx: &[usize]) -> E {
        let mut g = self.one.clone();
        for (l, &j) in self.levels.iter().zip(idx).rev() {
            g = g.mul(&l.transversal(j, &self.one));
        }
        g
    }

    /// Uniformly random element given one uniform index per level.
    pub fn random_with(&self, mut pick: impl FnMut(usize) -> usize) -> E {
        let idx: Vec<usize> = self.levels.iter().map(|l| pick(l.orbit.len())).collect();
        self.element_at(&idx)
    }

    /// All elements, in transversal-lexicographic order.
    pub fn elements(&self) -> Vec<E> {
        let mut out = vec![self.one.clone()];
        for l in self.levels.iter().rev() {
            let trans: Vec<E> = (0..l.orbit.len()).map(|j| l.transversal(j, &self.one)).collect();
            let mut next = Vec::with_capacity(out.len() * trans.len());
            for t in &trans {
                for g in &out {
                    next.push(g.mul(t));
                }
            }
            out = next;
        }
        out
    }
}
