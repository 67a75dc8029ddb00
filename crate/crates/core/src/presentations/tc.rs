//! Todd–Coxeter coset enumeration (HLT with lookahead).

use super::pres::Presentation;
use super::word::{Letter, Word};
use crate::error::{Error, Result};
use crate::groupcore::Perm;

pub(crate) const NONE: u32 = u32::MAX;

/// Column layout shared by enumeration and low-index search: one column
/// per generator and one per inverse, except that involutions share a column.
#[derive(Clone, Debug)]
pub(crate) struct Columns {
    pub fwd: Vec<usize>,
    pub bwd: Vec<usize>,
    pub inv: Vec<usize>,
    pub n: usize,
}

impl Columns {
    pub fn new(p: &Presentation) -> Self {
        let invol = p.involutions();
        let (mut fwd, mut bwd, mut inv) = (Vec::new(), Vec::new(), Vec::new());
        let mut n = 0;
        for &is_inv in &invol {
            fwd.push(n);
            if is_inv {
                bwd.push(n);
                inv.push(n);
                n += 1;
            } else {
                bwd.push(n + 1);
                inv.push(n + 1);
                inv.push(n);
                n += 2;
            }
        }
        Columns { fwd, bwd, inv, n }
    }

    pub fn col(&self, l: Letter) -> usize {
        if l.inverse {
            self.bwd[l.gen]
        } else {
            self.fwd[l.gen]
        }
    }

    pub fn word(&self, w: &Word) -> Vec<usize> {
        w.letters().iter().map(|&l| self.col(l)).collect()
    }
}

/// A complete coset table: `table[c][g]` is the coset `c·g` for generator `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    pub subgroup: Vec<Word>,
    table: Vec<Vec<u32>>,
}

impl CosetTable {
    pub(crate) fn from_rows(subgroup: Vec<Word>, table: Vec<Vec<u32>>) -> Self {
        CosetTable { subgroup, table }
    }

    pub fn index(&self) -> usize {
        self.table.len()
    }

    pub fn image(&self, coset: usize, gen: usize) -> usize {
        self.table[coset][gen] as usize
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.table
    }

    /// Permutation induced on cosets by each generator.
    pub fn perms(&self) -> Vec<Perm> {
        let ngens = self.table.first().map_or(0, |r| r.len());
        (0..ngens)
            .map(|g| Perm::from_images(self.table.iter().map(|r| r[g]).collect()).expect("complete table"))
            .collect()
    }

    /// Coset reached from `c` along `w`.
    pub fn trace(&self, c: usize, w: &Word) -> usize {
        let perms = self.perms();
        w.letters().iter().fold(c, |x, l| if l.inverse { perms[l.gen].inverse().image(x) } else { perms[l.gen].image(x) })
    }

    /// Generators of the subgroup fixing coset 0, read off a breadth-first
    /// spanning tree of the coset graph.
    pub fn schreier_generators(&self) -> Vec<Word> {
        let n = self.index();
        let mut rep: Vec<Option<Word>> = vec![None; n];
        rep[0] = Some(Word::empty());
        let mut queue = vec![0usize];
        let mut tree = std::collections::HashSet::new();
        let mut head = 0;
        while head < queue.len() {
            let c = queue[head];
            head += 1;
            for g in 0..self.table[c].len() {
                let d = self.table[c][g] as usize;
                if rep[d].is_none() {
                    rep[d] = Some(rep[c].as_ref().expect("visited").mul(&Word::gen(g)));
                    tree.insert((c, g));
                    queue.push(d);
                }
            }
        }
        let mut gens = Vec::new();
        for c in 0..n {
            for g in 0..self.table[c].len() {
                if tree.contains(&(c, g)) {
                    continue;
                }
                let d = self.table[c][g] as usize;
                let w = rep[c].as_ref().expect("connected").mul(&Word::gen(g)).mul(&rep[d].as_ref().expect("connected").inv());
                if !w.is_empty() && !gens.contains(&w) {
                    gens.push(w);
                }
            }
        }
        gens
    }

    /// Every relator fixes every coset and every subgroup generator fixes coset 0.
    pub fn is_valid_for(&self, p: &Presentation) -> bool {
        let perms = self.perms();
        let one = Perm::identity(self.index());
        p.rels.iter().all(|r| r.evaluate(&perms, &one).is_id())
            && self.subgroup.iter().all(|w| w.evaluate(&perms, &one).image(0) == 0)
    }
}

struct Enumerator {
    cols: Columns,
    table: Vec<u32>,
    parent: Vec<u32>,
    live: usize,
    cap: usize,
}

impl Enumerator {
    fn rows(&self) -> usize {
        self.parent.len()
    }

    #[inline]
    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.cols.n + x]
    }

    #[inline]
    fn set(&mut self, c: u32, x: usize, v: u32) {
        let n = self.cols.n;
        self.table[c as usize * n + x] = v;
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut x = c;
        while self.parent[x as usize] != r {
            let next = self.parent[x as usize];
            self.parent[x as usize] = r;
            x = next;
        }
        r
    }

    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn define(&mut self, c: u32, x: usize) -> Option<u32> {
        if self.rows() >= self.cap {
            return None;
        }
        let d = self.rows() as u32;
        self.parent.push(d);
        self.table.extend(std::iter::repeat(NONE).take(self.cols.n));
        self.live += 1;
        self.set(c, x, d);
        let xi = self.cols.inv[x];
        self.set(d, xi, c);
        Some(d)
    }

    fn merge(&mut self, a: u32, b: u32, queue: &mut Vec<u32>) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (k, l) = if a < b { (a, b) } else { (b, a) };
        self.parent[l as usize] = k;
        self.live -= 1;
        queue.push(l);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let e = queue[i];
            i += 1;
            for x in 0..self.cols.n {
                let f = self.get(e, x);
                if f == NONE {
                    continue;
                }
                let xi = self.cols.inv[x];
                if self.get(f, xi) == e {
                    self.set(f, xi, NONE);
                }
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                let t = self.get(e1, x);
                if t != NONE {
                    self.merge(f1, t, &mut queue);
                } else {
                    let s = self.get(f1, xi);
                    if s != NONE {
                        self.merge(e1, s, &mut queue);
                    } else {
                        self.set(e1, x, f1);
                        self.set(f1, xi, e1);
                    }
                }
            }
        }
    }

    /// Scans `c·w = c`, defining cosets when `define` is set. Returns false on hitting the cap.
    fn scan(&mut self, c: u32, w: &[usize], define: bool) -> bool {
        if w.is_empty() {
            return true;
        }
        let mut f = c;
        let mut i = 0usize;
        let mut b = c;
        let mut j = w.len() as isize - 1;
        loop {
            while (i as isize) <= j {
                let t = self.get(f, w[i]);
                if t == NONE {
                    break;
                }
                f = t;
                i += 1;
            }
            if i as isize > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return true;
            }
            while j >= i as isize {
                let t = self.get(b, self.cols.inv[w[j as usize]]);
                if t == NONE {
                    break;
                }
                b = t;
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return true;
            }
            if j == i as isize {
                self.set(f, w[i], b);
                self.set(b, self.cols.inv[w[i]], f);
                return true;
            }
            if !define {
                return true;
            }
            if self.define(f, w[i]).is_none() {
                return false;
            }
        }
    }

    /// Scans every live coset against every relator without defining; true if any coset died.
    fn lookahead(&mut self, rels: &[Vec<usize>]) -> bool {
        let before = self.live;
        let mut c = 0;
        while c < self.rows() as u32 {
            if self.is_live(c) {
                for r in rels {
                    self.scan(c, r, false);
                    if !self.is_live(c) {
                        break;
                    }
                }
            }
            c += 1;
        }
        self.live < before
    }

    /// Renumbers live cosets in order; returns the new index of `pos`
    /// (the first live coset at or after `pos`).
    fn compact(&mut self, pos: u32) -> u32 {
        let n = self.cols.n;
        let mut map = vec![NONE; self.rows()];
        let mut next = 0u32;
        for c in 0..self.rows() {
            if self.parent[c] == c as u32 {
                map[c] = next;
                next += 1;
            }
        }
        let mut new_pos = next;
        for c in (pos as usize)..self.rows() {
            if map[c] != NONE {
                new_pos = map[c];
                break;
            }
        }
        let mut table = Vec::with_capacity(next as usize * n);
        for c in 0..self.rows() {
            if map[c] == NONE {
                continue;
            }
            for x in 0..n {
                let v = self.table[c * n + x];
                table.push(if v == NONE { NONE } else { map[v as usize] });
            }
        }
        self.table = table;
        self.parent = (0..next).collect();
        self.live = next as usize;
        new_pos
    }
}

/// Enumerates the cosets of `⟨sub⟩` with at most `cap` cosets alive at once.
pub fn todd_coxeter(p: &Presentation, sub: &[Word], cap: usize) -> Result<CosetTable> {
    if cap == 0 {
        return Err(Error::invalid("coset cap must be positive"));
    }
    let cols = Columns::new(p);
    let rels: Vec<Vec<usize>> = p.rels.iter().map(|r| cols.word(&r.cyclic_reduce())).collect();
    let subs: Vec<Vec<usize>> = sub.iter().map(|w| cols.word(w)).collect();
    let mut e = Enumerator { table: vec![NONE; cols.n], cols, parent: vec![0], live: 1, cap };
    let exceeded = || Error::CapExceeded(format!("coset enumeration needs more than {cap} cosets"));
    // Runs a lookahead after the cap is hit; returns the renumbered position.
    let recover = |e: &mut Enumerator, c: u32| -> Result<u32> {
        if !e.lookahead(&rels) {
            return Err(exceeded());
        }
        Ok(e.compact(c))
    };
    for w in &subs {
        while !e.scan(0, w, true) {
            recover(&mut e, 0)?;
        }
    }
    let mut c = 0u32;
    'outer: while (c as usize) < e.rows() {
        if e.is_live(c) {
            for r in &rels {
                if !e.is_live(c) {
                    break;
                }
                if !e.scan(c, r, true) {
                    c = recover(&mut e, c)?;
                    continue 'outer;
                }
            }
            if e.is_live(c) {
                for x in 0..e.cols.n {
                    if e.get(c, x) == NONE && e.define(c, x).is_none() {
                        c = recover(&mut e, c)?;
                        continue 'outer;
                    }
                }
            }
        }
        c += 1;
    }
    e.compact(0);
    if e.table.contains(&NONE) {
        return Err(Error::Internal("coset table left incomplete".into()));
    }
    let table: Vec<Vec<u32>> = (0..e.rows() as u32).map(|c| cols_forward(&e, c)).collect();
    let t = CosetTable::from_rows(sub.to_vec(), table);
    if !t.is_valid_for(p) {
        return Err(Error::Internal("coset table fails a relator".into()));
    }
    Ok(t)
}

fn cols_forward(e: &Enumerator, c: u32) -> Vec<u32> {
    e.cols.fwd.iter().map(|&x| e.get(c, x)).collect()
}
