//! Subgroups of small index up to conjugacy, by backtracking over partial
//! coset tables in standard form. Each assignment is followed by Felsch-style
//! deduction through every rotation of every relator; a partial table is
//! pruned when re-basing it at another coset yields a smaller table.

use std::time::Instant;

use super::pres::Presentation;
use super::tc::{Columns, CosetTable, NONE};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Default)]
pub struct LowIndexOptions {
    /// Abort the search (with `complete = false`) after this instant.
    pub deadline: Option<Instant>,
}

#[derive(Clone, Debug)]
pub struct LowIndexResult {
    /// One table per conjugacy class of subgroups, coset 0 being the subgroup.
    pub tables: Vec<CosetTable>,
    pub complete: bool,
    /// Search-tree nodes visited.
    pub nodes: u64,
}

impl LowIndexResult {
    pub fn indices(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.tables.iter().map(|t| t.index()).collect();
        v.sort_unstable();
        v
    }
}

struct Search<'a> {
    cols: Columns,
    /// Relator rotations (and their inverses) grouped by first column.
    starts: Vec<Vec<Vec<usize>>>,
    rels: Vec<Vec<usize>>,
    bound: usize,
    n: usize,
    table: Vec<u32>,
    trail: Vec<usize>,
    pending: Vec<(u32, usize)>,
    found: Vec<CosetTable>,
    nodes: u64,
    aborted: bool,
    opts: &'a LowIndexOptions,
}

impl Search<'_> {
    #[inline]
    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.cols.n + x]
    }

    #[inline]
    fn set(&mut self, c: u32, x: usize, v: u32) {
        let k = c as usize * self.cols.n + x;
        self.table[k] = v;
        self.trail.push(k);
    }

    fn assign(&mut self, c: u32, x: usize, d: u32) {
        self.set(c, x, d);
        let xi = self.cols.inv[x];
        if self.get(d, xi) == NONE {
            self.set(d, xi, c);
        }
        self.pending.push((c, x));
    }

    /// Scans `c·w = c` without defining; false on contradiction.
    fn scan(&mut self, c: u32, w: &[usize]) -> bool {
        let len = w.len();
        let mut f = c;
        let mut i = 0;
        while i < len {
            let t = self.get(f, w[i]);
            if t == NONE {
                break;
            }
            f = t;
            i += 1;
        }
        if i == len {
            return f == c;
        }
        let mut b = c;
        let mut j = len;
        while j > i {
            let t = self.get(b, self.cols.inv[w[j - 1]]);
            if t == NONE {
                break;
            }
            b = t;
            j -= 1;
        }
        if j == i {
            return f == b;
        }
        if j == i + 1 {
            let x = w[i];
            if self.get(b, self.cols.inv[x]) != NONE {
                return false;
            }
            self.assign(f, x, b);
        }
        true
    }

    fn process(&mut self) -> bool {
        while let Some((c, x)) = self.pending.pop() {
            let d = self.get(c, x);
            for k in 0..self.starts[x].len() {
                let w = std::mem::take(&mut self.starts[x][k]);
                let ok = self.scan(c, &w);
                self.starts[x][k] = w;
                if !ok {
                    return false;
                }
            }
            let xi = self.cols.inv[x];
            for k in 0..self.starts[xi].len() {
                let w = std::mem::take(&mut self.starts[xi][k]);
                let ok = self.scan(d, &w);
                self.starts[xi][k] = w;
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let k = self.trail.pop().expect("nonempty");
            self.table[k] = NONE;
        }
        self.pending.clear();
    }

    /// Whether no re-basing of the defined part is lexicographically smaller.
    fn is_canonical(&self) -> bool {
        let n = self.n;
        let nc = self.cols.n;
        let mut map = vec![NONE; n];
        let mut order: Vec<u32> = Vec::with_capacity(n);
        for alpha in 1..n as u32 {
            map.iter_mut().for_each(|m| *m = NONE);
            order.clear();
            map[alpha as usize] = 0;
            order.push(alpha);
            let mut next = 1u32;
            'cmp: for r in 0..n {
                if r >= order.len() {
                    break;
                }
                let old = order[r];
                for x in 0..nc {
                    let ours = self.get(r as u32, x);
                    let t = self.get(old, x);
                    if ours == NONE || t == NONE {
                        break 'cmp;
                    }
                    let theirs = if map[t as usize] == NONE {
                        map[t as usize] = next;
                        order.push(t);
                        next += 1;
                        next - 1
                    } else {
                        map[t as usize]
                    };
                    if theirs < ours {
                        return false;
                    }
                    if theirs > ours {
                        break 'cmp;
                    }
                }
            }
        }
        true
    }

    fn first_gap(&self) -> Option<(u32, usize)> {
        let nc = self.cols.n;
        self.table[..self.n * nc].iter().position(|&v| v == NONE).map(|k| ((k / nc) as u32, k % nc))
    }

    fn record(&mut self) {
        for r in &self.rels {
            for c in 0..self.n as u32 {
                let end = r.iter().fold(c, |x, &col| self.get(x, col));
                if end != c {
                    return;
                }
            }
        }
        let rows = (0..self.n as u32).map(|c| self.cols.fwd.iter().map(|&x| self.get(c, x)).collect()).collect();
        self.found.push(CosetTable::from_rows(Vec::new(), rows));
    }

    fn run(&mut self) {
        self.nodes += 1;
        if self.nodes % 4096 == 0 && self.opts.deadline.is_some_and(|d| Instant::now() >= d) {
            self.aborted = true;
        }
        if self.aborted {
            return;
        }
        let Some((c, x)) = self.first_gap() else {
            self.record();
            return;
        };
        let xi = self.cols.inv[x];
        let n = self.n as u32;
        for d in 0..=n {
            if d == n {
                if self.n == self.bound {
                    break;
                }
                self.n += 1;
            } else if self.get(d, xi) != NONE {
                continue;
            }
            let mark = self.trail.len();
            self.assign(c, x, d);
            if self.process() && self.is_canonical() {
                self.run();
            }
            self.undo(mark);
            if d == n {
                self.n -= 1;
            }
            if self.aborted {
                return;
            }
        }
    }
}

/// All subgroups of index at most `bound`, one per conjugacy class.
pub fn low_index_subgroups(p: &Presentation, bound: usize, opts: &LowIndexOptions) -> Result<LowIndexResult> {
    if bound == 0 {
        return Err(Error::invalid("index bound must be positive"));
    }
    let cols = Columns::new(p);
    let rels: Vec<Vec<usize>> =
        p.rels.iter().map(|r| cols.word(&r.cyclic_reduce())).filter(|w: &Vec<usize>| !w.is_empty()).collect();
    let mut starts = vec![Vec::new(); cols.n];
    for r in &rels {
        let inv: Vec<usize> = r.iter().rev().map(|&x| cols.inv[x]).collect();
        for w in [r, &inv] {
            for k in 0..w.len() {
                let rot: Vec<usize> = w[k..].iter().chain(&w[..k]).copied().collect();
                if !starts[rot[0]].contains(&rot) {
                    starts[rot[0]].push(rot);
                }
            }
        }
    }
    let mut s = Search {
        table: vec![NONE; bound * cols.n],
        cols,
        starts,
        rels,
        bound,
        n: 1,
        trail: Vec::new(),
        pending: Vec::new(),
        found: Vec::new(),
        nodes: 0,
        aborted: false,
        opts,
    };
    s.run();
    Ok(LowIndexResult { tables: s.found, complete: !s.aborted, nodes: s.nodes })
}
