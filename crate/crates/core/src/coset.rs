//! Todd–Coxeter coset enumeration (HLT strategy, no lookahead).
//!
//! Rows are processed in order; for each live coset every relator is
//! scanned and filled, then any undefined entries of the row are defined.
//! The work limit counts cosets ever defined, so a given limit always
//! produces the same outcome.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pi1::{cyclic_reduce, free_reduce, Presentation, Word};

const NONE: usize = usize::MAX;

/// A complete coset table. Row `c`, column `l` is the coset `c . l`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetTable {
    pub generators: usize,
    pub rows: Vec<Vec<usize>>,
}

impl CosetTable {
    pub fn index(&self) -> usize {
        self.rows.len()
    }

    pub fn act(&self, c: usize, l: u32) -> usize {
        self.rows[c][l as usize]
    }

    pub fn trace(&self, c: usize, w: &[u32]) -> usize {
        w.iter().fold(c, |c, &l| self.act(c, l))
    }
}

struct Enumerator {
    cols: usize,
    table: Vec<Vec<usize>>,
    parent: Vec<usize>,
    limit: usize,
}

impl Enumerator {
    fn rep(&mut self, mut c: usize) -> usize {
        let mut root = c;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[c] != root {
            let next = self.parent[c];
            self.parent[c] = root;
            c = next;
        }
        root
    }

    fn live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn define(&mut self, c: usize, x: usize) -> Result<usize> {
        if self.table.len() >= self.limit {
            return Err(Error::Undecided(format!("coset enumeration exceeded {} cosets", self.limit)));
        }
        let n = self.table.len();
        self.table.push(vec![NONE; self.cols]);
        self.parent.push(n);
        self.table[c][x] = n;
        self.table[n][x ^ 1] = c;
        Ok(n)
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut VecDeque<usize>) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        self.parent[hi] = lo;
        queue.push_back(hi);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = VecDeque::new();
        self.merge(a, b, &mut queue);
        while let Some(e) = queue.pop_front() {
            for x in 0..self.cols {
                let f = self.table[e][x];
                if f == NONE {
                    continue;
                }
                self.table[f][x ^ 1] = NONE;
                let (e1, f1) = (self.rep(e), self.rep(f));
                if self.table[e1][x] != NONE {
                    let t = self.table[e1][x];
                    self.merge(f1, t, &mut queue);
                } else if self.table[f1][x ^ 1] != NONE {
                    let t = self.table[f1][x ^ 1];
                    self.merge(e1, t, &mut queue);
                } else {
                    self.table[e1][x] = f1;
                    self.table[f1][x ^ 1] = e1;
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: usize, w: &[u32]) -> Result<()> {
        if w.is_empty() {
            return Ok(());
        }
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0isize, w.len() as isize - 1);
        loop {
            while i <= j && self.table[f][w[i as usize] as usize] != NONE {
                f = self.table[f][w[i as usize] as usize];
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i && self.table[b][(w[j as usize] ^ 1) as usize] != NONE {
                b = self.table[b][(w[j as usize] ^ 1) as usize];
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            } else if i == j {
                let x = w[i as usize] as usize;
                self.table[f][x] = b;
                self.table[b][x ^ 1] = f;
                return Ok(());
            } else {
                self.define(f, w[i as usize] as usize)?;
            }
        }
    }
}

/// Enumerates the cosets of `<subgens>` in `<generators | relators>`.
pub fn enumerate(generators: usize, relators: &[Word], subgens: &[Word], limit: usize) -> Result<CosetTable> {
    if limit == 0 {
        return Err(Error::InvalidInput("coset limit must be at least 1".into()));
    }
    let cols = 2 * generators;
    let relators: Vec<Word> = relators.iter().map(|r| cyclic_reduce(r)).filter(|r| !r.is_empty()).collect();
    let mut en = Enumerator { cols, table: vec![vec![NONE; cols]], parent: vec![0], limit };
    for w in subgens {
        let w = free_reduce(w);
        en.scan_and_fill(0, &w)?;
    }
    let mut c = 0;
    while c < en.table.len() {
        if en.live(c) {
            for r in &relators {
                en.scan_and_fill(c, r)?;
                if !en.live(c) {
                    break;
                }
            }
            if en.live(c) {
                for x in 0..cols {
                    if en.table[c][x] == NONE {
                        en.define(c, x)?;
                    }
                }
            }
        }
        c += 1;
    }
    let live: Vec<usize> = (0..en.table.len()).filter(|&c| en.live(c)).collect();
    let mut renum = vec![NONE; en.table.len()];
    for (i, &c) in live.iter().enumerate() {
        renum[c] = i;
    }
    let mut rows = Vec::with_capacity(live.len());
    for &c in &live {
        let mut row = Vec::with_capacity(cols);
        for x in 0..cols {
            let t = en.table[c][x];
            if t == NONE {
                return Err(Error::Internal("coset table incomplete after enumeration".into()));
            }
            let t = en.rep(t);
            row.push(renum[t]);
        }
        rows.push(row);
    }
    Ok(CosetTable { generators, rows })
}

/// [`enumerate`] over a spanning-tree presentation.
pub fn coset_enumerate(p: &Presentation, subgens: &[Word], limit: usize) -> Result<CosetTable> {
    enumerate(p.generator_count(), &p.relators, subgens, limit)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_of_order_three() {
        let t = enumerate(1, &[vec![0, 0, 0]], &[], 100).unwrap();
        assert_eq!(t.index(), 3);
        assert_eq!(t.trace(0, &[0, 0, 0]), 0);
        assert_ne!(t.trace(0, &[0]), 0);
    }

    #[test]
    fn z2_whole_subgroup_and_trivial() {
        let comm = vec![vec![0, 2, 1, 3]];
        let t = enumerate(2, &comm, &[vec![0], vec![2]], 100).unwrap();
        assert_eq!(t.index(), 1);
        assert!(matches!(enumerate(2, &comm, &[], 10_000), Err(Error::Undecided(_))));
    }

    #[test]
    fn s3_from_presentation() {
        // <s, t | s^2, t^2, (st)^3>
        let rels = vec![vec![0, 0], vec![2, 2], vec![0, 2, 0, 2, 0, 2]];
        assert_eq!(enumerate(2, &rels, &[], 1000).unwrap().index(), 6);
        assert_eq!(enumerate(2, &rels, &[vec![0]], 1000).unwrap().index(), 3);
    }

    #[test]
    fn deterministic() {
        let rels = vec![vec![0, 0, 0], vec![2, 2, 2], vec![0, 2, 1, 3]];
        let a = enumerate(2, &rels, &[], 1000).unwrap();
        let b = enumerate(2, &rels, &[], 1000).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.index(), 9);
    }

    #[test]
    fn table_is_a_permutation_representation() {
        let rels = vec![vec![0, 0], vec![2, 2, 2], vec![0, 2, 0, 2]];
        let t = enumerate(2, &rels, &[], 1000).unwrap();
        assert_eq!(t.index(), 6);
        for c in 0..t.index() {
            for l in 0..4u32 {
                assert_eq!(t.act(t.act(c, l), l ^ 1), c);
            }
            for r in &rels {
                assert_eq!(t.trace(c, r), c);
            }
        }
    }
}
