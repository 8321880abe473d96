//! Spanning-tree presentations of the fundamental group, and words.
//!
//! Letters are `u32`: generator `g` is `2g`, its inverse `2g + 1`. Darts
//! follow the same convention (`rev(d) = d ^ 1`), so the word utilities
//! here serve both alphabets.

use std::collections::{BTreeSet, VecDeque};

use crate::complex::Complex2;
use crate::error::{Error, Result};

pub type Word = Vec<u32>;

pub fn inv(l: u32) -> u32 {
    l ^ 1
}

pub fn inverse(w: &[u32]) -> Word {
    w.iter().rev().map(|&l| inv(l)).collect()
}

pub fn free_reduce(w: &[u32]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&inv(l)) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Free reduction followed by removal of cancelling first/last letters.
pub fn cyclic_reduce(w: &[u32]) -> Word {
    let w = free_reduce(w);
    let (mut i, mut j) = (0, w.len());
    while j - i >= 2 && w[i] == inv(w[j - 1]) {
        i += 1;
        j -= 1;
    }
    w[i..j].to_vec()
}

/// The lexicographically least rotation.
pub fn min_rotation(w: &[u32]) -> Word {
    (0..w.len().max(1))
        .map(|k| {
            let mut r = w[k.min(w.len())..].to_vec();
            r.extend_from_slice(&w[..k.min(w.len())]);
            r
        })
        .min()
        .unwrap_or_default()
}

/// A presentation of `pi_1(c, base)` read off a breadth-first spanning tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub base: usize,
    /// Tree edges.
    pub tree: BTreeSet<usize>,
    /// Tree dart entering each vertex (none at the base).
    pub parent: Vec<Option<usize>>,
    /// Edge of each generator.
    pub gen_edges: Vec<usize>,
    gen_of_edge: Vec<Option<u32>>,
    pub relators: Vec<Word>,
    names: Vec<String>,
    src: Vec<usize>,
    dst: Vec<usize>,
}

impl Presentation {
    pub fn new(c: &Complex2, base: usize) -> Result<Presentation> {
        if base >= c.vertex_count() {
            return Err(Error::UnknownVertex(format!("#{base}")));
        }
        let adj = c.adjacency();
        let mut parent = vec![None; c.vertex_count()];
        let mut seen = vec![false; c.vertex_count()];
        let mut tree = BTreeSet::new();
        seen[base] = true;
        let mut queue = VecDeque::from([base]);
        while let Some(u) = queue.pop_front() {
            for &d in &adj[u] {
                let w = c.dst(d);
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(d);
                    tree.insert(d / 2);
                    queue.push_back(w);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Disconnected);
        }
        let mut gen_of_edge = vec![None; c.edge_count()];
        let mut gen_edges = Vec::new();
        for e in 0..c.edge_count() {
            if !tree.contains(&e) {
                gen_of_edge[e] = Some(gen_edges.len() as u32);
                gen_edges.push(e);
            }
        }
        let mut p = Presentation {
            base,
            tree,
            parent,
            gen_edges,
            gen_of_edge,
            relators: Vec::new(),
            names: (0..c.edge_count()).map(|e| c.edge_name(e).to_string()).collect(),
            src: c.darts().map(|d| c.src(d)).collect(),
            dst: c.darts().map(|d| c.dst(d)).collect(),
        };
        p.relators = c.faces().iter().map(|f| p.path_word(&f.boundary)).collect();
        Ok(p)
    }

    pub fn generator_count(&self) -> usize {
        self.gen_edges.len()
    }

    /// The letter read along dart `d`, if it is not a tree dart.
    pub fn letter(&self, d: usize) -> Option<u32> {
        self.gen_of_edge[d / 2].map(|g| 2 * g + (d as u32 & 1))
    }

    /// The word of a dart path, tree darts deleted.
    pub fn path_word(&self, path: &[usize]) -> Word {
        path.iter().filter_map(|&d| self.letter(d)).collect()
    }

    /// The word of a closed path at the base vertex.
    pub fn loop_word(&self, path: &[usize]) -> Result<Word> {
        if let Some((&first, _)) = path.split_first() {
            let last = *path.last().unwrap();
            if self.src[first] != self.base || self.dst[last] != self.base {
                return Err(Error::InvalidInput("path does not start and end at the base vertex".into()));
            }
            if path.windows(2).any(|w| self.dst[w[0]] != self.src[w[1]]) {
                return Err(Error::InvalidInput("darts do not form a path".into()));
            }
        }
        Ok(self.path_word(path))
    }

    /// Tree darts from the base to `v`.
    pub fn tree_path(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut cur = v;
        while let Some(d) = self.parent[cur] {
            out.push(d);
            cur = self.src[d];
        }
        out.reverse();
        out
    }

    /// The closed path at the base representing generator `g`.
    pub fn generator_loop(&self, g: usize) -> Vec<usize> {
        let d = 2 * self.gen_edges[g];
        let mut path = self.tree_path(self.src[d]);
        path.push(d);
        path.extend(self.tree_path(self.dst[d]).iter().rev().map(|&x| x ^ 1));
        path
    }

    /// The closed path at the base reading a word.
    pub fn word_loop(&self, w: &[u32]) -> Vec<usize> {
        let mut out = Vec::new();
        for &l in w {
            let lp = self.generator_loop((l / 2) as usize);
            if l & 1 == 0 {
                out.extend(lp);
            } else {
                out.extend(lp.iter().rev().map(|&x| x ^ 1));
            }
        }
        out
    }

    pub fn letter_name(&self, l: u32) -> String {
        let e = &self.names[self.gen_edges[(l / 2) as usize]];
        if l & 1 == 0 {
            e.clone()
        } else {
            format!("-{e}")
        }
    }

    pub fn word_string(&self, w: &[u32]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter().map(|&l| self.letter_name(l)).collect::<Vec<_>>().join(" ")
    }

    /// Nonempty cyclically reduced relators.
    pub fn reduced_relators(&self) -> Vec<Word> {
        self.relators.iter().map(|r| cyclic_reduce(r)).filter(|r| !r.is_empty()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn word_reduction() {
        assert_eq!(free_reduce(&[0, 1, 2]), vec![2]);
        assert_eq!(free_reduce(&[2, 0, 1, 3]), Vec::<u32>::new());
        assert_eq!(cyclic_reduce(&[3, 0, 2]), vec![0]);
        assert_eq!(inverse(&[0, 2]), vec![3, 1]);
        assert_eq!(min_rotation(&[2, 0, 1]), vec![0, 1, 2]);
    }

    #[test]
    fn z3_presentation() {
        let p = Presentation::new(&fixtures::z3pres(), 0).unwrap();
        assert_eq!(p.generator_count(), 1);
        assert_eq!(p.relators, vec![vec![0, 0, 0]]);
    }

    #[test]
    fn cycle_presentation_is_free() {
        let c = fixtures::cycle(3);
        let p = Presentation::new(&c, 0).unwrap();
        assert_eq!(p.generator_count(), 1);
        assert!(p.relators.is_empty());
        let rim: Vec<usize> = (0..3).map(|i| c.dart(&format!("e{i}")).unwrap()).collect();
        assert_eq!(p.loop_word(&rim).unwrap().len(), 1);
        assert!(p.loop_word(&[rim[0], rim[0] ^ 1]).unwrap().is_empty());
    }

    #[test]
    fn disk_presentation() {
        let c = fixtures::disk3();
        let p = Presentation::new(&c, c.vertex("v0").unwrap()).unwrap();
        assert_eq!(p.generator_count(), 1);
        assert_eq!(p.relators, vec![vec![0]]);
        assert_eq!(p.word_string(&p.relators[0]), "b");
        let face = c.boundary(0).to_vec();
        assert_eq!(p.loop_word(&face).unwrap(), vec![0]);
        assert!(p.loop_word(&face[1..]).is_err());
    }

    #[test]
    fn disconnected_is_rejected() {
        let mut b = Complex2::builder();
        b.vertex("x").vertex("y");
        assert!(matches!(Presentation::new(&b.build().unwrap(), 0), Err(Error::Disconnected)));
    }

    #[test]
    fn generator_loops_read_their_letter() {
        let c = fixtures::wheel(4);
        let p = Presentation::new(&c, 0).unwrap();
        for g in 0..p.generator_count() {
            let w = p.loop_word(&p.generator_loop(g)).unwrap();
            assert_eq!(w, vec![2 * g as u32]);
        }
    }
}
