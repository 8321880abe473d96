//! Minimal-area reduction of cyclic words against a set of relators.
//!
//! A word reduces to the empty word by free cancellations (no cost) and
//! relator moves (cost one): a letter `x` with `x t` a reading of a relator
//! is replaced by `t^-1`. Single-letter moves are enough, since any longer
//! shared segment follows from one move and free cancellation. The minimal
//! number of relator moves is the area of the word.

use std::collections::{BTreeSet, HashMap};

use crate::pi1::{inv, min_rotation, Word};

/// One forward step applied to a linear word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    /// `w -> w[k..] w[..k]`.
    Rotate(usize),
    /// Removes `w[p] w[p+1]`, a letter followed by its inverse.
    Cancel(usize),
    /// Replaces `w[pos]` by the inverse of the tail of a relator reading.
    Replace { pos: usize, face: usize, rot: usize, flip: bool },
}

#[derive(Clone, Debug)]
pub struct Reducer {
    relators: Vec<Word>,
    max_len: usize,
}

impl Reducer {
    /// Relators are indexed by position; empty ones are never used.
    pub fn new(relators: Vec<Word>) -> Reducer {
        let max_len = relators.iter().map(|r| r.len()).max().unwrap_or(0);
        Reducer { relators, max_len }
    }

    pub fn max_relator_length(&self) -> usize {
        self.max_len
    }

    /// Reading of relator `face` from `rot`, backwards and inverted if `flip`.
    pub fn reading(&self, face: usize, rot: usize, flip: bool) -> Word {
        let r = &self.relators[face];
        let k = r.len();
        (0..k)
            .map(|i| {
                let j = (i + rot) % k;
                if flip {
                    inv(r[k - 1 - j])
                } else {
                    r[j]
                }
            })
            .collect()
    }

    /// Cancels until the word is cyclically reduced, logging each step.
    pub fn normalize(w: &mut Word, steps: &mut Vec<Step>) {
        loop {
            if let Some(p) = (0..w.len().saturating_sub(1)).find(|&p| w[p + 1] == inv(w[p])) {
                w.drain(p..p + 2);
                steps.push(Step::Cancel(p));
                continue;
            }
            if w.len() >= 2 && w[w.len() - 1] == inv(w[0]) {
                let k = w.len() - 1;
                w.rotate_left(k);
                steps.push(Step::Rotate(k));
                continue;
            }
            return;
        }
    }

    /// Applies one step in place.
    pub fn apply(&self, w: &mut Word, step: Step) {
        match step {
            Step::Rotate(k) => w.rotate_left(k),
            Step::Cancel(p) => {
                w.drain(p..p + 2);
            }
            Step::Replace { pos, face, rot, flip } => {
                let r = self.reading(face, rot, flip);
                let tail_inv: Word = r[1..].iter().rev().map(|&l| inv(l)).collect();
                w.splice(pos..pos + 1, tail_inv);
            }
        }
    }

    fn moves(&self, w: &[u32]) -> Vec<(Step, Word, Vec<Step>)> {
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        for pos in 0..w.len() {
            for (face, r) in self.relators.iter().enumerate() {
                let k = r.len();
                for flip in [false, true] {
                    for rot in 0..k {
                        let first = if flip { inv(r[k - 1 - rot]) } else { r[rot] };
                        if first != w[pos] {
                            continue;
                        }
                        let step = Step::Replace { pos, face, rot, flip };
                        let mut next = w.to_vec();
                        self.apply(&mut next, step);
                        let mut tail = Vec::new();
                        Reducer::normalize(&mut next, &mut tail);
                        if seen.insert(min_rotation(&next)) {
                            out.push((step, next, tail));
                        }
                    }
                }
            }
        }
        // shorter results first: they tend to finish sooner
        out.sort_by_key(|(_, next, _)| next.len());
        out
    }

    /// Minimal area of `w` up to `max_area`, with a step sequence reaching the
    /// empty word.
    pub fn min_area(&self, w: &[u32], max_area: usize) -> Option<(usize, Vec<Step>)> {
        let mut start = w.to_vec();
        let mut steps = Vec::new();
        Reducer::normalize(&mut start, &mut steps);
        let mut failed: HashMap<Word, usize> = HashMap::new();
        for area in 0..=max_area {
            let mut path = Vec::new();
            if self.dfs(&start, area, &mut failed, &mut path) {
                steps.extend(path);
                return Some((area, steps));
            }
        }
        None
    }

    fn dfs(&self, w: &[u32], budget: usize, failed: &mut HashMap<Word, usize>, path: &mut Vec<Step>) -> bool {
        if w.is_empty() {
            return true;
        }
        if budget == 0 || self.max_len == 0 || w.len() > budget * self.max_len {
            return false;
        }
        let key = min_rotation(w);
        if failed.get(&key).map_or(false, |&b| b >= budget) {
            return false;
        }
        for (step, next, tail) in self.moves(w) {
            let mark = path.len();
            path.push(step);
            path.extend(tail);
            if self.dfs(&next, budget - 1, failed, path) {
                return true;
            }
            path.truncate(mark);
        }
        failed.insert(key, budget);
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn replay(r: &Reducer, w: &[u32], steps: &[Step]) -> Word {
        let mut cur = w.to_vec();
        for &s in steps {
            r.apply(&mut cur, s);
        }
        cur
    }

    #[test]
    fn relator_has_area_one() {
        let r = Reducer::new(vec![vec![0, 2, 1, 3]]);
        let (a, steps) = r.min_area(&[0, 2, 1, 3], 3).unwrap();
        assert_eq!(a, 1);
        assert!(replay(&r, &[0, 2, 1, 3], &steps).is_empty());
        // a rotation and its inverse also have area one
        assert_eq!(r.min_area(&[2, 1, 3, 0], 3).unwrap().0, 1);
        assert_eq!(r.min_area(&[2, 0, 3, 1], 3).unwrap().0, 1);
    }

    #[test]
    fn commutator_squares() {
        // [a^2, b] in Z^2 has area 2
        let r = Reducer::new(vec![vec![0, 2, 1, 3]]);
        let w = vec![0, 0, 2, 1, 1, 3];
        let (a, steps) = r.min_area(&w, 4).unwrap();
        assert_eq!(a, 2);
        assert!(replay(&r, &w, &steps).is_empty());
        assert!(r.min_area(&[0, 2], 4).is_none());
    }

    #[test]
    fn free_words_need_no_faces() {
        let r = Reducer::new(vec![]);
        assert_eq!(r.min_area(&[0, 2, 3, 1], 0).unwrap().0, 0);
        assert!(r.min_area(&[0], 5).is_none());
    }
}
