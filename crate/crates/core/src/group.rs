//! Finite groups as multiplication tables.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::complex::ValidationReport;
use crate::error::{Error, Result};

/// Upper bound on the size of a group produced by closure.
pub const MAX_ORDER: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinGroup {
    names: Vec<String>,
    mul: Vec<Vec<usize>>,
    identity: usize,
    inv: Vec<usize>,
    generators: Vec<usize>,
}

impl FinGroup {
    /// Wraps a multiplication table, checking the group axioms.
    pub fn from_table(names: Vec<String>, mul: Vec<Vec<usize>>) -> Result<FinGroup> {
        let g = FinGroup::from_table_unchecked(names, mul)?;
        let r = g.validate();
        if r.is_valid() {
            Ok(g)
        } else {
            Err(Error::InvalidGroup(r.violations.join("; ")))
        }
    }

    /// Wraps a table after only shape checks; [`FinGroup::validate`] reports the rest.
    pub fn from_table_unchecked(names: Vec<String>, mul: Vec<Vec<usize>>) -> Result<FinGroup> {
        let n = names.len();
        if n == 0 || mul.len() != n || mul.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidGroup("table is not a square table over the elements".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| mul[e][x] == x && mul[x][e] == x))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let inv = (0..n)
            .map(|x| (0..n).find(|&y| mul[x][y] == identity).unwrap_or(identity))
            .collect();
        let mut g = FinGroup { names, mul, identity, inv, generators: Vec::new() };
        g.generators = g.small_generating_set();
        Ok(g)
    }

    pub fn trivial() -> FinGroup {
        FinGroup::cyclic(1)
    }

    /// Z/n with generator `r`.
    pub fn cyclic(n: usize) -> FinGroup {
        let names = (0..n).map(|i| power_name("r", i)).collect();
        let mul = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        let mut g = FinGroup::from_table_unchecked(names, mul).expect("cyclic table");
        g.generators = if n > 1 { vec![1] } else { vec![] };
        g
    }

    /// Closes a set of permutations under composition.
    ///
    /// Elements are named by shortest words in the generators (`e`, `r`,
    /// `r.s`, ...). The product `gh` acts as `h` first, then `g`.
    pub fn from_permutations(gen_names: &[String], perms: &[Vec<usize>]) -> Result<(FinGroup, Vec<Vec<usize>>)> {
        let degree = perms.first().map_or(0, |p| p.len());
        if perms.iter().any(|p| p.len() != degree) {
            return Err(Error::InvalidGroup("generators act on sets of different sizes".into()));
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut elems = vec![id.clone()];
        let mut names = vec!["e".to_string()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0]);
        while let Some(i) = queue.pop_front() {
            for (s, p) in perms.iter().enumerate() {
                let next: Vec<usize> = (0..degree).map(|x| elems[i][p[x]]).collect();
                if !index.contains_key(&next) {
                    if elems.len() >= MAX_ORDER {
                        return Err(Error::InvalidGroup(format!("closure exceeds {MAX_ORDER} elements")));
                    }
                    let name = if i == 0 { gen_names[s].clone() } else { format!("{}.{}", names[i], gen_names[s]) };
                    index.insert(next.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(next);
                    names.push(name);
                }
            }
        }
        let n = elems.len();
        let mut mul = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                let prod: Vec<usize> = (0..degree).map(|x| elems[a][elems[b][x]]).collect();
                mul[a][b] = index[&prod];
            }
        }
        let mut g = FinGroup::from_table_unchecked(names, mul)?;
        g.generators = perms.iter().map(|p| index[p]).filter(|&x| x != 0).collect::<BTreeSet<_>>().into_iter().collect();
        Ok((g, elems))
    }

    /// The group generated by elements of an ambient group, reindexed from 0.
    /// Returns the subgroup and the embedding into `self`.
    pub fn subgroup(&self, gens: &[usize]) -> (FinGroup, Vec<usize>) {
        let elems = self.generated(gens);
        let pos: HashMap<usize, usize> = elems.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mul = elems
            .iter()
            .map(|&a| elems.iter().map(|&b| pos[&self.mul[a][b]]).collect())
            .collect();
        let names = elems.iter().map(|&x| self.names[x].clone()).collect();
        let mut g = FinGroup::from_table_unchecked(names, mul).expect("subgroup table");
        g.generators = gens.iter().filter(|&&x| x != self.identity).map(|x| pos[x]).collect::<BTreeSet<_>>().into_iter().collect();
        (g, elems)
    }

    /// Replaces the stored generating set, which must generate the group.
    pub fn with_generators(mut self, gens: Vec<usize>) -> Result<FinGroup> {
        if gens.iter().any(|&g| g >= self.order()) || self.generated(&gens).len() != self.order() {
            return Err(Error::InvalidGroup("elements do not generate the group".into()));
        }
        self.generators = gens;
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.names.len()
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul[acc][a])
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul[x][a];
            k += 1;
        }
        k
    }

    /// Checks associativity, the identity law and inverses.
    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::default();
        let n = self.order();
        'outer: for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.mul[self.mul[a][b]][c] != self.mul[a][self.mul[b][c]] {
                        r.push(format!(
                            "associativity fails for ({}, {}, {})",
                            self.names[a], self.names[b], self.names[c]
                        ));
                        break 'outer;
                    }
                }
            }
        }
        for a in 0..n {
            if self.mul[self.identity][a] != a || self.mul[a][self.identity] != a {
                r.push(format!("identity law fails at {}", self.names[a]));
            }
            let i = self.inv[a];
            if self.mul[a][i] != self.identity || self.mul[i][a] != self.identity {
                r.push(format!("{} has no inverse", self.names[a]));
            }
        }
        r
    }

    /// Sorted elements of the subgroup generated by `gens`.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = BTreeSet::from([self.identity]);
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul[x][g];
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        let s: BTreeSet<usize> = set.iter().copied().collect();
        s.contains(&self.identity) && s.iter().all(|&a| s.iter().all(|&b| s.contains(&self.mul[a][self.inv[b]])))
    }

    pub fn is_normal(&self, set: &[usize]) -> bool {
        let s: BTreeSet<usize> = set.iter().copied().collect();
        self.is_subgroup(set)
            && self
                .elements()
                .all(|g| s.iter().all(|&k| s.contains(&self.mul[self.mul[g][k]][self.inv[g]])))
    }

    /// Quotient by a normal subgroup, with the projection. Cosets are ordered
    /// by their smallest element.
    pub fn quotient(&self, normal: &[usize]) -> Result<(FinGroup, Vec<usize>)> {
        if !self.is_normal(normal) {
            return Err(Error::InvalidGroup("quotient by a non-normal subset".into()));
        }
        let mut proj = vec![usize::MAX; self.order()];
        let mut reps = Vec::new();
        for g in self.elements() {
            if proj[g] != usize::MAX {
                continue;
            }
            for &k in normal {
                proj[self.mul[g][k]] = reps.len();
            }
            reps.push(g);
        }
        let mul = reps
            .iter()
            .map(|&a| reps.iter().map(|&b| proj[self.mul[a][b]]).collect())
            .collect();
        let names = reps.iter().map(|&a| self.names[a].clone()).collect();
        let mut q = FinGroup::from_table_unchecked(names, mul)?;
        q.generators = self.generators.iter().map(|&g| proj[g]).filter(|&x| x != q.identity).collect::<BTreeSet<_>>().into_iter().collect();
        Ok((q, proj))
    }

    /// Whether `f` (indexed by elements of `self`) is a homomorphism into `other`.
    pub fn is_homomorphism(&self, other: &FinGroup, f: &[usize]) -> bool {
        f.len() == self.order()
            && f.iter().all(|&x| x < other.order())
            && self
                .elements()
                .all(|a| self.elements().all(|b| f[self.mul[a][b]] == other.mul[f[a]][f[b]]))
    }

    /// Extends an assignment on [`FinGroup::generators`] to a homomorphism.
    pub fn extend_hom(&self, other: &FinGroup, on_gens: &[usize]) -> Result<Vec<usize>> {
        let mut f = vec![usize::MAX; self.order()];
        f[self.identity] = other.identity;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for (i, &g) in self.generators.iter().enumerate() {
                let y = self.mul[x][g];
                let fy = other.mul[f[x]][on_gens[i]];
                if f[y] == usize::MAX {
                    f[y] = fy;
                    queue.push_back(y);
                } else if f[y] != fy {
                    return Err(Error::InvalidGroup("generator images do not define a homomorphism".into()));
                }
            }
        }
        if f.contains(&usize::MAX) || !self.is_homomorphism(other, &f) {
            return Err(Error::InvalidGroup("generator images do not define a homomorphism".into()));
        }
        Ok(f)
    }

    fn small_generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![self.identity];
        for x in self.elements() {
            if !span.contains(&x) {
                gens.push(x);
                span = self.generated(&gens);
            }
        }
        gens
    }
}

fn power_name(g: &str, k: usize) -> String {
    if k == 0 {
        "e".into()
    } else {
        vec![g; k].join(".")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_group() {
        let g = FinGroup::cyclic(6);
        assert!(g.validate().is_valid());
        assert_eq!(g.name(2), "r.r");
        assert_eq!(g.element_order(2), 3);
        assert_eq!(g.generated(&[3]), vec![0, 3]);
        assert!(g.is_normal(&[0, 3]));
        let (q, proj) = g.quotient(&[0, 2, 4]).unwrap();
        assert_eq!(q.order(), 2);
        assert!(g.is_homomorphism(&q, &proj));
    }

    #[test]
    fn broken_associativity_is_reported() {
        // a loop of order 5 that is not a group
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let names = (0..5).map(|i| format!("x{i}")).collect();
        let g = FinGroup::from_table_unchecked(names, t).unwrap();
        assert!(g.validate().mentions("associativity"));
    }

    #[test]
    fn permutation_closure_s3() {
        let (g, elems) = FinGroup::from_permutations(
            &["s".into(), "t".into()],
            &[vec![1, 0, 2], vec![0, 2, 1]],
        )
        .unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(elems.len(), 6);
        assert!(g.validate().is_valid());
        let s = g.index_of("s").unwrap();
        assert!(!g.is_normal(&g.generated(&[s])));
    }

    #[test]
    fn extend_hom_z6_to_z3() {
        let (z6, z3) = (FinGroup::cyclic(6), FinGroup::cyclic(3));
        let f = z6.extend_hom(&z3, &[1]).unwrap();
        assert_eq!(f, vec![0, 1, 2, 0, 1, 2]);
        assert!(z3.extend_hom(&z6, &[1]).is_err());
    }
}
