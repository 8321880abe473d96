//! Simplicial complexes of dimension at most two.

use std::collections::{BTreeMap, BTreeSet};

use crate::complex::Complex2;
use crate::error::{Error, Result};

/// Vertices plus a downward-closed family of simplices with at most three vertices.
///
/// Simplices are stored as sorted vertex-index vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpComplex {
    vertices: Vec<String>,
    simplices: BTreeSet<Vec<usize>>,
}

impl SimpComplex {
    /// Builds the downward closure of `simplices`.
    pub fn new<S: AsRef<str>, T: AsRef<str>>(vertices: &[S], simplices: &[Vec<T>]) -> Result<Self> {
        let mut names: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        names.sort();
        names.dedup();
        let index: BTreeMap<&str, usize> =
            names.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let mut out = BTreeSet::new();
        for i in 0..names.len() {
            out.insert(vec![i]);
        }
        for s in simplices {
            let mut idx = Vec::with_capacity(s.len());
            for v in s {
                let v = v.as_ref();
                idx.push(*index.get(v).ok_or_else(|| Error::UnknownVertex(v.to_string()))?);
            }
            idx.sort_unstable();
            idx.dedup();
            if idx.is_empty() || idx.len() > 3 {
                return Err(Error::InvalidComplex(format!(
                    "simplex of size {} (dimension is capped at 2)",
                    idx.len()
                )));
            }
            for sub in subsets(&idx) {
                out.insert(sub);
            }
        }
        Ok(SimpComplex { vertices: names, simplices: out })
    }

    /// Reads a complex with simplicial 1-skeleton and triangular faces.
    pub fn from_complex(c: &Complex2) -> Result<Self> {
        if !c.has_simplicial_skeleton() {
            return Err(Error::InvalidComplex("1-skeleton has loops or multi-edges".into()));
        }
        let names: Vec<String> = c.vertices().map(|v| c.vertex_name(v).to_string()).collect();
        let mut simplices: Vec<Vec<String>> = Vec::new();
        for e in 0..c.edge_count() {
            let d = Complex2::forward(e);
            simplices.push(vec![names[c.src(d)].clone(), names[c.dst(d)].clone()]);
        }
        for f in 0..c.face_count() {
            let b = c.boundary(f);
            if b.len() != 3 {
                return Err(Error::InvalidComplex(format!("face {} is not a triangle", c.face_name(f))));
            }
            simplices.push(b.iter().map(|&d| names[c.src(d)].clone()).collect());
        }
        SimpComplex::new(&names, &simplices)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.binary_search_by(|v| v.as_str().cmp(name)).ok()
    }

    pub fn simplices(&self) -> &BTreeSet<Vec<usize>> {
        &self.simplices
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        let mut s = s.to_vec();
        s.sort_unstable();
        self.simplices.contains(&s)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.simplices.iter().filter(|s| s.len() == 2).map(|s| (s[0], s[1])).collect()
    }

    pub fn triangles(&self) -> Vec<[usize; 3]> {
        self.simplices.iter().filter(|s| s.len() == 3).map(|s| [s[0], s[1], s[2]]).collect()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.simplices.contains(&vec![a.min(b), a.max(b)])
    }

    pub fn dimension(&self) -> usize {
        self.simplices.iter().map(|s| s.len()).max().unwrap_or(1).saturating_sub(1)
    }

    /// Sorted neighbor lists of the 1-skeleton.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for (a, b) in self.edges() {
            adj[a].push(b);
            adj[b].push(a);
        }
        for n in &mut adj {
            n.sort_unstable();
        }
        adj
    }

    /// Downward closure holds and every referenced vertex exists.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        for s in &self.simplices {
            if s.iter().any(|&v| v >= self.vertices.len()) {
                out.push(format!("simplex {s:?} references an unknown vertex"));
                continue;
            }
            if s.len() > 3 {
                out.push(format!("simplex {s:?} exceeds dimension 2"));
            }
            for sub in subsets(s) {
                if !self.simplices.contains(&sub) {
                    out.push(format!("face {sub:?} of {s:?} is missing"));
                }
            }
        }
        out
    }

    /// The link of a simplex, keeping the parent's vertex names.
    pub fn link(&self, sigma: &[usize]) -> SimpComplex {
        let sigma: BTreeSet<usize> = sigma.iter().copied().collect();
        let mut verts = BTreeSet::new();
        let mut simps = Vec::new();
        for s in &self.simplices {
            let set: BTreeSet<usize> = s.iter().copied().collect();
            if !set.is_disjoint(&sigma) {
                continue;
            }
            let joined: Vec<usize> = set.union(&sigma).copied().collect();
            if joined.len() <= 3 && self.simplices.contains(&joined) {
                verts.extend(set.iter().copied());
                simps.push(s.clone());
            }
        }
        let old: Vec<usize> = verts.into_iter().collect();
        let names: Vec<String> = old.iter().map(|&v| self.vertices[v].clone()).collect();
        let remap: BTreeMap<usize, usize> = old.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let simplices = simps.iter().map(|s| s.iter().map(|v| remap[v]).collect()).collect();
        SimpComplex { vertices: names, simplices }
    }
}

/// All nonempty subsets of a sorted slice, each sorted.
fn subsets(s: &[usize]) -> Vec<Vec<usize>> {
    let n = s.len();
    (1u32..(1 << n))
        .map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).map(|i| s[i]).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn closure_adds_faces() {
        let s = SimpComplex::new(&["a", "b", "c"], &[vec!["a", "b", "c"]]).unwrap();
        assert_eq!(s.simplices().len(), 7);
        assert!(s.validate().is_empty());
        assert_eq!(s.dimension(), 2);
    }

    #[test]
    fn rejects_tetrahedra() {
        assert!(SimpComplex::new(&["a", "b", "c", "d"], &[vec!["a", "b", "c", "d"]]).is_err());
    }

    #[test]
    fn octahedron_vertex_link_is_square() {
        let oct = fixtures::oct();
        let l = oct.link(&[0]);
        assert_eq!(l.vertex_count(), 4);
        assert_eq!(l.edges().len(), 4);
        assert!(l.triangles().is_empty());
    }

    #[test]
    fn wheel_from_complex() {
        let w = SimpComplex::from_complex(&fixtures::wheel(6)).unwrap();
        assert_eq!(w.vertex_count(), 7);
        assert_eq!(w.edges().len(), 12);
        assert_eq!(w.triangles().len(), 6);
        let z = w.vertex_index("z").unwrap();
        assert_eq!(w.link(&[z]).edges().len(), 6);
    }
}
