//! Finite combinatorial 2-complexes.
//!
//! A [`Complex2`] stores vertices, darts (oriented edges, paired by an
//! involution `rev`) and faces attached along cyclic dart words. Every
//! collection is kept sorted by its string id so that iteration order, and
//! therefore every algorithm built on top, is deterministic.
//!
//! Darts come in pairs: edge `i` owns dart `2i` (forward, named `x`) and
//! dart `2i + 1` (reversed, named `-x`). The `rev` table is stored
//! explicitly so that malformed inputs can be represented and reported by
//! [`Complex2::validate`].

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};

/// A list of violated invariants; empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub(crate) fn push(&mut self, msg: impl Into<String>) {
        self.violations.push(msg.into());
    }

    pub fn mentions(&self, needle: &str) -> bool {
        self.violations.iter().any(|v| v.contains(needle))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub name: String,
    pub boundary: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex2 {
    vertices: Vec<String>,
    edges: Vec<String>,
    src: Vec<usize>,
    dst: Vec<usize>,
    rev: Vec<usize>,
    faces: Vec<Face>,
}

/// A cell of a [`Complex2`]. Edges are named by either of their darts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cell {
    Vertex(usize),
    Edge(usize),
    Face(usize),
}

impl Complex2 {
    pub fn builder() -> Complex2Builder {
        Complex2Builder::default()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn dart_count(&self) -> usize {
        self.src.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn edge_name(&self, e: usize) -> &str {
        &self.edges[e]
    }

    pub fn dart_name(&self, d: usize) -> String {
        if d % 2 == 0 {
            self.edges[d / 2].clone()
        } else {
            format!("-{}", self.edges[d / 2])
        }
    }

    pub fn face(&self, f: usize) -> &Face {
        &self.faces[f]
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face_name(&self, f: usize) -> &str {
        &self.faces[f].name
    }

    pub fn boundary(&self, f: usize) -> &[usize] {
        &self.faces[f].boundary
    }

    pub fn src(&self, d: usize) -> usize {
        self.src[d]
    }

    pub fn dst(&self, d: usize) -> usize {
        self.dst[d]
    }

    pub fn rev(&self, d: usize) -> usize {
        self.rev[d]
    }

    /// The edge index owning dart `d`.
    pub fn edge_of(d: usize) -> usize {
        d / 2
    }

    /// The forward dart of edge `e`.
    pub fn forward(e: usize) -> usize {
        2 * e
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.binary_search_by(|v| v.as_str().cmp(name)).ok()
    }

    pub fn edge_index(&self, name: &str) -> Option<usize> {
        self.edges.binary_search_by(|v| v.as_str().cmp(name)).ok()
    }

    pub fn face_index(&self, name: &str) -> Option<usize> {
        self.faces.binary_search_by(|f| f.name.as_str().cmp(name)).ok()
    }

    /// Resolves `"x"` or `"-x"` to a dart index.
    pub fn dart_index(&self, name: &str) -> Option<usize> {
        match name.strip_prefix('-') {
            Some(e) => self.edge_index(e).map(|i| 2 * i + 1),
            None => self.edge_index(name).map(|i| 2 * i),
        }
    }

    pub fn vertex(&self, name: &str) -> Result<usize> {
        self.vertex_index(name).ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn dart(&self, name: &str) -> Result<usize> {
        self.dart_index(name).ok_or_else(|| Error::UnknownCell(name.to_string()))
    }

    pub fn face_id(&self, name: &str) -> Result<usize> {
        self.face_index(name).ok_or_else(|| Error::UnknownCell(name.to_string()))
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> {
        0..self.vertices.len()
    }

    pub fn darts(&self) -> impl Iterator<Item = usize> {
        0..self.src.len()
    }

    pub fn is_2d(&self) -> bool {
        !self.faces.is_empty()
    }

    /// Darts leaving `v`, in index order.
    pub fn darts_from(&self, v: usize) -> Vec<usize> {
        self.darts().filter(|&d| self.src[d] == v).collect()
    }

    /// All `(face, position)` pairs whose boundary dart belongs to edge `e`.
    pub fn edge_sides(&self, e: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (f, face) in self.faces.iter().enumerate() {
            for (i, &d) in face.boundary.iter().enumerate() {
                if d / 2 == e {
                    out.push((f, i));
                }
            }
        }
        out
    }

    /// Number of times each edge occurs (in either direction) in face boundaries.
    pub fn edge_multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.edges.len()];
        for face in &self.faces {
            for &d in &face.boundary {
                m[d / 2] += 1;
            }
        }
        m
    }

    pub fn max_face_length(&self) -> usize {
        self.faces.iter().map(|f| f.boundary.len()).max().unwrap_or(0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    /// Checks every structural invariant and lists the violations.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let n = self.src.len();
        for d in 0..n {
            let r = self.rev[d];
            if r >= n {
                report.push(format!("dart {}: reversal out of range", self.dart_name(d)));
                continue;
            }
            if r == d {
                report.push(format!(
                    "rev is not a fixed-point-free involution: rev({}) = {}",
                    self.dart_name(d),
                    self.dart_name(d)
                ));
            } else if self.rev[r] != d {
                report.push(format!(
                    "rev is not a fixed-point-free involution: rev(rev({})) != {}",
                    self.dart_name(d),
                    self.dart_name(d)
                ));
            }
            if self.src[r] != self.dst[d] {
                report.push(format!("src(rev({})) != dst({})", self.dart_name(d), self.dart_name(d)));
            }
            if self.src[d] >= self.vertices.len() || self.dst[d] >= self.vertices.len() {
                report.push(format!("dart {}: endpoint out of range", self.dart_name(d)));
            }
        }
        for face in &self.faces {
            if face.boundary.is_empty() {
                report.push(format!("face {}: empty boundary word", face.name));
                continue;
            }
            if let Some(&bad) = face.boundary.iter().find(|&&d| d >= n) {
                report.push(format!("face {}: unknown dart index {}", face.name, bad));
                continue;
            }
            let k = face.boundary.len();
            for i in 0..k {
                let d = face.boundary[i];
                let next = face.boundary[(i + 1) % k];
                if self.dst[d] != self.src[next] {
                    report.push(format!(
                        "face {}: boundary does not close cyclically at position {}",
                        face.name, i
                    ));
                }
            }
        }
        report
    }

    /// The link of `v`: nodes are darts leaving `v`, arcs are face corners at `v`.
    pub fn link(&self, v: usize) -> Result<LinkGraph> {
        if v >= self.vertices.len() {
            return Err(Error::UnknownVertex(format!("#{v}")));
        }
        let nodes = self.darts_from(v);
        let mut arcs = Vec::new();
        for (f, face) in self.faces.iter().enumerate() {
            let k = face.boundary.len();
            for i in 0..k {
                let out = face.boundary[i];
                if self.src[out] != v {
                    continue;
                }
                let incoming = face.boundary[(i + k - 1) % k];
                arcs.push(LinkArc { face: f, position: i, from: self.rev[incoming], to: out });
            }
        }
        Ok(LinkGraph { vertex: v, nodes, arcs })
    }

    /// Connected components of the 1-skeleton, as vertex labels.
    pub fn components(&self) -> Vec<usize> {
        let mut comp = vec![usize::MAX; self.vertices.len()];
        let mut next = 0;
        let adj = self.adjacency();
        for s in 0..self.vertices.len() {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = next;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &d in &adj[u] {
                    let w = self.dst[d];
                    if comp[w] == usize::MAX {
                        comp[w] = next;
                        queue.push_back(w);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn is_connected(&self) -> bool {
        !self.vertices.is_empty() && self.components().iter().all(|&c| c == 0)
    }

    /// Darts leaving each vertex, in index order.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for d in 0..self.src.len() {
            adj[self.src[d]].push(d);
        }
        adj
    }

    /// Shortest dart path from `from` to `to` with lexicographic tie-breaking
    /// on dart indices, or `None` when unreachable.
    pub fn shortest_path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        let adj = self.adjacency();
        let mut parent: Vec<Option<usize>> = vec![None; self.vertices.len()];
        let mut seen = vec![false; self.vertices.len()];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            if u == to {
                break;
            }
            for &d in &adj[u] {
                let w = self.dst[d];
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(d);
                    queue.push_back(w);
                }
            }
        }
        if !seen[to] {
            return None;
        }
        let mut path = Vec::new();
        let mut cur = to;
        while cur != from {
            let d = parent[cur].expect("bfs parent");
            path.push(d);
            cur = self.src[d];
        }
        path.reverse();
        Some(path)
    }

    /// Barycentric subdivision: a vertex per cell, two half edges per edge,
    /// and `2k` triangles per `k`-gon.
    pub fn barycentric_subdivision(&self) -> Complex2 {
        let mut b = Complex2::builder();
        for v in &self.vertices {
            b.vertex(format!("v:{v}"));
        }
        for (e, name) in self.edges.iter().enumerate() {
            let mid = format!("e:{name}");
            b.vertex(mid.clone());
            let d = 2 * e;
            b.edge(format!("{name}.0"), format!("v:{}", self.vertices[self.src[d]]), mid.clone());
            b.edge(format!("{name}.1"), mid, format!("v:{}", self.vertices[self.dst[d]]));
        }
        // Half darts of a dart: (first half, second half) as names.
        let halves = |d: usize| -> (String, String) {
            let name = &self.edges[d / 2];
            if d % 2 == 0 {
                (format!("{name}.0"), format!("{name}.1"))
            } else {
                (format!("-{name}.1"), format!("-{name}.0"))
            }
        };
        for face in &self.faces {
            let center = format!("f:{}", face.name);
            b.vertex(center.clone());
            let k = face.boundary.len();
            for (i, &d) in face.boundary.iter().enumerate() {
                b.edge(
                    format!("{}.v{i}", face.name),
                    center.clone(),
                    format!("v:{}", self.vertices[self.src[d]]),
                );
                b.edge(
                    format!("{}.m{i}", face.name),
                    center.clone(),
                    format!("e:{}", self.edges[d / 2]),
                );
            }
            for (i, &d) in face.boundary.iter().enumerate() {
                let (h0, h1) = halves(d);
                let next = (i + 1) % k;
                b.face(
                    format!("{}#{i}.a", face.name),
                    vec![format!("{}.v{i}", face.name), h0, format!("-{}.m{i}", face.name)],
                );
                b.face(
                    format!("{}#{i}.b", face.name),
                    vec![format!("{}.m{i}", face.name), h1, format!("-{}.v{next}", face.name)],
                );
            }
        }
        b.build().expect("subdivision of a valid complex is valid")
    }

    /// Whether every face boundary visits pairwise distinct vertices.
    pub fn has_embedded_boundaries(&self) -> bool {
        self.faces.iter().all(|face| {
            let verts: BTreeSet<usize> = face.boundary.iter().map(|&d| self.src[d]).collect();
            verts.len() == face.boundary.len()
        })
    }

    /// No loops and no parallel edges.
    pub fn has_simplicial_skeleton(&self) -> bool {
        let mut seen = BTreeSet::new();
        for e in 0..self.edges.len() {
            let (a, b) = (self.src[2 * e], self.dst[2 * e]);
            if a == b || !seen.insert((a.min(b), a.max(b))) {
                return false;
            }
        }
        true
    }

    /// Relabels every cell through the given renaming functions.
    pub fn renamed(
        &self,
        vname: impl Fn(&str) -> String,
        ename: impl Fn(&str) -> String,
        fname: impl Fn(&str) -> String,
    ) -> Complex2 {
        let mut b = Complex2::builder();
        for v in &self.vertices {
            b.vertex(vname(v));
        }
        for (e, name) in self.edges.iter().enumerate() {
            b.edge(
                ename(name),
                vname(&self.vertices[self.src[2 * e]]),
                vname(&self.vertices[self.dst[2 * e]]),
            );
        }
        for face in &self.faces {
            let word = face
                .boundary
                .iter()
                .map(|&d| {
                    let n = ename(&self.edges[d / 2]);
                    if d % 2 == 0 {
                        n
                    } else {
                        format!("-{n}")
                    }
                })
                .collect();
            b.face(fname(&face.name), word);
        }
        b.build().expect("renaming preserves validity")
    }

    /// Overwrites `rev(d)` without any checking; for building invalid inputs.
    pub fn set_rev_unchecked(&mut self, d: usize, r: usize) {
        self.rev[d] = r;
    }

    /// Overwrites a face boundary without any checking.
    pub fn set_face_unchecked(&mut self, f: usize, boundary: Vec<usize>) {
        self.faces[f].boundary = boundary;
    }
}

/// Incremental construction of a [`Complex2`] from string ids.
#[derive(Clone, Debug, Default)]
pub struct Complex2Builder {
    vertices: BTreeSet<String>,
    edges: BTreeMap<String, (String, String)>,
    faces: BTreeMap<String, Vec<String>>,
    duplicate: Option<String>,
}

impl Complex2Builder {
    pub fn vertex(&mut self, name: impl Into<String>) -> &mut Self {
        let name = name.into();
        if !self.vertices.insert(name.clone()) {
            self.duplicate.get_or_insert(name);
        }
        self
    }

    pub fn edge(&mut self, name: impl Into<String>, from: impl Into<String>, to: impl Into<String>) -> &mut Self {
        let name = name.into();
        if name.starts_with('-') {
            self.duplicate.get_or_insert(format!("edge id may not start with '-': {name}"));
        }
        if self.edges.insert(name.clone(), (from.into(), to.into())).is_some() {
            self.duplicate.get_or_insert(name);
        }
        self
    }

    pub fn face(&mut self, name: impl Into<String>, boundary: Vec<String>) -> &mut Self {
        let name = name.into();
        if self.faces.insert(name.clone(), boundary).is_some() {
            self.duplicate.get_or_insert(name);
        }
        self
    }

    /// Builds without checking face closure (ids must still resolve).
    pub fn build_unchecked(&self) -> Result<Complex2> {
        if let Some(dup) = &self.duplicate {
            return Err(Error::InvalidComplex(format!("duplicate or malformed id `{dup}`")));
        }
        let vertices: Vec<String> = self.vertices.iter().cloned().collect();
        let vidx: HashMap<&str, usize> =
            vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let mut edges = Vec::new();
        let mut src = Vec::new();
        let mut dst = Vec::new();
        let mut rev = Vec::new();
        for (i, (name, (from, to))) in self.edges.iter().enumerate() {
            let a = *vidx
                .get(from.as_str())
                .ok_or_else(|| Error::UnknownVertex(from.clone()))?;
            let b = *vidx.get(to.as_str()).ok_or_else(|| Error::UnknownVertex(to.clone()))?;
            edges.push(name.clone());
            src.extend([a, b]);
            dst.extend([b, a]);
            rev.extend([2 * i + 1, 2 * i]);
        }
        let eidx: HashMap<&str, usize> =
            edges.iter().enumerate().map(|(i, e)| (e.as_str(), i)).collect();
        let mut faces = Vec::new();
        for (name, word) in &self.faces {
            let mut boundary = Vec::with_capacity(word.len());
            for dart in word {
                let (edge, back) = match dart.strip_prefix('-') {
                    Some(e) => (e, 1),
                    None => (dart.as_str(), 0),
                };
                let e = *eidx.get(edge).ok_or_else(|| Error::UnknownCell(dart.clone()))?;
                boundary.push(2 * e + back);
            }
            faces.push(Face { name: name.clone(), boundary });
        }
        Ok(Complex2 { vertices, edges, src, dst, rev, faces })
    }

    pub fn build(&self) -> Result<Complex2> {
        let c = self.build_unchecked()?;
        let report = c.validate();
        if report.is_valid() {
            Ok(c)
        } else {
            Err(Error::InvalidComplex(report.violations.join("; ")))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct LinkArc {
    pub face: usize,
    pub position: usize,
    pub from: usize,
    pub to: usize,
}

/// Link of a vertex: darts leaving it, joined by one arc per face corner.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkGraph {
    pub vertex: usize,
    pub nodes: Vec<usize>,
    pub arcs: Vec<LinkArc>,
}

impl LinkGraph {
    /// Whether the arcs, viewed as an undirected multigraph on `nodes`, form a
    /// single cycle through every node.
    pub fn is_cycle(&self) -> bool {
        if self.nodes.is_empty() || self.nodes.len() != self.arcs.len() {
            return false;
        }
        let mut degree: BTreeMap<usize, usize> = self.nodes.iter().map(|&n| (n, 0)).collect();
        for a in &self.arcs {
            *degree.entry(a.from).or_default() += 1;
            *degree.entry(a.to).or_default() += 1;
        }
        if degree.values().any(|&d| d != 2) {
            return false;
        }
        // connectivity
        let mut seen = BTreeSet::from([self.nodes[0]]);
        let mut stack = vec![self.nodes[0]];
        while let Some(u) = stack.pop() {
            for a in &self.arcs {
                for (x, y) in [(a.from, a.to), (a.to, a.from)] {
                    if x == u && seen.insert(y) {
                        stack.push(y);
                    }
                }
            }
        }
        seen.len() == self.nodes.len()
    }
}

/// A subcomplex given by vertex, edge and face index sets of a parent complex.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subcomplex {
    pub vertices: BTreeSet<usize>,
    pub edges: BTreeSet<usize>,
    pub faces: BTreeSet<usize>,
}

impl Subcomplex {
    pub fn whole(c: &Complex2) -> Self {
        Subcomplex {
            vertices: c.vertices().collect(),
            edges: (0..c.edge_count()).collect(),
            faces: (0..c.face_count()).collect(),
        }
    }

    pub fn one_skeleton(c: &Complex2) -> Self {
        Subcomplex {
            vertices: c.vertices().collect(),
            edges: (0..c.edge_count()).collect(),
            faces: BTreeSet::new(),
        }
    }

    pub fn vertex(v: usize) -> Self {
        Subcomplex { vertices: BTreeSet::from([v]), ..Default::default() }
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty() && self.edges.is_empty() && self.faces.is_empty()
    }

    pub fn cell_count(&self) -> usize {
        self.vertices.len() + self.edges.len() + self.faces.len()
    }

    pub fn contains(&self, cell: Cell) -> bool {
        match cell {
            Cell::Vertex(v) => self.vertices.contains(&v),
            Cell::Edge(d) => self.edges.contains(&(d / 2)),
            Cell::Face(f) => self.faces.contains(&f),
        }
    }

    pub fn is_subset(&self, other: &Subcomplex) -> bool {
        self.vertices.is_subset(&other.vertices)
            && self.edges.is_subset(&other.edges)
            && self.faces.is_subset(&other.faces)
    }

    pub fn union(&self, other: &Subcomplex) -> Subcomplex {
        Subcomplex {
            vertices: self.vertices.union(&other.vertices).copied().collect(),
            edges: self.edges.union(&other.edges).copied().collect(),
            faces: self.faces.union(&other.faces).copied().collect(),
        }
    }

    /// Adds the boundary of every cell: faces bring their edges, edges their endpoints.
    pub fn closure(&self, c: &Complex2) -> Subcomplex {
        let mut out = self.clone();
        for &f in &self.faces {
            for &d in c.boundary(f) {
                out.edges.insert(d / 2);
            }
        }
        for &e in &out.edges.clone() {
            out.vertices.insert(c.src(2 * e));
            out.vertices.insert(c.dst(2 * e));
        }
        out
    }

    /// Whether the cell sets are closed under taking boundaries.
    pub fn is_subcomplex(&self, c: &Complex2) -> bool {
        self.vertices.iter().all(|&v| v < c.vertex_count())
            && self.edges.iter().all(|&e| e < c.edge_count())
            && self.faces.iter().all(|&f| f < c.face_count())
            && self.closure(c) == *self
    }

    /// The smallest full subcomplex containing `self`.
    ///
    /// Vertices have empty boundary and are not added by fullness; an edge is
    /// added once both endpoints are present, a face once all its boundary
    /// edges are.
    pub fn span(&self, c: &Complex2) -> Subcomplex {
        let mut out = self.closure(c);
        for e in 0..c.edge_count() {
            if out.vertices.contains(&c.src(2 * e)) && out.vertices.contains(&c.dst(2 * e)) {
                out.edges.insert(e);
            }
        }
        for f in 0..c.face_count() {
            if c.boundary(f).iter().all(|&d| out.edges.contains(&(d / 2))) {
                out.faces.insert(f);
            }
        }
        out
    }

    pub fn is_full(&self, c: &Complex2) -> bool {
        self.span(c) == *self
    }

    /// Materializes the subcomplex as a complex with the parent's names,
    /// together with the inclusion map.
    pub fn to_complex(&self, c: &Complex2) -> Complex2 {
        let mut b = Complex2::builder();
        for &v in &self.vertices {
            b.vertex(c.vertex_name(v));
        }
        for &e in &self.edges {
            b.edge(c.edge_name(e), c.vertex_name(c.src(2 * e)), c.vertex_name(c.dst(2 * e)));
        }
        for &f in &self.faces {
            b.face(c.face_name(f), c.boundary(f).iter().map(|&d| c.dart_name(d)).collect());
        }
        b.build().expect("closed subcomplex of a valid complex is valid")
    }

    pub fn is_connected(&self, c: &Complex2) -> bool {
        let Some(&start) = self.vertices.iter().next() else {
            return false;
        };
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &e in &self.edges {
                let (a, b) = (c.src(2 * e), c.dst(2 * e));
                for (x, y) in [(a, b), (b, a)] {
                    if x == u && seen.insert(y) {
                        stack.push(y);
                    }
                }
            }
        }
        seen.len() == self.vertices.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn disk3_is_valid() {
        assert!(fixtures::disk3().validate().is_valid());
    }

    #[test]
    fn fixed_point_reversal_is_reported() {
        let mut c = fixtures::disk3();
        let a = c.dart("a").unwrap();
        c.set_rev_unchecked(a, a);
        assert!(c.validate().mentions("fixed-point-free involution"));
    }

    #[test]
    fn open_face_word_is_reported() {
        let mut c = fixtures::disk3();
        let (a, b) = (c.dart("a").unwrap(), c.dart("b").unwrap());
        c.set_face_unchecked(0, vec![a, b]);
        assert!(c.validate().mentions("close cyclically"));
    }

    #[test]
    fn builder_rejects_unknown_dart() {
        let mut b = Complex2::builder();
        b.vertex("v").edge("a", "v", "v").face("f", vec!["z".into()]);
        assert!(b.build().is_err());
    }

    #[test]
    fn link_of_disk_corner_is_single_arc() {
        let c = fixtures::disk3();
        let v0 = c.vertex("v0").unwrap();
        let link = c.link(v0).unwrap();
        assert_eq!(link.arcs.len(), 1);
        let arc = link.arcs[0];
        let ends = BTreeSet::from([arc.from, arc.to]);
        assert_eq!(ends, BTreeSet::from([c.dart("a").unwrap(), c.dart("-c").unwrap()]));
    }

    #[test]
    fn link_of_wheel_center_is_six_cycle() {
        let c = fixtures::wheel(6);
        let link = c.link(c.vertex("z").unwrap()).unwrap();
        assert_eq!(link.nodes.len(), 6);
        assert_eq!(link.arcs.len(), 6);
        assert!(link.is_cycle());
    }

    #[test]
    fn link_of_graph_vertex_has_no_arcs() {
        let c = fixtures::cycle(3);
        let link = c.link(0).unwrap();
        assert_eq!(link.nodes.len(), 2);
        assert!(link.arcs.is_empty());
        assert!(c.link(99).is_err());
    }

    #[test]
    fn subdivision_counts() {
        let d = fixtures::disk3().barycentric_subdivision();
        assert_eq!((d.vertex_count(), d.face_count()), (7, 6));
        assert!(d.validate().is_valid());
        assert!(d.has_embedded_boundaries());
        assert!(d.has_simplicial_skeleton());

        // 1 + 2 + 1 cells give 4 vertices; one 4-gon gives 8 triangles
        let t = fixtures::torus1().barycentric_subdivision();
        assert_eq!((t.vertex_count(), t.face_count()), (4, 8));
        assert!(t.has_embedded_boundaries());

        let g = fixtures::cycle(3).barycentric_subdivision();
        assert_eq!((g.vertex_count(), g.edge_count(), g.face_count()), (6, 6, 0));
    }

    #[test]
    fn span_examples() {
        let c3 = fixtures::cycle(3);
        let mut k = Subcomplex::default();
        k.edges.extend([0, 1]);
        let k = k.closure(&c3);
        assert_eq!(k.span(&c3), Subcomplex::whole(&c3));
        assert!(!k.is_full(&c3));

        // two opposite edges already contain every vertex, so span fills in the rest
        let c4 = fixtures::cycle(4);
        let mut k = Subcomplex::default();
        k.edges.extend([0, 2]);
        let k = k.closure(&c4);
        assert_eq!(k.span(&c4), Subcomplex::whole(&c4));
        let mut one = Subcomplex::default();
        one.edges.insert(0);
        let one = one.closure(&c4);
        assert!(one.is_full(&c4));
        let mut opposite = Subcomplex::vertex(0);
        opposite.vertices.insert(2);
        assert!(opposite.is_full(&c4));

        let d = fixtures::disk3();
        let sk = Subcomplex::one_skeleton(&d);
        assert_eq!(sk.span(&d), Subcomplex::whole(&d));
        assert!(!sk.is_full(&d));
        assert!(Subcomplex::whole(&d).is_full(&d));
    }

    #[test]
    fn shortest_path_breaks_ties_by_dart_order() {
        let c = fixtures::cycle(4);
        let p = c.shortest_path(0, 2).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(c.dart_name(p[0]), "e0");
    }
}
