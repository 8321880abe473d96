//! Universal covers materialized on demand.
//!
//! A cover vertex is a base vertex together with the reduced word of a path
//! reaching it from the root (tree darts deleted). Two such pairs name the
//! same vertex exactly when the oracle says the words differ by a trivial
//! loop; every new vertex is compared against all earlier ones over the same
//! base vertex, so indices are canonical. An `Unknown` answer aborts.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use crate::complex::Complex2;
use crate::error::{Error, Result};
use crate::maps::{CombMap, FaceImage};
use crate::oracle::{Answer, Budgets, Strategy, WordOracle};
use crate::pi1::{free_reduce, inverse, Presentation, Word};

#[derive(Debug)]
pub struct LazyCover {
    base: Arc<Complex2>,
    oracle: WordOracle,
    verts: Vec<(usize, Word)>,
    over: Vec<Vec<usize>>,
    steps: HashMap<(usize, usize), usize>,
}

/// A finite set of cover cells. Edges are keyed by the tail of their forward
/// dart and the base edge, faces by their corner-0 vertex and the base face.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Region {
    pub vertices: BTreeSet<usize>,
    pub edges: BTreeSet<(usize, usize)>,
    pub faces: BTreeSet<(usize, usize)>,
}

impl Region {
    pub fn is_subset(&self, other: &Region) -> bool {
        self.vertices.is_subset(&other.vertices)
            && self.edges.is_subset(&other.edges)
            && self.faces.is_subset(&other.faces)
    }
}

/// A region turned into a complex, with its cells indexed by key.
#[derive(Clone, Debug)]
pub struct Materialized {
    pub complex: Arc<Complex2>,
    pub vidx: BTreeMap<usize, usize>,
    pub eidx: BTreeMap<(usize, usize), usize>,
    pub fidx: BTreeMap<(usize, usize), usize>,
    /// Projection to the base complex.
    pub projection: CombMap,
}

impl LazyCover {
    pub fn new(base: Arc<Complex2>, root: usize, chain: Vec<Strategy>) -> Result<LazyCover> {
        let oracle = WordOracle::new(&base, root, chain)?;
        let mut over = vec![Vec::new(); base.vertex_count()];
        over[root].push(0);
        Ok(LazyCover { base, oracle, verts: vec![(root, Vec::new())], over, steps: HashMap::new() })
    }

    pub fn with_budgets(base: Arc<Complex2>, root: usize, budgets: &Budgets) -> Result<LazyCover> {
        LazyCover::new(base, root, budgets.chain())
    }

    pub fn base(&self) -> &Arc<Complex2> {
        &self.base
    }

    pub fn presentation(&self) -> &Presentation {
        self.oracle.presentation()
    }

    pub fn oracle(&mut self) -> &mut WordOracle {
        &mut self.oracle
    }

    pub fn root(&self) -> usize {
        0
    }

    pub fn vertex_count(&self) -> usize {
        self.verts.len()
    }

    pub fn base_vertex(&self, x: usize) -> usize {
        self.verts[x].0
    }

    pub fn word(&self, x: usize) -> &Word {
        &self.verts[x].1
    }

    /// A base path from the root's projection whose lift ends at `x`.
    pub fn class_path(&self, x: usize) -> Vec<usize> {
        let (v, w) = &self.verts[x];
        let p = self.presentation();
        let mut path = p.word_loop(w);
        path.extend(p.tree_path(*v));
        path
    }

    fn intern(&mut self, v: usize, w: Word) -> Result<usize> {
        let w = free_reduce(&w);
        if let Some(&y) = self.over[v].iter().find(|&&y| self.verts[y].1 == w) {
            return Ok(y);
        }
        for y in self.over[v].clone() {
            match self.oracle.equal(&self.verts[y].1.clone(), &w) {
                Answer::Trivial => return Ok(y),
                Answer::Nontrivial => {}
                Answer::Unknown => {
                    let mut q = inverse(&self.verts[y].1);
                    q.extend_from_slice(&w);
                    return Err(Error::OracleUnknown(self.oracle.presentation().word_string(&free_reduce(&q))));
                }
            }
        }
        self.verts.push((v, w));
        self.over[v].push(self.verts.len() - 1);
        Ok(self.verts.len() - 1)
    }

    /// End of the lift of dart `d` from cover vertex `x`.
    pub fn lift_dart(&mut self, x: usize, d: usize) -> Result<usize> {
        if let Some(&y) = self.steps.get(&(x, d)) {
            return Ok(y);
        }
        if self.base.src(d) != self.verts[x].0 {
            return Err(Error::InvalidInput(format!("dart {} does not start under the given vertex", self.base.dart_name(d))));
        }
        let mut w = self.verts[x].1.clone();
        w.extend(self.presentation().letter(d));
        let y = self.intern(self.base.dst(d), w)?;
        self.steps.insert((x, d), y);
        self.steps.insert((y, d ^ 1), x);
        Ok(y)
    }

    /// Vertices along the lift of `path` from `x`, including both ends.
    pub fn lift_path(&mut self, x: usize, path: &[usize]) -> Result<Vec<usize>> {
        let mut out = vec![x];
        for &d in path {
            let y = self.lift_dart(*out.last().unwrap(), d)?;
            out.push(y);
        }
        Ok(out)
    }

    pub fn walk(&mut self, x: usize, path: &[usize]) -> Result<usize> {
        path.iter().try_fold(x, |y, &d| self.lift_dart(y, d))
    }

    /// Lift of a path from the root.
    pub fn lift_vertex(&mut self, path: &[usize]) -> Result<usize> {
        if let Some(&d) = path.first() {
            if self.base.src(d) != self.verts[0].0 {
                return Err(Error::InvalidInput("path does not start at the root".into()));
            }
        }
        self.walk(0, path)
    }

    /// Key of the edge carrying the lift of `d` from `x`.
    pub fn edge_key(&mut self, x: usize, d: usize) -> Result<(usize, usize)> {
        if d % 2 == 0 {
            Ok((x, d / 2))
        } else {
            Ok((self.lift_dart(x, d)?, d / 2))
        }
    }

    /// Corner vertices of the lift of face `f` whose corner `corner` is `x`.
    pub fn lift_face(&mut self, x: usize, f: usize, corner: usize) -> Result<Vec<usize>> {
        let b = self.base.boundary(f).to_vec();
        let back: Vec<usize> = b[..corner].iter().rev().map(|&d| d ^ 1).collect();
        let c0 = self.walk(x, &back)?;
        let mut out = self.lift_path(c0, &b)?;
        out.pop();
        Ok(out)
    }

    /// Edges between, and faces on, a set of cover vertices.
    pub fn span(&mut self, vertices: &BTreeSet<usize>) -> Result<Region> {
        let mut r = Region { vertices: vertices.clone(), ..Region::default() };
        for &x in vertices {
            let v = self.verts[x].0;
            for d in self.base.darts_from(v) {
                if vertices.contains(&self.lift_dart(x, d)?) {
                    r.edges.insert(self.edge_key(x, d)?);
                }
            }
            for f in 0..self.base.face_count() {
                let b = self.base.boundary(f);
                if b.is_empty() || self.base.src(b[0]) != v {
                    continue;
                }
                if self.lift_face(x, f, 0)?.iter().all(|y| vertices.contains(y)) {
                    r.faces.insert((x, f));
                }
            }
        }
        Ok(r)
    }

    /// `r` together with every cell meeting one of its vertices, closed up.
    pub fn closed_star(&mut self, r: &Region) -> Result<Region> {
        let mut out = r.clone();
        for &x in &r.vertices {
            let v = self.verts[x].0;
            for d in self.base.darts_from(v) {
                let y = self.lift_dart(x, d)?;
                out.vertices.insert(y);
                out.edges.insert(self.edge_key(x, d)?);
            }
            for f in 0..self.base.face_count() {
                let b = self.base.boundary(f).to_vec();
                for (i, &d) in b.iter().enumerate() {
                    if self.base.src(d) != v {
                        continue;
                    }
                    let corners = self.lift_face(x, f, i)?;
                    for (j, &e) in b.iter().enumerate() {
                        out.edges.insert(self.edge_key(corners[j], e)?);
                    }
                    out.vertices.extend(corners.iter().copied());
                    out.faces.insert((corners[0], f));
                }
            }
        }
        Ok(out)
    }

    /// Builds a region as a complex. Names are `name~index`, taken from the
    /// image of each base cell under `names` (the identity when `None`).
    pub fn materialize(&mut self, r: &Region, names: Option<&CombMap>) -> Result<Materialized> {
        let base = self.base.clone();
        let (vn, en, fname): (Box<dyn Fn(usize) -> String>, Box<dyn Fn(usize) -> String>, Box<dyn Fn(usize) -> String>) =
            match names {
                Some(m) => {
                    let (a, b, c) = (m.clone(), m.clone(), m.clone());
                    (
                        Box::new(move |v| a.target.vertex_name(a.vmap[v]).to_string()),
                        Box::new(move |e| b.target.edge_name(b.dmap[2 * e] / 2).to_string()),
                        Box::new(move |f| c.target.face_name(c.fmap[f].face).to_string()),
                    )
                }
                None => {
                    let (a, b, c) = (base.clone(), base.clone(), base.clone());
                    (
                        Box::new(move |v| a.vertex_name(v).to_string()),
                        Box::new(move |e| b.edge_name(e).to_string()),
                        Box::new(move |f| c.face_name(f).to_string()),
                    )
                }
            };
        let vname = |x: usize, s: &Self| format!("{}~{}", vn(s.verts[x].0), x);
        let ename = |(x, e): (usize, usize)| format!("{}~{}", en(e), x);
        let mut b = Complex2::builder();
        for &x in &r.vertices {
            b.vertex(vname(x, self));
        }
        for &(x, e) in &r.edges {
            let y = self.lift_dart(x, 2 * e)?;
            if !r.vertices.contains(&y) {
                return Err(Error::Internal("region edge leaves the region".into()));
            }
            b.edge(ename((x, e)), vname(x, self), vname(y, self));
        }
        for &(x, f) in &r.faces {
            let corners = self.lift_face(x, f, 0)?;
            let mut word = Vec::new();
            for (i, &d) in base.boundary(f).iter().enumerate() {
                let key = self.edge_key(corners[i], d)?;
                if !r.edges.contains(&key) {
                    return Err(Error::Internal("region face boundary leaves the region".into()));
                }
                word.push(if d % 2 == 0 { ename(key) } else { format!("-{}", ename(key)) });
            }
            b.face(format!("{}~{}", fname(f), x), word);
        }
        let c = Arc::new(b.build()?);
        let vidx: BTreeMap<usize, usize> = r.vertices.iter().map(|&x| (x, c.vertex(&vname(x, self)).unwrap())).collect();
        let eidx: BTreeMap<(usize, usize), usize> =
            r.edges.iter().map(|&k| (k, c.edge_index(&ename(k)).unwrap())).collect();
        let fidx: BTreeMap<(usize, usize), usize> =
            r.faces.iter().map(|&(x, f)| ((x, f), c.face_id(&format!("{}~{}", fname(f), x)).unwrap())).collect();
        let mut vmap = vec![0; c.vertex_count()];
        let mut dmap = vec![0; c.dart_count()];
        let mut fmap = vec![FaceImage::default(); c.face_count()];
        for (&x, &i) in &vidx {
            vmap[i] = self.verts[x].0;
        }
        for (&(_, e), &i) in &eidx {
            dmap[2 * i] = 2 * e;
            dmap[2 * i + 1] = 2 * e + 1;
        }
        for (&(_, f), &i) in &fidx {
            fmap[i] = FaceImage { face: f, rot: 0, flip: false };
        }
        let projection = CombMap::new(c.clone(), base, vmap, dmap, fmap)?;
        Ok(Materialized { complex: c, vidx, eidx, fidx, projection })
    }
}

impl Materialized {
    /// Whether the projection is a covering at vertex index `i`: every dart
    /// and face corner at the base vertex lifts to one here.
    pub fn is_covering_at(&self, i: usize) -> bool {
        let (c, p) = (&*self.complex, &self.projection);
        let base = &*p.target;
        let v = p.vmap[i];
        let darts = c.darts_from(i).len() == base.darts_from(v).len();
        let corners = |cx: &Complex2, u: usize| {
            cx.faces().iter().map(|f| f.boundary.iter().filter(|&&d| cx.src(d) == u).count()).sum::<usize>()
        };
        darts && corners(c, i) == corners(base, v)
    }
}
