//! Finite group actions on complexes, and equivariant maps.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::complex::{Cell, Complex2, Subcomplex, ValidationReport};
use crate::error::{Error, Result};
use crate::group::FinGroup;
use crate::maps::{CombMap, FaceImage};

/// A finite group acting by combinatorial automorphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinAction {
    group: FinGroup,
    space: Arc<Complex2>,
    maps: Vec<CombMap>,
}

/// Encodes an automorphism as a permutation of vertices, darts and oriented face sides.
fn encode(m: &CombMap) -> Vec<usize> {
    let c = &*m.source;
    let mut offsets = Vec::with_capacity(c.face_count());
    let mut total = 0;
    for f in 0..c.face_count() {
        offsets.push(total);
        total += 2 * c.boundary(f).len();
    }
    let (nv, nd) = (c.vertex_count(), c.dart_count());
    let mut p: Vec<usize> = m.vmap.clone();
    p.extend(m.dmap.iter().map(|&d| nv + d));
    p.resize(nv + nd + total, 0);
    for f in 0..c.face_count() {
        let k = c.boundary(f).len();
        let im = m.fmap[f];
        for i in 0..k {
            for o in 0..2 {
                let target = offsets[im.face] + 2 * im.position(i, k) + (o ^ im.flip as usize);
                p[nv + nd + offsets[f] + 2 * i + o] = nv + nd + target;
            }
        }
    }
    p
}

fn decode(c: &Arc<Complex2>, p: &[usize]) -> CombMap {
    let (nv, nd) = (c.vertex_count(), c.dart_count());
    let mut offsets = Vec::new();
    let mut owner = Vec::new();
    for f in 0..c.face_count() {
        offsets.push(owner.len());
        for i in 0..2 * c.boundary(f).len() {
            owner.push((f, i));
        }
    }
    let fmap = (0..c.face_count())
        .map(|f| {
            let k = c.boundary(f).len();
            let (g, slot) = owner[p[nv + nd + offsets[f]] - nv - nd];
            let (pos, flip) = (slot / 2, slot % 2 == 1);
            let rot = if flip { k - 1 - pos } else { pos };
            FaceImage { face: g, rot, flip }
        })
        .collect();
    CombMap {
        source: c.clone(),
        target: c.clone(),
        vmap: p[..nv].to_vec(),
        dmap: p[nv..nv + nd].iter().map(|&x| x - nv).collect(),
        fmap,
    }
}

impl FinAction {
    pub fn new(group: FinGroup, space: impl Into<Arc<Complex2>>, maps: Vec<CombMap>) -> Result<FinAction> {
        let a = FinAction { group, space: space.into(), maps };
        let r = a.validate();
        if r.is_valid() {
            Ok(a)
        } else {
            Err(Error::InvalidAction(r.violations.join("; ")))
        }
    }

    pub fn new_unchecked(group: FinGroup, space: Arc<Complex2>, maps: Vec<CombMap>) -> FinAction {
        FinAction { group, space, maps }
    }

    /// The action generated by the given automorphisms.
    pub fn from_generators(space: impl Into<Arc<Complex2>>, gens: &[(&str, CombMap)]) -> Result<FinAction> {
        let space = space.into();
        let mut perms = Vec::new();
        for (name, m) in gens {
            if *m.source != *space || *m.target != *space {
                return Err(Error::InvalidAction(format!("generator {name} is not a self-map")));
            }
            let r = m.validate();
            if !r.is_valid() {
                return Err(Error::InvalidAction(format!("generator {name}: {}", r.violations.join("; "))));
            }
            if !m.is_isomorphism() {
                return Err(Error::InvalidAction(format!("generator {name} is not an automorphism")));
            }
            perms.push(encode(m));
        }
        let names: Vec<String> = gens.iter().map(|(n, _)| n.to_string()).collect();
        let (group, elems) = if perms.is_empty() {
            (FinGroup::trivial(), vec![encode(&CombMap::identity_arc(&space))])
        } else {
            FinGroup::from_permutations(&names, &perms)?
        };
        let maps = elems.iter().map(|p| decode(&space, p)).collect();
        FinAction::new(group, space, maps)
    }

    pub fn trivial(space: impl Into<Arc<Complex2>>) -> FinAction {
        let space = space.into();
        let id = CombMap::identity_arc(&space);
        FinAction { group: FinGroup::trivial(), space, maps: vec![id] }
    }

    pub fn group(&self) -> &FinGroup {
        &self.group
    }

    pub fn space(&self) -> &Arc<Complex2> {
        &self.space
    }

    pub fn element_map(&self, g: usize) -> &CombMap {
        &self.maps[g]
    }

    pub fn act_vertex(&self, g: usize, v: usize) -> usize {
        self.maps[g].vmap[v]
    }

    pub fn act_dart(&self, g: usize, d: usize) -> usize {
        self.maps[g].dmap[d]
    }

    pub fn act_face(&self, g: usize, f: usize) -> FaceImage {
        self.maps[g].fmap[f]
    }

    /// Homomorphism into the automorphism group, identity to identity.
    pub fn validate(&self) -> ValidationReport {
        let mut r = self.group.validate();
        let c = &self.space;
        if self.maps.len() != self.group.order() {
            r.push("one automorphism per group element is required");
            return r;
        }
        for (g, m) in self.maps.iter().enumerate() {
            if *m.source != **c || *m.target != **c {
                r.push(format!("element {} does not act on the space", self.group.name(g)));
                return r;
            }
            for v in m.validate().violations {
                r.push(format!("element {}: {v}", self.group.name(g)));
            }
            if !m.is_isomorphism() {
                r.push(format!("element {} is not an automorphism", self.group.name(g)));
            }
        }
        if !r.is_valid() {
            return r;
        }
        if self.maps[self.group.identity()] != CombMap::identity_arc(c) {
            r.push("identity element does not act as the identity");
        }
        let enc: Vec<Vec<usize>> = self.maps.iter().map(encode).collect();
        'outer: for a in self.group.elements() {
            for b in self.group.elements() {
                let ab = self.group.mul(a, b);
                if (0..enc[a].len()).any(|x| enc[ab][x] != enc[a][enc[b][x]]) {
                    r.push(format!(
                        "not a homomorphism: {} * {}",
                        self.group.name(a),
                        self.group.name(b)
                    ));
                    break 'outer;
                }
            }
        }
        r
    }

    fn orbit_reps(&self, n: usize, act: impl Fn(usize, usize) -> usize) -> Vec<Vec<usize>> {
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for x in 0..n {
            if seen[x] {
                continue;
            }
            let orbit: BTreeSet<usize> = self.group.elements().map(|g| act(g, x)).collect();
            for &y in &orbit {
                seen[y] = true;
            }
            out.push(orbit.into_iter().collect());
        }
        out
    }

    pub fn vertex_orbits(&self) -> Vec<Vec<usize>> {
        self.orbit_reps(self.space.vertex_count(), |g, v| self.act_vertex(g, v))
    }

    /// Orbits of edges (dart pairs), as edge indices.
    pub fn edge_orbits(&self) -> Vec<Vec<usize>> {
        self.orbit_reps(self.space.edge_count(), |g, e| self.act_dart(g, 2 * e) / 2)
    }

    pub fn face_orbits(&self) -> Vec<Vec<usize>> {
        self.orbit_reps(self.space.face_count(), |g, f| self.act_face(g, f).face)
    }

    /// Numbers of vertex orbits and edge orbits.
    pub fn orbit_counts(&self) -> (usize, usize) {
        (self.vertex_orbits().len(), self.edge_orbits().len())
    }

    fn fixes_pointwise(&self, g: usize, cell: Cell) -> bool {
        match cell {
            Cell::Vertex(v) => self.act_vertex(g, v) == v,
            Cell::Edge(d) => self.act_dart(g, d) == d,
            Cell::Face(f) => self.act_face(g, f) == FaceImage { face: f, rot: 0, flip: false },
        }
    }

    fn fixes_setwise(&self, g: usize, cell: Cell) -> bool {
        match cell {
            Cell::Vertex(v) => self.act_vertex(g, v) == v,
            Cell::Edge(d) => self.act_dart(g, d) / 2 == d / 2,
            Cell::Face(f) => self.act_face(g, f).face == f,
        }
    }

    fn check_cell(&self, cell: Cell) -> Result<()> {
        let ok = match cell {
            Cell::Vertex(v) => v < self.space.vertex_count(),
            Cell::Edge(d) => d < self.space.dart_count(),
            Cell::Face(f) => f < self.space.face_count(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::UnknownCell(format!("{cell:?}")))
        }
    }

    /// Pointwise stabilizer of a cell, as sorted group elements.
    pub fn stabilizer(&self, cell: Cell) -> Result<Vec<usize>> {
        self.check_cell(cell)?;
        Ok(self.group.elements().filter(|&g| self.fixes_pointwise(g, cell)).collect())
    }

    pub fn all_cells(&self) -> Vec<Cell> {
        let c = &self.space;
        let mut cells: Vec<Cell> = c.vertices().map(Cell::Vertex).collect();
        cells.extend((0..c.edge_count()).map(|e| Cell::Edge(2 * e)));
        cells.extend((0..c.face_count()).map(Cell::Face));
        cells
    }

    /// An element and cell witnessing an inversion, if any.
    pub fn inversion(&self) -> Option<(usize, Cell)> {
        for cell in self.all_cells() {
            for g in self.group.elements() {
                if self.fixes_setwise(g, cell) && !self.fixes_pointwise(g, cell) {
                    return Some((g, cell));
                }
            }
        }
        None
    }

    pub fn is_without_inversions(&self) -> bool {
        self.inversion().is_none()
    }

    /// Cells fixed pointwise by every element of `sub`.
    pub fn fixed_subcomplex(&self, sub: &[usize]) -> Result<Subcomplex> {
        if !self.is_without_inversions() {
            return Err(Error::Inversions);
        }
        let fixed = |cell| sub.iter().all(|&g| self.fixes_pointwise(g, cell));
        let c = &self.space;
        Ok(Subcomplex {
            vertices: c.vertices().filter(|&v| fixed(Cell::Vertex(v))).collect(),
            edges: (0..c.edge_count()).filter(|&e| fixed(Cell::Edge(2 * e))).collect(),
            faces: (0..c.face_count()).filter(|&f| fixed(Cell::Face(f))).collect(),
        })
    }

    pub fn is_invariant(&self, z: &Subcomplex) -> bool {
        self.group.elements().all(|g| {
            z.vertices.iter().all(|&v| z.vertices.contains(&self.act_vertex(g, v)))
                && z.edges.iter().all(|&e| z.edges.contains(&(self.act_dart(g, 2 * e) / 2)))
                && z.faces.iter().all(|&f| z.faces.contains(&self.act_face(g, f).face))
        })
    }

    /// Collapses along orbits of free edges, smallest orbit first, until none is left.
    pub fn equivariant_collapse(&self, z: &Subcomplex) -> Result<Subcomplex> {
        self.equivariant_collapse_with(z, |_| 0)
    }

    /// As [`FinAction::equivariant_collapse`], with `choose` picking the next
    /// orbit from the sorted list of free edge orbits.
    pub fn equivariant_collapse_with(
        &self,
        z: &Subcomplex,
        mut choose: impl FnMut(&[Vec<usize>]) -> usize,
    ) -> Result<Subcomplex> {
        if !self.is_without_inversions() {
            return Err(Error::Inversions);
        }
        if !self.is_invariant(z) || !z.is_subcomplex(&self.space) {
            return Err(Error::InvalidInput("collapse requires an invariant subcomplex".into()));
        }
        let c = &self.space;
        let mut cur = z.clone();
        loop {
            let free = free_edges(c, &cur);
            if free.is_empty() {
                return Ok(cur);
            }
            let mut orbits: Vec<Vec<usize>> = Vec::new();
            for &(e, _) in &free {
                if orbits.iter().any(|o| o.contains(&e)) {
                    continue;
                }
                let o: BTreeSet<usize> = self.group.elements().map(|g| self.act_dart(g, 2 * e) / 2).collect();
                orbits.push(o.into_iter().collect());
            }
            let pick = &orbits[choose(&orbits).min(orbits.len() - 1)];
            for &e in pick {
                let f = free.iter().find(|(x, _)| *x == e).map(|(_, f)| *f).ok_or_else(|| {
                    Error::Internal("orbit of a free edge contains a non-free edge".into())
                })?;
                cur.edges.remove(&e);
                cur.faces.remove(&f);
            }
        }
    }
}

/// Edges of `z` occurring exactly once in the boundaries of faces of `z`,
/// with the face containing them.
pub fn free_edges(c: &Complex2, z: &Subcomplex) -> Vec<(usize, usize)> {
    let mut count = vec![0usize; c.edge_count()];
    let mut owner = vec![0usize; c.edge_count()];
    for &f in &z.faces {
        for &d in c.boundary(f) {
            count[d / 2] += 1;
            owner[d / 2] = f;
        }
    }
    z.edges.iter().filter(|&&e| count[e] == 1).map(|&e| (e, owner[e])).collect()
}

/// Whether iterated free-edge collapses followed by leaf removals reach one vertex.
pub fn collapses_to_point(c: &Complex2) -> bool {
    let mut cur = Subcomplex::whole(c);
    loop {
        let free = free_edges(c, &cur);
        let Some(&(e, f)) = free.first() else { break };
        cur.edges.remove(&e);
        cur.faces.remove(&f);
    }
    if !cur.faces.is_empty() {
        return false;
    }
    // the remaining graph collapses to a point iff it is a tree
    cur.is_connected(c) && cur.edges.len() + 1 == cur.vertices.len()
}

/// An equivariant map: a combinatorial map with a compatible group homomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqMap {
    pub map: CombMap,
    pub source: Arc<FinAction>,
    pub target: Arc<FinAction>,
    pub fsharp: Vec<usize>,
}

/// Validation outcome plus the classification of an equivariant map.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EqMapReport {
    pub report: ValidationReport,
    pub inclusion: bool,
    pub zero_surjective: bool,
    pub stabilizer_preserving: bool,
}

impl EqMap {
    pub fn new(map: CombMap, source: Arc<FinAction>, target: Arc<FinAction>, fsharp: Vec<usize>) -> Result<EqMap> {
        let m = EqMap { map, source, target, fsharp };
        let r = m.validate();
        if r.report.is_valid() {
            Ok(m)
        } else {
            Err(Error::InvalidMap(r.report.violations.join("; ")))
        }
    }

    /// Finds `fsharp` by matching each source generator with a target element
    /// satisfying equivariance on that generator.
    pub fn infer(map: CombMap, source: Arc<FinAction>, target: Arc<FinAction>) -> Result<EqMap> {
        let (sg, tg) = (source.group(), target.group());
        let mut on_gens = Vec::new();
        for &g in sg.generators() {
            let lhs = map.compose(source.element_map(g))?;
            let h = tg
                .elements()
                .find(|&h| target.element_map(h).compose(&map).map_or(false, |rhs| rhs == lhs))
                .ok_or_else(|| Error::InvalidMap(format!("no image for generator {}", sg.name(g))))?;
            on_gens.push(h);
        }
        let fsharp = sg.extend_hom(tg, &on_gens)?;
        EqMap::new(map, source, target, fsharp)
    }

    pub fn identity(a: &Arc<FinAction>) -> EqMap {
        EqMap {
            map: CombMap::identity_arc(a.space()),
            source: a.clone(),
            target: a.clone(),
            fsharp: a.group().elements().collect(),
        }
    }

    /// Maps between trivially acted complexes.
    pub fn plain(map: CombMap) -> EqMap {
        let source = Arc::new(FinAction::trivial(map.source.clone()));
        let target = Arc::new(FinAction::trivial(map.target.clone()));
        EqMap { map, source, target, fsharp: vec![0] }
    }

    pub fn validate(&self) -> EqMapReport {
        let mut out = EqMapReport::default();
        let r = &mut out.report;
        let (sa, ta) = (&*self.source, &*self.target);
        if *self.map.source != **sa.space() || *self.map.target != **ta.space() {
            r.push("map and actions live on different complexes");
            return out;
        }
        for v in self.map.validate().violations {
            r.push(v);
        }
        if !sa.group().is_homomorphism(ta.group(), &self.fsharp) {
            r.push("fsharp is not a group homomorphism");
        }
        if !r.is_valid() {
            return out;
        }
        for &g in sa.group().generators() {
            let lhs = self.map.compose(sa.element_map(g)).expect("same source");
            let rhs = ta.element_map(self.fsharp[g]).compose(&self.map).expect("same target");
            if lhs != rhs {
                r.push(format!("equivariance fails for generator {}", sa.group().name(g)));
            }
        }
        if !r.is_valid() {
            return out;
        }
        let fs: BTreeSet<usize> = self.fsharp.iter().copied().collect();
        out.inclusion = self.map.is_injective() && fs.len() == self.fsharp.len();
        out.zero_surjective = self.map.is_zero_surjective();
        out.stabilizer_preserving = self.is_stabilizer_preserving();
        out
    }

    /// Whether `fsharp` restricts to isomorphisms `G_x -> H_f(x)` on every cell.
    pub fn is_stabilizer_preserving(&self) -> bool {
        let (sa, ta) = (&*self.source, &*self.target);
        sa.all_cells().into_iter().all(|cell| {
            let img = match cell {
                Cell::Vertex(v) => Cell::Vertex(self.map.vmap[v]),
                Cell::Edge(d) => Cell::Edge(self.map.dmap[d]),
                Cell::Face(f) => Cell::Face(self.map.fmap[f].face),
            };
            let gs = sa.stabilizer(cell).unwrap();
            let hs = ta.stabilizer(img).unwrap();
            let imgs: BTreeSet<usize> = gs.iter().map(|&g| self.fsharp[g]).collect();
            imgs.len() == gs.len() && imgs == hs.iter().copied().collect::<BTreeSet<_>>()
        })
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &EqMap) -> Result<EqMap> {
        if *first.target != *self.source {
            return Err(Error::Mismatch);
        }
        Ok(EqMap {
            map: self.map.compose(&first.map)?,
            source: first.source.clone(),
            target: self.target.clone(),
            fsharp: first.fsharp.iter().map(|&g| self.fsharp[g]).collect(),
        })
    }

    /// Orbits of the source action on vertices: v(G, X).
    pub fn d(&self) -> usize {
        self.source.vertex_orbits().len()
    }

    /// Orbits of `fsharp(G)` on the vertices of the image.
    pub fn r(&self) -> usize {
        let ta = &*self.target;
        let image_group: BTreeSet<usize> = self.fsharp.iter().copied().collect();
        let image: BTreeSet<usize> = self.map.vmap.iter().copied().collect();
        let mut seen = BTreeSet::new();
        let mut count = 0;
        for &v in &image {
            if seen.contains(&v) {
                continue;
            }
            count += 1;
            for &h in &image_group {
                seen.insert(ta.act_vertex(h, v));
            }
        }
        count
    }
}
