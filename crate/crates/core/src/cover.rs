//! Finite universal covers, deck actions and lifted group actions.
//!
//! A cover vertex is a pair `(v, k)`: a base vertex and an element `k` of
//! `pi_1` (a coset of the trivial subgroup), meaning "reached from the base
//! lift by a path whose loop word traces `0 -> k`". Lifting a dart `d` from
//! `(src d, k)` ends at `(dst d, k . letter(d))`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;

use serde::Serialize;

use crate::actions::{collapses_to_point, EqMap, FinAction};
use crate::complex::{Cell, Complex2, ValidationReport};
use crate::coset::{coset_enumerate, CosetTable};
use crate::error::{Error, Result};
use crate::group::FinGroup;
use crate::maps::{CombMap, FaceImage};
use crate::oracle::Budgets;
use crate::pi1::{inverse, Presentation, Word};

/// Three-valued answer to an undecidable question.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Decision {
    Yes,
    No,
    Unknown,
}

/// Simple connectivity by presentation, collapsing and coset enumeration.
pub fn is_simply_connected(c: &Complex2, budgets: &Budgets) -> Decision {
    if c.vertex_count() == 0 {
        return Decision::No;
    }
    let Ok(p) = Presentation::new(c, 0) else {
        return Decision::No;
    };
    if p.generator_count() == 0 {
        return Decision::Yes;
    }
    if c.face_count() == 0 {
        return Decision::No;
    }
    if collapses_to_point(c) {
        return Decision::Yes;
    }
    match coset_enumerate(&p, &[], budgets.coset_limit) {
        Ok(t) if t.index() == 1 => Decision::Yes,
        Ok(_) => Decision::No,
        Err(_) => Decision::Unknown,
    }
}

#[derive(Clone, Debug)]
pub struct UniversalCover {
    pub base: Arc<Complex2>,
    pub cover: Arc<Complex2>,
    pub projection: CombMap,
    pub deck: FinAction,
    pub pres: Presentation,
    pub table: CosetTable,
    /// Shortest word reaching each coset.
    pub coset_words: Vec<Word>,
    vidx: Vec<Vec<usize>>,
    eidx: Vec<Vec<usize>>,
    fidx: Vec<Vec<usize>>,
}

impl UniversalCover {
    pub fn order(&self) -> usize {
        self.table.index()
    }

    pub fn vertex(&self, v: usize, k: usize) -> usize {
        self.vidx[v][k]
    }

    pub fn face(&self, f: usize, k: usize) -> usize {
        self.fidx[f][k]
    }

    /// Coset at the end of dart `d` lifted from coset `k`.
    pub fn step(&self, k: usize, d: usize) -> usize {
        match self.pres.letter(d) {
            Some(l) => self.table.act(k, l),
            None => k,
        }
    }

    pub fn walk(&self, k: usize, path: &[usize]) -> usize {
        path.iter().fold(k, |k, &d| self.step(k, d))
    }

    /// Cover dart lifting `d` from `(src d, k)`.
    pub fn lift_dart(&self, d: usize, k: usize) -> usize {
        if d % 2 == 0 {
            2 * self.eidx[d / 2][k]
        } else {
            2 * self.eidx[d / 2][self.step(k, d)] + 1
        }
    }

    /// Product in `pi_1` of cosets.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table.trace(a, &self.coset_words[b])
    }

    /// A base path from the base vertex to `v` whose lift ends at `(v, k)`.
    pub fn class_path(&self, v: usize, k: usize) -> Vec<usize> {
        let mut p = self.pres.word_loop(&self.coset_words[k]);
        p.extend(self.pres.tree_path(v));
        p
    }

    /// Base vertex and coset of a cover vertex.
    pub fn locate(&self, x: usize) -> (usize, usize) {
        for (v, row) in self.vidx.iter().enumerate() {
            if let Some(k) = row.iter().position(|&y| y == x) {
                return (v, k);
            }
        }
        panic!("cover vertex out of range")
    }

    /// Coset of the lift of face `f` whose corner `corner` sits over coset `k`.
    pub fn face_coset_at_corner(&self, f: usize, corner: usize, k: usize) -> usize {
        let prefix = &self.base.boundary(f)[..corner];
        self.table.trace(k, &inverse(&self.pres.path_word(prefix)))
    }
}

fn coset_words(t: &CosetTable) -> Vec<Word> {
    let mut words: Vec<Option<Word>> = vec![None; t.index()];
    words[0] = Some(Vec::new());
    let mut queue = VecDeque::from([0]);
    while let Some(c) = queue.pop_front() {
        for l in 0..2 * t.generators as u32 {
            let d = t.act(c, l);
            if words[d].is_none() {
                let mut w = words[c].clone().unwrap();
                w.push(l);
                words[d] = Some(w);
                queue.push_back(d);
            }
        }
    }
    words.into_iter().map(|w| w.expect("table is transitive")).collect()
}

fn letter_names(p: &Presentation, w: &[u32]) -> String {
    if w.is_empty() {
        "e".into()
    } else {
        w.iter().map(|&l| p.letter_name(l)).collect::<Vec<_>>().join(".")
    }
}

/// The universal cover of `c` at its first vertex, when `pi_1` is finite.
pub fn universal_cover_finite(c: &Complex2, budgets: &Budgets) -> Result<UniversalCover> {
    let base = Arc::new(c.clone());
    let pres = Presentation::new(c, 0)?;
    let table = coset_enumerate(&pres, &[], budgets.coset_limit)?;
    let n = table.index();
    let words = coset_words(&table);
    let step = |k: usize, d: usize| pres.letter(d).map_or(k, |l| table.act(k, l));
    let vname = |v: usize, k: usize| format!("{}@{}", c.vertex_name(v), k);
    let ename = |e: usize, k: usize| format!("{}@{}", c.edge_name(e), k);
    let mut b = Complex2::builder();
    for v in c.vertices() {
        for k in 0..n {
            b.vertex(vname(v, k));
        }
    }
    for e in 0..c.edge_count() {
        let d = 2 * e;
        for k in 0..n {
            b.edge(ename(e, k), vname(c.src(d), k), vname(c.dst(d), step(k, d)));
        }
    }
    let dart_name = |d: usize, k: usize| {
        if d % 2 == 0 {
            ename(d / 2, k)
        } else {
            format!("-{}", ename(d / 2, step(k, d)))
        }
    };
    for f in 0..c.face_count() {
        for k in 0..n {
            let mut cur = k;
            let mut word = Vec::new();
            for &d in c.boundary(f) {
                word.push(dart_name(d, cur));
                cur = step(cur, d);
            }
            b.face(format!("{}@{}", c.face_name(f), k), word);
        }
    }
    let cover = Arc::new(b.build()?);
    let vidx: Vec<Vec<usize>> =
        c.vertices().map(|v| (0..n).map(|k| cover.vertex(&vname(v, k)).unwrap()).collect()).collect();
    let eidx: Vec<Vec<usize>> = (0..c.edge_count())
        .map(|e| (0..n).map(|k| cover.edge_index(&ename(e, k)).unwrap()).collect())
        .collect();
    let fidx: Vec<Vec<usize>> = (0..c.face_count())
        .map(|f| (0..n).map(|k| cover.face_id(&format!("{}@{}", c.face_name(f), k)).unwrap()).collect())
        .collect();

    let mut vmap = vec![0; cover.vertex_count()];
    let mut dmap = vec![0; cover.dart_count()];
    let mut fmap = vec![FaceImage::default(); cover.face_count()];
    for v in c.vertices() {
        for k in 0..n {
            vmap[vidx[v][k]] = v;
        }
    }
    for e in 0..c.edge_count() {
        for k in 0..n {
            dmap[2 * eidx[e][k]] = 2 * e;
            dmap[2 * eidx[e][k] + 1] = 2 * e + 1;
        }
    }
    for f in 0..c.face_count() {
        for k in 0..n {
            fmap[fidx[f][k]] = FaceImage { face: f, rot: 0, flip: false };
        }
    }
    let projection = CombMap::new(cover.clone(), base.clone(), vmap, dmap, fmap)?;

    let mut uc = UniversalCover {
        base,
        cover: cover.clone(),
        projection,
        deck: FinAction::trivial(cover.clone()),
        pres,
        table,
        coset_words: words,
        vidx,
        eidx,
        fidx,
    };
    let mul: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| uc.mul(a, b)).collect()).collect();
    let names = uc.coset_words.iter().map(|w| letter_names(&uc.pres, w)).collect();
    let group = FinGroup::from_table(names, mul)?;
    let maps = (0..n).map(|g| uc.deck_map(g)).collect();
    uc.deck = FinAction::new(group, cover.clone(), maps)?;
    if is_simply_connected(&cover, budgets) != Decision::Yes {
        return Err(Error::Undecided("could not confirm the cover is simply connected".into()));
    }
    Ok(uc)
}

impl UniversalCover {
    fn deck_map(&self, g: usize) -> CombMap {
        let (c, cov) = (&*self.base, &*self.cover);
        let n = self.order();
        let mut vmap = vec![0; cov.vertex_count()];
        let mut dmap = vec![0; cov.dart_count()];
        let mut fmap = vec![FaceImage::default(); cov.face_count()];
        for k in 0..n {
            let gk = self.mul(g, k);
            for v in c.vertices() {
                vmap[self.vidx[v][k]] = self.vidx[v][gk];
            }
            for e in 0..c.edge_count() {
                dmap[2 * self.eidx[e][k]] = 2 * self.eidx[e][gk];
                dmap[2 * self.eidx[e][k] + 1] = 2 * self.eidx[e][gk] + 1;
            }
            for f in 0..c.face_count() {
                fmap[self.fidx[f][k]] = FaceImage { face: self.fidx[f][gk], rot: 0, flip: false };
            }
        }
        CombMap { source: self.cover.clone(), target: self.cover.clone(), vmap, dmap, fmap }
    }

    /// The cover automorphism lifting `h` (acting on the base by `hm`) that
    /// sends the base lift to `(h . y0, k)`.
    fn lift_automorphism(&self, hm: &CombMap, k: usize) -> CombMap {
        let (c, cov) = (&*self.base, &*self.cover);
        let n = self.order();
        let y0 = self.pres.base;
        let start = k;
        // image coset of every cover vertex
        let mut vcos = vec![vec![0; n]; c.vertex_count()];
        for v in c.vertices() {
            for kk in 0..n {
                let p: Vec<usize> = self.class_path(v, kk).iter().map(|&d| hm.dmap[d]).collect();
                vcos[v][kk] = self.walk(start, &p);
            }
        }
        debug_assert_eq!(vcos[y0][0], start);
        let mut vmap = vec![0; cov.vertex_count()];
        let mut dmap = vec![0; cov.dart_count()];
        let mut fmap = vec![FaceImage::default(); cov.face_count()];
        for v in c.vertices() {
            for kk in 0..n {
                vmap[self.vidx[v][kk]] = self.vidx[hm.vmap[v]][vcos[v][kk]];
            }
        }
        for e in 0..c.edge_count() {
            let d = 2 * e;
            for kk in 0..n {
                let img = self.lift_dart(hm.dmap[d], vcos[c.src(d)][kk]);
                dmap[2 * self.eidx[e][kk]] = img;
                dmap[2 * self.eidx[e][kk] + 1] = img ^ 1;
            }
        }
        for f in 0..c.face_count() {
            let im = hm.fmap[f];
            let len = c.boundary(f).len();
            let corner = im.corner(0, len);
            let v0 = c.src(c.boundary(f)[0]);
            for kk in 0..n {
                let g0 = self.face_coset_at_corner(im.face, corner, vcos[v0][kk]);
                fmap[self.fidx[f][kk]] = FaceImage { face: self.fidx[im.face][g0], ..im };
            }
        }
        CombMap { source: self.cover.clone(), target: self.cover.clone(), vmap, dmap, fmap }
    }
}

/// The extension of `H` by `pi_1` acting on the universal cover.
#[derive(Clone, Debug)]
pub struct LiftedGroup {
    pub cover: UniversalCover,
    pub base_action: Arc<FinAction>,
    /// `(h, k)` for each element, indexed `h * |pi_1| + k`.
    pub elements: Vec<(usize, usize)>,
    pub action: Arc<FinAction>,
    /// The projection to `H`.
    pub projection_hom: Vec<usize>,
}

pub fn lifted_group(a: &Arc<FinAction>, budgets: &Budgets) -> Result<LiftedGroup> {
    let cover = universal_cover_finite(a.space(), budgets)?;
    let (h, n) = (a.group(), cover.order());
    let y0 = cover.pres.base;
    let elements: Vec<(usize, usize)> = h.elements().flat_map(|x| (0..n).map(move |k| (x, k))).collect();
    let index = |x: usize, k: usize| x * n + k;
    let mut mul = vec![vec![0; elements.len()]; elements.len()];
    for &(x, k) in &elements {
        let hm = a.element_map(x);
        for &(x2, k2) in &elements {
            let v = a.act_vertex(x2, y0);
            let p: Vec<usize> = cover.class_path(v, k2).iter().map(|&d| hm.dmap[d]).collect();
            mul[index(x, k)][index(x2, k2)] = index(h.mul(x, x2), cover.walk(k, &p));
        }
    }
    let names = elements
        .iter()
        .map(|&(x, k)| format!("{}@{}", h.name(x), letter_names(&cover.pres, &cover.coset_words[k])))
        .collect();
    let group = FinGroup::from_table(names, mul)?;
    let maps = elements.iter().map(|&(x, k)| cover.lift_automorphism(a.element_map(x), k)).collect();
    let action = Arc::new(FinAction::new(group, cover.cover.clone(), maps)?);
    let projection_hom = elements.iter().map(|&(x, _)| x).collect();
    Ok(LiftedGroup { cover, base_action: a.clone(), elements, action, projection_hom })
}

impl LiftedGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn kernel(&self) -> Vec<usize> {
        let e = self.base_action.group().identity();
        (0..self.order()).filter(|&i| self.projection_hom[i] == e).collect()
    }

    /// The covering projection as an equivariant map.
    pub fn projection(&self) -> EqMap {
        EqMap {
            map: self.cover.projection.clone(),
            source: self.action.clone(),
            target: self.base_action.clone(),
            fsharp: self.projection_hom.clone(),
        }
    }

    /// Element of the lifted group sending the base lift to cover vertex `x`
    /// while projecting to `h`.
    pub fn element(&self, h: usize, k: usize) -> usize {
        h * self.cover.order() + k
    }

    /// Checks exactness, equivariance of the projection, that the kernel acts
    /// by deck transformations and that vertex stabilizers project isomorphically.
    pub fn check(&self) -> ValidationReport {
        let mut r = ValidationReport::default();
        let (hg, lg) = (self.base_action.group(), self.action.group());
        let n = self.cover.order();
        if lg.order() != n * hg.order() {
            r.push("order is not |pi_1| * |H|");
        }
        if !lg.is_homomorphism(hg, &self.projection_hom) {
            r.push("projection is not a homomorphism");
        }
        let image: BTreeSet<usize> = self.projection_hom.iter().copied().collect();
        if image.len() != hg.order() {
            r.push("projection is not surjective");
        }
        let kernel = self.kernel();
        if kernel.len() != n {
            r.push("kernel is not the size of pi_1");
        }
        let deck_maps: BTreeSet<Vec<usize>> =
            self.cover.deck.group().elements().map(|g| self.cover.deck.element_map(g).vmap.clone()).collect();
        let kernel_maps: BTreeSet<Vec<usize>> =
            kernel.iter().map(|&g| self.action.element_map(g).vmap.clone()).collect();
        for &g in &kernel {
            let m = self.action.element_map(g);
            if !self.cover.deck.group().elements().any(|d| self.cover.deck.element_map(d) == m) {
                r.push(format!("kernel element {} is not a deck transformation", lg.name(g)));
            }
        }
        if deck_maps != kernel_maps {
            r.push("kernel and deck group differ");
        }
        let eq = self.projection().validate();
        for v in eq.report.violations {
            r.push(format!("projection: {v}"));
        }
        let cov = &self.cover.cover;
        for x in cov.vertices() {
            let y = self.cover.projection.vmap[x];
            let sx = self.action.stabilizer(Cell::Vertex(x)).unwrap();
            let sy: BTreeSet<usize> = self.base_action.stabilizer(Cell::Vertex(y)).unwrap().into_iter().collect();
            let img: BTreeSet<usize> = sx.iter().map(|&g| self.projection_hom[g]).collect();
            if img.len() != sx.len() || img != sy {
                r.push(format!("stabilizer of {} does not project isomorphically", cov.vertex_name(x)));
            }
        }
        r
    }

    /// Elements `(e, k)` for `k` in the subgroup of `pi_1` generated by `words`.
    pub fn subgroup_elements(&self, words: &[Word]) -> Vec<usize> {
        let uc = &self.cover;
        let gens: Vec<usize> = words.iter().map(|w| uc.table.trace(0, w)).collect();
        let mut seen = BTreeSet::from([0]);
        let mut queue = VecDeque::from([0]);
        while let Some(k) = queue.pop_front() {
            for &g in &gens {
                let y = uc.mul(k, g);
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        let e = self.base_action.group().identity();
        seen.into_iter().map(|k| self.element(e, k)).collect()
    }
}

/// Whether the cover with `pi_1` image generated by `words` is H-regular.
pub fn is_h_regular(words: &[Word], a: &Arc<FinAction>, budgets: &Budgets) -> Result<bool> {
    let lg = lifted_group(a, budgets)?;
    Ok(lg.action.group().is_normal(&lg.subgroup_elements(words)))
}

/// A regular intermediate cover with its quotient group action.
#[derive(Clone, Debug)]
pub struct IntermediateLift {
    pub complex: Arc<Complex2>,
    pub action: Arc<FinAction>,
    /// The covering projection, equivariant over the quotient group.
    pub projection: EqMap,
}

pub fn intermediate_lift(words: &[Word], a: &Arc<FinAction>, budgets: &Budgets) -> Result<IntermediateLift> {
    let lg = lifted_group(a, budgets)?;
    let k_elems = lg.subgroup_elements(words);
    let lgroup = lg.action.group();
    if !lgroup.is_normal(&k_elems) {
        return Err(Error::NotRegular);
    }
    if k_elems.len() == 1 {
        let p = lg.projection();
        return Ok(IntermediateLift { complex: lg.cover.cover.clone(), action: lg.action.clone(), projection: p });
    }
    let uc = &lg.cover;
    let (c, cov) = (&*uc.base, &*uc.cover);
    let n = uc.order();
    let kset: Vec<usize> = k_elems.iter().map(|&g| lg.elements[g].1).collect();
    let rep = |k: usize| kset.iter().map(|&g| uc.mul(g, k)).min().unwrap();
    let vname = |v: usize, k: usize| format!("{}@{}", c.vertex_name(v), rep(k));
    let ename = |e: usize, k: usize| format!("{}@{}", c.edge_name(e), rep(k));
    let mut b = Complex2::builder();
    for v in c.vertices() {
        for k in 0..n {
            if rep(k) == k {
                b.vertex(vname(v, k));
            }
        }
    }
    for e in 0..c.edge_count() {
        let d = 2 * e;
        for k in 0..n {
            if rep(k) == k {
                b.edge(ename(e, k), vname(c.src(d), k), vname(c.dst(d), uc.step(k, d)));
            }
        }
    }
    let dart_name = |d: usize, k: usize| {
        if d % 2 == 0 {
            ename(d / 2, k)
        } else {
            format!("-{}", ename(d / 2, uc.step(k, d)))
        }
    };
    for f in 0..c.face_count() {
        for k in 0..n {
            if rep(k) != k {
                continue;
            }
            let mut cur = k;
            let mut word = Vec::new();
            for &d in c.boundary(f) {
                word.push(dart_name(d, cur));
                cur = uc.step(cur, d);
            }
            b.face(format!("{}@{}", c.face_name(f), k), word);
        }
    }
    let q = Arc::new(b.build()?);
    // cover cell -> quotient cell, by names
    let vq: Vec<usize> = cov
        .vertices()
        .map(|x| {
            let (v, k) = uc.locate(x);
            q.vertex(&vname(v, k)).unwrap()
        })
        .collect();
    let mut dq = vec![0; cov.dart_count()];
    for e in 0..c.edge_count() {
        for k in 0..n {
            let x = uc.lift_dart(2 * e, k);
            let y = q.dart(&ename(e, k)).unwrap();
            dq[x] = y;
            dq[x ^ 1] = y ^ 1;
        }
    }
    let mut fq = vec![0; cov.face_count()];
    for f in 0..c.face_count() {
        for k in 0..n {
            fq[uc.face(f, k)] = q.face_id(&format!("{}@{}", c.face_name(f), rep(k))).unwrap();
        }
    }
    let (hat, qproj) = lgroup.quotient(&k_elems)?;
    let mut reps = vec![usize::MAX; hat.order()];
    for g in lgroup.elements() {
        if reps[qproj[g]] == usize::MAX {
            reps[qproj[g]] = g;
        }
    }
    // quotient cells have cover representatives with k = rep(k)
    let vrep: BTreeMap<usize, usize> = cov.vertices().map(|x| (vq[x], x)).collect();
    let drep: BTreeMap<usize, usize> = cov.darts().map(|x| (dq[x], x)).collect();
    let frep: BTreeMap<usize, usize> = (0..cov.face_count()).map(|x| (fq[x], x)).collect();
    let maps = reps
        .iter()
        .map(|&g| {
            let m = lg.action.element_map(g);
            CombMap {
                source: q.clone(),
                target: q.clone(),
                vmap: q.vertices().map(|v| vq[m.vmap[vrep[&v]]]).collect(),
                dmap: q.darts().map(|d| dq[m.dmap[drep[&d]]]).collect(),
                fmap: (0..q.face_count())
                    .map(|f| {
                        let im = m.fmap[frep[&f]];
                        FaceImage { face: fq[im.face], ..im }
                    })
                    .collect(),
            }
        })
        .collect();
    let action = Arc::new(FinAction::new(hat, q.clone(), maps)?);
    let proj = CombMap::new(
        q.clone(),
        uc.base.clone(),
        q.vertices().map(|v| uc.projection.vmap[vrep[&v]]).collect(),
        q.darts().map(|d| uc.projection.dmap[drep[&d]]).collect(),
        (0..q.face_count()).map(|f| uc.projection.fmap[frep[&f]]).collect(),
    )?;
    let fsharp = reps.iter().map(|&g| lg.projection_hom[g]).collect();
    let projection = EqMap::new(proj, action.clone(), lg.base_action.clone(), fsharp)?;
    if !projection.is_stabilizer_preserving() {
        return Err(Error::Internal("intermediate cover does not preserve stabilizers".into()));
    }
    Ok(IntermediateLift { complex: q, action, projection })
}

/// Lifts an equivariant map from a one-connected complex into the universal cover.
pub fn lift_eq_map(m: &EqMap, lg: &LiftedGroup, budgets: &Budgets) -> Result<EqMap> {
    if *m.target != *lg.base_action {
        return Err(Error::Mismatch);
    }
    let x = &*m.map.source;
    if is_simply_connected(x, budgets) != Decision::Yes {
        return Err(Error::NotOneConnected);
    }
    let uc = &lg.cover;
    let f = &m.map;
    // coset over each source vertex, by breadth-first search from vertex 0
    let mut cos: Vec<Option<usize>> = vec![None; x.vertex_count()];
    cos[0] = Some(0);
    let adj = x.adjacency();
    let mut queue = VecDeque::from([0]);
    while let Some(u) = queue.pop_front() {
        for &d in &adj[u] {
            let k = uc.step(cos[u].unwrap(), f.dmap[d]);
            match cos[x.dst(d)] {
                None => {
                    cos[x.dst(d)] = Some(k);
                    queue.push_back(x.dst(d));
                }
                Some(k2) if k2 != k => return Err(Error::Internal("inconsistent lift".into())),
                _ => {}
            }
        }
    }
    let cos: Vec<usize> = cos.into_iter().map(|k| k.ok_or(Error::Disconnected)).collect::<Result<_>>()?;
    let vmap = x.vertices().map(|v| uc.vertex(f.vmap[v], cos[v])).collect();
    let dmap = x.darts().map(|d| uc.lift_dart(f.dmap[d], cos[x.src(d)])).collect();
    let fmap = (0..x.face_count())
        .map(|face| {
            let im = f.fmap[face];
            let len = x.boundary(face).len();
            let k0 = cos[x.src(x.boundary(face)[0])];
            let g0 = uc.face_coset_at_corner(im.face, im.corner(0, len), k0);
            FaceImage { face: uc.face(im.face, g0), ..im }
        })
        .collect();
    let lifted = CombMap::new(m.map.source.clone(), uc.cover.clone(), vmap, dmap, fmap)?;
    let sa = &m.source;
    let base_img = lifted.vmap[0];
    let mut fsharp = Vec::with_capacity(sa.group().order());
    for g in sa.group().elements() {
        let want = lifted.vmap[sa.act_vertex(g, 0)];
        let h = m.fsharp[g];
        let k = (0..uc.order())
            .find(|&k| lg.action.act_vertex(lg.element(h, k), base_img) == want)
            .ok_or_else(|| Error::Internal("no lifted group element matches".into()))?;
        fsharp.push(lg.element(h, k));
    }
    EqMap::new(lifted, sa.clone(), lg.action.clone(), fsharp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn budgets() -> Budgets {
        Budgets::default()
    }

    #[test]
    fn simple_connectivity() {
        let b = budgets();
        assert_eq!(is_simply_connected(&fixtures::cycle(3), &b), Decision::No);
        assert_eq!(is_simply_connected(&fixtures::sphere2(), &b), Decision::Yes);
        assert_eq!(is_simply_connected(&fixtures::disk3(), &b), Decision::Yes);
        assert_eq!(is_simply_connected(&fixtures::z3pres(), &b), Decision::No);
        let small = Budgets { coset_limit: 200, ..b };
        assert_eq!(is_simply_connected(&fixtures::torus1(), &small), Decision::Unknown);
    }

    #[test]
    fn z3_universal_cover() {
        let uc = universal_cover_finite(&fixtures::z3pres(), &budgets()).unwrap();
        let c = &uc.cover;
        assert_eq!((c.vertex_count(), c.edge_count(), c.face_count()), (3, 3, 3));
        assert_eq!(uc.deck.group().order(), 3);
        assert!(uc.projection.is_immersion());
        assert!(uc.deck.is_without_inversions());
    }

    #[test]
    fn sphere_is_its_own_cover() {
        let uc = universal_cover_finite(&fixtures::sphere2(), &budgets()).unwrap();
        assert_eq!(uc.order(), 1);
        assert!(uc.projection.is_isomorphism());
    }

    #[test]
    fn infinite_fundamental_group_is_undecided() {
        let small = Budgets { coset_limit: 500, ..budgets() };
        assert!(universal_cover_finite(&fixtures::cycle(3), &small).unwrap_err().is_undecided());
    }

    #[test]
    fn lifted_groups() {
        let b = budgets();
        let sphere = Arc::new(fixtures::sphere2_swap());
        let lg = lifted_group(&sphere, &b).unwrap();
        assert_eq!(lg.order(), 2);
        assert!(lg.check().is_valid(), "{:?}", lg.check());

        let z3 = Arc::new(FinAction::trivial(fixtures::z3pres()));
        let lg = lifted_group(&z3, &b).unwrap();
        assert_eq!(lg.order(), 3);
        assert!(lg.check().is_valid());

        let w = Arc::new(fixtures::z3xz3_swap());
        let lg = lifted_group(&w, &b).unwrap();
        assert_eq!(lg.order(), 18);
        assert!(lg.check().is_valid(), "{:?}", lg.check());
    }

    #[test]
    fn regularity() {
        let b = budgets();
        let w = Arc::new(fixtures::z3xz3_swap());
        assert!(is_h_regular(&[], &w, &b).unwrap());
        assert!(is_h_regular(&[vec![0], vec![2]], &w, &b).unwrap());
        assert!(!is_h_regular(&[vec![0]], &w, &b).unwrap());
        assert!(matches!(intermediate_lift(&[vec![0]], &w, &b), Err(Error::NotRegular)));
        // the diagonal <ab> is swap-invariant, so it is regular
        let mid = intermediate_lift(&[vec![0, 2]], &w, &b).unwrap();
        assert_eq!(mid.complex.vertex_count(), 3);
        assert_eq!(mid.action.group().order(), 6);
        assert!(mid.projection.validate().report.is_valid());
    }

    #[test]
    fn whole_group_gives_identity_cover() {
        let b = budgets();
        let z3 = Arc::new(FinAction::trivial(fixtures::z3pres()));
        let mid = intermediate_lift(&[vec![0]], &z3, &b).unwrap();
        assert!(mid.projection.map.is_isomorphism());
        assert_eq!(mid.action.group().order(), 1);
    }

    #[test]
    fn lift_disk_into_z3_cover() {
        let b = budgets();
        let (d, z) = (fixtures::disk3(), fixtures::z3pres());
        let a = z.dart("a").unwrap();
        let dmap: Vec<usize> = d.darts().map(|x| if x % 2 == 0 { a } else { a ^ 1 }).collect();
        let m = CombMap::from_cells(d, z.clone(), vec![0; 3], dmap, &[0]).unwrap();
        let target = Arc::new(FinAction::trivial(z));
        let eq = EqMap { map: m.clone(), source: Arc::new(FinAction::trivial(m.source.clone())), target: target.clone(), fsharp: vec![0] };
        let lg = lifted_group(&target, &b).unwrap();
        let lift = lift_eq_map(&eq, &lg, &b).unwrap();
        assert_eq!(lg.cover.projection.compose(&lift.map).unwrap(), m);
        assert!(lift.map.is_injective());
    }
}
