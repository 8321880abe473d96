//! Disk and sphere diagrams over a finite complex.
//!
//! Disk diagrams come from the minimal-area reducer run on dart words with
//! face boundaries as relators; the reduction is replayed backwards, each
//! relator move attaching one face and each cancellation one spur.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

use serde::Serialize;

use crate::checkers::{dr_certify, DrVerdict};
use crate::complex::Complex2;
use crate::error::{Error, Result};
use crate::maps::{CombMap, FaceImage};
use crate::oracle::{Answer, Budgets, WordOracle};
use crate::pi1::{cyclic_reduce, free_reduce, inverse, min_rotation, Word};
use crate::reduction::{Reducer, Step};

/// A van Kampen diagram: a planar one-connected complex with a boundary
/// cycle, mapped to the target.
#[derive(Clone, Debug)]
pub struct DiskDiagram {
    pub complex: Arc<Complex2>,
    pub map: CombMap,
    /// Boundary path, as darts of the diagram.
    pub boundary: Vec<usize>,
}

impl DiskDiagram {
    pub fn area(&self) -> usize {
        self.complex.face_count()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.complex.euler_characteristic()
    }

    /// No two faces meet along an edge as mirror images of the same face.
    pub fn is_reduced(&self) -> bool {
        mirror_pair(&self.complex, &self.map).is_none()
    }

    pub fn boundary_image(&self) -> Vec<usize> {
        self.boundary.iter().map(|&d| self.map.dmap[d]).collect()
    }
}

/// Two faces glued along an edge that fold onto the same side of one face.
pub fn mirror_pair(c: &Complex2, m: &CombMap) -> Option<(usize, usize)> {
    let mut sides: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
    for f in 0..c.face_count() {
        for (i, &d) in c.boundary(f).iter().enumerate() {
            sides.entry(d / 2).or_default().push((f, i));
        }
    }
    for list in sides.values() {
        for (a, &(f1, i1)) in list.iter().enumerate() {
            for &(f2, i2) in &list[a + 1..] {
                let (m1, m2) = (m.fmap[f1], m.fmap[f2]);
                let k = c.boundary(f1).len();
                if f1 != f2
                    && m1.face == m2.face
                    && m1.flip != m2.flip
                    && m1.position(i1, k) == m2.position(i2, k)
                    && c.boundary(f1)[i1] != c.boundary(f2)[i2]
                {
                    return Some((f1, f2));
                }
            }
        }
    }
    None
}

struct Builder {
    vmap: Vec<usize>,
    edges: Vec<(usize, usize, usize)>,
    faces: Vec<(Vec<usize>, FaceImage)>,
}

impl Builder {
    fn src(&self, d: usize) -> usize {
        let (s, t, _) = self.edges[d / 2];
        if d % 2 == 0 {
            s
        } else {
            t
        }
    }

    fn vertex_at(&self, b: &[usize], p: usize, base: usize) -> usize {
        if p < b.len() {
            self.src(b[p])
        } else if let Some(&d) = b.first() {
            self.src(d)
        } else {
            base
        }
    }

    fn edge(&mut self, s: usize, t: usize, image: usize) -> usize {
        // stored forward: diagram dart 2e maps to `image`
        self.edges.push((s, t, image));
        2 * (self.edges.len() - 1)
    }
}

/// A minimal-area filling of a closed path, searching up to `max_area`.
pub fn search_disk(c: &Arc<Complex2>, path: &[usize], max_area: usize) -> Result<Option<DiskDiagram>> {
    if let Some((&first, _)) = path.split_first() {
        if c.dst(*path.last().unwrap()) != c.src(first) || path.windows(2).any(|w| c.dst(w[0]) != c.src(w[1])) {
            return Err(Error::InvalidInput("loop is not a closed path".into()));
        }
    } else {
        return Err(Error::InvalidInput("empty loop has no base vertex".into()));
    }
    let relators: Vec<Word> = c.faces().iter().map(|f| f.boundary.iter().map(|&d| d as u32).collect()).collect();
    let reducer = Reducer::new(relators);
    let w0: Word = path.iter().map(|&d| d as u32).collect();
    let Some((_, steps)) = reducer.min_area(&w0, max_area) else {
        return Ok(None);
    };
    // forward replay, remembering the word before each step; only rotations
    // move the base vertex
    let mut words = Vec::with_capacity(steps.len());
    let mut base = c.src(path[0]);
    let mut w = w0.clone();
    for &s in &steps {
        words.push(w.clone());
        reducer.apply(&mut w, s);
        if let (Step::Rotate(_), Some(&l)) = (s, w.first()) {
            base = c.src(l as usize);
        }
    }
    debug_assert!(w.is_empty());
    let mut b = Builder { vmap: vec![base], edges: Vec::new(), faces: Vec::new() };
    let mut bd: Vec<usize> = Vec::new();
    let mut cur_base = 0;
    for (&s, w) in steps.iter().zip(&words).rev() {
        match s {
            Step::Rotate(k) => {
                let m = bd.len();
                bd.rotate_right(k % m.max(1));
            }
            Step::Cancel(p) => {
                let at = b.vertex_at(&bd, p, cur_base);
                let image = w[p] as usize;
                b.vmap.push(c.dst(image));
                let e = b.edge(at, b.vmap.len() - 1, image);
                bd.splice(p..p, [e, e ^ 1]);
            }
            Step::Replace { pos, face, rot, flip } => {
                let m = c.boundary(face).len() - 1;
                let (p, q) = (b.vertex_at(&bd, pos, cur_base), b.vertex_at(&bd, pos + m, cur_base));
                let e = b.edge(p, q, w[pos] as usize);
                let mut fb = vec![e];
                fb.extend(bd[pos..pos + m].iter().rev().map(|&d| d ^ 1));
                b.faces.push((fb, FaceImage { face, rot, flip }));
                bd.splice(pos..pos + m, [e]);
            }
        }
        cur_base = bd.first().map_or(cur_base, |&d| b.src(d));
    }
    let diagram = assemble(c, &b, &bd)?;
    if diagram.boundary_image() != path {
        return Err(Error::Internal("diagram boundary does not read the loop".into()));
    }
    if diagram.euler_characteristic() != 1 {
        return Err(Error::Internal("diagram is not a disk".into()));
    }
    Ok(Some(diagram))
}

fn assemble(c: &Arc<Complex2>, b: &Builder, bd: &[usize]) -> Result<DiskDiagram> {
    let vname = |i: usize| format!("v{i}");
    let ename = |i: usize| format!("e{i}");
    let dname = |d: usize| if d % 2 == 0 { ename(d / 2) } else { format!("-{}", ename(d / 2)) };
    let mut cb = Complex2::builder();
    for i in 0..b.vmap.len() {
        cb.vertex(vname(i));
    }
    for (i, &(s, t, _)) in b.edges.iter().enumerate() {
        cb.edge(ename(i), vname(s), vname(t));
    }
    for (i, (fb, _)) in b.faces.iter().enumerate() {
        cb.face(format!("f{i}"), fb.iter().map(|&d| dname(d)).collect());
    }
    let d = Arc::new(cb.build()?);
    let vid: Vec<usize> = (0..b.vmap.len()).map(|i| d.vertex(&vname(i)).unwrap()).collect();
    let eid: Vec<usize> = (0..b.edges.len()).map(|i| d.edge_index(&ename(i)).unwrap()).collect();
    let mut vmap = vec![0; d.vertex_count()];
    let mut dmap = vec![0; d.dart_count()];
    let mut fmap = vec![FaceImage::default(); d.face_count()];
    for (i, &y) in b.vmap.iter().enumerate() {
        vmap[vid[i]] = y;
    }
    for (i, &(_, _, image)) in b.edges.iter().enumerate() {
        dmap[2 * eid[i]] = image;
        dmap[2 * eid[i] + 1] = image ^ 1;
    }
    for (i, (_, im)) in b.faces.iter().enumerate() {
        fmap[d.face_id(&format!("f{i}")).unwrap()] = *im;
    }
    let map = CombMap::new(d.clone(), c.clone(), vmap, dmap, fmap)?;
    let boundary = bd.iter().map(|&x| 2 * eid[x / 2] + (x & 1)).collect();
    Ok(DiskDiagram { complex: d, map, boundary })
}

/// Estimated Dehn function: entry `l` is the largest minimal area among
/// fillable closed paths of length at most `l`.
pub fn dehn_estimate(c: &Complex2, n: usize, budgets: &Budgets) -> Result<Vec<usize>> {
    let relators: Vec<Word> = c.faces().iter().map(|f| f.boundary.iter().map(|&d| d as u32).collect()).collect();
    let reducer = Reducer::new(relators);
    let labels = c.components();
    let mut comps: BTreeMap<usize, (WordOracle, HashMap<usize, usize>)> = BTreeMap::new();
    for &l in &labels {
        if !comps.contains_key(&l) {
            let (sub, darts) = component(c, l);
            comps.insert(l, (WordOracle::with_budgets(&sub, 0, budgets)?, darts));
        }
    }
    let mut best = vec![0; n + 1];
    let mut seen: HashMap<Word, Option<usize>> = HashMap::new();
    for v in c.vertices() {
        let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
        while let Some(p) = stack.pop() {
            let end = p.last().map_or(v, |&d| c.dst(d));
            if !p.is_empty() && end == v {
                let w: Word = p.iter().map(|&d| d as u32).collect();
                let r = cyclic_reduce(&w);
                let key = min_rotation(&r).min(min_rotation(&inverse(&r)));
                let area = match seen.get(&key) {
                    Some(&a) => a,
                    None => {
                        let a = if key.is_empty() {
                            Some(0)
                        } else {
                            let (o, darts) = comps.get_mut(&labels[v]).unwrap();
                            fill_area(c, &reducer, o, darts, &p, budgets)?
                        };
                        seen.insert(key, a);
                        a
                    }
                };
                if let Some(a) = area {
                    best[p.len()] = best[p.len()].max(a);
                }
            }
            if p.len() < n {
                for d in c.darts_from(end) {
                    let mut q = p.clone();
                    q.push(d);
                    stack.push(q);
                }
            }
        }
    }
    for l in 1..=n {
        best[l] = best[l].max(best[l - 1]);
    }
    Ok(best)
}

/// Minimal area of a closed path, `None` when the oracle shows it is not
/// null-homotopic.
fn fill_area(
    c: &Complex2,
    reducer: &Reducer,
    o: &mut WordOracle,
    darts: &HashMap<usize, usize>,
    p: &[usize],
    budgets: &Budgets,
) -> Result<Option<usize>> {
    let local: Vec<usize> = p.iter().map(|d| darts[d]).collect();
    let letters = o.presentation().path_word(&local);
    if c.face_count() == 0 || o.decide(&letters) == Answer::Nontrivial {
        return Ok(free_reduce(&letters).is_empty().then_some(0));
    }
    let w: Word = p.iter().map(|&d| d as u32).collect();
    match reducer.min_area(&w, budgets.area_limit) {
        Some((a, _)) => Ok(Some(a)),
        None => Err(Error::Undecided(format!(
            "a closed path of length {} has no filling of area at most {}",
            p.len(),
            budgets.area_limit
        ))),
    }
}

/// The connected component as its own complex, with a dart index map.
fn component(c: &Complex2, comp: usize) -> (Complex2, HashMap<usize, usize>) {
    let labels = c.components();
    let mut b = Complex2::builder();
    for v in c.vertices().filter(|&v| labels[v] == comp) {
        b.vertex(c.vertex_name(v));
    }
    for e in 0..c.edge_count() {
        if labels[c.src(2 * e)] == comp {
            b.edge(c.edge_name(e), c.vertex_name(c.src(2 * e)), c.vertex_name(c.dst(2 * e)));
        }
    }
    for f in 0..c.face_count() {
        let bd = c.boundary(f);
        if labels[c.src(bd[0])] == comp {
            b.face(c.face_name(f), bd.iter().map(|&d| c.dart_name(d)).collect());
        }
    }
    let sub = b.build().expect("component of a valid complex");
    let map = c
        .darts()
        .filter(|&d| labels[c.src(d)] == comp)
        .map(|d| (d, sub.dart(&c.dart_name(d)).unwrap()))
        .collect();
    (sub, map)
}

/// A sphere cell structure mapped to the target.
#[derive(Clone, Debug)]
pub struct SphereDiagram {
    pub complex: Arc<Complex2>,
    pub map: CombMap,
}

/// Reading of target face `g` from corner 0, reversed when `flip`.
fn face_reading(c: &Complex2, g: usize, flip: bool) -> Vec<usize> {
    let b = c.boundary(g);
    let k = b.len();
    (0..k).map(|i| if flip { b[k - 1 - i] ^ 1 } else { b[i] }).collect()
}

/// Searches sphere structures with at most `max_faces` faces whose map to `c`
/// is a near-immersion. Faces are copies of target faces in either
/// orientation; sides are glued in pairs reading reverse darts, never onto
/// the same target side.
pub fn sphere_search(c: &Arc<Complex2>, max_faces: usize) -> Option<SphereDiagram> {
    // face types (g, flip) all of whose sides have some admissible partner
    let mut types: Vec<(usize, bool)> = Vec::new();
    for g in 0..c.face_count() {
        for flip in [false, true] {
            let r = face_reading(c, g, flip);
            let ok = r.iter().enumerate().all(|(i, &d)| {
                (0..c.face_count()).any(|h| {
                    [false, true].iter().any(|&fl| {
                        face_reading(c, h, fl).iter().enumerate().any(|(j, &e)| {
                            e == d ^ 1 && side(c, g, flip, i) != side(c, h, fl, j)
                        })
                    })
                })
            });
            if ok {
                types.push((g, flip));
            }
        }
    }
    for n in 1..=max_faces {
        let mut chosen = Vec::new();
        if let Some(s) = choose(c, &types, n, 0, &mut chosen) {
            return Some(s);
        }
    }
    None
}

/// Target side (face, position) under the reading convention.
fn side(c: &Complex2, g: usize, flip: bool, i: usize) -> (usize, usize) {
    let k = c.boundary(g).len();
    (g, if flip { k - 1 - i } else { i })
}

fn choose(c: &Arc<Complex2>, types: &[(usize, bool)], n: usize, from: usize, chosen: &mut Vec<(usize, bool)>) -> Option<SphereDiagram> {
    if chosen.len() == n {
        let sides: Vec<(usize, usize, usize)> = chosen
            .iter()
            .enumerate()
            .flat_map(|(f, &(g, fl))| face_reading(c, g, fl).into_iter().enumerate().map(move |(i, d)| (f, i, d)))
            .collect();
        let mut count: BTreeMap<usize, i64> = BTreeMap::new();
        for &(_, _, d) in &sides {
            *count.entry(d & !1).or_default() += if d % 2 == 0 { 1 } else { -1 };
        }
        if count.values().any(|&x| x != 0) {
            return None;
        }
        let mut partner = vec![usize::MAX; sides.len()];
        return pair(c, chosen, &sides, &mut partner);
    }
    for t in from..types.len() {
        chosen.push(types[t]);
        let r = choose(c, types, n, t, chosen);
        chosen.pop();
        if r.is_some() {
            return r;
        }
    }
    None
}

fn pair(c: &Arc<Complex2>, chosen: &[(usize, bool)], sides: &[(usize, usize, usize)], partner: &mut Vec<usize>) -> Option<SphereDiagram> {
    let Some(a) = partner.iter().position(|&p| p == usize::MAX) else {
        return glue(c, chosen, sides, partner);
    };
    let (fa, ia, da) = sides[a];
    for b in a + 1..sides.len() {
        let (fb, ib, db) = sides[b];
        if partner[b] != usize::MAX || db != da ^ 1 {
            continue;
        }
        if side(c, chosen[fa].0, chosen[fa].1, ia) == side(c, chosen[fb].0, chosen[fb].1, ib) {
            continue;
        }
        partner[a] = b;
        partner[b] = a;
        if let Some(s) = pair(c, chosen, sides, partner) {
            return Some(s);
        }
        partner[a] = usize::MAX;
        partner[b] = usize::MAX;
    }
    None
}

/// Builds the glued surface and keeps it if it is a near-immersed sphere.
fn glue(c: &Arc<Complex2>, chosen: &[(usize, bool)], sides: &[(usize, usize, usize)], partner: &[usize]) -> Option<SphereDiagram> {
    let mut offset = vec![0];
    for &(g, _) in chosen {
        offset.push(offset.last().unwrap() + c.boundary(g).len());
    }
    let len = |f: usize| offset[f + 1] - offset[f];
    // corner (f, i) is the start of side (f, i); gluing side s (u -> v) to its
    // partner t (v' -> u') identifies u with the end of t and v with its start
    let n = sides.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    let next = |s: usize| {
        let (f, i, _) = sides[s];
        offset[f] + (i + 1) % len(f)
    };
    for s in 0..n {
        let t = partner[s];
        for (x, y) in [(s, next(t)), (next(s), t)] {
            let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
            parent[rx.max(ry)] = rx.min(ry);
        }
    }
    let roots: BTreeSet<usize> = (0..n).map(|x| find(&mut parent, x)).collect();
    let (v, e, f) = (roots.len() as i64, (n / 2) as i64, chosen.len() as i64);
    if v - e + f != 2 {
        return None;
    }
    let vname = |x: usize| format!("v{x}");
    let mut b = Complex2::builder();
    for &r in &roots {
        b.vertex(vname(r));
    }
    let mut edge_of = vec![String::new(); n];
    for s in 0..n {
        let t = partner[s];
        if s < t {
            let name = format!("e{s}");
            let (from, to) = (find(&mut parent, s), find(&mut parent, next(s)));
            b.edge(&name, vname(from), vname(to));
            edge_of[s] = name.clone();
            edge_of[t] = format!("-{name}");
        }
    }
    for fi in 0..chosen.len() {
        b.face(format!("f{fi}"), (offset[fi]..offset[fi + 1]).map(|s| edge_of[s].clone()).collect());
    }
    let sphere = Arc::new(b.build().ok()?);
    if !sphere.is_connected() {
        return None;
    }
    let mut vmap = vec![0; sphere.vertex_count()];
    let mut dmap = vec![0; sphere.dart_count()];
    for s in 0..n {
        let d = sides[s].2;
        vmap[sphere.vertex(&vname(find(&mut parent, s))).unwrap()] = c.src(d);
        dmap[sphere.dart(&edge_of[s]).unwrap()] = d;
    }
    let mut ordered = vec![FaceImage::default(); sphere.face_count()];
    for (fi, &(g, flip)) in chosen.iter().enumerate() {
        ordered[sphere.face_id(&format!("f{fi}")).unwrap()] = FaceImage { face: g, rot: 0, flip };
    }
    let map = CombMap::new(sphere.clone(), c.clone(), vmap, dmap, ordered).ok()?;
    map.is_near_immersion().then_some(SphereDiagram { complex: sphere, map })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FineVerdict {
    Holds,
    Violated,
    Undecided,
}

/// Quantities of the fine-graph inequality at one vertex.
#[derive(Clone, Debug, Serialize)]
pub struct FineReport {
    pub verdict: FineVerdict,
    /// `None` when `A` is disconnected in the punctured source.
    pub diam_source: Option<usize>,
    pub diam_target: Option<usize>,
    pub max_face_length: usize,
    pub dehn: Option<usize>,
}

/// Largest pairwise distance within `set` in the 1-skeleton minus `avoid`.
fn punctured_diameter(c: &Complex2, set: &[usize], avoid: usize) -> Option<usize> {
    let mut diam = 0;
    for &a in set {
        let mut dist = vec![usize::MAX; c.vertex_count()];
        dist[a] = 0;
        let mut q = VecDeque::from([a]);
        while let Some(u) = q.pop_front() {
            for d in c.darts_from(u) {
                let w = c.dst(d);
                if w != avoid && dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    q.push_back(w);
                }
            }
        }
        for &b in set {
            diam = diam.max(dist[b]);
        }
    }
    (diam != usize::MAX).then_some(diam)
}

/// Checks `diam f(A) <= C * dehn(diam A + 2)` for neighbours `A` of `x0`.
pub fn fine_inequality_check(m: &CombMap, x0: usize, a: &[usize], budgets: &Budgets) -> Result<FineReport> {
    let (x, y) = (&*m.source, &*m.target);
    if x0 >= x.vertex_count() {
        return Err(Error::UnknownVertex(format!("#{x0}")));
    }
    let nbrs: BTreeSet<usize> = x.darts_from(x0).into_iter().map(|d| x.dst(d)).collect();
    if let Some(&bad) = a.iter().find(|v| !nbrs.contains(v)) {
        return Err(Error::InvalidInput(format!("{} is not adjacent to {}", x.vertex_name(bad), x.vertex_name(x0))));
    }
    let c = y.max_face_length();
    let mut out = FineReport { verdict: FineVerdict::Undecided, diam_source: None, diam_target: None, max_face_length: c, dehn: None };
    if !m.is_immersion() || dr_certify(y, budgets).verdict != DrVerdict::Certified {
        return Ok(out);
    }
    let fa: Vec<usize> = a.iter().map(|&v| m.vmap[v]).collect();
    out.diam_source = punctured_diameter(x, a, x0);
    out.diam_target = punctured_diameter(y, &fa, m.vmap[x0]);
    let Some(ds) = out.diam_source else {
        out.verdict = FineVerdict::Holds;
        return Ok(out);
    };
    let table = match dehn_estimate(y, ds + 2, budgets) {
        Ok(t) => t,
        Err(e) if e.is_undecided() => return Ok(out),
        Err(e) => return Err(e),
    };
    let delta = table[ds + 2];
    out.dehn = Some(delta);
    out.verdict = match out.diam_target {
        Some(dt) if dt <= c * delta => FineVerdict::Holds,
        _ => FineVerdict::Violated,
    };
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn rim(c: &Complex2, n: usize) -> Vec<usize> {
        (0..n).map(|i| c.dart(&format!("e{i}")).unwrap()).collect()
    }

    #[test]
    fn disk_face_has_area_one() {
        let c = Arc::new(fixtures::disk3());
        let d = search_disk(&c, c.boundary(0), 1).unwrap().unwrap();
        assert_eq!(d.area(), 1);
        assert!(d.is_reduced());
        assert_eq!(d.euler_characteristic(), 1);
    }

    #[test]
    fn wheel_rim_needs_six_triangles() {
        let c = Arc::new(fixtures::wheel(6));
        let r = rim(&c, 6);
        assert!(search_disk(&c, &r, 5).unwrap().is_none());
        let d = search_disk(&c, &r, 6).unwrap().unwrap();
        assert_eq!(d.area(), 6);
        assert!(d.is_reduced());
        assert_eq!(d.boundary_image(), r);
        assert!(d.map.is_near_immersion());
    }

    #[test]
    fn cycle_has_no_filling() {
        let c = Arc::new(fixtures::cycle(3));
        assert!(search_disk(&c, &rim(&c, 3), 4).unwrap().is_none());
    }

    #[test]
    fn backtracks_fill_with_spurs() {
        let c = Arc::new(fixtures::cycle(3));
        let e = c.dart("e0").unwrap();
        let d = search_disk(&c, &[e, e ^ 1], 0).unwrap().unwrap();
        assert_eq!((d.area(), d.complex.vertex_count()), (0, 2));
    }

    #[test]
    fn dehn_tables() {
        let b = Budgets::default();
        assert_eq!(dehn_estimate(&fixtures::disk3(), 3, &b).unwrap()[3], 1);
        assert_eq!(dehn_estimate(&fixtures::sphere2(), 3, &b).unwrap()[3], 1);
        let w = dehn_estimate(&fixtures::wheel(6), 4, &b).unwrap();
        assert_eq!((w[3], w[4]), (1, 2));
        assert!(w.windows(2).all(|p| p[0] <= p[1]));
    }

    #[test]
    fn spheres() {
        let s = sphere_search(&Arc::new(fixtures::sphere2()), 2).unwrap();
        assert_eq!(s.complex.face_count(), 2);
        assert!(s.map.is_isomorphism());
        assert!(sphere_search(&Arc::new(fixtures::disk3()), 4).is_none());
        assert!(sphere_search(&Arc::new(fixtures::wheel(6)), 6).is_none());
    }

    #[test]
    fn fine_inequality_on_the_wheel() {
        let c = fixtures::wheel(6);
        let m = CombMap::identity(&c);
        let z = c.vertex("z").unwrap();
        let rim: Vec<usize> = (0..6).map(|i| c.vertex(&format!("r{i}")).unwrap()).collect();
        let b = Budgets::default();
        let r = fine_inequality_check(&m, z, &rim, &b).unwrap();
        assert_eq!((r.verdict, r.diam_source, r.dehn), (FineVerdict::Holds, Some(3), Some(3)));
        let r = fine_inequality_check(&m, z, &rim[..2], &b).unwrap();
        assert_eq!((r.verdict, r.diam_target), (FineVerdict::Holds, Some(1)));
        assert_eq!(fine_inequality_check(&m, z, &rim[..1], &b).unwrap().diam_source, Some(0));
    }
}
