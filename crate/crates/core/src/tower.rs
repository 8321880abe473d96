//! Equivariant towers: maximal lifts through alternating inclusions and
//! covers, and the core of a subgroup action.
//!
//! Cover steps are finite windows of a universal cover built on demand: the
//! closed star of the lifted image. When the cover is finite and the window
//! exhausts it, the step is marked `complete`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::Serialize;

use crate::actions::{EqMap, FinAction};
use crate::complex::{Complex2, Subcomplex, ValidationReport};
use crate::cover::{is_simply_connected, Decision};
use crate::error::{Error, Result};
use crate::group::FinGroup;
use crate::lazy::{LazyCover, Materialized, Region};
use crate::maps::{CombMap, FaceImage};
use crate::oracle::Budgets;
use crate::pi1::Presentation;
use crate::diagrams::search_disk;

/// Iterations before a lift is declared undecided.
pub const MAX_ITERATIONS: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Mode {
    /// Images at each level.
    Tower,
    /// Full subcomplexes spanned by the images.
    FTower,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StepKind {
    Inclusion,
    FullInclusion,
    Cover,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerStep {
    pub kind: StepKind,
    pub map: EqMap,
    /// Cover steps come from the universal cover, so they are regular for
    /// the lifted group with trivial subgroup.
    pub universal: bool,
    /// The window is the whole cover.
    pub complete: bool,
}

/// A factorization `Y_n -> ... -> Y` listed from the `Y` end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerCert {
    pub steps: Vec<TowerStep>,
    pub composite: EqMap,
    /// Complexity of each successive lift, ending with the repeat.
    pub complexities: Vec<Complexity>,
}

impl TowerCert {
    /// Achieved step count; an upper bound for the minimal length.
    pub fn length(&self) -> usize {
        self.steps.len()
    }
}

/// `(d - r, e)` in dictionary order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Complexity {
    pub gap: usize,
    pub edges: usize,
}

/// Orbit gap of the map and edge orbits of the target under `fsharp(G)`.
pub fn complexity(m: &EqMap) -> Complexity {
    let ta = &*m.target;
    let group: BTreeSet<usize> = m.fsharp.iter().copied().collect();
    let c = ta.space();
    let mut seen = vec![false; c.edge_count()];
    let mut edges = 0;
    for e in 0..c.edge_count() {
        if seen[e] {
            continue;
        }
        edges += 1;
        for &h in &group {
            seen[ta.act_dart(h, 2 * e) / 2] = true;
        }
    }
    Complexity { gap: m.d().saturating_sub(m.r()), edges }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TowerReport {
    pub report: ValidationReport,
    pub f_tower: bool,
    pub immersion: bool,
    pub near_immersion: bool,
}

impl TowerReport {
    pub fn is_valid(&self) -> bool {
        self.report.is_valid()
    }
}

/// Every vertex sees as many darts and face corners as its image.
fn is_covering(m: &CombMap) -> bool {
    let corners = |c: &Complex2, u: usize| c.faces().iter().map(|f| f.boundary.iter().filter(|&&d| c.src(d) == u).count()).sum::<usize>();
    m.source.vertices().all(|v| {
        let w = m.vmap[v];
        m.source.darts_from(v).len() == m.target.darts_from(w).len() && corners(&m.source, v) == corners(&m.target, w)
    })
}

fn injective(xs: &[usize]) -> bool {
    xs.iter().collect::<BTreeSet<_>>().len() == xs.len()
}

pub fn validate_tower(t: &TowerCert) -> TowerReport {
    let mut out = TowerReport::default();
    let r = &mut out.report;
    if t.steps.is_empty() {
        r.push("a tower needs at least one step");
        return out;
    }
    let mut f_tower = true;
    for (i, s) in t.steps.iter().enumerate() {
        let v = s.map.validate();
        for x in v.report.violations {
            r.push(format!("step {i}: {x}"));
        }
        match s.kind {
            StepKind::Inclusion | StepKind::FullInclusion => {
                if !s.map.map.is_injective() || !injective(&s.map.fsharp) {
                    r.push(format!("step {i}: inclusion is not injective"));
                }
                let full = s.map.map.image().is_full(&s.map.map.target);
                if s.kind == StepKind::FullInclusion && !full {
                    r.push(format!("step {i}: image is not full"));
                }
                f_tower &= full;
            }
            StepKind::Cover => {
                if !s.map.map.is_immersion() {
                    r.push(format!("step {i}: cover step is not an immersion"));
                }
                if s.complete && !is_covering(&s.map.map) {
                    r.push(format!("step {i}: complete cover step is not a covering"));
                }
            }
        }
        if i + 1 < t.steps.len() && *t.steps[i + 1].map.target != *s.map.source {
            r.push(format!("steps {i} and {} do not compose", i + 1));
        }
    }
    if !r.is_valid() {
        return out;
    }
    let mut comp = t.steps[0].map.clone();
    for s in &t.steps[1..] {
        comp = match comp.compose(&s.map) {
            Ok(c) => c,
            Err(e) => {
                r.push(e.to_string());
                return out;
            }
        };
    }
    if comp != t.composite {
        r.push("stored composite differs from the composition of the steps");
    }
    out.immersion = t.composite.map.is_immersion();
    out.near_immersion = t.composite.map.is_near_immersion();
    if !out.immersion {
        r.push("composite is not an immersion");
    }
    out.f_tower = f_tower;
    out
}

fn require_one_connected(c: &Complex2, budgets: &Budgets) -> Result<()> {
    match is_simply_connected(c, budgets) {
        Decision::Yes => Ok(()),
        Decision::No => Err(Error::NotOneConnected),
        Decision::Unknown => Err(Error::Undecided("simple connectivity of the source".into())),
    }
}

/// Whether `m` admits no further lifting: `fsharp` onto, `m` onto (towers)
/// or onto vertices (F-towers), and the target simply connected.
pub fn is_maximal_lift(m: &EqMap, mode: Mode, budgets: &Budgets) -> Result<bool> {
    require_one_connected(m.source.space(), budgets)?;
    let onto_group = m.fsharp.iter().collect::<BTreeSet<_>>().len() == m.target.group().order();
    let onto = match mode {
        Mode::Tower => m.map.is_surjective(),
        Mode::FTower => m.map.is_zero_surjective(),
    };
    if !onto_group || !onto {
        return Ok(false);
    }
    match is_simply_connected(m.target.space(), budgets) {
        Decision::Yes => Ok(true),
        Decision::No => Ok(false),
        Decision::Unknown => Err(Error::Undecided("simple connectivity of the target".into())),
    }
}

/// Result of a maximal lifting run: `m = cert.composite . lift`.
#[derive(Clone, Debug)]
pub struct TowerLift {
    pub lift: EqMap,
    pub cert: TowerCert,
}

pub fn max_f_tower_lift(m: &EqMap, budgets: &Budgets) -> Result<TowerLift> {
    max_lift(m, Mode::FTower, budgets)
}

pub fn max_tower_lift(m: &EqMap, budgets: &Budgets) -> Result<TowerLift> {
    max_lift(m, Mode::Tower, budgets)
}

/// The action of a subgroup (given by its elements' images `emb`) on an
/// invariant subcomplex, with the inclusion.
fn restrict_action(a: &FinAction, group: FinGroup, emb: &[usize], sub: &Subcomplex) -> Result<(Arc<FinAction>, CombMap)> {
    let inc = CombMap::inclusion(a.space(), sub);
    let child = inc.source.clone();
    let mut maps = Vec::with_capacity(emb.len());
    for &h in emb {
        let m = a.element_map(h).compose(&inc)?.corestrict(sub)?;
        maps.push(CombMap { source: child.clone(), target: child.clone(), ..m });
    }
    Ok((Arc::new(FinAction::new(group, child, maps)?), inc))
}

fn step_kind(mode: Mode) -> StepKind {
    match mode {
        Mode::Tower => StepKind::Inclusion,
        Mode::FTower => StepKind::FullInclusion,
    }
}

fn region_of(c: &Complex2, m: &CombMap, mode: Mode) -> Subcomplex {
    match mode {
        Mode::Tower => m.image(),
        Mode::FTower => m.image().span(c),
    }
}

/// Restricts the target of `m` to the `fsharp(G)`-subcomplex its image
/// determines. Returns the first tower step and the new map.
fn first_level(m: &EqMap, mode: Mode) -> Result<(TowerStep, EqMap)> {
    let y = m.target.space();
    let sub = region_of(y, &m.map, mode);
    let hg = m.target.group();
    let gens: Vec<usize> = m.source.group().generators().iter().map(|&g| m.fsharp[g]).collect();
    let (group, emb) = hg.subgroup(&gens);
    if sub == Subcomplex::whole(y) && group.order() == hg.order() {
        let step = TowerStep { kind: step_kind(mode), map: EqMap::identity(&m.target), universal: false, complete: false };
        return Ok((step, m.clone()));
    }
    let (a1, inc) = restrict_action(&m.target, group, &emb, &sub)?;
    let pos: BTreeMap<usize, usize> = emb.iter().enumerate().map(|(i, &h)| (h, i)).collect();
    let step_map = EqMap::new(inc, a1.clone(), m.target.clone(), emb.clone())?;
    let map = m.map.corestrict(&sub)?;
    let map = CombMap { target: a1.space().clone(), ..map };
    let f1 = EqMap::new(map, m.source.clone(), a1, m.fsharp.iter().map(|h| pos[h]).collect())?;
    Ok((TowerStep { kind: step_kind(mode), map: step_map, universal: false, complete: false }, f1))
}

/// Lifts `phi: S -> Y_n` into the materialized window, given cover vertices
/// `ell` over the images of the vertices of `S`.
fn lift_map(lc: &mut LazyCover, mat: &Materialized, phi: &CombMap, ell: &[usize]) -> Result<CombMap> {
    let s = phi.source.clone();
    let missing = || Error::Internal("lifted cell leaves the window".into());
    let vmap = ell.iter().map(|x| mat.vidx.get(x).copied().ok_or_else(missing)).collect::<Result<Vec<_>>>()?;
    let mut dmap = Vec::with_capacity(s.dart_count());
    for d in s.darts() {
        let t = phi.dmap[d];
        let key = lc.edge_key(ell[s.src(d)], t)?;
        dmap.push(2 * mat.eidx.get(&key).copied().ok_or_else(missing)? + t % 2);
    }
    let mut fmap = Vec::with_capacity(s.face_count());
    for f in 0..s.face_count() {
        let im = phi.fmap[f];
        let b = s.boundary(f);
        let k = b.len();
        let i = (0..k).find(|&i| im.corner(i, k) == 0).ok_or_else(|| Error::Internal("face image without corner 0".into()))?;
        let key = (ell[s.src(b[i])], im.face);
        fmap.push(FaceImage { face: mat.fidx.get(&key).copied().ok_or_else(missing)?, ..im });
    }
    CombMap::new(s, mat.complex.clone(), vmap, dmap, fmap)
}

/// Cover vertices over the image of `X`, lifting `f` along shortest paths
/// from vertex 0.
fn lift_vertices(lc: &mut LazyCover, f: &EqMap) -> Result<Vec<usize>> {
    let x = f.source.space();
    let mut out = Vec::with_capacity(x.vertex_count());
    for v in x.vertices() {
        let p = x.shortest_path(0, v).ok_or(Error::Disconnected)?;
        let img: Vec<usize> = p.iter().map(|&d| f.map.dmap[d]).collect();
        out.push(lc.lift_vertex(&img)?);
    }
    Ok(out)
}

fn image_region(lc: &mut LazyCover, f: &EqMap, lift: &[usize]) -> Result<Region> {
    let x = f.source.space();
    let mut r = Region { vertices: lift.iter().copied().collect(), ..Region::default() };
    for e in 0..x.edge_count() {
        r.edges.insert(lc.edge_key(lift[x.src(2 * e)], f.map.dmap[2 * e])?);
    }
    for g in 0..x.face_count() {
        let im = f.map.fmap[g];
        let b = x.boundary(g);
        let k = b.len();
        let i = (0..k).find(|&i| im.corner(i, k) == 0).unwrap();
        r.faces.insert((lift[x.src(b[i])], im.face));
    }
    Ok(r)
}

struct Level {
    cover: TowerStep,
    inclusion: TowerStep,
    lift: EqMap,
    to_root: CombMap,
}

/// One round: lift `f` to the universal cover of its target, and cut out
/// the span (or image) of the lift with the group acting on it.
fn lift_once(f: &EqMap, to_root: &CombMap, mode: Mode, budgets: &Budgets) -> Result<Level> {
    let yn = f.target.space().clone();
    let mut lc = LazyCover::with_budgets(yn, f.map.vmap[0], budgets)?;
    let lift = lift_vertices(&mut lc, f)?;
    let region = match mode {
        Mode::FTower => lc.span(&lift.iter().copied().collect())?,
        Mode::Tower => image_region(&mut lc, f, &lift)?,
    };
    let window = lc.closed_star(&region)?;
    let mat = lc.materialize(&window, Some(to_root))?;
    let w = mat.complex.clone();

    // G acts on the cover through the lift; the kernel fixes everything.
    let (ga, ha) = (&*f.source, &*f.target);
    let g = ga.group();
    let over: Vec<usize> = g.elements().map(|x| lift[ga.act_vertex(x, 0)]).collect();
    let kernel: Vec<usize> = g.elements().filter(|&x| f.fsharp[x] == ha.group().identity() && over[x] == lc.root()).collect();
    let (q, proj) = g.quotient(&kernel)?;
    let mut reps = vec![usize::MAX; q.order()];
    for x in g.elements().rev() {
        reps[proj[x]] = x;
    }
    let lazy_of: BTreeMap<usize, usize> = mat.vidx.iter().map(|(&x, &i)| (i, x)).collect();
    let mut maps = Vec::with_capacity(q.order());
    for &x in &reps {
        let h = ha.element_map(f.fsharp[x]);
        let phi = h.compose(&mat.projection)?;
        let mut ell = Vec::with_capacity(w.vertex_count());
        for i in w.vertices() {
            let path: Vec<usize> = lc.class_path(lazy_of[&i]).iter().map(|&d| h.dmap[d]).collect();
            ell.push(lc.walk(over[x], &path)?);
        }
        let m = lift_map(&mut lc, &mat, &phi, &ell)?;
        maps.push(CombMap { target: w.clone(), ..m });
    }
    let wa = Arc::new(FinAction::new(q.clone(), w.clone(), maps)?);

    let sub = Subcomplex {
        vertices: region.vertices.iter().map(|x| mat.vidx[x]).collect(),
        edges: region.edges.iter().map(|k| mat.eidx[k]).collect(),
        faces: region.faces.iter().map(|k| mat.fidx[k]).collect(),
    };
    let all: Vec<usize> = q.elements().collect();
    let (ya, inc) = restrict_action(&wa, q.clone(), &all, &sub)?;
    let complete = w.vertices().all(|i| mat.is_covering_at(i));
    let cover_map = EqMap::new(mat.projection.clone(), wa.clone(), f.target.clone(), reps.iter().map(|&x| f.fsharp[x]).collect())?;
    let incl_map = EqMap::new(inc.clone(), ya.clone(), wa, all)?;

    let lifted = lift_map(&mut lc, &mat, &f.map, &lift)?.corestrict(&sub)?;
    let lifted = CombMap { target: ya.space().clone(), ..lifted };
    let next = EqMap::new(lifted, f.source.clone(), ya, proj)?;
    let to_root = to_root.compose(&mat.projection)?.compose(&inc)?;
    Ok(Level {
        cover: TowerStep { kind: StepKind::Cover, map: cover_map, universal: true, complete },
        inclusion: TowerStep { kind: step_kind(mode), map: incl_map, universal: false, complete: false },
        lift: next,
        to_root,
    })
}

/// Checks that an equivariant map with bijective `fsharp`, preserving
/// stabilizers and with `d = r`, is injective and onto vertices.
fn check_orbit_rigidity(g: &EqMap) -> Result<()> {
    let bijective = injective(&g.fsharp) && g.fsharp.len() == g.target.group().order();
    if bijective && g.is_stabilizer_preserving() && g.d() == g.r() && !(g.map.is_injective() && g.map.is_zero_surjective()) {
        return Err(Error::Internal("rigid step is not injective and onto vertices".into()));
    }
    Ok(())
}

fn max_lift(m: &EqMap, mode: Mode, budgets: &Budgets) -> Result<TowerLift> {
    require_one_connected(m.source.space(), budgets)?;
    let (first, mut f) = first_level(m, mode)?;
    let mut steps = vec![first];
    let mut to_root = steps[0].map.map.clone();
    let mut complexities = vec![complexity(&f)];
    let d = f.d();
    let measure = |c: &Complexity| match mode {
        Mode::Tower => Complexity { gap: c.gap, edges: 0 },
        Mode::FTower => *c,
    };
    let mut settled = false;
    for _ in 0..MAX_ITERATIONS {
        let level = lift_once(&f, &to_root, mode, budgets)?;
        let c = complexity(&level.lift);
        let prev = *complexities.last().unwrap();
        if measure(&c) > measure(&prev) {
            return Err(Error::Internal(format!("complexity rose from {prev:?} to {c:?}")));
        }
        if level.lift.d() != d {
            return Err(Error::Internal("orbit count of the source changed".into()));
        }
        let g = level.cover.map.compose(&level.inclusion.map)?;
        if g.compose(&level.lift)? != f {
            return Err(Error::Internal("lift does not factor the previous map".into()));
        }
        check_orbit_rigidity(&g)?;
        complexities.push(c);
        let iso = g.map.is_isomorphism() && injective(&g.fsharp) && g.fsharp.len() == g.target.group().order();
        if measure(&c) == measure(&prev) && iso {
            settled = true;
            break;
        }
        steps.push(level.cover);
        steps.push(level.inclusion);
        f = level.lift;
        to_root = level.to_root;
    }
    if !settled {
        return Err(Error::Undecided(format!("no stable lift after {MAX_ITERATIONS} rounds")));
    }
    if !is_maximal_lift(&f, mode, budgets)? {
        return Err(Error::Internal("stable lift is not maximal".into()));
    }
    let mut composite = steps[0].map.clone();
    for s in &steps[1..] {
        composite = composite.compose(&s.map)?;
    }
    if composite.compose(&f)? != *m {
        return Err(Error::Internal("tower does not factor the input".into()));
    }
    Ok(TowerLift { lift: f, cert: TowerCert { steps, composite, complexities } })
}

/// Output of the subgroup core construction.
#[derive(Clone, Debug)]
pub struct SubgroupCore {
    /// The subgroup acting on the constructed one-connected complex.
    pub action: Arc<FinAction>,
    /// The equivariant map into `Y`.
    pub map: EqMap,
    /// Its maximal F-tower lift.
    pub lift: TowerLift,
}

/// Builds a one-connected cocompact complex for the subgroup generated by
/// `gens`, mapping to `Y`, and lifts it maximally through an F-tower.
///
/// The 1-skeleton is the orbit of the union of shortest paths from vertex 0
/// to its translates by the generators; a disk diagram in `Y` is attached
/// along every translate of every generator loop of that graph.
pub fn subgroup_core(ya: &Arc<FinAction>, gens: &[usize], budgets: &Budgets) -> Result<SubgroupCore> {
    let y = ya.space().clone();
    let h = ya.group();
    if let Some(g) = gens.iter().find(|&&g| g >= h.order()) {
        return Err(Error::InvalidInput(format!("no group element {g}")));
    }
    match is_simply_connected(&y, budgets) {
        Decision::Yes => {}
        Decision::No => return Err(Error::InvalidInput("target is not one-connected".into())),
        Decision::Unknown => return Err(Error::Undecided("simple connectivity of the target".into())),
    }
    let (g, emb) = h.subgroup(gens);
    let y0 = 0;
    let mut seed = Subcomplex::vertex(y0);
    for &k in g.generators() {
        let p = y.shortest_path(y0, ya.act_vertex(emb[k], y0)).ok_or(Error::Disconnected)?;
        for &d in &p {
            seed.vertices.insert(y.dst(d));
            seed.edges.insert(d / 2);
        }
    }
    let mut x1 = Subcomplex::default();
    for k in g.elements() {
        let m = ya.element_map(emb[k]);
        x1.vertices.extend(seed.vertices.iter().map(|&v| m.vmap[v]));
        x1.edges.extend(seed.edges.iter().map(|&e| m.dmap[2 * e] / 2));
    }
    let inc = CombMap::inclusion(&y, &x1);
    let graph = inc.source.clone();
    let base = graph.vertex(y.vertex_name(y0))?;
    let pres = Presentation::new(&graph, base)?;
    let mut disks = Vec::new();
    for i in 0..pres.generator_count() {
        let lp: Vec<usize> = pres.generator_loop(i).iter().map(|&d| inc.dmap[d]).collect();
        let disk = search_disk(&y, &lp, budgets.area_limit)?
            .ok_or_else(|| Error::Undecided(format!("no disk of area at most {} for loop {i}", budgets.area_limit)))?;
        disks.push(disk);
    }

    // Cell names and their images in Y. Copy cells are `D{i}@{g}/{cell}`.
    let mut b = Complex2::builder();
    let mut vimg: BTreeMap<String, usize> = BTreeMap::new();
    let mut eimg: BTreeMap<String, usize> = BTreeMap::new();
    let mut fimg: BTreeMap<String, usize> = BTreeMap::new();
    for &v in &x1.vertices {
        b.vertex(y.vertex_name(v));
        vimg.insert(y.vertex_name(v).to_string(), v);
    }
    for &e in &x1.edges {
        b.edge(y.edge_name(e), y.vertex_name(y.src(2 * e)), y.vertex_name(y.dst(2 * e)));
        eimg.insert(y.edge_name(e).to_string(), 2 * e);
    }
    let copy = |i: usize, k: usize, cell: &str| format!("D{i}@{}/{cell}", g.name(k));
    for (i, disk) in disks.iter().enumerate() {
        let dc = &*disk.complex;
        let rim_v: BTreeSet<usize> = disk.boundary.iter().map(|&d| dc.src(d)).collect();
        let rim_e: BTreeSet<usize> = disk.boundary.iter().map(|&d| d / 2).collect();
        for k in g.elements() {
            let gm = ya.element_map(emb[k]);
            let vname = |v: usize| {
                if rim_v.contains(&v) {
                    y.vertex_name(gm.vmap[disk.map.vmap[v]]).to_string()
                } else {
                    copy(i, k, dc.vertex_name(v))
                }
            };
            let dname = |d: usize| {
                if rim_e.contains(&(d / 2)) {
                    y.dart_name(gm.dmap[disk.map.dmap[d]])
                } else {
                    let n = copy(i, k, dc.edge_name(d / 2));
                    if d % 2 == 0 {
                        n
                    } else {
                        format!("-{n}")
                    }
                }
            };
            for v in dc.vertices().filter(|v| !rim_v.contains(v)) {
                b.vertex(vname(v));
                vimg.insert(vname(v), gm.vmap[disk.map.vmap[v]]);
            }
            for e in (0..dc.edge_count()).filter(|e| !rim_e.contains(e)) {
                b.edge(dname(2 * e), vname(dc.src(2 * e)), vname(dc.dst(2 * e)));
                eimg.insert(dname(2 * e), gm.dmap[disk.map.dmap[2 * e]]);
            }
            for f in 0..dc.face_count() {
                let n = copy(i, k, dc.face_name(f));
                b.face(n.clone(), dc.boundary(f).iter().map(|&d| dname(d)).collect());
                fimg.insert(n, gm.fmap[disk.map.fmap[f].face].face);
            }
        }
    }
    let x = Arc::new(b.build()?);
    let dart_of = |name: &str, img: usize| (x.dart(name).unwrap(), img);
    let vmap: Vec<usize> = x.vertices().map(|v| vimg[x.vertex_name(v)]).collect();
    let mut dmap = vec![0; x.dart_count()];
    for (name, &img) in &eimg {
        let (d, t) = dart_of(name, img);
        dmap[d] = t;
        dmap[d ^ 1] = t ^ 1;
    }
    let faces: Vec<usize> = (0..x.face_count()).map(|f| fimg[x.face_name(f)]).collect();
    let map = CombMap::from_cells(x.clone(), y.clone(), vmap, dmap, &faces)?;

    // G permutes the copies by left multiplication and acts on the graph
    // through Y.
    let rename = |name: &str, k: usize| -> Option<String> {
        let (head, rest) = name.split_once('@')?;
        let (gname, cell) = rest.split_once('/')?;
        let j = g.index_of(gname)?;
        Some(format!("{head}@{}/{cell}", g.name(g.mul(k, j))))
    };
    let mut maps = Vec::with_capacity(g.order());
    for k in g.elements() {
        let gm = ya.element_map(emb[k]);
        let vmap = x
            .vertices()
            .map(|v| {
                let n = x.vertex_name(v);
                match rename(n, k) {
                    Some(m) => x.vertex(&m),
                    None => x.vertex(y.vertex_name(gm.vmap[y.vertex(n)?])),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let mut dmap = vec![0; x.dart_count()];
        for e in 0..x.edge_count() {
            let n = x.edge_name(e);
            let t = match rename(n, k) {
                Some(m) => x.dart(&m)?,
                None => x.dart(&y.dart_name(gm.dmap[2 * y.edge_index(n).unwrap()]))?,
            };
            dmap[2 * e] = t;
            dmap[2 * e + 1] = t ^ 1;
        }
        let faces = (0..x.face_count())
            .map(|f| x.face_id(&rename(x.face_name(f), k).expect("every face is a copy")))
            .collect::<Result<Vec<_>>>()?;
        maps.push(CombMap::from_cells(x.clone(), x.clone(), vmap, dmap, &faces)?);
    }
    let action = Arc::new(FinAction::new(g, x.clone(), maps)?);
    match is_simply_connected(&x, budgets) {
        Decision::Yes => {}
        Decision::No => return Err(Error::Internal("attached disks leave the core non-simply-connected".into())),
        Decision::Unknown => return Err(Error::Undecided("simple connectivity of the core".into())),
    }
    let map = EqMap::new(map, action.clone(), ya.clone(), emb)?;
    let lift = max_f_tower_lift(&map, budgets)?;
    Ok(SubgroupCore { action, map, lift })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::universal_cover_finite;
    use crate::fixtures;

    fn budgets() -> Budgets {
        Budgets::default()
    }

    fn kinds(t: &TowerCert) -> Vec<StepKind> {
        t.steps.iter().map(|s| s.kind).collect()
    }

    fn cx(gap: usize, edges: usize) -> Complexity {
        Complexity { gap, edges }
    }

    #[test]
    fn complexity_of_identity() {
        let a = Arc::new(fixtures::wheel_action(6, 1));
        assert_eq!(complexity(&EqMap::identity(&a)), cx(0, 2));
        assert_eq!(complexity(&EqMap::plain(fixtures::path_wrap(2, 3))), cx(0, 3));
    }

    #[test]
    fn path_into_triangle() {
        let m = EqMap::plain(fixtures::path_wrap(2, 3));
        assert!(!is_maximal_lift(&m, Mode::FTower, &budgets()).unwrap());
        for mode in [Mode::FTower, Mode::Tower] {
            let r = max_lift(&m, mode, &budgets()).unwrap();
            let expect = match mode {
                Mode::FTower => vec![StepKind::FullInclusion, StepKind::Cover, StepKind::FullInclusion],
                // the image already misses e2
                Mode::Tower => vec![StepKind::Inclusion],
            };
            assert_eq!(kinds(&r.cert), expect);
            let ledger = match mode {
                Mode::FTower => vec![cx(0, 3), cx(0, 2), cx(0, 2)],
                Mode::Tower => vec![cx(0, 2), cx(0, 2)],
            };
            assert_eq!(r.cert.complexities, ledger);
            assert!(r.lift.map.is_isomorphism());
            let y = r.lift.target.space();
            assert_eq!((y.vertex_count(), y.edge_count()), (3, 2));
            let rep = validate_tower(&r.cert);
            assert!(rep.is_valid(), "{:?}", rep.report);
            assert_eq!(rep.f_tower, mode == Mode::FTower);
            assert!(rep.near_immersion);
        }
    }

    #[test]
    fn vertex_into_triangle() {
        let c = Arc::new(fixtures::cycle(3));
        let inc = CombMap::inclusion(&c, &Subcomplex::vertex(0));
        let r = max_tower_lift(&EqMap::plain(inc), &budgets()).unwrap();
        assert_eq!(kinds(&r.cert), vec![StepKind::Inclusion]);
        assert!(r.lift.map.is_isomorphism());
        assert!(validate_tower(&r.cert).is_valid());
    }

    #[test]
    fn wheel_wrap_is_maximal() {
        let m = EqMap::infer(
            fixtures::wheel_wrap(6, 3),
            Arc::new(fixtures::wheel_action(6, 2)),
            Arc::new(fixtures::wheel_action(3, 1)),
        )
        .unwrap();
        assert!(is_maximal_lift(&m, Mode::FTower, &budgets()).unwrap());
        let r = max_f_tower_lift(&m, &budgets()).unwrap();
        assert_eq!(r.lift, m);
        assert_eq!(kinds(&r.cert), vec![StepKind::FullInclusion]);
        assert!(validate_tower(&r.cert).is_valid());
    }

    #[test]
    fn disk_onto_sphere_face() {
        let (d, s) = (fixtures::disk3(), Arc::new(fixtures::sphere2()));
        let f1 = s.face_id("f1").unwrap();
        let face = Subcomplex { faces: [f1].into(), ..Subcomplex::default() }.closure(&s);
        let inc = CombMap::inclusion(&s, &face);
        // Disk3 and the closed face agree up to names; match them by position.
        let t = inc.source.clone();
        let (b, tb) = (d.boundary(0), t.boundary(0));
        let mut dmap = vec![0; d.dart_count()];
        for (i, &x) in b.iter().enumerate() {
            dmap[x] = tb[i];
            dmap[x ^ 1] = tb[i] ^ 1;
        }
        let vmap = d.vertices().map(|v| t.src(tb[b.iter().position(|&x| d.src(x) == v).unwrap()])).collect();
        let iso = CombMap::from_cells(d.clone(), t, vmap, dmap, &[0]).unwrap();
        let m = EqMap::plain(inc.compose(&iso).unwrap());
        let r = max_f_tower_lift(&m, &budgets()).unwrap();
        // both faces share their boundary, so the span is the whole sphere
        assert_eq!(kinds(&r.cert), vec![StepKind::FullInclusion]);
        assert_eq!(r.lift, m);
    }

    #[test]
    fn repeat_without_isomorphism_continues() {
        let u = universal_cover_finite(&fixtures::z3pres(), &budgets()).unwrap();
        let deck = Arc::new(u.deck.clone());
        let base = Arc::new(FinAction::trivial(u.base.clone()));
        let m = EqMap::new(u.projection.clone(), deck, base, vec![0; 3]).unwrap();
        let r = max_f_tower_lift(&m, &budgets()).unwrap();
        assert!(r.lift.map.is_isomorphism());
        assert_eq!(r.lift.target.group().order(), 3);
        let c = &r.cert.complexities;
        assert!(c.windows(2).all(|w| w[1] <= w[0]));
        assert_eq!(c[0], c[1]);
        assert!(validate_tower(&r.cert).is_valid());
    }

    #[test]
    fn wheel_core_for_half_turn() {
        let ya = Arc::new(fixtures::wheel_action(6, 1));
        let r = ya.group().generators()[0];
        let half = ya.group().pow(r, 3);
        let core = subgroup_core(&ya, &[half], &budgets()).unwrap();
        let x = core.action.space();
        assert_eq!(core.action.group().order(), 2);
        assert_eq!((x.vertex_count(), x.edge_count(), x.face_count()), (3, 2, 0));
        assert_eq!(is_simply_connected(x, &budgets()), Decision::Yes);
        let rep = validate_tower(&core.lift.cert);
        assert!(rep.is_valid() && rep.f_tower && rep.immersion, "{:?}", rep.report);
        let whole = core.lift.cert.composite.compose(&core.lift.lift).unwrap();
        assert_eq!(whole, core.map);
        assert!(injective(&core.lift.cert.composite.map.vmap));
    }

    #[test]
    fn core_with_disks() {
        // Z/3 on Wheel6 moves r0 two steps, so the seed path closes up into
        // a hexagon through the hub and needs disks.
        let ya = Arc::new(fixtures::wheel_action(6, 1));
        let r = ya.group().generators()[0];
        let third = ya.group().pow(r, 2);
        let core = subgroup_core(&ya, &[third], &budgets()).unwrap();
        assert_eq!(core.action.group().order(), 3);
        let x = core.action.space();
        // rim hexagon, three hub copies, one six-triangle disk per element
        assert_eq!((x.vertex_count(), x.edge_count(), x.face_count()), (9, 24, 18));
        assert!(core.lift.lift.target.space().face_count() == 6);
        assert_eq!(is_simply_connected(core.action.space(), &budgets()), Decision::Yes);
        let rep = validate_tower(&core.lift.cert);
        assert!(rep.is_valid() && rep.f_tower && rep.immersion, "{:?}", rep.report);
    }

    #[test]
    fn trivial_subgroup_core_is_a_vertex() {
        let u = universal_cover_finite(&fixtures::z3pres(), &budgets()).unwrap();
        let ya = Arc::new(u.deck.clone());
        let core = subgroup_core(&ya, &[], &budgets()).unwrap();
        assert_eq!(core.action.space().vertex_count(), 1);
        assert_eq!(kinds(&core.lift.cert), vec![StepKind::FullInclusion]);
    }

    #[test]
    fn sphere_swap_core() {
        let ya = Arc::new(fixtures::sphere2_swap());
        let core = subgroup_core(&ya, &ya.group().generators().to_vec(), &budgets()).unwrap();
        assert_eq!(core.action.group().order(), 2);
        let rep = validate_tower(&core.lift.cert);
        assert!(rep.is_valid() && rep.f_tower && rep.immersion);
    }

    #[test]
    fn broken_composite_is_reported() {
        let m = EqMap::plain(fixtures::path_wrap(2, 3));
        let mut r = max_f_tower_lift(&m, &budgets()).unwrap();
        r.cert.composite = EqMap::identity(&r.cert.steps[0].map.target);
        assert!(!validate_tower(&r.cert).is_valid());
    }
}
