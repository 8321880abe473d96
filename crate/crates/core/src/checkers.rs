//! Curvature and reducibility conditions that can be decided exactly.
//!
//! Angles are measured in units of pi. The scalar type is generic; the
//! default is an exact rational, and `f64` works for quick experiments.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;
use std::sync::Arc;

use num_rational::Ratio;
use num_traits::{FromPrimitive, Num};
use serde::Serialize;

use crate::actions::free_edges;
use crate::complex::{Complex2, Subcomplex};
use crate::cover::{is_simply_connected, Decision};
use crate::diagrams::{sphere_search, SphereDiagram};
use crate::error::{Error, Result};
use crate::oracle::Budgets;
use crate::simplicial::SimpComplex;

pub type Rational = Ratio<i64>;

/// Arithmetic needed for angle sums and comparisons.
pub trait AngleScalar: Clone + Debug + PartialOrd + Num + FromPrimitive {}
impl<T: Clone + Debug + PartialOrd + Num + FromPrimitive> AngleScalar for T {}

/// One angle per face corner, in units of pi.
#[derive(Clone, Debug, PartialEq)]
pub struct AngleAssignment<T = Rational> {
    angles: Vec<Vec<T>>,
}

pub type FloatAngles = AngleAssignment<f64>;

impl<T: AngleScalar> AngleAssignment<T> {
    pub fn new(c: &Complex2, angles: Vec<Vec<T>>) -> Result<Self> {
        if angles.len() != c.face_count() {
            return Err(Error::InvalidInput(format!("{} faces but {} angle lists", c.face_count(), angles.len())));
        }
        for (f, row) in angles.iter().enumerate() {
            if row.len() != c.boundary(f).len() {
                return Err(Error::InvalidInput(format!("face {} needs {} angles", c.face_name(f), c.boundary(f).len())));
            }
            if row.iter().any(|a| *a < T::zero()) {
                return Err(Error::InvalidInput(format!("negative angle on face {}", c.face_name(f))));
            }
        }
        Ok(AngleAssignment { angles })
    }

    pub fn from_fn(c: &Complex2, f: impl Fn(usize, usize) -> T) -> Result<Self> {
        let angles = (0..c.face_count()).map(|g| (0..c.boundary(g).len()).map(|i| f(g, i)).collect()).collect();
        AngleAssignment::new(c, angles)
    }

    pub fn uniform(c: &Complex2, a: T) -> Result<Self> {
        AngleAssignment::from_fn(c, |_, _| a.clone())
    }

    pub fn get(&self, face: usize, corner: usize) -> &T {
        &self.angles[face][corner]
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.angles
    }

    pub fn scaled(&self, rho: T) -> Self {
        AngleAssignment {
            angles: self.angles.iter().map(|r| r.iter().map(|a| a.clone() * rho.clone()).collect()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum CurvatureViolation<T> {
    /// Angle sum of an n-gon that is not below `n - 2`.
    Face { face: usize, sum: T },
    /// A link circuit at `vertex` of measure below 2, as face corners.
    Circuit { vertex: usize, corners: Vec<(usize, usize)>, measure: T },
}

/// Conformal negative curvature: face angle sums below `(n - 2) pi` and every
/// link circuit of measure at least `2 pi`.
pub fn check_negative_curvature<T: AngleScalar>(c: &Complex2, a: &AngleAssignment<T>) -> Option<CurvatureViolation<T>> {
    let two = T::from_u8(2).unwrap();
    for f in 0..c.face_count() {
        let n = c.boundary(f).len();
        let sum = a.angles[f].iter().cloned().fold(T::zero(), |x, y| x + y);
        if !(sum < T::from_usize(n).unwrap() - two.clone()) {
            return Some(CurvatureViolation::Face { face: f, sum });
        }
    }
    for v in c.vertices() {
        if let Some((corners, measure)) = lightest_link_circuit(c, v, a) {
            if measure < two {
                return Some(CurvatureViolation::Circuit { vertex: v, corners, measure });
            }
        }
    }
    None
}

/// The lightest circuit in the link of `v`. Weights are nonnegative, so the
/// minimum over circuits without backtracking is attained on a simple cycle:
/// an arc plus a shortest path between its ends avoiding it.
pub fn lightest_link_circuit<T: AngleScalar>(c: &Complex2, v: usize, a: &AngleAssignment<T>) -> Option<(Vec<(usize, usize)>, T)> {
    let link = c.link(v).ok()?;
    let arcs: Vec<(usize, usize, T)> = link.arcs.iter().map(|x| (x.from, x.to, a.get(x.face, x.position).clone())).collect();
    let mut best: Option<(Vec<usize>, T)> = None;
    for (i, (u, w, wt)) in arcs.iter().enumerate() {
        let found = if u == w {
            Some((vec![i], wt.clone()))
        } else {
            shortest_avoiding(&arcs, *w, *u, i).map(|(mut p, d)| {
                p.push(i);
                (p, d + wt.clone())
            })
        };
        if let Some((p, d)) = found {
            if best.as_ref().map_or(true, |(_, b)| d < *b) {
                best = Some((p, d));
            }
        }
    }
    best.map(|(p, d)| (p.iter().map(|&i| (link.arcs[i].face, link.arcs[i].position)).collect(), d))
}

fn shortest_avoiding<T: AngleScalar>(arcs: &[(usize, usize, T)], from: usize, to: usize, skip: usize) -> Option<(Vec<usize>, T)> {
    let mut dist: BTreeMap<usize, (T, Option<usize>)> = BTreeMap::from([(from, (T::zero(), None))]);
    let mut done = BTreeSet::new();
    loop {
        let cur = dist
            .iter()
            .filter(|(n, _)| !done.contains(*n))
            .min_by(|x, y| x.1 .0.partial_cmp(&y.1 .0).unwrap_or(std::cmp::Ordering::Equal))
            .map(|(&n, _)| n)?;
        if cur == to {
            break;
        }
        done.insert(cur);
        let base = dist[&cur].0.clone();
        for (i, (p, q, w)) in arcs.iter().enumerate() {
            if i == skip {
                continue;
            }
            for (x, y) in [(p, q), (q, p)] {
                if *x == cur && !done.contains(y) {
                    let nd = base.clone() + w.clone();
                    if dist.get(y).map_or(true, |(d, _)| nd < *d) {
                        dist.insert(*y, (nd, Some(i)));
                    }
                }
            }
        }
    }
    let mut path = Vec::new();
    let mut n = to;
    while let Some(i) = dist[&n].1 {
        path.push(i);
        let (p, q, _) = &arcs[i];
        n = if *p == n { *q } else { *p };
    }
    path.reverse();
    Some((path, dist[&to].0.clone()))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FlagReport {
    pub flag: bool,
    /// A triangle of the 1-skeleton that is not a simplex.
    pub missing: Option<Vec<usize>>,
    /// Complete graphs on four vertices; genuine flagness would need a
    /// 3-simplex there, which these complexes cannot hold.
    pub k4_warnings: Vec<Vec<usize>>,
}

pub fn is_flag(s: &SimpComplex) -> FlagReport {
    let n = s.vertex_count();
    let mut r = FlagReport { flag: true, ..FlagReport::default() };
    for a in 0..n {
        for b in a + 1..n {
            if !s.has_edge(a, b) {
                continue;
            }
            for c in b + 1..n {
                if s.has_edge(a, c) && s.has_edge(b, c) {
                    if r.missing.is_none() && !s.contains(&[a, b, c]) {
                        r.flag = false;
                        r.missing = Some(vec![a, b, c]);
                    }
                    for d in c + 1..n {
                        if [a, b, c].iter().all(|&x| s.has_edge(x, d)) {
                            r.k4_warnings.push(vec![a, b, c, d]);
                        }
                    }
                }
            }
        }
    }
    r
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum LargeCertificate {
    /// A clique that does not span a simplex.
    Clique(Vec<usize>),
    /// A full embedded cycle that is too short, in cyclic order.
    Cycle(Vec<usize>),
}

/// Full embedded cycles of length `4..k`: chordless, so no three of their
/// vertices span a triangle either.
fn short_full_cycle(s: &SimpComplex, k: usize) -> Option<Vec<usize>> {
    let adj = s.adjacency();
    let n = s.vertex_count();
    fn extend(adj: &[Vec<usize>], s: &SimpComplex, path: &mut Vec<usize>, k: usize) -> Option<Vec<usize>> {
        let (start, last) = (path[0], *path.last().unwrap());
        for &w in &adj[last] {
            if w <= start || path.contains(&w) {
                continue;
            }
            // chordless: w may touch only its predecessor and, when closing,
            // the start
            if path.len() > 1 && path[1..path.len() - 1].iter().any(|&x| s.has_edge(x, w)) {
                continue;
            }
            let len = path.len() + 1;
            if path.len() >= 2 && s.has_edge(w, start) {
                if len >= 4 && path[1] < w {
                    let mut c = path.clone();
                    c.push(w);
                    return Some(c);
                }
                continue;
            }
            if len + 1 < k {
                path.push(w);
                if let Some(c) = extend(adj, s, path, k) {
                    return Some(c);
                }
                path.pop();
            }
        }
        None
    }
    for start in 0..n {
        let mut path = vec![start];
        if let Some(c) = extend(&adj, s, &mut path, k) {
            return Some(c);
        }
    }
    None
}

/// Flag with no full embedded cycle shorter than `k`.
pub fn is_k_large(s: &SimpComplex, k: usize) -> Result<Option<LargeCertificate>> {
    if k < 6 {
        return Err(Error::InvalidInput("k must be at least 6".into()));
    }
    if let Some(m) = is_flag(s).missing {
        return Ok(Some(LargeCertificate::Clique(m)));
    }
    Ok(short_full_cycle(s, k).map(LargeCertificate::Cycle))
}

/// Every simplex has a k-large link. On failure, names the simplex (in the
/// input's vertex numbering) and the certificate inside its link.
pub fn is_locally_k_large(s: &SimpComplex, k: usize) -> Result<Option<(Vec<usize>, LargeCertificate)>> {
    if k < 6 {
        return Err(Error::InvalidInput("k must be at least 6".into()));
    }
    for sigma in s.simplices() {
        let link = s.link(sigma);
        if let Some(cert) = is_k_large(&link, k)? {
            let back = |xs: Vec<usize>| xs.into_iter().map(|i| s.vertex_index(link.vertex_name(i)).unwrap()).collect();
            let cert = match cert {
                LargeCertificate::Clique(x) => LargeCertificate::Clique(back(x)),
                LargeCertificate::Cycle(x) => LargeCertificate::Cycle(back(x)),
            };
            return Ok(Some((sigma.clone(), cert)));
        }
    }
    Ok(None)
}

/// What is left after repeatedly deleting faces with a free edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DrCore {
    /// Closure of the surviving faces.
    pub core: Subcomplex,
    pub empty: bool,
}

pub fn dr_core(c: &Complex2, z: Option<&Subcomplex>) -> DrCore {
    let mut cur = z.cloned().unwrap_or_else(|| Subcomplex::whole(c));
    loop {
        let free = free_edges(c, &cur);
        let Some(&(_, f)) = free.first() else { break };
        cur.faces.remove(&f);
    }
    let faces = Subcomplex { faces: cur.faces, ..Subcomplex::default() };
    let core = faces.closure(c);
    let empty = core.faces.is_empty();
    DrCore { core, empty }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DrVerdict {
    Certified,
    Refuted,
    Unknown,
}

#[derive(Clone, Debug)]
pub struct DrReport {
    pub verdict: DrVerdict,
    pub simply_connected: Decision,
    pub core_empty: bool,
    pub sphere: Option<SphereDiagram>,
}

/// Diagrammatic reducibility. An empty core certifies it only for
/// one-connected complexes; a near-immersed sphere refutes it.
pub fn dr_certify(c: &Complex2, budgets: &Budgets) -> DrReport {
    let simply_connected = is_simply_connected(c, budgets);
    let core_empty = dr_core(c, None).empty;
    if simply_connected == Decision::Yes && core_empty {
        return DrReport { verdict: DrVerdict::Certified, simply_connected, core_empty, sphere: None };
    }
    let sphere = sphere_search(&Arc::new(c.clone()), budgets.sphere_limit);
    let verdict = if sphere.is_some() { DrVerdict::Refuted } else { DrVerdict::Unknown };
    DrReport { verdict, simply_connected, core_empty, sphere }
}

/// For each edge, the number of embedded circuits of each length `0..=max`
/// through it.
pub fn fineness_profile(g: &Complex2, max: usize) -> Result<Vec<Vec<usize>>> {
    if g.face_count() > 0 {
        return Err(Error::InvalidInput("fineness profile needs a complex without faces".into()));
    }
    let mut counts = vec![vec![0; max + 1]; g.edge_count()];
    // each circuit is found once, from its smallest edge read forwards
    fn walk(g: &Complex2, min_e: usize, target: usize, at: usize, used: &mut Vec<usize>, seen: &mut Vec<usize>, max: usize, counts: &mut [Vec<usize>]) {
        if at == target {
            let len = used.len();
            for &e in used.iter() {
                counts[e][len] += 1;
            }
            return;
        }
        if used.len() >= max {
            return;
        }
        for d in g.darts_from(at) {
            let (e, w) = (d / 2, g.dst(d));
            if e <= min_e || seen.contains(&w) && w != target {
                continue;
            }
            used.push(e);
            seen.push(w);
            walk(g, min_e, target, w, used, seen, max, counts);
            seen.pop();
            used.pop();
        }
    }
    for e in 0..g.edge_count() {
        if max == 0 {
            break;
        }
        let (u, v) = (g.src(2 * e), g.dst(2 * e));
        let mut used = vec![e];
        let mut seen = vec![u, v];
        walk(g, e, u, v, &mut used, &mut seen, max, &mut counts);
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn flagness() {
        assert!(is_flag(&fixtures::five_cycle()).flag);
        let t = is_flag(&fixtures::tetra_boundary());
        assert!(t.flag);
        assert_eq!(t.k4_warnings.len(), 1);
        assert!(is_flag(&fixtures::oct()).flag);
        assert!(is_flag(&fixtures::oct()).k4_warnings.is_empty());
    }

    #[test]
    fn largeness() {
        assert_eq!(is_k_large(&fixtures::six_cycle(), 6).unwrap(), None);
        assert_eq!(is_k_large(&fixtures::five_cycle(), 6).unwrap().map(|c| matches!(c, LargeCertificate::Cycle(v) if v.len() == 5)), Some(true));
        let oct = fixtures::oct();
        match is_k_large(&oct, 6).unwrap() {
            Some(LargeCertificate::Cycle(v)) => {
                assert_eq!(v.len(), 4);
                for i in 0..4 {
                    assert!(oct.has_edge(v[i], v[(i + 1) % 4]));
                    assert!(!oct.has_edge(v[i], v[(i + 2) % 4]));
                }
            }
            other => panic!("{other:?}"),
        }
        assert!(is_k_large(&oct, 5).is_err());
    }

    #[test]
    fn local_largeness() {
        assert_eq!(is_locally_k_large(&fixtures::wheel_simp(6), 6).unwrap(), None);
        assert!(is_locally_k_large(&fixtures::oct(), 6).unwrap().is_some());
        assert_eq!(is_locally_k_large(&fixtures::five_cycle(), 6).unwrap(), None);
    }

    #[test]
    fn curvature() {
        let w6 = fixtures::wheel(6);
        let third = AngleAssignment::uniform(&w6, q(1, 3)).unwrap();
        assert!(matches!(check_negative_curvature(&w6, &third), Some(CurvatureViolation::Face { .. })));
        let quarter = AngleAssignment::uniform(&w6, q(1, 4)).unwrap();
        match check_negative_curvature(&w6, &quarter) {
            Some(CurvatureViolation::Circuit { measure, corners, .. }) => {
                assert_eq!(measure, q(3, 2));
                assert_eq!(corners.len(), 6);
            }
            other => panic!("{other:?}"),
        }
        let w7 = fixtures::wheel(7);
        let z = w7.vertex("z").unwrap();
        let a = AngleAssignment::from_fn(&w7, |f, i| {
            if w7.src(w7.boundary(f)[i]) == z {
                q(2, 7)
            } else {
                q(1, 4)
            }
        })
        .unwrap();
        assert_eq!(check_negative_curvature(&w7, &a), None);
        let f = AngleAssignment::<f64>::from_fn(&w7, |f, i| if w7.src(w7.boundary(f)[i]) == z { 0.3 } else { 0.25 }).unwrap();
        assert_eq!(check_negative_curvature(&w7, &f), None);
    }

    #[test]
    fn cores() {
        assert!(dr_core(&fixtures::disk3(), None).empty);
        let s = fixtures::sphere2();
        assert_eq!(dr_core(&s, None).core, Subcomplex::whole(&s));
        assert!(dr_core(&fixtures::wheel(6), None).empty);
    }

    #[test]
    fn dr_verdicts() {
        let b = Budgets::default();
        assert_eq!(dr_certify(&fixtures::wheel(6), &b).verdict, DrVerdict::Certified);
        let s = dr_certify(&fixtures::sphere2(), &b);
        assert_eq!(s.verdict, DrVerdict::Refuted);
        assert!(s.sphere.unwrap().map.is_isomorphism());
        let small = Budgets { coset_limit: 500, area_limit: 2, sphere_limit: 2 };
        assert_eq!(dr_certify(&fixtures::torus1(), &small).verdict, DrVerdict::Unknown);
    }

    #[test]
    fn fineness() {
        let c6 = fineness_profile(&fixtures::cycle(6), 7).unwrap();
        assert!(c6.iter().all(|r| r[6] == 1 && r.iter().sum::<usize>() == 1));
        let th = fineness_profile(&fixtures::theta(), 3).unwrap();
        assert!(th.iter().all(|r| r[2] == 2 && r[3] == 0));
        assert!(fineness_profile(&fixtures::path(2), 4).unwrap().iter().all(|r| r.iter().all(|&x| x == 0)));
        assert!(fineness_profile(&fixtures::disk3(), 3).is_err());
    }
}
