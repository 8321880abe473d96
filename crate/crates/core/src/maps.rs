//! Combinatorial maps and local injectivity.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::complex::{Complex2, Subcomplex, ValidationReport};
use crate::error::{Error, Result};

/// Where a face goes: the target face, a rotation offset and an orientation flag.
///
/// With source boundary `s_0..s_(k-1)` and target boundary `e_0..e_(k-1)`,
/// an unflipped image sends `s_i` to `e_((i+rot) % k)`; a flipped one sends
/// `s_i` to `rev(e_(k-1-((i+rot) % k)))`, reading the target backwards.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FaceImage {
    pub face: usize,
    pub rot: usize,
    pub flip: bool,
}

impl FaceImage {
    /// Target boundary position hit by source position `i`.
    pub fn position(&self, i: usize, k: usize) -> usize {
        let j = (i + self.rot) % k;
        if self.flip {
            k - 1 - j
        } else {
            j
        }
    }

    /// Target corner hit by source corner `i`.
    pub fn corner(&self, i: usize, k: usize) -> usize {
        let j = (i + self.rot) % k;
        if self.flip {
            (k - j) % k
        } else {
            j
        }
    }

    /// The dart that source position `i` must map to.
    pub fn image_dart(&self, target: &Complex2, i: usize, k: usize) -> usize {
        let e = target.boundary(self.face)[self.position(i, k)];
        if self.flip {
            target.rev(e)
        } else {
            e
        }
    }

    /// Smallest (unflipped first, then by rotation) face image of `f` onto `g`
    /// compatible with `dmap`, if any.
    pub fn derive(source: &Complex2, f: usize, target: &Complex2, g: usize, dmap: &[usize]) -> Option<FaceImage> {
        let sb = source.boundary(f);
        let k = sb.len();
        if target.boundary(g).len() != k {
            return None;
        }
        for flip in [false, true] {
            for rot in 0..k {
                let im = FaceImage { face: g, rot, flip };
                if (0..k).all(|i| dmap[sb[i]] == im.image_dart(target, i, k)) {
                    return Some(im);
                }
            }
        }
        None
    }

    fn affine(&self, k: usize) -> (i64, i64) {
        if self.flip {
            (-1, (k - 1 - self.rot) as i64)
        } else {
            (1, self.rot as i64)
        }
    }

    fn from_affine(face: usize, s: i64, t: i64, k: usize) -> FaceImage {
        let k = k as i64;
        if s == 1 {
            FaceImage { face, rot: t.rem_euclid(k) as usize, flip: false }
        } else {
            FaceImage { face, rot: (k - 1 - t).rem_euclid(k) as usize, flip: true }
        }
    }

    /// `outer` after `self`, both on faces of length `k`.
    pub fn then(&self, outer: &FaceImage, k: usize) -> FaceImage {
        let (s1, t1) = self.affine(k);
        let (s2, t2) = outer.affine(k);
        FaceImage::from_affine(outer.face, s1 * s2, s2 * t1 + t2, k)
    }
}

/// A combinatorial map between two complexes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombMap {
    pub source: Arc<Complex2>,
    pub target: Arc<Complex2>,
    pub vmap: Vec<usize>,
    pub dmap: Vec<usize>,
    pub fmap: Vec<FaceImage>,
}

impl CombMap {
    pub fn new(
        source: impl Into<Arc<Complex2>>,
        target: impl Into<Arc<Complex2>>,
        vmap: Vec<usize>,
        dmap: Vec<usize>,
        fmap: Vec<FaceImage>,
    ) -> Result<CombMap> {
        let m = CombMap { source: source.into(), target: target.into(), vmap, dmap, fmap };
        let r = m.validate();
        if r.is_valid() {
            Ok(m)
        } else {
            Err(Error::InvalidMap(r.violations.join("; ")))
        }
    }

    /// Builds a map from vertex and dart assignments, deriving face images.
    pub fn from_cells(
        source: impl Into<Arc<Complex2>>,
        target: impl Into<Arc<Complex2>>,
        vmap: Vec<usize>,
        dmap: Vec<usize>,
        faces: &[usize],
    ) -> Result<CombMap> {
        let source = source.into();
        let target = target.into();
        let mut fmap = Vec::with_capacity(source.face_count());
        for (f, &g) in faces.iter().enumerate() {
            if f >= source.face_count() || g >= target.face_count() || dmap.len() != source.dart_count() {
                return Err(Error::InvalidMap("face assignment out of range".into()));
            }
            let im = FaceImage::derive(&source, f, &target, g, &dmap).ok_or_else(|| {
                Error::InvalidMap(format!(
                    "face {} does not map onto {}",
                    source.face_name(f),
                    target.face_name(g)
                ))
            })?;
            fmap.push(im);
        }
        CombMap::new(source, target, vmap, dmap, fmap)
    }

    pub fn identity(c: &Complex2) -> CombMap {
        let c = Arc::new(c.clone());
        CombMap::identity_arc(&c)
    }

    pub fn identity_arc(c: &Arc<Complex2>) -> CombMap {
        CombMap {
            source: c.clone(),
            target: c.clone(),
            vmap: c.vertices().collect(),
            dmap: c.darts().collect(),
            fmap: (0..c.face_count()).map(|f| FaceImage { face: f, rot: 0, flip: false }).collect(),
        }
    }

    /// The inclusion of a subcomplex, whose source keeps the parent's names.
    pub fn inclusion(parent: &Arc<Complex2>, sub: &Subcomplex) -> CombMap {
        let child = sub.to_complex(parent);
        let vmap = child.vertices().map(|v| parent.vertex(child.vertex_name(v)).unwrap()).collect();
        let dmap = child.darts().map(|d| parent.dart(&child.dart_name(d)).unwrap()).collect();
        let fmap = (0..child.face_count())
            .map(|f| FaceImage { face: parent.face_id(child.face_name(f)).unwrap(), rot: 0, flip: false })
            .collect();
        CombMap { source: Arc::new(child), target: parent.clone(), vmap, dmap, fmap }
    }

    /// Checks every map invariant.
    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::default();
        let (s, t) = (&*self.source, &*self.target);
        if self.vmap.len() != s.vertex_count() {
            r.push("vertex map does not cover the source vertices");
        }
        if self.dmap.len() != s.dart_count() {
            r.push("dart map does not cover the source darts");
        }
        if self.fmap.len() != s.face_count() {
            r.push("face map does not cover the source faces");
        }
        if !r.is_valid() {
            return r;
        }
        if self.vmap.iter().any(|&v| v >= t.vertex_count()) || self.dmap.iter().any(|&d| d >= t.dart_count()) {
            r.push("image out of range");
            return r;
        }
        for d in s.darts() {
            let e = self.dmap[d];
            if self.dmap[s.rev(d)] != t.rev(e) {
                r.push(format!("dart map does not commute with rev at {}", s.dart_name(d)));
            }
            if t.src(e) != self.vmap[s.src(d)] || t.dst(e) != self.vmap[s.dst(d)] {
                r.push(format!("dart map does not commute with endpoints at {}", s.dart_name(d)));
            }
        }
        for (f, im) in self.fmap.iter().enumerate() {
            if im.face >= t.face_count() {
                r.push(format!("face {}: image out of range", s.face_name(f)));
                continue;
            }
            let k = s.boundary(f).len();
            if t.boundary(im.face).len() != k {
                r.push(format!(
                    "face {}: boundary length differs from {}",
                    s.face_name(f),
                    t.face_name(im.face)
                ));
                continue;
            }
            if im.rot >= k {
                r.push(format!("face {}: rotation out of range", s.face_name(f)));
                continue;
            }
            for (i, &d) in s.boundary(f).iter().enumerate() {
                if self.dmap[d] != im.image_dart(t, i, k) {
                    r.push(format!(
                        "face {}: boundary does not map dart-by-dart onto {} at position {}",
                        s.face_name(f),
                        t.face_name(im.face),
                        i
                    ));
                    break;
                }
            }
        }
        r
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &CombMap) -> Result<CombMap> {
        if *first.target != *self.source {
            return Err(Error::Mismatch);
        }
        let vmap = first.vmap.iter().map(|&v| self.vmap[v]).collect();
        let dmap = first.dmap.iter().map(|&d| self.dmap[d]).collect();
        let fmap = first
            .fmap
            .iter()
            .enumerate()
            .map(|(f, im)| im.then(&self.fmap[im.face], first.source.boundary(f).len()))
            .collect();
        Ok(CombMap { source: first.source.clone(), target: self.target.clone(), vmap, dmap, fmap })
    }

    /// Source corner `(f, i)` mapped to a target corner.
    pub fn corner_image(&self, f: usize, i: usize) -> (usize, usize) {
        let im = self.fmap[f];
        (im.face, im.corner(i, self.source.boundary(f).len()))
    }

    /// Source side `(f, i)` mapped to a target side.
    pub fn side_image(&self, f: usize, i: usize) -> (usize, usize) {
        let im = self.fmap[f];
        (im.face, im.position(i, self.source.boundary(f).len()))
    }

    /// Injectivity of every induced link map, on nodes and on arcs.
    pub fn is_immersion(&self) -> bool {
        self.immersion_witness().is_none()
    }

    /// A source vertex where the link map fails to be injective.
    pub fn immersion_witness(&self) -> Option<usize> {
        let s = &*self.source;
        let mut darts: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for d in s.darts() {
            if let Some(_) = darts.insert((s.src(d), self.dmap[d]), d) {
                return Some(s.src(d));
            }
        }
        let mut corners: BTreeSet<(usize, (usize, usize))> = BTreeSet::new();
        for f in 0..s.face_count() {
            for (i, &d) in s.boundary(f).iter().enumerate() {
                if !corners.insert((s.src(d), self.corner_image(f, i))) {
                    return Some(s.src(d));
                }
            }
        }
        None
    }

    /// Injectivity on face sides over every edge; vertices are unconstrained.
    pub fn is_near_immersion(&self) -> bool {
        let s = &*self.source;
        let mut sides: BTreeSet<(usize, (usize, usize))> = BTreeSet::new();
        for f in 0..s.face_count() {
            for (i, &d) in s.boundary(f).iter().enumerate() {
                if !sides.insert((d / 2, self.side_image(f, i))) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_zero_surjective(&self) -> bool {
        let hit: BTreeSet<usize> = self.vmap.iter().copied().collect();
        hit.len() == self.target.vertex_count()
    }

    pub fn is_injective(&self) -> bool {
        let distinct = |xs: &mut dyn Iterator<Item = usize>, n: usize| xs.collect::<BTreeSet<_>>().len() == n;
        distinct(&mut self.vmap.iter().copied(), self.vmap.len())
            && distinct(&mut self.dmap.iter().copied(), self.dmap.len())
            && distinct(&mut self.fmap.iter().map(|im| im.face), self.fmap.len())
    }

    pub fn is_surjective(&self) -> bool {
        let t = &*self.target;
        self.is_zero_surjective()
            && self.dmap.iter().copied().collect::<BTreeSet<_>>().len() == t.dart_count()
            && self.fmap.iter().map(|im| im.face).collect::<BTreeSet<_>>().len() == t.face_count()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// The image as a subcomplex of the target.
    pub fn image(&self) -> Subcomplex {
        Subcomplex {
            vertices: self.vmap.iter().copied().collect(),
            edges: self.dmap.iter().map(|d| d / 2).collect(),
            faces: self.fmap.iter().map(|im| im.face).collect(),
        }
    }

    /// Restriction to a subcomplex of the source.
    pub fn restrict(&self, sub: &Subcomplex) -> CombMap {
        self.compose(&CombMap::inclusion(&self.source, sub)).expect("inclusion lands in the source")
    }

    /// Corestriction to a subcomplex of the target containing the image.
    pub fn corestrict(&self, sub: &Subcomplex) -> Result<CombMap> {
        if !self.image().is_subset(sub) {
            return Err(Error::InvalidMap("image is not inside the subcomplex".into()));
        }
        let inc = CombMap::inclusion(&self.target, sub);
        let vinv: BTreeMap<usize, usize> = inc.vmap.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let dinv: BTreeMap<usize, usize> = inc.dmap.iter().enumerate().map(|(i, &d)| (d, i)).collect();
        let finv: BTreeMap<usize, usize> = inc.fmap.iter().enumerate().map(|(i, im)| (im.face, i)).collect();
        Ok(CombMap {
            source: self.source.clone(),
            target: inc.source.clone(),
            vmap: self.vmap.iter().map(|v| vinv[v]).collect(),
            dmap: self.dmap.iter().map(|d| dinv[d]).collect(),
            fmap: self.fmap.iter().map(|im| FaceImage { face: finv[&im.face], ..*im }).collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn path2_to_cyc3() -> CombMap {
        let (p, c) = (fixtures::path(2), fixtures::cycle(3));
        let vmap = (0..3).map(|i| c.vertex(&format!("v{i}")).unwrap()).collect::<Vec<_>>();
        let vmap = (0..3).map(|i| vmap[p.vertex(&format!("p{i}")).unwrap()]).collect::<Vec<_>>();
        let mut dmap = vec![0; 4];
        for i in 0..2 {
            let d = p.dart(&format!("e{i}")).unwrap();
            let e = c.dart(&format!("e{i}")).unwrap();
            dmap[d] = e;
            dmap[d ^ 1] = e ^ 1;
        }
        CombMap::new(p, c, vmap, dmap, vec![]).unwrap()
    }

    fn sphere_to_disk() -> CombMap {
        let (s, d) = (fixtures::sphere2(), fixtures::disk3());
        CombMap::from_cells(s.clone(), d, s.vertices().collect(), s.darts().collect(), &[0, 0]).unwrap()
    }

    #[test]
    fn identity_is_valid() {
        let m = CombMap::identity(&fixtures::disk3());
        assert!(m.validate().is_valid());
        assert!(m.is_immersion() && m.is_near_immersion() && m.is_zero_surjective());
    }

    #[test]
    fn sphere_to_disk_folds() {
        let m = sphere_to_disk();
        assert!(m.validate().is_valid());
        assert!(!m.is_immersion());
        assert!(!m.is_near_immersion());
    }

    #[test]
    fn face_to_z3_requires_matching_darts() {
        let (d, z) = (fixtures::disk3(), fixtures::z3pres());
        // every dart onto a, all vertices onto v
        let a = z.dart("a").unwrap();
        let dmap: Vec<usize> = d.darts().map(|x| if x % 2 == 0 { a } else { a ^ 1 }).collect();
        assert!(CombMap::from_cells(d.clone(), z.clone(), vec![0; 3], dmap, &[0]).is_ok());
        let mut bad: Vec<usize> = d.darts().map(|x| if x % 2 == 0 { a } else { a ^ 1 }).collect();
        bad[d.dart("b").unwrap()] = a ^ 1;
        bad[d.dart("-b").unwrap()] = a;
        let m = CombMap { source: Arc::new(d), target: Arc::new(z), vmap: vec![0; 3], dmap: bad, fmap: vec![FaceImage::default()] };
        assert!(!m.validate().is_valid());
    }

    #[test]
    fn path_maps() {
        let m = path2_to_cyc3();
        assert!(m.is_immersion());
        assert!(m.is_zero_surjective());
        let p = fixtures::path(2);
        let e = fixtures::edge1();
        let a = e.dart("a").unwrap();
        let u = e.vertex("u").unwrap();
        let v = e.vertex("v").unwrap();
        let fold = CombMap::new(p.clone(), e, vec![u, v, u], vec![a, a ^ 1, a ^ 1, a], vec![]).unwrap();
        assert!(!fold.is_immersion());
        assert!(fold.is_near_immersion());
    }

    #[test]
    fn compose_with_identity_and_vertex() {
        let m = path2_to_cyc3();
        let id = CombMap::identity(&m.target);
        assert_eq!(id.compose(&m).unwrap(), m);
        let p = m.source.clone();
        let vert = CombMap::inclusion(&p, &Subcomplex::vertex(0));
        let c = m.compose(&vert).unwrap();
        assert_eq!(c.vmap, vec![m.vmap[0]]);
        assert!(!c.is_zero_surjective());
        assert!(vert.compose(&m).is_err());
    }

    #[test]
    fn flip_composition_matches_darts() {
        let a = fixtures::z3xz3_swap();
        let s = a.element_map(a.group().generators()[0]).clone();
        let ss = s.compose(&s).unwrap();
        assert!(ss.validate().is_valid());
        assert_eq!(ss, CombMap::identity(&s.source));
    }
}
