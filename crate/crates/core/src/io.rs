//! JSON documents for complexes, maps, actions and certificates.
//!
//! Cells are referred to by name. A dart reference `x` is edge `x` read
//! forwards and `-x` read backwards. Wherever a complex or action is
//! expected, a fixture name may stand in for the document.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::actions::{EqMap, FinAction};
use crate::complex::Complex2;
use crate::error::{Error, Result};
use crate::fixtures::{self, Fixture};
use crate::group::FinGroup;
use crate::maps::{CombMap, FaceImage};
use crate::simplicial::SimpComplex;
use crate::tower::{Complexity, Mode, StepKind, TowerCert, TowerLift};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDoc {
    pub id: String,
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceDoc {
    pub id: String,
    pub boundary: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDoc {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<EdgeDoc>,
    #[serde(default)]
    pub faces: Vec<FaceDoc>,
}

impl ComplexDoc {
    pub fn from_complex(c: &Complex2) -> ComplexDoc {
        ComplexDoc {
            vertices: c.vertices().map(|v| c.vertex_name(v).to_string()).collect(),
            edges: (0..c.edge_count())
                .map(|e| EdgeDoc {
                    id: c.edge_name(e).to_string(),
                    from: c.vertex_name(c.src(2 * e)).to_string(),
                    to: c.vertex_name(c.dst(2 * e)).to_string(),
                })
                .collect(),
            faces: (0..c.face_count())
                .map(|f| FaceDoc {
                    id: c.face_name(f).to_string(),
                    boundary: c.boundary(f).iter().map(|&d| c.dart_name(d)).collect(),
                })
                .collect(),
        }
    }

    pub fn to_complex(&self) -> Result<Complex2> {
        let mut b = Complex2::builder();
        for v in &self.vertices {
            b.vertex(v.clone());
        }
        for e in &self.edges {
            b.edge(e.id.clone(), e.from.clone(), e.to.clone());
        }
        for f in &self.faces {
            b.face(f.id.clone(), f.boundary.clone());
        }
        b.build()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpDoc {
    pub vertices: Vec<String>,
    pub simplices: Vec<Vec<String>>,
}

impl SimpDoc {
    /// Maximal simplices only; loading restores the downward closure.
    pub fn from_simp(s: &SimpComplex) -> SimpDoc {
        let all = s.simplices();
        let maximal = all.iter().filter(|x| !all.iter().any(|y| y.len() > x.len() && x.iter().all(|v| y.contains(v))));
        SimpDoc {
            vertices: (0..s.vertex_count()).map(|v| s.vertex_name(v).to_string()).collect(),
            simplices: maximal.map(|x| x.iter().map(|&v| s.vertex_name(v).to_string()).collect()).collect(),
        }
    }

    pub fn to_simp(&self) -> Result<SimpComplex> {
        SimpComplex::new(&self.vertices, &self.simplices)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceImageDoc {
    pub image: String,
    /// Derived from the edge map when both `rot` and `flip` are absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rot: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flip: Option<bool>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapDoc {
    pub vertex_map: BTreeMap<String, String>,
    #[serde(default)]
    pub edge_map: BTreeMap<String, String>,
    #[serde(default)]
    pub face_map: BTreeMap<String, FaceImageDoc>,
}

fn lookup<T>(x: Option<T>, what: &str, name: &str) -> Result<T> {
    x.ok_or_else(|| Error::UnknownCell(format!("{what} {name}")))
}

impl MapDoc {
    pub fn from_map(m: &CombMap) -> MapDoc {
        let (s, t) = (&*m.source, &*m.target);
        MapDoc {
            vertex_map: s.vertices().map(|v| (s.vertex_name(v).to_string(), t.vertex_name(m.vmap[v]).to_string())).collect(),
            edge_map: (0..s.edge_count()).map(|e| (s.edge_name(e).to_string(), t.dart_name(m.dmap[2 * e]))).collect(),
            face_map: (0..s.face_count())
                .map(|f| {
                    let im = m.fmap[f];
                    let doc = FaceImageDoc { image: t.face_name(im.face).to_string(), rot: Some(im.rot), flip: Some(im.flip) };
                    (s.face_name(f).to_string(), doc)
                })
                .collect(),
        }
    }

    pub fn to_map(&self, source: &Arc<Complex2>, target: &Arc<Complex2>) -> Result<CombMap> {
        let (s, t) = (&**source, &**target);
        let mut vmap = Vec::with_capacity(s.vertex_count());
        for v in s.vertices() {
            let name = s.vertex_name(v);
            let img = lookup(self.vertex_map.get(name), "unmapped vertex", name)?;
            vmap.push(t.vertex(img)?);
        }
        let mut dmap = vec![0; s.dart_count()];
        for e in 0..s.edge_count() {
            let name = s.edge_name(e);
            let d = t.dart(lookup(self.edge_map.get(name), "unmapped edge", name)?)?;
            dmap[2 * e] = d;
            dmap[2 * e + 1] = d ^ 1;
        }
        let mut fmap = Vec::with_capacity(s.face_count());
        for f in 0..s.face_count() {
            let name = s.face_name(f);
            let doc = lookup(self.face_map.get(name), "unmapped face", name)?;
            let g = t.face_id(&doc.image)?;
            let im = match (doc.rot, doc.flip) {
                (None, None) => FaceImage::derive(s, f, t, g, &dmap)
                    .ok_or_else(|| Error::InvalidMap(format!("face {name} does not map onto {}", doc.image)))?,
                (rot, flip) => FaceImage { face: g, rot: rot.unwrap_or(0), flip: flip.unwrap_or(false) },
            };
            fmap.push(im);
        }
        for key in self.vertex_map.keys() {
            s.vertex(key)?;
        }
        CombMap::new(source.clone(), target.clone(), vmap, dmap, fmap)
    }
}

/// A complex given inline or by fixture name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpaceRef {
    Fixture(String),
    Inline(ComplexDoc),
}

impl SpaceRef {
    pub fn resolve(&self) -> Result<Complex2> {
        match self {
            SpaceRef::Fixture(n) => fixtures::complex(n),
            SpaceRef::Inline(d) => d.to_complex(),
        }
    }
}

/// A group action: the full table with one map per element, or just the
/// generating automorphisms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ActionDoc {
    Table {
        elements: Vec<String>,
        generators: Vec<String>,
        /// `table[a][b]` is the index of `ab`.
        table: Vec<Vec<usize>>,
        maps: Vec<MapDoc>,
    },
    Generators {
        generators: BTreeMap<String, MapDoc>,
    },
}

impl ActionDoc {
    pub fn from_action(a: &FinAction) -> ActionDoc {
        let g = a.group();
        ActionDoc::Table {
            elements: g.names().to_vec(),
            generators: g.generators().iter().map(|&x| g.name(x).to_string()).collect(),
            table: g.elements().map(|x| g.elements().map(|y| g.mul(x, y)).collect()).collect(),
            maps: g.elements().map(|x| MapDoc::from_map(a.element_map(x))).collect(),
        }
    }

    pub fn to_action(&self, space: &Arc<Complex2>) -> Result<FinAction> {
        match self {
            ActionDoc::Table { elements, generators, table, maps } => {
                let group = FinGroup::from_table(elements.clone(), table.clone())?;
                let gens = generators
                    .iter()
                    .map(|n| group.index_of(n).ok_or_else(|| Error::InvalidGroup(format!("unknown generator {n}"))))
                    .collect::<Result<Vec<_>>>()?;
                let group = group.with_generators(gens)?;
                if maps.len() != elements.len() {
                    return Err(Error::InvalidAction("one map per element is required".into()));
                }
                let maps = maps.iter().map(|m| m.to_map(space, space)).collect::<Result<Vec<_>>>()?;
                FinAction::new(group, space.clone(), maps)
            }
            ActionDoc::Generators { generators } => {
                let gens = generators
                    .iter()
                    .map(|(n, m)| Ok((n.as_str(), m.to_map(space, space)?)))
                    .collect::<Result<Vec<_>>>()?;
                FinAction::from_generators(space.clone(), &gens)
            }
        }
    }
}

/// An action given inline or by fixture name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ActionRef {
    Fixture(String),
    Inline(ActionDoc),
}

impl ActionRef {
    /// The action on `space`, or on the fixture's own space when `space` is
    /// absent.
    pub fn resolve(&self, space: Option<&Arc<Complex2>>) -> Result<FinAction> {
        match (self, space) {
            (ActionRef::Fixture(n), s) => {
                let Fixture::Action(a) = fixtures::by_name(n)? else {
                    return Err(Error::UnknownFixture(format!("{n} is not an action")));
                };
                if s.map_or(false, |s| **s != **a.space()) {
                    return Err(Error::InvalidAction(format!("fixture {n} acts on a different complex")));
                }
                Ok(a)
            }
            (ActionRef::Inline(d), Some(s)) => d.to_action(s),
            (ActionRef::Inline(_), None) => Err(Error::InvalidInput("inline action without a space".into())),
        }
    }
}

/// An equivariant map. Missing actions are trivial; a missing `fsharp` is
/// inferred from the generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EqMapDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<SpaceRef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<SpaceRef>,
    #[serde(flatten)]
    pub map: MapDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source_action: Option<ActionRef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_action: Option<ActionRef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fsharp: Option<BTreeMap<String, String>>,
}

fn side(space: &Option<SpaceRef>, action: &Option<ActionRef>, which: &str) -> Result<Arc<FinAction>> {
    let space = space.as_ref().map(|s| s.resolve().map(Arc::new)).transpose()?;
    let a = match (action, space) {
        (Some(a), s) => a.resolve(s.as_ref())?,
        (None, Some(s)) => FinAction::trivial(s),
        (None, None) => return Err(Error::InvalidInput(format!("map has no {which} complex"))),
    };
    Ok(Arc::new(a))
}

impl EqMapDoc {
    pub fn from_eq_map(m: &EqMap) -> EqMapDoc {
        let (sg, tg) = (m.source.group(), m.target.group());
        EqMapDoc {
            source: Some(SpaceRef::Inline(ComplexDoc::from_complex(&m.map.source))),
            target: Some(SpaceRef::Inline(ComplexDoc::from_complex(&m.map.target))),
            map: MapDoc::from_map(&m.map),
            source_action: Some(ActionRef::Inline(ActionDoc::from_action(&m.source))),
            target_action: Some(ActionRef::Inline(ActionDoc::from_action(&m.target))),
            fsharp: Some(sg.elements().map(|g| (sg.name(g).to_string(), tg.name(m.fsharp[g]).to_string())).collect()),
        }
    }

    pub fn to_eq_map(&self) -> Result<EqMap> {
        let sa = side(&self.source, &self.source_action, "source")?;
        let ta = side(&self.target, &self.target_action, "target")?;
        let map = self.map.to_map(sa.space(), ta.space())?;
        let Some(fs) = &self.fsharp else {
            return EqMap::infer(map, sa, ta);
        };
        let (sg, tg) = (sa.group(), ta.group());
        let image = |n: &str| -> Result<usize> {
            let t = lookup(fs.get(n), "fsharp has no image for", n)?;
            tg.index_of(t).ok_or_else(|| Error::InvalidGroup(format!("unknown element {t}")))
        };
        let on_gens = sg.generators().iter().map(|&g| image(sg.name(g))).collect::<Result<Vec<_>>>()?;
        let fsharp = sg.extend_hom(tg, &on_gens)?;
        for (n, _) in fs {
            let g = sg.index_of(n).ok_or_else(|| Error::InvalidGroup(format!("unknown element {n}")))?;
            if fsharp[g] != image(n)? {
                return Err(Error::InvalidMap(format!("fsharp is not a homomorphism at {n}")));
            }
        }
        EqMap::new(map, sa, ta, fsharp)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StepDoc {
    pub kind: String,
    pub universal: bool,
    pub complete: bool,
    pub map: EqMapDoc,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TowerDoc {
    pub mode: String,
    pub length: usize,
    pub complexities: Vec<(usize, usize)>,
    pub steps: Vec<StepDoc>,
    pub composite: EqMapDoc,
    pub lift: EqMapDoc,
}

fn kind_name(k: StepKind) -> &'static str {
    match k {
        StepKind::Inclusion => "inclusion",
        StepKind::FullInclusion => "full-inclusion",
        StepKind::Cover => "cover",
    }
}

impl TowerDoc {
    pub fn new(mode: Mode, r: &TowerLift) -> TowerDoc {
        TowerDoc {
            mode: match mode {
                Mode::Tower => "tower".into(),
                Mode::FTower => "f-tower".into(),
            },
            length: r.cert.length(),
            complexities: r.cert.complexities.iter().map(|c| (c.gap, c.edges)).collect(),
            steps: r
                .cert
                .steps
                .iter()
                .map(|s| StepDoc {
                    kind: kind_name(s.kind).into(),
                    universal: s.universal,
                    complete: s.complete,
                    map: EqMapDoc::from_eq_map(&s.map),
                })
                .collect(),
            composite: EqMapDoc::from_eq_map(&r.cert.composite),
            lift: EqMapDoc::from_eq_map(&r.lift),
        }
    }

    /// Rebuilds the certificate for independent validation.
    pub fn to_cert(&self) -> Result<(EqMap, TowerCert)> {
        let mut steps = Vec::with_capacity(self.steps.len());
        for s in &self.steps {
            let kind = match s.kind.as_str() {
                "inclusion" => StepKind::Inclusion,
                "full-inclusion" => StepKind::FullInclusion,
                "cover" => StepKind::Cover,
                k => return Err(Error::InvalidInput(format!("unknown step kind {k}"))),
            };
            steps.push(crate::tower::TowerStep { kind, map: s.map.to_eq_map()?, universal: s.universal, complete: s.complete });
        }
        let cert = TowerCert {
            steps,
            composite: self.composite.to_eq_map()?,
            complexities: self.complexities.iter().map(|&(gap, edges)| Complexity { gap, edges }).collect(),
        };
        Ok((self.lift.to_eq_map()?, cert))
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_round_trip() {
        for name in fixtures::COMPLEX_NAMES {
            let c = fixtures::complex(name).unwrap();
            let doc = ComplexDoc::from_complex(&c);
            let text = to_json(&doc).unwrap();
            let back: ComplexDoc = serde_json::from_str(&text).unwrap();
            assert_eq!(back.to_complex().unwrap(), c, "{name}");
        }
    }

    #[test]
    fn simplicial_round_trip() {
        for name in fixtures::SIMPLICIAL_NAMES {
            let Fixture::Simplicial(s) = fixtures::by_name(name).unwrap() else { panic!() };
            assert_eq!(SimpDoc::from_simp(&s).to_simp().unwrap(), s, "{name}");
        }
    }

    #[test]
    fn action_round_trip() {
        for name in fixtures::ACTION_NAMES {
            let Fixture::Action(a) = fixtures::by_name(name).unwrap() else { panic!() };
            let doc = ActionDoc::from_action(&a);
            let back: ActionDoc = serde_json::from_str(&to_json(&doc).unwrap()).unwrap();
            assert_eq!(back.to_action(a.space()).unwrap(), a, "{name}");
        }
    }

    #[test]
    fn eq_map_documents() {
        let m = EqMap::infer(
            fixtures::wheel_wrap(6, 3),
            Arc::new(fixtures::wheel_action(6, 2)),
            Arc::new(fixtures::wheel_action(3, 1)),
        )
        .unwrap();
        let doc = EqMapDoc::from_eq_map(&m);
        let back: EqMapDoc = serde_json::from_str(&to_json(&doc).unwrap()).unwrap();
        assert_eq!(back.to_eq_map().unwrap(), m);

        let short = r#"{"source": "path2", "target": "cyc3",
            "vertex_map": {"p0": "v0", "p1": "v1", "p2": "v2"},
            "edge_map": {"e0": "e0", "e1": "e1"}}"#;
        let m: EqMapDoc = serde_json::from_str(short).unwrap();
        assert_eq!(m.to_eq_map().unwrap(), EqMap::plain(fixtures::path_wrap(2, 3)));

        let bad = r#"{"source": "path2", "target": "cyc3", "vertex_map": {"p0": "v0"}}"#;
        let m: EqMapDoc = serde_json::from_str(bad).unwrap();
        assert!(matches!(m.to_eq_map(), Err(Error::UnknownCell(_))));
    }

    #[test]
    fn derived_face_images() {
        let doc = r#"{"source": "wheel3", "target": "wheel3",
            "vertex_map": {"z": "z", "r0": "r1", "r1": "r2", "r2": "r0"},
            "edge_map": {"e0": "e1", "e1": "e2", "e2": "e0", "s0": "s1", "s1": "s2", "s2": "s0"},
            "face_map": {"t0": {"image": "t1"}, "t1": {"image": "t2"}, "t2": {"image": "t0"}}}"#;
        let m: EqMapDoc = serde_json::from_str(doc).unwrap();
        assert!(m.to_eq_map().unwrap().map.is_isomorphism());
    }
}
