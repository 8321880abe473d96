//! Property tests for invariants that hold on every input.

mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use towerkit::checkers::dr_core;
use towerkit::io::{to_json, ActionDoc, ComplexDoc, EqMapDoc, MapDoc, TowerDoc};
use towerkit::oracle::Budgets;
use towerkit::tower::{max_f_tower_lift, validate_tower, Mode};
use towerkit::{fixtures, CombMap, Complex2, EqMap, Subcomplex};

fn complex_name() -> impl Strategy<Value = &'static str> {
    prop::sample::select(fixtures::COMPLEX_NAMES.to_vec())
}

/// Map of a cycle graph along a random closed walk.
fn walk_map(y: Complex2, seed: u64, len: usize) -> Option<CombMap> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let walk = common::random_loop(&y, 0, len, &mut rng);
    if walk.is_empty() {
        return None;
    }
    Some(common::cycle_map(y, &walk))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn complex_documents_round_trip(name in complex_name(), subdivide in any::<bool>()) {
        let mut c = fixtures::complex(name).unwrap();
        if subdivide {
            c = c.barycentric_subdivision();
        }
        let doc = ComplexDoc::from_complex(&c);
        let text = to_json(&doc).unwrap();
        let back: ComplexDoc = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.to_complex().unwrap(), c);
    }

    #[test]
    fn map_documents_round_trip(name in complex_name(), seed in any::<u64>(), len in 1usize..8) {
        let y = fixtures::complex(name).unwrap();
        prop_assume!(y.edge_count() > 0);
        if let Some(m) = walk_map(y, seed, len) {
            let text = to_json(&MapDoc::from_map(&m)).unwrap();
            let back: MapDoc = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(back.to_map(&m.source, &m.target).unwrap(), m);
        }
    }

    #[test]
    fn immersions_are_near_immersions(name in complex_name(), seed in any::<u64>(), len in 1usize..10) {
        let y = fixtures::complex(name).unwrap();
        prop_assume!(y.edge_count() > 0);
        if let Some(m) = walk_map(y, seed, len) {
            prop_assert!(m.validate().is_valid());
            prop_assert!(!m.is_immersion() || m.is_near_immersion());
            prop_assert!(!m.is_injective() || m.is_immersion());
        }
    }

    #[test]
    fn composition_is_associative(n in 3usize..8, a in 0usize..8, b in 0usize..8, c in 0usize..8) {
        let (f, g, h) = (fixtures::wheel_rotation(n, a % n), fixtures::wheel_rotation(n, b % n), fixtures::wheel_rotation(n, c % n));
        let left = h.compose(&g).unwrap().compose(&f).unwrap();
        let right = h.compose(&g.compose(&f).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(&left, &fixtures::wheel_rotation(n, (a + b + c) % n));
        let id = CombMap::identity(&fixtures::wheel(n));
        prop_assert_eq!(&id.compose(&f).unwrap(), &f);
        prop_assert_eq!(&f.compose(&id).unwrap(), &f);
        prop_assert!(left.is_immersion() && left.is_isomorphism());
    }

    #[test]
    fn composites_through_covers_stay_immersed(name in prop::sample::select(vec!["z3pres", "z3xz3", "sphere2"]), seed in any::<u64>(), len in 1usize..8) {
        let base = fixtures::complex(name).unwrap();
        let u = towerkit::cover::universal_cover_finite(&base, &Budgets::default()).unwrap();
        if let Some(f) = walk_map((*u.cover).clone(), seed, len) {
            let f = CombMap::new(f.source.clone(), u.cover.clone(), f.vmap, f.dmap, f.fmap).unwrap();
            let h = u.projection.compose(&f).unwrap();
            prop_assert!(u.projection.is_immersion());
            prop_assert_eq!(f.is_immersion(), h.is_immersion());
        }
    }

    #[test]
    fn dr_core_is_confluent_on_subcomplexes(name in prop::sample::select(vec!["wheel6", "wheel4", "z3xz3", "sphere2", "wheel3"]), mask in any::<u8>()) {
        let c = fixtures::complex(name).unwrap();
        let faces: BTreeSet<usize> = (0..c.face_count()).filter(|f| mask >> f & 1 == 1).collect();
        let z = Subcomplex { faces, ..Subcomplex::default() }.closure(&c);
        let sub = z.to_complex(&c);
        let ends = common::dr_terminals(&sub);
        prop_assert_eq!(ends.len(), 1);
        let names: BTreeSet<String> = ends.into_iter().next().unwrap().into_iter().map(|f| sub.face_name(f).to_string()).collect();
        let core: BTreeSet<String> = dr_core(&c, Some(&z)).core.faces.into_iter().map(|f| c.face_name(f).to_string()).collect();
        prop_assert_eq!(names, core);
    }

    #[test]
    fn equivariant_collapse_reaches_the_core(name in prop::sample::select(fixtures::ACTION_NAMES.to_vec()), picks in prop::collection::vec(any::<usize>(), 16)) {
        let fixtures::Fixture::Action(a) = fixtures::by_name(name).unwrap() else { unreachable!() };
        prop_assume!(a.is_without_inversions());
        let c = a.space();
        let mut i = 0;
        let out = a.equivariant_collapse_with(&Subcomplex::whole(c), |orbits| {
            i += 1;
            picks[i % picks.len()] % orbits.len()
        }).unwrap();
        prop_assert_eq!(out.faces, dr_core(c, None).core.faces);
    }
}

#[test]
fn documents_of_actions_and_towers_round_trip() {
    for name in fixtures::ACTION_NAMES {
        let fixtures::Fixture::Action(a) = fixtures::by_name(name).unwrap() else { unreachable!() };
        let doc = ActionDoc::from_action(&a);
        let back: ActionDoc = serde_json::from_str(&to_json(&doc).unwrap()).unwrap();
        let b = back.to_action(a.space()).unwrap();
        assert_eq!(b.group().order(), a.group().order());
        for g in a.group().elements() {
            let h = b.group().index_of(a.group().name(g)).unwrap();
            assert_eq!(b.element_map(h), a.element_map(g));
        }
    }
    let m = EqMap::infer(
        fixtures::wheel_wrap(6, 3),
        Arc::new(fixtures::wheel_action(6, 2)),
        Arc::new(fixtures::wheel_action(3, 1)),
    )
    .unwrap();
    let doc = EqMapDoc::from_eq_map(&m);
    let back: EqMapDoc = serde_json::from_str(&to_json(&doc).unwrap()).unwrap();
    assert_eq!(back.to_eq_map().unwrap().map, m.map);
    let l = max_f_tower_lift(&EqMap::plain(fixtures::path_wrap(2, 3)), &Budgets::default()).unwrap();
    let doc = TowerDoc::new(Mode::FTower, &l);
    let back: TowerDoc = serde_json::from_str(&to_json(&doc).unwrap()).unwrap();
    let (_, cert) = back.to_cert().unwrap();
    assert_eq!(cert.composite.map, l.cert.composite.map);
    assert!(validate_tower(&cert).is_valid());
}
