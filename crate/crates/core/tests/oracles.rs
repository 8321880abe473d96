//! The reference computations agree with hand-known answers.

mod common;

use towerkit::fixtures;

#[test]
fn coset_index_of_known_groups() {
    assert_eq!(common::pi1_order(&fixtures::z3pres()), Some(3));
    assert_eq!(common::pi1_order(&fixtures::z3xz3()), Some(9));
    assert_eq!(common::pi1_order(&fixtures::sphere2()), Some(1));
    assert_eq!(common::pi1_order(&fixtures::wheel(6)), Some(1));
    assert_eq!(common::pi1_order(&fixtures::torus1()), None);
    assert_eq!(common::pi1_order(&fixtures::cycle(3)), None);
    // <b> in Z/3 x Z/3 has index 3
    let p = common::Pres::new(&fixtures::z3xz3(), 0);
    assert_eq!(common::coset_index(2, &p.relators, &[vec![2]], 100), Some(3));
    // S3 = <a, b | a^2, b^2, (ab)^3>
    let rels = vec![vec![0, 0], vec![2, 2], vec![0, 2, 0, 2, 0, 2]];
    assert_eq!(common::coset_index(2, &rels, &[], 100), Some(6));
    assert_eq!(common::coset_index(2, &rels, &[vec![0]], 100), Some(3));
}

#[test]
fn algebraic_area_of_wheel_loops() {
    let w = fixtures::wheel(6);
    let rim: Vec<usize> = (0..6).map(|i| w.dart(&format!("e{i}")).unwrap()).collect();
    assert_eq!(common::algebraic_area(&w, &rim), Some(6));
    let twice: Vec<usize> = rim.iter().chain(&rim).copied().collect();
    assert_eq!(common::algebraic_area(&w, &twice), Some(12));
    assert_eq!(common::brute_dehn(&fixtures::disk3(), 3), vec![0, 0, 0, 1]);
}

#[test]
fn deletion_orders_of_small_complexes() {
    assert_eq!(common::dr_terminals(&fixtures::wheel(4)).len(), 1);
    let ends = common::dr_terminals(&fixtures::sphere2());
    assert_eq!(ends.into_iter().next().unwrap().len(), 2);
    assert!(common::dr_terminals(&fixtures::disk3()).into_iter().next().unwrap().is_empty());
}

#[test]
fn ground_truth_classes() {
    let t = fixtures::torus1();
    let (a, b) = (t.dart("a").unwrap(), t.dart("b").unwrap());
    let comm = [a, b, a ^ 1, b ^ 1];
    assert_eq!(common::class(common::KnownGroup::Z2(0, 1), &comm), vec![0, 0]);
    assert_eq!(common::class(common::KnownGroup::Z2(0, 1), &[a, a, b]), vec![2, 1]);
    let c = fixtures::cycle(4);
    let around: Vec<usize> = (0..4).map(|i| c.dart(&format!("e{i}")).unwrap()).collect();
    assert_eq!(common::class(common::KnownGroup::Winding(4), &around), vec![1]);
}
