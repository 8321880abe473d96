//! The canonical fixture catalog.
//!
//! Names are case-insensitive in [`by_name`]. Complexes use fixed ids so
//! that examples and certificates can refer to cells directly.

use crate::actions::FinAction;
use crate::complex::Complex2;
use crate::error::{Error, Result};
use crate::group::FinGroup;
use crate::maps::CombMap;
use crate::simplicial::SimpComplex;

fn s(x: &str) -> String {
    x.to_string()
}

fn word(ds: &[&str]) -> Vec<String> {
    ds.iter().map(|d| d.to_string()).collect()
}

pub fn point() -> Complex2 {
    Complex2::builder().vertex("v").build().unwrap()
}

/// Triangle v0 v1 v2 with darts a, b, c and one face [a,b,c].
pub fn disk3() -> Complex2 {
    let mut b = Complex2::builder();
    b.vertex("v0").vertex("v1").vertex("v2");
    b.edge("a", "v0", "v1").edge("b", "v1", "v2").edge("c", "v2", "v0");
    b.face("f", word(&["a", "b", "c"]));
    b.build().unwrap()
}

/// The triangle with two faces glued along it.
pub fn sphere2() -> Complex2 {
    let mut b = Complex2::builder();
    b.vertex("v0").vertex("v1").vertex("v2");
    b.edge("a", "v0", "v1").edge("b", "v1", "v2").edge("c", "v2", "v0");
    b.face("f1", word(&["a", "b", "c"]));
    b.face("f2", word(&["a", "b", "c"]));
    b.build().unwrap()
}

pub fn torus1() -> Complex2 {
    let mut b = Complex2::builder();
    b.vertex("v").edge("a", "v", "v").edge("b", "v", "v");
    b.face("f", word(&["a", "b", "-a", "-b"]));
    b.build().unwrap()
}

pub fn z3pres() -> Complex2 {
    let mut b = Complex2::builder();
    b.vertex("v").edge("a", "v", "v");
    b.face("f", word(&["a", "a", "a"]));
    b.build().unwrap()
}

/// Presentation complex of Z/3 x Z/3.
pub fn z3xz3() -> Complex2 {
    let mut b = Complex2::builder();
    b.vertex("v").edge("a", "v", "v").edge("b", "v", "v");
    b.face("fa", word(&["a", "a", "a"]));
    b.face("fb", word(&["b", "b", "b"]));
    b.face("fc", word(&["a", "b", "-a", "-b"]));
    b.build().unwrap()
}

/// Cycle graph v0 .. v(n-1) with edges e_i: v_i -> v_(i+1).
pub fn cycle(n: usize) -> Complex2 {
    assert!(n >= 1);
    let mut b = Complex2::builder();
    for i in 0..n {
        b.vertex(format!("v{i}"));
    }
    for i in 0..n {
        b.edge(format!("e{i}"), format!("v{i}"), format!("v{}", (i + 1) % n));
    }
    b.build().unwrap()
}

/// Path graph p0 .. pn with edges e_i: p_i -> p_(i+1).
pub fn path(n: usize) -> Complex2 {
    let mut b = Complex2::builder();
    for i in 0..=n {
        b.vertex(format!("p{i}"));
    }
    for i in 0..n {
        b.edge(format!("e{i}"), format!("p{i}"), format!("p{}", i + 1));
    }
    b.build().unwrap()
}

/// A single edge `a` from `u` to `v`.
pub fn edge1() -> Complex2 {
    let mut b = Complex2::builder();
    b.vertex("u").vertex("v").edge("a", "u", "v");
    b.build().unwrap()
}

/// Two vertices joined by three parallel edges.
pub fn theta() -> Complex2 {
    let mut b = Complex2::builder();
    b.vertex("u").vertex("v");
    b.edge("a", "u", "v").edge("b", "u", "v").edge("c", "u", "v");
    b.build().unwrap()
}

/// Rim r0 .. r(n-1), center z, rim edges e_i, spokes s_i: z -> r_i and
/// triangles t_i = [s_i, e_i, -s_(i+1)].
pub fn wheel(n: usize) -> Complex2 {
    assert!(n >= 3);
    let mut b = Complex2::builder();
    b.vertex("z");
    for i in 0..n {
        b.vertex(format!("r{i}"));
    }
    for i in 0..n {
        let j = (i + 1) % n;
        b.edge(format!("e{i}"), format!("r{i}"), format!("r{j}"));
        b.edge(format!("s{i}"), "z", format!("r{i}"));
    }
    for i in 0..n {
        let j = (i + 1) % n;
        b.face(format!("t{i}"), vec![format!("s{i}"), format!("e{i}"), format!("-s{j}")]);
    }
    b.build().unwrap()
}

pub fn oct() -> SimpComplex {
    let v = ["n", "s", "x0", "x1", "x2", "x3"];
    let mut tri = Vec::new();
    for pole in ["n", "s"] {
        for i in 0..4 {
            tri.push(vec![s(pole), format!("x{i}"), format!("x{}", (i + 1) % 4)]);
        }
    }
    SimpComplex::new(&v, &tri).unwrap()
}

pub fn simp_cycle(n: usize) -> SimpComplex {
    let v: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
    let e: Vec<Vec<String>> =
        (0..n).map(|i| vec![v[i].clone(), v[(i + 1) % n].clone()]).collect();
    SimpComplex::new(&v, &e).unwrap()
}

pub fn five_cycle() -> SimpComplex {
    simp_cycle(5)
}

pub fn six_cycle() -> SimpComplex {
    simp_cycle(6)
}

/// Boundary of the tetrahedron: four triangles, no 3-simplex.
pub fn tetra_boundary() -> SimpComplex {
    let v = ["a", "b", "c", "d"];
    let tri = vec![
        word(&["a", "b", "c"]),
        word(&["a", "b", "d"]),
        word(&["a", "c", "d"]),
        word(&["b", "c", "d"]),
    ];
    SimpComplex::new(&v, &tri).unwrap()
}

pub fn wheel_simp(n: usize) -> SimpComplex {
    SimpComplex::from_complex(&wheel(n)).unwrap()
}

/// Rotation of the rim of `wheel(n)` by `k` steps.
pub fn wheel_rotation(n: usize, k: usize) -> CombMap {
    let w = wheel(n);
    let mut vmap = vec![0; w.vertex_count()];
    let mut dmap = vec![0; w.dart_count()];
    let z = w.vertex("z").unwrap();
    vmap[z] = z;
    for i in 0..n {
        let j = (i + k) % n;
        vmap[w.vertex(&format!("r{i}")).unwrap()] = w.vertex(&format!("r{j}")).unwrap();
        for p in ["e", "s"] {
            let from = w.dart(&format!("{p}{i}")).unwrap();
            let to = w.dart(&format!("{p}{j}")).unwrap();
            dmap[from] = to;
            dmap[from ^ 1] = to ^ 1;
        }
    }
    let fmap = (0..n)
        .map(|i| {
            let f = w.face_id(&format!("t{i}")).unwrap();
            let g = w.face_id(&format!("t{}", (i + k) % n)).unwrap();
            (f, crate::maps::FaceImage { face: g, rot: 0, flip: false })
        })
        .collect::<std::collections::BTreeMap<_, _>>();
    let fmap = (0..w.face_count()).map(|f| fmap[&f]).collect();
    CombMap::new(w.clone(), w, vmap, dmap, fmap).expect("rotation is a valid map")
}

/// `wheel(n) -> wheel(m)` wrapping the rim `n / m` times.
pub fn wheel_wrap(n: usize, m: usize) -> CombMap {
    assert!(n % m == 0);
    let (a, b) = (wheel(n), wheel(m));
    let mut vmap = vec![0; a.vertex_count()];
    let mut dmap = vec![0; a.dart_count()];
    vmap[a.vertex("z").unwrap()] = b.vertex("z").unwrap();
    let mut faces = vec![0; a.face_count()];
    for i in 0..n {
        let j = i % m;
        vmap[a.vertex(&format!("r{i}")).unwrap()] = b.vertex(&format!("r{j}")).unwrap();
        for p in ["e", "s"] {
            let from = a.dart(&format!("{p}{i}")).unwrap();
            let to = b.dart(&format!("{p}{j}")).unwrap();
            dmap[from] = to;
            dmap[from ^ 1] = to ^ 1;
        }
        faces[a.face_id(&format!("t{i}")).unwrap()] = b.face_id(&format!("t{j}")).unwrap();
    }
    CombMap::from_cells(a, b, vmap, dmap, &faces).expect("wrap is a valid map")
}

/// `path(n) -> cycle(m)` winding `p_i` to `v_(i mod m)`.
pub fn path_wrap(n: usize, m: usize) -> CombMap {
    let (a, b) = (path(n), cycle(m));
    let vmap = (0..=n).map(|i| b.vertex(&format!("v{}", i % m)).unwrap()).collect::<Vec<_>>();
    let mut dmap = vec![0; a.dart_count()];
    for i in 0..n {
        let from = a.dart(&format!("e{i}")).unwrap();
        let to = b.dart(&format!("e{}", i % m)).unwrap();
        dmap[from] = to;
        dmap[from ^ 1] = to ^ 1;
    }
    let vmap = a.vertices().map(|v| vmap[a.vertex_name(v)[1..].parse::<usize>().unwrap()]).collect();
    CombMap::from_cells(a, b, vmap, dmap, &[]).expect("winding is a valid map")
}

/// `Z/(n/step)` acting on `wheel(n)` by rotating `step` positions.
pub fn wheel_action(n: usize, step: usize) -> FinAction {
    assert!(n % step == 0);
    FinAction::from_generators(wheel(n), &[("r", wheel_rotation(n, step))]).unwrap()
}

/// Z/2 swapping the two faces of Sphere2 and fixing its 1-skeleton.
pub fn sphere2_swap() -> FinAction {
    let c = sphere2();
    let mut m = CombMap::identity(&c);
    let (f1, f2) = (c.face_id("f1").unwrap(), c.face_id("f2").unwrap());
    m.fmap[f1].face = f2;
    m.fmap[f2].face = f1;
    FinAction::from_generators(c, &[("t", m)]).unwrap()
}

/// Z/2 on Cyc2 exchanging the two vertices and inverting both edges.
pub fn cyc2_flip() -> FinAction {
    let c = cycle(2);
    let (v0, v1) = (c.vertex("v0").unwrap(), c.vertex("v1").unwrap());
    let (e0, e1) = (c.dart("e0").unwrap(), c.dart("e1").unwrap());
    let mut vmap = vec![0; 2];
    vmap[v0] = v1;
    vmap[v1] = v0;
    let mut dmap = vec![0; 4];
    dmap[e0] = e0 ^ 1;
    dmap[e0 ^ 1] = e0;
    dmap[e1] = e1 ^ 1;
    dmap[e1 ^ 1] = e1;
    let m = CombMap::new(c.clone(), c.clone(), vmap, dmap, vec![]).unwrap();
    FinAction::from_generators(c, &[("t", m)]).unwrap()
}

/// Z/3 x Z/3 presentation complex with the swap a <-> b.
pub fn z3xz3_swap() -> FinAction {
    let c = z3xz3();
    let (a, b) = (c.dart("a").unwrap(), c.dart("b").unwrap());
    let mut dmap = vec![0; 4];
    dmap[a] = b;
    dmap[a ^ 1] = b ^ 1;
    dmap[b] = a;
    dmap[b ^ 1] = a ^ 1;
    let (fa, fb, fc) = (c.face_id("fa").unwrap(), c.face_id("fb").unwrap(), c.face_id("fc").unwrap());
    let mut fmap = vec![crate::maps::FaceImage::default(); 3];
    fmap[fa] = crate::maps::FaceImage { face: fb, rot: 0, flip: false };
    fmap[fb] = crate::maps::FaceImage { face: fa, rot: 0, flip: false };
    // [a,b,-a,-b] -> [b,a,-b,-a], the flipped reading of fc from position 0
    fmap[fc] = crate::maps::FaceImage::derive(&c, fc, &c, fc, &dmap).expect("swap maps fc onto itself");
    let m = CombMap::new(c.clone(), c.clone(), vec![0], dmap, fmap).unwrap();
    FinAction::from_generators(c, &[("s", m)]).unwrap()
}

pub fn trivial_action(c: Complex2) -> FinAction {
    FinAction::new(FinGroup::trivial(), c.clone(), vec![CombMap::identity(&c)]).unwrap()
}

/// A catalog entry.
#[derive(Clone, Debug)]
pub enum Fixture {
    Complex(Complex2),
    Simplicial(SimpComplex),
    Action(FinAction),
}

pub const COMPLEX_NAMES: &[&str] = &[
    "point", "disk3", "sphere2", "torus1", "z3pres", "z3xz3", "cyc2", "cyc3", "cyc4", "cyc5", "cyc6",
    "path1", "path2", "path3", "edge1", "theta", "wheel3", "wheel4", "wheel6", "wheel7",
];

pub const SIMPLICIAL_NAMES: &[&str] = &["oct", "fivecycle", "sixcycle", "tetra", "wheel6-simp"];

pub const ACTION_NAMES: &[&str] = &[
    "wheel6-z6", "wheel6-z3", "wheel6-z2", "wheel3-z3", "sphere2-swap", "cyc2-flip", "z3xz3-swap",
];

pub fn complex(name: &str) -> Result<Complex2> {
    match by_name(name)? {
        Fixture::Complex(c) => Ok(c),
        Fixture::Action(a) => Ok((**a.space()).clone()),
        Fixture::Simplicial(_) => Err(Error::UnknownFixture(format!("{name} is simplicial"))),
    }
}

pub fn by_name(name: &str) -> Result<Fixture> {
    let lower = name.to_ascii_lowercase();
    let numbered = |prefix: &str| lower.strip_prefix(prefix).and_then(|n| n.parse::<usize>().ok());
    let c = match lower.as_str() {
        "point" => point(),
        "disk3" => disk3(),
        "sphere2" => sphere2(),
        "torus1" => torus1(),
        "z3pres" => z3pres(),
        "z3xz3" => z3xz3(),
        "edge1" => edge1(),
        "theta" => theta(),
        "oct" => return Ok(Fixture::Simplicial(oct())),
        "fivecycle" => return Ok(Fixture::Simplicial(five_cycle())),
        "sixcycle" => return Ok(Fixture::Simplicial(six_cycle())),
        "tetra" => return Ok(Fixture::Simplicial(tetra_boundary())),
        "wheel6-simp" => return Ok(Fixture::Simplicial(wheel_simp(6))),
        "wheel6-z6" => return Ok(Fixture::Action(wheel_action(6, 1))),
        "wheel6-z3" => return Ok(Fixture::Action(wheel_action(6, 2))),
        "wheel6-z2" => return Ok(Fixture::Action(wheel_action(6, 3))),
        "wheel3-z3" => return Ok(Fixture::Action(wheel_action(3, 1))),
        "sphere2-swap" => return Ok(Fixture::Action(sphere2_swap())),
        "cyc2-flip" => return Ok(Fixture::Action(cyc2_flip())),
        "z3xz3-swap" => return Ok(Fixture::Action(z3xz3_swap())),
        _ => {
            if let Some(n) = numbered("cyc").filter(|&n| (1..=64).contains(&n)) {
                cycle(n)
            } else if let Some(n) = numbered("path").filter(|&n| n <= 64) {
                path(n)
            } else if let Some(n) = numbered("wheel").filter(|&n| (3..=64).contains(&n)) {
                wheel(n)
            } else {
                return Err(Error::UnknownFixture(name.to_string()));
            }
        }
    };
    Ok(Fixture::Complex(c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_entries_are_valid() {
        for name in COMPLEX_NAMES {
            let c = complex(name).unwrap();
            assert!(c.validate().is_valid(), "{name}");
        }
        for name in SIMPLICIAL_NAMES {
            let Fixture::Simplicial(s) = by_name(name).unwrap() else { panic!() };
            assert!(s.validate().is_empty(), "{name}");
        }
        for name in ACTION_NAMES {
            let Fixture::Action(a) = by_name(name).unwrap() else { panic!() };
            assert!(a.validate().is_valid(), "{name}");
        }
    }

    #[test]
    fn lookup() {
        assert_eq!(complex("Wheel6").unwrap(), wheel(6));
        assert_eq!(complex("z3pres").unwrap(), z3pres());
        assert!(matches!(by_name("nope"), Err(Error::UnknownFixture(_))));
    }

    #[test]
    fn wheel_shape() {
        let w = wheel(6);
        assert_eq!((w.vertex_count(), w.edge_count(), w.face_count()), (7, 12, 6));
        assert_eq!(w.euler_characteristic(), 1);
    }
}
