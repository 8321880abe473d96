//! Reference computations written without the library's algorithms, used to
//! cross-check it.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use num_rational::Ratio;
use rand::Rng;
use towerkit::{CombMap, Complex2};

/// Letters are `2g` for a generator and `2g + 1` for its inverse.
pub type Letters = Vec<u32>;

/// Plain HLT coset enumeration with a union-find coincidence queue. Returns
/// the index of the subgroup generated by `subgens`, or `None` past `limit`.
pub fn coset_index(ngens: usize, relators: &[Letters], subgens: &[Letters], limit: usize) -> Option<usize> {
    let cols = 2 * ngens;
    let mut t = Tables { table: vec![vec![None; cols]], parent: vec![0] };
    for w in subgens {
        t.scan_and_fill(0, w);
    }
    let mut c = 0;
    while c < t.table.len() {
        if t.parent[c] == c {
            for r in relators {
                t.scan_and_fill(c, r);
                if t.parent[c] != c {
                    break;
                }
            }
            if t.parent[c] == c {
                for x in 0..cols {
                    if t.table[c][x].is_none() {
                        t.define(c, x);
                    }
                }
            }
        }
        if t.table.len() > limit {
            return None;
        }
        c += 1;
    }
    Some((0..t.table.len()).filter(|&c| t.parent[c] == c).count())
}

struct Tables {
    table: Vec<Vec<Option<usize>>>,
    parent: Vec<usize>,
}

impl Tables {
    fn define(&mut self, c: usize, x: usize) {
        let n = self.table.len();
        self.table.push(vec![None; self.table[0].len()]);
        self.parent.push(n);
        self.table[c][x] = Some(n);
        self.table[n][x ^ 1] = Some(c);
    }

    fn rep(&mut self, mut c: usize) -> usize {
        let mut root = c;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[c] != root {
            let next = self.parent[c];
            self.parent[c] = root;
            c = next;
        }
        root
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut Vec<usize>) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        self.parent[hi] = lo;
        queue.push(hi);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let e = queue[i];
            i += 1;
            for x in 0..self.table[e].len() {
                let Some(f) = self.table[e][x] else { continue };
                self.table[f][x ^ 1] = None;
                let (e1, f1) = (self.rep(e), self.rep(f));
                if let Some(t) = self.table[e1][x] {
                    self.merge(f1, t, &mut queue);
                } else if let Some(t) = self.table[f1][x ^ 1] {
                    self.merge(e1, t, &mut queue);
                } else {
                    self.table[e1][x] = Some(f1);
                    self.table[f1][x ^ 1] = Some(e1);
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: usize, w: &[u32]) {
        if w.is_empty() {
            return;
        }
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, w.len() as isize - 1);
        loop {
            while (i as isize) <= j {
                match self.table[f][w[i] as usize] {
                    Some(n) => {
                        f = n;
                        i += 1;
                    }
                    None => break,
                }
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return;
            }
            while j >= i as isize {
                match self.table[b][(w[j as usize] ^ 1) as usize] {
                    Some(n) => {
                        b = n;
                        j -= 1;
                    }
                    None => break,
                }
            }
            if j < i as isize {
                self.coincidence(f, b);
                return;
            }
            if j == i as isize {
                let x = w[i] as usize;
                self.table[f][x] = Some(b);
                self.table[b][x ^ 1] = Some(f);
                return;
            }
            self.define(f, w[i] as usize);
        }
    }
}

/// A presentation of the fundamental group from a breadth-first tree.
pub struct Pres {
    pub base: usize,
    /// Generator of each edge outside the tree.
    pub gen_of_edge: Vec<Option<u32>>,
    /// Tree dart into each vertex.
    pub parent: Vec<Option<usize>>,
    pub relators: Vec<Letters>,
}

impl Pres {
    pub fn new(c: &Complex2, base: usize) -> Pres {
        let mut parent = vec![None; c.vertex_count()];
        let mut seen = vec![false; c.vertex_count()];
        let mut tree = vec![false; c.edge_count()];
        seen[base] = true;
        let mut q = VecDeque::from([base]);
        while let Some(u) = q.pop_front() {
            for d in 0..c.dart_count() {
                if c.src(d) == u && !seen[c.dst(d)] {
                    seen[c.dst(d)] = true;
                    parent[c.dst(d)] = Some(d);
                    tree[d / 2] = true;
                    q.push_back(c.dst(d));
                }
            }
        }
        let mut next = 0;
        let gen_of_edge = (0..c.edge_count())
            .map(|e| {
                (!tree[e]).then(|| {
                    next += 1;
                    next - 1
                })
            })
            .collect();
        let mut p = Pres { base, gen_of_edge, parent, relators: Vec::new() };
        p.relators = c.faces().iter().map(|f| p.word(&f.boundary)).collect();
        p
    }

    pub fn generators(&self) -> usize {
        self.gen_of_edge.iter().flatten().count()
    }

    /// Letters of a closed path, read off its non-tree darts.
    pub fn word(&self, path: &[usize]) -> Letters {
        path.iter().filter_map(|&d| self.gen_of_edge[d / 2].map(|g| 2 * g + (d as u32 & 1))).collect()
    }

    /// Tree path from the base to `v`.
    pub fn tree_path(&self, c: &Complex2, mut v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        while let Some(d) = self.parent[v] {
            out.push(d);
            v = c.src(d);
        }
        out.reverse();
        out
    }

    /// Closed path at the base through each non-tree edge.
    pub fn generator_loops(&self, c: &Complex2) -> Vec<Vec<usize>> {
        (0..c.edge_count())
            .filter(|&e| self.gen_of_edge[e].is_some())
            .map(|e| {
                let d = 2 * e;
                let mut p = self.tree_path(c, c.src(d));
                p.push(d);
                p.extend(self.tree_path(c, c.dst(d)).iter().rev().map(|&x| x ^ 1));
                p
            })
            .collect()
    }
}

pub const LIMIT: usize = 5_000;

pub fn connected(c: &Complex2) -> bool {
    c.vertex_count() > 0 && Pres::new(c, 0).parent.iter().enumerate().all(|(v, p)| v == 0 || p.is_some())
}

/// Order of the fundamental group, when finite and found within the limit.
pub fn pi1_order(c: &Complex2) -> Option<usize> {
    let p = Pres::new(c, 0);
    coset_index(p.generators(), &p.relators, &[], LIMIT)
}

pub fn simply_connected(c: &Complex2) -> bool {
    connected(c) && pi1_order(c) == Some(1)
}

/// Whether the induced map on fundamental groups is onto (connected source).
pub fn pi1_surjective(m: &CombMap) -> Option<bool> {
    let (x, y) = (&*m.source, &*m.target);
    let py = Pres::new(y, m.vmap[0]);
    let px = Pres::new(x, 0);
    let images: Vec<Letters> = px
        .generator_loops(x)
        .iter()
        .map(|l| py.word(&l.iter().map(|&d| m.dmap[d]).collect::<Vec<_>>()))
        .collect();
    coset_index(py.generators(), &py.relators, &images, LIMIT).map(|i| i == 1)
}

pub fn zero_surjective(m: &CombMap) -> bool {
    let hit: BTreeSet<usize> = m.vmap.iter().copied().collect();
    hit.len() == m.target.vertex_count()
}

/// Integer 1-chain of a path, indexed by edge.
pub fn chain(c: &Complex2, path: &[usize]) -> Vec<i64> {
    let mut out = vec![0; c.edge_count()];
    for &d in path {
        out[d / 2] += if d % 2 == 0 { 1 } else { -1 };
    }
    out
}

/// Solves `boundary(x) = target` over the rationals. `None` when there is no
/// solution or it is not unique.
pub fn solve_boundary(c: &Complex2, target: &[i64]) -> Option<Vec<Ratio<i64>>> {
    let (rows, cols) = (c.edge_count(), c.face_count());
    let mut m: Vec<Vec<Ratio<i64>>> = (0..rows)
        .map(|e| {
            let mut row: Vec<Ratio<i64>> = (0..cols).map(|f| Ratio::from(chain(c, c.boundary(f))[e])).collect();
            row.push(Ratio::from(target[e]));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        let Some(p) = (r..rows).find(|&i| m[i][col] != Ratio::from(0)) else { return None };
        m.swap(r, p);
        let lead = m[r][col];
        for x in m[r].iter_mut() {
            *x /= lead;
        }
        for i in 0..rows {
            if i != r && m[i][col] != Ratio::from(0) {
                let k = m[i][col];
                for j in 0..=cols {
                    let v = m[r][j];
                    m[i][j] -= k * v;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if m[r..].iter().any(|row| row[cols] != Ratio::from(0)) {
        return None;
    }
    Some((0..cols).map(|i| m[i][cols]).collect())
}

/// Filling area of a closed path in a planar disk complex: the sum of the
/// absolute winding numbers around the faces.
pub fn algebraic_area(c: &Complex2, path: &[usize]) -> Option<usize> {
    let x = solve_boundary(c, &chain(c, path))?;
    let mut total = 0;
    for v in x {
        if !v.is_integer() {
            return None;
        }
        total += v.to_integer().unsigned_abs() as usize;
    }
    Some(total)
}

/// Dehn table by enumerating closed paths and taking algebraic areas.
pub fn brute_dehn(c: &Complex2, n: usize) -> Vec<usize> {
    let mut best = vec![0; n + 1];
    let mut memo: HashMap<Vec<i64>, usize> = HashMap::new();
    for v in c.vertices() {
        let mut stack: Vec<(Vec<usize>, usize)> = vec![(Vec::new(), v)];
        while let Some((p, end)) = stack.pop() {
            if !p.is_empty() && end == v {
                let ch = chain(c, &p);
                let a = *memo.entry(ch).or_insert_with(|| algebraic_area(c, &p).expect("planar disk"));
                best[p.len()] = best[p.len()].max(a);
            }
            if p.len() < n {
                for d in 0..c.dart_count() {
                    if c.src(d) == end {
                        let mut q = p.clone();
                        q.push(d);
                        stack.push((q, c.dst(d)));
                    }
                }
            }
        }
    }
    for l in 1..=n {
        best[l] = best[l].max(best[l - 1]);
    }
    best
}

/// Every terminal face set reachable by deleting faces with a free edge, in
/// every order.
pub fn dr_terminals(c: &Complex2) -> BTreeSet<BTreeSet<usize>> {
    let start: BTreeSet<usize> = (0..c.face_count()).collect();
    let mut seen = BTreeSet::from([start.clone()]);
    let mut stack = vec![start];
    let mut out = BTreeSet::new();
    while let Some(s) = stack.pop() {
        let mut count = vec![0; c.edge_count()];
        for &f in &s {
            for &d in c.boundary(f) {
                count[d / 2] += 1;
            }
        }
        let removable: BTreeSet<usize> =
            s.iter().copied().filter(|&f| c.boundary(f).iter().any(|&d| count[d / 2] == 1)).collect();
        if removable.is_empty() {
            out.insert(s);
            continue;
        }
        for f in removable {
            let mut t = s.clone();
            t.remove(&f);
            if seen.insert(t.clone()) {
                stack.push(t);
            }
        }
    }
    out
}

/// Known fundamental groups, evaluated directly on dart paths.
#[derive(Clone, Copy, Debug)]
pub enum KnownGroup {
    Trivial,
    /// Cyclic of the given order, counting the signed uses of one edge.
    Cyclic(usize, usize),
    /// Winding around a cycle graph of the given length.
    Winding(usize),
    /// Free abelian of rank two on two edges.
    Z2(usize, usize),
}

/// Ground-truth class of a closed path at the base vertex.
pub fn class(g: KnownGroup, path: &[usize]) -> Vec<i64> {
    let sum = |e: usize| path.iter().map(|&d| if d / 2 == e { if d % 2 == 0 { 1 } else { -1 } } else { 0 }).sum::<i64>();
    match g {
        KnownGroup::Trivial => vec![],
        KnownGroup::Cyclic(e, n) => vec![sum(e).rem_euclid(n as i64)],
        KnownGroup::Winding(n) => {
            let total: i64 = path.iter().map(|&d| if d % 2 == 0 { 1 } else { -1 }).sum();
            vec![total / n as i64]
        }
        KnownGroup::Z2(a, b) => vec![sum(a), sum(b)],
    }
}

/// Ground truth class of an open path from the base: its endpoint, plus the
/// class of a fixed closing path for the cyclic and winding cases.
pub fn endpoint_class(c: &Complex2, g: KnownGroup, path: &[usize]) -> (usize, Vec<i64>) {
    let end = path.last().map_or(0, |&d| c.dst(d));
    let mut closed = path.to_vec();
    let p = Pres::new(c, 0);
    closed.extend(p.tree_path(c, end).iter().rev().map(|&d| d ^ 1));
    (end, class(g, &closed))
}

/// Random walk from `start` of the given length.
pub fn random_walk(c: &Complex2, start: usize, len: usize, rng: &mut impl Rng) -> Vec<usize> {
    let out_darts: Vec<Vec<usize>> = c.vertices().map(|v| (0..c.dart_count()).filter(|&d| c.src(d) == v).collect()).collect();
    let mut path = Vec::with_capacity(len);
    let mut v = start;
    for _ in 0..len {
        let ds = &out_darts[v];
        let d = ds[rng.gen_range(0..ds.len())];
        path.push(d);
        v = c.dst(d);
    }
    path
}

/// Random closed walk at `start`, closed up along the tree.
pub fn random_loop(c: &Complex2, start: usize, len: usize, rng: &mut impl Rng) -> Vec<usize> {
    let mut path = random_walk(c, start, len, rng);
    let end = path.last().map_or(start, |&d| c.dst(d));
    let p = Pres::new(c, start);
    path.extend(p.tree_path(c, end).iter().rev().map(|&d| d ^ 1));
    path
}

/// Counts how often each value occurs.
pub fn tally<T: Ord + Clone>(xs: &[T]) -> BTreeMap<T, usize> {
    let mut m = BTreeMap::new();
    for x in xs {
        *m.entry(x.clone()).or_insert(0) += 1;
    }
    m
}

/// The map of a cycle graph tracing a nonempty closed walk.
pub fn cycle_map(y: Complex2, walk: &[usize]) -> CombMap {
    let n = walk.len();
    let src = towerkit::fixtures::cycle(n);
    let mut vmap = vec![0; n];
    let mut dmap = vec![0; 2 * n];
    for (i, &d) in walk.iter().enumerate() {
        vmap[src.vertex(&format!("v{i}")).unwrap()] = y.src(d);
        let e = src.dart(&format!("e{i}")).unwrap();
        dmap[e] = d;
        dmap[e ^ 1] = d ^ 1;
    }
    CombMap::from_cells(src, y, vmap, dmap, &[]).unwrap()
}
