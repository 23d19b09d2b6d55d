//! Cycle spans, the lifting assumptions, naive well-spacedness and the
//! edge-length recipe that makes scroll maps well-spaced.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};

use num_integer::Integer;
use serde::Serialize;

use super::{EdgeRole, MapKind, TropicalMapSkeleton};
use crate::error::{Error, Result};
use crate::rational::{common_denominator, q, serde_q, serde_qvec, Q};

/// `{x : normal · x = offset}` with a primitive integer normal whose first nonzero entry is positive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hyperplane {
    pub normal: Vec<i64>,
    #[serde(with = "serde_q")]
    pub offset: Q,
}

impl Hyperplane {
    fn eval(&self, v: &[i64]) -> i64 {
        self.normal.iter().zip(v).map(|(a, b)| a * b).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleSpan {
    pub cycle: usize,
    pub dim: usize,
    /// Independent edge directions spanning the same space.
    pub basis: Vec<Vec<i64>>,
    /// The hyperplane containing the image of the cycle when the span has codimension 1.
    pub hyperplane: Option<Hyperplane>,
}

/// Row-reduce `rows` in place; returns the pivot column of each kept row.
fn row_reduce(rows: &mut Vec<Vec<Q>>) -> Vec<usize> {
    let width = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..width {
        let Some(p) = (top..rows.len()).find(|&i| rows[i][col] != q(0)) else { continue };
        rows.swap(top, p);
        let lead = rows[top][col];
        rows[top].iter_mut().for_each(|x| *x /= lead);
        for i in 0..rows.len() {
            if i != top && rows[i][col] != q(0) {
                let f = rows[i][col];
                let pivot_row = rows[top].clone();
                rows[i].iter_mut().zip(&pivot_row).for_each(|(x, y)| *x -= f * *y);
            }
        }
        pivots.push(col);
        top += 1;
    }
    rows.truncate(top);
    pivots
}

fn to_q(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| q(x as i128)).collect()
}

fn primitive(v: &[Q]) -> Vec<i64> {
    let den = common_denominator(v.iter());
    let ints: Vec<i128> = v.iter().map(|x| (x * q(den)).to_integer()).collect();
    let gcd = ints.iter().fold(0i128, |acc, x| acc.gcd(x)).max(1);
    let sign = ints.iter().find(|&&x| x != 0).map_or(1, |x| x.signum());
    ints.iter().map(|x| (sign * x / gcd) as i64).collect()
}

/// Nonzero vectors orthogonal to every row of `rows` (a basis of the orthogonal complement).
fn orthogonal_complement(rows: &[Vec<i64>], n: usize) -> Vec<Vec<Q>> {
    let mut m: Vec<Vec<Q>> = rows.iter().map(|r| to_q(r)).collect();
    let pivots = row_reduce(&mut m);
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![q(0); n];
            v[free] = q(1);
            for (row, &p) in m.iter().zip(&pivots) {
                v[p] = -row[free];
            }
            v
        })
        .collect()
}

fn independent_subset(vs: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut kept: Vec<Vec<i64>> = Vec::new();
    let mut rank = 0;
    for v in vs {
        let mut trial: Vec<Vec<Q>> = kept.iter().chain(std::iter::once(v)).map(|r| to_q(r)).collect();
        let r = row_reduce(&mut trial).len();
        if r > rank {
            kept.push(v.clone());
            rank = r;
        }
    }
    kept
}

fn span_rank(vs: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<Q>> = vs.iter().map(|r| to_q(r)).collect();
    row_reduce(&mut m).len()
}

/// Span of the edge directions of `γ_i` (1-based).
pub fn cycle_span(map: &TropicalMapSkeleton, i: usize) -> Result<CycleSpan> {
    if i == 0 || i > map.g {
        return Err(Error::invalid(format!("cycle index {i} outside 1..={}", map.g)));
    }
    let dirs: Vec<Vec<i64>> = map.cycles[i - 1].iter().map(|&e| map.edges[e].dir.clone()).collect();
    let basis = independent_subset(&dirs);
    let dim = basis.len();
    let hyperplane = (dim + 1 == map.n).then(|| {
        let normal = primitive(&orthogonal_complement(&basis, map.n)[0]);
        let u = map.edges[map.cycles[i - 1][0]].u;
        let offset = normal.iter().zip(&map.vertices[u].pos).map(|(a, x)| q(*a as i128) * *x).sum();
        Hyperplane { normal, offset }
    });
    Ok(CycleSpan { cycle: i, dim, basis, hyperplane })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AssumptionReport {
    pub max_valence: usize,
    /// (A): valence at most 3 and the graph is a chain of `g` cycles with trees attached.
    pub chain_of_cycles: bool,
    pub cycle_dims: Vec<usize>,
    /// (B): every cycle spans a subspace of codimension at most 1.
    pub codim_at_most_one: bool,
    /// (C): `span(γ_j) + span(γ_{j+1}) = ℝ^n` for each consecutive pair.
    pub transverse: Vec<bool>,
    /// Some cycle maps into a proper affine subspace.
    pub superabundant: bool,
    pub violations: Vec<String>,
    pub passed: bool,
}

fn is_simple_loop(map: &TropicalMapSkeleton, i: usize) -> bool {
    let edges = &map.cycles[i - 1];
    let mut deg: BTreeMap<usize, usize> = BTreeMap::new();
    for &e in edges {
        let Some(v) = map.edges[e].v else { return false };
        *deg.entry(map.edges[e].u).or_default() += 1;
        *deg.entry(v).or_default() += 1;
    }
    if deg.values().any(|&d| d != 2) || deg.len() != edges.len() {
        return false;
    }
    // A 2-regular graph with as many vertices as edges is a loop iff connected.
    let start = map.edges[edges[0]].u;
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for &e in edges {
            let (u, v) = (map.edges[e].u, map.edges[e].v.unwrap());
            for (a, b) in [(u, v), (v, u)] {
                if a == x && seen.insert(b) {
                    stack.push(b);
                }
            }
        }
    }
    seen.len() == deg.len()
}

pub fn check_assumptions(map: &TropicalMapSkeleton) -> Result<AssumptionReport> {
    let mut violations = Vec::new();
    let inc = map.incidence();
    let max_valence = inc.iter().map(|e| e.len()).max().unwrap_or(0);
    if max_valence > 3 {
        violations.push(format!("a vertex has valence {max_valence} > 3"));
    }
    let finite_edges = map.edges.iter().filter(|e| !e.is_ray()).count();
    let betti = finite_edges as i64 - map.vertices.len() as i64 + 1;
    let mut loops_ok = betti == map.g as i64;
    if !loops_ok {
        violations.push(format!("first Betti number {betti} differs from g = {}", map.g));
    }
    for i in 1..=map.g {
        if !is_simple_loop(map, i) {
            loops_ok = false;
            violations.push(format!("cycle {i} is not a simple loop"));
        }
    }
    let chain_of_cycles = loops_ok && max_valence <= 3;

    let mut cycle_dims = Vec::with_capacity(map.g);
    let mut bases = Vec::with_capacity(map.g);
    for i in 1..=map.g {
        let s = cycle_span(map, i)?;
        if s.dim + 1 < map.n {
            violations.push(format!("cycle {i} spans only dimension {} in ℝ^{}", s.dim, map.n));
        }
        cycle_dims.push(s.dim);
        bases.push(s.basis);
    }
    let codim_at_most_one = cycle_dims.iter().all(|&d| d + 1 >= map.n);
    let transverse: Vec<bool> = bases
        .windows(2)
        .map(|w| span_rank(&[w[0].clone(), w[1].clone()].concat()) == map.n)
        .collect();
    for (j, ok) in transverse.iter().enumerate() {
        if !ok {
            violations.push(format!("cycles {} and {} do not jointly span ℝ^{}", j + 1, j + 2, map.n));
        }
    }
    let superabundant = cycle_dims.iter().any(|&d| d < map.n);
    let passed = chain_of_cycles && codim_at_most_one && transverse.iter().all(|&t| t);
    Ok(AssumptionReport {
        max_valence,
        chain_of_cycles,
        cycle_dims,
        codim_at_most_one,
        transverse,
        superabundant,
        violations,
        passed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WellSpacedness {
    pub cycle: usize,
    pub hyperplane: Hyperplane,
    /// 1-valent vertices of the component of the preimage of `H` containing the cycle.
    pub escape_vertices: Vec<usize>,
    /// Distance of each escape vertex to the cycle, in the same order.
    #[serde(with = "serde_qvec")]
    pub distances: Vec<Q>,
    /// The component contains an infinite ray inside `H`. Such rays are not
    /// escape points and do not enter the distance multiset.
    pub unbounded: bool,
    /// Each escape vertex is reached from the cycle by a single shortest path.
    pub unique_paths: bool,
    pub well_spaced: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WellSpacednessReport {
    pub entries: Vec<WellSpacedness>,
    /// Cycles whose span has codimension above 1; no single hyperplane applies.
    pub unchecked: Vec<usize>,
    pub naively_well_spaced: bool,
}

/// Whether the minimum of `distances` occurs at least twice.
pub fn minimum_attained_twice(distances: &[Q]) -> bool {
    match distances.iter().min() {
        Some(m) => distances.iter().filter(|d| *d == m).count() >= 2,
        None => true,
    }
}

struct Component {
    edges: BTreeSet<usize>,
    degree: BTreeMap<usize, usize>,
    dist: BTreeMap<usize, Q>,
    paths: BTreeMap<usize, u64>,
    unbounded: bool,
}

fn component(map: &TropicalMapSkeleton, i: usize, h: &Hyperplane) -> Component {
    let inc = map.incidence();
    let sources = map.cycle_vertices(i);
    let mut seen: BTreeSet<usize> = sources.iter().copied().collect();
    let mut stack = sources.clone();
    let mut edges = BTreeSet::new();
    while let Some(x) = stack.pop() {
        for &eid in &inc[x] {
            let e = &map.edges[eid];
            if h.eval(&e.dir) != 0 {
                continue;
            }
            edges.insert(eid);
            if let Some(v) = e.v {
                let other = if e.u == x { v } else { e.u };
                if seen.insert(other) {
                    stack.push(other);
                }
            }
        }
    }
    let mut degree: BTreeMap<usize, usize> = seen.iter().map(|&v| (v, 0)).collect();
    let mut unbounded = false;
    for &eid in &edges {
        let e = &map.edges[eid];
        *degree.get_mut(&e.u).unwrap() += 1;
        match e.v {
            Some(v) => *degree.get_mut(&v).unwrap() += 1,
            None => unbounded = true,
        }
    }
    // Shortest distances from the cycle inside the component, with path counts.
    let mut dist: BTreeMap<usize, Q> = BTreeMap::new();
    let mut paths: BTreeMap<usize, u64> = BTreeMap::new();
    let mut heap = BinaryHeap::new();
    for &s in &sources {
        dist.insert(s, q(0));
        paths.insert(s, 1);
        heap.push(Reverse((q(0), s)));
    }
    let mut done = BTreeSet::new();
    while let Some(Reverse((d, x))) = heap.pop() {
        if !done.insert(x) {
            continue;
        }
        for &eid in &inc[x] {
            let e = &map.edges[eid];
            let (Some(v), Some(len)) = (e.v, e.len) else { continue };
            if !edges.contains(&eid) {
                continue;
            }
            let other = if e.u == x { v } else { e.u };
            if sources.contains(&other) {
                continue;
            }
            let nd = d + len;
            let px = paths[&x];
            match dist.get(&other) {
                Some(&old) if old < nd => {}
                Some(&old) if old == nd => *paths.get_mut(&other).unwrap() += px,
                _ => {
                    dist.insert(other, nd);
                    paths.insert(other, px);
                    heap.push(Reverse((nd, other)));
                }
            }
        }
    }
    Component { edges, degree, dist, paths, unbounded }
}

fn escape_vertices(map: &TropicalMapSkeleton, i: usize, comp: &Component) -> Vec<usize> {
    let on_cycle = map.cycle_vertices(i);
    comp.degree
        .iter()
        .filter(|(v, &d)| d == 1 && !on_cycle.contains(v))
        .map(|(&v, _)| v)
        .collect()
}

fn check_cycle(map: &TropicalMapSkeleton, i: usize, h: Hyperplane) -> WellSpacedness {
    let comp = component(map, i, &h);
    let escape = escape_vertices(map, i, &comp);
    let distances: Vec<Q> = escape.iter().map(|v| comp.dist[v]).collect();
    let unique_paths = escape.iter().all(|v| comp.paths[v] == 1);
    let well_spaced = minimum_attained_twice(&distances);
    WellSpacedness { cycle: i, hyperplane: h, escape_vertices: escape, distances, unbounded: comp.unbounded, unique_paths, well_spaced }
}

pub fn naive_well_spacedness(map: &TropicalMapSkeleton) -> Result<WellSpacednessReport> {
    let mut entries = Vec::new();
    let mut unchecked = Vec::new();
    for i in 1..=map.g {
        let span = cycle_span(map, i)?;
        match span.hyperplane {
            Some(h) => entries.push(check_cycle(map, i, h)),
            None if span.dim < map.n => unchecked.push(i),
            None => {}
        }
    }
    let naively_well_spaced = unchecked.is_empty() && entries.iter().all(|e| e.well_spaced);
    Ok(WellSpacednessReport { entries, unchecked, naively_well_spaced })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TunedEdge {
    pub cycle: usize,
    pub edge: usize,
    #[serde(with = "serde_q")]
    pub len: Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TuningReport {
    #[serde(with = "serde_q")]
    pub base: Q,
    /// `(bridge index, length)` for every bridge whose length was set.
    pub bridges: Vec<(usize, String)>,
    pub tuned: Vec<TunedEdge>,
    pub report: WellSpacednessReport,
}

fn pow(b: Q, e: usize) -> Q {
    (0..e).fold(q(1), |acc, _| acc * b)
}

/// Bridge lengths `n_i = B^{k−i}` for `i ≤ k−1` and `n_i = B^{i−(g−k+1)}` for
/// `i ≥ g−k+2`, then for each cycle contained in a hyperplane, the first
/// branch point of a tree at that cycle is moved to the nearest escape
/// distance so that the minimum is attained twice.
pub fn assign_well_spaced_lengths(map: &TropicalMapSkeleton, base: Q) -> Result<(TropicalMapSkeleton, TuningReport)> {
    if map.kind != MapKind::Scroll {
        return Err(Error::invalid("the length recipe applies to scroll maps"));
    }
    if base <= q(1) {
        return Err(Error::invalid("the base B must exceed 1"));
    }
    let k = map.gonality.ok_or_else(|| Error::invalid("map does not record the gonality"))?;
    let g = map.g;
    let mut out = map.clone();
    let mut target: BTreeMap<usize, Q> = BTreeMap::new();
    for i in 1..g {
        if i < k {
            target.insert(i, pow(base, k - i));
        } else if i + k >= g + 2 {
            target.insert(i, pow(base, i + k - g - 1));
        }
    }
    // Scale every piece of a bridge so that the whole bridge gets its target length.
    for (&i, &len) in &target {
        let pieces: Vec<usize> = out
            .edges
            .iter()
            .filter(|e| e.role == EdgeRole::Bridge { bridge: i })
            .map(|e| e.id)
            .collect();
        let total: Q = pieces.iter().map(|&e| out.edges[e].len.unwrap()).sum();
        for e in pieces {
            let l = out.edges[e].len.unwrap();
            out.set_length(e, l * len / total)?;
        }
    }
    out.integrate_positions()?;

    let mut tuned = Vec::new();
    for i in 1..=g {
        let Some(h) = cycle_span(&out, i)?.hyperplane else { continue };
        let comp = component(&out, i, &h);
        let on_cycle = out.cycle_vertices(i);
        let tunable: Vec<(usize, usize)> = out
            .trees
            .iter()
            .filter(|t| on_cycle.contains(&t.vertex) && comp.edges.contains(&t.root))
            .map(|t| (t.root, out.edges[t.root].v.unwrap()))
            .filter(|(_, end)| comp.degree.get(end) == Some(&1))
            .collect();
        if tunable.is_empty() {
            continue;
        }
        let ends: BTreeSet<usize> = tunable.iter().map(|t| t.1).collect();
        let nearest = escape_vertices(&out, i, &comp)
            .into_iter()
            .filter(|v| !ends.contains(v))
            .map(|v| comp.dist[&v])
            .min();
        let lengths: Vec<Q> = match nearest {
            Some(d) => (0..tunable.len()).map(|j| if j == 0 { d } else { d * q(2) }).collect(),
            None if tunable.len() >= 2 => vec![q(1); tunable.len()],
            None => {
                return Err(Error::Certificate(format!(
                    "cycle {i}: a single tree cannot create a repeated minimum on its own"
                )))
            }
        };
        for ((edge, _), len) in tunable.iter().zip(lengths) {
            out.set_length(*edge, len)?;
            tuned.push(TunedEdge { cycle: i, edge: *edge, len });
        }
        out.integrate_positions()?;
    }
    let report = naive_well_spacedness(&out)?;
    if !report.naively_well_spaced {
        let bad: Vec<usize> = report.entries.iter().filter(|e| !e.well_spaced).map(|e| e.cycle).collect();
        return Err(Error::Certificate(format!(
            "length recipe left cycles {bad:?} (and unchecked {:?}) not well-spaced",
            report.unchecked
        )));
    }
    let bridges = target.iter().map(|(&i, l)| (i, crate::rational::format_q(l))).collect();
    Ok((out, TuningReport { base, bridges, tuned, report }))
}
