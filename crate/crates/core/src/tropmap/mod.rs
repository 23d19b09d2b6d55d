//! Piecewise-linear maps from a chain of cycles with attached trees into `ℝ^n`,
//! and the certificates used to decide whether they lift.
//!
//! A map is described by *sections*: effective divisors `D_s` together with a
//! fan ray `u_s ∈ ℤ^n`. Coordinate `c` of the map is the function with divisor
//! `Σ_s u_s[c]·D_s`, so at every support point the attached rays balance the
//! chain edges by construction.

mod build;
mod certify;

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::chain::io::LocationJson;
use crate::chain::plf::{principal_witness, EdgeId, Placement, Vertex};
use crate::chain::{ChainOfCycles, ChipList, Location};
use crate::error::{Error, Result};
use crate::rational::{format_q, parse_q, q, serde_qvec, Q};

pub use build::{build_generic_map, build_scroll_map};
pub use certify::{
    assign_well_spaced_lengths, check_assumptions, cycle_span, minimum_attained_twice, naive_well_spacedness, AssumptionReport, CycleSpan,
    Hyperplane, TunedEdge, TuningReport, WellSpacedness, WellSpacednessReport,
};

/// Default length of tree edges that are not on the chain.
pub const TREE_EDGE_LEN: i128 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Section {
    pub label: String,
    pub ray: Vec<i64>,
    #[serde(skip)]
    pub divisor: ChipList,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkVertex {
    pub id: usize,
    #[serde(with = "serde_qvec")]
    pub pos: Vec<Q>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EdgeRole {
    Cycle { cycle: usize },
    Bridge { bridge: usize },
    /// First edge of a tree, from the chain to the first branch point.
    Root { tree: usize },
    Spine { tree: usize },
    Leaf { tree: usize, section: usize },
    /// A single ray attached directly to the chain.
    Ray { section: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkEdge {
    pub id: usize,
    pub u: usize,
    /// `None` for an infinite ray leaving `u`.
    pub v: Option<usize>,
    /// Slope vector of the map along `u → v`, i.e. weight times primitive direction.
    pub dir: Vec<i64>,
    #[serde(with = "serde_len")]
    pub len: Option<Q>,
    pub role: EdgeRole,
}

impl SkEdge {
    pub fn is_ray(&self) -> bool {
        self.v.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tree {
    pub base: LocationJson,
    pub vertex: usize,
    pub root: usize,
    /// Section indices, one leaf each, in leaf order.
    pub leaves: Vec<usize>,
    pub mults: Vec<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MapKind {
    Generic,
    Scroll,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TropicalMapSkeleton {
    pub kind: MapKind,
    pub g: usize,
    pub n: usize,
    pub gonality: Option<usize>,
    pub sections: Vec<Section>,
    pub vertices: Vec<SkVertex>,
    pub edges: Vec<SkEdge>,
    /// Edge ids of `γ_1..γ_g`, counterclockwise from `w_j`.
    pub cycles: Vec<Vec<usize>>,
    pub trees: Vec<Tree>,
}

mod serde_len {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Option<Q>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match x {
            Some(v) => s.serialize_str(&format_q(v)),
            None => s.serialize_str("inf"),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Q>, D::Error> {
        let raw = String::deserialize(d)?;
        if raw == "inf" {
            return Ok(None);
        }
        parse_q(&raw).map(Some).map_err(serde::de::Error::custom)
    }
}

fn add_scaled(acc: &mut [i64], v: &[i64], k: i64) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a += k * b;
    }
}

/// Key for a point of the chain carrying chips: a chain vertex or an interior edge point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum PointKey {
    Vertex(Vertex),
    Edge(EdgeId, Q),
}

/// Build the skeleton of the map defined by `sections`.
///
/// `chain` must already be realized for the coordinates involved.
pub(crate) fn assemble(
    chain: &ChainOfCycles,
    kind: MapKind,
    sections: Vec<Section>,
    n: usize,
) -> Result<TropicalMapSkeleton> {
    let g = chain.g();
    if sections.iter().any(|s| s.ray.len() != n) {
        return Err(Error::invalid(format!("every section ray must have {n} entries")));
    }
    let mut coords = Vec::with_capacity(n);
    for c in 0..n {
        let mut delta = ChipList::new();
        for s in &sections {
            if s.ray[c] != 0 {
                delta = delta + s.divisor.scaled(s.ray[c]);
            }
        }
        coords.push(principal_witness(chain, &delta)?);
    }

    // Support points and the sections through them.
    let mut marked: BTreeMap<PointKey, Vec<(usize, i64)>> = BTreeMap::new();
    for (si, s) in sections.iter().enumerate() {
        for chip in &s.divisor.simplified(chain)?.chips {
            if chip.mult < 0 {
                return Err(Error::invalid(format!("section {} is not effective", s.label)));
            }
            let key = match chain.locate(&chip.at)? {
                Placement::Vertex(v) => {
                    let allowed = v == Vertex::V(1) || v == Vertex::W(g);
                    if !allowed {
                        return Err(Error::invalid(format!(
                            "section {} has a chip on the interior vertex {v:?}; the divisor is not vertex-avoiding",
                            s.label
                        )));
                    }
                    PointKey::Vertex(v)
                }
                Placement::Edge(e, o) => PointKey::Edge(e, o),
            };
            marked.entry(key).or_default().push((si, chip.mult));
        }
    }

    let mut vertices: Vec<SkVertex> = Vec::new();
    let new_vertex = |vertices: &mut Vec<SkVertex>| {
        vertices.push(SkVertex { id: vertices.len(), pos: vec![q(0); n] });
        vertices.len() - 1
    };
    let mut chain_vertex: BTreeMap<Vertex, usize> = BTreeMap::new();
    for j in 1..=g {
        chain_vertex.insert(Vertex::V(j), new_vertex(&mut vertices));
        chain_vertex.insert(Vertex::W(j), new_vertex(&mut vertices));
    }
    let mut point_vertex: BTreeMap<PointKey, usize> = BTreeMap::new();
    for (v, &id) in &chain_vertex {
        point_vertex.insert(PointKey::Vertex(*v), id);
    }

    let mut edges: Vec<SkEdge> = Vec::new();
    let mut cycles: Vec<Vec<usize>> = vec![Vec::new(); g];
    for e in chain.edge_ids() {
        let len = chain.edge_len(e);
        let mut cuts: Vec<Q> = marked
            .keys()
            .filter_map(|k| match k {
                PointKey::Edge(e2, o) if *e2 == e => Some(*o),
                _ => None,
            })
            .collect();
        for f in &coords {
            cuts.extend(f.edge(e).segments.iter().map(|s| s.start).filter(|&s| s > q(0)));
        }
        cuts.sort();
        cuts.dedup();
        let (tail, head) = chain.endpoints(e);
        let mut prev = (q(0), chain_vertex[&tail]);
        let role = match e {
            EdgeId::Top(j) | EdgeId::Bottom(j) => EdgeRole::Cycle { cycle: j },
            EdgeId::Bridge(j) => EdgeRole::Bridge { bridge: j },
        };
        for stop in cuts.into_iter().chain(std::iter::once(len)) {
            let to = if stop == len {
                chain_vertex[&head]
            } else {
                let id = new_vertex(&mut vertices);
                point_vertex.insert(PointKey::Edge(e, stop), id);
                id
            };
            let mid = (prev.0 + stop) / q(2);
            let dir = coords.iter().map(|f| f.edge(e).slope_at(mid)).collect();
            let id = edges.len();
            edges.push(SkEdge { id, u: prev.1, v: Some(to), dir, len: Some(stop - prev.0), role });
            if let EdgeRole::Cycle { cycle } = role {
                cycles[cycle - 1].push(id);
            }
            prev = (stop, to);
        }
    }

    let mut trees = Vec::new();
    for (key, leaves) in &marked {
        let base = point_vertex[key];
        let loc = match key {
            PointKey::Vertex(v) => v.location(),
            PointKey::Edge(e, o) => chain.point_on(*e, *o),
        };
        let ray_of = |&(si, mult): &(usize, i64)| -> Vec<i64> {
            sections[si].ray.iter().map(|x| x * mult).collect()
        };
        if let [single] = leaves.as_slice() {
            let id = edges.len();
            edges.push(SkEdge { id, u: base, v: None, dir: ray_of(single), len: None, role: EdgeRole::Ray { section: single.0 } });
            continue;
        }
        let tree = trees.len();
        let mut remaining = vec![0i64; n];
        for leaf in leaves {
            add_scaled(&mut remaining, &ray_of(leaf), 1);
        }
        let root = edges.len();
        let mut node = new_vertex(&mut vertices);
        edges.push(SkEdge {
            id: root,
            u: base,
            v: Some(node),
            dir: remaining.clone(),
            len: Some(q(TREE_EDGE_LEN)),
            role: EdgeRole::Root { tree },
        });
        for (i, leaf) in leaves.iter().enumerate() {
            let dir = ray_of(leaf);
            let id = edges.len();
            edges.push(SkEdge { id, u: node, v: None, dir: dir.clone(), len: None, role: EdgeRole::Leaf { tree, section: leaf.0 } });
            add_scaled(&mut remaining, &dir, -1);
            if i + 2 < leaves.len() {
                let next = new_vertex(&mut vertices);
                let id = edges.len();
                edges.push(SkEdge {
                    id,
                    u: node,
                    v: Some(next),
                    dir: remaining.clone(),
                    len: Some(q(TREE_EDGE_LEN)),
                    role: EdgeRole::Spine { tree },
                });
                node = next;
            }
        }
        trees.push(Tree {
            base: LocationJson::from_location(chain, &loc),
            vertex: base,
            root,
            leaves: leaves.iter().map(|l| l.0).collect(),
            mults: leaves.iter().map(|l| l.1).collect(),
        });
    }

    let mut map = TropicalMapSkeleton {
        kind,
        g,
        n,
        gonality: chain.k.map(|k| k as usize),
        sections,
        vertices,
        edges,
        cycles,
        trees,
    };
    map.integrate_positions()?;
    for (v, &id) in &chain_vertex {
        let want: Vec<Q> = coords.iter().map(|f| f.vertex_value(*v)).collect();
        if map.vertices[id].pos != want {
            return Err(Error::internal(format!("integrated position of {v:?} disagrees with the coordinate functions")));
        }
    }
    map.check_balancing()?;
    Ok(map)
}

impl TropicalMapSkeleton {
    /// Edge ids incident to each vertex.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.vertices.len()];
        for e in &self.edges {
            inc[e.u].push(e.id);
            if let Some(v) = e.v {
                inc[v].push(e.id);
            }
        }
        inc
    }

    /// Recompute positions from vertex 0 (at the origin) by integrating
    /// `dir × len`, then check that every finite edge closes up exactly.
    pub fn integrate_positions(&mut self) -> Result<()> {
        let inc = self.incidence();
        let mut seen = vec![false; self.vertices.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        self.vertices[0].pos = vec![q(0); self.n];
        while let Some(x) = queue.pop_front() {
            for &eid in &inc[x] {
                let e = &self.edges[eid];
                let (Some(v), Some(len)) = (e.v, e.len) else { continue };
                let (other, sign) = if e.u == x { (v, 1) } else { (e.u, -1) };
                if seen[other] {
                    continue;
                }
                let pos = self.vertices[x]
                    .pos
                    .iter()
                    .zip(&e.dir)
                    .map(|(p, d)| *p + q((sign * d) as i128) * len)
                    .collect();
                self.vertices[other].pos = pos;
                seen[other] = true;
                queue.push_back(other);
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::invalid("skeleton is disconnected"));
        }
        for e in &self.edges {
            let (Some(v), Some(len)) = (e.v, e.len) else { continue };
            for c in 0..self.n {
                let got = self.vertices[v].pos[c] - self.vertices[e.u].pos[c];
                if got != q(e.dir[c] as i128) * len {
                    return Err(Error::internal(format!("edge {} does not close up in coordinate {c}", e.id)));
                }
            }
        }
        Ok(())
    }

    /// Sum of outgoing slope vectors vanishes at every finite vertex.
    pub fn check_balancing(&self) -> Result<()> {
        for (x, inc) in self.incidence().iter().enumerate() {
            let mut total = vec![0i64; self.n];
            for &eid in inc {
                let e = &self.edges[eid];
                add_scaled(&mut total, &e.dir, if e.u == x { 1 } else { -1 });
            }
            if total.iter().any(|&t| t != 0) {
                return Err(Error::internal(format!("map is unbalanced at vertex {x}: {total:?}")));
            }
        }
        Ok(())
    }

    pub fn set_length(&mut self, edge: usize, len: Q) -> Result<()> {
        let e = self.edges.get_mut(edge).ok_or_else(|| Error::invalid(format!("no edge {edge}")))?;
        if e.is_ray() || len <= q(0) {
            return Err(Error::invalid(format!("edge {edge} cannot take length {}", format_q(&len))));
        }
        e.len = Some(len);
        Ok(())
    }

    /// Vertices lying on `γ_i` (1-based).
    pub fn cycle_vertices(&self, i: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.cycles[i - 1]
            .iter()
            .flat_map(|&e| [self.edges[e].u, self.edges[e].v.unwrap()])
            .collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("skeleton serializes")
    }

    pub fn from_json(v: serde_json::Value) -> Result<Self> {
        let map: TropicalMapSkeleton = serde_json::from_value(v)?;
        map.validate()?;
        Ok(map)
    }

    /// Like [`from_json`](Self::from_json), but vertex positions are recomputed from the
    /// edge lengths first, so lengths can be edited by hand.
    pub fn from_json_reintegrated(v: serde_json::Value) -> Result<Self> {
        let mut map: TropicalMapSkeleton = serde_json::from_value(v)?;
        map.validate_structure()?;
        map.integrate_positions()?;
        map.validate()?;
        Ok(map)
    }

    /// Structural checks for skeletons read from outside.
    pub fn validate(&self) -> Result<()> {
        self.validate_structure()?;
        self.check_balancing()?;
        let mut copy = self.clone();
        copy.integrate_positions()?;
        if copy.vertices.iter().zip(&self.vertices).any(|(a, b)| {
            a.pos.iter().zip(&b.pos).zip(&self.vertices[0].pos).any(|((x, y), o)| *x + *o != *y)
        }) {
            return Err(Error::invalid("vertex positions disagree with edge directions and lengths"));
        }
        Ok(())
    }

    fn validate_structure(&self) -> Result<()> {
        let nv = self.vertices.len();
        if nv == 0 {
            return Err(Error::invalid("skeleton has no vertices"));
        }
        for (i, v) in self.vertices.iter().enumerate() {
            if v.id != i || v.pos.len() != self.n {
                return Err(Error::invalid(format!("vertex {i} is malformed")));
            }
        }
        for (i, e) in self.edges.iter().enumerate() {
            let bad_end = e.u >= nv || e.v.is_some_and(|v| v >= nv);
            if e.id != i || bad_end || e.dir.len() != self.n || e.len.is_some() == e.v.is_none() {
                return Err(Error::invalid(format!("edge {i} is malformed")));
            }
            if e.len.is_some_and(|l| l <= q(0)) {
                return Err(Error::invalid(format!("edge {i} has non-positive length")));
            }
        }
        if self.cycles.len() != self.g || self.cycles.iter().flatten().any(|&e| e >= self.edges.len() || self.edges[e].is_ray()) {
            return Err(Error::invalid("cycle lists do not match the genus or name missing edges"));
        }
        for t in &self.trees {
            if t.root >= self.edges.len() || t.vertex >= nv {
                return Err(Error::invalid("tree record names a missing edge or vertex"));
            }
        }
        Ok(())
    }

    /// Projection onto coordinates `(x, y)` as an SVG drawing.
    pub fn to_svg(&self, x: usize, y: usize) -> Result<String> {
        if x >= self.n || y >= self.n {
            return Err(Error::invalid(format!("projection coordinates must be < {}", self.n)));
        }
        let to_f = |v: Q| *v.numer() as f64 / *v.denom() as f64;
        let pts: Vec<(f64, f64)> = self.vertices.iter().map(|v| (to_f(v.pos[x]), to_f(v.pos[y]))).collect();
        let (mut lo_x, mut hi_x, mut lo_y, mut hi_y) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
        for &(a, b) in &pts {
            lo_x = lo_x.min(a);
            hi_x = hi_x.max(a);
            lo_y = lo_y.min(b);
            hi_y = hi_y.max(b);
        }
        let extent = (hi_x - lo_x).max(hi_y - lo_y).max(1.0);
        let ray_len = extent * 0.15;
        let (size, pad) = (600.0, 40.0);
        let scale = (size - 2.0 * pad) / (extent + 2.0 * ray_len);
        let sx = |a: f64| pad + (a - lo_x + ray_len) * scale;
        let sy = |b: f64| size - pad - (b - lo_y + ray_len) * scale;
        let mut out = format!("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\">\n");
        for e in &self.edges {
            let (a, b) = pts[e.u];
            let (c, d) = match e.v {
                Some(v) => pts[v],
                None => {
                    let (dx, dy) = (e.dir[x] as f64, e.dir[y] as f64);
                    let norm = (dx * dx + dy * dy).sqrt();
                    if norm == 0.0 {
                        continue;
                    }
                    (a + ray_len * dx / norm, b + ray_len * dy / norm)
                }
            };
            let color = match e.role {
                EdgeRole::Cycle { .. } => "black",
                EdgeRole::Bridge { .. } => "gray",
                EdgeRole::Root { .. } | EdgeRole::Spine { .. } => "blue",
                EdgeRole::Leaf { .. } | EdgeRole::Ray { .. } => "red",
            };
            out += &format!(
                "  <line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"{color}\" stroke-width=\"1.5\"/>\n",
                sx(a),
                sy(b),
                sx(c),
                sy(d)
            );
        }
        out += "</svg>\n";
        Ok(out)
    }
}

/// Chips located on the chain, used to size the realization of generic cycles.
pub(crate) fn coordinate_span(divisors: &[&ChipList]) -> Q {
    divisors
        .iter()
        .flat_map(|d| d.chips.iter())
        .filter_map(|c| match c.at {
            Location::Cycle { xi, .. } => Some(crate::rational::abs(xi)),
            Location::Bridge { .. } => None,
        })
        .max()
        .unwrap_or(q(0))
}
