//! Piecewise-linear functions on the chain and their divisors.
//!
//! Edge orientation: `Top(j)` runs `w_j → v_j` (arc positions `[0, ℓ_j]`),
//! `Bottom(j)` runs `v_j → w_j` (arc positions `[ℓ_j, ℓ_j+m_j]`) and
//! `Bridge(j)` runs `w_j → v_{j+1}`. Slopes are taken along the orientation.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{ChainOfCycles, ChipList, Location};
use crate::error::{Error, Result};
use crate::rational::{q, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum EdgeId {
    Top(usize),
    Bottom(usize),
    Bridge(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Vertex {
    V(usize),
    W(usize),
}

impl Vertex {
    pub fn location(self) -> Location {
        match self {
            Vertex::V(j) => Location::v(j),
            Vertex::W(j) => Location::w(j),
        }
    }
}

impl ChainOfCycles {
    pub fn edge_ids(&self) -> Vec<EdgeId> {
        let mut out = Vec::with_capacity(3 * self.g());
        for j in 1..=self.g() {
            out.push(EdgeId::Top(j));
            out.push(EdgeId::Bottom(j));
            if j < self.g() {
                out.push(EdgeId::Bridge(j));
            }
        }
        out
    }

    pub fn edge_len(&self, e: EdgeId) -> Q {
        match e {
            EdgeId::Top(j) => self.cycle(j).l,
            EdgeId::Bottom(j) => self.cycle(j).m,
            EdgeId::Bridge(j) => self.bridge(j),
        }
    }

    pub fn endpoints(&self, e: EdgeId) -> (Vertex, Vertex) {
        match e {
            EdgeId::Top(j) => (Vertex::W(j), Vertex::V(j)),
            EdgeId::Bottom(j) => (Vertex::V(j), Vertex::W(j)),
            EdgeId::Bridge(j) => (Vertex::W(j), Vertex::V(j + 1)),
        }
    }

    /// Location of the point at `offset` from the tail of `e`.
    pub fn point_on(&self, e: EdgeId, offset: Q) -> Location {
        match e {
            EdgeId::Top(j) => Location::at(j, self.cycle(j).xi_of_arc(offset)),
            EdgeId::Bottom(j) => {
                let c = self.cycle(j);
                Location::at(j, c.xi_of_arc(c.l + offset))
            }
            EdgeId::Bridge(j) => Location::Bridge { j, t: offset },
        }
    }

    /// Edge and offset carrying an interior point, or the vertex it coincides with.
    pub fn locate(&self, at: &Location) -> Result<Placement> {
        match at {
            Location::Cycle { j, xi } => {
                self.check_index(*j)?;
                let c = self.cycle(*j);
                let u = c.arc_of(*xi)?;
                Ok(if u == q(0) {
                    Placement::Vertex(Vertex::W(*j))
                } else if u == c.l {
                    Placement::Vertex(Vertex::V(*j))
                } else if u < c.l {
                    Placement::Edge(EdgeId::Top(*j), u)
                } else {
                    Placement::Edge(EdgeId::Bottom(*j), u - c.l)
                })
            }
            Location::Bridge { j, t } => {
                if *j == 0 || *j >= self.g() || *t < q(0) || *t > self.bridge(*j) {
                    return Err(Error::invalid(format!("bridge point ({j}, {t}) off the chain")));
                }
                Ok(if *t == q(0) {
                    Placement::Vertex(Vertex::W(*j))
                } else if *t == self.bridge(*j) {
                    Placement::Vertex(Vertex::V(j + 1))
                } else {
                    Placement::Edge(EdgeId::Bridge(*j), *t)
                })
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Placement {
    Vertex(Vertex),
    Edge(EdgeId, Q),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    /// Offset from the tail where this slope starts.
    pub start: Q,
    pub slope: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeFn {
    pub value_at_tail: Q,
    pub segments: Vec<Segment>,
}

impl EdgeFn {
    pub fn value_at(&self, offset: Q, len: Q) -> Q {
        let mut v = self.value_at_tail;
        for (i, s) in self.segments.iter().enumerate() {
            let end = self.segments.get(i + 1).map_or(len, |n| n.start);
            if offset <= s.start {
                break;
            }
            v += q(s.slope as i128) * (offset.min(end) - s.start);
        }
        v
    }

    pub fn slope_at(&self, offset: Q) -> i64 {
        self.segments
            .iter()
            .take_while(|s| s.start <= offset)
            .last()
            .map_or(0, |s| s.slope)
    }
}

/// A continuous piecewise-linear function with integer slopes on every edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PLFunction {
    pub edges: BTreeMap<EdgeId, EdgeFn>,
}

impl PLFunction {
    pub fn constant(chain: &ChainOfCycles, c: Q) -> Self {
        PLFunction {
            edges: chain
                .edge_ids()
                .into_iter()
                .map(|e| (e, EdgeFn { value_at_tail: c, segments: vec![Segment { start: q(0), slope: 0 }] }))
                .collect(),
        }
    }

    pub fn edge(&self, e: EdgeId) -> &EdgeFn {
        &self.edges[&e]
    }

    pub fn value_at(&self, chain: &ChainOfCycles, at: &Location) -> Result<Q> {
        Ok(match chain.locate(at)? {
            Placement::Vertex(v) => self.vertex_value(v),
            Placement::Edge(e, o) => self.edge(e).value_at(o, chain.edge_len(e)),
        })
    }

    pub fn vertex_value(&self, v: Vertex) -> Q {
        let e = match v {
            Vertex::W(j) => EdgeId::Top(j),
            Vertex::V(j) => EdgeId::Bottom(j),
        };
        self.edge(e).value_at_tail
    }
}

fn check_edge(e: EdgeId, f: &EdgeFn, len: Q) -> Result<()> {
    if f.segments.first().map(|s| s.start) != Some(q(0)) {
        return Err(Error::invalid(format!("{e:?}: first segment must start at 0")));
    }
    for w in f.segments.windows(2) {
        if w[1].start <= w[0].start {
            return Err(Error::invalid(format!("{e:?}: breakpoints must increase")));
        }
    }
    if f.segments.last().is_some_and(|s| s.start >= len) {
        return Err(Error::invalid(format!("{e:?}: breakpoint beyond the edge")));
    }
    Ok(())
}

/// Divisor of `f`: the order at a point is the sum of incoming slopes.
pub fn pl_divisor(chain: &ChainOfCycles, f: &PLFunction) -> Result<ChipList> {
    let mut out = ChipList::new();
    let mut vertex_value: BTreeMap<Vertex, Q> = BTreeMap::new();
    let mut vertex_ord: BTreeMap<Vertex, i64> = BTreeMap::new();
    for e in chain.edge_ids() {
        let ef = f
            .edges
            .get(&e)
            .ok_or_else(|| Error::invalid(format!("function undefined on {e:?}")))?;
        let len = chain.edge_len(e);
        check_edge(e, ef, len)?;
        let (tail, head) = chain.endpoints(e);
        let head_value = ef.value_at(len, len);
        for (v, val) in [(tail, ef.value_at_tail), (head, head_value)] {
            if let Some(prev) = vertex_value.insert(v, val) {
                if prev != val {
                    return Err(Error::invalid(format!("function discontinuous at {v:?}")));
                }
            }
        }
        *vertex_ord.entry(tail).or_default() -= ef.segments[0].slope;
        *vertex_ord.entry(head).or_default() += ef.segments.last().unwrap().slope;
        for w in ef.segments.windows(2) {
            let ord = w[0].slope - w[1].slope;
            if ord != 0 {
                out.push(chain.point_on(e, w[1].start), ord);
            }
        }
    }
    for (v, ord) in vertex_ord {
        if ord != 0 {
            out.push(v.location(), ord);
        }
    }
    out.simplified(chain)
}

/// A function `f` with `div(f) = delta`, normalized by `f(v_1) = 0`.
///
/// Fails with [`Error::NotPrincipal`] when no such function exists. Generic
/// cycles must be realized long enough to hold every coordinate of `delta`.
pub fn principal_witness(chain: &ChainOfCycles, delta: &ChipList) -> Result<PLFunction> {
    let delta = delta.simplified(chain)?;
    if delta.degree() != 0 {
        return Err(Error::NotPrincipal(format!("degree {} is not zero", delta.degree())));
    }
    let g = chain.g();
    // Chips by cycle arc position, by bridge offset, with per-part totals.
    let mut on_cycle: Vec<BTreeMap<Q, i64>> = vec![BTreeMap::new(); g + 1];
    let mut on_bridge: Vec<BTreeMap<Q, i64>> = vec![BTreeMap::new(); g + 1];
    let mut cycle_total = vec![0i64; g + 2];
    let mut bridge_total = vec![0i64; g + 2];
    for c in &delta.chips {
        match &c.at {
            Location::Cycle { j, xi } => {
                let u = chain.cycle(*j).arc_of(*xi)?;
                *on_cycle[*j].entry(u).or_default() += c.mult;
                cycle_total[*j] += c.mult;
            }
            Location::Bridge { j, t } => {
                *on_bridge[*j].entry(*t).or_default() += c.mult;
                bridge_total[*j] += c.mult;
            }
        }
    }
    // right_of_cycle[j] = Δ on cycles > j and bridges >= j.
    let mut right_of_cycle = vec![0i64; g + 2];
    for j in (1..g).rev() {
        right_of_cycle[j] = right_of_cycle[j + 1] + cycle_total[j + 1] + bridge_total[j];
    }

    let mut edges = BTreeMap::new();
    let mut value_v = q(0);
    for j in 1..=g {
        let cyc = chain.cycle(j);
        let (l, c) = (cyc.l, cyc.circumference());
        // Bridge j slopes, read from w_j toward v_{j+1}.
        let bridge_segments = (j < g).then(|| {
            let mut slope = right_of_cycle[j];
            let mut segs = vec![Segment { start: q(0), slope }];
            for (t, m) in &on_bridge[j] {
                slope -= m;
                segs.push(Segment { start: *t, slope });
            }
            segs
        });
        let into_w = bridge_segments.as_ref().map_or(0, |s| -s[0].slope);
        let into_v = if j > 1 { right_of_cycle[j] + cycle_total[j] } else { 0 };

        // Jumps σ_after − σ_before at each event in (0, C); slope after 0 is σ0 + 0.
        let mut events: BTreeMap<Q, i64> = BTreeMap::new();
        for (u, m) in &on_cycle[j] {
            if *u != q(0) {
                *events.entry(*u).or_default() -= m;
            }
        }
        *events.entry(l).or_default() += into_v;
        let mut offsets = vec![(q(0), 0i64)];
        let mut acc = 0i64;
        for (u, jump) in &events {
            acc += jump;
            offsets.push((*u, acc));
        }
        let mut integral = q(0);
        for (i, (start, off)) in offsets.iter().enumerate() {
            let end = offsets.get(i + 1).map_or(c, |n| n.0);
            integral += q(*off as i128) * (end - *start);
        }
        let sigma0 = -integral / c;
        if !sigma0.is_integer() {
            return Err(Error::NotPrincipal(format!(
                "no integer slope closes cycle {j} (needs {sigma0})"
            )));
        }
        let closing = offsets.last().unwrap().1 - on_cycle[j].get(&q(0)).copied().unwrap_or(0) + into_w;
        if closing != 0 {
            return Err(Error::internal(format!("cycle {j} slopes do not close ({closing})")));
        }
        let sigma0 = sigma0.to_integer() as i64;
        let mut top = Vec::new();
        let mut bottom = Vec::new();
        for (start, off) in &offsets {
            let slope = sigma0 + off;
            if *start < l {
                top.push(Segment { start: *start, slope });
            } else {
                bottom.push(Segment { start: *start - l, slope });
            }
        }
        if bottom.first().map(|s| s.start) != Some(q(0)) {
            unreachable!("v_j is always an event");
        }
        let top_fn = EdgeFn { value_at_tail: q(0), segments: merge(top) };
        let rise_top = top_fn.value_at(l, l);
        // value at w_j from value at v_j.
        let value_w = value_v - rise_top;
        let top_fn = EdgeFn { value_at_tail: value_w, ..top_fn };
        let bottom_fn = EdgeFn { value_at_tail: value_v, segments: merge(bottom) };
        edges.insert(EdgeId::Top(j), top_fn);
        edges.insert(EdgeId::Bottom(j), bottom_fn);
        if let Some(segs) = bridge_segments {
            let bf = EdgeFn { value_at_tail: value_w, segments: merge(segs) };
            value_v = bf.value_at(chain.bridge(j), chain.bridge(j));
            edges.insert(EdgeId::Bridge(j), bf);
        }
    }
    Ok(PLFunction { edges })
}

fn merge(segs: Vec<Segment>) -> Vec<Segment> {
    let mut out: Vec<Segment> = Vec::with_capacity(segs.len());
    for s in segs {
        if out.last().is_some_and(|p| p.slope == s.slope) {
            continue;
        }
        out.push(s);
    }
    out
}
