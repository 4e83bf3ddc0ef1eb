//! Conformal bisubdivisions of θ and the constructions that produce them.
//!
//! A witness is three internally disjoint odd paths between two branch
//! vertices together with a perfect matching of everything the paths miss.
//! Constructions work on edge ids, which are shared between a graph and its
//! contractions and marked components, so lifting a witness amounts to
//! taking unions of edge sets and reassembling the paths.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Multigraph, VertexSet};
use crate::matching::{is_perfect_matching_of, pm_with_forced_and_forbidden, Matching};
use crate::oracle::oracle_theta;
use crate::structure::{is_barrier, marked_components, MarkedComponent, TwoSeparation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaWitness {
    pub x: usize,
    pub y: usize,
    /// Each path as its edges in order from `x` to `y`.
    pub paths: Vec<Vec<EdgeId>>,
    pub complement_matching: Vec<EdgeId>,
}

impl ThetaWitness {
    pub fn edges(&self) -> Vec<EdgeId> {
        let mut out: Vec<EdgeId> = self.paths.iter().flatten().copied().collect();
        out.sort_unstable();
        out
    }

    /// Vertices of the bisubdivision, given the graph it lives in.
    pub fn vertices(&self, g: &Multigraph) -> VertexSet {
        self.edges()
            .iter()
            .filter_map(|&id| g.edge(id))
            .flat_map(|e| [e.u, e.v])
            .collect()
    }

    /// `true` for edges at odd positions (1st, 3rd, ...) along their path.
    pub fn odd_parity(&self, id: EdgeId) -> Option<bool> {
        self.paths
            .iter()
            .find_map(|p| p.iter().position(|&e| e == id))
            .map(|i| i % 2 == 0)
    }
}

/// Follows `edges` from `start`; the visited vertices, or `None` if the
/// sequence is not a walk of `g`.
pub fn walk(g: &Multigraph, start: usize, edges: &[EdgeId]) -> Option<Vec<usize>> {
    let mut at = start;
    let mut out = vec![start];
    for &id in edges {
        let e = g.edge(id)?;
        if !e.touches(at) {
            return None;
        }
        at = e.other(at);
        out.push(at);
    }
    Some(out)
}

/// Every reason `w` fails to be a conformal bisubdivision of θ in `g`.
pub fn theta_witness_problems(g: &Multigraph, w: &ThetaWitness) -> Vec<String> {
    let n = g.order();
    let mut problems = Vec::new();
    if w.x >= n || w.y >= n {
        problems.push(format!("branch vertices {} and {} out of range", w.x, w.y));
        return problems;
    }
    if w.x == w.y {
        problems.push("branch vertices coincide".into());
    }
    if w.paths.len() != 3 {
        problems.push(format!("expected three paths, found {}", w.paths.len()));
    }
    let mut used_edge = std::collections::HashSet::new();
    let mut in_h = vec![false; n];
    in_h[w.x] = true;
    in_h[w.y] = true;
    for (i, p) in w.paths.iter().enumerate() {
        if p.len() % 2 == 0 {
            problems.push(format!("path {i} has even length {}", p.len()));
        }
        for id in p {
            if !used_edge.insert(*id) {
                problems.push(format!("edge {id} used twice"));
            }
        }
        let Some(vs) = walk(g, w.x, p) else {
            problems.push(format!("path {i} is not a walk from {}", w.x));
            continue;
        };
        if vs.last() != Some(&w.y) {
            problems.push(format!("path {i} does not end at {}", w.y));
        }
        for &v in &vs[1..vs.len() - 1] {
            if in_h[v] {
                problems.push(format!("vertex {v} repeated across or within paths"));
            }
            in_h[v] = true;
        }
    }
    let target: Vec<bool> = in_h.iter().map(|&h| !h).collect();
    if !is_perfect_matching_of(g, &w.complement_matching, &target) {
        problems.push("complement matching is not a perfect matching of G - V(H)".into());
    }
    problems
}

pub fn verify_theta_witness(g: &Multigraph, w: &ThetaWitness) -> bool {
    theta_witness_problems(g, w).is_empty()
}

/// Reads a bisubdivision of θ off its edge set.
pub fn assemble_theta(g: &Multigraph, edges: &[EdgeId], complement: Matching) -> Result<ThetaWitness> {
    let mut edges = edges.to_vec();
    edges.sort_unstable();
    edges.dedup();
    let mut deg = vec![0usize; g.order()];
    let mut at: Vec<Vec<EdgeId>> = vec![Vec::new(); g.order()];
    for &id in &edges {
        let e = g.edge_checked(id)?;
        for w in [e.u, e.v] {
            deg[w] += 1;
            at[w].push(id);
        }
    }
    let branch: Vec<usize> = (0..g.order()).filter(|&v| deg[v] == 3).collect();
    if branch.len() != 2 || deg.iter().any(|&d| d != 0 && d != 2 && d != 3) {
        return Err(Error::InvalidWitness("edge set is not a subdivision of θ".into()));
    }
    let (x, y) = (branch[0], branch[1]);
    let mut paths = Vec::new();
    for &first in &at[x] {
        let mut path = vec![first];
        let mut cur = g.edge(first).expect("checked").other(x);
        let mut prev = first;
        while cur != y {
            if cur == x {
                return Err(Error::InvalidWitness("path returns to its start".into()));
            }
            let next = *at[cur].iter().find(|&&e| e != prev).expect("degree two");
            path.push(next);
            cur = g.edge(next).expect("checked").other(cur);
            prev = next;
        }
        paths.push(path);
    }
    if paths.iter().map(Vec::len).sum::<usize>() != edges.len() {
        return Err(Error::InvalidWitness("edge set has pieces off the three paths".into()));
    }
    let mut complement = complement;
    complement.sort_unstable();
    let w = ThetaWitness { x, y, paths, complement_matching: complement };
    let problems = theta_witness_problems(g, &w);
    if !problems.is_empty() {
        return Err(Error::InvalidWitness(problems.join("; ")));
    }
    Ok(w)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConformalCycle {
    /// `edges[i]` joins `vertices[i]` and `vertices[i + 1]` (cyclically).
    pub vertices: Vec<usize>,
    pub edges: Vec<EdgeId>,
    /// Perfect matching of `G - V(C)`.
    pub complement: Matching,
}

fn matched_at(g: &Multigraph, m: &[EdgeId]) -> Vec<Option<EdgeId>> {
    let mut at = vec![None; g.order()];
    for &id in m {
        let e = g.edge(id).expect("matching edge");
        at[e.u] = Some(id);
        at[e.v] = Some(id);
    }
    at
}

/// The cycle of `m1 Δ m2` through `start`, leaving along `first ∈ m1`.
/// The complement agrees with `m1` off the cycle.
fn alternating_cycle(g: &Multigraph, m1: &[EdgeId], m2: &[EdgeId], start: usize, first: EdgeId) -> ConformalCycle {
    let at1 = matched_at(g, m1);
    let at2 = matched_at(g, m2);
    let mut vertices = vec![start];
    let mut edges = vec![first];
    let mut cur = g.edge(first).expect("matching edge").other(start);
    let mut use_second = true;
    while cur != start {
        vertices.push(cur);
        let id = if use_second { at2[cur] } else { at1[cur] }.expect("perfect matchings cover every vertex");
        edges.push(id);
        cur = g.edge(id).expect("matching edge").other(cur);
        use_second = !use_second;
    }
    let on_cycle = VertexSet::new(vertices.iter().copied()).mask(g.order());
    let complement = m1
        .iter()
        .copied()
        .filter(|&id| {
            let e = g.edge(id).expect("matching edge");
            !on_cycle[e.u]
        })
        .collect();
    ConformalCycle { vertices, edges, complement }
}

fn pm_containing(g: &Multigraph, e: EdgeId) -> Result<Matching> {
    pm_with_forced_and_forbidden(g, &[e], &[])?
        .ok_or_else(|| Error::NotMatchingCovered(format!("edge {e} lies in no perfect matching")))
}

/// A conformal cycle through two adjacent edges, from the symmetric
/// difference of a perfect matching containing each. The cycle starts at the
/// shared vertex with `e1` and ends with `e2`.
pub fn conformal_cycle_through_adjacent(g: &Multigraph, e1: EdgeId, e2: EdgeId) -> Result<ConformalCycle> {
    let a = *g.edge_checked(e1)?;
    let b = *g.edge_checked(e2)?;
    if e1 == e2 || !a.shares_vertex(&b) {
        return Err(Error::NotAdjacent(e1, e2));
    }
    let shared = if b.touches(a.u) { a.u } else { a.v };
    cycle_at(g, shared, e1, e2)
}

fn cycle_at(g: &Multigraph, shared: usize, e1: EdgeId, e2: EdgeId) -> Result<ConformalCycle> {
    let m1 = pm_containing(g, e1)?;
    let m2 = pm_containing(g, e2)?;
    Ok(alternating_cycle(g, &m1, &m2, shared, e1))
}

fn check_claw(g: &Multigraph, v: usize, claw: [EdgeId; 3]) -> Result<()> {
    for id in claw {
        if !g.edge_checked(id)?.touches(v) {
            return Err(Error::InvalidWitness(format!("edge {id} is not incident with {v}")));
        }
    }
    if claw[0] == claw[1] || claw[0] == claw[2] || claw[1] == claw[2] {
        return Err(Error::InvalidWitness("claw edges must be distinct".into()));
    }
    Ok(())
}

/// In a bipartite matching covered graph: a conformal bisubdivision of θ
/// containing three given edges at `v`.
pub fn theta_through_claw_bipartite(g: &Multigraph, v: usize, claw: [EdgeId; 3]) -> Result<ThetaWitness> {
    if !g.is_bipartite() {
        return Err(Error::NotBipartite);
    }
    check_claw(g, v, claw)?;
    let [e1, e2, e3] = claw;
    let cycle = cycle_at(g, v, e1, e2)?;
    let on_cycle = VertexSet::new(cycle.vertices.iter().copied()).mask(g.order());
    // switch the cycle to its other half; v is now covered by e2
    let mut m_star: Matching = cycle.complement.clone();
    m_star.extend(cycle.edges.iter().skip(1).step_by(2));
    let m3 = pm_containing(g, e3)?;
    let at_star = matched_at(g, &m_star);
    let at3 = matched_at(g, &m3);
    let mut q = vec![e3];
    let mut cur = g.edge(e3).expect("checked").other(v);
    while !on_cycle[cur] {
        let s = at_star[cur].expect("perfect matching");
        q.push(s);
        cur = g.edge(s).expect("edge").other(cur);
        let t = at3[cur].expect("perfect matching");
        q.push(t);
        cur = g.edge(t).expect("edge").other(cur);
    }
    let complement: Matching = cycle.complement.iter().copied().filter(|id| !q.contains(id)).collect();
    let mut h = cycle.edges.clone();
    h.extend(&q);
    assemble_theta(g, &h, complement)
}

/// Where the third edge at a contraction vertex should come from when a
/// lifted witness crosses a tight cut three times.
type ClawAtContraction<'a> = dyn Fn(&Multigraph, usize, [EdgeId; 3]) -> Result<ThetaWitness> + 'a;

/// Lifts a witness of `G / (V - X)` (from [`Multigraph::contract_shore`])
/// to `G`, where `∂(X)` is a tight cut.
fn lift_through_cut(
    g: &Multigraph,
    shore: &VertexSet,
    inner: &ThetaWitness,
    claw: &ClawAtContraction<'_>,
) -> Result<ThetaWitness> {
    let near = g.contract_shore(shore)?;
    let problems = theta_witness_problems(&near.graph, inner);
    if !problems.is_empty() {
        return Err(Error::InvalidWitness(problems.join("; ")));
    }
    let far = g.contract_shore(&shore.complement(g.order()))?;
    let z = near.contracted;
    let h1 = inner.edges();
    let crossing: Vec<EdgeId> =
        h1.iter().copied().filter(|&id| near.graph.edge(id).expect("edge").touches(z)).collect();
    let mut h = h1.clone();
    let mut m: Matching = inner.complement_matching.clone();
    match crossing.len() {
        0 => {
            let f = *inner
                .complement_matching
                .iter()
                .find(|&&id| near.graph.edge(id).expect("edge").touches(z))
                .ok_or_else(|| Error::InvalidWitness("complement misses the contraction vertex".into()))?;
            let m2 = pm_containing(&far.graph, f)?;
            m.extend(m2.into_iter().filter(|&id| id != f));
        }
        2 => {
            let cycle = cycle_at(&far.graph, far.contracted, crossing[0], crossing[1])?;
            h.extend(cycle.edges.iter().filter(|id| !crossing.contains(id)));
            m.extend(cycle.complement);
        }
        3 => {
            let w2 = claw(&far.graph, far.contracted, [crossing[0], crossing[1], crossing[2]])?;
            h.extend(w2.edges().into_iter().filter(|id| !crossing.contains(id)));
            m.extend(w2.complement_matching);
        }
        k => return Err(Error::InvalidWitness(format!("witness crosses the cut {k} times"))),
    }
    assemble_theta(g, &h, m)
}

/// Three edges at `z`, an isolated vertex of `G - B`, extended to a
/// conformal bisubdivision of θ. Nontrivial components of `G - B` are shrunk
/// one at a time until the graph is bipartite, then the witness is carried
/// back out through each shrunk component.
pub fn theta_through_claw_barrier(g: &Multigraph, b: &VertexSet, z: usize, claw: [EdgeId; 3]) -> Result<ThetaWitness> {
    if !is_barrier(g, b) {
        return Err(Error::NotABarrier(b.as_slice().to_vec()));
    }
    if b.contains(z) || g.incident(z).any(|(w, _)| !b.contains(w)) {
        return Err(Error::NotIsolated(z));
    }
    check_claw(g, z, claw)?;
    let comps = g.components_without(&b.mask(g.order()));
    let Some(big) = comps.into_iter().find(|c| c.len() > 1) else {
        return theta_through_claw_bipartite(g, z, claw);
    };
    let component = VertexSet::from(big);
    let keep = component.complement(g.order());
    let shrunk = g.contract_shore(&keep)?;
    let b_small: VertexSet = b.iter().map(|v| shrunk.to_new[v]).collect();
    let inner = theta_through_claw_barrier(&shrunk.graph, &b_small, shrunk.to_new[z], claw)?;
    lift_through_cut(g, &keep, &inner, &|_, v, _| Err(Error::InvalidWitness(format!(
        "contraction vertex {v} became a branch vertex"
    ))))
}

/// Lifts a witness of `G / (V - V(L))` to `G`, for a component `L` of
/// `G - B`.
pub fn lift_witness_barrier(g: &Multigraph, b: &VertexSet, component: &VertexSet, w: &ThetaWitness) -> Result<ThetaWitness> {
    if !is_barrier(g, b) {
        return Err(Error::NotABarrier(b.as_slice().to_vec()));
    }
    let far_shore = component.complement(g.order());
    let far = g.contract_shore(&far_shore)?;
    let b_far: VertexSet = b.iter().map(|v| far.to_new[v]).collect();
    lift_through_cut(g, component, w, &|graph, v, claw| theta_through_claw_barrier(graph, &b_far, v, claw))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OddPath {
    /// Edges in order from `u` to `v`.
    pub edges: Vec<EdgeId>,
    /// Perfect matching of `L - V(P)`.
    pub complement: Matching,
}

fn odd_path_in(marked: &MarkedComponent, s: &TwoSeparation) -> Result<OddPath> {
    let (lu, lv) = marked.ends(s);
    let graph = &marked.graph;
    // an edge from u into the component; uv edges of G would close a 2-cycle
    let other = graph
        .incident(lu)
        .filter(|&(w, _)| w != lv)
        .map(|(_, e)| e.id)
        .min()
        .ok_or_else(|| Error::NotMatchingCovered("marked component has a pendant marker".into()))?;
    let cycle = cycle_at(graph, lu, marked.marker, other)?;
    // cycle = marker, ..., other: drop the marker and read it back from u
    let mut edges: Vec<EdgeId> = cycle.edges[1..].to_vec();
    edges.reverse();
    Ok(OddPath { edges, complement: cycle.complement })
}

/// A conformal odd `uv`-path through the `index`-th component of `G - S`.
pub fn conformal_odd_path(g: &Multigraph, s: &TwoSeparation, index: usize) -> Result<OddPath> {
    let marked = marked_components(g, s)?;
    let m = marked.get(index).ok_or(Error::NotATwoSeparation(s.u, s.v))?;
    odd_path_in(m, s)
}

/// Perfect matching of a component on its own: one containing the marker,
/// with the marker removed.
fn component_matching(marked: &MarkedComponent) -> Result<Matching> {
    let m = pm_containing(&marked.graph, marked.marker)?;
    Ok(m.into_iter().filter(|&id| id != marked.marker).collect())
}

/// Perfect matching of the component plus `u` and `v`, avoiding the marker.
fn component_with_ends_matching(marked: &MarkedComponent) -> Result<Matching> {
    pm_with_forced_and_forbidden(&marked.graph, &[], &[marked.marker])?
        .ok_or_else(|| Error::NotMatchingCovered("marker edge is the only way to match".into()))
}

/// Lifts a witness of the `index`-th marked component to `G`.
pub fn lift_witness_2sep(g: &Multigraph, s: &TwoSeparation, index: usize, w: &ThetaWitness) -> Result<ThetaWitness> {
    let marked = marked_components(g, s)?;
    let own = marked.get(index).ok_or(Error::NotATwoSeparation(s.u, s.v))?;
    let problems = theta_witness_problems(&own.graph, w);
    if !problems.is_empty() {
        return Err(Error::InvalidWitness(problems.join("; ")));
    }
    let marker = own.marker;
    let mut h = w.edges();
    let mut m: Matching = w.complement_matching.clone();
    let others: Vec<&MarkedComponent> = marked.iter().enumerate().filter(|&(i, _)| i != index).map(|(_, c)| c).collect();
    if h.contains(&marker) {
        let path = odd_path_in(others[0], s)?;
        h.retain(|&id| id != marker);
        h.extend(&path.edges);
        m.extend(path.complement);
        for c in &others[1..] {
            m.extend(component_matching(c)?);
        }
    } else if m.contains(&marker) {
        m.retain(|&id| id != marker);
        m.extend(component_with_ends_matching(others[0])?);
        for c in &others[1..] {
            m.extend(component_matching(c)?);
        }
    } else {
        for c in &others {
            m.extend(component_matching(c)?);
        }
    }
    assemble_theta(g, &h, m)
}

/// Three components at a 2-separation give three odd `uv`-paths.
pub fn theta_from_three_components(g: &Multigraph, s: &TwoSeparation) -> Result<ThetaWitness> {
    let marked = marked_components(g, s)?;
    if marked.len() < 3 {
        return Err(Error::InvalidWitness("fewer than three components".into()));
    }
    let mut h = Vec::new();
    let mut m = Vec::new();
    for (i, c) in marked.iter().enumerate() {
        if i < 3 {
            let p = odd_path_in(c, s)?;
            h.extend(p.edges);
            m.extend(p.complement);
        } else {
            m.extend(component_matching(c)?);
        }
    }
    assemble_theta(g, &h, m)
}

/// Two parallel edges plus an edge leaving one of their ends: a conformal
/// cycle through the latter and one parallel edge, closed up by the other.
pub fn theta_from_parallel_pair(g: &Multigraph) -> Result<ThetaWitness> {
    for e in g.edges() {
        let twins = g.edges_between(e.u, e.v);
        if twins.len() < 2 || twins[0] != e.id {
            continue;
        }
        for (a, b) in [(e.u, e.v), (e.v, e.u)] {
            let Some(leave) = g.incident(a).filter(|&(w, _)| w != b).map(|(_, f)| f.id).min() else { continue };
            let cycle = cycle_at(g, a, twins[0], leave)?;
            let mut h = cycle.edges.clone();
            h.push(twins[1]);
            return assemble_theta(g, &h, cycle.complement);
        }
    }
    Err(Error::InvalidWitness("no parallel pair with a third neighbour".into()))
}

/// A witness for a brick or brace that is not one of the four θ-free base
/// graphs. Braces use the claw construction; bricks fall back on exhaustive
/// search, which is skipped above `search_cap` vertices.
pub fn find_theta_witness_in_nondecomposable(g: &Multigraph, search_cap: usize) -> Result<Option<ThetaWitness>> {
    if g.order() == 2 {
        if g.size() < 3 {
            return Ok(None);
        }
        let ids: Vec<EdgeId> = g.edge_ids().take(3).collect();
        return assemble_theta(g, &ids, Vec::new()).map(Some);
    }
    if !g.is_simple() {
        return theta_from_parallel_pair(g).map(Some);
    }
    if g.is_bipartite() {
        let Some(v) = (0..g.order()).find(|&v| g.degree(v) >= 3) else { return Ok(None) };
        let mut ids: Vec<EdgeId> = g.incident(v).map(|(_, e)| e.id).collect();
        ids.sort_unstable();
        return theta_through_claw_bipartite(g, v, [ids[0], ids[1], ids[2]]).map(Some);
    }
    if g.order() > search_cap {
        return Ok(None);
    }
    oracle_theta(g, search_cap)
}
