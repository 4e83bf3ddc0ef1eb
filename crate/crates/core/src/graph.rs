//! Loopless undirected multigraphs with stable edge identities.
//!
//! Vertices are always `0..n`. Edges carry an [`EdgeId`] that survives
//! contraction, induced subgraphs and K2-sums, so matchings and witnesses
//! computed on a derived graph can be read back in the graph it came from.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub usize);

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub id: EdgeId,
    pub u: usize,
    pub v: usize,
}

impl Edge {
    /// The endpoint opposite to `w`. `w` must be an endpoint.
    pub fn other(&self, w: usize) -> usize {
        debug_assert!(self.u == w || self.v == w);
        if self.u == w {
            self.v
        } else {
            self.u
        }
    }

    pub fn touches(&self, w: usize) -> bool {
        self.u == w || self.v == w
    }

    pub fn shares_vertex(&self, other: &Edge) -> bool {
        self.touches(other.u) || self.touches(other.v)
    }
}

/// A sorted, duplicate-free set of vertex ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(vertices: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = vertices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn min(&self) -> Option<usize> {
        self.0.first().copied()
    }

    /// `V(G) - self` for a graph of order `n`.
    pub fn complement(&self, n: usize) -> VertexSet {
        let mask = self.mask(n);
        VertexSet((0..n).filter(|&v| !mask[v]).collect())
    }

    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for &v in &self.0 {
            if v < n {
                mask[v] = true;
            }
        }
        mask
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::new(iter)
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(v: Vec<usize>) -> Self {
        VertexSet::new(v)
    }
}

/// The cut `∂(X)` of a shore `X`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cut {
    pub shore: VertexSet,
    pub edges: Vec<EdgeId>,
    /// Both shores have odd cardinality.
    pub odd: bool,
    /// One of the shores is a single vertex.
    pub trivial: bool,
}

/// A subgraph carried over into fresh labels `0..k`, with the way back.
#[derive(Clone, Debug)]
pub struct Piece {
    pub graph: Multigraph,
    /// New vertex -> vertex of the parent graph.
    pub to_original: Vec<usize>,
}

/// `G / (X̄ -> x̄)`: the kept shore relabelled in ascending order followed by
/// the contraction vertex.
#[derive(Clone, Debug)]
pub struct Contraction {
    pub graph: Multigraph,
    pub contracted: usize,
    /// Parent vertex -> new vertex (vertices of X̄ map to `contracted`).
    pub to_new: Vec<usize>,
    /// New vertex -> parent vertex; `None` for the contraction vertex.
    pub to_original: Vec<Option<usize>>,
    pub kept: VertexSet,
}

#[derive(Clone, Debug, Default)]
pub struct Multigraph {
    n: usize,
    edges: Vec<Edge>,
    /// Per vertex: (neighbour, index into `edges`).
    adj: Vec<Vec<(usize, usize)>>,
    index: HashMap<EdgeId, usize>,
}

impl PartialEq for Multigraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Multigraph {}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<(usize, usize, EdgeId)>,
}

impl Serialize for Multigraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphRepr {
            n: self.n,
            edges: self.edges.iter().map(|e| (e.u, e.v, e.id)).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Multigraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = GraphRepr::deserialize(d)?;
        let mut g = Multigraph::new(repr.n);
        for (u, v, id) in repr.edges {
            g.add_edge_with_id(u, v, id).map_err(serde::de::Error::custom)?;
        }
        Ok(g)
    }
}

impl Multigraph {
    pub fn new(n: usize) -> Self {
        Multigraph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
            index: HashMap::new(),
        }
    }

    /// Builds a graph whose edge ids follow the order of `pairs`.
    pub fn from_edges(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut g = Multigraph::new(n);
        for &(u, v) in pairs {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.iter().map(|e| e.id)
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        self.index.get(&id).map(|&i| &self.edges[i])
    }

    pub fn edge_checked(&self, id: EdgeId) -> Result<&Edge> {
        self.edge(id).ok_or(Error::UnknownEdge(id))
    }

    pub fn has_edge(&self, id: EdgeId) -> bool {
        self.index.contains_key(&id)
    }

    /// Position of an edge in [`Multigraph::edges`].
    pub fn edge_index(&self, id: EdgeId) -> Option<usize> {
        self.index.get(&id).copied()
    }

    /// Incident edges of `v` as (neighbour, edge) pairs, in insertion order.
    pub fn incident(&self, v: usize) -> impl Iterator<Item = (usize, &Edge)> + '_ {
        self.adj[v].iter().map(move |&(w, i)| (w, &self.edges[i]))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Degrees in non-increasing order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    pub fn max_edge_id(&self) -> Option<EdgeId> {
        self.edges.iter().map(|e| e.id).max()
    }

    /// Smallest id strictly above every id in use.
    pub fn fresh_edge_id(&self) -> EdgeId {
        EdgeId(self.max_edge_id().map_or(0, |e| e.0 + 1))
    }

    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.n += 1;
        self.n - 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<EdgeId> {
        let id = self.fresh_edge_id();
        self.add_edge_with_id(u, v, id)?;
        Ok(id)
    }

    pub fn add_edge_with_id(&mut self, u: usize, v: usize, id: EdgeId) -> Result<()> {
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::VertexOutOfRange { vertex: w, order: self.n });
            }
        }
        if u == v {
            return Err(Error::Loop(u));
        }
        if self.index.contains_key(&id) {
            return Err(Error::DuplicateEdgeId(id));
        }
        let i = self.edges.len();
        self.edges.push(Edge { id, u, v });
        self.adj[u].push((v, i));
        self.adj[v].push((u, i));
        self.index.insert(id, i);
        Ok(())
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        self.adj[u].iter().filter(|&&(w, _)| w == v).count()
    }

    pub fn edges_between(&self, u: usize, v: usize) -> Vec<EdgeId> {
        let mut ids: Vec<EdgeId> = self.adj[u]
            .iter()
            .filter(|&&(w, _)| w == v)
            .map(|&(_, i)| self.edges[i].id)
            .collect();
        ids.sort_unstable();
        ids
    }

    pub fn are_adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].iter().any(|&(w, _)| w == v)
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.edges.iter().all(|e| seen.insert((e.u.min(e.v), e.u.max(e.v))))
    }

    /// A proper 2-colouring if one exists (`false` on the side of vertex 0
    /// of each component).
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut color: Vec<Option<bool>> = vec![None; self.n];
        for s in 0..self.n {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                let c = color[v].unwrap();
                for &(w, _) in &self.adj[v] {
                    match color[w] {
                        None => {
                            color[w] = Some(!c);
                            stack.push(w);
                        }
                        Some(cw) if cw == c => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(|c| c.unwrap()).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Components of `G - removed`, each sorted, ordered by least vertex.
    pub fn components_without(&self, removed: &[bool]) -> Vec<Vec<usize>> {
        let mut seen = removed.to_vec();
        seen.resize(self.n, false);
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &(w, _) in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_without(&[])
    }

    pub fn components_minus(&self, removed: &[usize]) -> Vec<Vec<usize>> {
        let mut mask = vec![false; self.n];
        for &v in removed {
            mask[v] = true;
        }
        self.components_without(&mask)
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.components().len() == 1
    }

    /// More than three vertices and no separating set of at most two vertices.
    pub fn is_three_connected(&self) -> bool {
        if self.n < 4 || !self.is_connected() {
            return false;
        }
        let mut mask = vec![false; self.n];
        for a in 0..self.n {
            mask[a] = true;
            if self.components_without(&mask).len() != 1 {
                return false;
            }
            for b in a + 1..self.n {
                mask[b] = true;
                let split = self.components_without(&mask).len() != 1;
                mask[b] = false;
                if split {
                    return false;
                }
            }
            mask[a] = false;
        }
        true
    }

    /// Number of edges with both ends in `x`.
    pub fn edges_inside(&self, x: &VertexSet) -> usize {
        let mask = x.mask(self.n);
        self.edges.iter().filter(|e| mask[e.u] && mask[e.v]).count()
    }

    fn check_shore(&self, x: &VertexSet) -> Result<()> {
        if let Some(&v) = x.as_slice().iter().find(|&&v| v >= self.n) {
            return Err(Error::VertexOutOfRange { vertex: v, order: self.n });
        }
        if x.is_empty() || x.len() >= self.n {
            return Err(Error::ImproperShore);
        }
        Ok(())
    }

    pub fn cut(&self, x: &VertexSet) -> Result<Cut> {
        self.check_shore(x)?;
        let mask = x.mask(self.n);
        let mut edges: Vec<EdgeId> =
            self.edges.iter().filter(|e| mask[e.u] != mask[e.v]).map(|e| e.id).collect();
        edges.sort_unstable();
        let k = x.len();
        Ok(Cut {
            shore: x.clone(),
            edges,
            odd: k % 2 == 1 && (self.n - k) % 2 == 1,
            trivial: k == 1 || self.n - k == 1,
        })
    }

    /// Shrinks `X̄ = V - x` to a single new vertex. Edges inside `X̄` vanish;
    /// every other edge keeps its id.
    pub fn contract_shore(&self, x: &VertexSet) -> Result<Contraction> {
        self.check_shore(x)?;
        let mask = x.mask(self.n);
        let contracted = x.len();
        let mut to_new = vec![contracted; self.n];
        let mut to_original = Vec::with_capacity(contracted + 1);
        for (i, v) in x.iter().enumerate() {
            to_new[v] = i;
            to_original.push(Some(v));
        }
        to_original.push(None);
        let mut g = Multigraph::new(contracted + 1);
        for e in &self.edges {
            if mask[e.u] || mask[e.v] {
                g.add_edge_with_id(to_new[e.u], to_new[e.v], e.id)?;
            }
        }
        Ok(Contraction { graph: g, contracted, to_new, to_original, kept: x.clone() })
    }

    /// The subgraph induced by `vertices`, relabelled in ascending order.
    pub fn induced(&self, vertices: &VertexSet) -> Piece {
        let mut to_new = vec![usize::MAX; self.n];
        for (i, v) in vertices.iter().enumerate() {
            to_new[v] = i;
        }
        let mut g = Multigraph::new(vertices.len());
        for e in &self.edges {
            if to_new[e.u] != usize::MAX && to_new[e.v] != usize::MAX {
                g.add_edge_with_id(to_new[e.u], to_new[e.v], e.id)
                    .expect("induced edges are valid");
            }
        }
        Piece { graph: g, to_original: vertices.as_slice().to_vec() }
    }

    /// `G - e`.
    pub fn without_edge(&self, id: EdgeId) -> Result<Multigraph> {
        self.edge_checked(id)?;
        self.retain_edges(|e| e.id != id)
    }

    pub(crate) fn retain_edges(&self, keep: impl Fn(&Edge) -> bool) -> Result<Multigraph> {
        let mut g = Multigraph::new(self.n);
        for e in self.edges.iter().filter(|e| keep(e)) {
            g.add_edge_with_id(e.u, e.v, e.id)?;
        }
        Ok(g)
    }

    /// One edge per adjacent pair, keeping the smallest id of each class.
    pub fn underlying_simple(&self) -> Multigraph {
        let mut best: BTreeMap<(usize, usize), EdgeId> = BTreeMap::new();
        for e in &self.edges {
            let key = (e.u.min(e.v), e.u.max(e.v));
            let slot = best.entry(key).or_insert(e.id);
            if e.id < *slot {
                *slot = e.id;
            }
        }
        self.retain_edges(|e| best.get(&(e.u.min(e.v), e.u.max(e.v))) == Some(&e.id))
            .expect("subset of a valid graph")
    }

    /// Replaces each planned edge by a path through `count` new vertices.
    /// New vertices are appended in plan order; the first path edge keeps the
    /// original id and the rest receive fresh ids.
    pub fn bisubdivide(&self, plan: &BTreeMap<EdgeId, usize>) -> Result<Multigraph> {
        for (&edge, &count) in plan {
            self.edge_checked(edge)?;
            if count % 2 == 1 {
                return Err(Error::OddBisubdivision { edge, count });
            }
        }
        let mut g = Multigraph::new(self.n);
        for e in &self.edges {
            if plan.get(&e.id).copied().unwrap_or(0) == 0 {
                g.add_edge_with_id(e.u, e.v, e.id)?;
            }
        }
        let mut next = self.fresh_edge_id().0;
        for e in &self.edges {
            let count = plan.get(&e.id).copied().unwrap_or(0);
            if count == 0 {
                continue;
            }
            let mut prev = e.u;
            for k in 0..count {
                let w = g.add_vertex();
                if k == 0 {
                    g.add_edge_with_id(prev, w, e.id)?;
                } else {
                    g.add_edge_with_id(prev, w, EdgeId(next))?;
                    next += 1;
                }
                prev = w;
            }
            g.add_edge_with_id(prev, e.v, EdgeId(next))?;
            next += 1;
        }
        Ok(g)
    }

    /// Renumbers edge ids to `0..m` following the current order.
    pub fn with_sequential_ids(&self) -> Multigraph {
        let mut g = Multigraph::new(self.n);
        for (i, e) in self.edges.iter().enumerate() {
            g.add_edge_with_id(e.u, e.v, EdgeId(i)).expect("valid");
        }
        g
    }

    /// Adds a new edge `uv`, returning the extended graph and the new id.
    pub fn plus_edge(&self, u: usize, v: usize) -> Result<(Multigraph, EdgeId)> {
        let mut g = self.clone();
        let id = g.add_edge(u, v)?;
        Ok((g, id))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named::NamedGraph;

    #[test]
    fn cut_flags_on_small_graphs() {
        let k4 = NamedGraph::K4.build();
        let c = k4.cut(&VertexSet::new([0])).unwrap();
        assert_eq!(c.edges.len(), 3);
        assert!(c.trivial && c.odd);

        let c2 = NamedGraph::C2.build();
        assert_eq!(c2.cut(&VertexSet::new([0])).unwrap().edges.len(), 2);

        let t6 = NamedGraph::T6.build();
        // u's two edges into the far side and the two edges from L to v
        let c = t6.cut(&VertexSet::new([0, 2, 3])).unwrap();
        assert_eq!(c.edges.len(), 4);
        assert!(!c.trivial && c.odd);
    }

    #[test]
    fn improper_shores_are_rejected() {
        let k4 = NamedGraph::K4.build();
        assert_eq!(k4.cut(&VertexSet::default()), Err(Error::ImproperShore));
        assert_eq!(k4.cut(&VertexSet::new(0..4)), Err(Error::ImproperShore));
        assert!(k4.contract_shore(&VertexSet::new(0..4)).is_err());
    }

    #[test]
    fn contractions_match_hand_counts() {
        let t6 = NamedGraph::T6.build();
        let c = t6.contract_shore(&VertexSet::new([0, 2, 3])).unwrap();
        assert_eq!((c.graph.order(), c.graph.size()), (4, 7));
        assert_eq!(c.graph.multiplicity(0, c.contracted), 2);
        assert_eq!(c.graph.underlying_simple().size(), 6);

        let prism = NamedGraph::Prism.build();
        let c = prism.contract_shore(&VertexSet::new([0, 1, 2])).unwrap();
        assert_eq!((c.graph.order(), c.graph.size()), (4, 6));
        assert!(c.graph.is_simple());

        // contracting a single vertex changes nothing but labels
        let k4 = NamedGraph::K4.build();
        let c = k4.contract_shore(&VertexSet::new([0, 1, 2])).unwrap();
        assert_eq!((c.graph.order(), c.graph.size()), (4, 6));
        assert_eq!(c.to_new[3], 3);
    }

    #[test]
    fn underlying_simple_examples() {
        assert_eq!(NamedGraph::Theta.build().underlying_simple().size(), 1);
        let c4 = NamedGraph::C4Star.build().underlying_simple();
        assert_eq!((c4.order(), c4.size()), (4, 4));
        assert_eq!(c4.degree_sequence(), vec![2; 4]);
        let p = NamedGraph::Petersen.build();
        assert_eq!(p.underlying_simple(), p);
    }

    #[test]
    fn bisubdivision_examples() {
        let theta = NamedGraph::Theta.build();
        let h = theta.bisubdivide(&BTreeMap::from([(EdgeId(0), 2)])).unwrap();
        assert_eq!((h.order(), h.size()), (4, 5));

        let k4 = NamedGraph::K4.build();
        let plan: BTreeMap<EdgeId, usize> = k4.edge_ids().map(|e| (e, 0)).collect();
        assert_eq!(k4.bisubdivide(&plan).unwrap(), k4);

        let c2 = NamedGraph::C2.build();
        let c6 = c2.bisubdivide(&BTreeMap::from([(EdgeId(0), 2), (EdgeId(1), 2)])).unwrap();
        assert!(crate::canon::isomorphic(&c6, &NamedGraph::EvenCycle(3).build()));

        assert!(matches!(
            k4.bisubdivide(&BTreeMap::from([(EdgeId(0), 1)])),
            Err(Error::OddBisubdivision { .. })
        ));
    }

    #[test]
    fn loops_and_bad_vertices_are_rejected() {
        let mut g = Multigraph::new(2);
        assert_eq!(g.add_edge(1, 1), Err(Error::Loop(1)));
        assert!(matches!(g.add_edge(0, 2), Err(Error::VertexOutOfRange { .. })));
        g.add_edge_with_id(0, 1, EdgeId(5)).unwrap();
        assert_eq!(g.add_edge_with_id(0, 1, EdgeId(5)), Err(Error::DuplicateEdgeId(EdgeId(5))));
    }

    #[test]
    fn three_connectivity() {
        assert!(NamedGraph::K4.build().is_three_connected());
        assert!(NamedGraph::Petersen.build().is_three_connected());
        assert!(!NamedGraph::T6.build().is_three_connected());
        assert!(!NamedGraph::EvenCycle(3).build().is_three_connected());
    }
}
