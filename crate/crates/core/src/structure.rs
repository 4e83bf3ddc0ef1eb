//! Barriers, the canonical partition, 2-separations, marked components and
//! tight cuts of matching covered graphs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Contraction, Cut, EdgeId, Multigraph, VertexSet};
use crate::matching::{
    is_matchable, is_matchable_without, matching_covered_obstruction, maximum_matching_within,
    odd_components_count, pm_with_forced_and_forbidden,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Barrier {
    pub vertices: VertexSet,
    /// Components of `G - B`, ordered by least vertex.
    pub components: Vec<VertexSet>,
}

pub fn is_barrier(g: &Multigraph, b: &VertexSet) -> bool {
    b.iter().all(|v| v < g.order()) && odd_components_count(g, b) == b.len()
}

pub fn in_common_barrier(g: &Multigraph, u: usize, v: usize) -> Result<bool> {
    if u == v {
        return Err(Error::SameVertex(u));
    }
    for w in [u, v] {
        if w >= g.order() {
            return Err(Error::VertexOutOfRange { vertex: w, order: g.order() });
        }
    }
    Ok(!is_matchable_without(g, &[u, v]))
}

fn require_matching_covered(g: &Multigraph) -> Result<()> {
    match matching_covered_obstruction(g) {
        Some(why) => Err(Error::NotMatchingCovered(why.to_string())),
        None => Ok(()),
    }
}

/// Pairwise table of `G - u - v` being non-matchable.
fn barrier_relation(g: &Multigraph) -> Vec<Vec<bool>> {
    let n = g.order();
    let mut rel = vec![vec![false; n]; n];
    for u in 0..n {
        rel[u][u] = true;
        for v in u + 1..n {
            let r = !is_matchable_without(g, &[u, v]);
            rel[u][v] = r;
            rel[v][u] = r;
        }
    }
    rel
}

/// The maximal barriers, ordered by least vertex.
pub fn canonical_partition(g: &Multigraph) -> Result<Vec<VertexSet>> {
    require_matching_covered(g)?;
    let n = g.order();
    let rel = barrier_relation(g);
    let mut class = vec![usize::MAX; n];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for u in 0..n {
        if class[u] != usize::MAX {
            continue;
        }
        let c = out.len();
        let members: Vec<usize> = (u..n).filter(|&v| class[v] == usize::MAX && rel[u][v]).collect();
        for &v in &members {
            class[v] = c;
        }
        out.push(members);
    }
    Ok(out.into_iter().map(VertexSet::from).collect())
}

pub fn is_bicritical(g: &Multigraph) -> bool {
    let n = g.order();
    n % 2 == 0
        && is_matchable(g)
        && (0..n).all(|u| (u + 1..n).all(|v| is_matchable_without(g, &[u, v])))
}

pub fn barrier_components(g: &Multigraph, b: &VertexSet) -> Result<Barrier> {
    if !is_barrier(g, b) {
        return Err(Error::NotABarrier(b.as_slice().to_vec()));
    }
    let components = g.components_without(&b.mask(g.order())).into_iter().map(VertexSet::from).collect();
    Ok(Barrier { vertices: b.clone(), components })
}

#[derive(Clone, Debug)]
pub struct BarrierContraction {
    pub component: VertexSet,
    /// `G / (V - V(L))`: the component in ascending order, then the
    /// contraction vertex.
    pub contraction: Contraction,
}

pub fn barrier_contractions(g: &Multigraph, b: &VertexSet) -> Result<Vec<BarrierContraction>> {
    require_matching_covered(g)?;
    let barrier = barrier_components(g, b)?;
    barrier
        .components
        .into_iter()
        .map(|component| {
            let contraction = g.contract_shore(&component)?;
            Ok(BarrierContraction { component, contraction })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoSeparation {
    pub u: usize,
    pub v: usize,
    /// The (even) components of `G - {u, v}`, ordered by least vertex.
    pub components: Vec<VertexSet>,
}

/// Validates `{u, v}` as a 2-separation.
pub fn two_separation(g: &Multigraph, u: usize, v: usize) -> Result<TwoSeparation> {
    if u == v {
        return Err(Error::SameVertex(u));
    }
    for w in [u, v] {
        if w >= g.order() {
            return Err(Error::VertexOutOfRange { vertex: w, order: g.order() });
        }
    }
    let (u, v) = (u.min(v), u.max(v));
    let comps = g.components_minus(&[u, v]);
    if comps.len() < 2 || comps.iter().any(|c| c.len() % 2 == 1) {
        return Err(Error::NotATwoSeparation(u, v));
    }
    Ok(TwoSeparation { u, v, components: comps.into_iter().map(VertexSet::from).collect() })
}

/// Every 2-separation, ordered lexicographically by `(u, v)`.
pub fn two_separations(g: &Multigraph) -> Vec<TwoSeparation> {
    let n = g.order();
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if let Ok(s) = two_separation(g, u, v) {
                out.push(s);
            }
        }
    }
    out
}

/// The first 2-separation in lexicographic order.
pub fn first_two_separation(g: &Multigraph) -> Option<TwoSeparation> {
    let n = g.order();
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).find_map(|(u, v)| two_separation(g, u, v).ok())
}

#[derive(Clone, Debug)]
pub struct MarkedComponent {
    /// `G[V(L) ∪ {u, v}] + uv`, vertices relabelled in ascending order.
    pub graph: Multigraph,
    pub marker: EdgeId,
    pub component: VertexSet,
    /// New vertex -> vertex of `G`.
    pub to_original: Vec<usize>,
}

impl MarkedComponent {
    /// Local labels of `u` and `v`.
    pub fn ends(&self, s: &TwoSeparation) -> (usize, usize) {
        let pos = |w| self.to_original.iter().position(|&x| x == w).expect("S is kept");
        (pos(s.u), pos(s.v))
    }
}

pub fn marked_components(g: &Multigraph, s: &TwoSeparation) -> Result<Vec<MarkedComponent>> {
    let checked = two_separation(g, s.u, s.v)?;
    let marker = g.fresh_edge_id();
    checked
        .components
        .iter()
        .map(|comp| {
            let keep = VertexSet::new(comp.iter().chain([s.u, s.v]));
            let piece = g.induced(&keep);
            let mut graph = piece.graph;
            let lu = piece.to_original.iter().position(|&x| x == s.u).expect("kept");
            let lv = piece.to_original.iter().position(|&x| x == s.v).expect("kept");
            // induced keeps edges uv of G as well
            graph.add_edge_with_id(lu, lv, marker)?;
            Ok(MarkedComponent { graph, marker, component: comp.clone(), to_original: piece.to_original })
        })
        .collect()
}

/// Outcome of a tightness check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tightness {
    Tight,
    /// Even cuts are never tight.
    EvenCut,
    /// A perfect matching uses both of these cut edges.
    Loose(EdgeId, EdgeId),
}

pub fn tightness(g: &Multigraph, x: &VertexSet) -> Result<Tightness> {
    let cut = g.cut(x)?;
    if !cut.odd {
        return Ok(Tightness::EvenCut);
    }
    let edges: Vec<_> = cut.edges.iter().map(|&id| *g.edge(id).expect("cut edge")).collect();
    let mut tried = std::collections::HashSet::new();
    for (i, e) in edges.iter().enumerate() {
        for f in &edges[i + 1..] {
            if e.shares_vertex(f) {
                continue;
            }
            let key = {
                let a = (e.u.min(e.v), e.u.max(e.v));
                let b = (f.u.min(f.v), f.u.max(f.v));
                (a.min(b), a.max(b))
            };
            if !tried.insert(key) {
                continue;
            }
            if pm_with_forced_and_forbidden(g, &[e.id, f.id], &[])?.is_some() {
                return Ok(Tightness::Loose(e.id, f.id));
            }
        }
    }
    Ok(Tightness::Tight)
}

pub fn is_tight_cut(g: &Multigraph, x: &VertexSet) -> Result<bool> {
    Ok(tightness(g, x)? == Tightness::Tight)
}

/// A nontrivial tight cut that is a barrier cut or a 2-separation cut.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ElpCut {
    Barrier { barrier: VertexSet, component: VertexSet, cut: Cut },
    TwoSeparation { u: usize, v: usize, side: VertexSet, cut: Cut },
}

impl ElpCut {
    pub fn cut(&self) -> &Cut {
        match self {
            ElpCut::Barrier { cut, .. } | ElpCut::TwoSeparation { cut, .. } => cut,
        }
    }

    pub fn shore(&self) -> &VertexSet {
        &self.cut().shore
    }
}

/// For a bipartite matching covered graph on six or more vertices: a
/// nontrivial barrier cut, found by removing two vertices from each colour
/// class and reading a Hall violator off a maximum matching.
fn bipartite_barrier_cut(g: &Multigraph) -> Option<(VertexSet, VertexSet)> {
    let n = g.order();
    if n < 6 {
        return None;
    }
    let side = g.bipartition()?;
    let black: Vec<usize> = (0..n).filter(|&v| !side[v]).collect();
    let white: Vec<usize> = (0..n).filter(|&v| side[v]).collect();
    for (i, &a1) in black.iter().enumerate() {
        for &a2 in &black[i + 1..] {
            for (j, &b1) in white.iter().enumerate() {
                for &b2 in &white[j + 1..] {
                    let mut alive = vec![true; n];
                    for w in [a1, a2, b1, b2] {
                        alive[w] = false;
                    }
                    let m = maximum_matching_within(g, &alive, |_| true);
                    if 2 * m.len() == n - 4 {
                        continue;
                    }
                    let mut mate = vec![usize::MAX; n];
                    for id in &m {
                        let e = g.edge(*id).expect("matching edge");
                        mate[e.u] = e.v;
                        mate[e.v] = e.u;
                    }
                    let root = (0..n).find(|&v| alive[v] && mate[v] == usize::MAX && !side[v])?;
                    let mut reached = vec![false; n];
                    reached[root] = true;
                    let mut stack = vec![root];
                    while let Some(x) = stack.pop() {
                        for (y, _) in g.incident(x) {
                            if !alive[y] || reached[y] {
                                continue;
                            }
                            reached[y] = true;
                            let z = mate[y];
                            if z != usize::MAX && !reached[z] {
                                reached[z] = true;
                                stack.push(z);
                            }
                        }
                    }
                    let x_set: Vec<usize> = (0..n).filter(|&v| reached[v] && !side[v]).collect();
                    let mut shore: Vec<usize> = x_set.clone();
                    for &x in &x_set {
                        shore.extend(g.incident(x).map(|(y, _)| y));
                    }
                    let shore = VertexSet::new(shore);
                    let barrier: VertexSet = black.iter().copied().filter(|v| !x_set.contains(v)).collect();
                    return Some((barrier, shore));
                }
            }
        }
    }
    None
}

/// A nontrivial ELP cut, or `None` for bricks, braces and graphs of order two.
///
/// Preference: a maximal barrier with a nontrivial component, then (for
/// bipartite graphs) a barrier cut from a Hall violator, then the first
/// 2-separation with shore `V(L) + min(S)` for its first component `L`.
pub fn elp_cut(g: &Multigraph) -> Result<Option<ElpCut>> {
    require_matching_covered(g)?;
    let n = g.order();
    if n < 6 {
        return Ok(None);
    }
    for class in canonical_partition(g)? {
        if class.len() < 2 {
            continue;
        }
        let barrier = barrier_components(g, &class)?;
        if let Some(comp) = barrier.components.iter().find(|c| c.len() >= 3 && n - c.len() >= 3) {
            let cut = g.cut(comp)?;
            return Ok(Some(ElpCut::Barrier { barrier: class, component: comp.clone(), cut }));
        }
    }
    if let Some((barrier, shore)) = bipartite_barrier_cut(g) {
        let cut = g.cut(&shore)?;
        return Ok(Some(ElpCut::Barrier { barrier, component: shore, cut }));
    }
    if let Some(s) = first_two_separation(g) {
        let side = VertexSet::new(s.components[0].iter().chain([s.u]));
        let cut = g.cut(&side)?;
        return Ok(Some(ElpCut::TwoSeparation { u: s.u, v: s.v, side, cut }));
    }
    Ok(None)
}

/// Contracts both edges at a vertex of degree two into a single vertex.
///
/// The merged vertex takes the smaller neighbour's place; the larger
/// neighbour and `v0` disappear and the rest keep their relative order.
/// Edges between the two neighbours would become loops and are dropped.
pub fn bicontract(g: &Multigraph, v0: usize) -> Result<Multigraph> {
    if v0 >= g.order() {
        return Err(Error::VertexOutOfRange { vertex: v0, order: g.order() });
    }
    if g.degree(v0) != 2 {
        return Err(Error::NotBicontractible { vertex: v0, why: "degree is not two" });
    }
    let nbrs: Vec<usize> = g.incident(v0).map(|(w, _)| w).collect();
    let (a, b) = (nbrs[0].min(nbrs[1]), nbrs[0].max(nbrs[1]));
    if a == b {
        return Err(Error::NotBicontractible { vertex: v0, why: "both edges go to the same neighbour" });
    }
    let mut to_new = vec![usize::MAX; g.order()];
    let mut next = 0;
    for w in 0..g.order() {
        if w == v0 || w == b {
            continue;
        }
        to_new[w] = next;
        next += 1;
    }
    to_new[b] = to_new[a];
    to_new[v0] = to_new[a];
    let mut h = Multigraph::new(next);
    for e in g.edges() {
        let (x, y) = (to_new[e.u], to_new[e.v]);
        if x != y {
            h.add_edge_with_id(x, y, e.id)?;
        }
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::isomorphic;
    use crate::matching::is_matching_covered;
    use crate::named::NamedGraph;
    use std::collections::BTreeMap;

    #[test]
    fn barrier_examples() {
        let k33 = NamedGraph::K33.build();
        assert!(is_barrier(&k33, &VertexSet::new([0, 1, 2])));
        let t6 = NamedGraph::T6.build();
        assert!(!is_barrier(&t6, &VertexSet::new([0, 1])));
        let p = NamedGraph::Petersen.build();
        assert!((0..10).all(|v| is_barrier(&p, &VertexSet::new([v]))));
    }

    #[test]
    fn common_barrier_examples() {
        let k33 = NamedGraph::K33.build();
        assert!(in_common_barrier(&k33, 0, 1).unwrap());
        let k4 = NamedGraph::K4.build();
        assert!(!in_common_barrier(&k4, 0, 3).unwrap());
        let p = NamedGraph::Petersen.build();
        assert!((0..10).all(|u| (u + 1..10).all(|v| !in_common_barrier(&p, u, v).unwrap())));
        assert_eq!(in_common_barrier(&p, 2, 2), Err(Error::SameVertex(2)));
    }

    #[test]
    fn canonical_partitions() {
        let k4 = canonical_partition(&NamedGraph::K4.build()).unwrap();
        assert_eq!(k4.len(), 4);
        let k33 = canonical_partition(&NamedGraph::K33.build()).unwrap();
        assert_eq!(k33, vec![VertexSet::new([0, 1, 2]), VertexSet::new([3, 4, 5])]);
        let cube = canonical_partition(&NamedGraph::Cube.build()).unwrap();
        assert_eq!(cube, vec![VertexSet::new([0, 3, 5, 6]), VertexSet::new([1, 2, 4, 7])]);
        let star = Multigraph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(canonical_partition(&star).is_err());
    }

    #[test]
    fn bicriticality() {
        assert!(is_bicritical(&NamedGraph::Theta.build()));
        assert!(is_bicritical(&NamedGraph::T6.build()));
        assert!(!is_bicritical(&NamedGraph::K33.build()));
    }

    fn three_paths_of_length_three() -> Multigraph {
        // u = 0, v = 1, paths 0-a-b-1
        let mut pairs = Vec::new();
        for k in 0..3 {
            let a = 2 + 2 * k;
            pairs.extend([(0, a), (a, a + 1), (a + 1, 1)]);
        }
        Multigraph::from_edges(8, &pairs).unwrap()
    }

    #[test]
    fn two_separation_examples() {
        let t6 = NamedGraph::T6.build();
        let seps = two_separations(&t6);
        assert_eq!(seps.len(), 1);
        assert_eq!((seps[0].u, seps[0].v, seps[0].components.len()), (0, 1, 2));
        assert!(two_separations(&NamedGraph::Petersen.build()).is_empty());
        let g = three_paths_of_length_three();
        assert!(is_matching_covered(&g));
        let seps = two_separations(&g);
        assert_eq!(seps.len(), 1);
        assert_eq!(seps[0].components.len(), 3);
    }

    #[test]
    fn marked_component_examples() {
        let t6 = NamedGraph::T6.build();
        let s = two_separation(&t6, 0, 1).unwrap();
        let marked = marked_components(&t6, &s).unwrap();
        assert_eq!(marked.len(), 2);
        for m in &marked {
            assert!(isomorphic(&m.graph, &NamedGraph::K4.build()));
            assert_eq!(m.marker, EdgeId(10));
        }
        let c6 = NamedGraph::EvenCycle(3).build();
        let s = two_separation(&c6, 0, 3).unwrap();
        for m in marked_components(&c6, &s).unwrap() {
            assert!(isomorphic(&m.graph, &NamedGraph::EvenCycle(2).build()));
        }
        assert!(two_separation(&t6, 0, 2).is_err());
    }

    #[test]
    fn barrier_contraction_examples() {
        let k33 = NamedGraph::K33.build();
        let parts = barrier_contractions(&k33, &VertexSet::new([0, 1, 2])).unwrap();
        assert_eq!(parts.len(), 3);
        for p in &parts {
            assert!(isomorphic(&p.contraction.graph, &NamedGraph::Theta.build()));
        }
        let c6 = NamedGraph::EvenCycle(3).build();
        let parts = barrier_contractions(&c6, &VertexSet::new([0, 2, 4])).unwrap();
        assert_eq!(parts.len(), 3);
        for p in &parts {
            assert!(isomorphic(&p.contraction.graph, &NamedGraph::C2.build()));
        }
        assert!(barrier_contractions(&c6, &VertexSet::new([0, 1])).is_err());
    }

    #[test]
    fn tight_cut_examples() {
        let k4 = NamedGraph::K4.build();
        assert!(is_tight_cut(&k4, &VertexSet::new([0])).unwrap());
        assert_eq!(tightness(&k4, &VertexSet::new([0, 1])).unwrap(), Tightness::EvenCut);
        let t6 = NamedGraph::T6.build();
        assert!(is_tight_cut(&t6, &VertexSet::new([0, 2, 3])).unwrap());
        let prism = NamedGraph::Prism.build();
        assert!(!is_tight_cut(&prism, &VertexSet::new([0, 1, 2])).unwrap());
    }

    #[test]
    fn elp_examples() {
        let t6 = NamedGraph::T6.build();
        assert!(matches!(elp_cut(&t6).unwrap(), Some(ElpCut::TwoSeparation { u: 0, v: 1, .. })));
        assert_eq!(elp_cut(&NamedGraph::Petersen.build()).unwrap(), None);
        let k33 = NamedGraph::K33.build();
        let g = k33.bisubdivide(&BTreeMap::from([(EdgeId(0), 2)])).unwrap();
        let cut = elp_cut(&g).unwrap().unwrap();
        assert!(matches!(cut, ElpCut::Barrier { .. }));
        assert!(!cut.cut().trivial);
        assert!(is_tight_cut(&g, cut.shore()).unwrap());
        assert_eq!(elp_cut(&NamedGraph::Cube.build()).unwrap(), None);
        assert_eq!(elp_cut(&k33).unwrap(), None);
    }

    #[test]
    fn bicontraction_undoes_bisubdivision() {
        let k4 = NamedGraph::K4.build();
        let g = k4.bisubdivide(&BTreeMap::from([(EdgeId(2), 2)])).unwrap();
        assert!(isomorphic(&bicontract(&g, 4).unwrap(), &k4));
        assert!(bicontract(&k4, 0).is_err());
        assert!(bicontract(&NamedGraph::C2.build(), 0).is_err());
    }
}
