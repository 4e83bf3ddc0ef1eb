//! Maximum matchings in general multigraphs (Edmonds' blossom algorithm) and
//! the predicates built on them.
//!
//! All searches scan vertices and neighbours in ascending order, so results
//! are reproducible. When a matched pair is joined by parallel edges the
//! smallest admissible edge id is reported.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeId, Multigraph, VertexSet};

/// Edge ids, pairwise disjoint, sorted ascending.
pub type Matching = Vec<EdgeId>;

const NONE: usize = usize::MAX;

/// Blossom search over a simple neighbour structure restricted to `alive`.
struct Blossom<'a> {
    adj: &'a [Vec<usize>],
    alive: &'a [bool],
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
}

impl<'a> Blossom<'a> {
    fn new(adj: &'a [Vec<usize>], alive: &'a [bool]) -> Self {
        let n = adj.len();
        Blossom {
            adj,
            alive,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.adj.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    fn find_path(&mut self, root: usize) -> usize {
        let n = self.adj.len();
        self.used.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for idx in 0..self.adj[v].len() {
                let to = self.adj[v][idx];
                if !self.alive[to] || self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.alive[i] && self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return to;
                    }
                    let m = self.mate[to];
                    self.used[m] = true;
                    queue.push_back(m);
                }
            }
        }
        NONE
    }

    fn run(mut self) -> Vec<usize> {
        let n = self.adj.len();
        for v in 0..n {
            if !self.alive[v] || self.mate[v] != NONE {
                continue;
            }
            if let Some(&w) = self.adj[v].iter().find(|&&w| self.alive[w] && self.mate[w] == NONE) {
                self.mate[v] = w;
                self.mate[w] = v;
            }
        }
        for v in 0..n {
            if !self.alive[v] || self.mate[v] != NONE {
                continue;
            }
            let mut end = self.find_path(v);
            while end != NONE {
                let pv = self.parent[end];
                let ppv = self.mate[pv];
                self.mate[end] = pv;
                self.mate[pv] = end;
                end = ppv;
            }
        }
        self.mate
    }
}

/// Maximum matching of `G[alive]` using only edges accepted by `allowed`.
pub(crate) fn maximum_matching_within(
    g: &Multigraph,
    alive: &[bool],
    allowed: impl Fn(&Edge) -> bool,
) -> Matching {
    let n = g.order();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in g.edges() {
        if alive[e.u] && alive[e.v] && allowed(e) {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }
    let mate = Blossom::new(&adj, alive).run();
    let mut out = Vec::new();
    for u in 0..n {
        let v = mate[u];
        if v == NONE || v < u {
            continue;
        }
        let id = g
            .incident(u)
            .filter(|&(w, e)| w == v && allowed(e))
            .map(|(_, e)| e.id)
            .min()
            .expect("matched pairs are adjacent");
        out.push(id);
    }
    out.sort_unstable();
    out
}

fn alive_without(n: usize, removed: &[usize]) -> Vec<bool> {
    let mut alive = vec![true; n];
    for &v in removed {
        alive[v] = false;
    }
    alive
}

pub fn maximum_matching(g: &Multigraph) -> Matching {
    maximum_matching_within(g, &vec![true; g.order()], |_| true)
}

pub fn perfect_matching(g: &Multigraph) -> Option<Matching> {
    if g.order() % 2 == 1 {
        return None;
    }
    let m = maximum_matching(g);
    (2 * m.len() == g.order()).then_some(m)
}

pub fn is_matchable(g: &Multigraph) -> bool {
    perfect_matching(g).is_some()
}

/// Whether `G - removed` has a perfect matching.
pub fn is_matchable_without(g: &Multigraph, removed: &[usize]) -> bool {
    let alive = alive_without(g.order(), removed);
    let left = alive.iter().filter(|&&a| a).count();
    left % 2 == 0 && 2 * maximum_matching_within(g, &alive, |_| true).len() == left
}

/// A perfect matching of `G - removed`, if any.
pub fn perfect_matching_without(g: &Multigraph, removed: &[usize]) -> Option<Matching> {
    let alive = alive_without(g.order(), removed);
    let left = alive.iter().filter(|&&a| a).count();
    if left % 2 == 1 {
        return None;
    }
    let m = maximum_matching_within(g, &alive, |_| true);
    (2 * m.len() == left).then_some(m)
}

pub fn odd_components_count(g: &Multigraph, s: &VertexSet) -> usize {
    g.components_without(&s.mask(g.order())).iter().filter(|c| c.len() % 2 == 1).count()
}

/// A perfect matching containing every forced edge and no forbidden one.
pub fn pm_with_forced_and_forbidden(
    g: &Multigraph,
    force: &[EdgeId],
    forbid: &[EdgeId],
) -> Result<Option<Matching>> {
    let mut alive = vec![true; g.order()];
    let mut owner: Vec<Option<EdgeId>> = vec![None; g.order()];
    for &id in force {
        let e = g.edge_checked(id)?;
        for w in [e.u, e.v] {
            if let Some(prev) = owner[w] {
                if prev != id {
                    return Err(Error::ForcedEdgesOverlap(prev, id));
                }
            }
            owner[w] = Some(id);
            alive[w] = false;
        }
    }
    for &id in forbid {
        g.edge_checked(id)?;
    }
    if force.iter().any(|f| forbid.contains(f)) {
        return Ok(None);
    }
    let left = alive.iter().filter(|&&a| a).count();
    if left % 2 == 1 {
        return Ok(None);
    }
    let rest = maximum_matching_within(g, &alive, |e| !forbid.contains(&e.id));
    if 2 * rest.len() != left {
        return Ok(None);
    }
    let mut m: Matching = force.to_vec();
    m.sort_unstable();
    m.dedup();
    m.extend(rest);
    m.sort_unstable();
    Ok(Some(m))
}

/// Why a graph fails to be matching covered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obstruction {
    TooSmall,
    OddOrder,
    Disconnected,
    /// `c_odd(G - S) > |S|`.
    TutteSet(VertexSet),
    /// An edge lying in no perfect matching.
    InadmissibleEdge(EdgeId),
}

impl std::fmt::Display for Obstruction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Obstruction::TooSmall => write!(f, "fewer than two vertices"),
            Obstruction::OddOrder => write!(f, "odd number of vertices"),
            Obstruction::Disconnected => write!(f, "disconnected"),
            Obstruction::TutteSet(s) => write!(f, "no perfect matching; Tutte set {:?}", s.as_slice()),
            Obstruction::InadmissibleEdge(e) => write!(f, "edge {e} lies in no perfect matching"),
        }
    }
}

pub fn matching_covered_obstruction(g: &Multigraph) -> Option<Obstruction> {
    if g.order() < 2 {
        return Some(Obstruction::TooSmall);
    }
    if g.order() % 2 == 1 {
        return Some(Obstruction::OddOrder);
    }
    if !g.is_connected() {
        return Some(Obstruction::Disconnected);
    }
    if !is_matchable(g) {
        return Some(Obstruction::TutteSet(tutte_set(g).expect("unmatchable graphs have one")));
    }
    let mut checked = std::collections::HashSet::new();
    for e in g.edges() {
        let key = (e.u.min(e.v), e.u.max(e.v));
        if checked.insert(key) && !is_matchable_without(g, &[e.u, e.v]) {
            return Some(Obstruction::InadmissibleEdge(g.edges_between(e.u, e.v)[0]));
        }
    }
    None
}

pub fn is_matching_covered(g: &Multigraph) -> bool {
    matching_covered_obstruction(g).is_none()
}

/// Edges `e` such that `G - e` is still matching covered.
pub fn removable_edges(g: &Multigraph) -> Result<Vec<EdgeId>> {
    if let Some(why) = matching_covered_obstruction(g) {
        return Err(Error::NotMatchingCovered(why.to_string()));
    }
    let mut out = Vec::new();
    for id in g.edge_ids() {
        if is_matching_covered(&g.without_edge(id)?) {
            out.push(id);
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// For a graph without a perfect matching, a set `S` with
/// `c_odd(G - S) > |S|`, read off the Gallai–Edmonds decomposition.
pub fn tutte_set(g: &Multigraph) -> Option<VertexSet> {
    let n = g.order();
    let nu = maximum_matching(g).len();
    if 2 * nu == n {
        return None;
    }
    let all = vec![true; n];
    let mut missable = vec![false; n];
    for v in 0..n {
        let mut alive = all.clone();
        alive[v] = false;
        missable[v] = maximum_matching_within(g, &alive, |_| true).len() == nu;
    }
    let s: VertexSet = (0..n)
        .filter(|&v| !missable[v] && g.incident(v).any(|(w, _)| missable[w]))
        .collect();
    debug_assert!(odd_components_count(g, &s) > s.len());
    Some(s)
}

/// Whether `m` is a set of pairwise disjoint edges of `g` covering exactly
/// the vertices marked in `target`.
pub fn is_perfect_matching_of(g: &Multigraph, m: &[EdgeId], target: &[bool]) -> bool {
    let mut hit = vec![false; g.order()];
    for &id in m {
        let Some(e) = g.edge(id) else { return false };
        for w in [e.u, e.v] {
            if hit[w] || !target[w] {
                return false;
            }
            hit[w] = true;
        }
    }
    hit == target
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named::NamedGraph;
    use proptest::prelude::*;

    fn star() -> Multigraph {
        Multigraph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap()
    }

    #[test]
    fn maximum_matching_sizes() {
        assert_eq!(maximum_matching(&NamedGraph::K4.build()).len(), 2);
        assert_eq!(maximum_matching(&star()).len(), 1);
        assert_eq!(maximum_matching(&NamedGraph::Petersen.build()).len(), 5);
    }

    #[test]
    fn matchability_of_petersen_remainders() {
        let p = NamedGraph::Petersen.build();
        let cycle_closes = |c: &[usize]| {
            c.iter().zip(c.iter().cycle().skip(1)).all(|(&a, &b)| p.are_adjacent(a, b))
        };
        let c6 = [0usize, 1, 2, 3, 8, 5];
        assert!(cycle_closes(&c6));
        assert!(!is_matchable_without(&p, &c6));
        let rest = p.induced(&VertexSet::new(c6).complement(10)).graph;
        assert_eq!(rest.degree_sequence(), vec![3, 1, 1, 1]);

        let c8 = [0usize, 1, 2, 3, 4, 9, 7, 5];
        assert!(cycle_closes(&c8));
        assert!(is_matchable_without(&p, &c8));
        assert!(!is_matchable(&Multigraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap()));
    }

    #[test]
    fn odd_components() {
        assert_eq!(odd_components_count(&star(), &VertexSet::new([0])), 3);
        assert_eq!(odd_components_count(&NamedGraph::K4.build(), &VertexSet::default()), 0);
        assert_eq!(odd_components_count(&NamedGraph::K33.build(), &VertexSet::new([0, 1, 2])), 3);
    }

    #[test]
    fn forced_and_forbidden() {
        let theta = NamedGraph::Theta.build();
        assert_eq!(pm_with_forced_and_forbidden(&theta, &[EdgeId(1)], &[]).unwrap(), Some(vec![EdgeId(1)]));
        let k4 = NamedGraph::K4.build();
        // 0-1 forces 2-3
        assert_eq!(
            pm_with_forced_and_forbidden(&k4, &[EdgeId(0)], &[]).unwrap(),
            Some(vec![EdgeId(0), EdgeId(5)])
        );
        assert_eq!(pm_with_forced_and_forbidden(&k4, &[EdgeId(0)], &[EdgeId(5)]).unwrap(), None);
        let p = NamedGraph::Petersen.build();
        assert_eq!(
            pm_with_forced_and_forbidden(&p, &[EdgeId(0), EdgeId(1)], &[]),
            Err(Error::ForcedEdgesOverlap(EdgeId(0), EdgeId(1)))
        );
    }

    #[test]
    fn matching_covered_examples() {
        for g in [NamedGraph::K4, NamedGraph::Prism, NamedGraph::K33, NamedGraph::Cube, NamedGraph::Petersen] {
            assert!(is_matching_covered(&g.build()), "{g}");
        }
        let k4e = NamedGraph::K4.build().without_edge(EdgeId(0)).unwrap();
        assert!(!is_matching_covered(&k4e));
        let p4 = Multigraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(matching_covered_obstruction(&p4), Some(Obstruction::InadmissibleEdge(EdgeId(1))));
        assert_eq!(matching_covered_obstruction(&star()), Some(Obstruction::TutteSet(VertexSet::new([0]))));
    }

    #[test]
    fn removable_edge_examples() {
        assert_eq!(removable_edges(&NamedGraph::Bicorn.build()).unwrap(), vec![EdgeId(11)]);
        assert_eq!(removable_edges(&NamedGraph::Theta.build()).unwrap().len(), 3);
        assert_eq!(removable_edges(&NamedGraph::C2.build()).unwrap(), vec![EdgeId(0), EdgeId(1)]);
        assert!(removable_edges(&star()).is_err());
    }

    fn berge_deficiency(g: &Multigraph) -> usize {
        let n = g.order();
        (0u32..1 << n)
            .map(|mask| {
                let s: VertexSet = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
                odd_components_count(g, &s).saturating_sub(s.len())
            })
            .max()
            .unwrap_or(0)
    }

    fn arbitrary_graph(max_n: usize) -> impl Strategy<Value = Multigraph> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n), 0..2 * n + 4).prop_map(move |pairs| {
                let mut g = Multigraph::new(n);
                for (u, v) in pairs {
                    if u != v {
                        g.add_edge(u, v).unwrap();
                    }
                }
                g
            })
        })
    }

    proptest! {
        #[test]
        fn berge_formula_holds(g in arbitrary_graph(8)) {
            let nu = maximum_matching(&g).len();
            prop_assert_eq!(2 * nu, g.order() - berge_deficiency(&g));
        }

        #[test]
        fn tutte_sets_verify(g in arbitrary_graph(8)) {
            if let Some(s) = tutte_set(&g) {
                prop_assert!(odd_components_count(&g, &s) > s.len());
            } else {
                prop_assert!(is_matchable(&g));
            }
        }

        #[test]
        fn matchings_are_matchings(g in arbitrary_graph(10)) {
            let m = maximum_matching(&g);
            let mut hit = vec![false; g.order()];
            for id in &m {
                let e = g.edge(*id).unwrap();
                prop_assert!(!hit[e.u] && !hit[e.v]);
                hit[e.u] = true;
                hit[e.v] = true;
            }
        }
    }
}
