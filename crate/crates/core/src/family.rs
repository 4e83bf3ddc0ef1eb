//! K2-sums and the two families they generate: `T`, the closure of
//! {C2, K4, Petersen} under K2-sum, and `T0`, the closure of {C2, K4}.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::canon::{canonical_form, canonical_labeling, CanonicalForm};
use crate::decomposition::brick_count;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Multigraph};
use crate::named::NamedGraph;
use crate::structure::{marked_components, two_separations};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    T,
    T0,
}

impl Family {
    pub fn bases(self) -> &'static [NamedGraph] {
        match self {
            Family::T => &[NamedGraph::C2, NamedGraph::K4, NamedGraph::Petersen],
            Family::T0 => &[NamedGraph::C2, NamedGraph::K4],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::T => "T",
            Family::T0 => "T0",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "T" => Ok(Family::T),
            "T0" => Ok(Family::T0),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }
}

/// Identifies the ends of `e1` with those of `e2` (`e2.u` onto `e1.u`) and
/// deletes the shared edge. Vertices of `g1` keep their labels; the other
/// vertices of `g2` follow in ascending order. Edge ids of `g1` are kept and
/// those of `g2` are shifted past them.
pub fn k2_sum(g1: &Multigraph, e1: EdgeId, g2: &Multigraph, e2: EdgeId) -> Result<Multigraph> {
    let a = *g1.edge_checked(e1)?;
    let b = *g2.edge_checked(e2)?;
    let mut to_new = vec![usize::MAX; g2.order()];
    to_new[b.u] = a.u;
    to_new[b.v] = a.v;
    let mut next = g1.order();
    for (w, slot) in to_new.iter_mut().enumerate() {
        if w != b.u && w != b.v {
            *slot = next;
            next += 1;
        }
    }
    let mut g = Multigraph::new(next);
    for e in g1.edges().iter().filter(|e| e.id != e1) {
        g.add_edge_with_id(e.u, e.v, e.id)?;
    }
    let shift = g1.fresh_edge_id().0;
    for e in g2.edges().iter().filter(|e| e.id != e2) {
        g.add_edge_with_id(to_new[e.u], to_new[e.v], EdgeId(e.id.0 + shift))?;
    }
    Ok(g)
}

/// An expression over base graphs and K2-sums. Edge ids in a `Sum` refer to
/// the graphs produced by evaluating the corresponding subtree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "node", rename_all = "snake_case")]
pub enum FamilyTree {
    Base { graph: NamedGraph },
    Sum { left: Box<FamilyTree>, left_edge: EdgeId, right: Box<FamilyTree>, right_edge: EdgeId, flip: bool },
}

impl FamilyTree {
    pub fn evaluate(&self) -> Result<Multigraph> {
        match self {
            FamilyTree::Base { graph } => Ok(graph.build()),
            FamilyTree::Sum { left, left_edge, right, right_edge, flip } => {
                let l = left.evaluate()?;
                let r = right.evaluate()?;
                let r = if *flip { reversed_edge(&r, *right_edge)? } else { r };
                k2_sum(&l, *left_edge, &r, *right_edge)
            }
        }
    }

    pub fn leaves(&self) -> Vec<NamedGraph> {
        match self {
            FamilyTree::Base { graph } => vec![*graph],
            FamilyTree::Sum { left, right, .. } => {
                let mut v = left.leaves();
                v.extend(right.leaves());
                v
            }
        }
    }
}

/// The same graph with the endpoints of one edge listed the other way round.
fn reversed_edge(g: &Multigraph, id: EdgeId) -> Result<Multigraph> {
    let mut h = Multigraph::new(g.order());
    for e in g.edges() {
        if e.id == id {
            h.add_edge_with_id(e.v, e.u, e.id)?;
        } else {
            h.add_edge_with_id(e.u, e.v, e.id)?;
        }
    }
    Ok(h)
}

/// All members of the family with at most `max_n` vertices, one per
/// isomorphism class, ordered by (order, size) and then discovery.
pub fn generate_family(which: Family, max_n: usize) -> Result<Vec<(Multigraph, FamilyTree)>> {
    let mut members: Vec<(Multigraph, FamilyTree)> = Vec::new();
    let mut seen: HashMap<CanonicalForm, ()> = HashMap::new();
    for &base in which.bases() {
        let g = base.build();
        if g.order() <= max_n && seen.insert(canonical_form(&g), ()).is_none() {
            members.push((g, FamilyTree::Base { graph: base }));
        }
    }
    let mut frontier = 0;
    while frontier < members.len() {
        let stop = members.len();
        let mut fresh = Vec::new();
        for i in 0..stop {
            for j in 0..stop {
                if i < frontier && j < frontier {
                    continue;
                }
                let (a, ta) = &members[i];
                let (b, tb) = &members[j];
                if a.order() == 2 || b.order() == 2 || a.order() + b.order() - 2 > max_n {
                    continue;
                }
                for ea in a.edge_ids() {
                    for eb in b.edge_ids() {
                        for flip in [false, true] {
                            let tree = FamilyTree::Sum {
                                left: Box::new(ta.clone()),
                                left_edge: ea,
                                right: Box::new(tb.clone()),
                                right_edge: eb,
                                flip,
                            };
                            let g = tree.evaluate()?;
                            if seen.insert(canonical_form(&g), ()).is_none() {
                                fresh.push((g, tree));
                            }
                        }
                    }
                }
            }
        }
        frontier = stop;
        members.extend(fresh);
    }
    members.sort_by_key(|(g, _)| (g.order(), g.size()));
    Ok(members)
}

/// The edge of `dst` that corresponds to `e` of `src` under the isomorphism
/// given by their canonical labellings.
fn corresponding_edge(src: &Multigraph, e: EdgeId, dst: &Multigraph) -> Result<EdgeId> {
    let (_, from) = canonical_labeling(src);
    let (_, to) = canonical_labeling(dst);
    let mut pos = vec![0; src.order()];
    for (i, &v) in from.iter().enumerate() {
        pos[v] = i;
    }
    let edge = src.edge_checked(e)?;
    let (a, b) = (to[pos[edge.u]], to[pos[edge.v]]);
    dst.edges_between(a, b)
        .first()
        .copied()
        .ok_or_else(|| Error::Certificate("canonical labellings disagree".into()))
}

pub struct Recognizer {
    which: Family,
    memo: HashMap<CanonicalForm, Option<FamilyTree>>,
}

impl Recognizer {
    pub fn new(which: Family) -> Self {
        Recognizer { which, memo: HashMap::new() }
    }

    pub fn recognize(&mut self, g: &Multigraph) -> Option<FamilyTree> {
        let key = canonical_form(g);
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let found = self.search(g);
        self.memo.insert(key, found.clone());
        found
    }

    fn search(&mut self, g: &Multigraph) -> Option<FamilyTree> {
        for &base in self.which.bases() {
            let b = base.build();
            if b.order() == g.order() && b.size() == g.size() && canonical_form(&b) == canonical_form(g) {
                return Some(FamilyTree::Base { graph: base });
            }
        }
        if g.order() < 4 {
            return None;
        }
        for s in two_separations(g) {
            if s.components.len() != 2 {
                continue;
            }
            let marked = marked_components(g, &s).ok()?;
            let Some(left) = self.recognize(&marked[0].graph) else { continue };
            let Some(right) = self.recognize(&marked[1].graph) else { continue };
            let lg = left.evaluate().ok()?;
            let rg = right.evaluate().ok()?;
            let left_edge = corresponding_edge(&marked[0].graph, marked[0].marker, &lg).ok()?;
            let right_edge = corresponding_edge(&marked[1].graph, marked[1].marker, &rg).ok()?;
            return Some(FamilyTree::Sum {
                left: Box::new(left),
                left_edge,
                right: Box::new(right),
                right_edge,
                flip: false,
            });
        }
        None
    }
}

pub fn recognize_family(g: &Multigraph, which: Family) -> Option<FamilyTree> {
    Recognizer::new(which).recognize(g)
}

/// The three edge bounds for θ-free matching covered graphs, in integer form:
/// `2m <= 3n + 2b - 2`, `2b <= n - 2` and `m <= 2n - 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub n: usize,
    pub m: usize,
    pub b: usize,
    pub size_by_bricks_holds: bool,
    pub size_by_bricks_tight: bool,
    pub bricks_holds: bool,
    pub bricks_tight: bool,
    pub size_holds: bool,
    pub size_tight: bool,
    pub in_t: bool,
    pub in_t0: bool,
}

pub fn check_bounds(g: &Multigraph) -> Result<BoundsReport> {
    let b = brick_count(g)?;
    let (n, m) = (g.order() as i64, g.size() as i64);
    let bi = b as i64;
    Ok(BoundsReport {
        n: g.order(),
        m: g.size(),
        b,
        size_by_bricks_holds: 2 * m <= 3 * n + 2 * bi - 2,
        size_by_bricks_tight: 2 * m == 3 * n + 2 * bi - 2,
        bricks_holds: 2 * bi <= n - 2,
        bricks_tight: 2 * bi == n - 2,
        size_holds: m <= 2 * n - 2,
        size_tight: m == 2 * n - 2,
        in_t: recognize_family(g, Family::T).is_some(),
        in_t0: recognize_family(g, Family::T0).is_some(),
    })
}
