//! The decider: recursion along maximal barriers and 2-separations down to
//! pieces that are either base graphs or evidently θ-based.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::canon::isomorphic;
use crate::error::{Error, Result};
use crate::graph::{Multigraph, VertexSet};
use crate::matching::matching_covered_obstruction;
use crate::named::NamedGraph;
use crate::structure::{barrier_contractions, canonical_partition, first_two_separation, is_bicritical, marked_components};
use crate::witness::{
    find_theta_witness_in_nondecomposable, lift_witness_2sep, lift_witness_barrier, theta_from_parallel_pair,
    theta_from_three_components, ThetaWitness,
};

/// Largest brick order for which a witness is searched exhaustively.
pub const DEFAULT_SEARCH_CAP: usize = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "FREE")]
    Free,
    #[serde(rename = "BASED")]
    Based,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Free => "FREE",
            Verdict::Based => "BASED",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BasedReason {
    /// A simple brick other than K4 and the Petersen graph.
    NonleafBrick,
    /// Two vertices joined by three or more edges.
    NonleafBrace,
    /// A 2-separation leaving three or more components.
    #[serde(rename = "2sep-3-components")]
    TwoSepThreeComponents,
    /// Parallel edges in a graph of order at least 4.
    AdjacentParallelCycle,
}

impl fmt::Display for BasedReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BasedReason::NonleafBrick => "nonleaf-brick",
            BasedReason::NonleafBrace => "nonleaf-brace",
            BasedReason::TwoSepThreeComponents => "2sep-3-components",
            BasedReason::AdjacentParallelCycle => "adjacent-parallel-cycle",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "node", rename_all = "snake_case")]
pub enum Node {
    Leaf {
        base: NamedGraph,
    },
    Barrier {
        barrier: VertexSet,
        /// Every component of `G - B`, ordered by least vertex.
        components: Vec<VertexSet>,
        children: Vec<Child>,
    },
    TwoSeparation {
        u: usize,
        v: usize,
        components: Vec<VertexSet>,
        children: Vec<Child>,
    },
    Based {
        reason: BasedReason,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        separation: Option<[usize; 2]>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        witness: Option<ThetaWitness>,
        /// Set when the piece was too large for the witness search.
        #[serde(default, skip_serializing_if = "std::ops::Not::not")]
        certificate_omitted: bool,
    },
}

/// A child piece: the contraction `G / (V - V(L))` under a barrier, or the
/// marked component of `L` under a 2-separation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Child {
    pub component: VertexSet,
    /// Child vertex -> parent vertex; `null` for a contraction vertex.
    pub vertex_map: Vec<Option<usize>>,
    pub node: Node,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub verdict: Verdict,
    pub tree: Node,
    /// For BASED: a witness in the input graph, when one could be lifted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<ThetaWitness>,
}

impl Certificate {
    pub fn is_free(&self) -> bool {
        self.verdict == Verdict::Free
    }

    /// Names of the FREE leaves in depth-first order.
    pub fn leaves(&self) -> Vec<NamedGraph> {
        fn go(node: &Node, out: &mut Vec<NamedGraph>) {
            match node {
                Node::Leaf { base } => out.push(*base),
                Node::Barrier { children, .. } | Node::TwoSeparation { children, .. } => {
                    children.iter().for_each(|c| go(&c.node, out))
                }
                Node::Based { .. } => {}
            }
        }
        let mut out = Vec::new();
        go(&self.tree, &mut out);
        out
    }
}

/// The base graph `g` is isomorphic to, among K2, C2, K4 and Petersen.
pub fn base_graph(g: &Multigraph) -> Option<NamedGraph> {
    match (g.order(), g.size()) {
        (2, 1) => Some(NamedGraph::K2),
        (2, 2) => Some(NamedGraph::C2),
        (4, 6) if g.is_simple() => Some(NamedGraph::K4),
        (10, 15) if isomorphic(g, &NamedGraph::Petersen.build()) => Some(NamedGraph::Petersen),
        _ => None,
    }
}

struct Outcome {
    node: Node,
    based: bool,
    /// Witness in the graph this outcome belongs to.
    witness: Option<ThetaWitness>,
}

impl Outcome {
    fn free(node: Node) -> Self {
        Outcome { node, based: false, witness: None }
    }

    fn based(reason: BasedReason, separation: Option<[usize; 2]>, witness: Option<ThetaWitness>) -> Self {
        let certificate_omitted = witness.is_none();
        Outcome {
            node: Node::Based { reason, separation, witness: witness.clone(), certificate_omitted },
            based: true,
            witness,
        }
    }
}

/// Decides whether `g` has a conformal bisubdivision of θ.
pub fn is_theta_free(g: &Multigraph, search_cap: usize) -> Result<Certificate> {
    if g.order() % 2 == 1 {
        return Err(Error::OddOrder(g.order()));
    }
    if let Some(why) = matching_covered_obstruction(g) {
        return Err(Error::NotMatchingCovered(why.to_string()));
    }
    let out = decide(g, search_cap)?;
    Ok(Certificate {
        verdict: if out.based { Verdict::Based } else { Verdict::Free },
        tree: out.node,
        witness: out.witness,
    })
}

fn decide(g: &Multigraph, cap: usize) -> Result<Outcome> {
    if let Some(base) = base_graph(g) {
        return Ok(Outcome::free(Node::Leaf { base }));
    }
    if g.order() == 2 {
        let w = find_theta_witness_in_nondecomposable(g, cap)?;
        return Ok(Outcome::based(BasedReason::NonleafBrace, None, w));
    }
    if !g.is_simple() {
        let w = theta_from_parallel_pair(g)?;
        return Ok(Outcome::based(BasedReason::AdjacentParallelCycle, None, Some(w)));
    }
    if let Some(barrier) = canonical_partition(g)?.into_iter().find(|c| c.len() >= 2) {
        return decide_barrier(g, barrier, cap);
    }
    debug_assert!(is_bicritical(g));
    if g.is_three_connected() {
        let w = find_theta_witness_in_nondecomposable(g, cap)?;
        return Ok(Outcome::based(BasedReason::NonleafBrick, None, w));
    }
    let s = first_two_separation(g).ok_or_else(|| Error::Certificate("bicritical graph without 2-separation".into()))?;
    if s.components.len() >= 3 {
        let w = theta_from_three_components(g, &s)?;
        return Ok(Outcome::based(BasedReason::TwoSepThreeComponents, Some([s.u, s.v]), Some(w)));
    }
    let marked = marked_components(g, &s)?;
    let mut children = Vec::with_capacity(2);
    for (index, m) in marked.iter().enumerate() {
        let sub = decide(&m.graph, cap)?;
        let child = Child {
            component: m.component.clone(),
            vertex_map: m.to_original.iter().map(|&v| Some(v)).collect(),
            node: sub.node,
        };
        children.push(child);
        if sub.based {
            let witness = sub.witness.map(|w| lift_witness_2sep(g, &s, index, &w)).transpose()?;
            let node = Node::TwoSeparation { u: s.u, v: s.v, components: s.components, children };
            return Ok(Outcome { node, based: true, witness });
        }
    }
    Ok(Outcome::free(Node::TwoSeparation { u: s.u, v: s.v, components: s.components, children }))
}

fn decide_barrier(g: &Multigraph, barrier: VertexSet, cap: usize) -> Result<Outcome> {
    let pieces = barrier_contractions(g, &barrier)?;
    let components: Vec<VertexSet> = pieces.iter().map(|p| p.component.clone()).collect();
    let mut children = Vec::with_capacity(pieces.len());
    for piece in &pieces {
        let sub = decide(&piece.contraction.graph, cap)?;
        children.push(Child {
            component: piece.component.clone(),
            vertex_map: piece.contraction.to_original.clone(),
            node: sub.node,
        });
        if sub.based {
            let witness = sub.witness.map(|w| lift_witness_barrier(g, &barrier, &piece.component, &w)).transpose()?;
            return Ok(Outcome { node: Node::Barrier { barrier, components, children }, based: true, witness });
        }
    }
    Ok(Outcome::free(Node::Barrier { barrier, components, children }))
}
