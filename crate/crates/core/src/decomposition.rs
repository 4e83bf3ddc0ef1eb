//! The tight cut decomposition and the brick count `b(G)`.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Multigraph, VertexSet};
use crate::matching::{is_matching_covered, matching_covered_obstruction};
use crate::structure::{
    barrier_components, canonical_partition, elp_cut, is_bicritical, tightness, two_separations,
    ElpCut, Tightness,
};

pub fn is_brick(g: &Multigraph) -> bool {
    g.order() >= 4 && !g.is_bipartite() && g.is_three_connected() && is_bicritical(g)
}

pub fn is_brace(g: &Multigraph) -> bool {
    g.is_bipartite() && is_matching_covered(g) && matches!(elp_cut(g), Ok(None))
}

/// Chooses the next nontrivial tight cut, or `None` when the graph should be
/// treated as a leaf.
pub trait CutPolicy {
    fn choose(&mut self, g: &Multigraph) -> Result<Option<VertexSet>>;
}

/// Always split along [`elp_cut`].
pub struct ElpPolicy;

impl CutPolicy for ElpPolicy {
    fn choose(&mut self, g: &Multigraph) -> Result<Option<VertexSet>> {
        Ok(elp_cut(g)?.map(|c| c.shore().clone()))
    }
}

/// Shores of nontrivial barrier and 2-separation cuts, plus the ELP cut.
pub fn candidate_tight_cuts(g: &Multigraph) -> Result<Vec<VertexSet>> {
    let n = g.order();
    let mut out = Vec::new();
    for class in canonical_partition(g)? {
        if class.len() < 2 {
            continue;
        }
        for comp in barrier_components(g, &class)?.components {
            if comp.len() >= 3 && n - comp.len() >= 3 {
                out.push(comp);
            }
        }
    }
    for s in two_separations(g) {
        for comp in &s.components {
            for end in [s.u, s.v] {
                out.push(VertexSet::new(comp.iter().chain([end])));
            }
        }
    }
    if let Some(cut) = elp_cut(g)? {
        out.push(cut.shore().clone());
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Picks uniformly among [`candidate_tight_cuts`], sometimes handing back the
/// complementary shore.
pub struct RandomPolicy<R: Rng> {
    pub rng: R,
}

impl<R: Rng> CutPolicy for RandomPolicy<R> {
    fn choose(&mut self, g: &Multigraph) -> Result<Option<VertexSet>> {
        let cands = candidate_tight_cuts(g)?;
        let Some(shore) = cands.choose(&mut self.rng) else { return Ok(None) };
        Ok(Some(if self.rng.gen_bool(0.5) { shore.complement(g.order()) } else { shore.clone() }))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LeafKind {
    Brick,
    Brace,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "node", rename_all = "snake_case")]
pub enum Trace {
    Leaf { kind: LeafKind, order: usize, size: usize },
    Split { shore: VertexSet, cut_size: usize, children: Vec<Trace> },
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionResult {
    /// Underlying simple graphs of the bricks.
    pub bricks: Vec<Multigraph>,
    /// Underlying simple graphs of the braces.
    pub braces: Vec<Multigraph>,
    pub b: usize,
    pub trace: Trace,
}

pub fn tight_cut_decomposition(g: &Multigraph, policy: &mut dyn CutPolicy) -> Result<DecompositionResult> {
    if let Some(why) = matching_covered_obstruction(g) {
        return Err(Error::NotMatchingCovered(why.to_string()));
    }
    let mut bricks = Vec::new();
    let mut braces = Vec::new();
    let trace = split(g, policy, &mut bricks, &mut braces)?;
    Ok(DecompositionResult { b: bricks.len(), bricks, braces, trace })
}

fn split(
    g: &Multigraph,
    policy: &mut dyn CutPolicy,
    bricks: &mut Vec<Multigraph>,
    braces: &mut Vec<Multigraph>,
) -> Result<Trace> {
    let Some(shore) = policy.choose(g)? else {
        let kind = if g.is_bipartite() { LeafKind::Brace } else { LeafKind::Brick };
        let simple = g.underlying_simple();
        let leaf = Trace::Leaf { kind, order: simple.order(), size: simple.size() };
        match kind {
            LeafKind::Brick => bricks.push(simple),
            LeafKind::Brace => braces.push(simple),
        }
        return Ok(leaf);
    };
    let cut = g.cut(&shore)?;
    if cut.trivial {
        return Err(Error::InvalidCut(format!("shore {:?} gives a trivial cut", shore.as_slice())));
    }
    match tightness(g, &shore)? {
        Tightness::Tight => {}
        Tightness::EvenCut => return Err(Error::InvalidCut("even cut".into())),
        Tightness::Loose(e, f) => {
            return Err(Error::InvalidCut(format!("a perfect matching uses both {e} and {f}")))
        }
    }
    let near = g.contract_shore(&shore)?.graph;
    let far = g.contract_shore(&shore.complement(g.order()))?.graph;
    let children = vec![split(&near, policy, bricks, braces)?, split(&far, policy, bricks, braces)?];
    Ok(Trace::Split { shore, cut_size: cut.edges.len(), children })
}

pub fn brick_count(g: &Multigraph) -> Result<usize> {
    Ok(tight_cut_decomposition(g, &mut ElpPolicy)?.b)
}

/// Describes the cut [`elp_cut`] would use, for diagnostics.
pub fn describe_elp(cut: &ElpCut) -> String {
    match cut {
        ElpCut::Barrier { barrier, component, .. } => {
            format!("barrier {:?}, component {:?}", barrier.as_slice(), component.as_slice())
        }
        ElpCut::TwoSeparation { u, v, side, .. } => format!("2-separation {{{u}, {v}}}, side {:?}", side.as_slice()),
    }
}
