//! Certificate checking. Everything a certificate claims is recomputed from
//! the graph: components, contractions, marked components, base graphs and
//! witnesses. Nothing here calls into the decider or the witness builders.

use crate::canon::isomorphic;
use crate::graph::{Multigraph, VertexSet};
use crate::matching::{is_matchable_without, matching_covered_obstruction};
use crate::named::NamedGraph;
use crate::theta::{BasedReason, Certificate, Child, Node, Verdict};
use crate::witness::theta_witness_problems;

type Check<T> = std::result::Result<T, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check<()> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// The first problem found with `cert` as a certificate for `g`.
pub fn certificate_problem(g: &Multigraph, cert: &Certificate) -> Option<String> {
    check_root(g, cert).err()
}

pub fn verify_certificate(g: &Multigraph, cert: &Certificate) -> bool {
    certificate_problem(g, cert).is_none()
}

/// Parses and checks a certificate given as JSON. Malformed JSON is an
/// error rather than a rejection.
pub fn verify_certificate_json(g: &Multigraph, json: &str) -> crate::Result<Option<String>> {
    let cert: Certificate = serde_json::from_str(json).map_err(|e| crate::Error::Certificate(e.to_string()))?;
    Ok(certificate_problem(g, &cert))
}

fn check_root(g: &Multigraph, cert: &Certificate) -> Check<()> {
    if let Some(why) = matching_covered_obstruction(g) {
        return Err(format!("graph is not matching covered: {why}"));
    }
    let leaf = check_node(g, &cert.tree, "root")?;
    match (cert.verdict, leaf) {
        (Verdict::Free, None) => ensure(cert.witness.is_none(), || "FREE certificate carries a witness".into()),
        (Verdict::Free, Some(_)) => Err("FREE certificate has a failing leaf".into()),
        (Verdict::Based, None) => Err("BASED certificate has no failing leaf".into()),
        (Verdict::Based, Some(has_witness)) => {
            ensure(cert.witness.is_some() == has_witness, || "root witness does not match the failing leaf".into())?;
            if let Some(w) = &cert.witness {
                let problems = theta_witness_problems(g, w);
                ensure(problems.is_empty(), || format!("root witness: {}", problems.join("; ")))?;
            }
            Ok(())
        }
    }
}

fn strictly_sorted(set: &VertexSet, n: usize) -> bool {
    set.as_slice().windows(2).all(|w| w[0] < w[1]) && set.iter().all(|v| v < n)
}

fn components_minus(h: &Multigraph, removed: &[usize]) -> Vec<VertexSet> {
    let mut comps: Vec<VertexSet> = h.components_minus(removed).into_iter().map(VertexSet::new).collect();
    comps.sort_by_key(|c| c.min());
    comps
}

/// Checks a node for graph `h`. `Ok(None)` for a FREE subtree, `Ok(Some(w))`
/// for a failing one, where `w` says whether its leaf carries a witness.
fn check_node(h: &Multigraph, node: &Node, at: &str) -> Check<Option<bool>> {
    let n = h.order();
    match node {
        Node::Leaf { base } => {
            ensure(matches!(base, NamedGraph::K2 | NamedGraph::C2 | NamedGraph::K4 | NamedGraph::Petersen), || {
                format!("{at}: {base} is not a base graph")
            })?;
            ensure(isomorphic(h, &base.build()), || format!("{at}: piece is not {base}"))?;
            Ok(None)
        }
        Node::Barrier { barrier, components, children } => {
            ensure(strictly_sorted(barrier, n) && barrier.len() >= 2, || format!("{at}: bad barrier {barrier:?}"))?;
            let actual = components_minus(h, barrier.as_slice());
            let odd = actual.iter().filter(|c| c.len() % 2 == 1).count();
            ensure(odd == barrier.len() && odd == actual.len(), || format!("{at}: {barrier:?} is not a barrier"))?;
            ensure(&actual == components, || format!("{at}: components do not match"))?;
            check_children(children, components, at, |c| {
                let con = h.contract_shore(c).map_err(|e| e.to_string())?;
                Ok((con.graph, con.to_original))
            })
        }
        Node::TwoSeparation { u, v, components, children } => {
            ensure(u < v && *v < n, || format!("{at}: bad separation {{{u}, {v}}}"))?;
            let actual = components_minus(h, &[*u, *v]);
            ensure(actual.len() == 2 && actual.iter().all(|c| c.len() % 2 == 0), || {
                format!("{at}: {{{u}, {v}}} is not a 2-separation with two components")
            })?;
            ensure(&actual == components, || format!("{at}: components do not match"))?;
            check_children(children, components, at, |c| Ok(marked(h, *u, *v, c)))
        }
        Node::Based { reason, separation, witness, certificate_omitted } => {
            ensure(*certificate_omitted == witness.is_none(), || format!("{at}: omitted flag disagrees with witness"))?;
            ensure(separation.is_some() == (*reason == BasedReason::TwoSepThreeComponents), || {
                format!("{at}: separation given for the wrong reason")
            })?;
            check_reason(h, *reason, *separation).map_err(|e| format!("{at}: {reason}: {e}"))?;
            if let Some(w) = witness {
                if let Some([u, v]) = separation {
                    ensure((w.x, w.y) == (*u, *v), || format!("{at}: witness does not branch at the separation"))?;
                }
                let problems = theta_witness_problems(h, w);
                ensure(problems.is_empty(), || format!("{at}: witness: {}", problems.join("; ")))?;
            }
            Ok(Some(witness.is_some()))
        }
    }
}

fn check_children(
    children: &[Child],
    components: &[VertexSet],
    at: &str,
    piece: impl Fn(&VertexSet) -> Check<(Multigraph, Vec<Option<usize>>)>,
) -> Check<Option<bool>> {
    ensure(!children.is_empty() && children.len() <= components.len(), || format!("{at}: wrong number of children"))?;
    for (i, child) in children.iter().enumerate() {
        let path = format!("{at}/{i}");
        ensure(child.component == components[i], || format!("{path}: component out of order"))?;
        let (graph, map) = piece(&child.component)?;
        ensure(child.vertex_map == map, || format!("{path}: vertex map does not match"))?;
        let outcome = check_node(&graph, &child.node, &path)?;
        let last = i + 1 == children.len();
        match outcome {
            Some(w) if last => return Ok(Some(w)),
            Some(_) => return Err(format!("{path}: failing branch is not the last child")),
            None => {}
        }
    }
    ensure(children.len() == components.len(), || format!("{at}: FREE node is missing children"))?;
    Ok(None)
}

/// `H[L ∪ {u, v}]` plus a marker edge `uv`, relabelled in ascending order.
fn marked(h: &Multigraph, u: usize, v: usize, comp: &VertexSet) -> (Multigraph, Vec<Option<usize>>) {
    let mut keep: Vec<usize> = comp.iter().chain([u, v]).collect();
    keep.sort_unstable();
    let mut local = vec![usize::MAX; h.order()];
    for (i, &w) in keep.iter().enumerate() {
        local[w] = i;
    }
    let mut graph = Multigraph::new(keep.len());
    for e in h.edges() {
        if local[e.u] != usize::MAX && local[e.v] != usize::MAX {
            graph.add_edge_with_id(local[e.u], local[e.v], e.id).expect("fresh ids");
        }
    }
    graph.add_edge_with_id(local[u], local[v], h.fresh_edge_id()).expect("fresh marker");
    (graph, keep.into_iter().map(Some).collect())
}

fn check_reason(h: &Multigraph, reason: BasedReason, separation: Option<[usize; 2]>) -> Check<()> {
    let n = h.order();
    match reason {
        BasedReason::NonleafBrick => {
            ensure(n >= 4 && !h.is_bipartite(), || "not a nonbipartite graph of order at least 4".into())?;
            ensure(h.is_simple(), || "piece has parallel edges".into())?;
            ensure(h.is_three_connected(), || "not 3-connected".into())?;
            let bicritical = (0..n).all(|a| (a + 1..n).all(|b| is_matchable_without(h, &[a, b])));
            ensure(bicritical, || "not bicritical".into())?;
            ensure(!isomorphic(h, &NamedGraph::K4.build()) && !isomorphic(h, &NamedGraph::Petersen.build()), || {
                "piece is K4 or the Petersen graph".into()
            })
        }
        BasedReason::NonleafBrace => {
            ensure(n == 2 && h.size() >= 3, || "not two vertices joined by three or more edges".into())
        }
        BasedReason::TwoSepThreeComponents => {
            let [u, v] = separation.ok_or("missing separation")?;
            ensure(u < v && v < n, || "bad separation".into())?;
            let comps = components_minus(h, &[u, v]);
            ensure(comps.len() >= 3 && comps.iter().all(|c| c.len() % 2 == 0), || {
                "fewer than three even components".into()
            })
        }
        BasedReason::AdjacentParallelCycle => {
            ensure(!h.is_simple(), || "piece is simple".into())?;
            ensure(n >= 4, || "piece has order 2".into())
        }
    }
}
