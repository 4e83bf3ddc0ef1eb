//! Exhaustive search for conformal bisubdivisions of θ and K4 in small
//! graphs. Exponential, capped by order, and deliberately independent of the
//! decider: perfect matchings here come from a memoised bitmask recursion,
//! not from the blossom code.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Multigraph, VertexSet};
use crate::witness::{walk, ThetaWitness};

pub const DEFAULT_CAP: usize = 14;

/// An odd path between two branch vertices.
#[derive(Clone, Debug)]
struct OddPath {
    inner: u64,
    edges: Vec<EdgeId>,
}

struct Search<'a> {
    g: &'a Multigraph,
    n: usize,
    nbr: Vec<u64>,
    /// Smallest edge id per adjacent pair.
    first_edge: HashMap<(usize, usize), EdgeId>,
    memo: HashMap<u64, bool>,
}

impl<'a> Search<'a> {
    fn new(g: &'a Multigraph, cap: usize) -> Result<Self> {
        let n = g.order();
        if n > cap.min(64) {
            return Err(Error::TooLarge { order: n, cap });
        }
        let mut nbr = vec![0u64; n];
        let mut first_edge: HashMap<(usize, usize), EdgeId> = HashMap::new();
        for e in g.edges() {
            nbr[e.u] |= 1 << e.v;
            nbr[e.v] |= 1 << e.u;
            let key = (e.u.min(e.v), e.u.max(e.v));
            let slot = first_edge.entry(key).or_insert(e.id);
            *slot = (*slot).min(e.id);
        }
        Ok(Search { g, n, nbr, first_edge, memo: HashMap::new() })
    }

    fn full(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    fn edge(&self, u: usize, v: usize) -> EdgeId {
        self.first_edge[&(u.min(v), u.max(v))]
    }

    fn matchable(&mut self, mask: u64) -> bool {
        if mask == 0 {
            return true;
        }
        if mask.count_ones() % 2 == 1 {
            return false;
        }
        if let Some(&hit) = self.memo.get(&mask) {
            return hit;
        }
        let v = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << v);
        let mut cands = self.nbr[v] & rest;
        let mut ok = false;
        while cands != 0 {
            let w = cands.trailing_zeros() as usize;
            cands &= cands - 1;
            if self.matchable(rest & !(1 << w)) {
                ok = true;
                break;
            }
        }
        self.memo.insert(mask, ok);
        ok
    }

    fn perfect_matching(&mut self, mut mask: u64) -> Vec<EdgeId> {
        let mut out = Vec::new();
        while mask != 0 {
            let v = mask.trailing_zeros() as usize;
            let rest = mask & !(1 << v);
            let mut cands = self.nbr[v] & rest;
            loop {
                let w = cands.trailing_zeros() as usize;
                cands &= cands - 1;
                if self.matchable(rest & !(1 << w)) {
                    out.push(self.edge(v, w));
                    mask = rest & !(1 << w);
                    break;
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Odd `x`-`y` paths whose removal leaves a matchable graph, avoiding
    /// `forbidden` internally. Parallel `xy` edges count as separate paths.
    fn odd_paths(&mut self, x: usize, y: usize, forbidden: u64) -> Vec<OddPath> {
        let mut out: Vec<OddPath> = self.g.edges_between(x, y).into_iter().map(|id| OddPath { inner: 0, edges: vec![id] }).collect();
        let mut stack_v = vec![x];
        let blocked = forbidden | (1 << x) | (1 << y);
        let mut raw = Vec::new();
        self.extend_path(x, y, blocked, &mut stack_v, &mut raw);
        let full = self.full();
        for verts in raw {
            let inner: u64 = verts[1..verts.len() - 1].iter().fold(0, |m, &v| m | 1 << v);
            if !self.matchable(full & !(inner | 1 << x | 1 << y)) {
                continue;
            }
            let edges = verts.windows(2).map(|w| self.edge(w[0], w[1])).collect();
            out.push(OddPath { inner, edges });
        }
        out
    }

    fn extend_path(&self, at: usize, y: usize, used: u64, stack: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let mut cands = self.nbr[at];
        while cands != 0 {
            let w = cands.trailing_zeros() as usize;
            cands &= cands - 1;
            if w == y {
                // stack holds x..at; reaching y makes len(stack) edges
                if stack.len() % 2 == 1 && stack.len() > 1 {
                    let mut p = stack.clone();
                    p.push(y);
                    out.push(p);
                }
                continue;
            }
            if used >> w & 1 == 1 {
                continue;
            }
            stack.push(w);
            self.extend_path(w, y, used | 1 << w, stack, out);
            stack.pop();
        }
    }
}

/// First conformal bisubdivision of θ in vertex-pair, then path order.
pub fn oracle_theta(g: &Multigraph, cap: usize) -> Result<Option<ThetaWitness>> {
    let mut s = Search::new(g, cap)?;
    let n = s.n;
    let full = s.full();
    if !s.matchable(full) {
        return Ok(None);
    }
    for x in 0..n {
        for y in x + 1..n {
            let ends = 1u64 << x | 1 << y;
            let paths = s.odd_paths(x, y, 0);
            for i in 0..paths.len() {
                for j in i + 1..paths.len() {
                    if paths[i].inner & paths[j].inner != 0 {
                        continue;
                    }
                    let cycle = ends | paths[i].inner | paths[j].inner;
                    if !s.matchable(full & !cycle) {
                        continue;
                    }
                    for k in j + 1..paths.len() {
                        if cycle & paths[k].inner != 0 {
                            continue;
                        }
                        let h = cycle | paths[k].inner;
                        if s.matchable(full & !h) {
                            let complement = s.perfect_matching(full & !h);
                            return Ok(Some(ThetaWitness {
                                x,
                                y,
                                paths: vec![paths[i].edges.clone(), paths[j].edges.clone(), paths[k].edges.clone()],
                                complement_matching: complement,
                            }));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct K4Witness {
    pub branch: [usize; 4],
    /// Paths for the pairs (0,1), (1,2), (2,3), (0,3), (0,2), (1,3) of
    /// `branch`, each from the first vertex of the pair to the second.
    pub paths: Vec<Vec<EdgeId>>,
    pub complement_matching: Vec<EdgeId>,
}

const K4_PAIRS: [(usize, usize); 6] = [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2), (1, 3)];

pub fn verify_k4_witness(g: &Multigraph, w: &K4Witness) -> bool {
    let n = g.order();
    if w.paths.len() != 6 || w.branch.iter().any(|&b| b >= n) {
        return false;
    }
    let mut in_h = vec![false; n];
    for &b in &w.branch {
        if in_h[b] {
            return false;
        }
        in_h[b] = true;
    }
    let mut seen = std::collections::HashSet::new();
    for (p, &(i, j)) in w.paths.iter().zip(K4_PAIRS.iter()) {
        if p.len() % 2 == 0 || !p.iter().all(|id| seen.insert(*id)) {
            return false;
        }
        let Some(vs) = walk(g, w.branch[i], p) else { return false };
        if vs.last() != Some(&w.branch[j]) {
            return false;
        }
        for &v in &vs[1..vs.len() - 1] {
            if in_h[v] {
                return false;
            }
            in_h[v] = true;
        }
    }
    let target: Vec<bool> = in_h.iter().map(|&h| !h).collect();
    crate::matching::is_perfect_matching_of(g, &w.complement_matching, &target)
}

/// First conformal bisubdivision of K4 over branch sets in lexicographic
/// order. The four paths of one 4-cycle are chosen first and must already
/// leave a matchable remainder.
pub fn oracle_k4(g: &Multigraph, cap: usize) -> Result<Option<K4Witness>> {
    let mut s = Search::new(g, cap)?;
    let n = s.n;
    let full = s.full();
    if n < 4 || !s.matchable(full) {
        return Ok(None);
    }
    let mut cache: HashMap<(usize, usize), Vec<OddPath>> = HashMap::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let branch = [a, b, c, d];
                    let bmask = branch.iter().fold(0u64, |m, &v| m | 1 << v);
                    let mut lists = Vec::with_capacity(6);
                    for &(i, j) in &K4_PAIRS {
                        let key = (branch[i], branch[j]);
                        let all = cache.entry(key).or_insert_with(|| s.odd_paths(key.0, key.1, 0)).clone();
                        lists.push(all.into_iter().filter(|p| p.inner & bmask == 0).collect::<Vec<_>>());
                    }
                    if lists.iter().any(Vec::is_empty) {
                        continue;
                    }
                    let mut chosen = Vec::with_capacity(6);
                    if let Some(h) = k4_backtrack(&mut s, &lists, bmask, &mut chosen) {
                        let complement = s.perfect_matching(full & !h);
                        return Ok(Some(K4Witness {
                            branch,
                            paths: chosen.iter().map(|&(l, k): &(usize, usize)| lists[l][k].edges.clone()).collect(),
                            complement_matching: complement,
                        }));
                    }
                }
            }
        }
    }
    Ok(None)
}

fn k4_backtrack(s: &mut Search<'_>, lists: &[Vec<OddPath>], used: u64, chosen: &mut Vec<(usize, usize)>) -> Option<u64> {
    let level = chosen.len();
    let full = s.full();
    if level == 4 && !s.matchable(full & !used) {
        return None;
    }
    if level == 6 {
        return s.matchable(full & !used).then_some(used);
    }
    for (k, p) in lists[level].iter().enumerate() {
        if p.inner & used != 0 {
            continue;
        }
        chosen.push((level, k));
        if let Some(h) = k4_backtrack(s, lists, used | p.inner, chosen) {
            return Some(h);
        }
        chosen.pop();
    }
    None
}

/// Violations of the crossing rules for a witness against a tight cut with
/// shore `shore`: two crossings of one path have opposite parity; a path
/// crossing twice is the only crossing path; when several paths cross, each
/// crosses in an edge of odd parity.
pub fn crossing_violations(g: &Multigraph, w: &ThetaWitness, shore: &VertexSet) -> Vec<String> {
    let mask = shore.mask(g.order());
    let crosses = |id: &EdgeId| g.edge(*id).is_some_and(|e| mask[e.u] != mask[e.v]);
    let per_path: Vec<Vec<usize>> =
        w.paths.iter().map(|p| p.iter().enumerate().filter(|(_, id)| crosses(id)).map(|(i, _)| i).collect()).collect();
    let mut out = Vec::new();
    for (k, pos) in per_path.iter().enumerate() {
        for (a, &i) in pos.iter().enumerate() {
            for &j in &pos[a + 1..] {
                if i % 2 == j % 2 {
                    out.push(format!("path {k} crosses twice with the same parity"));
                }
            }
        }
    }
    let crossing: Vec<usize> = (0..per_path.len()).filter(|&k| !per_path[k].is_empty()).collect();
    if crossing.len() > 1 {
        for &k in &crossing {
            if per_path[k].len() >= 2 {
                out.push(format!("path {k} crosses twice while another path also crosses"));
            }
            if !per_path[k].iter().any(|&i| i % 2 == 0) {
                out.push(format!("path {k} crosses only in edges of even parity"));
            }
        }
    }
    out
}

pub fn check_crossing_properties(g: &Multigraph, w: &ThetaWitness, shore: &VertexSet) -> bool {
    crossing_violations(g, w, shore).is_empty()
}
