//! Canonical forms for small multigraphs.
//!
//! Colour refinement followed by individualisation of the first non-singleton
//! cell, exploring every branch and keeping the lexicographically least
//! multiplicity code. Twin vertices (identical rows outside the pair) are only
//! individualised once. Exact, but meant for graphs of a dozen or so vertices.

use crate::graph::Multigraph;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    n: usize,
    /// Upper triangle of the multiplicity matrix in canonical order.
    code: Vec<u16>,
}

impl CanonicalForm {
    pub fn order(&self) -> usize {
        self.n
    }
}

struct Search<'a> {
    mult: &'a [Vec<u16>],
    n: usize,
    best: Option<(Vec<u16>, Vec<usize>)>,
}

impl Search<'_> {
    fn refine(&self, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
        loop {
            let mut cell_of = vec![0usize; self.n];
            for (c, cell) in cells.iter().enumerate() {
                for &v in cell {
                    cell_of[v] = c;
                }
            }
            let k = cells.len();
            let mut next: Vec<Vec<usize>> = Vec::with_capacity(k);
            for cell in &cells {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(Vec<u32>, usize)> = cell
                    .iter()
                    .map(|&v| {
                        let mut sig = vec![0u32; k];
                        for w in 0..self.n {
                            sig[cell_of[w]] += self.mult[v][w] as u32;
                        }
                        (sig, v)
                    })
                    .collect();
                keyed.sort();
                let mut start = 0;
                for i in 1..=keyed.len() {
                    if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                        next.push(keyed[start..i].iter().map(|&(_, v)| v).collect());
                        start = i;
                    }
                }
            }
            if next.len() == cells.len() {
                return next;
            }
            cells = next;
        }
    }

    fn twins(&self, a: usize, b: usize) -> bool {
        (0..self.n).all(|x| x == a || x == b || self.mult[a][x] == self.mult[b][x])
    }

    fn run(&mut self, cells: Vec<Vec<usize>>) {
        let cells = self.refine(cells);
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            let order: Vec<usize> = cells.into_iter().map(|c| c[0]).collect();
            let code = self.code(&order);
            if self.best.as_ref().is_none_or(|(b, _)| code < *b) {
                self.best = Some((code, order));
            }
            return;
        };
        let cell = cells[target].clone();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cell {
            if tried.iter().any(|&t| self.twins(t, v)) {
                continue;
            }
            tried.push(v);
            let mut next = Vec::with_capacity(cells.len() + 1);
            next.extend_from_slice(&cells[..target]);
            next.push(vec![v]);
            next.push(cell.iter().copied().filter(|&w| w != v).collect());
            next.extend_from_slice(&cells[target + 1..]);
            self.run(next);
        }
    }

    fn code(&self, order: &[usize]) -> Vec<u16> {
        let mut code = Vec::with_capacity(self.n * (self.n.saturating_sub(1)) / 2);
        for i in 0..self.n {
            for j in i + 1..self.n {
                code.push(self.mult[order[i]][order[j]]);
            }
        }
        code
    }
}

/// Canonical form plus a canonical ordering of the vertices.
pub fn canonical_labeling(g: &Multigraph) -> (CanonicalForm, Vec<usize>) {
    let n = g.order();
    let mut mult = vec![vec![0u16; n]; n];
    for e in g.edges() {
        mult[e.u][e.v] += 1;
        mult[e.v][e.u] += 1;
    }
    let mut search = Search { mult: &mult, n, best: None };
    if n > 0 {
        search.run(vec![(0..n).collect()]);
    }
    let (code, order) = search.best.unwrap_or_default();
    (CanonicalForm { n, code }, order)
}

pub fn canonical_form(g: &Multigraph) -> CanonicalForm {
    canonical_labeling(g).0
}

pub fn isomorphic(a: &Multigraph, b: &Multigraph) -> bool {
    a.order() == b.order()
        && a.size() == b.size()
        && a.degree_sequence() == b.degree_sequence()
        && canonical_form(a) == canonical_form(b)
}

/// Cheap isomorphism invariant used where exact comparison is too costly.
pub fn fingerprint(g: &Multigraph) -> (usize, usize, Vec<usize>, bool) {
    (g.order(), g.size(), g.degree_sequence(), g.is_bipartite())
}
