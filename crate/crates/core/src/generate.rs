//! Graph generators: random matching covered graphs grown by ears, dense
//! graphs of minimum degree four, and exhaustive small graphs up to
//! isomorphism.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use crate::canon::canonical_form;
use crate::error::{Error, Result};
use crate::graph::Multigraph;
use crate::matching::{is_matchable, is_matching_covered};

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

const ATTEMPTS: usize = 10_000;

/// Adds an ear between `a` and `b` with `inner` new vertices.
fn add_ear(g: &mut Multigraph, a: usize, b: usize, inner: usize) {
    let mut prev = a;
    for _ in 0..inner {
        let w = g.add_vertex();
        g.add_edge(prev, w).expect("valid ends");
        prev = w;
    }
    g.add_edge(prev, b).expect("valid ends");
}

fn random_ear(g: &Multigraph, rng: &mut impl Rng, budget: usize) -> Option<(usize, usize, usize)> {
    let n = g.order();
    let a = rng.gen_range(0..n);
    let b = rng.gen_range(0..n);
    if a == b {
        return None;
    }
    let inner = 2 * rng.gen_range(0..=budget.min(4) / 2);
    if inner == 0 && g.are_adjacent(a, b) {
        return None;
    }
    Some((a, b, inner))
}

/// A simple matching covered graph on `n` vertices, grown from K2 by single
/// and double ear additions. Additions that break matching coveredness are
/// rejected and redrawn. `extra` more single-edge ears are added at the end
/// when possible.
pub fn random_matching_covered(n: usize, extra: usize, rng: &mut impl Rng) -> Result<Multigraph> {
    if n % 2 == 1 || n < 2 {
        return Err(Error::OddOrder(n));
    }
    'restart: for _ in 0..ATTEMPTS {
        let mut g = Multigraph::from_edges(2, &[(0, 1)])?;
        let mut tries = 0;
        while g.order() < n {
            tries += 1;
            if tries > 500 {
                continue 'restart;
            }
            let budget = n - g.order();
            let double = g.order() >= 4 && rng.gen_bool(0.4);
            let mut h = g.clone();
            let Some((a, b, k)) = random_ear(&h, rng, budget) else { continue };
            add_ear(&mut h, a, b, k);
            if double {
                let Some((c, d, l)) = random_ear(&h, rng, budget - k) else { continue };
                add_ear(&mut h, c, d, l);
            }
            if h.order() == 2 || h.order() > n {
                continue;
            }
            if is_matching_covered(&h) {
                g = h;
            }
        }
        for _ in 0..extra {
            for _ in 0..20 {
                let Some((a, b, 0)) = random_ear(&g, rng, 0) else { continue };
                let (h, _) = g.plus_edge(a, b)?;
                if is_matching_covered(&h) {
                    g = h;
                    break;
                }
            }
        }
        return Ok(g.with_sequential_ids());
    }
    Err(Error::NotMatchingCovered(format!("no ear decomposition reached order {n}")))
}

/// A simple matching covered graph on `n` vertices with minimum degree at
/// least four, drawn as a dense random graph and redrawn until it qualifies.
pub fn random_min_degree4(n: usize, rng: &mut impl Rng) -> Result<Multigraph> {
    if n % 2 == 1 || n < 6 {
        return Err(Error::OddOrder(n));
    }
    for _ in 0..ATTEMPTS {
        let p: f64 = rng.gen_range(0.45..0.85);
        let mut pairs = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    pairs.push((u, v));
                }
            }
        }
        let g = Multigraph::from_edges(n, &pairs)?;
        if g.min_degree() >= 4 && is_matching_covered(&g) {
            return Ok(g);
        }
    }
    Err(Error::NotMatchingCovered("no dense matching covered graph found".into()))
}

/// All simple graphs on exactly `n` vertices, one per isomorphism class.
/// Built vertex by vertex: every graph arises from one on `n - 1` vertices
/// by adding a vertex with some neighbourhood.
pub fn all_graphs(n: usize) -> Vec<Multigraph> {
    let mut level: Vec<Multigraph> = vec![Multigraph::new(0)];
    for k in 0..n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for g in &level {
            for nbrs in 0u32..(1 << k) {
                let mut h = g.clone();
                let w = h.add_vertex();
                for v in 0..k {
                    if nbrs >> v & 1 == 1 {
                        h.add_edge(v, w).expect("valid");
                    }
                }
                if seen.insert(canonical_form(&h)) {
                    next.push(h);
                }
            }
        }
        level = next;
    }
    level
}

/// Every matching covered simple graph with at most `max_n` vertices, up to
/// isomorphism, in order of size.
pub fn all_matching_covered(max_n: usize) -> Vec<Multigraph> {
    let mut out = Vec::new();
    for n in (2..=max_n).step_by(2) {
        out.extend(all_graphs(n).into_iter().filter(|g| g.is_connected() && is_matchable(g) && is_matching_covered(g)));
    }
    out
}

/// The exhaustive corpus up to `max_n` plus `random` seeded ear-grown graphs
/// with at most `max_random_n` vertices.
pub fn corpus(max_n: usize, random: usize, max_random_n: usize, seed: u64) -> Result<Vec<Multigraph>> {
    let mut out = all_matching_covered(max_n);
    let mut rng = seeded(seed);
    let sizes: Vec<usize> = (4..=max_random_n).step_by(2).collect();
    for _ in 0..random {
        let n = *sizes.choose(&mut rng).expect("nonempty");
        let extra = rng.gen_range(0..=n / 2);
        out.push(random_matching_covered(n, extra, &mut rng)?);
    }
    Ok(out)
}
