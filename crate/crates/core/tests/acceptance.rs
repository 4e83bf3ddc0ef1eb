//! Acceptance suite. Each test prints one line `criterion NN: PASS|FAIL ...`;
//! run with `--nocapture` to see them.

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde_json::Value;

use theta_kit::canon::{canonical_form, isomorphic, CanonicalForm};
use theta_kit::decomposition::{is_brace, is_brick, tight_cut_decomposition, ElpPolicy, RandomPolicy};
use theta_kit::family::{check_bounds, recognize_family, Family};
use theta_kit::generate::{corpus, random_matching_covered, random_min_degree4, seeded};
use theta_kit::graph::{Multigraph, VertexSet};
use theta_kit::matching::is_matchable_without;
use theta_kit::named::NamedGraph;
use theta_kit::oracle::{oracle_k4, oracle_theta, verify_k4_witness};
use theta_kit::structure::{barrier_components, canonical_partition, elp_cut, is_tight_cut, marked_components, two_separations};
use theta_kit::theta::{is_theta_free, Certificate, Verdict, DEFAULT_SEARCH_CAP};
use theta_kit::verify::{certificate_problem, verify_certificate_json};
use theta_kit::witness::verify_theta_witness;

const CORPUS_SEED: u64 = 2024;
const ORACLE_CAP: usize = 14;

struct Entry {
    graph: Multigraph,
    cert: Certificate,
    oracle_free: bool,
}

fn corpus_entries() -> &'static [Entry] {
    static CORPUS: OnceLock<Vec<Entry>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let graphs = corpus(8, 500, 12, CORPUS_SEED).expect("corpus");
        graphs
            .into_par_iter()
            .map(|graph| {
                let cert = is_theta_free(&graph, DEFAULT_SEARCH_CAP).unwrap_or_else(|e| panic!("decider: {e} on {}", describe(&graph)));
                let oracle_free = oracle_theta(&graph, ORACLE_CAP).expect("oracle").is_none();
                Entry { graph, cert, oracle_free }
            })
            .collect()
    })
}

fn report(n: u32, name: &str, checked: usize, failures: &[String]) {
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("criterion {n:02}: {status} {name} ({checked} checked, {} failing)", failures.len());
    for f in failures.iter().take(5) {
        println!("    {f}");
    }
    assert!(failures.is_empty(), "criterion {n} failed: {:?}", &failures[..failures.len().min(5)]);
}

fn describe(g: &Multigraph) -> String {
    theta_kit::io::write_graph(g).replace('\n', " ")
}

fn is_cycle(g: &Multigraph) -> bool {
    g.is_connected() && (0..g.order()).all(|v| g.degree(v) == 2)
}

fn nonadjacent_pairs(g: &Multigraph) -> Vec<(usize, usize)> {
    let n = g.order();
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| !g.are_adjacent(u, v)).collect()
}

#[test]
fn criterion_01_petersen_verdicts() {
    let p = NamedGraph::Petersen.build();
    let mut failures = Vec::new();
    let t = Instant::now();
    let cert = is_theta_free(&p, DEFAULT_SEARCH_CAP).unwrap();
    let decider_time = t.elapsed();
    let t = Instant::now();
    let oracle = oracle_theta(&p, ORACLE_CAP).unwrap();
    let oracle_time = t.elapsed();
    if cert.verdict != Verdict::Free {
        failures.push("decider says BASED".into());
    }
    if oracle.is_some() {
        failures.push("oracle found a witness".into());
    }
    if decider_time >= Duration::from_millis(100) {
        failures.push(format!("decider took {decider_time:?}"));
    }
    if oracle_time >= Duration::from_secs(60) {
        failures.push(format!("oracle took {oracle_time:?}"));
    }
    println!("    decider {decider_time:?}, oracle {oracle_time:?}");
    report(1, "Petersen is FREE for decider and oracle", 2, &failures);
}

#[test]
fn criterion_02_petersen_saturation() {
    let p = NamedGraph::Petersen.build();
    let pairs = nonadjacent_pairs(&p);
    let failures: Vec<String> = pairs
        .par_iter()
        .filter_map(|&(u, v)| {
            let (g, _) = p.plus_edge(u, v).unwrap();
            let cert = is_theta_free(&g, DEFAULT_SEARCH_CAP).unwrap();
            let decider_ok = cert.verdict == Verdict::Based
                && cert.witness.as_ref().is_some_and(|w| verify_theta_witness(&g, w));
            let oracle_ok = oracle_theta(&g, ORACLE_CAP).unwrap().is_some_and(|w| verify_theta_witness(&g, &w));
            (!(decider_ok && oracle_ok)).then(|| format!("+{u}{v}: decider ok {decider_ok}, oracle ok {oracle_ok}"))
        })
        .collect();
    let mut all = failures;
    if pairs.len() != 30 {
        all.push(format!("{} nonadjacent pairs", pairs.len()));
    }
    report(2, "Petersen plus any edge is BASED with verified witnesses", pairs.len(), &all);
}

#[test]
fn criterion_03_dichotomy_examples() {
    let mut failures = Vec::new();
    let prism = NamedGraph::Prism.build();
    if is_theta_free(&prism, DEFAULT_SEARCH_CAP).unwrap().verdict != Verdict::Based {
        failures.push("prism not BASED".into());
    }
    if oracle_k4(&prism, ORACLE_CAP).unwrap().is_some() {
        failures.push("prism has a conformal K4".into());
    }
    let p = NamedGraph::Petersen.build();
    if is_theta_free(&p, DEFAULT_SEARCH_CAP).unwrap().verdict != Verdict::Free {
        failures.push("Petersen not FREE".into());
    }
    if !oracle_k4(&p, ORACLE_CAP).unwrap().is_some_and(|w| verify_k4_witness(&p, &w)) {
        failures.push("Petersen has no verified conformal K4".into());
    }
    report(3, "prism BASED and K4-free, Petersen FREE and K4-based", 4, &failures);
}

#[test]
fn criterion_04_base_catalogue() {
    use NamedGraph::*;
    let mut failures = Vec::new();
    let cases = [(K2, Verdict::Free), (C2, Verdict::Free), (K4, Verdict::Free), (K33, Verdict::Based), (Cube, Verdict::Based), (C4Star, Verdict::Based), (Theta, Verdict::Based)];
    for (name, want) in cases {
        let got = is_theta_free(&name.build(), DEFAULT_SEARCH_CAP).unwrap().verdict;
        if got != want {
            failures.push(format!("{name}: {got}, expected {want}"));
        }
    }
    report(4, "base catalogue verdicts", cases.len(), &failures);
}

#[test]
fn criterion_05_t6_suite() {
    let t6 = NamedGraph::T6.build();
    let k4 = NamedGraph::K4.build();
    let mut failures = Vec::new();
    if is_theta_free(&t6, DEFAULT_SEARCH_CAP).unwrap().verdict != Verdict::Free {
        failures.push("T6 not FREE".into());
    }
    let d = tight_cut_decomposition(&t6, &mut ElpPolicy).unwrap();
    if d.b != 2 || !d.braces.is_empty() || !d.bricks.iter().all(|b| isomorphic(b, &k4)) {
        failures.push(format!("decomposition b={} braces={}", d.b, d.braces.len()));
    }
    let r = check_bounds(&t6).unwrap();
    if !(r.m == 10 && r.size_tight && r.b == 2 && r.bricks_tight) {
        failures.push(format!("bounds {r:?}"));
    }
    if recognize_family(&t6, Family::T0).is_none() {
        failures.push("T6 not recognised in T0".into());
    }
    report(5, "T6 is FREE, b = 2 with K4 bricks, tight bounds, in T0", 4, &failures);
}

#[test]
fn criterion_06_oracle_equivalence() {
    let entries = corpus_entries();
    let failures: Vec<String> = entries
        .iter()
        .filter(|e| e.cert.is_free() != e.oracle_free)
        .map(|e| format!("decider {} oracle free {} on {}", e.cert.verdict, e.oracle_free, describe(&e.graph)))
        .collect();
    report(6, "decider agrees with the oracle on the corpus", entries.len(), &failures);
}

#[test]
fn criterion_07_theta_or_k4() {
    let entries = corpus_entries();
    let rest: Vec<&Entry> = entries.iter().filter(|e| !is_cycle(&e.graph) && e.graph.size() > 1).collect();
    let failures: Vec<String> = rest
        .par_iter()
        .filter(|e| e.oracle_free)
        .filter_map(|e| {
            let k4 = oracle_k4(&e.graph, ORACLE_CAP).unwrap();
            (!k4.is_some_and(|w| verify_k4_witness(&e.graph, &w))).then(|| describe(&e.graph))
        })
        .collect();
    report(7, "every non-cycle corpus graph has a conformal θ or K4", rest.len(), &failures);
}

fn leaf_multiset(graphs: &[Multigraph]) -> Vec<CanonicalForm> {
    let mut forms: Vec<CanonicalForm> = graphs.iter().map(canonical_form).collect();
    forms.sort();
    forms
}

#[test]
fn criterion_08_brick_invariance() {
    let mut rng = seeded(8);
    let graphs: Vec<Multigraph> = (0..100)
        .map(|_| {
            let n = 2 * rng.gen_range(2..=6);
            let extra = rng.gen_range(0..=n / 2);
            random_matching_covered(n, extra, &mut rng).unwrap()
        })
        .collect();
    let failures: Vec<String> = graphs
        .par_iter()
        .enumerate()
        .filter_map(|(i, g)| {
            let reference = tight_cut_decomposition(g, &mut ElpPolicy).unwrap();
            let want = (leaf_multiset(&reference.bricks), leaf_multiset(&reference.braces));
            for k in 0..5 {
                let mut policy = RandomPolicy { rng: seeded(1000 * i as u64 + k) };
                let d = tight_cut_decomposition(g, &mut policy).unwrap();
                if (leaf_multiset(&d.bricks), leaf_multiset(&d.braces)) != want {
                    return Some(format!("policy {k} differs on {}", describe(g)));
                }
            }
            None
        })
        .collect();
    report(8, "brick and brace multisets do not depend on the cuts chosen", graphs.len() * 5, &failures);
}

fn b_of(g: &Multigraph) -> usize {
    tight_cut_decomposition(g, &mut ElpPolicy).unwrap().b
}

#[test]
fn criterion_09_additivity() {
    let entries = corpus_entries();
    let results: Vec<(usize, Vec<String>)> = entries
        .par_iter()
        .map(|e| {
            let g = &e.graph;
            let b = b_of(g);
            let mut checked = 0;
            let mut failures = Vec::new();
            for class in canonical_partition(g).unwrap().into_iter().filter(|c| c.len() >= 2) {
                checked += 1;
                let comps = barrier_components(g, &class).unwrap().components;
                let sum: usize = comps.iter().map(|c| b_of(&g.contract_shore(c).unwrap().graph)).sum();
                if sum != b {
                    failures.push(format!("barrier {:?}: {sum} != {b} on {}", class.as_slice(), describe(g)));
                }
            }
            for s in two_separations(g) {
                checked += 1;
                let sum: usize = marked_components(g, &s).unwrap().iter().map(|m| b_of(&m.graph)).sum();
                if sum != b {
                    failures.push(format!("2-separation {{{}, {}}}: {sum} != {b} on {}", s.u, s.v, describe(g)));
                }
            }
            (checked, failures)
        })
        .collect();
    let checked = results.iter().map(|r| r.0).sum();
    let failures: Vec<String> = results.into_iter().flat_map(|r| r.1).collect();
    report(9, "brick count adds up over barriers and 2-separations", checked, &failures);
}

#[test]
fn criterion_10_canonical_partition() {
    let entries = corpus_entries();
    let failures: Vec<String> = entries
        .par_iter()
        .filter_map(|e| {
            let g = &e.graph;
            let n = g.order();
            let classes = canonical_partition(g).unwrap();
            let mut class_of = vec![usize::MAX; n];
            for (i, c) in classes.iter().enumerate() {
                for v in c.iter() {
                    if class_of[v] != usize::MAX {
                        return Some(format!("vertex {v} in two classes of {}", describe(g)));
                    }
                    class_of[v] = i;
                }
            }
            if class_of.contains(&usize::MAX) {
                return Some(format!("classes miss a vertex of {}", describe(g)));
            }
            for u in 0..n {
                for v in u + 1..n {
                    let together = class_of[u] == class_of[v];
                    if together == is_matchable_without(g, &[u, v]) {
                        return Some(format!("pair {u}{v} misplaced in {}", describe(g)));
                    }
                }
            }
            None
        })
        .collect();
    report(10, "canonical partition matches pairwise matchability", entries.len(), &failures);
}

#[test]
fn criterion_11_edge_bounds() {
    let entries = corpus_entries();
    let free: Vec<&Entry> = entries.iter().filter(|e| e.cert.is_free()).collect();
    let failures: Vec<String> = free
        .par_iter()
        .filter_map(|e| {
            let r = check_bounds(&e.graph).unwrap();
            let mut bad = Vec::new();
            if !(r.size_by_bricks_holds && r.bricks_holds && r.size_holds) {
                bad.push("an inequality fails");
            }
            if r.size_by_bricks_tight != r.in_t {
                bad.push("equality in (i) disagrees with membership in T");
            }
            if r.bricks_tight != r.in_t0 {
                bad.push("equality in (ii) disagrees with membership in T0");
            }
            if r.size_tight != r.in_t0 {
                bad.push("equality in (iii) disagrees with membership in T0");
            }
            (!bad.is_empty()).then(|| format!("{} on n={} m={} b={}: {}", bad.join(", "), r.n, r.m, r.b, describe(&e.graph)))
        })
        .collect();
    report(11, "edge bounds hold on θ-free graphs, tight exactly on the families", free.len(), &failures);
}

#[test]
fn criterion_12_min_degree_four() {
    let mut rng = seeded(12);
    let graphs: Vec<Multigraph> = (0..100)
        .map(|_| {
            let n = 2 * rng.gen_range(3..=6);
            random_min_degree4(n, &mut rng).unwrap()
        })
        .collect();
    let failures: Vec<String> = graphs
        .par_iter()
        .filter_map(|g| {
            let cert = is_theta_free(g, DEFAULT_SEARCH_CAP).unwrap();
            (cert.verdict != Verdict::Based).then(|| describe(g))
        })
        .collect();
    report(12, "minimum degree four forces BASED", graphs.len(), &failures);
}

/// Places in a certificate where a single field can be changed.
fn mutation_sites(v: &Value, path: String, out: &mut Vec<String>) {
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                let p = format!("{path}/{k}");
                match child {
                    Value::Object(_) => {}
                    Value::Array(items) if k == "children" || k == "paths" || k == "components" => {
                        out.push(p.clone());
                        for (i, item) in items.iter().enumerate() {
                            mutation_sites(item, format!("{p}/{i}"), out);
                        }
                        continue;
                    }
                    _ => out.push(p.clone()),
                }
                mutation_sites(child, p, out);
            }
        }
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                if !item.is_object() {
                    out.push(format!("{path}/{i}"));
                }
                mutation_sites(item, format!("{path}/{i}"), out);
            }
        }
        _ => {}
    }
}

/// Changes the field at `site` to a different value of the same shape.
fn mutate(root: &mut Value, site: &str, n: usize, rng: &mut impl Rng) {
    let key = site.rsplit('/').next().unwrap().to_string();
    let target = root.pointer_mut(site).unwrap();
    match target {
        Value::String(s) => {
            let options: &[&str] = match key.as_str() {
                "verdict" => &["FREE", "BASED"],
                "base" => &["K2", "C2", "K4", "petersen", "prism"],
                "reason" => &["nonleaf-brick", "nonleaf-brace", "2sep-3-components", "adjacent-parallel-cycle"],
                _ => &["leaf", "barrier", "two_separation", "based"],
            };
            let choices: Vec<&&str> = options.iter().filter(|o| **o != s.as_str()).collect();
            *s = choices.choose(rng).unwrap().to_string();
        }
        Value::Number(x) => {
            let old = x.as_u64().unwrap() as usize;
            let mut new = rng.gen_range(0..n.max(2));
            if new == old {
                new = (old + 1) % n.max(2);
            }
            *target = Value::from(new);
        }
        Value::Null => *target = Value::from(rng.gen_range(0..n)),
        Value::Bool(b) => *b = !*b,
        Value::Array(items) if !items.is_empty() => {
            let i = rng.gen_range(0..items.len());
            items.remove(i);
        }
        Value::Array(items) => items.push(Value::from(0)),
        Value::Object(map) => {
            map.remove("witness");
        }
    }
}

#[test]
fn criterion_13_certificate_integrity() {
    let entries = corpus_entries();
    let accepted: Vec<String> = entries
        .par_iter()
        .filter_map(|e| certificate_problem(&e.graph, &e.cert).map(|p| format!("{p} on {}", describe(&e.graph))))
        .collect();
    let mut rng = seeded(13);
    let pool: Vec<&Entry> = entries.iter().filter(|e| e.graph.order() >= 4).collect();
    let mut rejected = 0;
    let mut survivors = Vec::new();
    for _ in 0..100 {
        let e = pool.choose(&mut rng).unwrap();
        let mut v = serde_json::to_value(&e.cert).unwrap();
        let mut sites = Vec::new();
        mutation_sites(&v, String::new(), &mut sites);
        let site = sites.choose(&mut rng).unwrap().clone();
        mutate(&mut v, &site, e.graph.order(), &mut rng);
        match verify_certificate_json(&e.graph, &v.to_string()) {
            Err(_) | Ok(Some(_)) => rejected += 1,
            Ok(None) => survivors.push(format!("mutation at {site} accepted on {}", describe(&e.graph))),
        }
    }
    println!("    {} certificates accepted, {rejected}/100 mutations rejected", entries.len() - accepted.len());
    let failures: Vec<String> = accepted.into_iter().chain(survivors).collect();
    report(13, "certificates verify and single-field mutations are rejected", entries.len() + 100, &failures);
}

#[test]
fn criterion_14_elp_cuts() {
    let entries = corpus_entries();
    let results: Vec<Option<Option<String>>> = entries
        .par_iter()
        .map(|e| {
            let g = &e.graph;
            if g.order() < 4 || is_brick(g) || is_brace(g) {
                return None;
            }
            let found = match elp_cut(g).unwrap() {
                None => Some(format!("no ELP cut for {}", describe(g))),
                Some(cut) => {
                    let shore: &VertexSet = cut.shore();
                    (!is_tight_cut(g, shore).unwrap()).then(|| format!("cut {:?} not tight in {}", shore.as_slice(), describe(g)))
                }
            };
            Some(found)
        })
        .collect();
    let checked = results.iter().filter(|r| r.is_some()).count();
    let failures: Vec<String> = results.into_iter().flatten().flatten().collect();
    report(14, "graphs that are neither bricks nor braces have a tight ELP cut", checked, &failures);
}
