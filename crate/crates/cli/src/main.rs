//! `theta-kit`: decide θ-freeness, decompose, verify certificates and
//! generate graphs.
//!
//! Exit codes: `theta` gives 0 for FREE and 1 for BASED; `verify` gives 0
//! when the certificate is accepted and 1 when it is rejected; `check` gives
//! 0 for a matching covered graph and 1 otherwise. Any input error gives 2.
//! In json mode stdout carries only JSON; diagnostics go to stderr.

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use theta_kit::decomposition::{tight_cut_decomposition, ElpPolicy, RandomPolicy};
use theta_kit::family::{check_bounds, generate_family, Family};
use theta_kit::generate::{random_matching_covered, seeded};
use theta_kit::io::{parse_graph, write_graph};
use theta_kit::matching::matching_covered_obstruction;
use theta_kit::theta::{is_theta_free, Node, DEFAULT_SEARCH_CAP};
use theta_kit::verify::verify_certificate_json;
use theta_kit::{Multigraph, NamedGraph, Verdict};

#[derive(Parser)]
#[command(name = "theta-kit", version, about = "Conformal θ bisubdivisions in matching covered graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct Input {
    /// A built-in graph: K2, C2, C<2k>, theta, K4, C4star, prism, K33, cube,
    /// petersen, T6, bicorn.
    #[arg(long, conflicts_with = "input")]
    named: Option<NamedGraph>,
    /// Edge-list file (`n m` header, then `u v` per line); `-` reads stdin.
    #[arg(long)]
    input: Option<PathBuf>,
}

impl Input {
    fn load(&self) -> Result<Multigraph> {
        match (&self.named, &self.input) {
            (Some(name), _) => Ok(name.build()),
            (None, Some(path)) => {
                let text = read_text(path)?;
                parse_graph(&text).with_context(|| format!("parsing {}", path.display()))
            }
            (None, None) => bail!("give --named or --input"),
        }
    }
}

fn read_text(path: &PathBuf) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the graph is θ-free and print a certificate.
    Theta {
        #[command(flatten)]
        input: Input,
        /// Largest brick searched exhaustively for a witness.
        #[arg(long, default_value_t = DEFAULT_SEARCH_CAP)]
        search_cap: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Tight cut decomposition: bricks, braces and b.
    Decompose {
        #[command(flatten)]
        input: Input,
        /// Choose cuts at random with this seed instead of ELP cuts.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Check a certificate against a graph.
    Verify {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        certificate: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Generate graphs.
    Gen {
        #[arg(long, conflicts_with_all = ["family", "random_mcg"])]
        named: Option<NamedGraph>,
        /// All members of a family (T or T0) up to --max-n vertices.
        #[arg(long, conflicts_with = "random_mcg")]
        family: Option<Family>,
        #[arg(long, default_value_t = 10)]
        max_n: usize,
        /// A random matching covered graph grown by ears.
        #[arg(long)]
        random_mcg: bool,
        #[arg(long, default_value_t = 10)]
        n: usize,
        /// Extra single-edge ears after reaching the order.
        #[arg(long, default_value_t = 0)]
        extra: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Matching covered test, brick count and edge bounds.
    Check {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

fn print_json(value: serde_json::Value) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(&value)?);
    Ok(())
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Theta { input, search_cap, format } => {
            let g = input.load()?;
            let cert = is_theta_free(&g, search_cap)?;
            match format {
                Format::Json => print_json(serde_json::to_value(&cert)?)?,
                Format::Text => {
                    println!("{}", cert.verdict);
                    print_tree(&cert.tree, 0);
                }
            }
            Ok(if cert.verdict == Verdict::Free { 0 } else { 1 })
        }
        Command::Decompose { input, seed, format } => {
            let g = input.load()?;
            let d = match seed {
                Some(s) => tight_cut_decomposition(&g, &mut RandomPolicy { rng: seeded(s) })?,
                None => tight_cut_decomposition(&g, &mut ElpPolicy)?,
            };
            match format {
                Format::Json => print_json(serde_json::to_value(&d)?)?,
                Format::Text => {
                    println!("b = {}", d.b);
                    for b in &d.bricks {
                        println!("brick: {} vertices, {} edges", b.order(), b.size());
                    }
                    for b in &d.braces {
                        println!("brace: {} vertices, {} edges", b.order(), b.size());
                    }
                }
            }
            Ok(0)
        }
        Command::Verify { input, certificate, format } => {
            let g = input.load()?;
            let text = read_text(&certificate)?;
            let problem = verify_certificate_json(&g, &text)?;
            match format {
                Format::Json => print_json(json!({ "valid": problem.is_none(), "problem": problem }))?,
                Format::Text => match &problem {
                    None => println!("valid"),
                    Some(p) => println!("invalid: {p}"),
                },
            }
            Ok(if problem.is_none() { 0 } else { 1 })
        }
        Command::Gen { named, family, max_n, random_mcg, n, extra, seed, format } => {
            let graphs: Vec<(Multigraph, serde_json::Value)> = if let Some(name) = named {
                vec![(name.build(), json!(name.to_string()))]
            } else if let Some(which) = family {
                generate_family(which, max_n)?
                    .into_iter()
                    .map(|(g, tree)| Ok((g, serde_json::to_value(tree)?)))
                    .collect::<Result<_>>()?
            } else if random_mcg {
                vec![(random_matching_covered(n, extra, &mut seeded(seed))?, json!({ "seed": seed }))]
            } else {
                bail!("give --named, --family or --random-mcg");
            };
            match format {
                Format::Text => {
                    let blocks: Vec<String> = graphs.iter().map(|(g, _)| write_graph(g)).collect();
                    print!("{}", blocks.join("\n"));
                }
                Format::Json => {
                    let items: Vec<_> =
                        graphs.iter().map(|(g, info)| json!({ "graph": write_graph(g), "source": info })).collect();
                    print_json(json!(items))?;
                }
            }
            Ok(0)
        }
        Command::Check { input, format } => {
            let g = input.load()?;
            let obstruction = matching_covered_obstruction(&g);
            let bounds = match obstruction {
                None => Some(check_bounds(&g)?),
                Some(_) => None,
            };
            match format {
                Format::Json => print_json(json!({
                    "n": g.order(),
                    "m": g.size(),
                    "matching_covered": obstruction.is_none(),
                    "obstruction": obstruction.as_ref().map(|o| o.to_string()),
                    "bounds": bounds,
                }))?,
                Format::Text => match (&obstruction, &bounds) {
                    (Some(o), _) => println!("not matching covered: {o}"),
                    (None, Some(r)) => {
                        println!("matching covered, n = {}, m = {}, b = {}", r.n, r.m, r.b);
                        println!("in T: {}, in T0: {}", r.in_t, r.in_t0);
                    }
                    (None, None) => unreachable!(),
                },
            }
            Ok(if obstruction.is_none() { 0 } else { 1 })
        }
    }
}

fn print_tree(node: &Node, depth: usize) {
    let pad = "  ".repeat(depth);
    match node {
        Node::Leaf { base } => println!("{pad}leaf {base}"),
        Node::Barrier { barrier, children, .. } => {
            println!("{pad}barrier {:?}", barrier.as_slice());
            children.iter().for_each(|c| print_tree(&c.node, depth + 1));
        }
        Node::TwoSeparation { u, v, children, .. } => {
            println!("{pad}2-separation {{{u}, {v}}}");
            children.iter().for_each(|c| print_tree(&c.node, depth + 1));
        }
        Node::Based { reason, witness, .. } => {
            let note = if witness.is_some() { "with witness" } else { "no witness" };
            println!("{pad}based: {reason} ({note})");
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
