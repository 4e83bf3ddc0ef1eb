//! Small graphs with fixed labellings.
//!
//! | name      | labelling                                                        |
//! |-----------|------------------------------------------------------------------|
//! | `K2`      | edge 0-1                                                          |
//! | `C2`      | two parallel edges 0-1                                           |
//! | `C2k`     | cycle 0-1-..-(2k-1)-0; `C2` when k = 1                            |
//! | `theta`   | three parallel edges 0-1                                         |
//! | `K4`      | all six pairs of 0..4                                            |
//! | `C4star`  | cycle 0-1-2-3 with 1-2 and 3-0 doubled                           |
//! | `prism`   | triangles 0-1-2 and 3-4-5, rungs 0-3, 1-4, 2-5                   |
//! | `K33`     | colour classes {0,1,2} and {3,4,5}                               |
//! | `cube`    | 3-bit strings, adjacent when they differ in one bit              |
//! | `petersen`| outer cycle 0..5, spokes i-(i+5), inner pentagram (5+i)-(5+(i+2)%5) |
//! | `T6`      | 2-separation {0,1}; sides {2,3} and {4,5}, each forming K4 with 0,1 minus the edge 01 |
//! | `bicorn`  | outer 5-cycle 0-1-2-3-4, 5 adjacent to 0,4,6; 7 adjacent to 6,2,3; removable edge 1-6 last |

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Multigraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NamedGraph {
    K2,
    C2,
    /// The even cycle on `2k` vertices.
    EvenCycle(usize),
    Theta,
    K4,
    C4Star,
    Prism,
    K33,
    Cube,
    Petersen,
    T6,
    Bicorn,
}

impl NamedGraph {
    pub const ALL_FIXED: [NamedGraph; 11] = [
        NamedGraph::K2,
        NamedGraph::C2,
        NamedGraph::Theta,
        NamedGraph::K4,
        NamedGraph::C4Star,
        NamedGraph::Prism,
        NamedGraph::K33,
        NamedGraph::Cube,
        NamedGraph::Petersen,
        NamedGraph::T6,
        NamedGraph::Bicorn,
    ];

    pub fn build(self) -> Multigraph {
        let (n, edges): (usize, Vec<(usize, usize)>) = match self {
            NamedGraph::K2 => (2, vec![(0, 1)]),
            NamedGraph::C2 | NamedGraph::EvenCycle(1) => (2, vec![(0, 1), (0, 1)]),
            NamedGraph::EvenCycle(k) => {
                let n = 2 * k.max(1);
                (n, (0..n).map(|i| (i, (i + 1) % n)).collect())
            }
            NamedGraph::Theta => (2, vec![(0, 1); 3]),
            NamedGraph::K4 => (4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
            NamedGraph::C4Star => (4, vec![(0, 1), (1, 2), (1, 2), (2, 3), (3, 0), (3, 0)]),
            NamedGraph::Prism => (
                6,
                vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)],
            ),
            NamedGraph::K33 => {
                (6, (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect())
            }
            NamedGraph::Cube => (
                8,
                (0..8usize)
                    .flat_map(|v| (0..3).map(move |bit| (v, v ^ (1 << bit))))
                    .filter(|&(v, w)| v < w)
                    .collect(),
            ),
            NamedGraph::Petersen => {
                let mut e = Vec::new();
                for i in 0..5 {
                    e.push((i, (i + 1) % 5));
                }
                for i in 0..5 {
                    e.push((i, i + 5));
                }
                for i in 0..5 {
                    e.push((5 + i, 5 + (i + 2) % 5));
                }
                (10, e)
            }
            NamedGraph::T6 => (
                6,
                vec![
                    (0, 2),
                    (0, 3),
                    (1, 2),
                    (1, 3),
                    (2, 3),
                    (0, 4),
                    (0, 5),
                    (1, 4),
                    (1, 5),
                    (4, 5),
                ],
            ),
            NamedGraph::Bicorn => (
                8,
                vec![
                    (0, 1),
                    (1, 2),
                    (2, 3),
                    (3, 4),
                    (4, 0),
                    (0, 5),
                    (5, 4),
                    (5, 6),
                    (6, 7),
                    (7, 2),
                    (7, 3),
                    (6, 1),
                ],
            ),
        };
        Multigraph::from_edges(n, &edges).expect("named graphs are well formed")
    }
}

impl fmt::Display for NamedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedGraph::K2 => write!(f, "K2"),
            NamedGraph::C2 => write!(f, "C2"),
            NamedGraph::EvenCycle(k) => write!(f, "C{}", 2 * k),
            NamedGraph::Theta => write!(f, "theta"),
            NamedGraph::K4 => write!(f, "K4"),
            NamedGraph::C4Star => write!(f, "C4star"),
            NamedGraph::Prism => write!(f, "prism"),
            NamedGraph::K33 => write!(f, "K33"),
            NamedGraph::Cube => write!(f, "cube"),
            NamedGraph::Petersen => write!(f, "petersen"),
            NamedGraph::T6 => write!(f, "T6"),
            NamedGraph::Bicorn => write!(f, "bicorn"),
        }
    }
}

impl FromStr for NamedGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        let named = match lower.as_str() {
            "k2" => NamedGraph::K2,
            "c2" => NamedGraph::C2,
            "theta" => NamedGraph::Theta,
            "k4" => NamedGraph::K4,
            "c4star" | "c4*" => NamedGraph::C4Star,
            "prism" | "c6bar" => NamedGraph::Prism,
            "k33" | "k3,3" => NamedGraph::K33,
            "cube" => NamedGraph::Cube,
            "petersen" => NamedGraph::Petersen,
            "t6" => NamedGraph::T6,
            "bicorn" => NamedGraph::Bicorn,
            other => {
                let len = other
                    .strip_prefix('c')
                    .and_then(|d| d.parse::<usize>().ok())
                    .filter(|&l| l >= 2 && l % 2 == 0)
                    .ok_or_else(|| Error::UnknownName(s.to_string()))?;
                NamedGraph::EvenCycle(len / 2)
            }
        };
        Ok(named)
    }
}

impl serde::Serialize for NamedGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for NamedGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_match_the_figures() {
        let p = NamedGraph::Petersen.build();
        assert_eq!((p.order(), p.size(), p.min_degree(), p.max_degree()), (10, 15, 3, 3));
        let t = NamedGraph::Theta.build();
        assert_eq!((t.order(), t.size()), (2, 3));
        let t6 = NamedGraph::T6.build();
        assert_eq!((t6.order(), t6.size()), (6, 10));
        assert_eq!(t6.degree_sequence(), vec![4, 4, 3, 3, 3, 3]);
        assert_eq!(t6.degree(0), 4);
        assert_eq!(t6.degree(1), 4);
        let b = NamedGraph::Bicorn.build();
        assert_eq!((b.order(), b.size(), b.min_degree(), b.max_degree()), (8, 12, 3, 3));
        let c = NamedGraph::Cube.build();
        assert_eq!((c.order(), c.size()), (8, 12));
        assert!(c.is_bipartite());
    }

    #[test]
    fn names_round_trip() {
        for g in NamedGraph::ALL_FIXED {
            assert_eq!(g.to_string().parse::<NamedGraph>().unwrap(), g);
        }
        assert_eq!("C10".parse::<NamedGraph>().unwrap(), NamedGraph::EvenCycle(5));
        assert!(matches!("C7".parse::<NamedGraph>(), Err(Error::UnknownName(_))));
        assert!(matches!("dodecahedron".parse::<NamedGraph>(), Err(Error::UnknownName(_))));
    }
}
