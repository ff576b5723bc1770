//! Checkers for facially proper, FPE, quasi-facially-odd and odd colorings,
//! and the exact facial parity chromatic index by partition enumeration.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::coloring::{Color, EdgeColoring};
use crate::multigraph::BundledMultigraph;
use crate::oddcolor::OddColoring;
use crate::partition;
use crate::planemap::{edge_of, EdgeId, FaceId, PlaneMap, VertexId};
use crate::qfo::QfoColoring;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("coloring covers {got} edges, expected {expected}")]
    ColoringLength { expected: usize, got: usize },
    #[error("listed edges {0:?} do not form a C5-block")]
    NotC5Block(Vec<EdgeId>),
    #[error("instance has {edges} edges; exact search is limited to {limit}")]
    TooLarge { edges: usize, limit: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// Two face-adjacent edges share a color.
    FaceAdjacent {
        face: FaceId,
        edges: [EdgeId; 2],
        color: Color,
    },
    /// A color occurs an even, nonzero number of times on a facial walk.
    FaceParity {
        face: FaceId,
        color: Color,
        count: usize,
    },
    /// Two adjacent faces share an even, nonzero number of edges of one color.
    FacePairParity {
        faces: [FaceId; 2],
        color: Color,
        count: usize,
    },
    /// A C5-block does not use exactly four colors.
    C5Palette { block: Vec<EdgeId>, colors: usize },
    /// The doubled color of a C5-block sits on face-adjacent edges.
    C5Repeat {
        block: Vec<EdgeId>,
        color: Color,
        edges: [EdgeId; 2],
    },
    /// A color class has even, nonzero degree at a vertex.
    VertexParity {
        vertex: VertexId,
        color: Color,
        degree: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub verdict: Verdict,
    pub violations: Vec<Violation>,
}

impl CheckReport {
    fn from_violations(violations: Vec<Violation>) -> Self {
        let verdict = if violations.is_empty() {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        CheckReport {
            verdict,
            violations,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

fn check_length(expected: usize, got: usize) -> Result<(), VerifyError> {
    if expected == got {
        Ok(())
    } else {
        Err(VerifyError::ColoringLength { expected, got })
    }
}

fn proper_violations(g: &PlaneMap, c: &EdgeColoring) -> Vec<Violation> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for walk in g.facial_walks() {
        let n = walk.len();
        for i in 0..n {
            let a = edge_of(walk.half_edges[i]);
            let b = edge_of(walk.half_edges[(i + 1) % n]);
            if a == b || c.color(a) != c.color(b) {
                continue;
            }
            let edges = [a.min(b), a.max(b)];
            if seen.insert((walk.face, edges)) {
                out.push(Violation::FaceAdjacent {
                    face: walk.face,
                    edges,
                    color: c.color(a),
                });
            }
        }
    }
    out
}

fn face_parity_violations(g: &PlaneMap, c: &EdgeColoring) -> Vec<Violation> {
    let mut out = Vec::new();
    for walk in g.facial_walks() {
        let mut counts: BTreeMap<Color, usize> = BTreeMap::new();
        for e in walk.edges() {
            *counts.entry(c.color(e)).or_default() += 1;
        }
        for (color, count) in counts {
            if count % 2 == 0 {
                out.push(Violation::FaceParity {
                    face: walk.face,
                    color,
                    count,
                });
            }
        }
    }
    out
}

pub fn check_facially_proper(g: &PlaneMap, c: &EdgeColoring) -> Result<CheckReport, VerifyError> {
    check_length(g.edge_count(), c.len())?;
    Ok(CheckReport::from_violations(proper_violations(g, c)))
}

/// Facially proper, and every color occurs an odd number of times or not at
/// all along every facial walk (walk occurrences counted).
pub fn check_fpe(g: &PlaneMap, c: &EdgeColoring) -> Result<CheckReport, VerifyError> {
    check_length(g.edge_count(), c.len())?;
    let mut v = proper_violations(g, c);
    v.extend(face_parity_violations(g, c));
    Ok(CheckReport::from_violations(v))
}

pub fn check_quasi_facially_odd(g: &PlaneMap, q: &QfoColoring) -> Result<CheckReport, VerifyError> {
    let c = &q.coloring;
    check_length(g.edge_count(), c.len())?;
    let actual: BTreeSet<Vec<EdgeId>> = g.blocks().c5_blocks().map(|b| b.edges.clone()).collect();
    let mut listed: Vec<Vec<EdgeId>> = Vec::new();
    for block in &q.c5_blocks {
        let mut sorted = block.clone();
        sorted.sort_unstable();
        if !actual.contains(&sorted) {
            return Err(VerifyError::NotC5Block(block.clone()));
        }
        listed.push(sorted);
    }
    let mut in_block = vec![usize::MAX; g.edge_count()];
    for (i, block) in listed.iter().enumerate() {
        for &e in block {
            in_block[e] = i;
        }
    }

    let mut v = proper_violations(g, c);
    for ((f, f2), common) in g.adjacent_face_pairs() {
        let waived = in_block[common[0]] != usize::MAX
            && common.iter().all(|&e| in_block[e] == in_block[common[0]]);
        if waived {
            continue;
        }
        let mut counts: BTreeMap<Color, usize> = BTreeMap::new();
        for &e in &common {
            *counts.entry(c.color(e)).or_default() += 1;
        }
        for (color, count) in counts {
            if count % 2 == 0 {
                v.push(Violation::FacePairParity {
                    faces: [f, f2],
                    color,
                    count,
                });
            }
        }
    }

    let adjacent = g.face_adjacent_pairs();
    for block in &listed {
        let colors: BTreeSet<Color> = block.iter().map(|&e| c.color(e)).collect();
        if colors.len() != 4 {
            v.push(Violation::C5Palette {
                block: block.clone(),
                colors: colors.len(),
            });
            continue;
        }
        for (i, &a) in block.iter().enumerate() {
            for &b in &block[i + 1..] {
                if c.color(a) == c.color(b) && adjacent.contains(&(a, b)) {
                    v.push(Violation::C5Repeat {
                        block: block.clone(),
                        color: c.color(a),
                        edges: [a, b],
                    });
                }
            }
        }
    }
    Ok(CheckReport::from_violations(v))
}

pub fn check_odd(m: &BundledMultigraph, c: &OddColoring) -> Result<CheckReport, VerifyError> {
    check_length(m.edge_count(), c.len())?;
    let mut v = Vec::new();
    for x in 0..m.vertex_count() {
        let mut counts: BTreeMap<Color, usize> = BTreeMap::new();
        for &i in m.incident(x) {
            *counts.entry(c.color(i)).or_default() += 1;
        }
        for (color, degree) in counts {
            if degree % 2 == 0 {
                v.push(Violation::VertexParity {
                    vertex: x,
                    color,
                    degree,
                });
            }
        }
    }
    Ok(CheckReport::from_violations(v))
}

/// Largest instance accepted by [`exact_chi_fp`].
pub const EXACT_FPE_EDGE_LIMIT: usize = 12;

/// Minimum number of colors in an FPE-coloring, or `None` if more than
/// `max_blocks` are needed. Partitions are pruned as soon as a block holds a
/// face-adjacent pair; parity is checked on complete partitions.
pub fn exact_chi_fp(g: &PlaneMap, max_blocks: usize) -> Result<Option<usize>, VerifyError> {
    let m = g.edge_count();
    if m > EXACT_FPE_EDGE_LIMIT {
        return Err(VerifyError::TooLarge {
            edges: m,
            limit: EXACT_FPE_EDGE_LIMIT,
        });
    }
    let earlier: Vec<Vec<EdgeId>> = g
        .medial_adjacency_graph()
        .into_iter()
        .enumerate()
        .map(|(e, adj)| adj.into_iter().filter(|&x| x < e).collect())
        .collect();
    let walks: Vec<Vec<EdgeId>> = g
        .facial_walks()
        .iter()
        .map(|w| w.edges().collect())
        .collect();
    let result = partition::min_blocks(
        m,
        max_blocks,
        |prefix, block| earlier[prefix.len()].iter().all(|&x| prefix[x] != block),
        |rgs| {
            walks.iter().all(|walk| {
                let mut counts = [0usize; EXACT_FPE_EDGE_LIMIT];
                for &e in walk {
                    counts[rgs[e]] += 1;
                }
                counts.iter().all(|&n| n % 2 == 1 || n == 0)
            })
        },
    );
    Ok(result.map(|(k, _)| k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{cycle, theta, two_pentagons};

    fn col(v: &[Color]) -> EdgeColoring {
        EdgeColoring::new(v.to_vec())
    }

    #[test]
    fn proper_examples() {
        let c3 = cycle(3).unwrap();
        assert!(check_facially_proper(&c3, &col(&[1, 2, 3]))
            .unwrap()
            .passed());
        let r = check_facially_proper(&c3, &col(&[1, 1, 2])).unwrap();
        assert_eq!(r.violations.len(), 2, "the pair is reported once per face");
        assert!(r
            .violations
            .iter()
            .all(|v| matches!(v, Violation::FaceAdjacent { edges: [0, 1], .. })));
        let c4 = cycle(4).unwrap();
        assert!(check_facially_proper(&c4, &col(&[1, 2, 1, 2]))
            .unwrap()
            .passed());
        assert_eq!(
            check_facially_proper(&c4, &col(&[1, 2])),
            Err(VerifyError::ColoringLength {
                expected: 4,
                got: 2
            })
        );
    }

    #[test]
    fn fpe_examples() {
        let c4 = cycle(4).unwrap();
        assert!(check_fpe(&c4, &col(&[1, 2, 3, 4])).unwrap().passed());
        let r = check_fpe(&c4, &col(&[1, 2, 1, 2])).unwrap();
        assert!(r
            .violations
            .iter()
            .any(|v| matches!(v, Violation::FaceParity { count: 2, .. })));
        assert!(check_fpe(&cycle(5).unwrap(), &col(&[1, 2, 3, 4, 5]))
            .unwrap()
            .passed());
        let tp = two_pentagons();
        assert!(check_fpe(&tp, &col(&(1..=10).collect::<Vec<_>>()))
            .unwrap()
            .passed());
    }

    #[test]
    fn quasi_examples() {
        let c5 = cycle(5).unwrap();
        let block = vec![vec![0, 1, 2, 3, 4]];
        let q = QfoColoring {
            coloring: col(&[1, 2, 1, 3, 4]),
            c5_blocks: block.clone(),
        };
        assert!(check_quasi_facially_odd(&c5, &q).unwrap().passed());
        let q = QfoColoring {
            coloring: col(&[1, 2, 1, 2, 3]),
            c5_blocks: block,
        };
        assert!(!check_quasi_facially_odd(&c5, &q).unwrap().passed());

        let c9 = cycle(9).unwrap();
        let q = QfoColoring {
            coloring: col(&[1, 2, 3, 1, 2, 3, 1, 2, 3]),
            c5_blocks: Vec::new(),
        };
        assert!(check_quasi_facially_odd(&c9, &q).unwrap().passed());

        let q = QfoColoring {
            coloring: col(&[1, 2, 3, 1, 2, 3, 1, 2, 3]),
            c5_blocks: vec![vec![0, 1, 2, 3, 4]],
        };
        assert!(matches!(
            check_quasi_facially_odd(&c9, &q),
            Err(VerifyError::NotC5Block(_))
        ));
    }

    #[test]
    fn odd_examples() {
        let k2 = BundledMultigraph::from_pairs(2, &[(0, 1)]).unwrap();
        assert!(check_odd(&k2, &OddColoring::new(vec![1])).unwrap().passed());
        let c4 = BundledMultigraph::from_pairs(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(check_odd(&c4, &OddColoring::new(vec![1, 2, 1, 2]))
            .unwrap()
            .passed());
        let r = check_odd(&c4, &OddColoring::new(vec![1; 4])).unwrap();
        assert_eq!(r.violations.len(), 4);
    }

    #[test]
    fn exact_index_small_fixtures() {
        assert_eq!(exact_chi_fp(&cycle(2).unwrap(), 12).unwrap(), Some(2));
        assert_eq!(exact_chi_fp(&cycle(3).unwrap(), 12).unwrap(), Some(3));
        assert_eq!(exact_chi_fp(&cycle(4).unwrap(), 12).unwrap(), Some(4));
        assert_eq!(exact_chi_fp(&cycle(5).unwrap(), 12).unwrap(), Some(5));
        assert_eq!(exact_chi_fp(&cycle(5).unwrap(), 4).unwrap(), None);
        assert_eq!(exact_chi_fp(&theta(3).unwrap(), 12).unwrap(), Some(3));
        assert!(matches!(
            exact_chi_fp(&cycle(13).unwrap(), 13),
            Err(VerifyError::TooLarge { .. })
        ));
    }
}
