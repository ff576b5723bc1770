//! FPE-colorings with at most 16 colors: a quasi-facially-odd 4-coloring is
//! refined by odd colorings of the dual restricted to each color class.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::coloring::{Color, EdgeColoring};
use crate::oddcolor::{odd_color_component, OddColorError, Strategy};
use crate::planemap::{EdgeId, FaceId, MapError, PlaneMap};
use crate::qfo::{qfo_color, QfoColoring, QfoError};
use crate::verify::{check_fpe, CheckReport, VerifyError};

/// Palette bound of a single dual component's odd coloring.
pub const ODD_BOUND: usize = 4;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FpeError {
    #[error("map is not 2-edge-connected: edge {0} is a bridge")]
    NotTwoEdgeConnected(EdgeId),
    #[error(transparent)]
    Qfo(#[from] QfoError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error("class {color}: {violation}")]
    Bundle {
        color: Color,
        violation: BundleViolation,
    },
    #[error("class {color}: dual component on faces {faces:?} needs {colors} odd colors")]
    BoundViolation {
        color: Color,
        faces: Vec<FaceId>,
        colors: usize,
        trace: Box<FpeTrace>,
    },
    #[error("class {color}: {source}")]
    Odd { color: Color, source: OddColorError },
    #[error("final coloring failed the FPE check with {} violations", .0.violations.len())]
    CheckFailed(CheckReport),
}

/// A bundle of the restricted dual that is even and not a 2-bundle of a C5-block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Error)]
#[error("faces {faces:?} share {} edges {edges:?}", .edges.len())]
pub struct BundleViolation {
    pub faces: (FaceId, FaceId),
    pub edges: Vec<EdgeId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeLabel {
    pub edge: EdgeId,
    pub color: Color,
}

/// Odd coloring of one connected component of a restricted dual.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentColoring {
    pub faces: Vec<FaceId>,
    pub strategy: Strategy,
    pub palette_size: usize,
    pub edges: Vec<EdgeLabel>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassTrace {
    pub color: Color,
    pub components: Vec<ComponentColoring>,
}

/// Final label of the pair (QFO class, odd color).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PaletteEntry {
    pub class: Color,
    pub odd: Color,
    pub label: Color,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FpeTrace {
    pub qfo: QfoColoring,
    pub classes: Vec<ClassTrace>,
    pub compaction: Vec<PaletteEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpeResult {
    pub coloring: EdgeColoring,
    pub palette_size: usize,
    pub trace: FpeTrace,
}

/// Labels `1..=K` in lexicographic order of the pairs.
pub fn compact_palette(pairs: &BTreeSet<(Color, Color)>) -> BTreeMap<(Color, Color), Color> {
    pairs
        .iter()
        .enumerate()
        .map(|(i, &p)| (p, i as Color + 1))
        .collect()
}

/// Even bundles of the dual restricted to class `c`, except 2-bundles whose
/// edges lie in one listed C5-block.
pub fn dual_bundle_violations(
    g: &PlaneMap,
    q: &QfoColoring,
    c: Color,
) -> Result<Vec<BundleViolation>, FpeError> {
    let dual = g.dual_restricted(&q.coloring, c)?;
    let mut block_of = vec![usize::MAX; g.edge_count()];
    for (i, block) in q.c5_blocks.iter().enumerate() {
        for &e in block {
            block_of[e] = i;
        }
    }
    let mut out = Vec::new();
    for (faces, members) in dual.bundles() {
        if members.len() % 2 == 1 {
            continue;
        }
        let edges: Vec<EdgeId> = members.iter().map(|&i| dual.edge(i).id).collect();
        let c5_pair = edges.len() == 2
            && block_of[edges[0]] != usize::MAX
            && block_of[edges[0]] == block_of[edges[1]];
        if !c5_pair {
            out.push(BundleViolation { faces, edges });
        }
    }
    Ok(out)
}

pub fn fpe_color(g: &PlaneMap) -> Result<FpeResult, FpeError> {
    if let Some(&e) = g.bridges().first() {
        return Err(FpeError::NotTwoEdgeConnected(e));
    }
    let q = qfo_color(g)?;
    let mut pair_of: Vec<(Color, Color)> = vec![(0, 0); g.edge_count()];
    let mut classes = Vec::new();

    for c in 1..=4 {
        if let Some(violation) = dual_bundle_violations(g, &q, c)?.into_iter().next() {
            return Err(FpeError::Bundle {
                color: c,
                violation,
            });
        }
        let dual = g.dual_restricted(&q.coloring, c)?;
        let mut components = Vec::new();
        for faces in dual.components().into_iter().filter(|f| f.len() > 1) {
            let sub = dual.induced(&faces);
            let d = odd_color_component(&sub.graph)
                .map_err(|source| FpeError::Odd { color: c, source })?;
            let palette_size = d.coloring.palette_size();
            let edges: Vec<EdgeLabel> = sub
                .graph
                .edges()
                .iter()
                .enumerate()
                .map(|(j, e)| EdgeLabel {
                    edge: e.id,
                    color: d.coloring.color(j),
                })
                .collect();
            let component = ComponentColoring {
                faces,
                strategy: d.strategy,
                palette_size,
                edges,
            };
            if palette_size > ODD_BOUND {
                components.push(component.clone());
                classes.push(ClassTrace {
                    color: c,
                    components,
                });
                return Err(FpeError::BoundViolation {
                    color: c,
                    faces: component.faces,
                    colors: palette_size,
                    trace: Box::new(FpeTrace {
                        qfo: q,
                        classes,
                        compaction: Vec::new(),
                    }),
                });
            }
            for label in &component.edges {
                pair_of[label.edge] = (c, label.color);
            }
            components.push(component);
        }
        classes.push(ClassTrace {
            color: c,
            components,
        });
    }

    let pairs: BTreeSet<(Color, Color)> = pair_of.iter().copied().collect();
    let labels = compact_palette(&pairs);
    let coloring = EdgeColoring::new(pair_of.iter().map(|p| labels[p]).collect());
    let report = check_fpe(g, &coloring)?;
    if !report.passed() {
        return Err(FpeError::CheckFailed(report));
    }
    let compaction = labels
        .iter()
        .map(|(&(class, odd), &label)| PaletteEntry { class, odd, label })
        .collect();
    Ok(FpeResult {
        palette_size: labels.len(),
        coloring,
        trace: FpeTrace {
            qfo: q,
            classes,
            compaction,
        },
    })
}
