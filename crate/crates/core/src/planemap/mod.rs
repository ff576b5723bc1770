//! Plane multigraphs stored as rotation systems over half-edges.
//!
//! Half-edge `h` belongs to edge `h / 2` and its twin is `h ^ 1`. Every vertex
//! owns a cyclic, clockwise sequence of half-edges. Faces are the orbits of the
//! face-successor permutation `h -> rot_next(twin(h))`, so a half-edge is
//! traversed from the vertex that owns it towards the vertex owning its twin.

mod blocks;
mod contract;
mod io;

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::coloring::{Color, EdgeColoring};
use crate::multigraph::{BundledMultigraph, MultigraphError};

pub use blocks::{Block, BlockDecomposition, CutVertexSplit, EdgeCut};
pub use contract::DerivedMap;

pub type VertexId = usize;
pub type EdgeId = usize;
pub type HalfEdge = usize;
pub type FaceId = usize;

#[inline]
pub fn twin(h: HalfEdge) -> HalfEdge {
    h ^ 1
}

#[inline]
pub fn edge_of(h: HalfEdge) -> EdgeId {
    h / 2
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("rotation system has no vertices")]
    Empty,
    #[error("odd number of half-edges ({0})")]
    OddHalfEdgeCount(usize),
    #[error("half-edge {0} appears more than once")]
    DuplicateHalfEdge(HalfEdge),
    #[error("half-edge {0} is missing from every rotation")]
    MissingHalfEdge(HalfEdge),
    #[error("half-edge {half_edge} out of range (expected < {limit})")]
    HalfEdgeOutOfRange { half_edge: HalfEdge, limit: usize },
    #[error("edge {0} is a loop")]
    Loop(EdgeId),
    #[error("map is disconnected ({0} components)")]
    Disconnected(usize),
    #[error("rotation system is not planar: V - E + F = {vertices} - {edges} + {faces} != 2")]
    NonPlanar {
        vertices: usize,
        edges: usize,
        faces: usize,
    },
    #[error("vertex {0} out of range")]
    VertexOutOfRange(VertexId),
    #[error("edge {0} out of range")]
    EdgeOutOfRange(EdgeId),
    #[error("face {0} out of range")]
    FaceOutOfRange(FaceId),
    #[error("edge {0} is a bridge")]
    Bridge(EdgeId),
    #[error("contracting edge {edge} turns parallel edges {parallel:?} into loops")]
    ContractionLoop { edge: EdgeId, parallel: Vec<EdgeId> },
    #[error("vertex set does not induce a connected subgraph")]
    SubgraphDisconnected,
    #[error("vertex {0} is not a cut vertex")]
    NotACutVertex(VertexId),
    #[error("coloring covers {got} edges, map has {expected}")]
    ColoringLength { expected: usize, got: usize },
}

/// Closed walk bounding one face, as the cyclic sequence of traversed half-edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacialWalk {
    pub face: FaceId,
    pub half_edges: Vec<HalfEdge>,
}

impl FacialWalk {
    pub fn len(&self) -> usize {
        self.half_edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.half_edges.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.half_edges.iter().map(|&h| edge_of(h))
    }
}

/// A connected plane multigraph without loops.
///
/// Values are immutable; every structural operation returns a new map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneMap {
    rotations: Vec<Vec<HalfEdge>>,
    vertex_of: Vec<VertexId>,
    position: Vec<usize>,
    face_of: Vec<FaceId>,
    walks: Vec<FacialWalk>,
}

impl PlaneMap {
    /// Builds a map from clockwise rotations, checking every structural invariant.
    pub fn from_rotations(rotations: Vec<Vec<HalfEdge>>) -> Result<Self, MapError> {
        if rotations.is_empty() {
            return Err(MapError::Empty);
        }
        let total: usize = rotations.iter().map(Vec::len).sum();
        if !total.is_multiple_of(2) {
            return Err(MapError::OddHalfEdgeCount(total));
        }
        let mut vertex_of = vec![usize::MAX; total];
        let mut position = vec![0; total];
        for (v, rot) in rotations.iter().enumerate() {
            for (i, &h) in rot.iter().enumerate() {
                if h >= total {
                    return Err(MapError::HalfEdgeOutOfRange {
                        half_edge: h,
                        limit: total,
                    });
                }
                if vertex_of[h] != usize::MAX {
                    return Err(MapError::DuplicateHalfEdge(h));
                }
                vertex_of[h] = v;
                position[h] = i;
            }
        }
        // With `total` slots filled by `total` distinct in-range ids, nothing is missing.
        for h in (0..total).step_by(2) {
            if vertex_of[h] == vertex_of[h + 1] {
                return Err(MapError::Loop(h / 2));
            }
        }

        let mut map = PlaneMap {
            rotations,
            vertex_of,
            position,
            face_of: Vec::new(),
            walks: Vec::new(),
        };
        let components = map.count_components();
        if components != 1 {
            return Err(MapError::Disconnected(components));
        }
        map.trace_faces();
        let (v, e, f) = (map.vertex_count(), map.edge_count(), map.face_count());
        if v + f != e + 2 {
            return Err(MapError::NonPlanar {
                vertices: v,
                edges: e,
                faces: f,
            });
        }
        Ok(map)
    }

    fn count_components(&self) -> usize {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut components = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            components += 1;
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &h in &self.rotations[u] {
                    let w = self.head(h);
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        components
    }

    fn trace_faces(&mut self) {
        let total = self.half_edge_count();
        let mut face_of = vec![usize::MAX; total];
        let mut walks = Vec::new();
        for start in 0..total {
            if face_of[start] != usize::MAX {
                continue;
            }
            let face = walks.len();
            let mut walk = Vec::new();
            let mut h = start;
            loop {
                face_of[h] = face;
                walk.push(h);
                h = self.face_successor(h);
                if h == start {
                    break;
                }
            }
            walks.push(FacialWalk {
                face,
                half_edges: walk,
            });
        }
        if total == 0 {
            // A lone vertex bounds a single face with an empty walk.
            walks.push(FacialWalk {
                face: 0,
                half_edges: Vec::new(),
            });
        }
        self.face_of = face_of;
        self.walks = walks;
    }

    pub fn vertex_count(&self) -> usize {
        self.rotations.len()
    }

    pub fn edge_count(&self) -> usize {
        self.vertex_of.len() / 2
    }

    pub fn half_edge_count(&self) -> usize {
        self.vertex_of.len()
    }

    pub fn face_count(&self) -> usize {
        self.walks.len()
    }

    pub fn rotations(&self) -> &[Vec<HalfEdge>] {
        &self.rotations
    }

    pub fn rotation(&self, v: VertexId) -> &[HalfEdge] {
        &self.rotations[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.rotations[v].len()
    }

    pub fn vertex_of(&self, h: HalfEdge) -> VertexId {
        self.vertex_of[h]
    }

    /// Vertex the half-edge points at.
    pub fn head(&self, h: HalfEdge) -> VertexId {
        self.vertex_of[twin(h)]
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        (self.vertex_of[2 * e], self.vertex_of[2 * e + 1])
    }

    pub fn rot_next(&self, h: HalfEdge) -> HalfEdge {
        let rot = &self.rotations[self.vertex_of[h]];
        rot[(self.position[h] + 1) % rot.len()]
    }

    pub fn rot_prev(&self, h: HalfEdge) -> HalfEdge {
        let rot = &self.rotations[self.vertex_of[h]];
        rot[(self.position[h] + rot.len() - 1) % rot.len()]
    }

    pub fn face_successor(&self, h: HalfEdge) -> HalfEdge {
        self.rot_next(twin(h))
    }

    pub fn facial_walks(&self) -> &[FacialWalk] {
        &self.walks
    }

    pub fn walk(&self, f: FaceId) -> &FacialWalk {
        &self.walks[f]
    }

    pub fn face_of(&self, h: HalfEdge) -> FaceId {
        self.face_of[h]
    }

    /// The faces on either side of `e`; equal exactly when `e` is a bridge.
    pub fn edge_faces(&self, e: EdgeId) -> (FaceId, FaceId) {
        (self.face_of[2 * e], self.face_of[2 * e + 1])
    }

    pub fn is_bridge(&self, e: EdgeId) -> bool {
        let (a, b) = self.edge_faces(e);
        a == b
    }

    pub fn bridges(&self) -> Vec<EdgeId> {
        (0..self.edge_count())
            .filter(|&e| self.is_bridge(e))
            .collect()
    }

    pub fn is_bridgeless(&self) -> bool {
        (0..self.edge_count()).all(|e| !self.is_bridge(e))
    }

    pub fn is_cycle(&self) -> bool {
        self.edge_count() >= 2 && self.rotations.iter().all(|r| r.len() == 2)
    }

    /// Unordered pairs `(a, b)`, `a < b`, of distinct edges consecutive on some facial walk.
    pub fn face_adjacent_pairs(&self) -> BTreeSet<(EdgeId, EdgeId)> {
        let mut pairs = BTreeSet::new();
        for walk in &self.walks {
            let n = walk.half_edges.len();
            for i in 0..n {
                let a = edge_of(walk.half_edges[i]);
                let b = edge_of(walk.half_edges[(i + 1) % n]);
                if a != b {
                    pairs.insert((a.min(b), a.max(b)));
                }
            }
        }
        pairs
    }

    /// Adjacency lists of the graph on edge ids whose edges are the face-adjacent pairs.
    pub fn medial_adjacency_graph(&self) -> Vec<Vec<EdgeId>> {
        let mut adj = vec![Vec::new(); self.edge_count()];
        for (a, b) in self.face_adjacent_pairs() {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Edges incident to both `f` and `f2`, in cyclic order along the walk of `f`,
    /// rotated so the lowest edge id comes first.
    pub fn common_edges_in_walk_order(&self, f: FaceId, f2: FaceId) -> Vec<EdgeId> {
        if f == f2 || f >= self.face_count() || f2 >= self.face_count() {
            return Vec::new();
        }
        let mut common: Vec<EdgeId> = self.walks[f]
            .half_edges
            .iter()
            .filter(|&&h| self.face_of[twin(h)] == f2)
            .map(|&h| edge_of(h))
            .collect();
        if let Some(start) = common
            .iter()
            .enumerate()
            .min_by_key(|&(_, &e)| e)
            .map(|(i, _)| i)
        {
            common.rotate_left(start);
        }
        common
    }

    /// Number of common edges for every pair of distinct adjacent faces.
    pub fn adjacent_face_pairs(&self) -> BTreeMap<(FaceId, FaceId), Vec<EdgeId>> {
        let mut pairs: BTreeMap<(FaceId, FaceId), Vec<EdgeId>> = BTreeMap::new();
        for e in 0..self.edge_count() {
            let (a, b) = self.edge_faces(e);
            if a != b {
                pairs.entry((a.min(b), a.max(b))).or_default().push(e);
            }
        }
        pairs
    }

    /// The dual restricted to edges of color `c`: one vertex per face and one
    /// edge (keeping the primal edge id) per `c`-colored edge.
    pub fn dual_restricted(
        &self,
        coloring: &EdgeColoring,
        c: Color,
    ) -> Result<BundledMultigraph, MapError> {
        if coloring.len() != self.edge_count() {
            return Err(MapError::ColoringLength {
                expected: self.edge_count(),
                got: coloring.len(),
            });
        }
        let mut edges = Vec::new();
        for e in 0..self.edge_count() {
            let (a, b) = self.edge_faces(e);
            if a == b {
                return Err(MapError::Bridge(e));
            }
            if coloring.color(e) == c {
                edges.push((e, a, b));
            }
        }
        BundledMultigraph::new(self.face_count(), edges).map_err(|err| match err {
            MultigraphError::Loop(e) => MapError::Bridge(e),
            other => unreachable!("dual edges are in range: {other}"),
        })
    }

    /// The underlying abstract multigraph (vertex ids and edge ids preserved).
    pub fn to_multigraph(&self) -> BundledMultigraph {
        let edges = (0..self.edge_count())
            .map(|e| {
                let (u, v) = self.endpoints(e);
                (e, u, v)
            })
            .collect();
        BundledMultigraph::new(self.vertex_count(), edges).expect("plane maps are loopless")
    }

    fn check_vertex(&self, v: VertexId) -> Result<(), MapError> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(MapError::VertexOutOfRange(v))
        }
    }

    fn check_edge(&self, e: EdgeId) -> Result<(), MapError> {
        if e < self.edge_count() {
            Ok(())
        } else {
            Err(MapError::EdgeOutOfRange(e))
        }
    }
}
