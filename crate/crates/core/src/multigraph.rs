//! Loopless multigraphs with parallel-edge bundles.
//!
//! Edges are addressed by their index in [`BundledMultigraph::edges`]; each
//! edge also carries an external `id` (for duals, the associated primal edge).

use std::collections::{BTreeMap, VecDeque};

use thiserror::Error;

pub type VertexId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MultigraphError {
    #[error("edge {0} is a loop")]
    Loop(usize),
    #[error("edge {id} uses vertex {vertex}, but there are only {count} vertices")]
    VertexOutOfRange {
        id: usize,
        vertex: VertexId,
        count: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MultiEdge {
    pub id: usize,
    pub u: VertexId,
    pub v: VertexId,
}

impl MultiEdge {
    pub fn other(&self, x: VertexId) -> VertexId {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }

    /// Endpoints with the smaller vertex first.
    pub fn key(&self) -> (VertexId, VertexId) {
        (self.u.min(self.v), self.u.max(self.v))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BundledMultigraph {
    vertex_count: usize,
    edges: Vec<MultiEdge>,
    incidence: Vec<Vec<usize>>,
}

/// A subgraph together with the parent indices of its vertices and edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgraph {
    pub graph: BundledMultigraph,
    pub vertex_origin: Vec<VertexId>,
    pub edge_origin: Vec<usize>,
}

impl BundledMultigraph {
    /// `edges` are `(id, u, v)` triples.
    pub fn new(
        vertex_count: usize,
        edges: Vec<(usize, VertexId, VertexId)>,
    ) -> Result<Self, MultigraphError> {
        let mut incidence = vec![Vec::new(); vertex_count];
        let mut list = Vec::with_capacity(edges.len());
        for (i, (id, u, v)) in edges.into_iter().enumerate() {
            for x in [u, v] {
                if x >= vertex_count {
                    return Err(MultigraphError::VertexOutOfRange {
                        id,
                        vertex: x,
                        count: vertex_count,
                    });
                }
            }
            if u == v {
                return Err(MultigraphError::Loop(id));
            }
            incidence[u].push(i);
            incidence[v].push(i);
            list.push(MultiEdge { id, u, v });
        }
        Ok(BundledMultigraph {
            vertex_count,
            edges: list,
            incidence,
        })
    }

    /// Edges get ids `0..`, in the order given.
    pub fn from_pairs(
        vertex_count: usize,
        pairs: &[(VertexId, VertexId)],
    ) -> Result<Self, MultigraphError> {
        Self::new(
            vertex_count,
            pairs
                .iter()
                .enumerate()
                .map(|(i, &(u, v))| (i, u, v))
                .collect(),
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[MultiEdge] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> MultiEdge {
        self.edges[i]
    }

    pub fn incident(&self, v: VertexId) -> &[usize] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incidence[v].len()
    }

    /// Parallel classes keyed by sorted endpoint pair.
    pub fn bundles(&self) -> BTreeMap<(VertexId, VertexId), Vec<usize>> {
        let mut out: BTreeMap<_, Vec<usize>> = BTreeMap::new();
        for (i, e) in self.edges.iter().enumerate() {
            out.entry(e.key()).or_default().push(i);
        }
        out
    }

    pub fn is_loopless(&self) -> bool {
        self.edges.iter().all(|e| e.u != e.v)
    }

    /// Connected components, each sorted, isolated vertices included.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        self.components_avoiding(&[])
    }

    fn components_avoiding(&self, removed: &[usize]) -> Vec<Vec<VertexId>> {
        let mut seen = vec![false; self.vertex_count];
        let mut out = Vec::new();
        for start in 0..self.vertex_count {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut members = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &i in &self.incidence[u] {
                    if removed.contains(&i) {
                        continue;
                    }
                    let w = self.edges[i].other(u);
                    if !seen[w] {
                        seen[w] = true;
                        members.push(w);
                        queue.push_back(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Vertices of the component containing `start` once `removed` edges are deleted.
    pub fn reachable_without(&self, start: VertexId, removed: &[usize]) -> Vec<VertexId> {
        let mut seen = vec![false; self.vertex_count];
        seen[start] = true;
        let mut members = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &i in &self.incidence[u] {
                if removed.contains(&i) {
                    continue;
                }
                let w = self.edges[i].other(u);
                if !seen[w] {
                    seen[w] = true;
                    members.push(w);
                    queue.push_back(w);
                }
            }
        }
        members.sort_unstable();
        members
    }

    pub fn non_isolated_vertices(&self) -> Vec<VertexId> {
        (0..self.vertex_count)
            .filter(|&v| self.degree(v) > 0)
            .collect()
    }

    /// Connected once isolated vertices are ignored.
    pub fn is_connected_ignoring_isolated(&self) -> bool {
        self.components().iter().filter(|c| c.len() > 1).count() <= 1
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Subgraph induced by `vertices` (kept in the given order).
    pub fn induced(&self, vertices: &[VertexId]) -> Subgraph {
        let mut local = vec![usize::MAX; self.vertex_count];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let mut edges = Vec::new();
        let mut edge_origin = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if local[e.u] != usize::MAX && local[e.v] != usize::MAX {
                edges.push((e.id, local[e.u], local[e.v]));
                edge_origin.push(i);
            }
        }
        Subgraph {
            graph: BundledMultigraph::new(vertices.len(), edges)
                .expect("induced subgraph is valid"),
            vertex_origin: vertices.to_vec(),
            edge_origin,
        }
    }

    /// All vertices, only the listed edges (in the given order).
    pub fn edge_subgraph(&self, edge_indices: &[usize]) -> Subgraph {
        let edges = edge_indices
            .iter()
            .map(|&i| {
                let e = self.edges[i];
                (e.id, e.u, e.v)
            })
            .collect();
        Subgraph {
            graph: BundledMultigraph::new(self.vertex_count, edges)
                .expect("edge subgraph is valid"),
            vertex_origin: (0..self.vertex_count).collect(),
            edge_origin: edge_indices.to_vec(),
        }
    }

    /// BFS spanning tree (edge indices) of the component containing `root`.
    pub fn spanning_tree(&self, root: VertexId) -> Vec<usize> {
        let mut seen = vec![false; self.vertex_count];
        seen[root] = true;
        let mut tree = Vec::new();
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &i in &self.incidence[u] {
                let w = self.edges[i].other(u);
                if !seen[w] {
                    seen[w] = true;
                    tree.push(i);
                    queue.push_back(w);
                }
            }
        }
        tree
    }

    /// Bundles whose deletion increases the number of components.
    pub fn bridge_bundles(&self) -> Vec<((VertexId, VertexId), Vec<usize>)> {
        let base = self.components().len();
        self.bundles()
            .into_iter()
            .filter(|(_, members)| self.components_avoiding(members).len() > base)
            .collect()
    }

    /// One edge per bundle; returns the simple graph and, per simple edge, the
    /// parent edge indices it stands for. Simple edge ids are bundle indices.
    pub fn underlying_simple(&self) -> (BundledMultigraph, Vec<Vec<usize>>) {
        let bundles = self.bundles();
        let mut edges = Vec::with_capacity(bundles.len());
        let mut members = Vec::with_capacity(bundles.len());
        for (i, ((u, v), list)) in bundles.into_iter().enumerate() {
            edges.push((i, u, v));
            members.push(list);
        }
        (
            BundledMultigraph::new(self.vertex_count, edges).expect("simple graph is valid"),
            members,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops() {
        assert_eq!(
            BundledMultigraph::from_pairs(2, &[(0, 1), (1, 1)]),
            Err(MultigraphError::Loop(1))
        );
    }

    #[test]
    fn bundles_and_bridges() {
        // Triangle 0-1-2 with a doubled edge, then a 3-bundle to vertex 3.
        let g = BundledMultigraph::from_pairs(
            4,
            &[(0, 1), (1, 0), (1, 2), (2, 0), (2, 3), (3, 2), (2, 3)],
        )
        .unwrap();
        let bundles = g.bundles();
        assert_eq!(bundles[&(0, 1)], vec![0, 1]);
        assert_eq!(bundles[&(2, 3)], vec![4, 5, 6]);
        let bridges = g.bridge_bundles();
        assert_eq!(bridges.len(), 1);
        assert_eq!(bridges[0].0, (2, 3));
        let (simple, members) = g.underlying_simple();
        assert_eq!(simple.edge_count(), 4);
        assert_eq!(members.iter().map(Vec::len).sum::<usize>(), 7);
    }

    #[test]
    fn components_include_isolated_vertices() {
        let g = BundledMultigraph::from_pairs(5, &[(0, 1), (3, 4)]).unwrap();
        assert_eq!(g.components(), vec![vec![0, 1], vec![2], vec![3, 4]]);
        assert!(!g.is_connected_ignoring_isolated());
        let h = BundledMultigraph::from_pairs(4, &[(0, 1), (1, 3)]).unwrap();
        assert!(h.is_connected_ignoring_isolated());
        assert!(!h.is_connected());
    }
}
