use std::collections::VecDeque;

use super::{edge_of, twin, EdgeId, HalfEdge, MapError, PlaneMap, VertexId};

/// A map derived from a parent map, with each new edge and vertex traced back
/// to the parent identifier it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedMap {
    pub map: PlaneMap,
    pub edge_origin: Vec<EdgeId>,
    pub vertex_origin: Vec<VertexId>,
}

impl DerivedMap {
    pub fn identity(map: &PlaneMap) -> Self {
        DerivedMap {
            edge_origin: (0..map.edge_count()).collect(),
            vertex_origin: (0..map.vertex_count()).collect(),
            map: map.clone(),
        }
    }

    /// Re-expresses `inner` (derived from `self.map`) in terms of `self`'s parent.
    pub fn then(&self, inner: DerivedMap) -> DerivedMap {
        DerivedMap {
            edge_origin: inner
                .edge_origin
                .iter()
                .map(|&e| self.edge_origin[e])
                .collect(),
            vertex_origin: inner
                .vertex_origin
                .iter()
                .map(|&v| self.vertex_origin[v])
                .collect(),
            map: inner.map,
        }
    }
}

/// Mutable rotation system used while splicing; vertices may be removed and
/// loops may exist transiently.
struct RawRotations {
    rotations: Vec<Option<Vec<HalfEdge>>>,
    owner: Vec<VertexId>,
}

impl RawRotations {
    fn from_map(g: &PlaneMap) -> Self {
        RawRotations {
            rotations: g.rotations.iter().cloned().map(Some).collect(),
            owner: g.vertex_of.clone(),
        }
    }

    /// Merges the head of `h` into its tail: the head's rotation, read from just
    /// after `twin(h)`, replaces `h` in the tail's rotation.
    fn splice(&mut self, h: HalfEdge) {
        let u = self.owner[h];
        let v = self.owner[twin(h)];
        debug_assert_ne!(u, v, "splice on a loop");
        let rot_v = self.rotations[v].take().expect("live vertex");
        let pv = rot_v
            .iter()
            .position(|&x| x == twin(h))
            .expect("twin at head");
        let tail: Vec<HalfEdge> = rot_v[pv + 1..]
            .iter()
            .chain(&rot_v[..pv])
            .copied()
            .collect();
        for &x in &tail {
            self.owner[x] = u;
        }
        let rot_u = self.rotations[u].as_mut().expect("live vertex");
        let pu = rot_u.iter().position(|&x| x == h).expect("h at tail");
        rot_u.splice(pu..=pu, tail);
    }

    fn delete_edge(&mut self, e: EdgeId) {
        for h in [2 * e, 2 * e + 1] {
            if let Some(rot) = self.rotations[self.owner[h]].as_mut() {
                rot.retain(|&x| x != h);
            }
        }
    }

    fn finish(self) -> Result<DerivedMap, MapError> {
        let edge_slots = self.owner.len() / 2;
        let mut alive = vec![false; edge_slots];
        for rot in self.rotations.iter().flatten() {
            for &h in rot {
                alive[edge_of(h)] = true;
            }
        }
        let mut new_id = vec![usize::MAX; edge_slots];
        let mut edge_origin = Vec::new();
        for (e, _) in alive.iter().enumerate().filter(|(_, &a)| a) {
            new_id[e] = edge_origin.len();
            edge_origin.push(e);
        }
        let mut vertex_origin = Vec::new();
        let mut rotations = Vec::new();
        for (v, rot) in self.rotations.into_iter().enumerate() {
            if let Some(rot) = rot {
                vertex_origin.push(v);
                rotations.push(
                    rot.into_iter()
                        .map(|h| 2 * new_id[edge_of(h)] + (h & 1))
                        .collect(),
                );
            }
        }
        Ok(DerivedMap {
            map: PlaneMap::from_rotations(rotations)?,
            edge_origin,
            vertex_origin,
        })
    }
}

impl PlaneMap {
    /// Contracts `e`, merging its head into its tail.
    ///
    /// Fails when an edge parallel to `e` would become a loop.
    pub fn contract_edge(&self, e: EdgeId) -> Result<DerivedMap, MapError> {
        self.check_edge(e)?;
        let (u, v) = self.endpoints(e);
        let parallel: Vec<EdgeId> = self.rotations[u]
            .iter()
            .filter(|&&h| edge_of(h) != e && self.head(h) == v)
            .map(|&h| edge_of(h))
            .collect();
        if !parallel.is_empty() {
            return Err(MapError::ContractionLoop { edge: e, parallel });
        }
        let mut raw = RawRotations::from_map(self);
        raw.splice(2 * e);
        raw.delete_edge(e);
        raw.finish()
    }

    /// Contracts the given edges one after another. Edge ids refer to `self`.
    pub fn contract_edges(&self, edges: &[EdgeId]) -> Result<DerivedMap, MapError> {
        let mut current = DerivedMap::identity(self);
        for &e in edges {
            let local = current
                .edge_origin
                .iter()
                .position(|&x| x == e)
                .ok_or(MapError::EdgeOutOfRange(e))?;
            let step = current.map.contract_edge(local)?;
            current = current.then(step);
        }
        Ok(current)
    }

    /// Contracts the connected vertex set `vs` into a single vertex: spanning-tree
    /// edges are spliced, and every other edge inside `vs` (now a loop) is removed.
    pub fn contract_subgraph(&self, vs: &[VertexId]) -> Result<DerivedMap, MapError> {
        let Some(&root) = vs.first() else {
            return Err(MapError::SubgraphDisconnected);
        };
        let mut inside = vec![false; self.vertex_count()];
        for &v in vs {
            self.check_vertex(v)?;
            inside[v] = true;
        }
        let mut seen = vec![false; self.vertex_count()];
        seen[root] = true;
        let mut tree = Vec::new();
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &h in &self.rotations[u] {
                let w = self.head(h);
                if inside[w] && !seen[w] {
                    seen[w] = true;
                    tree.push(h);
                    queue.push_back(w);
                }
            }
        }
        if vs.iter().any(|&v| !seen[v]) {
            return Err(MapError::SubgraphDisconnected);
        }
        let mut raw = RawRotations::from_map(self);
        // BFS order guarantees the tail of each tree edge already belongs to the root.
        for &h in &tree {
            raw.splice(h);
        }
        for e in 0..self.edge_count() {
            let (a, b) = self.endpoints(e);
            if inside[a] && inside[b] {
                raw.delete_edge(e);
            }
        }
        raw.finish()
    }

    /// The submap induced by `vs`, keeping each vertex's rotation restricted to
    /// the surviving edges. The induced subgraph must be connected.
    pub fn restrict(&self, vs: &[VertexId]) -> Result<DerivedMap, MapError> {
        let mut inside = vec![false; self.vertex_count()];
        for &v in vs {
            self.check_vertex(v)?;
            inside[v] = true;
        }
        let mut raw = RawRotations::from_map(self);
        for (rot, &keep) in raw.rotations.iter_mut().zip(&inside) {
            if !keep {
                *rot = None;
            }
        }
        for e in 0..self.edge_count() {
            let (a, b) = self.endpoints(e);
            if !(inside[a] && inside[b]) {
                raw.delete_edge(e);
            }
        }
        raw.finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{cycle, theta, two_pentagons, wheel};

    #[test]
    fn contracting_cycle_edges() {
        let c4 = cycle(4).unwrap();
        let c3 = c4.contract_edge(2).unwrap();
        assert!(c3.map.is_cycle());
        assert_eq!(c3.map.edge_count(), 3);
        assert_eq!(c3.edge_origin, vec![0, 1, 3]);

        let digon = cycle(3).unwrap().contract_edge(0).unwrap();
        assert_eq!((digon.map.vertex_count(), digon.map.edge_count()), (2, 2));
        assert_eq!(digon.map.face_count(), 2);
    }

    #[test]
    fn contracting_theta_edge_fails() {
        let th = theta(3).unwrap();
        for e in 0..3 {
            let err = th.contract_edge(e).unwrap_err();
            let MapError::ContractionLoop { edge, parallel } = err else {
                panic!("unexpected error");
            };
            assert_eq!(edge, e);
            assert_eq!(parallel.len(), 2);
        }
    }

    #[test]
    fn contraction_keeps_euler_identity() {
        let w = wheel(6).unwrap();
        for e in 0..w.edge_count() {
            let d = w.contract_edge(e).unwrap();
            assert_eq!(d.map.vertex_count(), w.vertex_count() - 1);
            assert_eq!(d.map.edge_count(), w.edge_count() - 1);
        }
    }

    #[test]
    fn contract_subgraph_examples() {
        let tp = two_pentagons();
        // Pentagon B is the one not containing edge 0.
        let blocks = tp.blocks();
        let b = blocks
            .blocks
            .iter()
            .find(|b| !b.edges.contains(&0))
            .unwrap();
        let h = tp.contract_subgraph(&b.vertices).unwrap();
        assert!(h.map.is_cycle());
        assert_eq!(h.map.edge_count(), 5);

        // C6 with edges e_i joining i -> i+1; the path e1..e4 spans vertices 1..5.
        let c6 = cycle(6).unwrap();
        let d = c6.contract_subgraph(&[1, 2, 3, 4, 5]).unwrap();
        assert_eq!(d.edge_origin, vec![0, 5]);
        assert_eq!(
            (d.map.vertex_count(), d.map.edge_count(), d.map.face_count()),
            (2, 2, 2)
        );

        let w = wheel(4).unwrap();
        let same = w.contract_subgraph(&[2]).unwrap();
        assert_eq!(same.map, w);
    }

    #[test]
    fn contract_subgraph_rejects_disconnected_sets() {
        let c6 = cycle(6).unwrap();
        assert_eq!(
            c6.contract_subgraph(&[0, 3]),
            Err(MapError::SubgraphDisconnected)
        );
    }

    #[test]
    fn contract_edges_tracks_origins() {
        let c9 = cycle(9).unwrap();
        let d = c9.contract_edges(&[1, 2, 3, 4]).unwrap();
        assert_eq!(d.edge_origin, vec![0, 5, 6, 7, 8]);
        assert!(d.map.is_cycle());
    }
}
