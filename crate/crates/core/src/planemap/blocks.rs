use std::collections::{BTreeSet, VecDeque};

use super::{edge_of, DerivedMap, EdgeId, MapError, PlaneMap, VertexId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub edges: Vec<EdgeId>,
    pub vertices: Vec<VertexId>,
    /// Five vertices, five edges, every vertex of degree two inside the block.
    pub is_c5: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub blocks: Vec<Block>,
    pub cut_vertices: Vec<VertexId>,
}

impl BlockDecomposition {
    pub fn c5_blocks(&self) -> impl Iterator<Item = &Block> {
        self.blocks.iter().filter(|b| b.is_c5)
    }
}

/// Connected components of the map after deleting a set of edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeCut {
    pub components: Vec<Vec<VertexId>>,
}

impl EdgeCut {
    pub fn is_cut(&self) -> bool {
        self.components.len() >= 2
    }

    /// Exactly two sides, each with at least two vertices.
    pub fn is_nontrivial(&self) -> bool {
        self.components.len() == 2 && self.components.iter().all(|c| c.len() >= 2)
    }
}

/// Result of splitting at a cut vertex `v`: `inner` is the component of `g - v`
/// whose edge-ends occupy one contiguous arc of `v`'s rotation (plus `v`),
/// `outer` is everything else (plus `v`). `cross` holds the two face-adjacent
/// pairs `(inner edge, outer edge)` at the ends of the arc, in parent edge ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutVertexSplit {
    pub inner: DerivedMap,
    pub outer: DerivedMap,
    pub cross: [(EdgeId, EdgeId); 2],
}

impl PlaneMap {
    /// Biconnected components, found with an iterative Tarjan search that
    /// skips only the tree edge itself, so parallel edges end up in one block.
    pub fn blocks(&self) -> BlockDecomposition {
        const UNSEEN: usize = usize::MAX;
        let n = self.vertex_count();
        let mut disc = vec![UNSEEN; n];
        let mut low = vec![0; n];
        let mut is_cut = vec![false; n];
        let mut edge_stack: Vec<EdgeId> = Vec::new();
        let mut blocks = Vec::new();
        let mut time = 0;

        // (vertex, edge used to enter it, next rotation index)
        let mut stack: Vec<(VertexId, Option<EdgeId>, usize)> = Vec::new();
        let root = 0;
        disc[root] = time;
        low[root] = time;
        time += 1;
        stack.push((root, None, 0));
        let mut root_children = 0;

        while let Some(frame) = stack.last_mut() {
            let (v, parent_edge, idx) = *frame;
            if idx < self.rotations[v].len() {
                frame.2 += 1;
                let h = self.rotations[v][idx];
                let e = edge_of(h);
                if Some(e) == parent_edge {
                    continue;
                }
                let w = self.head(h);
                if disc[w] == UNSEEN {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    edge_stack.push(e);
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, Some(e), 0));
                } else if disc[w] < disc[v] {
                    low[v] = low[v].min(disc[w]);
                    edge_stack.push(e);
                }
            } else {
                stack.pop();
                let Some(&(p, _, _)) = stack.last() else {
                    break;
                };
                low[p] = low[p].min(low[v]);
                if low[v] >= disc[p] {
                    if p != root {
                        is_cut[p] = true;
                    }
                    let enter = parent_edge.expect("non-root frame");
                    let mut edges = Vec::new();
                    while let Some(e) = edge_stack.pop() {
                        edges.push(e);
                        if e == enter {
                            break;
                        }
                    }
                    blocks.push(self.make_block(edges));
                }
            }
        }
        if root_children >= 2 {
            is_cut[root] = true;
        }
        blocks.sort_by(|a: &Block, b: &Block| a.edges.cmp(&b.edges));
        BlockDecomposition {
            blocks,
            cut_vertices: (0..n).filter(|&v| is_cut[v]).collect(),
        }
    }

    fn make_block(&self, mut edges: Vec<EdgeId>) -> Block {
        edges.sort_unstable();
        let mut vertices: BTreeSet<VertexId> = BTreeSet::new();
        let mut degree = std::collections::BTreeMap::new();
        for &e in &edges {
            let (a, b) = self.endpoints(e);
            vertices.insert(a);
            vertices.insert(b);
            *degree.entry(a).or_insert(0) += 1;
            *degree.entry(b).or_insert(0) += 1;
        }
        let is_c5 = edges.len() == 5 && vertices.len() == 5 && degree.values().all(|&d| d == 2);
        Block {
            edges,
            vertices: vertices.into_iter().collect(),
            is_c5,
        }
    }

    /// Components of the map with the given edges removed.
    pub fn components_without(&self, removed: &[EdgeId]) -> EdgeCut {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut components = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = components.len();
            comp[start] = id;
            let mut members = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &h in &self.rotations[u] {
                    if removed.contains(&edge_of(h)) {
                        continue;
                    }
                    let w = self.head(h);
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                        queue.push_back(w);
                    }
                }
            }
            members.sort_unstable();
            components.push(members);
        }
        EdgeCut { components }
    }

    /// Whether deleting `e1` and `e2` splits the map into two sides of at least
    /// two vertices each. The returned sides are always reported.
    pub fn nontrivial_edge_cut(&self, e1: EdgeId, e2: EdgeId) -> Result<EdgeCut, MapError> {
        self.check_edge(e1)?;
        self.check_edge(e2)?;
        Ok(self.components_without(&[e1, e2]))
    }

    /// Splits at cut vertex `v` (see [`CutVertexSplit`]).
    pub fn split_at_cut_vertex(&self, v: VertexId) -> Result<CutVertexSplit, MapError> {
        self.check_vertex(v)?;
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut members: Vec<Vec<VertexId>> = Vec::new();
        for start in (0..n).filter(|&s| s != v) {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = members.len();
            comp[start] = id;
            let mut list = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &h in &self.rotations[u] {
                    let w = self.head(h);
                    if w != v && comp[w] == usize::MAX {
                        comp[w] = id;
                        list.push(w);
                        queue.push_back(w);
                    }
                }
            }
            members.push(list);
        }
        if members.len() < 2 {
            return Err(MapError::NotACutVertex(v));
        }

        let rot = &self.rotations[v];
        let d = rot.len();
        let owner: Vec<usize> = rot.iter().map(|&h| comp[self.head(h)]).collect();
        // A component is contiguous when exactly one of its positions starts a run.
        let arc = (0..members.len()).find_map(|c| {
            let starts: Vec<usize> = (0..d)
                .filter(|&i| owner[i] == c && owner[(i + d - 1) % d] != c)
                .collect();
            match starts.as_slice() {
                [s] => Some((c, *s, owner.iter().filter(|&&o| o == c).count())),
                _ => None,
            }
        });
        let (c, start, len) = arc.expect("planar rotations always have a contiguous component");

        let mut inner_vs = members[c].clone();
        inner_vs.push(v);
        inner_vs.sort_unstable();
        let outer_vs: Vec<VertexId> = (0..n).filter(|&u| u == v || comp[u] != c).collect();

        let first = rot[start];
        let last = rot[(start + len - 1) % d];
        let before = rot[(start + d - 1) % d];
        let after = rot[(start + len) % d];
        Ok(CutVertexSplit {
            inner: self.restrict(&inner_vs)?,
            outer: self.restrict(&outer_vs)?,
            cross: [
                (edge_of(first), edge_of(before)),
                (edge_of(last), edge_of(after)),
            ],
        })
    }
}
