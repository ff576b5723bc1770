//! Odd edge colorings: every color class induces a subgraph in which each
//! vertex has odd or zero degree.
//!
//! Colorings are aligned with [`BundledMultigraph::edges`] (edge index, not
//! external id). The constructions here use the labels 1 and 2 for a forest,
//! 3 for the odd remainder, and 4 for the edges left at a single vertex.

use std::collections::{BTreeSet, VecDeque};

use log::warn;
use thiserror::Error;

use crate::coloring::Color;
use crate::multigraph::{BundledMultigraph, VertexId};
use crate::partition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OddColorError {
    #[error("edge set contains a cycle")]
    NotAForest,
    #[error("terminal set has odd size {0}")]
    OddTerminalCount(usize),
    #[error("terminals {0} and {1} lie in different trees")]
    TerminalsDisconnected(VertexId, VertexId),
    #[error("graph has odd order {0}")]
    OddOrder(usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("edges between {u} and {v} do not form a k-bridge")]
    NotABridge { u: VertexId, v: VertexId },
    #[error("bundle {u}-{v} has even size {size}")]
    EvenBundle {
        u: VertexId,
        v: VertexId,
        size: usize,
    },
    #[error("no odd coloring with at most {max} colors was found")]
    PaletteExhausted { max: usize },
    #[error("search budget of {0} nodes exhausted")]
    SearchBudget(u64),
    #[error("instance has {edges} edges; exact search is limited to {limit}")]
    TooLarge { edges: usize, limit: usize },
    #[error("internal error: constructed coloring is not odd")]
    NotOdd,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddColoring {
    colors: Vec<Color>,
}

impl OddColoring {
    pub fn new(colors: Vec<Color>) -> Self {
        OddColoring { colors }
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn color(&self, edge_index: usize) -> Color {
        self.colors[edge_index]
    }

    pub fn as_slice(&self) -> &[Color] {
        &self.colors
    }

    pub fn palette_size(&self) -> usize {
        self.colors.iter().collect::<BTreeSet<_>>().len()
    }
}

/// All `k` parallel edges between `u` and `v`, whose deletion disconnects them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KBridge {
    pub u: VertexId,
    pub v: VertexId,
    pub edges: Vec<usize>,
    pub u_side: Vec<VertexId>,
    pub v_side: Vec<VertexId>,
}

impl KBridge {
    pub fn between(m: &BundledMultigraph, u: VertexId, v: VertexId) -> Result<Self, OddColorError> {
        let not_bridge = OddColorError::NotABridge { u, v };
        if u == v || u >= m.vertex_count() || v >= m.vertex_count() {
            return Err(not_bridge);
        }
        let edges: Vec<usize> = m
            .incident(u)
            .iter()
            .copied()
            .filter(|&i| m.edge(i).other(u) == v)
            .collect();
        if edges.is_empty() {
            return Err(not_bridge);
        }
        let u_side = m.reachable_without(u, &edges);
        if u_side.contains(&v) {
            return Err(not_bridge);
        }
        let v_side = m.reachable_without(v, &edges);
        Ok(KBridge {
            u,
            v,
            edges,
            u_side,
            v_side,
        })
    }

    pub fn find_all(m: &BundledMultigraph) -> Vec<KBridge> {
        m.bridge_bundles()
            .into_iter()
            .map(|((u, v), _)| KBridge::between(m, u, v).expect("bridge bundle"))
            .collect()
    }

    pub fn k(&self) -> usize {
        self.edges.len()
    }
}

/// True when every color class has odd or zero degree at every vertex.
pub fn is_odd_coloring(m: &BundledMultigraph, colors: &[Color]) -> bool {
    (0..m.vertex_count()).all(|v| vertex_is_odd(m, colors, v))
}

fn vertex_is_odd(m: &BundledMultigraph, colors: &[Color], v: VertexId) -> bool {
    let mut counts: Vec<(Color, usize)> = Vec::new();
    for &i in m.incident(v) {
        match counts.iter_mut().find(|(c, _)| *c == colors[i]) {
            Some((_, n)) => *n += 1,
            None => counts.push((colors[i], 1)),
        }
    }
    counts.iter().all(|&(_, n)| n % 2 == 1)
}

/// Colors the forest made of `edges` (indices into `m`) with 1 and 2 so that
/// every vertex sees each color an odd number of times or not at all.
/// Returns `None` if the edges contain a cycle.
fn two_color_forest_edges(m: &BundledMultigraph, edges: &[usize]) -> Option<Vec<(usize, Color)>> {
    let mut in_forest = vec![false; m.edge_count()];
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); m.vertex_count()];
    let mut dsu = Dsu::new(m.vertex_count());
    for &i in edges {
        let e = m.edge(i);
        if !dsu.union(e.u, e.v) {
            return None;
        }
        in_forest[i] = true;
        adj[e.u].push(i);
        adj[e.v].push(i);
    }
    let mut color = vec![0 as Color; m.edge_count()];
    let mut visited = vec![false; m.vertex_count()];
    for root in 0..m.vertex_count() {
        if visited[root] || adj[root].is_empty() {
            continue;
        }
        visited[root] = true;
        let d = adj[root].len();
        for (j, &i) in adj[root].iter().enumerate() {
            color[i] = if d % 2 == 1 || j + 1 < d { 1 } else { 2 };
        }
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &i in &adj[x] {
                let y = m.edge(i).other(x);
                if visited[y] {
                    continue;
                }
                visited[y] = true;
                let seen = color[i];
                let fill = if adj[y].len() % 2 == 1 {
                    seen
                } else {
                    3 - seen
                };
                for &j in &adj[y] {
                    if j != i {
                        color[j] = fill;
                    }
                }
                queue.push_back(y);
            }
        }
    }
    Some(edges.iter().map(|&i| (i, color[i])).collect())
}

/// Odd 2-coloring of a forest.
pub fn forest_two_color(f: &BundledMultigraph) -> Result<OddColoring, OddColorError> {
    let all: Vec<usize> = (0..f.edge_count()).collect();
    let pairs = two_color_forest_edges(f, &all).ok_or(OddColorError::NotAForest)?;
    Ok(OddColoring::new(
        pairs.into_iter().map(|(_, c)| c).collect(),
    ))
}

/// The forest inside `tree` (edge indices of `m`) whose odd-degree vertices are
/// exactly `terminals`: the symmetric difference of the tree paths joining
/// terminals paired in increasing id order. Returned sorted.
pub fn tjoin_forest(
    m: &BundledMultigraph,
    tree: &[usize],
    terminals: &[VertexId],
) -> Result<Vec<usize>, OddColorError> {
    let terminals: Vec<VertexId> = terminals
        .iter()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if terminals.len() % 2 == 1 {
        return Err(OddColorError::OddTerminalCount(terminals.len()));
    }
    let n = m.vertex_count();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut dsu = Dsu::new(n);
    for &i in tree {
        let e = m.edge(i);
        if !dsu.union(e.u, e.v) {
            return Err(OddColorError::NotAForest);
        }
        adj[e.u].push(i);
        adj[e.v].push(i);
    }
    let mut parent_edge = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    let mut visited = vec![false; n];
    for root in 0..n {
        if visited[root] {
            continue;
        }
        visited[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &i in &adj[x] {
                let y = m.edge(i).other(x);
                if !visited[y] {
                    visited[y] = true;
                    parent_edge[y] = i;
                    depth[y] = depth[x] + 1;
                    queue.push_back(y);
                }
            }
        }
    }

    let mut in_join = vec![false; m.edge_count()];
    for pair in terminals.chunks(2) {
        let (a, b) = (pair[0], pair[1]);
        if dsu.find(a) != dsu.find(b) {
            return Err(OddColorError::TerminalsDisconnected(a, b));
        }
        let (mut x, mut y) = (a, b);
        while x != y {
            if depth[x] < depth[y] {
                std::mem::swap(&mut x, &mut y);
            }
            let i = parent_edge[x];
            in_join[i] = !in_join[i];
            x = m.edge(i).other(x);
        }
    }
    Ok((0..m.edge_count()).filter(|&i| in_join[i]).collect())
}

/// BFS tree on the vertices allowed by `inside`, starting at `root`.
fn tree_within(m: &BundledMultigraph, inside: &[bool], root: VertexId) -> Vec<usize> {
    let mut seen = vec![false; m.vertex_count()];
    seen[root] = true;
    let mut tree = Vec::new();
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        for &i in m.incident(x) {
            let y = m.edge(i).other(x);
            if inside[y] && !seen[y] {
                seen[y] = true;
                tree.push(i);
                queue.push_back(y);
            }
        }
    }
    tree
}

/// Colors `scope` (edge indices): the T-join of `terminals` in `tree` gets the
/// forest colors 1 and 2, every other scope edge gets color 3.
fn forest_plus_three(
    m: &BundledMultigraph,
    scope: &[usize],
    tree: &[usize],
    terminals: &[VertexId],
    colors: &mut [Color],
) -> Result<(), OddColorError> {
    let join = tjoin_forest(m, tree, terminals)?;
    for &i in scope {
        colors[i] = 3;
    }
    for (i, c) in two_color_forest_edges(m, &join).expect("T-join lies in a tree") {
        colors[i] = c;
    }
    Ok(())
}

/// Odd coloring with at most 3 colors of a connected multigraph of even order.
pub fn even_order_three_color(m: &BundledMultigraph) -> Result<OddColoring, OddColorError> {
    let n = m.vertex_count();
    if n % 2 == 1 {
        return Err(OddColorError::OddOrder(n));
    }
    if !m.is_connected() {
        return Err(OddColorError::Disconnected);
    }
    if m.edge_count() == 0 {
        return Ok(OddColoring::new(Vec::new()));
    }
    let tree = m.spanning_tree(0);
    let even: Vec<VertexId> = (0..n).filter(|&v| m.degree(v).is_multiple_of(2)).collect();
    let scope: Vec<usize> = (0..m.edge_count()).collect();
    let mut colors = vec![0; m.edge_count()];
    forest_plus_three(m, &scope, &tree, &even, &mut colors)?;
    Ok(OddColoring::new(colors))
}

/// Colors `G' = G[side ∪ {far}]` where `near` (in `side`) is joined to `far`
/// only by `bundle`. The bundle is colored either uniformly (odd k) or with
/// `designated` apart from the other k - 1 edges (even k).
fn color_bridge_side(
    m: &BundledMultigraph,
    side: &[VertexId],
    near: VertexId,
    bundle: &[usize],
    designated: usize,
    colors: &mut [Color],
) -> Result<(), OddColorError> {
    let mut inside = vec![false; m.vertex_count()];
    for &x in side {
        inside[x] = true;
    }
    let side_edges: Vec<usize> = (0..m.edge_count())
        .filter(|&i| {
            let e = m.edge(i);
            inside[e.u] && inside[e.v]
        })
        .collect();
    let mut side_degree = vec![0usize; m.vertex_count()];
    for &i in &side_edges {
        let e = m.edge(i);
        side_degree[e.u] += 1;
        side_degree[e.v] += 1;
    }
    let k = bundle.len();
    let mut tree = tree_within(m, &inside, near);

    if (side.len() + 1).is_multiple_of(2) {
        // Even order: T-join over the even-degree vertices of G', the far end a leaf.
        tree.push(designated);
        let mut terminals: Vec<VertexId> = side
            .iter()
            .copied()
            .filter(|&x| (side_degree[x] + if x == near { k } else { 0 }).is_multiple_of(2))
            .collect();
        if k.is_multiple_of(2) {
            terminals.push(m.edge(designated).other(near));
        }
        let scope: Vec<usize> = side_edges.iter().chain(bundle).copied().collect();
        forest_plus_three(m, &scope, &tree, &terminals, colors)
    } else {
        // Odd order: the side alone has even order; the far end's edges take color 4,
        // except one tree edge moved into the forest when k is even.
        let terminals: Vec<VertexId> = side
            .iter()
            .copied()
            .filter(|&x| side_degree[x].is_multiple_of(2))
            .collect();
        let mut join = tjoin_forest(m, &tree, &terminals)?;
        if k.is_multiple_of(2) {
            join.push(designated);
        }
        for &i in &side_edges {
            colors[i] = 3;
        }
        for &i in bundle {
            colors[i] = 4;
        }
        for (i, c) in two_color_forest_edges(m, &join).expect("forest plus pendant edge") {
            colors[i] = c;
        }
        Ok(())
    }
}

/// Odd coloring with at most 4 colors of a connected loopless multigraph with
/// a k-bridge: each side plus the far bridge end is colored separately and the
/// second side's palette is permuted so the bridge edges agree.
pub fn k_bridge_four_color(
    m: &BundledMultigraph,
    b: &KBridge,
) -> Result<OddColoring, OddColorError> {
    if !m.is_connected() {
        return Err(OddColorError::Disconnected);
    }
    let checked = KBridge::between(m, b.u, b.v)?;
    let designated = *checked.edges.iter().min().expect("non-empty bundle");

    let mut from_u = vec![0; m.edge_count()];
    color_bridge_side(
        m,
        &checked.u_side,
        b.u,
        &checked.edges,
        designated,
        &mut from_u,
    )?;
    let mut from_v = vec![0; m.edge_count()];
    color_bridge_side(
        m,
        &checked.v_side,
        b.v,
        &checked.edges,
        designated,
        &mut from_v,
    )?;

    // Permutation of {1..4} carrying the v-side bridge colors onto the u-side ones.
    let mut perm: [Color; 5] = [0; 5];
    let mut taken = [false; 5];
    for &i in &checked.edges {
        let (src, dst) = (from_v[i] as usize, from_u[i]);
        if perm[src] == 0 && !taken[dst as usize] {
            perm[src] = dst;
            taken[dst as usize] = true;
        } else if perm[src] != dst {
            unreachable!("bridge edges are colored alike on both sides");
        }
    }
    let mut free = (1..=4).filter(|&c| !taken[c as usize]);
    for slot in perm.iter_mut().skip(1) {
        if *slot == 0 {
            *slot = free.next().expect("permutation completes");
        }
    }

    let mut v_inside = vec![false; m.vertex_count()];
    for &x in &checked.v_side {
        v_inside[x] = true;
    }
    let colors: Vec<Color> = (0..m.edge_count())
        .map(|i| {
            let e = m.edge(i);
            if v_inside[e.u] && v_inside[e.v] {
                perm[from_v[i] as usize]
            } else {
                from_u[i]
            }
        })
        .collect();
    finish(m, colors)
}

/// At most 4 colors for a connected simple graph of odd order: a non-cut
/// vertex `w` is set aside, the rest (even order, connected) gets the forest
/// plus color 3, and `w`'s edges take color 4 except one moved into the forest
/// when `w` has even degree.
fn odd_order_simple_four_color(m: &BundledMultigraph) -> Result<Vec<Color>, OddColorError> {
    let active = m.non_isolated_vertices();
    let root = active[0];
    // The last vertex reached by BFS has no tree children, so it is not a cut vertex.
    let order = {
        let mut seen = vec![false; m.vertex_count()];
        seen[root] = true;
        let mut order = vec![root];
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &i in m.incident(x) {
                let y = m.edge(i).other(x);
                if !seen[y] {
                    seen[y] = true;
                    order.push(y);
                    queue.push_back(y);
                }
            }
        }
        order
    };
    let w = *order.last().expect("non-empty");
    let mut inside = vec![false; m.vertex_count()];
    for &x in &active {
        inside[x] = x != w;
    }
    let rest_edges: Vec<usize> = (0..m.edge_count())
        .filter(|&i| {
            let e = m.edge(i);
            inside[e.u] && inside[e.v]
        })
        .collect();
    let mut rest_degree = vec![0usize; m.vertex_count()];
    for &i in &rest_edges {
        let e = m.edge(i);
        rest_degree[e.u] += 1;
        rest_degree[e.v] += 1;
    }
    let tree = tree_within(m, &inside, root);
    let terminals: Vec<VertexId> = active
        .iter()
        .copied()
        .filter(|&x| x != w && rest_degree[x].is_multiple_of(2))
        .collect();
    let mut join = tjoin_forest(m, &tree, &terminals)?;
    let star = m.incident(w);
    if star.len().is_multiple_of(2) {
        join.push(*star.iter().min().expect("w has edges"));
    }
    let mut colors = vec![0; m.edge_count()];
    for &i in &rest_edges {
        colors[i] = 3;
    }
    for &i in star {
        colors[i] = 4;
    }
    for (i, c) in two_color_forest_edges(m, &join).expect("forest plus pendant edge") {
        colors[i] = c;
    }
    Ok(colors)
}

/// At most 4 colors when every bundle has odd size: color the underlying simple
/// graph and give each bundle the color of its simple edge.
pub fn odd_bundle_color(m: &BundledMultigraph) -> Result<OddColoring, OddColorError> {
    let bundles = m.bundles();
    if let Some(((u, v), list)) = bundles.iter().find(|(_, l)| l.len() % 2 == 0) {
        return Err(OddColorError::EvenBundle {
            u: *u,
            v: *v,
            size: list.len(),
        });
    }
    if !m.is_connected_ignoring_isolated() {
        return Err(OddColorError::Disconnected);
    }
    if m.edge_count() == 0 {
        return Ok(OddColoring::new(Vec::new()));
    }
    let (simple, members) = m.underlying_simple();
    let active = simple.non_isolated_vertices();
    let simple_colors: Vec<Color> = if active.len() % 2 == 0 {
        let sub = simple.induced(&active);
        let local = even_order_three_color(&sub.graph)?;
        let mut colors = vec![0; simple.edge_count()];
        for (j, &i) in sub.edge_origin.iter().enumerate() {
            colors[i] = local.color(j);
        }
        colors
    } else {
        odd_order_simple_four_color(&simple)?
    };
    let mut colors = vec![0; m.edge_count()];
    for (s, list) in members.iter().enumerate() {
        for &i in list {
            colors[i] = simple_colors[s];
        }
    }
    finish(m, colors)
}

fn finish(m: &BundledMultigraph, colors: Vec<Color>) -> Result<OddColoring, OddColorError> {
    if is_odd_coloring(m, &colors) {
        Ok(OddColoring::new(colors))
    } else {
        Err(OddColorError::NotOdd)
    }
}

/// Which construction produced a component's coloring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    Empty,
    EvenOrder,
    KBridge,
    OddBundles,
    Search,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DispatchedColoring {
    pub coloring: OddColoring,
    pub strategy: Strategy,
}

/// Largest palette the fallback search may use.
pub const PALETTE_CEILING: usize = 6;
/// Node budget of the fallback search per palette size.
pub const SEARCH_BUDGET: u64 = 20_000_000;

/// Odd coloring of a connected (isolated vertices aside) loopless multigraph,
/// dispatched on order parity, k-bridges and bundle parity, with a bounded
/// search for inputs outside those hypotheses.
pub fn odd_color_component(m: &BundledMultigraph) -> Result<DispatchedColoring, OddColorError> {
    if m.edge_count() == 0 {
        return Ok(DispatchedColoring {
            coloring: OddColoring::new(Vec::new()),
            strategy: Strategy::Empty,
        });
    }
    if !m.is_connected_ignoring_isolated() {
        return Err(OddColorError::Disconnected);
    }
    let active = m.non_isolated_vertices();
    let sub = m.induced(&active);
    let g = &sub.graph;

    let (local, strategy) = if active.len().is_multiple_of(2) {
        (even_order_three_color(g)?, Strategy::EvenOrder)
    } else if let Some(bridge) = KBridge::find_all(g).into_iter().next() {
        (k_bridge_four_color(g, &bridge)?, Strategy::KBridge)
    } else if g.bundles().values().all(|l| l.len() % 2 == 1) {
        (odd_bundle_color(g)?, Strategy::OddBundles)
    } else {
        (search_odd_coloring(g)?, Strategy::Search)
    };
    if !is_odd_coloring(g, local.as_slice()) {
        return Err(OddColorError::NotOdd);
    }
    let mut colors = vec![0; m.edge_count()];
    for (j, &i) in sub.edge_origin.iter().enumerate() {
        colors[i] = local.color(j);
    }
    Ok(DispatchedColoring {
        coloring: OddColoring::new(colors),
        strategy,
    })
}

fn search_odd_coloring(g: &BundledMultigraph) -> Result<OddColoring, OddColorError> {
    let order = ParityOrder::new(g);
    for p in 1..=PALETTE_CEILING {
        let mut nodes = 0u64;
        let mut exhausted = false;
        let found = partition::find_partition(
            g.edge_count(),
            p,
            |prefix, block| {
                nodes += 1;
                if nodes > SEARCH_BUDGET {
                    exhausted = true;
                    return false;
                }
                order.admissible(g, prefix, block)
            },
            |_| true,
        );
        if exhausted {
            return Err(OddColorError::SearchBudget(SEARCH_BUDGET));
        }
        if let Some(rgs) = found {
            if p > 4 {
                warn!("odd coloring needed {p} colors (beyond the 4-color bound)");
            }
            let mut colors = vec![0; g.edge_count()];
            for (pos, &block) in rgs.iter().enumerate() {
                colors[order.edges[pos]] = block as Color + 1;
            }
            return Ok(OddColoring::new(colors));
        }
    }
    Err(OddColorError::PaletteExhausted {
        max: PALETTE_CEILING,
    })
}

/// Edge order for partition search that completes vertices early, with the
/// position at which each vertex's last incident edge is placed.
struct ParityOrder {
    edges: Vec<usize>,
    position: Vec<usize>,
    closes: Vec<Vec<VertexId>>,
}

impl ParityOrder {
    fn new(g: &BundledMultigraph) -> Self {
        let mut rank = vec![usize::MAX; g.vertex_count()];
        let mut next = 0;
        for start in 0..g.vertex_count() {
            if rank[start] != usize::MAX {
                continue;
            }
            rank[start] = next;
            next += 1;
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for &i in g.incident(x) {
                    let y = g.edge(i).other(x);
                    if rank[y] == usize::MAX {
                        rank[y] = next;
                        next += 1;
                        queue.push_back(y);
                    }
                }
            }
        }
        let mut edges: Vec<usize> = (0..g.edge_count()).collect();
        edges.sort_by_key(|&i| {
            let e = g.edge(i);
            (rank[e.u].max(rank[e.v]), rank[e.u].min(rank[e.v]), i)
        });
        let mut position = vec![0; g.edge_count()];
        for (p, &i) in edges.iter().enumerate() {
            position[i] = p;
        }
        let mut closes = vec![Vec::new(); g.edge_count()];
        for v in 0..g.vertex_count() {
            if let Some(last) = g.incident(v).iter().map(|&i| position[i]).max() {
                closes[last].push(v);
            }
        }
        ParityOrder {
            edges,
            position,
            closes,
        }
    }

    /// Whether placing the next edge in `block` keeps every vertex it completes odd.
    fn admissible(&self, g: &BundledMultigraph, prefix: &[usize], block: usize) -> bool {
        let at = prefix.len();
        self.closes[at].iter().all(|&v| {
            let mut counts = [0usize; 16];
            for &i in g.incident(v) {
                let p = self.position[i];
                let b = if p == at { block } else { prefix[p] };
                counts[b] += 1;
            }
            counts.iter().all(|&c| c % 2 == 0 && c == 0 || c % 2 == 1)
        })
    }
}

/// Largest instance accepted by [`exact_odd_chromatic_index`].
pub const EXACT_ODD_EDGE_LIMIT: usize = 16;

/// Minimum number of classes over all edge partitions into odd subgraphs.
pub fn exact_odd_chromatic_index(m: &BundledMultigraph) -> Result<usize, OddColorError> {
    if m.edge_count() > EXACT_ODD_EDGE_LIMIT {
        return Err(OddColorError::TooLarge {
            edges: m.edge_count(),
            limit: EXACT_ODD_EDGE_LIMIT,
        });
    }
    let order = ParityOrder::new(m);
    let (blocks, _) = partition::min_blocks(
        m.edge_count(),
        m.edge_count(),
        |prefix, block| order.admissible(m, prefix, block),
        |_| true,
    )
    .expect("singleton classes are always odd");
    Ok(blocks)
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    /// Returns false when `a` and `b` were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}
