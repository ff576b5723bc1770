//! Quasi-facially-odd edge colorings with at most four colors.
//!
//! The recursion splits at cut vertices, merges across nontrivial 2-edge
//! cuts shared by two faces, and otherwise shortens a thread of common edges
//! by contraction. Every extension is checked against the full quasi
//! condition; if the prescribed colors fail, the newly colored edges (at most
//! four) are searched exhaustively.

use log::debug;
use serde::Serialize;
use thiserror::Error;

use crate::coloring::{Color, EdgeColoring};
use crate::planemap::{DerivedMap, EdgeId, MapError, PlaneMap, VertexId};
use crate::verify::{check_quasi_facially_odd, VerifyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QfoError {
    #[error("edge {0} is a bridge")]
    Bridge(EdgeId),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error("no quasi-facially-odd extension exists for edges {edges:?}")]
    RepairFailed { edges: Vec<EdgeId> },
    #[error("common edges {0:?} neither form a thread nor contain a nontrivial cut")]
    NotAThread(Vec<EdgeId>),
    #[error("facially proper search exceeded {0} nodes")]
    ProperBudget(u64),
    #[error("result failed the quasi-facially-odd check")]
    CheckFailed,
}

/// An edge coloring together with the C5-blocks granted the relaxed condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QfoColoring {
    pub coloring: EdgeColoring,
    pub c5_blocks: Vec<Vec<EdgeId>>,
}

/// How often each step of the recursion ran.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct QfoStats {
    pub base: usize,
    pub cut_vertex: usize,
    pub proper: usize,
    pub ear: usize,
    pub merge: usize,
    /// Thread steps by k = 2, 3, 4, 5 and k >= 6.
    pub thread: [usize; 5],
    /// Extensions where the prescribed colors failed and search was needed.
    pub repairs: usize,
}

const DIGON: [Color; 2] = [1, 2];
const PENTAGON: [Color; 5] = [1, 2, 1, 3, 4];
const NONAGON: [Color; 9] = [1, 2, 3, 1, 2, 3, 1, 2, 3];

/// Node budget for [`facially_proper_four_color`].
pub const PROPER_BUDGET: u64 = 10_000_000;

pub fn qfo_color(g: &PlaneMap) -> Result<QfoColoring, QfoError> {
    qfo_color_with_stats(g).map(|(q, _)| q)
}

pub fn qfo_color_with_stats(g: &PlaneMap) -> Result<(QfoColoring, QfoStats), QfoError> {
    if let Some(&e) = g.bridges().first() {
        return Err(QfoError::Bridge(e));
    }
    let mut stats = QfoStats::default();
    let colors = color_rec(g, &mut stats)?;
    let q = QfoColoring {
        coloring: EdgeColoring::new(colors),
        c5_blocks: c5_blocks_of(g),
    };
    if !check_quasi_facially_odd(g, &q)?.passed() {
        return Err(QfoError::CheckFailed);
    }
    Ok((q, stats))
}

fn c5_blocks_of(g: &PlaneMap) -> Vec<Vec<EdgeId>> {
    g.blocks().c5_blocks().map(|b| b.edges.clone()).collect()
}

fn is_qfo(g: &PlaneMap, colors: &[Color]) -> bool {
    let q = QfoColoring {
        coloring: EdgeColoring::new(colors.to_vec()),
        c5_blocks: c5_blocks_of(g),
    };
    check_quasi_facially_odd(g, &q).is_ok_and(|r| r.passed())
}

/// All 24 permutations of the palette, as images of colors 1..=4, in
/// lexicographic order.
pub fn palette_permutations() -> Vec<[Color; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 1..=4 {
        for b in 1..=4 {
            for c in 1..=4 {
                for d in 1..=4 {
                    let p = [a, b, c, d];
                    let mut seen = [false; 5];
                    if p.iter()
                        .all(|&x| !std::mem::replace(&mut seen[x as usize], true))
                    {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// Relabels color `x` as `p[x - 1]`.
pub fn permute_palette(c: &EdgeColoring, p: &[Color; 4]) -> EdgeColoring {
    c.map(|x| p[x as usize - 1])
}

fn lift(derived: &DerivedMap, colors: &[Color], out: &mut [Option<Color>], p: &[Color; 4]) {
    for (i, &e) in derived.edge_origin.iter().enumerate() {
        out[e] = Some(p[colors[i] as usize - 1]);
    }
}

const IDENTITY: [Color; 4] = [1, 2, 3, 4];

fn color_rec(g: &PlaneMap, stats: &mut QfoStats) -> Result<Vec<Color>, QfoError> {
    let m = g.edge_count();
    if m == 0 {
        return Ok(Vec::new());
    }

    let blocks = g.blocks();
    if let Some(&v) = blocks.cut_vertices.first() {
        stats.cut_vertex += 1;
        return split_at(g, v, stats);
    }

    if g.is_cycle() {
        let schema: Option<&[Color]> = match m {
            2 => Some(&DIGON),
            5 => Some(&PENTAGON),
            9 => Some(&NONAGON),
            _ => None,
        };
        if let Some(schema) = schema {
            stats.base += 1;
            let mut colors = vec![0; m];
            for (i, e) in g.walk(0).edges().enumerate() {
                colors[e] = schema[i];
            }
            return Ok(colors);
        }
    }

    let Some(((f, f2), _)) = g
        .adjacent_face_pairs()
        .into_iter()
        .find(|(_, common)| common.len() >= 2)
    else {
        stats.proper += 1;
        return Ok(facially_proper_four_color(g)?.as_slice().to_vec());
    };
    let common = g.common_edges_in_walk_order(f, f2);

    for pair in common.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let cut = g.nontrivial_edge_cut(a, b)?;
        if cut.is_nontrivial() {
            return cut_case(g, a, b, &cut.components[0], &cut.components[1], stats);
        }
    }
    thread_case(g, &common, stats)
}

fn split_at(g: &PlaneMap, v: VertexId, stats: &mut QfoStats) -> Result<Vec<Color>, QfoError> {
    let split = g.split_at_cut_vertex(v)?;
    debug!("split at cut vertex {v}");
    let inner = color_rec(&split.inner.map, stats)?;
    let outer = color_rec(&split.outer.map, stats)?;
    let mut base = vec![None; g.edge_count()];
    lift(&split.inner, &inner, &mut base, &IDENTITY);
    for p in palette_permutations() {
        let mut merged = base.clone();
        lift(&split.outer, &outer, &mut merged, &p);
        let colors: Vec<Color> = merged
            .iter()
            .map(|c| c.expect("both sides cover g"))
            .collect();
        let separated = split.cross.iter().all(|&(a, b)| colors[a] != colors[b]);
        if separated && is_qfo(g, &colors) {
            return Ok(colors);
        }
    }
    Err(QfoError::RepairFailed {
        edges: split.outer.edge_origin.clone(),
    })
}

fn is_c5(d: &DerivedMap) -> bool {
    d.map.is_cycle() && d.map.edge_count() == 5
}

fn cut_case(
    g: &PlaneMap,
    a: EdgeId,
    b: EdgeId,
    d1: &[VertexId],
    d2: &[VertexId],
    stats: &mut QfoStats,
) -> Result<Vec<Color>, QfoError> {
    let h1 = g.contract_subgraph(d2)?;
    let h2 = g.contract_subgraph(d1)?;
    if is_c5(&h1) {
        return ear_case(g, a, b, d1, &h2, stats);
    }
    if is_c5(&h2) {
        return ear_case(g, a, b, d2, &h1, stats);
    }

    stats.merge += 1;
    debug!("merge across cut {{{a}, {b}}}");
    let rho1 = color_rec(&h1.map, stats)?;
    let rho2 = color_rec(&h2.map, stats)?;
    let mut base = vec![None; g.edge_count()];
    lift(&h1, &rho1, &mut base, &IDENTITY);
    let mut on_h2 = vec![None; g.edge_count()];
    lift(&h2, &rho2, &mut on_h2, &IDENTITY);
    let (ra, rb) = (
        base[a].expect("cut edge in H1"),
        base[b].expect("cut edge in H1"),
    );
    let (sa, sb) = (
        on_h2[a].expect("cut edge in H2"),
        on_h2[b].expect("cut edge in H2"),
    );

    let perms = palette_permutations();
    let matching = perms
        .iter()
        .filter(|p| p[sa as usize - 1] == ra && p[sb as usize - 1] == rb);
    let others = perms
        .iter()
        .filter(|p| !(p[sa as usize - 1] == ra && p[sb as usize - 1] == rb));
    for (tried, p) in matching.chain(others).enumerate() {
        let mut merged = base.clone();
        for (i, &e) in h2.edge_origin.iter().enumerate() {
            if e != a && e != b {
                merged[e] = Some(p[rho2[i] as usize - 1]);
            }
        }
        let colors: Vec<Color> = merged
            .iter()
            .map(|c| c.expect("H1 and H2 cover g"))
            .collect();
        if is_qfo(g, &colors) {
            if tried >= 2 {
                stats.repairs += 1;
            }
            return Ok(colors);
        }
    }
    Err(QfoError::RepairFailed {
        edges: h2.edge_origin.clone(),
    })
}

/// `ear` is a path of four vertices joined to the rest only by `a` and `b`;
/// `rest` is `g` with the ear contracted.
fn ear_case(
    g: &PlaneMap,
    a: EdgeId,
    b: EdgeId,
    ear: &[VertexId],
    rest: &DerivedMap,
    stats: &mut QfoStats,
) -> Result<Vec<Color>, QfoError> {
    stats.ear += 1;
    debug!("C5 ear across cut {{{a}, {b}}}");
    let local_b = rest
        .edge_origin
        .iter()
        .position(|&e| e == b)
        .expect("cut edge survives contraction");
    let shorter = rest.then(rest.map.contract_edge(local_b)?);
    let rho = color_rec(&shorter.map, stats)?;
    let mut base = vec![None; g.edge_count()];
    lift(&shorter, &rho, &mut base, &IDENTITY);

    let path = ear_path(g, a, ear);
    let ra = base[a].expect("e_i survives");
    let rest_colors: Vec<Color> = (1..=4).filter(|&c| c != ra).collect();
    let mut preferred = Vec::new();
    for &x in &rest_colors {
        for &y in &rest_colors {
            if x != y {
                preferred.push(vec![x, ra, y, ra]);
            }
        }
    }
    let new_edges = [path[0], path[1], path[2], b];
    extend(g, &base, &new_edges, &preferred, stats)
}

/// The three ear edges in order, starting next to `a`.
fn ear_path(g: &PlaneMap, a: EdgeId, ear: &[VertexId]) -> Vec<EdgeId> {
    let inside = |x: VertexId| ear.contains(&x);
    let (u, w) = g.endpoints(a);
    let mut at = if inside(u) { u } else { w };
    let mut prev = a;
    let mut path = Vec::with_capacity(3);
    while path.len() < 3 {
        let next = g
            .rotation(at)
            .iter()
            .map(|&h| (crate::planemap::edge_of(h), g.head(h)))
            .find(|&(e, y)| e != prev && inside(y))
            .expect("ear is a path");
        path.push(next.0);
        prev = next.0;
        at = next.1;
    }
    path
}

fn shares_degree_two_vertex(g: &PlaneMap, a: EdgeId, b: EdgeId) -> bool {
    let (a0, a1) = g.endpoints(a);
    let (b0, b1) = g.endpoints(b);
    [a0, a1]
        .into_iter()
        .any(|x| (x == b0 || x == b1) && g.degree(x) == 2)
}

fn thread_case(
    g: &PlaneMap,
    common: &[EdgeId],
    stats: &mut QfoStats,
) -> Result<Vec<Color>, QfoError> {
    if !common
        .windows(2)
        .all(|p| shares_degree_two_vertex(g, p[0], p[1]))
    {
        return Err(QfoError::NotAThread(common.to_vec()));
    }
    let k = common.len();
    let e = |i: usize| common[i - 1];
    let contracted: Vec<EdgeId> = match k {
        2 | 3 => vec![e(2)],
        4 => vec![e(2), e(3)],
        _ => vec![e(2), e(3), e(4), e(5)],
    };
    stats.thread[k.min(6) - 2] += 1;
    debug!("thread of {k} common edges, contracting {contracted:?}");
    let smaller = g.contract_edges(&contracted)?;
    let rho = color_rec(&smaller.map, stats)?;
    let mut base = vec![None; g.edge_count()];
    lift(&smaller, &rho, &mut base, &IDENTITY);
    let c = |i: usize| base[e(i)].expect("uncontracted edge is colored");

    let preferred: Vec<Vec<Color>> = match k {
        2 => {
            let adjacent = &g.medial_adjacency_graph()[e(2)];
            (1..=4)
                .filter(|x| !adjacent.iter().any(|&y| base[y] == Some(*x)))
                .map(|x| vec![x])
                .collect()
        }
        3 => (1..=4)
            .filter(|&x| x != c(1) && x != c(3))
            .map(|x| vec![x])
            .collect(),
        4 => {
            let free: Vec<Color> = (1..=4).filter(|&x| x != c(1) && x != c(4)).collect();
            if free.len() == 2 {
                vec![free.clone(), vec![free[1], free[0]]]
            } else {
                Vec::new()
            }
        }
        5 => {
            let free: Vec<Color> = (1..=4).filter(|&x| x != c(1)).collect();
            let mut out = Vec::new();
            for &x in &free {
                for &y in &free {
                    if x != y {
                        out.push(vec![x, c(1), y, c(1)]);
                    }
                }
            }
            out
        }
        _ => vec![vec![c(6), c(1), c(6), c(1)]],
    };
    extend(g, &base, &contracted, &preferred, stats)
}

/// Fills `new_edges` with the first preferred assignment that makes the whole
/// coloring quasi-facially-odd, else with the first such assignment found by
/// exhaustive search.
fn extend(
    g: &PlaneMap,
    base: &[Option<Color>],
    new_edges: &[EdgeId],
    preferred: &[Vec<Color>],
    stats: &mut QfoStats,
) -> Result<Vec<Color>, QfoError> {
    let mut colors: Vec<Color> = base.iter().map(|c| c.unwrap_or(0)).collect();
    debug_assert!(new_edges.iter().all(|&e| base[e].is_none()));
    for assignment in preferred {
        for (&e, &x) in new_edges.iter().zip(assignment) {
            colors[e] = x;
        }
        if is_qfo(g, &colors) {
            return Ok(colors);
        }
    }
    stats.repairs += 1;
    let n = new_edges.len() as u32;
    for code in 0..4usize.pow(n) {
        let mut rest = code;
        for &e in new_edges {
            colors[e] = (rest % 4) as Color + 1;
            rest /= 4;
        }
        if is_qfo(g, &colors) {
            return Ok(colors);
        }
    }
    Err(QfoError::RepairFailed {
        edges: new_edges.to_vec(),
    })
}

/// Proper 4-coloring of the medial adjacency graph by backtracking in
/// saturation-degree order.
pub fn facially_proper_four_color(g: &PlaneMap) -> Result<EdgeColoring, QfoError> {
    facially_proper_four_color_with_budget(g, PROPER_BUDGET)
}

pub fn facially_proper_four_color_with_budget(
    g: &PlaneMap,
    budget: u64,
) -> Result<EdgeColoring, QfoError> {
    let adj = g.medial_adjacency_graph();
    let mut colors = vec![0 as Color; adj.len()];
    let mut nodes = 0u64;
    match dsatur(&adj, &mut colors, 0, &mut nodes, budget) {
        Some(true) => Ok(EdgeColoring::new(colors)),
        Some(false) => unreachable!("medial graphs of plane maps are 4-colorable"),
        None => Err(QfoError::ProperBudget(budget)),
    }
}

/// `None` when the budget runs out.
fn dsatur(
    adj: &[Vec<EdgeId>],
    colors: &mut [Color],
    done: usize,
    nodes: &mut u64,
    budget: u64,
) -> Option<bool> {
    if done == adj.len() {
        return Some(true);
    }
    *nodes += 1;
    if *nodes > budget {
        return None;
    }
    let used = |v: usize, colors: &[Color]| -> [bool; 5] {
        let mut u = [false; 5];
        for &w in &adj[v] {
            u[colors[w] as usize] = true;
        }
        u
    };
    let v = (0..adj.len())
        .filter(|&v| colors[v] == 0)
        .max_by_key(|&v| {
            let sat = used(v, colors)[1..].iter().filter(|&&b| b).count();
            (sat, adj[v].len(), std::cmp::Reverse(v))
        })
        .expect("an uncolored vertex remains");
    let forbidden = used(v, colors);
    for c in 1..=4 {
        if forbidden[c as usize] {
            continue;
        }
        colors[v] = c;
        match dsatur(adj, colors, done + 1, nodes, budget) {
            Some(false) => {}
            other => return other,
        }
    }
    colors[v] = 0;
    Some(false)
}
