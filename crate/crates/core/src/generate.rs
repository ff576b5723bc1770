//! Fixture families and a seeded random generator of 2-edge-connected plane
//! multigraphs.

use std::fmt;
use std::str::FromStr;

use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::multigraph::BundledMultigraph;
use crate::planemap::{EdgeId, HalfEdge, MapError, PlaneMap, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("family {family} needs n >= {min}, got {n}")]
    InvalidSize {
        family: Family,
        n: usize,
        min: usize,
    },
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("move weights must be non-negative with a positive sum")]
    BadWeights,
    #[error(transparent)]
    Map(#[from] MapError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Cycle,
    Wheel,
    Theta,
    TwoPentagons,
    C5Chain,
    Random,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Cycle => "cycle",
            Family::Wheel => "wheel",
            Family::Theta => "theta",
            Family::TwoPentagons => "two-pentagons",
            Family::C5Chain => "c5-chain",
            Family::Random => "random",
        })
    }
}

impl FromStr for Family {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "cycle" => Family::Cycle,
            "wheel" => Family::Wheel,
            "theta" => Family::Theta,
            "two-pentagons" => Family::TwoPentagons,
            "c5-chain" => Family::C5Chain,
            "random" => Family::Random,
            other => return Err(GenError::UnknownFamily(other.to_string())),
        })
    }
}

/// Relative frequencies of the random generator's growth moves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoveWeights {
    /// New edge across a face between two distinct vertices.
    pub chord: f64,
    /// Split an edge with a new degree-2 vertex.
    pub subdivide: f64,
    /// New edge parallel to an existing one, bounding a digon face.
    pub parallel: f64,
    /// New cycle glued at a single vertex (creates cut vertices and C5-blocks).
    pub pendant_cycle: f64,
}

impl Default for MoveWeights {
    fn default() -> Self {
        MoveWeights {
            chord: 0.4,
            subdivide: 0.25,
            parallel: 0.15,
            pendant_cycle: 0.2,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenSpec {
    pub family: Family,
    pub n: usize,
    pub seed: u64,
    pub weights: MoveWeights,
}

impl GenSpec {
    pub fn new(family: Family, n: usize, seed: u64) -> Self {
        GenSpec {
            family,
            n,
            seed,
            weights: MoveWeights::default(),
        }
    }
}

pub fn generate(spec: &GenSpec) -> Result<PlaneMap, GenError> {
    let need = |min: usize| {
        if spec.n < min {
            Err(GenError::InvalidSize {
                family: spec.family,
                n: spec.n,
                min,
            })
        } else {
            Ok(())
        }
    };
    match spec.family {
        Family::Cycle => need(2).and_then(|_| Ok(cycle(spec.n)?)),
        Family::Wheel => need(3).and_then(|_| Ok(wheel(spec.n)?)),
        Family::Theta => need(2).and_then(|_| Ok(theta(spec.n)?)),
        Family::TwoPentagons => Ok(two_pentagons()),
        Family::C5Chain => need(1).and_then(|_| Ok(c5_chain(spec.n)?)),
        Family::Random => {
            need(2)?;
            random_map(spec.n, spec.seed, &spec.weights)
        }
    }
}

/// Incremental rotation-system editor. Edge `i` owns half-edges `2i`, `2i + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapBuilder {
    rotations: Vec<Vec<HalfEdge>>,
    edges: usize,
}

impl MapBuilder {
    /// `C_n`: edge `i` runs from vertex `i` to vertex `i + 1 (mod n)`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 2, "cycles need at least two vertices");
        let rotations = (0..n)
            .map(|i| vec![2 * i, 2 * ((i + n - 1) % n) + 1])
            .collect();
        MapBuilder {
            rotations,
            edges: n,
        }
    }

    pub fn from_map(g: &PlaneMap) -> Self {
        MapBuilder {
            rotations: g.rotations().to_vec(),
            edges: g.edge_count(),
        }
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.rotations.len()
    }

    fn new_edge(&mut self) -> EdgeId {
        self.edges += 1;
        self.edges - 1
    }

    fn new_vertex(&mut self, rotation: Vec<HalfEdge>) -> VertexId {
        self.rotations.push(rotation);
        self.rotations.len() - 1
    }

    /// Glues a cycle of `len` edges at `v`; both of its ends are inserted at
    /// rotation index `pos`. Returns the new vertices in cycle order.
    pub fn pendant_cycle(&mut self, v: VertexId, pos: usize, len: usize) -> Vec<VertexId> {
        assert!(len >= 2, "pendant cycles need at least two edges");
        let first = self.new_edge();
        let mut incoming = 2 * first + 1;
        let mut created = Vec::new();
        for _ in 1..len {
            let e = self.new_edge();
            created.push(self.new_vertex(vec![incoming, 2 * e]));
            incoming = 2 * e + 1;
        }
        let rot = &mut self.rotations[v];
        rot.insert(pos, 2 * first);
        rot.insert(pos + 1, incoming);
        created
    }

    /// New edge from `u` (inserted at rotation index `pos_u`) to `v` (at `pos_v`).
    pub fn chord(&mut self, u: VertexId, pos_u: usize, v: VertexId, pos_v: usize) -> EdgeId {
        let e = self.new_edge();
        self.rotations[u].insert(pos_u, 2 * e);
        self.rotations[v].insert(pos_v, 2 * e + 1);
        e
    }

    /// Splits edge `e` with a new vertex; `e` keeps its tail, the new edge takes its head.
    pub fn subdivide(&mut self, e: EdgeId) -> VertexId {
        let f = self.new_edge();
        let head_rot = self
            .rotations
            .iter_mut()
            .find(|r| r.contains(&(2 * e + 1)))
            .expect("edge exists");
        let at = head_rot.iter().position(|&h| h == 2 * e + 1).unwrap();
        head_rot[at] = 2 * f + 1;
        self.new_vertex(vec![2 * e + 1, 2 * f])
    }

    pub fn build(&self) -> Result<PlaneMap, MapError> {
        PlaneMap::from_rotations(self.rotations.clone())
    }
}

pub fn cycle(n: usize) -> Result<PlaneMap, MapError> {
    if n < 2 {
        return Err(MapError::Empty);
    }
    MapBuilder::cycle(n).build()
}

/// Wheel with `n` spokes: rim edges `0..n` join rim vertex `i` to `i + 1`,
/// spoke `n + i` joins the hub (vertex `n`) to rim vertex `i`.
pub fn wheel(n: usize) -> Result<PlaneMap, MapError> {
    if n < 3 {
        return Err(MapError::Empty);
    }
    let mut rotations: Vec<Vec<HalfEdge>> = (0..n)
        .map(|i| {
            let spoke_end = 2 * (n + i) + 1;
            let rim_in = 2 * ((i + n - 1) % n) + 1;
            let rim_out = 2 * i;
            vec![spoke_end, rim_in, rim_out]
        })
        .collect();
    rotations.push((0..n).map(|i| 2 * (n + i)).collect());
    PlaneMap::from_rotations(rotations)
}

/// Two vertices joined by `n` parallel edges.
pub fn theta(n: usize) -> Result<PlaneMap, MapError> {
    if n < 2 {
        return Err(MapError::Empty);
    }
    PlaneMap::from_rotations(vec![
        (0..n).map(|i| 2 * i).collect(),
        (0..n).rev().map(|i| 2 * i + 1).collect(),
    ])
}

/// `n` pentagons, each glued to the previous one at a single vertex.
pub fn c5_chain(n: usize) -> Result<PlaneMap, MapError> {
    if n < 1 {
        return Err(MapError::Empty);
    }
    let mut b = MapBuilder::cycle(5);
    let mut attach = 2;
    for _ in 1..n {
        let created = b.pendant_cycle(attach, 0, 5);
        attach = created[1];
    }
    b.build()
}

/// Two pentagons sharing one vertex.
pub fn two_pentagons() -> PlaneMap {
    c5_chain(2).expect("fixture is valid")
}

/// Two triangles sharing one vertex.
pub fn bowtie() -> PlaneMap {
    let mut b = MapBuilder::cycle(3);
    b.pendant_cycle(0, 0, 3);
    b.build().expect("fixture is valid")
}

#[derive(Debug, Clone, Copy)]
enum Move {
    Chord,
    Subdivide,
    Parallel,
    Pendant,
}

/// Grows a cycle by random embedding-preserving moves until it has exactly
/// `target` edges. Every move keeps the map connected and bridgeless.
pub fn random_map(target: usize, seed: u64, weights: &MoveWeights) -> Result<PlaneMap, GenError> {
    let w = [
        weights.chord,
        weights.subdivide,
        weights.parallel,
        weights.pendant_cycle,
    ];
    let dist = WeightedIndex::new(w).map_err(|_| GenError::BadWeights)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = rng.gen_range(3..=5).min(target).max(2);
    let mut builder = MapBuilder::cycle(start);
    let mut map = builder.build()?;
    while builder.edge_count() < target {
        let remaining = target - builder.edge_count();
        let mv =
            [Move::Chord, Move::Subdivide, Move::Parallel, Move::Pendant][dist.sample(&mut rng)];
        let applied = match mv {
            Move::Chord => random_chord(&mut builder, &map, &mut rng),
            Move::Subdivide => {
                builder.subdivide(rng.gen_range(0..map.edge_count()));
                true
            }
            Move::Parallel => {
                let h = rng.gen_range(0..map.half_edge_count());
                let walk = &map.walk(map.face_of(h)).half_edges;
                let i = walk.iter().position(|&x| x == h).unwrap();
                let next = walk[(i + 1) % walk.len()];
                let (u, v) = (map.vertex_of(h), map.vertex_of(next));
                let pu = map.rotation(u).iter().position(|&x| x == h).unwrap();
                let pv = map.rotation(v).iter().position(|&x| x == next).unwrap();
                builder.chord(u, pu, v, pv);
                true
            }
            Move::Pendant if remaining >= 2 => {
                let len = [2, 3, 4, 5, 5, 5, 6][rng.gen_range(0..7)].min(remaining);
                let h = rng.gen_range(0..map.half_edge_count());
                let v = map.vertex_of(h);
                let pos = map.rotation(v).iter().position(|&x| x == h).unwrap();
                builder.pendant_cycle(v, pos, len);
                true
            }
            Move::Pendant => false,
        };
        if applied {
            map = builder.build()?;
        }
    }
    Ok(map)
}

fn random_chord(builder: &mut MapBuilder, map: &PlaneMap, rng: &mut ChaCha8Rng) -> bool {
    let f = rng.gen_range(0..map.face_count());
    let walk = &map.walk(f).half_edges;
    if walk.len() < 3 {
        return false;
    }
    let i = rng.gen_range(0..walk.len());
    let j = rng.gen_range(0..walk.len());
    let (hi, hj) = (walk[i], walk[j]);
    let (u, v) = (map.vertex_of(hi), map.vertex_of(hj));
    if i == j || u == v {
        return false;
    }
    // Inserting just before the walk's outgoing half-edge puts the new edge
    // inside this face at that corner.
    let pu = map.rotation(u).iter().position(|&x| x == hi).unwrap();
    let pv = map.rotation(v).iter().position(|&x| x == hj).unwrap();
    builder.chord(u, pu, v, pv);
    true
}

/// Tree on `n` vertices where vertex `i > 0` hangs from a uniform earlier vertex.
pub fn random_tree(n: usize, seed: u64) -> BundledMultigraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<(VertexId, VertexId)> = (1..n).map(|i| (rng.gen_range(0..i), i)).collect();
    BundledMultigraph::from_pairs(n.max(1), &pairs).expect("tree edges are valid")
}

/// Connected loopless multigraph: a random tree plus `extra` random edges,
/// every adjacent pair then repeated up to `max_bundle` times in total.
pub fn random_multigraph(
    n: usize,
    extra: usize,
    max_bundle: usize,
    seed: u64,
) -> BundledMultigraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = n.max(1);
    let mut pairs: Vec<(VertexId, VertexId)> = (1..n).map(|i| (rng.gen_range(0..i), i)).collect();
    if n >= 2 {
        for _ in 0..extra {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u != v {
                pairs.push((u, v));
            }
        }
    }
    let mut out = Vec::new();
    for (u, v) in pairs {
        for _ in 0..rng.gen_range(1..=max_bundle.max(1)) {
            out.push((u, v));
        }
    }
    BundledMultigraph::from_pairs(n, &out).expect("edges are valid")
}

/// Two random connected sides of `a` and `b` vertices joined only by a bundle
/// of `k` parallel edges; returns the graph and the bundle's endpoints.
pub fn random_bridged(
    a: usize,
    b: usize,
    k: usize,
    max_bundle: usize,
    seed: u64,
) -> (BundledMultigraph, VertexId, VertexId) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (a, b) = (a.max(1), b.max(1));
    let left = random_multigraph(a, a / 2, max_bundle, rng.gen());
    let right = random_multigraph(b, b / 2, max_bundle, rng.gen());
    let u = rng.gen_range(0..a);
    let v = a + rng.gen_range(0..b);
    let mut edges: Vec<(VertexId, VertexId)> = left.edges().iter().map(|e| (e.u, e.v)).collect();
    edges.extend(right.edges().iter().map(|e| (a + e.u, a + e.v)));
    edges.extend(std::iter::repeat_n((u, v), k));
    let g = BundledMultigraph::from_pairs(a + b, &edges).expect("edges are valid");
    (g, u, v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_sizes() {
        let w4 = generate(&GenSpec::new(Family::Wheel, 4, 0)).unwrap();
        assert_eq!(
            (w4.vertex_count(), w4.edge_count(), w4.face_count()),
            (5, 8, 5)
        );
        let tp = generate(&GenSpec::new(Family::TwoPentagons, 0, 0)).unwrap();
        assert_eq!((tp.vertex_count(), tp.edge_count()), (9, 10));
        let c9 = generate(&GenSpec::new(Family::Cycle, 9, 0)).unwrap();
        assert!(c9.is_cycle() && c9.edge_count() == 9);
        let chain = c5_chain(4).unwrap();
        assert_eq!(chain.edge_count(), 20);
        assert_eq!(chain.blocks().c5_blocks().count(), 4);
        assert_eq!(theta(5).unwrap().face_count(), 5);
    }

    #[test]
    fn size_errors() {
        assert!(matches!(
            generate(&GenSpec::new(Family::Wheel, 2, 0)),
            Err(GenError::InvalidSize { min: 3, .. })
        ));
        assert!(matches!(
            generate(&GenSpec::new(Family::Cycle, 1, 0)),
            Err(GenError::InvalidSize { min: 2, .. })
        ));
        assert!("hexagon".parse::<Family>().is_err());
    }

    #[test]
    fn random_maps_are_valid_and_deterministic() {
        for seed in 0..40 {
            let n = 10 + (seed as usize * 7) % 51;
            let spec = GenSpec::new(Family::Random, n, seed);
            let g = generate(&spec).unwrap();
            assert_eq!(g.edge_count(), n);
            assert!(g.is_bridgeless(), "seed {seed}");
            let again = generate(&spec).unwrap();
            assert_eq!(g.to_pmap(), again.to_pmap());
            assert_eq!(PlaneMap::parse_pmap(&g.to_pmap()).unwrap(), g);
        }
    }

    #[test]
    fn random_maps_exercise_parallel_edges_and_cut_vertices() {
        let mut parallel = 0;
        let mut cut = 0;
        let mut c5 = 0;
        for seed in 0..50 {
            let g = random_map(40, seed, &MoveWeights::default()).unwrap();
            let m = g.to_multigraph();
            if m.bundles().values().any(|b| b.len() > 1) {
                parallel += 1;
            }
            let dec = g.blocks();
            if !dec.cut_vertices.is_empty() {
                cut += 1;
            }
            if dec.c5_blocks().count() > 0 {
                c5 += 1;
            }
        }
        assert!(parallel > 10 && cut > 10 && c5 > 3, "{parallel} {cut} {c5}");
    }
}
