use std::collections::BTreeMap;

use proptest::prelude::*;

use fpe_core::fpe::{dual_bundle_violations, fpe_color};
use fpe_core::generate::{random_bridged, random_map, random_multigraph, random_tree, MoveWeights};
use fpe_core::oddcolor::{
    even_order_three_color, exact_odd_chromatic_index, forest_two_color, is_odd_coloring,
    k_bridge_four_color, odd_bundle_color, odd_color_component, tjoin_forest, KBridge,
};
use fpe_core::planemap::edge_of;
use fpe_core::qfo::{palette_permutations, permute_palette, qfo_color, QfoColoring};
use fpe_core::verify::{check_fpe, check_quasi_facially_odd};
use fpe_core::{Color, EdgeColoring, PlaneMap};

fn map(n: usize, seed: u64) -> PlaneMap {
    random_map(n, seed, &MoveWeights::default()).unwrap()
}

fn sizes() -> impl Strategy<Value = (usize, u64)> {
    (2usize..40, any::<u64>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn euler_and_walk_partition((n, seed) in sizes()) {
        let g = map(n, seed);
        prop_assert_eq!(g.edge_count(), n);
        prop_assert_eq!(g.vertex_count() + g.face_count(), g.edge_count() + 2);
        let mut seen = vec![0; g.half_edge_count()];
        for w in g.facial_walks() {
            for (i, &h) in w.half_edges.iter().enumerate() {
                seen[h] += 1;
                prop_assert_eq!(g.face_successor(h), w.half_edges[(i + 1) % w.len()]);
                prop_assert_eq!(g.face_of(h), w.face);
            }
        }
        prop_assert!(seen.iter().all(|&c| c == 1));
        prop_assert!(g.is_bridgeless());
        for e in 0..g.edge_count() {
            let (a, b) = g.edge_faces(e);
            prop_assert_ne!(a, b);
        }
    }

    #[test]
    fn pmap_round_trip((n, seed) in sizes()) {
        let g = map(n, seed);
        let text = g.to_pmap();
        let back = PlaneMap::parse_pmap(&text).unwrap();
        prop_assert_eq!(back.to_pmap(), text);
        prop_assert_eq!(map(n, seed), g);
    }

    #[test]
    fn contraction_keeps_euler((n, seed) in sizes(), pick in any::<prop::sample::Index>()) {
        let g = map(n, seed);
        let e = pick.index(g.edge_count());
        match g.contract_edge(e) {
            Ok(d) => {
                prop_assert_eq!(d.map.vertex_count(), g.vertex_count() - 1);
                prop_assert_eq!(d.map.edge_count(), g.edge_count() - 1);
                prop_assert_eq!(d.map.vertex_count() + d.map.face_count(), d.map.edge_count() + 2);
                prop_assert!(!d.edge_origin.contains(&e));
            }
            Err(_) => {
                let (u, v) = g.endpoints(e);
                let parallel = (0..g.edge_count()).filter(|&x| {
                    let (a, b) = g.endpoints(x);
                    (a, b) == (u, v) || (a, b) == (v, u)
                });
                prop_assert!(parallel.count() >= 2);
            }
        }
    }

    #[test]
    fn blocks_partition_edges((n, seed) in sizes()) {
        let g = map(n, seed);
        let mut edges: Vec<usize> = g.blocks().blocks.iter().flat_map(|b| b.edges.clone()).collect();
        edges.sort_unstable();
        prop_assert_eq!(edges, (0..g.edge_count()).collect::<Vec<_>>());
    }

    #[test]
    fn face_adjacency_matches_walks((n, seed) in sizes()) {
        let g = map(n, seed);
        let pairs = g.face_adjacent_pairs();
        for w in g.facial_walks() {
            for i in 0..w.len() {
                let a = edge_of(w.half_edges[i]);
                let b = edge_of(w.half_edges[(i + 1) % w.len()]);
                if a != b {
                    prop_assert!(pairs.contains(&(a.min(b), a.max(b))));
                }
            }
        }
    }

    #[test]
    fn qfo_is_valid_and_permutation_invariant((n, seed) in sizes(), p in 0usize..24) {
        let g = map(n, seed);
        let q = qfo_color(&g).unwrap();
        prop_assert!(q.coloring.palette().iter().all(|&c| (1..=4).contains(&c)));
        prop_assert!(check_quasi_facially_odd(&g, &q).unwrap().passed());
        let permuted = QfoColoring {
            coloring: permute_palette(&q.coloring, &palette_permutations()[p]),
            c5_blocks: q.c5_blocks.clone(),
        };
        prop_assert!(check_quasi_facially_odd(&g, &permuted).unwrap().passed());

        // Outside C5-blocks, adjacent faces share each color an odd number of times or not at all.
        let in_block: Vec<bool> = (0..g.edge_count()).map(|e| q.c5_blocks.iter().any(|b| b.contains(&e))).collect();
        for (_, common) in g.adjacent_face_pairs() {
            if common.iter().all(|&e| in_block[e]) {
                continue;
            }
            let mut counts: BTreeMap<Color, usize> = BTreeMap::new();
            for &e in &common {
                *counts.entry(q.coloring.color(e)).or_default() += 1;
            }
            prop_assert!(counts.values().all(|&c| c % 2 == 1));
        }
    }

    #[test]
    fn dual_classes_partition_edges((n, seed) in sizes()) {
        let g = map(n, seed);
        let q = qfo_color(&g).unwrap();
        let mut ids: Vec<usize> = (1..=4)
            .flat_map(|c| g.dual_restricted(&q.coloring, c).unwrap().edges().iter().map(|e| e.id).collect::<Vec<_>>())
            .collect();
        ids.sort_unstable();
        prop_assert_eq!(ids, (0..g.edge_count()).collect::<Vec<_>>());
        for c in 1..=4 {
            prop_assert!(dual_bundle_violations(&g, &q, c).unwrap().is_empty());
        }
    }

    #[test]
    fn fpe_invariants((n, seed) in sizes()) {
        let g = map(n, seed);
        let r = fpe_color(&g).unwrap();
        prop_assert!(r.palette_size <= 16);
        prop_assert!(check_fpe(&g, &r.coloring).unwrap().passed());
        let q = &r.trace.qfo.coloring;
        // Refinement: a final label always comes from a single QFO class.
        let mut class_of: BTreeMap<Color, Color> = BTreeMap::new();
        for e in 0..g.edge_count() {
            let class = *class_of.entry(r.coloring.color(e)).or_insert(q.color(e));
            prop_assert_eq!(class, q.color(e));
        }
        // Dual degree of each odd class equals the face count of its final label.
        for class in &r.trace.classes {
            for comp in &class.components {
                let mut degree: BTreeMap<(usize, Color), usize> = BTreeMap::new();
                for label in &comp.edges {
                    let (a, b) = g.edge_faces(label.edge);
                    *degree.entry((a, label.color)).or_default() += 1;
                    *degree.entry((b, label.color)).or_default() += 1;
                }
                for (&(face, odd), &d) in &degree {
                    let entry = r.trace.compaction.iter().find(|p| p.class == class.color && p.odd == odd).unwrap();
                    let on_face = g.walk(face).edges().filter(|&e| r.coloring.color(e) == entry.label).count();
                    prop_assert_eq!(on_face, d);
                    prop_assert_eq!(d % 2, 1);
                }
            }
        }
    }

    #[test]
    fn tjoin_parity(n in 1usize..60, seed in any::<u64>(), mask in any::<u64>()) {
        let t = random_tree(n, seed);
        let mut s: Vec<usize> = (0..n).filter(|&v| mask >> (v % 64) & 1 == 1).collect();
        if s.len() % 2 == 1 {
            s.pop();
        }
        let tree: Vec<usize> = (0..t.edge_count()).collect();
        let f = tjoin_forest(&t, &tree, &s).unwrap();
        let mut degree = vec![0; n];
        for &i in &f {
            degree[t.edge(i).u] += 1;
            degree[t.edge(i).v] += 1;
        }
        for (v, d) in degree.iter().enumerate() {
            prop_assert_eq!(d % 2 == 1, s.contains(&v));
        }
        // In a tree the join is unique: edge i is in it iff the subtree below it holds an odd number of terminals.
        for i in 0..t.edge_count() {
            let e = t.edge(i);
            let below = t.reachable_without(e.v, &[i]);
            let inside = below.iter().filter(|v| s.contains(v)).count();
            prop_assert_eq!(f.contains(&i), inside % 2 == 1);
        }
    }

    #[test]
    fn forest_coloring(n in 1usize..200, seed in any::<u64>()) {
        let t = random_tree(n, seed);
        let c = forest_two_color(&t).unwrap();
        prop_assert!(c.palette_size() <= 2);
        prop_assert!(is_odd_coloring(&t, c.as_slice()));
    }

    #[test]
    fn even_order_coloring(half in 1usize..12, extra in 0usize..10, bundle in 1usize..4, seed in any::<u64>()) {
        let m = random_multigraph(2 * half, extra, bundle, seed);
        let c = even_order_three_color(&m).unwrap();
        prop_assert!(c.palette_size() <= 3);
        prop_assert!(is_odd_coloring(&m, c.as_slice()));
    }

    #[test]
    fn k_bridge_coloring(a in 1usize..=12, b in 1usize..=12, k in 1usize..=5, seed in any::<u64>()) {
        let (m, u, v) = random_bridged(a, b, k, 3, seed);
        let bridge = KBridge::between(&m, u, v).unwrap();
        let c = k_bridge_four_color(&m, &bridge).unwrap();
        prop_assert!(c.palette_size() <= 4);
        prop_assert!(is_odd_coloring(&m, c.as_slice()));
        let mut counts: BTreeMap<Color, usize> = BTreeMap::new();
        for &i in &bridge.edges {
            *counts.entry(c.color(i)).or_default() += 1;
        }
        let mut split: Vec<usize> = counts.values().copied().collect();
        split.sort_unstable();
        if k % 2 == 1 {
            prop_assert_eq!(split, vec![k]);
        } else {
            prop_assert_eq!(split, vec![1, k - 1]);
        }
    }

    #[test]
    fn odd_bundle_coloring(n in 2usize..14, extra in 0usize..20, seed in any::<u64>()) {
        let simple = random_multigraph(n, extra, 1, seed);
        // Make every bundle odd: 1 or 3 copies of each distinct pair.
        let mut pairs = Vec::new();
        for (i, (u, v)) in simple.bundles().into_keys().enumerate() {
            let copies = if (seed >> (i % 64)) & 1 == 1 { 3 } else { 1 };
            pairs.extend(std::iter::repeat_n((u, v), copies));
        }
        let m = fpe_core::BundledMultigraph::from_pairs(n, &pairs).unwrap();
        let c = odd_bundle_color(&m).unwrap();
        prop_assert!(c.palette_size() <= 4);
        prop_assert!(is_odd_coloring(&m, c.as_slice()));
    }

    #[test]
    fn dispatcher_never_beats_oracle(n in 2usize..7, extra in 0usize..5, bundle in 1usize..3, seed in any::<u64>()) {
        let m = random_multigraph(n, extra, bundle, seed);
        prop_assume!(m.edge_count() <= 12);
        let d = odd_color_component(&m).unwrap();
        prop_assert!(is_odd_coloring(&m, d.coloring.as_slice()));
        let exact = exact_odd_chromatic_index(&m).unwrap();
        prop_assert!(exact <= d.coloring.palette_size());
    }
}

#[test]
fn fpe_is_deterministic() {
    for seed in 0..5 {
        let g = map(30, seed);
        let a = fpe_color(&g).unwrap();
        let b = fpe_color(&g).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn exact_index_is_monotone_in_the_block_limit() {
    use fpe_core::generate::{cycle, wheel};
    use fpe_core::verify::exact_chi_fp;
    for g in [cycle(4).unwrap(), cycle(6).unwrap(), wheel(4).unwrap()] {
        let chi = exact_chi_fp(&g, g.edge_count()).unwrap().unwrap();
        for limit in 0..=g.edge_count() {
            let got = exact_chi_fp(&g, limit).unwrap();
            assert_eq!(got, (limit >= chi).then_some(chi));
        }
        // Any FPE-coloring found by the pipeline uses at least the exact index.
        let r = fpe_color(&g).unwrap();
        assert!(chi <= r.palette_size);
        let relabeled = EdgeColoring::new(r.coloring.as_slice().iter().map(|c| 17 - c).collect());
        assert!(check_fpe(&g, &relabeled).unwrap().passed());
    }
}
