//! Property tests for the invariants of contraction sequences, canonization,
//! modular decomposition, WL refinement and the bipartite structure checks.

mod common;

use proptest::prelude::*;
use twinwl::experiment::{write_bundle, Bundle, ExperimentName};
use twinwl::format::{parse_graph, parse_sequence_file, render_graph, render_sequence_file};
use twinwl::generators::{random_chain_graph, random_prime_tww1, random_tww1};
use twinwl::iso::find_isomorphism;
use twinwl::modular::{mod_tree, twins_partition, ModLabel, ModTree};
use twinwl::search::{exact_twinwidth, heuristic_best, SearchBudget};
use twinwl::structure::{
    gf2_rank, is_partial_half_graph, max_balanced_biclique_chain, max_induced_half_graph,
    max_matching, reduced_rank, Gf2Matrix,
};
use twinwl::trigraph::{replay, verify_sequence, TrigraphShape};
use twinwl::tww1::{canonical_form, cs_invariant};
use twinwl::wl::{color_refinement, wl_distinguish, wl_refine};
use twinwl::{BipartiteView, ColoredGraph, ContractionSequence, Trigraph, Vertex};

/// Graph on `1..=max_n` vertices from an edge bit vector.
fn graph(max_n: usize) -> impl Strategy<Value = ColoredGraph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            let edges: Vec<_> = pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e).collect();
            ColoredGraph::from_edges_unchecked(n, edges)
        })
    })
}

fn colored_graph(max_n: usize) -> impl Strategy<Value = ColoredGraph> {
    graph(max_n).prop_flat_map(|g| {
        let n = g.n();
        proptest::collection::vec(0u64..3, n).prop_map(move |c| g.clone().with_colors(c).unwrap())
    })
}

/// A graph together with a permutation of its vertices.
fn with_perm<S: Strategy<Value = ColoredGraph>>(s: S) -> impl Strategy<Value = (ColoredGraph, Vec<Vertex>)> {
    s.prop_flat_map(|g| {
        let perm = Just((0..g.n()).collect::<Vec<_>>()).prop_shuffle();
        (Just(g), perm)
    })
}

/// A random complete contraction sequence; `choices` picks the merged pair
/// among the live parts at each step.
fn random_sequence(g: &ColoredGraph, choices: &[(usize, usize)]) -> ContractionSequence {
    let mut t = Trigraph::from_graph(g);
    let mut seq = ContractionSequence::default();
    for &(x, y) in choices.iter().take(g.n().saturating_sub(1)) {
        let live: Vec<_> = t.live_parts().collect();
        let a = live[x % live.len()];
        let rest: Vec<_> = live.iter().copied().filter(|&p| p != a).collect();
        let b = rest[y % rest.len()];
        t.merge(a, b).unwrap();
        seq.push(a, b);
    }
    seq
}

/// The quotient trigraph by definition, in the same shape as `Trigraph::shape`.
fn naive_shape(g: &ColoredGraph, parts: &[Vec<Vertex>]) -> TrigraphShape {
    let mut parts: Vec<Vec<Vertex>> = parts
        .iter()
        .map(|p| {
            let mut p = p.clone();
            p.sort_unstable();
            p
        })
        .collect();
    parts.sort_by_key(|p| p[0]);
    let mut black = Vec::new();
    let mut red = Vec::new();
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            let total = parts[i].len() * parts[j].len();
            let edges = parts[i]
                .iter()
                .flat_map(|&u| parts[j].iter().map(move |&v| (u, v)))
                .filter(|&(u, v)| g.has_edge(u, v))
                .count();
            if edges == total {
                black.push((i, j));
            } else if edges > 0 {
                red.push((i, j));
            }
        }
    }
    TrigraphShape { parts, black, red }
}

fn check_gallai(g: &ColoredGraph, node: &ModTree) -> Result<(), TestCaseError> {
    let (sub, _) = g.induced_subgraph(&node.module);
    let expected = if node.module.len() == 1 {
        ModLabel::Single
    } else if !sub.is_connected() {
        ModLabel::Parallel
    } else if !sub.complement().is_connected() {
        ModLabel::Series
    } else {
        ModLabel::Prime
    };
    prop_assert_eq!(node.label, expected);
    let mut union: Vec<Vertex> = node.children.iter().flat_map(|c| c.module.clone()).collect();
    union.sort_unstable();
    if node.label != ModLabel::Single {
        prop_assert_eq!(&union, &node.module);
    }
    for c in &node.children {
        check_gallai(g, c)?;
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn replay_matches_quotient_at_every_prefix(
        g in graph(9),
        choices in proptest::collection::vec((0usize..64, 0usize..64), 8),
    ) {
        let seq = random_sequence(&g, &choices);
        let pairs = vertex_pairs(&g, &seq);
        let mut shapes = Vec::new();
        let (report, _) = replay(&g, &seq, |_, t| shapes.push(t.shape())).unwrap();
        let mut parts: Vec<Vec<Vertex>> = g.vertices().map(|v| vec![v]).collect();
        for (step, &(u, v)) in pairs.iter().enumerate() {
            let iu = parts.iter().position(|p| p.contains(&u)).unwrap();
            let iv = parts.iter().position(|p| p.contains(&v)).unwrap();
            let moved = std::mem::take(&mut parts[iv]);
            parts[iu].extend(moved);
            parts.remove(iv);
            let expected = naive_shape(&g, &parts);
            prop_assert_eq!(&shapes[step], &expected);
            let red_deg = (0..parts.len())
                .map(|i| expected.red.iter().filter(|&&(x, y)| x == i || y == i).count())
                .max()
                .unwrap_or(0);
            prop_assert_eq!(report.steps[step].max_red_degree, red_deg);
        }
        prop_assert_eq!(report.width, common::sequence_width_by_definition(&g, &pairs));
    }

    #[test]
    fn prefix_widths_are_monotone(
        g in graph(9),
        choices in proptest::collection::vec((0usize..64, 0usize..64), 8),
    ) {
        let seq = random_sequence(&g, &choices);
        let mut last = 0;
        for len in 0..=seq.len() {
            let w = verify_sequence(&g, &seq.prefix(len)).unwrap().width;
            prop_assert!(w >= last);
            last = w;
        }
    }

    #[test]
    fn heuristic_width_matches_replay(g in graph(10)) {
        let r = heuristic_best(&g, SearchBudget::default());
        prop_assert!(r.sequence.is_complete(g.n()));
        prop_assert_eq!(verify_sequence(&g, &r.sequence).unwrap().width, r.width);
    }

    #[test]
    fn exact_width_is_at_most_heuristic(g in graph(8)) {
        let exact = exact_twinwidth(&g, SearchBudget::default());
        let w = exact.width().unwrap();
        prop_assert!(w <= heuristic_best(&g, SearchBudget::default()).width);
        prop_assert_eq!(verify_sequence(&g, exact.sequence()).unwrap().width, w);
    }

    #[test]
    fn cs_invariant_ignores_labels(n in 4usize..24, seed in any::<u64>(), pseed in any::<u64>()) {
        let g = random_prime_tww1(n, seed).unwrap();
        let h = g.relabel(&common::random_permutation(n, pseed));
        let s = cs_invariant(&g);
        prop_assert!(!s.is_failure());
        prop_assert_eq!(s, cs_invariant(&h));
    }

    #[test]
    fn canonical_form_ignores_labels(
        n in 2usize..40,
        seed in any::<u64>(),
        pseed in any::<u64>(),
        colors in proptest::collection::vec(0u64..3, 40),
    ) {
        let g = random_tww1(n, seed).unwrap().with_colors(colors[..n].to_vec()).unwrap();
        let h = g.relabel(&common::random_permutation(n, pseed));
        let (cg, ch) = (canonical_form(&g).unwrap(), canonical_form(&h).unwrap());
        prop_assert_eq!(&cg.encoding, &ch.encoding);
        prop_assert_eq!(cg.canonical_graph(&g), ch.canonical_graph(&h));
    }

    #[test]
    fn twin_classes_are_cliques_or_independent(g in graph(9)) {
        let classes = twins_partition(&g);
        let mut seen: Vec<Vertex> = classes.iter().flatten().copied().collect();
        seen.sort_unstable();
        prop_assert_eq!(seen, g.vertices().collect::<Vec<_>>());
        for class in &classes {
            let pairs: Vec<bool> = class
                .iter()
                .enumerate()
                .flat_map(|(i, &u)| class[i + 1..].iter().map(move |&v| (u, v)))
                .map(|(u, v)| g.has_edge(u, v))
                .collect();
            prop_assert!(pairs.iter().all(|&e| e) || pairs.iter().all(|&e| !e));
            for &u in class {
                for &v in class {
                    let outside = |x: Vertex| g.vertices().filter(|&w| w != u && w != v && g.has_edge(x, w)).collect::<Vec<_>>();
                    prop_assert_eq!(outside(u), outside(v));
                }
            }
        }
    }

    #[test]
    fn decomposition_nodes_satisfy_the_trichotomy(g in graph(9)) {
        let tree = mod_tree(&g);
        prop_assert_eq!(&tree.module, &g.vertices().collect::<Vec<_>>());
        check_gallai(&g, &tree)?;
    }

    #[test]
    fn worklist_refinement_matches_generic_one_wl(g in colored_graph(12)) {
        prop_assert_eq!(color_refinement(&g).partition(), wl_refine(&g, 1).unwrap().partition());
    }

    #[test]
    fn isomorphic_inputs_are_never_distinguished((g, perm) in with_perm(colored_graph(7))) {
        let h = g.relabel(&perm);
        for k in 1..=2 {
            prop_assert!(!wl_distinguish(&g, &h, k).unwrap().distinguished());
        }
        let map = find_isomorphism(&g, &h).unwrap();
        prop_assert!(common::is_isomorphism(&g, &h, &map));
    }

    #[test]
    fn isomorphism_oracles_agree(g in colored_graph(7), h in colored_graph(7)) {
        let lib = find_isomorphism(&g, &h);
        let brute = common::brute_isomorphism(&g, &h);
        prop_assert_eq!(lib.is_some(), brute.is_some());
        prop_assert_eq!(common::refined_isomorphism(&g, &h).is_some(), brute.is_some());
        if let Some(map) = lib {
            prop_assert!(common::is_isomorphism(&g, &h, &map));
        }
    }

    #[test]
    fn higher_dimensions_refine_lower_ones(g in graph(6), h in graph(6)) {
        let d: Vec<bool> = (1..=3).map(|k| wl_distinguish(&g, &h, k).unwrap().distinguished()).collect();
        prop_assert!(!d[0] || d[1]);
        prop_assert!(!d[1] || d[2]);
    }

    #[test]
    fn chain_graph_invariants(a in 1usize..8, b in 1usize..8, density in 0.0f64..1.0, seed in any::<u64>()) {
        let cg = random_chain_graph(a, b, density, seed).unwrap();
        let view = cg.view();
        prop_assert!(is_partial_half_graph(&view).is_embedding());
        prop_assert!(common::brute_partial_half_graph(&cg.graph, &cg.left, &cg.right));
        let t = max_induced_half_graph(&view).unwrap().t;
        prop_assert_eq!(t, common::brute_max_half_graph(&cg.graph, &cg.left, &cg.right));
        prop_assert_eq!(t, reduced_rank(&view));
        let rank = gf2_rank(&Gf2Matrix::from_view(&view));
        prop_assert_eq!(rank, common::cut_rank(&cg.graph, &cg.left, &cg.right));
        prop_assert_eq!(rank, t);
        let m = max_matching(&view).len();
        prop_assert_eq!(m, common::brute_max_matching(&cg.graph, &cg.left, &cg.right));
        let bic = max_balanced_biclique_chain(&view).unwrap();
        prop_assert_eq!(bic.t, common::brute_max_biclique(&cg.graph, &cg.left, &cg.right));
        if m >= 1 {
            prop_assert!(bic.t >= m.div_ceil(2));
        }
    }

    #[test]
    fn half_graph_check_matches_2k2_test(g in graph(9), split in 1usize..8) {
        let split = split.min(g.n().saturating_sub(1)).max(1).min(g.n());
        let left: Vec<Vertex> = (0..split).collect();
        let right: Vec<Vertex> = (split..g.n()).collect();
        let view = BipartiteView::new(&g, &left, &right).unwrap();
        prop_assert_eq!(
            is_partial_half_graph(&view).is_embedding(),
            common::brute_partial_half_graph(&g, &left, &right)
        );
    }

    #[test]
    fn graph_text_round_trips(g in colored_graph(12)) {
        prop_assert_eq!(parse_graph(&render_graph(&g)).unwrap(), g);
    }

    #[test]
    fn sequence_file_round_trips(g in graph(9), choices in proptest::collection::vec((0usize..64, 0usize..64), 8)) {
        let seq = random_sequence(&g, &choices);
        let (h, s) = parse_sequence_file(&render_sequence_file(&g, &seq)).unwrap();
        prop_assert_eq!(h, g);
        prop_assert_eq!(s, seq);
    }

    #[test]
    fn bundles_round_trip(g in colored_graph(10), h in colored_graph(10)) {
        let dir = tempfile::tempdir().unwrap();
        let bundle = Bundle {
            label: "case".into(),
            graphs: vec![("g".into(), g.clone()), ("h".into(), h.clone())],
            params: serde_json::json!({ "seed": 7 }),
        };
        let path = write_bundle(dir.path(), ExperimentName::Lemma21Suite, &bundle).unwrap();
        let read = |name: &str| parse_graph(&std::fs::read_to_string(path.join(name)).unwrap()).unwrap();
        prop_assert_eq!(read("g.graph"), g);
        prop_assert_eq!(read("h.graph"), h);
        let params: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(path.join("params.json")).unwrap()).unwrap();
        prop_assert_eq!(params["seed"].as_u64(), Some(7));
    }
}

/// The merges of `seq` as pairs of original vertices, one from each part.
fn vertex_pairs(g: &ColoredGraph, seq: &ContractionSequence) -> Vec<(Vertex, Vertex)> {
    let mut out = Vec::new();
    let mut t = Trigraph::from_graph(g);
    for &(a, b) in seq.merges() {
        out.push((t.members(a).unwrap()[0], t.members(b).unwrap()[0]));
        t.merge(a, b).unwrap();
    }
    out
}
