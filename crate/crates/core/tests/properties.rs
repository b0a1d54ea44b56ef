use std::collections::BTreeSet;
use std::sync::Arc;

use itertools::Itertools;
use proptest::prelude::*;
use xgraph_core::colimits::glue_into_cylinder;
use xgraph_core::enumerate::{connected_graphs_up_to, graphs_up_to, homomorphisms};
use xgraph_core::homotopy::{fold, is_stiff, relative_fold_sequence};
use xgraph_core::io::{graph_value, map_from_value, map_value, parse_graph, to_pretty};
use xgraph_core::lifting::{
    commuting_squares, fiber_fold_sequence, has_hep, has_rlp_against_unfolds, in_class_c, in_class_f,
    section_of,
};
use xgraph_core::{
    compose, glue, identity, is_isomorphic, is_x_equivalence, product, pushout, stiff_core,
    are_x_equivalent, find_lift, Graph, GraphMap, LiftingSquare, SizeGuard,
};

fn guard() -> SizeGuard {
    SizeGuard::unbounded()
}

/// A graph on `n` vertices from a bitmask over the pairs `i <= j`.
fn from_mask(n: usize, mask: u64) -> Graph {
    let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let edges = pairs
        .iter()
        .enumerate()
        .filter(|(k, _)| mask >> k & 1 == 1)
        .map(|(_, &(i, j))| (labels[i].clone(), labels[j].clone()))
        .collect::<Vec<_>>();
    Graph::new(labels, edges).unwrap()
}

fn small_graph(max: usize) -> impl Strategy<Value = Graph> {
    (1..=max, any::<u64>()).prop_map(|(n, mask)| from_mask(n, mask))
}

/// Isomorphism by trying every bijection.
fn brute_isomorphic(g: &Graph, h: &Graph) -> bool {
    let n = g.order();
    n == h.order()
        && g.edge_count() == h.edge_count()
        && (0..n).permutations(n).any(|p| {
            (0..n).all(|a| (0..n).all(|b| g.adjacent(a, b) == h.adjacent(p[a], p[b])))
        })
}

fn edge_set(g: &Graph) -> BTreeSet<(String, String)> {
    g.labeled_edges()
        .into_iter()
        .map(|(a, b)| (a.to_owned(), b.to_owned()))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn isomorphism_matches_bijection_search(g in small_graph(5), h in small_graph(5)) {
        let found = is_isomorphic(&g, &h);
        prop_assert_eq!(found.is_some(), brute_isomorphic(&g, &h));
        if let Some(f) = found {
            prop_assert!(f.is_isomorphism());
        }
    }

    #[test]
    fn product_is_commutative_up_to_iso(g in small_graph(3), h in small_graph(3)) {
        prop_assert!(is_isomorphic(&product(&g, &h), &product(&h, &g)).is_some());
    }

    #[test]
    fn product_is_associative_up_to_iso(
        g in small_graph(2), h in small_graph(2), k in small_graph(3),
    ) {
        let left = product(&product(&g, &h), &k);
        let right = product(&g, &product(&h, &k));
        prop_assert!(is_isomorphic(&left, &right).is_some());
    }

    #[test]
    fn product_edge_count(g in small_graph(4), h in small_graph(4)) {
        // Each edge of G×H is an unordered pair of ordered edge pairs.
        let directed = |x: &Graph| 2 * x.edge_count() - x.loop_count();
        let p = product(&g, &h);
        let arcs = directed(&g) * directed(&h);
        prop_assert_eq!(2 * p.edge_count() - p.loop_count(), arcs);
    }

    #[test]
    fn folding_keeps_equivalence_class(g in small_graph(5)) {
        let (core, seq) = stiff_core(&g);
        prop_assert!(seq.verify().is_ok());
        prop_assert!(is_stiff(&core));
        prop_assert_eq!(seq.end(), &core);
        let r = seq.retraction();
        let inc = seq.inclusion();
        prop_assert_eq!(compose(&r, &inc).unwrap(), identity(core.clone()));
    }

    #[test]
    fn glue_contains_base(g in small_graph(3), keep in any::<u8>()) {
        let sub: Vec<usize> = (0..g.order()).filter(|v| keep >> v & 1 == 1).collect();
        prop_assume!(!sub.is_empty());
        let a = Arc::new(g.induced_subgraph(&sub));
        let i = GraphMap::from_images(a, Arc::new(g.clone()), sub).unwrap();
        for n in 0..=2 {
            let (glued, j) = glue(&i, n).unwrap();
            prop_assert!(j.is_induced_inclusion());
            prop_assert_eq!(glued.order(), g.order() + i.domain().order() * n);
        }
    }

    #[test]
    fn graph_json_round_trip(g in small_graph(5)) {
        prop_assert_eq!(parse_graph(&to_pretty(&graph_value(&g))).unwrap(), g);
    }
}

#[test]
fn map_json_round_trip() {
    for g in graphs_up_to(3).unwrap() {
        let g = Arc::new(g);
        for f in homomorphisms(&g, &g, &guard()).unwrap() {
            assert_eq!(map_from_value(&map_value(&f)).unwrap(), f);
        }
    }
}

#[test]
fn pushout_is_universal() {
    // Spans A → C, A → B over small graphs; every cocone factors uniquely.
    let graphs: Vec<Arc<Graph>> = graphs_up_to(2).unwrap().into_iter().map(Arc::new).collect();
    let targets: Vec<Arc<Graph>> = graphs_up_to(2).unwrap().into_iter().map(Arc::new).collect();
    let mut cocones = 0;
    for a in graphs.iter().filter(|a| a.order() >= 1) {
        for (b, c) in graphs.iter().cartesian_product(&graphs) {
            for f in homomorphisms(a, c, &guard()).unwrap() {
                for i in homomorphisms(a, b, &guard()).unwrap() {
                    let po = pushout(&f, &i).unwrap();
                    assert_eq!(compose(&po.left_leg, &f).unwrap(), compose(&po.right_leg, &i).unwrap());
                    for z in &targets {
                        let us = homomorphisms(b, z, &guard()).unwrap();
                        let ws = homomorphisms(c, z, &guard()).unwrap();
                        for (u, w) in us.iter().cartesian_product(&ws) {
                            if compose(u, &i).unwrap() != compose(w, &f).unwrap() {
                                continue;
                            }
                            cocones += 1;
                            let m = po.mediate(u, w).unwrap();
                            assert_eq!(&compose(&m, &po.right_leg).unwrap(), u);
                            assert_eq!(&compose(&m, &po.left_leg).unwrap(), w);
                            let all = homomorphisms(&po.object, z, &guard()).unwrap();
                            let factoring = all
                                .iter()
                                .filter(|m| {
                                    &compose(m, &po.right_leg).unwrap() == u
                                        && &compose(m, &po.left_leg).unwrap() == w
                                })
                                .count();
                            assert_eq!(factoring, 1);
                        }
                    }
                }
            }
        }
    }
    assert!(cocones > 0);
}

#[test]
fn fold_maps_are_equivalences() {
    for g in graphs_up_to(4).unwrap() {
        for v in 0..g.order() {
            for w in 0..g.order() {
                if v == w || !g.neighborhood_within(v, w) {
                    continue;
                }
                let (folded, r) = fold(&g, g.label(v), g.label(w)).unwrap();
                assert_eq!(folded.order() + 1, g.order());
                assert!(is_x_equivalence(&r, &guard()).unwrap(), "{g} folding {v} to {w}");
            }
        }
    }
}

#[test]
fn equivalence_of_maps_implies_equivalence_of_graphs() {
    let graphs: Vec<Arc<Graph>> = connected_graphs_up_to(3).unwrap().into_iter().map(Arc::new).collect();
    for (g, h) in graphs.iter().cartesian_product(&graphs) {
        let maps = homomorphisms(g, h, &guard()).unwrap();
        let any_equivalence = maps.iter().any(|f| is_x_equivalence(f, &guard()).unwrap());
        if any_equivalence {
            assert!(are_x_equivalent(g, h), "{g} vs {h}");
        }
        // Conversely, equivalent graphs are joined by some equivalence.
        if are_x_equivalent(g, h) {
            assert!(any_equivalence, "{g} vs {h}");
        }
    }
}

#[test]
fn isomorphic_cores_for_every_fold_order() {
    // Two different first folds still reach isomorphic stiff cores.
    for g in graphs_up_to(4).unwrap() {
        let (core, _) = stiff_core(&g);
        for v in 0..g.order() {
            let Some(w) = (0..g.order()).find(|&w| w != v && g.neighborhood_within(v, w)) else {
                continue;
            };
            let (folded, _) = fold(&g, g.label(v), g.label(w)).unwrap();
            assert!(is_isomorphic(&stiff_core(&folded).0, &core).is_some());
        }
    }
}

/// Fibres over looped vertices are cliques of looped vertices and fibres
/// over edges are complete bipartite: the shape the lifting argument uses.
fn fibres_complete(p: &GraphMap) -> bool {
    let (x, y) = (p.domain(), p.codomain());
    (0..x.order()).all(|a| {
        (0..x.order()).all(|b| !y.adjacent(p.image(a), p.image(b)) || x.adjacent(a, b))
    })
}

#[test]
fn induced_inclusions_lift_against_acyclic_fibrations() {
    let graphs: Vec<Arc<Graph>> = connected_graphs_up_to(4).unwrap().into_iter().map(Arc::new).collect();
    let mut fibrations = 0;
    let mut squares = 0;
    let mut stuck = Vec::new();
    for (x, y) in graphs.iter().cartesian_product(&graphs) {
        if y.order() > 3 {
            continue;
        }
        for p in homomorphisms(x, y, &guard()).unwrap() {
            if !in_class_f(&p).unwrap() || !is_x_equivalence(&p, &guard()).unwrap() {
                continue;
            }
            fibrations += 1;
            let s = section_of(&p, &guard()).unwrap();
            assert_eq!(compose(&p, &s).unwrap(), identity(y.clone()));
            let seq = fiber_fold_sequence(&p).expect("fibres fold away");
            assert_eq!(seq.start(), x.as_ref());
            for b in &graphs {
                for keep in 1..(1usize << b.order()) - 1 {
                    let sub: Vec<usize> = (0..b.order()).filter(|v| keep >> v & 1 == 1).collect();
                    let a = Arc::new(b.induced_subgraph(&sub));
                    let i = GraphMap::from_images(a, b.clone(), sub).unwrap();
                    for sq in commuting_squares(&i, &p, &guard()).unwrap() {
                        squares += 1;
                        match find_lift(&sq, &guard()).unwrap() {
                            Some(lift) => {
                                assert_eq!(compose(&lift, &i).unwrap(), *sq.top());
                                assert_eq!(compose(&p, &lift).unwrap(), *sq.bottom());
                            }
                            None => stuck.push(p.clone()),
                        }
                    }
                }
            }
        }
    }
    stuck.dedup();
    println!("{fibrations} acyclic fibrations, {squares} squares, {} maps with a stuck square", stuck.len());
    assert!(fibrations > 0);
    // The lifting argument needs complete fibres; the closed form admits
    // every edge-surjective collapse onto a looped vertex, and those are
    // the only maps that get stuck.
    for p in &stuck {
        println!("  stuck: {} -> {}", p.domain(), p.codomain());
        assert!(!fibres_complete(p));
        assert_eq!(p.codomain(), &Graph::looped_vertex());
    }
    assert!(!stuck.is_empty());
}

#[test]
fn collapse_onto_looped_vertex_need_not_lift() {
    // X: 0 ~ 1, 0 ~ 2, 1 looped. X folds to a point and p lies in 𝓕,
    // but 2 has no looped neighbour.
    let x = Arc::new(Graph::new(["0", "1", "2"], [("0", "1"), ("0", "2"), ("1", "1")]).unwrap());
    let point = Arc::new(Graph::looped_vertex());
    let p = GraphMap::from_images(x.clone(), point.clone(), vec![0; 3]).unwrap();
    assert!(in_class_f(&p).unwrap());
    assert!(has_rlp_against_unfolds(&p, 4).unwrap());
    assert!(is_x_equivalence(&p, &guard()).unwrap());

    let b = Arc::new(Graph::new(["0", "1"], [("0", "0"), ("0", "1")]).unwrap());
    let a = Arc::new(b.induced_subgraph(&[1]));
    let i = GraphMap::from_images(a.clone(), b.clone(), vec![1]).unwrap();
    let top = GraphMap::from_images(a, x.clone(), vec![2]).unwrap();
    let bottom = GraphMap::from_images(b.clone(), point, vec![0, 0]).unwrap();
    let sq = LiftingSquare::new(i.clone(), top.clone(), bottom, p).unwrap();
    assert_eq!(find_lift(&sq, &guard()).unwrap(), None);
    let extensions = homomorphisms(&b, &x, &guard())
        .unwrap()
        .into_iter()
        .filter(|m| compose(m, &i).unwrap() == top)
        .count();
    assert_eq!(extensions, 0);
}

#[test]
fn class_c_probes() {
    // Collapsing a looped clique, and collapsing a looped edge.
    let looped_k3 = Arc::new(
        Graph::new(["0", "1", "2"], [("0", "0"), ("0", "1"), ("0", "2"), ("1", "2")]).unwrap(),
    );
    let looped_edge = Arc::new(Graph::new(["x", "y"], [("x", "x"), ("x", "y")]).unwrap());
    let point = Arc::new(Graph::looped_vertex());
    let probes: Vec<GraphMap> = [looped_k3, looped_edge]
        .into_iter()
        .map(|x| GraphMap::from_images(x.clone(), point.clone(), vec![0; x.order()]).unwrap())
        .collect();
    for p in &probes {
        assert!(in_class_f(p).unwrap());
        assert!(is_x_equivalence(p, &guard()).unwrap());
    }
    let lifts_against = |i: &GraphMap, p: &GraphMap| {
        commuting_squares(i, p, &guard())
            .unwrap()
            .iter()
            .all(|sq| find_lift(sq, &guard()).unwrap().is_some())
    };

    let k2 = Arc::new(Graph::complete(2));
    let p3 = Arc::new(Graph::path(3));
    let induced = GraphMap::from_images(k2.clone(), p3.clone(), vec![0, 1]).unwrap();
    assert!(in_class_c(&induced));
    assert!(probes.iter().all(|p| lifts_against(&induced, p)));

    // A fold is not injective: the clique probe separates its preimages.
    let collapse = GraphMap::from_images(p3.clone(), k2, vec![0, 1, 0]).unwrap();
    assert!(!in_class_c(&collapse));
    assert!(!lifts_against(&collapse, &probes[0]));

    // P₃ inside K₃ misses the edge between its ends.
    let k3 = Arc::new(Graph::complete(3));
    let non_induced = GraphMap::from_images(p3, k3, vec![0, 1, 2]).unwrap();
    assert!(!in_class_c(&non_induced));
    assert!(!lifts_against(&non_induced, &probes[1]));
}

#[test]
fn hep_matches_exhaustive_retraction_search() {
    for b in connected_graphs_up_to(3).unwrap() {
        let b = Arc::new(b);
        for keep in 1..(1usize << b.order()) {
            let sub: Vec<usize> = (0..b.order()).filter(|v| keep >> v & 1 == 1).collect();
            let a = Arc::new(b.induced_subgraph(&sub));
            let i = GraphMap::from_images(a, b.clone(), sub).unwrap();
            let emb = glue_into_cylinder(&i, 1).unwrap();
            let retractions = homomorphisms(emb.codomain_arc(), emb.domain_arc(), &guard())
                .unwrap()
                .into_iter()
                .filter(|r| compose(r, &emb).unwrap() == identity(emb.domain_arc().clone()))
                .count();
            assert_eq!(has_hep(&i, 1, &guard()).unwrap(), retractions > 0, "{b} with {keep:b}");
            if i.is_isomorphism() {
                assert!(retractions > 0);
            }
        }
    }
}

#[test]
fn relative_fold_sequences_are_valid() {
    for b in graphs_up_to(4).unwrap() {
        let b = Arc::new(b);
        for keep in 1..(1usize << b.order()) {
            let sub: Vec<usize> = (0..b.order()).filter(|v| keep >> v & 1 == 1).collect();
            let a = Arc::new(b.induced_subgraph(&sub));
            let i = GraphMap::from_images(a.clone(), b.clone(), sub.clone()).unwrap();
            if let Some(seq) = relative_fold_sequence(&i).unwrap() {
                seq.verify().unwrap();
                assert_eq!(seq.end().order(), a.order());
                let kept: BTreeSet<&str> = sub.iter().map(|&v| b.label(v)).collect();
                assert!(seq.steps().iter().all(|(v, _)| !kept.contains(v.as_str())));
                assert!(is_x_equivalence(&i, &guard()).unwrap());
            }
        }
    }
}

#[test]
fn edge_sets_survive_relabeling_round_trip() {
    let g = from_mask(4, 0b1011_0110);
    let doc = to_pretty(&graph_value(&g));
    assert_eq!(edge_set(&parse_graph(&doc).unwrap()), edge_set(&g));
}
