use imposed_mst::{
    brute_min_tree, check_cut_optimality, check_path_optimality, constrained_mst, impose_all,
    lower_bound, minimum_spanning_tree, replacement, EdgeId, EnumerationBudget, ExtCost, Graph,
    ImposedSet, ImpositionState, TreeCatalog,
};
use proptest::prelude::*;

/// Connected multigraph: a random tree plus extra edges, small costs (ties and negatives).
fn connected_graph(max_nodes: usize) -> impl Strategy<Value = Graph> {
    (1..=max_nodes).prop_flat_map(|n| {
        let parents = proptest::collection::vec(any::<prop::sample::Index>(), n - 1);
        let extra = proptest::collection::vec((0..n, 0..n, -5i64..15), 0..8);
        let tree_costs = proptest::collection::vec(-5i64..15, n - 1);
        (parents, tree_costs, extra).prop_map(move |(parents, costs, extra)| {
            let mut edges: Vec<(usize, usize, i64)> = parents
                .iter()
                .zip(costs)
                .enumerate()
                .map(|(i, (p, c))| (i + 1, p.index(i + 1), c))
                .collect();
            edges.extend(extra.into_iter().filter(|(u, v, _)| u != v));
            // interleave tree and extra edges so ids are not grouped
            edges.reverse();
            Graph::new(n, edges).unwrap()
        })
    })
}

fn graph_with_subset(max_nodes: usize) -> impl Strategy<Value = (Graph, Vec<EdgeId>)> {
    connected_graph(max_nodes).prop_flat_map(|g| {
        let m = g.edge_count();
        let subset = proptest::collection::vec(any::<bool>(), m).prop_map(|mask| {
            mask.iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(i, _)| EdgeId(i))
                .collect()
        });
        (Just(g), subset)
    })
}

fn mirrored(g: &Graph) -> Graph {
    Graph::new(g.node_count(), g.edges().iter().map(|e| (e.v, e.u, e.cost))).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn mst_satisfies_both_optimality_conditions(g in connected_graph(8)) {
        let t = minimum_spanning_tree(&g).unwrap();
        prop_assert!(check_path_optimality(&g, &t));
        prop_assert!(check_cut_optimality(&g, &t));
        let oracle = brute_min_tree(&g, &[], EnumerationBudget::default()).unwrap().unwrap();
        prop_assert_eq!(t.total_cost(), oracle.cost);
    }

    #[test]
    fn constrained_matches_oracle((g, subset) in graph_with_subset(7)) {
        let oracle = brute_min_tree(&g, &subset, EnumerationBudget::default()).unwrap();
        match ImposedSet::new(&g, subset.iter().copied()) {
            Ok(imposed) => {
                let t = constrained_mst(&g, &imposed).unwrap();
                prop_assert!(imposed.iter().all(|e| t.contains(e)));
                prop_assert_eq!(Some(t.total_cost()), oracle.map(|m| m.cost));
            }
            Err(e) => {
                prop_assert!(e.is_infeasible());
                prop_assert_eq!(oracle, None);
            }
        }
    }

    #[test]
    fn catalog_agrees_with_direct_search((g, subset) in graph_with_subset(6)) {
        let b = EnumerationBudget::default();
        let catalog = TreeCatalog::build(&g, b).unwrap();
        prop_assert_eq!(catalog.min_containing(&subset), brute_min_tree(&g, &subset, b).unwrap());
    }

    #[test]
    fn constrained_cost_is_monotone_in_imposed_set((g, subset) in graph_with_subset(8)) {
        let Ok(full) = ImposedSet::new(&g, subset.iter().copied()) else { return Ok(()) };
        let full_cost = constrained_mst(&g, &full).unwrap().total_cost();
        let empty = constrained_mst(&g, &ImposedSet::empty()).unwrap().total_cost();
        prop_assert_eq!(empty, minimum_spanning_tree(&g).unwrap().total_cost());
        for drop in 0..subset.len() {
            let smaller: Vec<EdgeId> = subset.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &e)| e).collect();
            let part = ImposedSet::new(&g, smaller).unwrap();
            prop_assert!(constrained_mst(&g, &part).unwrap().total_cost() <= full_cost);
        }
    }

    #[test]
    fn replacement_ignores_edge_direction((g, subset) in graph_with_subset(8)) {
        let Ok(imposed) = ImposedSet::new(&g, subset.iter().copied()) else { return Ok(()) };
        let t = constrained_mst(&g, &imposed).unwrap();
        let flipped = mirrored(&g);
        let tf = constrained_mst(&flipped, &imposed).unwrap();
        prop_assert_eq!(t.edges(), tf.edges());
        for e in g.edges().iter().filter(|e| !t.contains(e.id)) {
            let a = replacement(&g, &t, &imposed, e.id).unwrap();
            let b = replacement(&flipped, &tf, &imposed, e.id).unwrap();
            prop_assert_eq!(a, b);
            if a.r_edge().is_some() {
                prop_assert!(a.r_cost() >= ExtCost::Finite(0));
                prop_assert!(!imposed.contains(a.r_edge().unwrap()));
            }
        }
    }

    #[test]
    fn imposition_steps_add_replacement_costs((g, subset) in graph_with_subset(8)) {
        let base = minimum_spanning_tree(&g).unwrap();
        let mut state = ImpositionState::new(base.clone());
        for &e in &subset {
            let r = if state.tree().contains(e) {
                None
            } else {
                Some(replacement(&g, state.tree(), state.imposed(), e).unwrap())
            };
            match state.impose_edge(&g, e) {
                Ok(next) => {
                    let delta = next.total_cost() - state.total_cost();
                    match r {
                        Some(r) => prop_assert_eq!(ExtCost::Finite(delta), r.r_cost()),
                        None => prop_assert_eq!(delta, 0),
                    }
                    prop_assert!(next.imposed().iter().all(|i| next.tree().contains(i)));
                    state = next;
                }
                Err(err) => {
                    prop_assert!(err.is_infeasible());
                    prop_assert!(r.unwrap().r_cost().is_infinite());
                    return Ok(());
                }
            }
        }
        prop_assert_eq!(state.history().len(), subset.len());
        prop_assert_eq!(state.replay(&g, &base), state.tree().clone());
        let all = impose_all(&g, &subset).unwrap();
        prop_assert_eq!(all, state);
    }

    #[test]
    fn adding_tree_edges_keeps_bound((g, subset) in graph_with_subset(8)) {
        let t = minimum_spanning_tree(&g).unwrap();
        let nontree: Vec<EdgeId> = subset.iter().copied().filter(|&e| !t.contains(e)).collect();
        let Ok(only) = ImposedSet::new(&g, nontree) else { return Ok(()) };
        let Ok(mixed) = ImposedSet::new(&g, only.iter().chain(t.edges().iter().copied().take(2))) else {
            return Ok(());
        };
        let a = lower_bound(&g, &only, true).unwrap();
        let b = lower_bound(&g, &mixed, true).unwrap();
        prop_assert_eq!(a.lower_bound, b.lower_bound);
        prop_assert!(a.gap.unwrap() >= 0);
        prop_assert!(b.gap.unwrap() >= 0);
        if only.len() == 1 {
            prop_assert_eq!(a.gap, Some(0));
        }
    }
}
