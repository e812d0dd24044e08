//! Property checks of the solvers against the brute-force oracle on one graph.
//! Backs the CLI's `verify` command.

use std::collections::BTreeMap;

use crate::bound::lower_bound;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph};
use crate::imposition::{impose_all, ImpositionState};
use crate::mst::{constrained_mst, minimum_spanning_tree, ImposedSet, SpanningTree};
use crate::oracle::{EnumerationBudget, TreeCatalog};
use crate::tree_analysis::{
    check_cut_optimality, check_path_optimality, replacement_table, ExtCost, Replacement,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub budget: EnumerationBudget,
    /// Largest imposed set tried by the subset-based properties.
    pub max_subset: usize,
    /// Longest imposition sequence tried by the monotonicity property.
    pub max_sequence: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            budget: EnumerationBudget::default(),
            max_subset: 3,
            max_sequence: 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyOutcome {
    pub name: &'static str,
    pub checks: usize,
    pub failures: usize,
    /// Description of the first failure.
    pub first_failure: Option<String>,
}

impl PropertyOutcome {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            checks: 0,
            failures: 0,
            first_failure: None,
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

pub const PROPERTIES: [&str; 8] = [
    "mst_optimal",
    "optimality_equivalence",
    "replacement_tightness",
    "constrained_agreement",
    "swap_contraction_agreement",
    "bound_soundness",
    "monotonicity",
    "infinite_case",
];

/// Runs every property on `g`. Fails only when enumeration exceeds the budget.
pub fn verify_graph(g: &Graph, opts: &VerifyOptions) -> Result<Vec<PropertyOutcome>> {
    let catalog = TreeCatalog::build(g, opts.budget)?;
    let mut out: BTreeMap<&'static str, PropertyOutcome> = PROPERTIES
        .iter()
        .map(|&name| (name, PropertyOutcome::new(name)))
        .collect();
    let oracle_min = catalog.min_containing(&[]);
    let tree = match minimum_spanning_tree(g) {
        Ok(t) => t,
        Err(e) => {
            let p = out.get_mut("mst_optimal").expect("known property");
            p.check(e.is_infeasible() && oracle_min.is_none(), || {
                format!("solver error `{e}` but oracle found a tree")
            });
            return Ok(collect(out));
        }
    };
    let min_cost = match &oracle_min {
        Some(m) => m.cost,
        None => {
            let p = out.get_mut("mst_optimal").expect("known property");
            p.check(false, || "solver found a tree but oracle found none".into());
            return Ok(collect(out));
        }
    };

    {
        let p = out.get_mut("mst_optimal").expect("known property");
        p.check(tree.total_cost() == min_cost, || {
            format!("mst cost {} vs oracle {}", tree.total_cost(), min_cost)
        });
        p.check(check_path_optimality(g, &tree), || {
            "mst violates path optimality".into()
        });
        p.check(check_cut_optimality(g, &tree), || {
            "mst violates cut optimality".into()
        });
    }

    {
        let p = out
            .get_mut("optimality_equivalence")
            .expect("known property");
        for (cost, edges) in catalog.trees() {
            let t = SpanningTree::from_edges(g, edges.iter().copied())?;
            let path = check_path_optimality(g, &t);
            let cut = check_cut_optimality(g, &t);
            let optimal = cost == min_cost;
            p.check(path == cut && cut == optimal, || {
                format!("tree {edges:?}: path {path}, cut {cut}, optimal {optimal}")
            });
        }
    }

    let base_state = ImpositionState::new(tree.clone());
    let base_table = replacement_table(g, &tree, &ImposedSet::empty())?;
    let nontree: Vec<EdgeId> = base_table.keys().copied().collect();

    {
        let p = out
            .get_mut("replacement_tightness")
            .expect("known property");
        for (&e, r) in &base_table {
            let ExtCost::Finite(r_cost) = r.r_cost() else {
                p.check(false, || {
                    format!("edge {e} has infinite cost with nothing imposed")
                });
                continue;
            };
            let swapped = base_state.impose_edge(g, e).map(|s| s.total_cost());
            let brute = catalog.min_containing(&[e]).map(|m| m.cost);
            let expect = tree.total_cost() + r_cost;
            p.check(swapped == Ok(expect) && brute == Some(expect), || {
                format!("edge {e}: swap {swapped:?}, base+r_cost {expect}, oracle {brute:?}")
            });
        }
    }

    let all_edges: Vec<EdgeId> = g.edges().iter().map(|e| e.id).collect();
    for subset in subsets(&all_edges, opts.max_subset) {
        let oracle = catalog.min_containing(&subset).map(|m| m.cost);
        let imposed = ImposedSet::new(g, subset.iter().copied());
        {
            let p = out
                .get_mut("constrained_agreement")
                .expect("known property");
            let solved = imposed
                .as_ref()
                .map_err(Clone::clone)
                .and_then(|i| constrained_mst(g, i))
                .map(|t| t.total_cost());
            let ok = match (&solved, oracle) {
                (Ok(c), Some(o)) => *c == o,
                (Err(e), None) => e.is_infeasible(),
                _ => false,
            };
            p.check(ok, || {
                format!("I={subset:?}: solver {solved:?}, oracle {oracle:?}")
            });
        }
        let Ok(imposed) = imposed else { continue };
        let Some(exact) = oracle else { continue };

        {
            let p = out
                .get_mut("swap_contraction_agreement")
                .expect("known property");
            let forward = impose_all(g, &subset).map(|s| s.total_cost());
            let reversed: Vec<EdgeId> = subset.iter().rev().copied().collect();
            let backward = impose_all(g, &reversed).map(|s| s.total_cost());
            p.check(forward == Ok(exact) && backward == Ok(exact), || {
                format!("I={subset:?}: forward {forward:?}, backward {backward:?}, exact {exact}")
            });
        }

        if subset.iter().all(|&e| !tree.contains(e)) {
            let p = out.get_mut("bound_soundness").expect("known property");
            let report = lower_bound(g, &imposed, false)?;
            let ok = match report.lower_bound {
                ExtCost::Finite(lb) => lb <= exact && (subset.len() != 1 || lb == exact),
                ExtCost::Infinite => false,
            };
            p.check(ok, || {
                format!("I={subset:?}: bound {}, exact {exact}", report.lower_bound)
            });
        }
    }

    let mut walk = SequenceWalk {
        g,
        catalog: &catalog,
        base_table: &base_table,
        candidates: &nontree,
        max_depth: opts.max_sequence,
        monotonicity: out.remove("monotonicity").expect("known property"),
        infinite: out.remove("infinite_case").expect("known property"),
    };
    walk.visit(&base_state, &base_table, 0)?;
    out.insert("monotonicity", walk.monotonicity);
    out.insert("infinite_case", walk.infinite);

    Ok(collect(out))
}

fn collect(mut out: BTreeMap<&'static str, PropertyOutcome>) -> Vec<PropertyOutcome> {
    PROPERTIES
        .iter()
        .filter_map(|name| out.remove(name))
        .collect()
}

/// All subsets of `items` with at most `k` elements, in lexicographic order.
fn subsets(items: &[EdgeId], k: usize) -> Vec<Vec<EdgeId>> {
    fn rec(
        items: &[EdgeId],
        k: usize,
        start: usize,
        cur: &mut Vec<EdgeId>,
        out: &mut Vec<Vec<EdgeId>>,
    ) {
        out.push(cur.clone());
        if cur.len() == k {
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Depth-first walk over imposition sequences of distinct base nontree edges.
struct SequenceWalk<'a> {
    g: &'a Graph,
    catalog: &'a TreeCatalog,
    base_table: &'a BTreeMap<EdgeId, Replacement>,
    candidates: &'a [EdgeId],
    max_depth: usize,
    monotonicity: PropertyOutcome,
    infinite: PropertyOutcome,
}

impl SequenceWalk<'_> {
    fn visit(
        &mut self,
        state: &ImpositionState,
        table: &BTreeMap<EdgeId, Replacement>,
        depth: usize,
    ) -> Result<()> {
        for r in table.values().filter(|r| r.r_cost().is_infinite()) {
            let e = r.for_edge();
            let step = state.impose_edge(self.g, e);
            let mut with_e: Vec<EdgeId> = state.imposed().iter().collect();
            with_e.push(e);
            let oracle = self.catalog.min_containing(&with_e);
            let ok = matches!(&step, Err(err) if err.is_infeasible()) && oracle.is_none();
            self.infinite.check(ok, || {
                format!("edge {e} infinite under {with_e:?}: step {step:?}, oracle {oracle:?}")
            });
        }
        if depth == self.max_depth {
            return Ok(());
        }
        for &e in self.candidates {
            if state.imposed().contains(e) {
                continue;
            }
            let next = match state.impose_edge(self.g, e) {
                Ok(s) => s,
                Err(err) if err.is_infeasible() => continue,
                Err(err) => return Err(err),
            };
            let after = replacement_table(self.g, next.tree(), next.imposed())?;
            for (k, r) in &after {
                if next.imposed().contains(*k) {
                    continue;
                }
                for (label, reference) in [("previous", table), ("base", self.base_table)] {
                    if let Some(before) = reference.get(k) {
                        let (a, b) = (r.r_cost(), before.r_cost());
                        self.monotonicity.check(a >= b, || {
                            let seq: Vec<EdgeId> =
                                next.history().iter().map(|s| s.imposed).collect();
                            format!("after {seq:?}: edge {k} r_cost {a} < {label} {b}")
                        });
                    }
                }
            }
            self.visit(&next, &after, depth + 1)?;
        }
        Ok(())
    }
}

/// True when every property passed.
pub fn all_passed(outcomes: &[PropertyOutcome]) -> bool {
    outcomes.iter().all(PropertyOutcome::passed)
}

/// Builds the budget from `MST_IMPOSE_BUDGET` if set.
pub fn budget_from_env() -> Result<EnumerationBudget> {
    match std::env::var("MST_IMPOSE_BUDGET") {
        Ok(v) => {
            let cap: usize = v
                .trim()
                .parse()
                .map_err(|_| Error::Budget(format!("MST_IMPOSE_BUDGET: invalid value `{v}`")))?;
            EnumerationBudget::new(EnumerationBudget::DEFAULT_MAX_NODES, cap)
        }
        Err(_) => Ok(EnumerationBudget::default()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::g1;

    #[test]
    fn g1_passes_everything() {
        let outcomes = verify_graph(&g1(), &VerifyOptions::default()).unwrap();
        assert_eq!(outcomes.len(), PROPERTIES.len());
        for o in &outcomes {
            assert!(o.passed(), "{o:?}");
        }
        assert!(outcomes
            .iter()
            .all(|o| o.checks > 0 || o.name == "infinite_case"));
    }

    #[test]
    fn parallel_edges_exercise_infinite_case() {
        let g = Graph::new(3, [(0, 1, 1), (1, 2, 2), (0, 1, 4), (1, 2, 6)]).unwrap();
        let outcomes = verify_graph(&g, &VerifyOptions::default()).unwrap();
        let inf = outcomes.iter().find(|o| o.name == "infinite_case").unwrap();
        assert!(inf.checks > 0);
        assert!(all_passed(&outcomes), "{outcomes:?}");
    }

    #[test]
    fn disconnected_input() {
        let g = Graph::new(3, [(0, 1, 1)]).unwrap();
        let outcomes = verify_graph(&g, &VerifyOptions::default()).unwrap();
        assert!(all_passed(&outcomes));
        assert_eq!(outcomes[0].checks, 1);
    }

    #[test]
    fn subsets_enumerated() {
        let items: Vec<EdgeId> = (0..4).map(EdgeId).collect();
        assert_eq!(subsets(&items, 2).len(), 1 + 4 + 6);
        assert_eq!(subsets(&items, 0), vec![Vec::<EdgeId>::new()]);
    }
}
