//! Safety winning sets: single objective, conjunctions (union reduction),
//! disjunctive queries, and the graph-only disjunctive objective.

use crate::attractor::random_attractor;
use crate::error::{Error, Result};
use crate::mdp::Mdp;
use crate::vertex_set::VertexSet;

/// Complement of the random attractor of the target set.
pub fn as_safety_single(mdp: &Mdp, t: &VertexSet) -> VertexSet {
    random_attractor(&mdp.view(), t).complement()
}

/// A conjunction of safety objectives equals safety of the union.
pub fn safety_conj(mdp: &Mdp, targets: &[VertexSet]) -> VertexSet {
    assert!(!targets.is_empty(), "at least one target set required");
    let mut union = VertexSet::empty(mdp.vertex_count());
    for t in targets {
        union.union_with(t);
    }
    as_safety_single(mdp, &union)
}

/// Union of the per-target winning sets, k attractor complements.
pub fn safety_disj_query(mdp: &Mdp, targets: &[VertexSet]) -> VertexSet {
    assert!(!targets.is_empty(), "at least one target set required");
    let mut winning = VertexSet::empty(mdp.vertex_count());
    for t in targets {
        winning.union_with(&as_safety_single(mdp, t));
    }
    winning
}

/// Disjunctive safety objective on a graph, where it coincides with the
/// disjunctive query. On MDPs the objective variant is PSPACE-complete and
/// is rejected rather than approximated.
pub fn safety_disj_objective_graph(graph: &Mdp, targets: &[VertexSet]) -> Result<VertexSet> {
    if !graph.is_graph() {
        return Err(Error::Unsupported(
            "disjunctive safety objectives are only solvable on graphs (no random vertices)"
                .into(),
        ));
    }
    Ok(safety_disj_query(graph, targets))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mdp::testutil::*;

    #[test]
    fn single_on_f2() {
        // from 0 the self-loop avoids vertex 1 forever
        let m = f2();
        let w = as_safety_single(&m, &VertexSet::from_iter(2, [1]));
        assert_eq!(w.to_vec(), vec![0]);
    }

    #[test]
    fn empty_target_wins_everywhere() {
        let m = f3();
        assert_eq!(as_safety_single(&m, &VertexSet::empty(3)).len(), 3);
    }

    #[test]
    fn single_on_f3() {
        let m = f3();
        let w = as_safety_single(&m, &VertexSet::from_iter(3, [2]));
        assert_eq!(w.to_vec(), vec![1]);
    }

    #[test]
    fn conj_unions_targets() {
        let m = f3();
        let w = safety_conj(
            &m,
            &[VertexSet::from_iter(3, [1]), VertexSet::from_iter(3, [2])],
        );
        assert!(w.is_empty());

        let t = VertexSet::from_iter(3, [2]);
        assert_eq!(
            safety_conj(&m, std::slice::from_ref(&t)).to_vec(),
            as_safety_single(&m, &t).to_vec()
        );
        assert_eq!(
            safety_conj(&m, &[VertexSet::empty(3), VertexSet::empty(3)]).len(),
            3
        );
    }

    #[test]
    fn disj_query_unions_winning_sets() {
        // from random vertex 0 each single target is hit with probability
        // 1/2, so 0 wins neither disjunct
        let m = f3();
        let w = safety_disj_query(
            &m,
            &[VertexSet::from_iter(3, [1]), VertexSet::from_iter(3, [2])],
        );
        assert_eq!(w.to_vec(), vec![1, 2]);
        assert_eq!(safety_disj_query(&m, &[VertexSet::empty(3)]).len(), 3);
    }

    #[test]
    fn graph_objective_on_self_loop() {
        let g = mdp(1, &[], &[(0, 0)]);
        let w = safety_disj_objective_graph(&g, &[VertexSet::from_iter(1, [0])]).unwrap();
        assert!(w.is_empty());
    }

    #[test]
    fn graph_objective_rejects_mdps() {
        let m = f3();
        assert!(matches!(
            safety_disj_objective_graph(&m, &[VertexSet::empty(3)]),
            Err(crate::error::Error::Unsupported(_))
        ));
    }
}
