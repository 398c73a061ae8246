//! Dispatch from a parsed objective to the matching solver.

use crate::buchi_cobuchi::{
    buchi_conj, buchi_disj_objective, buchi_disj_query, cobuchi_conj, cobuchi_disj_objective,
    cobuchi_disj_query, one_pair_streett_disj, singleton_cobuchi_graph, DisjMode,
};
use crate::error::{Error, Result};
use crate::mdp::Mdp;
use crate::objective::{Kind, Mode, ObjectiveSpec};
use crate::rabin::rabin_as;
use crate::reach::{as_reach_disj_objective, as_reach_disj_query, as_reach_single};
use crate::safety::{safety_conj, safety_disj_objective_graph, safety_disj_query};
use crate::streett::{streett_auto, streett_basic, streett_dense, streett_impr, streett_sparse};
use crate::vertex_set::VertexSet;

/// Algorithm choice for Streett objectives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StreettAlgo {
    Basic,
    Impr,
    Dense,
    Sparse,
    #[default]
    Auto,
}

impl StreettAlgo {
    pub fn parse(s: &str) -> Option<StreettAlgo> {
        Some(match s {
            "basic" => StreettAlgo::Basic,
            "impr" => StreettAlgo::Impr,
            "dense" => StreettAlgo::Dense,
            "sparse" => StreettAlgo::Sparse,
            "auto" => StreettAlgo::Auto,
            _ => return None,
        })
    }

    pub fn as_str(self) -> &'static str {
        match self {
            StreettAlgo::Basic => "basic",
            StreettAlgo::Impr => "impr",
            StreettAlgo::Dense => "dense",
            StreettAlgo::Sparse => "sparse",
            StreettAlgo::Auto => "auto",
        }
    }
}

/// Options steering [`solve`].
#[derive(Debug, Clone, Copy, Default)]
pub struct SolveOptions {
    pub algo: StreettAlgo,
    /// Use the linear singleton-coBüchi fast path (graphs with singleton
    /// target sets only).
    pub singleton: bool,
}

/// Computes the almost-sure winning set of the objective, or reports the
/// combination as unsupported (conjunctive reachability; disjunctive safety
/// objectives on proper MDPs).
pub fn solve(mdp: &Mdp, objective: &ObjectiveSpec, opts: SolveOptions) -> Result<VertexSet> {
    let sets = &objective.sets;
    let pairs = &objective.pairs;
    match objective.kind {
        Kind::Reach => match objective.mode {
            Mode::Single => Ok(as_reach_single(mdp, &sets[0])),
            Mode::DisjObjective => Ok(as_reach_disj_objective(mdp, sets)),
            Mode::DisjQuery => Ok(as_reach_disj_query(mdp, sets)),
            Mode::ConjObjective | Mode::ConjQuery => Err(Error::Unsupported(
                "conjunctive reachability is not solvable here (NP-/PSPACE-complete)".into(),
            )),
        },
        Kind::Safety => match objective.mode {
            Mode::Single | Mode::ConjObjective | Mode::ConjQuery => Ok(safety_conj(mdp, sets)),
            Mode::DisjQuery => Ok(safety_disj_query(mdp, sets)),
            Mode::DisjObjective => safety_disj_objective_graph(mdp, sets),
        },
        Kind::Buchi => match objective.mode {
            Mode::Single | Mode::DisjObjective => Ok(buchi_disj_objective(mdp, sets)),
            Mode::DisjQuery => Ok(buchi_disj_query(mdp, sets)),
            Mode::ConjObjective | Mode::ConjQuery => Ok(buchi_conj(mdp, sets)),
        },
        Kind::CoBuchi => {
            if opts.singleton {
                return singleton_cobuchi_graph(mdp, sets);
            }
            match objective.mode {
                Mode::Single | Mode::DisjObjective => Ok(cobuchi_disj_objective(mdp, sets)),
                Mode::DisjQuery => Ok(cobuchi_disj_query(mdp, sets)),
                Mode::ConjObjective | Mode::ConjQuery => Ok(cobuchi_conj(mdp, sets)),
            }
        }
        Kind::Streett => match objective.mode {
            Mode::Single | Mode::ConjObjective | Mode::ConjQuery => Ok(match opts.algo {
                StreettAlgo::Basic => streett_basic(mdp, pairs),
                StreettAlgo::Impr => streett_impr(mdp, pairs),
                StreettAlgo::Dense => streett_dense(mdp, pairs),
                StreettAlgo::Sparse => streett_sparse(mdp, pairs),
                StreettAlgo::Auto => streett_auto(mdp, pairs),
            }),
            Mode::DisjObjective => Ok(one_pair_streett_disj(mdp, pairs, DisjMode::Objective)),
            Mode::DisjQuery => Ok(one_pair_streett_disj(mdp, pairs, DisjMode::Query)),
        },
        Kind::Rabin => match objective.mode {
            Mode::Single | Mode::DisjObjective => Ok(rabin_as(mdp, pairs)),
            Mode::DisjQuery => {
                let mut w = VertexSet::empty(mdp.vertex_count());
                for p in pairs {
                    w.union_with(&rabin_as(mdp, std::slice::from_ref(p)));
                }
                Ok(w)
            }
            Mode::ConjObjective | Mode::ConjQuery => Err(Error::Unsupported(
                "conjunctive Rabin objectives have no solver here".into(),
            )),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mdp::testutil::*;
    use crate::objective::Pair;

    #[test]
    fn streett_algo_selection_is_consistent() {
        let m = f2();
        let pairs = vec![Pair {
            l: VertexSet::from_iter(2, [1]),
            u: VertexSet::empty(2),
        }];
        let spec = ObjectiveSpec::with_pairs(Kind::Streett, Mode::Single, pairs).unwrap();
        let mut results = Vec::new();
        for algo in [
            StreettAlgo::Basic,
            StreettAlgo::Impr,
            StreettAlgo::Dense,
            StreettAlgo::Sparse,
            StreettAlgo::Auto,
        ] {
            let opts = SolveOptions {
                algo,
                singleton: false,
            };
            results.push(solve(&m, &spec, opts).unwrap().to_vec());
        }
        assert!(results.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn unsupported_combinations_are_rejected() {
        let m = f3();
        let conj_reach = ObjectiveSpec::with_sets(
            Kind::Reach,
            Mode::ConjObjective,
            vec![VertexSet::from_iter(3, [1]), VertexSet::from_iter(3, [2])],
        )
        .unwrap();
        assert!(matches!(
            solve(&m, &conj_reach, SolveOptions::default()),
            Err(Error::Unsupported(_))
        ));

        let disj_safety = ObjectiveSpec::with_sets(
            Kind::Safety,
            Mode::DisjObjective,
            vec![VertexSet::from_iter(3, [1]), VertexSet::from_iter(3, [2])],
        )
        .unwrap();
        assert!(matches!(
            solve(&m, &disj_safety, SolveOptions::default()),
            Err(Error::Unsupported(_))
        ));
    }
}
