//! Almost-sure winning sets for Rabin objectives, O(k·MEC): each MEC is
//! classified per pair by removing the random attractor of U_i and looking
//! for a sub-MEC that still meets L_i.

use crate::attractor::random_attractor;
use crate::mec::mec_decomposition;
use crate::mdp::Mdp;
use crate::objective::Pair;
use crate::reach::as_reach_single;
use crate::vertex_set::VertexSet;

/// The winning set for the disjunction over the given Rabin pairs. A MEC is
/// winning as soon as one pair certifies a good end-component inside it;
/// whole winning MECs feed the final reachability, which reuses the cached
/// decomposition.
pub fn rabin_as(mdp: &Mdp, pairs: &[Pair]) -> VertexSet {
    assert!(!pairs.is_empty(), "at least one Rabin pair required");
    let n = mdp.vertex_count();
    let mut win = VertexSet::empty(n);

    'mecs: for mec in mdp.mec_analysis().decomposition.mecs() {
        for pair in pairs {
            if mec.is_disjoint_from(&pair.l) {
                continue;
            }
            let sub = mdp.restricted(mec.clone());
            let attr = random_attractor(&sub, &pair.u);
            let mut rest = mec.clone();
            rest.subtract(&attr);
            if rest.is_empty() {
                continue;
            }
            let inner = mec_decomposition(&mdp.restricted(rest));
            for candidate in inner.mecs() {
                if !candidate.is_disjoint_from(&pair.l) {
                    debug_assert!(certifies(mdp, candidate, pair));
                    win.union_with(mec);
                    continue 'mecs;
                }
            }
        }
    }
    as_reach_single(mdp, &win)
}

/// Debug certificate: the witnessing set is an end-component meeting L and
/// avoiding U.
#[cfg(debug_assertions)]
fn certifies(mdp: &Mdp, candidate: &VertexSet, pair: &Pair) -> bool {
    crate::mec::is_end_component(&mdp.view(), candidate)
        && !candidate.is_disjoint_from(&pair.l)
        && candidate.is_disjoint_from(&pair.u)
}

#[cfg(not(debug_assertions))]
fn certifies(_: &Mdp, _: &VertexSet, _: &Pair) -> bool {
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::buchi_cobuchi::cobuchi_disj_objective;
    use crate::mdp::testutil::*;

    fn pair(n: usize, l: &[usize], u: &[usize]) -> Pair {
        Pair {
            l: VertexSet::from_iter(n, l.iter().copied()),
            u: VertexSet::from_iter(n, u.iter().copied()),
        }
    }

    #[test]
    fn attractor_of_u_swallows_everything() {
        let m = f2();
        assert!(rabin_as(&m, &[pair(2, &[1], &[0])]).is_empty());
    }

    #[test]
    fn empty_u_wins() {
        let m = f2();
        assert_eq!(rabin_as(&m, &[pair(2, &[0], &[])]).to_vec(), vec![0, 1]);
    }

    #[test]
    fn cobuchi_encoding_matches_direct_solver() {
        let m = f2();
        let encoded = rabin_as(&m, &[pair(2, &[0, 1], &[1])]);
        let direct = cobuchi_disj_objective(&m, &[VertexSet::from_iter(2, [1])]);
        assert_eq!(encoded.to_vec(), direct.to_vec());
    }
}
