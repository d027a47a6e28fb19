mod common;

use common::*;
use knight_surfaces::board::edge_count;
use knight_surfaces::search::{count_tours, find_tour, prove_nonexistence, search, SearchConfig};
use knight_surfaces::{classify, BoardSpec, Budget, ClassTarget, Mode, SearchOutcome, SearchProblem, Topology};

fn count(spec: BoardSpec, target: ClassTarget) -> u64 {
    match count_tours(&SearchProblem::new(spec, target, Mode::CountAll), Budget::default()).unwrap() {
        SearchOutcome::Exhausted(c) => c,
        other => panic!("{spec} {target}: {other}"),
    }
}

#[test]
fn edge_counts_match_naive_enumeration() {
    for t in TOPOLOGIES {
        for (m, n) in small_sizes(20) {
            let spec = BoardSpec::new(t, m, n).unwrap();
            assert_eq!(edge_count(spec), naive_edge_count(t, m, n), "{spec}");
        }
    }
    assert_eq!(naive_edge_count(Topology::Regular, 8, 8), 168);
}

#[test]
fn counts_match_naive_enumeration() {
    for t in TOPOLOGIES {
        for (m, n) in small_sizes(10) {
            let spec = BoardSpec::new(t, m, n).unwrap();
            for target in targets(t) {
                assert_eq!(count(spec, target), naive_count(t, m, n, target), "{spec} {target}");
            }
        }
    }
}

#[test]
fn existence_matches_naive_enumeration() {
    for t in TOPOLOGIES {
        for (m, n) in small_sizes(12) {
            let spec = BoardSpec::new(t, m, n).unwrap();
            for target in targets(t) {
                let expect = naive_count(t, m, n, target) > 0;
                let found = find_tour(&SearchProblem::new(spec, target, Mode::FindOne), Budget::default()).unwrap();
                assert_eq!(
                    matches!(found, SearchOutcome::Found(_)),
                    expect,
                    "{spec} {target}: {found}"
                );
                if let SearchOutcome::Found(tour) = found {
                    let cls = classify(spec, &tour);
                    if t.is_surface() {
                        assert!(knight_surfaces::lift::matches_target(spec, cls.unwrap(), target).unwrap());
                    }
                }
            }
        }
    }
}

// Closed tour counts on rectangular boards, up to rotation and reversal, as
// tabulated in the knight's tour enumeration literature.
#[test]
fn regular_counts_match_published_tables() {
    for (m, n, c) in [(3, 10, 16), (5, 6, 8), (3, 12, 176), (6, 6, 9862)] {
        assert_eq!(
            count(BoardSpec::regular(m, n).unwrap(), ClassTarget::Any),
            c,
            "R({m},{n})"
        );
    }
}

#[test]
fn small_exact_facts() {
    let c21 = BoardSpec::cylinder(2, 1).unwrap();
    assert_eq!(count(c21, ClassTarget::Any), 1);
    assert_eq!(count(c21, ClassTarget::Identity), 0);
    assert_eq!(edge_count(c21), 2);
    assert_eq!(edge_count(BoardSpec::torus(1, 1).unwrap()), 4);
    assert_eq!(edge_count(BoardSpec::regular(8, 8).unwrap()), 168);
}

#[test]
fn pruning_never_changes_a_verdict() {
    for t in TOPOLOGIES {
        for (m, n) in small_sizes(12) {
            let spec = BoardSpec::new(t, m, n).unwrap();
            for target in targets(t) {
                let p = SearchProblem::new(spec, target, Mode::ProveNone);
                let pruned = prove_nonexistence(&p, Budget::default()).unwrap();
                let (plain, _) = search(&p, Budget::default(), SearchConfig::unpruned(), &mut |_| true).unwrap();
                assert_eq!(
                    pruned == SearchOutcome::NoSolution,
                    plain == SearchOutcome::NoSolution,
                    "{spec} {target}"
                );
            }
        }
    }
}

#[test]
fn mode_mismatch_is_rejected() {
    let p = SearchProblem::new(BoardSpec::regular(6, 6).unwrap(), ClassTarget::Any, Mode::CountAll);
    assert!(find_tour(&p, Budget::default()).is_err());
}

#[test]
fn tiny_budget_gives_up_honestly() {
    let p = SearchProblem::new(BoardSpec::regular(8, 8).unwrap(), ClassTarget::Any, Mode::CountAll);
    assert!(matches!(
        count_tours(&p, Budget::new(100, 10_000)).unwrap(),
        SearchOutcome::BudgetExceeded { .. }
    ));
}

#[test]
fn regular_eight_by_eight_is_found_fast() {
    let p = SearchProblem::new(BoardSpec::regular(8, 8).unwrap(), ClassTarget::Any, Mode::FindOne);
    let t = find_tour(&p, Budget::new(50_000_000, 10_000)).unwrap();
    assert!(matches!(t, SearchOutcome::Found(_)));
}
