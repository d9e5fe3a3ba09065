mod common;

use bookram::books::has_mono_book;
use bookram::search::{
    decode_model, find_witness, ramsey_book, sat_export, Budget, SearchOptions, Status, WitnessOutcome,
    DEFAULT_CLAUSE_CAP,
};
use common::solve_dimacs;

fn dfs_sat(k: usize, n: usize, nv: usize, symmetry: bool) -> bool {
    let opts = SearchOptions {
        symmetry,
        split_depth: 0,
    };
    match find_witness(k, n, nv, Budget::unlimited(), opts).unwrap().outcome {
        WitnessOutcome::Found(col) => {
            assert!(!has_mono_book(&col, k, n));
            true
        }
        WitnessOutcome::NoneExists => false,
        WitnessOutcome::Inconclusive => unreachable!("unlimited budget"),
    }
}

#[test]
fn sat_and_dfs_agree_on_small_instances() {
    for k in 1..=2 {
        for n in 1..=2 {
            for nv in k + 1..=6 {
                let dfs = dfs_sat(k, n, nv, true);
                let cnf = sat_export(k, n, nv, DEFAULT_CLAUSE_CAP).unwrap();
                let model = solve_dimacs(&cnf);
                assert_eq!(model.is_some(), dfs, "k={k} n={n} N={nv}");
                if let Some(model) = model {
                    assert!(!has_mono_book(&decode_model(&model, nv), k, n));
                }
            }
        }
    }
}

#[test]
fn symmetry_pruning_keeps_verdicts() {
    for k in 1..=2 {
        for n in 1..=3 {
            for nv in k + 1..=6 {
                assert_eq!(dfs_sat(k, n, nv, true), dfs_sat(k, n, nv, false), "k={k} n={n} N={nv}");
            }
        }
    }
}

#[test]
fn no_witness_stays_no_witness() {
    for (k, n) in [(1, 1), (1, 2), (1, 3), (2, 1)] {
        let mut seen_none = false;
        for nv in k + 1..=7 {
            let sat = dfs_sat(k, n, nv, true);
            assert!(!(seen_none && sat), "k={k} n={n}: witness at N={nv} after none");
            seen_none |= !sat;
        }
    }
}

#[test]
fn exact_values() {
    for (k, n, r) in [(1, 1, 2), (1, 2, 3), (1, 3, 6), (2, 1, 6)] {
        let res = ramsey_book(k, n, Budget::unlimited(), SearchOptions::default()).unwrap();
        assert_eq!(res.status, Status::Exact);
        assert_eq!(res.value(), Some(r));
        assert_eq!(res.lower + 1, r);
        assert!(!has_mono_book(&res.witness, k, n));
    }
}

#[test]
fn split_search_agrees() {
    for split_depth in [1, 3, 6] {
        let opts = SearchOptions {
            symmetry: true,
            split_depth,
        };
        let res = ramsey_book(2, 1, Budget::unlimited(), opts).unwrap();
        assert_eq!(res.value(), Some(6));
    }
}

#[test]
fn budget_is_inconclusive_not_negative() {
    let budget = Budget {
        nodes: Some(5),
        seconds: None,
    };
    let res = ramsey_book(2, 2, budget, SearchOptions::default()).unwrap();
    assert_eq!(res.status, Status::Bounded);
    assert_eq!(res.upper, None);
    assert!(!has_mono_book(&res.witness, 2, 2));
}
