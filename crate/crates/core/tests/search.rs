use fusionring::fixtures::f21_ring;
use fusionring::oracles::cyclic_group_ring;
use fusionring::{
    check_axioms, enumerate_rings, theorem_verdict, write_spec, SearchError, SearchOptions,
};

fn run(degrees: &[u64]) -> Vec<fusionring::FusionRing> {
    enumerate_rings(degrees, &SearchOptions::default()).unwrap()
}

#[test]
fn groups_of_small_order() {
    let z2 = run(&[1, 1]);
    assert_eq!(z2.len(), 1);
    assert!(z2[0].is_isomorphic(&cyclic_group_ring(2)));
    // Z4 and Z2 x Z2
    let four = run(&[1, 1, 1, 1]);
    assert_eq!(four.len(), 2);
    assert_eq!(
        four.iter()
            .filter(|r| r.is_isomorphic(&cyclic_group_ring(4)))
            .count(),
        1
    );
    assert_eq!(run(&[1, 1, 1, 1, 1]).len(), 1);
    assert_eq!(run(&[1]).len(), 1);
}

#[test]
fn rank_five_with_degree_three_pair_contains_f21() {
    let found = run(&[1, 1, 1, 3, 3]);
    assert!(found.iter().any(|r| r.is_isomorphic(&f21_ring())));
}

#[test]
fn impossible_degree_patterns_yield_nothing() {
    assert!(run(&[1, 3]).is_empty());
    assert!(run(&[1, 3, 5]).is_empty());
    assert!(run(&[1, 3, 3, 5, 5]).is_empty());
}

#[test]
fn emitted_rings_never_give_an_obstruction() {
    for degrees in [
        &[1u64, 1, 1][..],
        &[1, 1, 1, 3],
        &[1, 1, 1, 3, 3],
        &[1, 1, 1, 1, 1, 1],
    ] {
        for ring in run(degrees) {
            assert!(check_axioms(&ring).all_pass_no_skips());
            let v = theorem_verdict(&ring).unwrap();
            assert!(!v.is_obstruction(), "{}: {v}", ring.name());
        }
    }
}

#[test]
fn input_validation() {
    let opts = SearchOptions::default();
    assert_eq!(
        enumerate_rings(&[1, 2], &opts).unwrap_err(),
        SearchError::EvenDegree(2)
    );
    assert_eq!(
        enumerate_rings(&[3, 3], &opts).unwrap_err(),
        SearchError::NoUnit
    );
    assert!(matches!(
        enumerate_rings(&[1; 7], &opts),
        Err(SearchError::RankTooLarge { rank: 7, bound: 6 })
    ));
    let even_ok = SearchOptions {
        odd_only: false,
        ..opts
    };
    assert_eq!(enumerate_rings(&[1, 1, 2], &even_ok).unwrap().len(), 1);
}

#[test]
fn output_is_independent_of_thread_count() {
    let render = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        pool.install(|| {
            run(&[1, 1, 1, 3, 3])
                .iter()
                .map(write_spec)
                .collect::<Vec<_>>()
        })
    };
    assert_eq!(render(1), render(4));
}
