use proptest::prelude::*;

use fusionring::fixtures::{complete_corpus, full_corpus};
use fusionring::oracles::{cyclic_group_ring, so3_truncated};
use fusionring::{
    check_axioms, closure, grouplike_group, parse_spec, write_spec, Closure, RingElement,
};

fn element(rank: usize, coeffs: &[u8]) -> RingElement {
    RingElement::from_terms(
        coeffs
            .iter()
            .take(rank)
            .enumerate()
            .map(|(i, &c)| (i, c as i64)),
    )
}

proptest! {
    #[test]
    fn products_of_nonnegative_elements_are_nonnegative(
        which in 0usize..13,
        a in proptest::collection::vec(0u8..4, 8),
        b in proptest::collection::vec(0u8..4, 8),
    ) {
        let corpus = complete_corpus();
        let ring = &corpus[which % corpus.len()];
        let (x, y) = (element(ring.rank(), &a), element(ring.rank(), &b));
        let p = ring.multiply(&x, &y).unwrap();
        prop_assert!(p.is_nonnegative());
        // the degree map is multiplicative
        prop_assert_eq!(ring.degree(&p).unwrap(), ring.degree(&x).unwrap() * ring.degree(&y).unwrap());
    }

    #[test]
    fn closure_is_extensive_monotone_and_idempotent(
        which in 0usize..13,
        seed in proptest::collection::btree_set(0usize..8, 0..4),
        extra in 0usize..8,
    ) {
        let corpus = complete_corpus();
        let ring = &corpus[which % corpus.len()];
        let seed: Vec<usize> = seed.into_iter().filter(|&i| i < ring.rank()).collect();
        let Closure::Complete(small) = closure(ring, &seed, true) else { panic!("complete ring") };
        prop_assert!(seed.iter().all(|&i| small.contains(i)));
        let Closure::Complete(again) = closure(ring, &small.indices, true) else { panic!() };
        prop_assert_eq!(&again, &small);
        let mut bigger = seed.clone();
        bigger.push(extra % ring.rank());
        let Closure::Complete(large) = closure(ring, &bigger, true) else { panic!() };
        prop_assert!(small.is_subset_of(&large));
    }

    #[test]
    fn spec_round_trip(n in 1usize..10, top in 1u64..12) {
        for ring in [cyclic_group_ring(n), so3_truncated(2 * top + 1)] {
            let text = write_spec(&ring);
            let back = parse_spec(&text).unwrap();
            prop_assert_eq!(&back, &ring);
            prop_assert_eq!(write_spec(&back), text);
        }
    }
}

#[test]
fn oracle_rings_pass_the_checker() {
    for ring in complete_corpus() {
        let report = check_axioms(&ring);
        assert!(report.all_pass_no_skips(), "{}", ring.name());
        assert_eq!(report, check_axioms(&ring), "checker is deterministic");
    }
}

#[test]
fn partial_rings_report_skips_and_no_failures() {
    for ring in full_corpus().into_iter().filter(|r| r.is_partial()) {
        let report = check_axioms(&ring);
        assert!(
            !report.has_failures(),
            "{}: {:?}",
            ring.name(),
            report.failures().collect::<Vec<_>>()
        );
        assert!(report.skipped() > 0, "{}", ring.name());
    }
}

#[test]
fn grouplike_orders_divide_group_order() {
    for ring in complete_corpus() {
        let g = grouplike_group(&ring).unwrap();
        assert!(g.is_closed_and_associative());
        for &o in &g.orders {
            assert_eq!(g.order() as u64 % o, 0, "{}", ring.name());
        }
    }
}
