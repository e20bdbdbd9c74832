use hvlab::macaulay::{binomial, macaulay_next, macaulay_prev, macaulay_rep, shifted_value};
use hvlab::prover::{diagram_candidates, enumerate_diagrams};
use hvlab::sequences::{first_macaulay_violation, is_o_sequence, symmetric_candidate, HVector};
use proptest::prelude::*;

fn symmetric_top() -> impl Strategy<Value = HVector> {
    (prop_oneof![Just(4usize), Just(5)], 3u64..=30)
        .prop_flat_map(|(e, r)| (Just(e), Just(r), 1..=r * (r + 1) / 2))
        .prop_map(|(e, r, h2)| symmetric_candidate(e, r, h2).unwrap())
        .prop_filter("O-sequence", is_o_sequence)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn expansion_terms_are_decreasing(n in 1u64..1 << 40, d in 1usize..=12) {
        let rep = macaulay_rep(n, d).unwrap();
        let terms = rep.terms();
        prop_assert_eq!(terms[0].bottom, d);
        for w in terms.windows(2) {
            prop_assert!(w[0].top > w[1].top);
            prop_assert_eq!(w[0].bottom, w[1].bottom + 1);
        }
        prop_assert!(terms.last().unwrap().top >= terms.last().unwrap().bottom as u64);
        let total: u64 = terms.iter().map(|t| binomial(t.top, t.bottom as i64).unwrap()).sum();
        prop_assert_eq!(total, n);
        prop_assert_eq!(shifted_value(&rep, 1, 1).ok(), macaulay_next(n, d).ok());
    }

    /// `macaulay_prev(n, d)` is the least `m` whose degree-`(d-1)` bound reaches `n`.
    #[test]
    fn prev_is_least_predecessor(n in 1u64..100_000, d in 2usize..=8) {
        let m = macaulay_prev(n, d).unwrap();
        prop_assert!(macaulay_next(m, d - 1).unwrap() >= n);
        if m > 0 {
            prop_assert!(macaulay_next(m - 1, d - 1).unwrap() < n);
        }
    }

    #[test]
    fn diagrams_satisfy_invariants(top in symmetric_top()) {
        let all = enumerate_diagrams(&top).unwrap();
        let candidates = diagram_candidates(&top).unwrap();
        prop_assert!(all.windows(2).all(|w| w[0].mid < w[1].mid));
        for d in &all {
            d.validate(&top).unwrap();
            prop_assert!(candidates.contains(d));
        }
        let valid = candidates.iter().filter(|d| first_macaulay_violation(&d.bot).is_none()).count();
        prop_assert_eq!(valid, all.len());
    }

    #[test]
    fn hvector_text_round_trip(raw in prop::collection::vec(0u64..1000, 0..8)) {
        let mut entries = vec![1];
        entries.extend(raw);
        let h = HVector::new(entries).unwrap();
        let text = h.to_string();
        prop_assert_eq!(text.parse::<HVector>().unwrap(), h);
    }
}
