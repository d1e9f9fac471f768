//! Randomized law checks for the interval carrier and the attachment frame.

use plf_core::attach::{lw_join, lw_meet, lw_shrink_witness, AttachmentSpec, LwElement};
use plf_core::rline::{
    io_completely_below, io_fill, io_heyting, io_interpolate, io_is_punctured, io_join, io_le,
    io_meet, io_pseudocomplement, pl_meet, IntervalOpen, Q, QBound,
};
use proptest::prelude::*;

fn arb_q() -> impl Strategy<Value = Q> {
    (-24i64..=24, 1i64..=8).prop_map(|(n, d)| Q::new(n, d))
}

fn arb_bound() -> impl Strategy<Value = QBound> {
    prop_oneof![
        8 => arb_q().prop_map(QBound::Fin),
        1 => Just(QBound::NegInf),
        1 => Just(QBound::PosInf),
    ]
}

fn arb_open() -> impl Strategy<Value = IntervalOpen> {
    proptest::collection::vec((arb_bound(), arb_bound()), 0..4)
        .prop_map(IntervalOpen::from_spans)
}

fn arb_unpunctured() -> impl Strategy<Value = IntervalOpen> {
    arb_open().prop_map(|u| io_fill(&u))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1024))]

    #[test]
    fn canonical_form_is_preserved(u in arb_open(), v in arb_open()) {
        for w in [io_join(&u, &v), io_meet(&u, &v), io_pseudocomplement(&u), io_heyting(&u, &v)] {
            for s in w.spans() {
                prop_assert!(s.lo < s.hi);
            }
            for pair in w.spans().windows(2) {
                prop_assert!(pair[0].hi <= pair[1].lo, "sorted and disjoint");
            }
        }
    }

    #[test]
    fn lattice_laws(u in arb_open(), v in arb_open(), w in arb_open()) {
        prop_assert_eq!(io_join(&u, &v), io_join(&v, &u));
        prop_assert_eq!(io_meet(&u, &v), io_meet(&v, &u));
        prop_assert_eq!(io_join(&io_join(&u, &v), &w), io_join(&u, &io_join(&v, &w)));
        prop_assert_eq!(io_meet(&u, &io_join(&u, &v)), u.clone(), "absorption");
        prop_assert_eq!(io_join(&u, &io_meet(&u, &v)), u.clone(), "absorption");
        prop_assert_eq!(
            io_meet(&u, &io_join(&v, &w)),
            io_join(&io_meet(&u, &v), &io_meet(&u, &w)),
            "distributivity"
        );
    }

    #[test]
    fn heyting_adjunction(u in arb_open(), v in arb_open(), w in arb_open()) {
        prop_assert_eq!(
            io_le(&w, &io_heyting(&u, &v)),
            io_le(&io_meet(&w, &u), &v)
        );
    }

    #[test]
    fn pseudocomplement_closure(u in arb_open()) {
        let star = io_pseudocomplement(&u);
        let star2 = io_pseudocomplement(&star);
        prop_assert!(io_meet(&u, &star).is_empty());
        prop_assert!(io_le(&u, &star2), "u ≤ u**");
        prop_assert_eq!(io_pseudocomplement(&star2), star, "u* = u***");
    }

    #[test]
    fn fill_nucleus_laws(u in arb_open(), v in arb_open()) {
        let fu = io_fill(&u);
        prop_assert!(io_le(&u, &fu));
        prop_assert_eq!(io_fill(&fu), fu.clone());
        if io_le(&u, &v) {
            prop_assert!(io_le(&io_fill(&u), &io_fill(&v)));
        }
        prop_assert_eq!(
            io_fill(&io_meet(&u, &v)),
            io_meet(&io_fill(&u), &io_fill(&v))
        );
        prop_assert!(!io_is_punctured(&fu));
    }

    #[test]
    fn completely_below_interpolates(u in arb_open(), v in arb_open()) {
        if io_completely_below(&u, &v) {
            let w = io_interpolate(&u, &v).expect("interpolant exists");
            prop_assert!(io_completely_below(&u, &w));
            prop_assert!(io_completely_below(&w, &v));
        }
    }

    #[test]
    fn pl_meet_preserves_unpuncturedness(u in arb_unpunctured(), v in arb_unpunctured()) {
        let m = pl_meet(&[u, v]).expect("inputs unpunctured");
        prop_assert!(!io_is_punctured(&m));
    }

    #[test]
    fn attachment_closure_invariant(
        bodies in proptest::collection::vec(arb_unpunctured(), 2),
        mask in 0usize..4,
    ) {
        let spec = AttachmentSpec::new(vec![Q::from_integer(0), Q::from_integer(50)]).unwrap();
        // Flag whatever filters actually contain each body, thinned by the
        // mask, so the elements are valid by construction.
        let mut elems = Vec::new();
        for (k, body) in bodies.iter().enumerate() {
            let flags: std::collections::BTreeSet<usize> = spec
                .flags_of(body)
                .into_iter()
                .filter(|i| (mask >> (k + i)) & 1 == 0)
                .collect();
            elems.push(LwElement::new(&spec, flags, body.clone()).unwrap());
        }
        let m = lw_meet(&spec, &elems[0], &elems[1]).expect("meet stays in the frame");
        let j = lw_join(&spec, &elems).expect("join stays in the frame");
        for e in [&m, &j] {
            for &i in &e.flags {
                prop_assert!(spec.filter(i).contains(&e.body));
            }
        }
        // Atomlessness witness on nonbottom results.
        if !j.is_bottom() {
            let w = lw_shrink_witness(&j).expect("shrink below nonbottom");
            prop_assert!(w.le(&j));
            prop_assert!(!w.is_bottom() && w != j);
        }
    }
}
