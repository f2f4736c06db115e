mod common;

use common::*;
use proptest::prelude::*;
use zigzag_core::automata::Side;
use zigzag_core::quantale::{canonical_upset, quantale_distance, residual};
use zigzag_core::{Sign, UpSet, Word};

fn word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(
        prop_oneof![Just(Sign::Plus), Just(Sign::Minus)],
        0..=max_len,
    )
    .prop_map(Word::new)
}

fn upset(max_len: usize) -> impl Strategy<Value = UpSet> {
    prop::collection::vec(word(max_len), 0..=4).prop_map(UpSet::from_words)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn canonical_form_ignores_order_and_repeats(mut ws in prop::collection::vec(word(4), 0..6)) {
        let a = canonical_upset(ws.clone());
        ws.reverse();
        ws.extend(ws.clone());
        prop_assert_eq!(canonical_upset(ws), a.clone());
        prop_assert_eq!(canonical_upset(a.generators().to_vec()), a);
    }

    #[test]
    fn generators_form_an_antichain(x in upset(5)) {
        let g = x.generators();
        for a in g {
            for b in g {
                prop_assert!(a == b || !is_sub(a, b));
            }
        }
    }

    #[test]
    fn leq_is_reverse_inclusion(x in upset(3), y in upset(3)) {
        let by_words = words_up_to(6).iter().all(|v| !member(y.generators(), v) || member(x.generators(), v));
        prop_assert_eq!(x.leq(&y), by_words);
    }

    #[test]
    fn display_round_trips(x in upset(4)) {
        let shown = x.to_string();
        prop_assert_eq!(shown.parse::<UpSet>().unwrap(), x);
    }

    #[test]
    fn word_involution_reverses_concatenation(u in word(6), v in word(6)) {
        prop_assert_eq!(u.concat(&v).involute(), v.involute().concat(&u.involute()));
        prop_assert_eq!(u.involute().involute(), u.clone());
        prop_assert_eq!(u.involute(), reverse_flip(&u));
    }

    #[test]
    fn subword_order_matches_oracle(u in word(6), v in word(7)) {
        prop_assert_eq!(u.is_subword_of(&v), is_sub(&u, &v));
    }

    #[test]
    fn closure_is_a_closure(x in upset(4), y in upset(4)) {
        let c = x.macneille_closure();
        prop_assert!(c.leq(&x));
        prop_assert_eq!(c.macneille_closure(), c.clone());
        if x.leq(&y) {
            prop_assert!(c.leq(&y.macneille_closure()));
        }
        for v in words_up_to(6) {
            prop_assert_eq!(c.contains(&v), closure_member(x.generators(), &v));
        }
    }

    #[test]
    fn residual_is_the_largest_quotient(v in upset(3), g in upset(2)) {
        let left = residual(&v, &g, Side::Left);
        let right = residual(&v, &g, Side::Right);
        for w in words_up_to(4) {
            let left_ok = words_up_to(3).iter().filter(|x| member(g.generators(), x))
                .all(|x| member(v.generators(), &w.concat(x)));
            let right_ok = words_up_to(3).iter().filter(|x| member(g.generators(), x))
                .all(|x| member(v.generators(), &x.concat(&w)));
            prop_assert_eq!(left.contains(&w), left_ok, "left at {}", w);
            prop_assert_eq!(right.contains(&w), right_ok, "right at {}", w);
        }
        prop_assert!(v.leq(&left.oplus(&g)));
        prop_assert!(v.leq(&g.oplus(&right)));
    }

    #[test]
    fn quantale_distance_set_semantics(p in upset(3), q in upset(3)) {
        let d = quantale_distance(&p, &q);
        for w in words_up_to(4) {
            let fwd = words_up_to(3).iter().filter(|x| member(p.generators(), x))
                .all(|x| member(q.generators(), &x.concat(&w)));
            let bwd = words_up_to(3).iter().filter(|x| member(q.generators(), x))
                .all(|x| member(p.generators(), &x.concat(&reverse_flip(&w))));
            prop_assert_eq!(d.contains(&w), fwd && bwd, "at {}", w);
        }
        prop_assert_eq!(quantale_distance(&q, &p), d.involute());
        prop_assert_eq!(d.is_zero(), p == q);
    }
}
