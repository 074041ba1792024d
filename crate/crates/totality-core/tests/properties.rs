use proptest::prelude::*;
use totality_core::*;

fn zinf() -> impl Strategy<Value = ZInf> {
    prop_oneof![4 => (-3i64..=3).prop_map(ZInf::Fin), 1 => Just(ZInf::Inf)]
}

fn weight() -> impl Strategy<Value = Weight> {
    proptest::collection::vec((0u32..4, zinf()), 0..4).prop_map(Weight::from_pairs)
}

fn term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![Just(Term::Param(1)), Just(Term::Param(2))];
    leaf.prop_recursive(5, 24, 2, |inner| {
        prop_oneof![
            (prop::sample::select(vec!["A", "B"]), inner.clone()).prop_map(|(c, t)| Term::constr(name(c), 1, t)),
            (prop::sample::select(vec!["A", "B"]), inner.clone()).prop_map(|(c, t)| Term::constr_dual(name(c), 1, t)),
            (prop::sample::select(vec!["D", "E"]), inner.clone()).prop_map(|(d, t)| Term::project(name(d), 0, t)),
            (prop::sample::select(vec!["D", "E"]), inner.clone())
                .prop_map(|(d, t)| Term::record(vec![(name(d), t)], 0)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::record(vec![(name("D"), a), (name("E"), b)], 0)),
            (weight(), inner.clone()).prop_map(|(w, t)| Term::approx(w, t)),
            inner.clone().prop_map(Term::daimon),
            inner.clone().prop_map(|t| Term::fun_app(name("f"), vec![t])),
        ]
    })
}

fn top_term() -> impl Strategy<Value = Term> {
    prop_oneof![3 => term(), 1 => (term(), term()).prop_map(|(a, b)| Term::sum([a, b]))]
}

proptest! {
    #[test]
    fn weight_addition_is_commutative(a in weight(), b in weight()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
    }

    #[test]
    fn weight_addition_is_associative(a in weight(), b in weight(), c in weight()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
    }

    #[test]
    fn zero_weight_is_neutral(a in weight()) {
        prop_assert_eq!(a.add(&Weight::zero()), a.clone());
    }

    #[test]
    fn weight_collapse_is_idempotent(a in weight(), b in 1u32..4) {
        let once = a.collapse(b);
        prop_assert_eq!(once.collapse(b), once.clone());
        for (_, v) in once.iter() {
            prop_assert!(v == ZInf::Inf || matches!(v, ZInf::Fin(x) if -i64::from(b) <= x && x < i64::from(b)));
        }
    }

    #[test]
    fn coefficient_order_reverses_the_natural_one(a in weight(), b in weight()) {
        prop_assert_eq!(a.coef_leq(&b), b.zi_leq(&a));
        prop_assert!(a.coef_leq(&a));
    }

    #[test]
    fn decrease_is_negative_with_parity(a in weight(), odd in any::<bool>()) {
        if let Some(p) = a.decreasing_priority(odd) {
            prop_assert_eq!(p % 2 == 1, odd);
            prop_assert!(a.get(p).is_negative());
            prop_assert!(a.iter().all(|(q, v)| q <= p || !v.is_negative()));
        }
    }

    #[test]
    fn normal_forms_are_normal_and_stable(t in top_term()) {
        let n = nf(&t);
        prop_assert!(is_normal(&n), "{}", n);
        prop_assert_eq!(nf(&n), n);
    }

    #[test]
    fn notation_round_trips(t in top_term()) {
        let n = nf(&t);
        let back = parse_term(&n.to_string()).unwrap();
        prop_assert_eq!(nf(&back), n);
    }

    #[test]
    fn order_is_reflexive(t in term()) {
        let n = nf(&t);
        for s in n.summands() {
            prop_assert!(sleq(s, s), "{}", s);
        }
    }

    #[test]
    fn zero_is_greatest(t in term()) {
        prop_assert!(sleq(&nf(&t), &Term::zero()));
    }

    #[test]
    fn depth_collapse_is_idempotent(t in term(), d in 0u32..3, b in 1u32..3) {
        let bounds = Bounds::new(b, d);
        let once = bounds.collapse(&nf(&t));
        prop_assert_eq!(bounds.collapse(&once), once);
    }

    #[test]
    fn substituting_the_identity_changes_nothing(t in term()) {
        let id = [(1u32, Term::Param(1)), (2, Term::Param(2))].into_iter().collect();
        prop_assert_eq!(substitute(&t, &id), t);
    }
}
