use proptest::prelude::*;
use totality_core::{is_normal, nf, Term};
use totality_testkit::gen::{call_strategy, gen_term, simple_term_strategy, term_strategy, Alphabet, TermGen};

#[test]
fn size_one_is_a_leaf() {
    for seed in 0..200 {
        let t = gen_term(1, seed);
        assert!(t == Term::Param(1) || t.is_zero(), "{t}");
    }
}

#[test]
fn same_seed_same_term() {
    for seed in [0, 1, 42, u64::MAX] {
        assert_eq!(gen_term(6, seed), gen_term(6, seed));
    }
    let distinct: std::collections::BTreeSet<String> = (0..50).map(|s| gen_term(6, s).to_string()).collect();
    assert!(distinct.len() > 10);
}

#[test]
fn size_is_bounded() {
    for size in 1..=8 {
        for seed in 0..300 {
            let t = gen_term(size, seed);
            assert!(t.size() <= size, "{t} has more than {size} nodes");
        }
    }
}

#[test]
fn generated_calls_are_normal() {
    let mut g = TermGen::new(Alphabet::default().with_arity(2), 7);
    for _ in 0..300 {
        let c = g.call(3, 4);
        assert_eq!(c.args.len(), 2);
        assert!(c.is_loop());
        assert!(is_normal(&c.to_term()), "{c}");
    }
}

#[test]
fn exact_alphabet_has_no_weights() {
    let mut g = TermGen::new(Alphabet::default().exact(), 3);
    for _ in 0..300 {
        let t = g.term(6);
        assert!(!t.to_string().contains('<'), "{t}");
    }
}

proptest! {
    #[test]
    fn strategy_terms_normalize(t in term_strategy(Alphabet::default(), 4)) {
        let n = nf(&t);
        prop_assert!(is_normal(&n));
    }

    #[test]
    fn simple_terms_have_no_sums(t in simple_term_strategy(Alphabet::default(), 4, true)) {
        prop_assert_eq!(t.summands().len(), 1);
    }

    #[test]
    fn strategy_calls_are_normal(c in call_strategy(Alphabet::default().with_arity(2), 3, 3)) {
        prop_assert_eq!(c.args.len(), 2);
        prop_assert!(is_normal(&c.to_term()));
    }
}
