use totality_core::{parse_term, sleq, Term};
use totality_testkit::oracle::{leq_oracle, reachable, OracleError, TermUniverse, UniverseParams};

fn t(s: &str) -> Term {
    parse_term(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn universe() -> TermUniverse {
    TermUniverse::new(UniverseParams::default())
}

#[test]
fn daimon_is_below_a_constructor() {
    assert_eq!(leq_oracle(&t("? x1"), &t("A@1 x1"), &universe()), Ok(true));
}

#[test]
fn zero_is_greatest() {
    let u = universe();
    for s in ["x1", "A@1 x1", "? x1", ".D@0 x1", "f(x1)", "<{1:-1}> x1"] {
        assert_eq!(leq_oracle(&t(s), &Term::zero(), &u), Ok(true), "{s}");
    }
}

#[test]
fn constructor_is_not_below_variable() {
    assert_eq!(leq_oracle(&t("A@1 x1"), &t("x1"), &universe()), Ok(false));
    assert_eq!(leq_oracle(&t("A@1 x1"), &t("B@1 x1"), &universe()), Ok(false));
}

#[test]
fn approximations() {
    let u = universe();
    assert_eq!(leq_oracle(&t("<{}> x1"), &t("x1"), &u), Ok(true));
    assert_eq!(leq_oracle(&t("<{1:1}> x1"), &t("A@1 x1"), &u), Ok(true));
    assert_eq!(leq_oracle(&t("<{1:-1}> x1"), &t("<{1:1}> x1"), &u), Ok(false));
}

#[test]
fn sums_need_every_upper_summand_covered() {
    let u = universe();
    assert_eq!(leq_oracle(&t("x1 + A@1 x1"), &t("A@1 x1"), &u), Ok(true));
    assert_eq!(leq_oracle(&t("A@1 x1"), &t("A@1 x1 + x1"), &u), Ok(false));
}

#[test]
fn daimon_of_variable_is_below_small_terms() {
    let u = universe();
    let low = t("? x1");
    for v in u.normal_forms(2) {
        assert_eq!(leq_oracle(&low, &v, &u), Ok(true), "{v}");
    }
}

#[test]
fn reachable_is_reflexive() {
    let u = universe();
    for v in u.normal_forms(2) {
        let up = reachable(&v, 3, &u).expect("small search");
        assert!(up.contains(&v), "{v}");
    }
}

#[test]
fn foreign_names_are_rejected() {
    let u = universe();
    let out = leq_oracle(&t("Z@1 x1"), &t("x1"), &u);
    assert!(matches!(out, Err(OracleError::Outside(_))), "{out:?}");
}

#[test]
fn tiny_state_limit_overflows() {
    let u = TermUniverse::new(UniverseParams { max_states: 2, ..UniverseParams::default() });
    assert_eq!(leq_oracle(&t("? x1"), &t("A@1 {D@0 = x1}"), &u), Err(OracleError::Overflow));
}

#[test]
fn universe_is_normal_and_duplicate_free() {
    let u = universe();
    let nfs = u.normal_forms(3);
    let mut seen = std::collections::HashSet::new();
    assert!(nfs.iter().all(|v| seen.insert(v.clone())));
    assert!(nfs.len() > 100);
    assert!(nfs.iter().all(|v| u.contains(v, 3)));
}

#[test]
fn sleq_agrees_on_size_two() {
    let u = universe();
    let nfs = u.normal_forms(2);
    for s in &nfs {
        let up = reachable(s, 3, &u).expect("small search");
        for v in &nfs {
            assert_eq!(up.contains(v), sleq(s, v), "{s} <= {v}");
        }
    }
}
