use totality_core::*;

fn t(s: &str) -> Term {
    parse_term(s).unwrap()
}

fn n(s: &str) -> String {
    nf(&t(s)).to_string()
}

fn w(pairs: &[(u32, ZInf)]) -> Weight {
    Weight::from_pairs(pairs.iter().copied())
}

use ZInf::{Fin, Inf};

#[test]
fn weight_addition() {
    assert_eq!(w(&[(0, Fin(-1))]).add(&w(&[(1, Fin(-1))])), w(&[(0, Fin(-1)), (1, Fin(-1))]));
    assert_eq!(w(&[(1, Fin(1))]).add(&w(&[(1, Inf)])), w(&[(1, Inf)]));
    assert_eq!(Weight::zero().add(&w(&[(0, Fin(5))])), w(&[(0, Fin(5))]));
}

#[test]
fn coefficient_order_is_reversed() {
    assert!(w(&[(1, Inf)]).coef_leq(&w(&[(1, Fin(1))])));
    let a = w(&[(0, Fin(-1)), (1, Inf)]);
    assert!(a.coef_leq(&a));
    assert!(w(&[(0, Fin(-1))]).coef_leq(&w(&[(0, Fin(-2))])));
    assert!(!w(&[(0, Fin(-2))]).coef_leq(&w(&[(0, Fin(-1))])));
}

#[test]
fn weight_collapse() {
    assert_eq!(Fin(1).collapse(1), Inf);
    assert_eq!(Fin(-2).collapse(1), Fin(-1));
    assert_eq!(Fin(0).collapse(3), Fin(0));
    assert_eq!(Fin(2).collapse(3), Fin(2));
    assert_eq!(Fin(-3).collapse(3), Fin(-3));
    assert_eq!(Fin(-4).collapse(3), Fin(-3));
}

#[test]
fn notation_round_trip() {
    for s in [
        "x1",
        "0",
        "Succ@1 x1",
        "{Head@0 = x1; Tail@0 = nats(Succ@1 x1)}",
        "Cons-@1 .Snd@0 x2",
        "? x1",
        "<{0:-1,1:inf}> f(x1, ? _)",
        "x2 + <{}> x1",
        "bad_s()",
    ] {
        assert_eq!(t(s).to_string(), s);
    }
}

#[test]
fn nf_examples() {
    assert_eq!(n("C-@1 C@1 x1"), "x1");
    assert_eq!(n(".D@0 {D@0 = x1; E@0 = C-@1 Cp@1 x1}"), "0");
    assert_eq!(n("? C@1 x1"), "? x1");
    assert_eq!(n("<{}> Succ@1 x1"), "<{1:1}> x1");
    assert_eq!(n("{Tail@0 = <{}> {Tail@0 = f(x1)}}"), "{Tail@0 = <{0:-1}> f(x1)}");
}

#[test]
fn nf_output_is_normal() {
    for s in [
        "C-@1 C@1 x1",
        "<{}> {D@0 = x1; E@0 = C@1 x1}",
        "? {D@0 = x1; E@0 = .E@0 x1}",
        ".D@0 <{1:2}> C-@1 x1",
        "<{0:1}> <{0:-1}> ? x1",
    ] {
        assert!(is_normal(&nf(&t(s))), "{s}");
    }
}

#[test]
fn substitution() {
    let b = |i: u32, s: &str| [(i, t(s))].into_iter().collect();
    assert_eq!(substitute(&t("x1"), &b(1, "C@1 x1")), t("C@1 x1"));
    assert_eq!(substitute(&t("Succ@1 x1"), &b(1, "Succ@1 x1")), t("Succ@1 Succ@1 x1"));
    assert_eq!(substitute(&t("f(x1)"), &b(1, "A@1 x1 + B@1 x1")), t("f(A@1 x1) + f(B@1 x1)"));
}

#[test]
fn composition() {
    let sigma = t("{Tail@0 = nats(Succ@1 x1)}");
    assert_eq!(compose(&sigma, &sigma, "nats"), t("{Tail@0 = {Tail@0 = nats(Succ@1 Succ@1 x1)}}"));
    assert_eq!(compose(&t("f(x1)"), &t("C@1 x1"), "f"), t("C@1 x1"));
    assert_eq!(compose(&t("f(f(x1))"), &t("g(x1) + h(x1)"), "f"), t("g(g(x1)) + g(h(x1)) + h(g(x1)) + h(h(x1))"));
}

#[test]
fn depth_collapse() {
    let p = 1;
    let long = t(&format!("C1@{p} C2@{p} C3@{p} <{{{p}:5}}> C4-@{p} C5-@{p} C6-@{p} C7-@{p} x1"));
    assert_eq!(collapse_depth(2, &long), t(&format!("C1@{p} C2@{p} <{{{p}:4}}> C6-@{p} C7-@{p} x1")));
    assert_eq!(collapse_depth(0, &t("Succ@1 f(.Snd@0 Cons-@1 x1)")), t("<{1:-1}> f(<{0:-1,1:-1}> x1)"));
    let small = t("A@1 B@1 x1");
    assert_eq!(collapse_depth(5, &small), small);
}

#[test]
fn collapsed_composition_examples() {
    let call = |caller: &str, s: &str| Call::from_term(&name(caller), &t(s)).unwrap();
    let b11 = Bounds::new(1, 1);
    let sigma = call("nats", "{Tail@0 = nats(Succ@1 x1)}");
    let sigma = ccomp_init(b11, &sigma);
    let rho = ccomp(b11, &sigma, &sigma).unwrap();
    assert_eq!(rho.len(), 1);
    assert_eq!(rho[0].to_term().to_string(), "{Tail@0 = <{0:-1}> nats(Succ@1 <{1:inf}> x1)}");

    let b10 = Bounds::new(1, 0);
    let sigma = ccomp_init(b10, &call("length", "Succ@1 length(.Snd@0 Cons-@1 x1)"));
    let rho = ccomp(b10, &sigma, &sigma).unwrap();
    assert_eq!(rho[0].to_term().to_string(), "<{1:-1}> length(<{0:-1,1:-1}> x1)");

    let sigma2 = ccomp_init(b11, &call("bad_s", "{Tail@0 = bad_s()}"));
    let rho = ccomp(b11, &sigma2, &sigma2).unwrap();
    assert_eq!(rho[0].to_term().to_string(), "{Tail@0 = <{0:-1}> bad_s()}");
}

fn ccomp_init(b: Bounds, c: &Call) -> Call {
    Call::from_term(&c.caller, &b.collapse(&c.to_term())).unwrap()
}

#[test]
fn order_examples() {
    for s in ["x1", "? .D@0 x1", "<{1:2}> C-@1 x1", "{D@0 = x1; E@0 = A@1 x1}", "f(x1) + g(x1)"] {
        let u = nf(&t(s));
        assert!(sleq(&u, &u), "{s}");
    }
    assert!(sleq(&t("? x1"), &t("f(x1)")));
    assert!(!sleq(&t("x1"), &t("C@1 x1")));
    assert!(sleq(&t("<{1:inf}> x1"), &t("<{1:1}> x1")));
    assert!(!sleq(&t("<{1:1}> x1"), &t("<{1:inf}> x1")));
}

#[test]
fn coherence_examples() {
    for s in ["x1", "{D@0 = x1; E@0 = A@1 x1}", "f(.D@0 x1)"] {
        assert!(sqcoh(&t(s), &t(s)));
    }
    assert!(sqcoh(&t("? .Tail@0 x1"), &t("? x1")));
    assert!(!sqcoh(&t("C@1 x1"), &t("Cp@1 x1")));
}

#[test]
fn branches_and_weights() {
    let bs = branches(&t("{Fst@0 = x1; Snd@0 = C-@1 x1}"));
    let shown: Vec<String> = bs.iter().map(|b| b.to_string()).collect();
    assert_eq!(shown, ["{Fst}@0 x1", "{Snd}@0 C-@1 x1"]);
    assert_eq!(branches(&t("x1")).len(), 1);
    assert!(branches(&t("? x1")).is_empty());
    let items = &branches(&t(".Snd@0 Cons-@1 x1"))[0].items;
    assert_eq!(branch_weight(items, Mode::Standard), w(&[(0, Fin(-1)), (1, Fin(-1))]));
    let items = &branches(&t("<{1:-1}> x1"))[0].items;
    assert_eq!(branch_weight(items, Mode::Standard), w(&[(1, Fin(-1))]));
    let spine = [Item::Field(name("Tail"), 0), Item::Approx(w(&[(0, Fin(-1))]))];
    assert_eq!(branch_weight(&spine, Mode::Dual), w(&[(0, Fin(-2))]));
}
