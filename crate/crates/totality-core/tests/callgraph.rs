use std::collections::{BTreeMap, BTreeSet};

use totality_core::callgraph::*;
use totality_core::pipeline::{front_end, prepare, PreparedGroup};
use totality_core::typing::PPattern;
use totality_core::*;

macro_rules! corpus {
    ($name:literal) => {
        include_str!(concat!("../../totality-testkit/corpus/", $name, ".ch"))
    };
}

const PROGRAMS: [(&str, &str); 11] = [
    ("nats", corpus!("nats")),
    ("length", corpus!("length")),
    ("nats_length", corpus!("nats_length")),
    ("bad_s", corpus!("bad_s")),
    ("sums", corpus!("sums")),
    ("c1c2", corpus!("c1c2")),
    ("swap", corpus!("swap")),
    ("s1s2", corpus!("s1s2")),
    ("nats_list", corpus!("nats_list")),
    ("half", corpus!("half")),
    ("magic", corpus!("magic")),
];

fn t(s: &str) -> Term {
    parse_term(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn groups(src: &str) -> Vec<PreparedGroup> {
    prepare(&front_end(src).unwrap(), &Options::default()).unwrap()
}

fn group(src: &str, member: &str) -> PreparedGroup {
    groups(src).into_iter().find(|g| g.names.iter().any(|n| &**n == member)).unwrap()
}

fn names(g: &PreparedGroup) -> BTreeSet<Name> {
    g.names.iter().cloned().collect()
}

fn shown(sub: &BTreeMap<Name, Term>) -> Vec<String> {
    sub.iter().map(|(k, v)| format!("{k}:={v}")).collect()
}

fn graph(src: &str, member: &str, b: u32, d: u32) -> CallGraph {
    build_callgraph(&group(src, member).defs, Bounds::new(b, d)).unwrap()
}

fn edges(g: &CallGraph) -> Vec<String> {
    g.edges.iter().map(|e| e.to_string()).collect()
}

#[test]
fn substitution_of_a_variable() {
    let sub = pattern_substitution(&[PPattern::Var(name("x"))]);
    assert_eq!(shown(&sub), ["x:=x1"]);
    assert!(pattern_substitution(&[]).is_empty());
}

#[test]
fn substitution_of_nested_patterns() {
    let g = group(corpus!("sums"), "sums");
    let sums = g.defs.iter().find(|d| &*d.name == "sums").unwrap();
    let sub = pattern_substitution(&sums.clauses[1].patterns);
    assert_eq!(
        shown(&sub),
        ["acc:=x1", "l:=.Snd@0 Cons-@1 .Head@0 x2", "n:=.Fst@0 Cons-@1 .Head@0 x2", "s:=.Tail@0 x2",]
    );
}

#[test]
fn substitution_for_length() {
    let g = group(corpus!("length"), "length");
    let sub = pattern_substitution(&g.defs[0].clauses[1].patterns);
    assert_eq!(sub[&name("l")], t(".Snd@0 Cons-@1 x1"));
}

#[test]
fn clause_terms() {
    let g = group(corpus!("length"), "length");
    let n = names(&g);
    assert_eq!(body_to_term(&g.defs[0].clauses[1], &n), t("Succ@1 length(.Snd@0 Cons-@1 x1)"));
    assert_eq!(definition_term(&g.defs[0], &n), t("Succ@1 length(.Snd@0 Cons-@1 x1) + Zero@1 Nil-@1 x1"));
    let g = group(corpus!("nats"), "nats");
    assert_eq!(body_to_term(&g.defs[0].clauses[0], &names(&g)), t("{Head@0 = x1; Tail@0 = nats(Succ@1 x1)}"));
}

#[test]
fn outside_calls_become_daimons() {
    let g = group(corpus!("sums"), "sums");
    let sums = g.defs.iter().find(|d| &*d.name == "sums").unwrap();
    let body = body_to_term(&sums.clauses[1], &names(&g)).to_string();
    assert!(body.contains("sums(? x1, "), "{body}");
    assert!(!body.contains("add"), "{body}");
}

#[test]
fn three_calls_from_nested_applications() {
    let fs: BTreeSet<Name> = [name("f")].into_iter().collect();
    let term = t("C@1 {Fst@0 = f(C-@1 x1); Snd@0 = f(C@1 f(x1))}");
    let calls: Vec<String> = extract_calls(&name("f"), &term, &fs).unwrap().iter().map(|c| c.to_string()).collect();
    assert_eq!(
        calls,
        ["f -> C@1 {Fst@0 = f(C-@1 x1)}", "f -> C@1 {Snd@0 = f(C@1 ? x1)}", "f -> C@1 {Snd@0 = ? f(x1)}",]
    );
    assert!(extract_calls(&name("f"), &t("x1"), &fs).unwrap().is_empty());
}

#[test]
fn nats_has_one_call() {
    let g = graph(corpus!("nats"), "nats", 1, 1);
    assert_eq!(edges(&g), ["nats -> {Tail@0 = nats(Succ@1 x1)}"]);
}

#[test]
fn bad_s_has_two_calls() {
    let g = graph(corpus!("bad_s"), "bad_s", 1, 1);
    assert_eq!(edges(&g), ["bad_s -> {Head@0 = <{1:-1}> bad_s()}", "bad_s -> {Tail@0 = bad_s()}"]);
    let g = graph(corpus!("bad_s"), "bad_s", 2, 2);
    assert_eq!(edges(&g), ["bad_s -> {Head@0 = Node@1 bad_s()}", "bad_s -> {Tail@0 = bad_s()}"]);
}

#[test]
fn nats_closure() {
    let g = graph(corpus!("nats"), "nats", 1, 1);
    let c = transitive_closure(&g, ClosureOptions::default()).unwrap();
    assert_eq!(
        edges(&c),
        ["nats -> {Tail@0 = nats(Succ@1 x1)}", "nats -> {Tail@0 = <{0:-1}> nats(Succ@1 <{1:inf}> x1)}"]
    );
}

#[test]
fn bad_s_closure() {
    let g = graph(corpus!("bad_s"), "bad_s", 1, 1);
    let c = transitive_closure(&g, ClosureOptions::default()).unwrap();
    assert_eq!(
        edges(&c),
        [
            "bad_s -> {Head@0 = <{0:-1,1:-1}> bad_s()}",
            "bad_s -> {Head@0 = <{1:-1}> bad_s()}",
            "bad_s -> {Tail@0 = bad_s()}",
            "bad_s -> {Tail@0 = <{0:-1}> bad_s()}",
            "bad_s -> {Tail@0 = <{0:-1,1:-1}> bad_s()}",
        ]
    );
}

#[test]
fn empty_graph_closes_to_itself() {
    let g = CallGraph { vertices: vec![name("f")], edges: BTreeSet::new(), bounds: Bounds::new(1, 1) };
    let c = transitive_closure(&g, ClosureOptions::default()).unwrap();
    assert!(c.edges.is_empty());
    assert_eq!(c.vertices, g.vertices);
}

#[test]
fn edge_limit() {
    let g = graph(corpus!("sums"), "sums", 2, 2);
    let opts = ClosureOptions { max_edges: 3, ..ClosureOptions::default() };
    assert_eq!(transitive_closure(&g, opts), Err(ClosureError::TooLarge(3)));
}

#[test]
fn collapse_of_a_call() {
    let c = Call::from_term(&name("f"), &t("Succ@1 Succ@1 f(Succ-@1 Succ-@1 x1)")).unwrap();
    let out: Vec<String> = collapse_call(Bounds::new(1, 1), &c).unwrap().iter().map(|c| c.to_string()).collect();
    assert_eq!(out, ["f -> Succ@1 <{1:-1}> f(<{1:-1}> Succ-@1 x1)"]);
}

/// Closures with and without pruning, for every group of every program at
/// a few bounds.
fn closures() -> Vec<(String, CallGraph, CallGraph)> {
    let mut out = Vec::new();
    for (prog, src) in PROGRAMS {
        for g in groups(src) {
            if g.defs.is_empty() {
                continue;
            }
            for (b, d) in [(1, 0), (1, 1), (2, 2)] {
                let cg = build_callgraph(&g.defs, Bounds::new(b, d)).unwrap();
                let pruned = transitive_closure(&cg, ClosureOptions::default()).unwrap();
                let full = transitive_closure(&cg, ClosureOptions { subsumption: false, ..ClosureOptions::default() })
                    .unwrap();
                out.push((format!("{prog} {:?} B={b} D={d}", g.names), pruned, full));
            }
        }
    }
    out
}

#[test]
fn pruned_closure_is_inside_the_full_one() {
    for (label, pruned, full) in closures() {
        assert!(pruned.edges.is_subset(&full.edges), "{label}");
        for e in &full.edges {
            let covered = pruned
                .edges
                .iter()
                .any(|p| p.caller == e.caller && p.callee == e.callee && sleq(&p.to_term(), &e.to_term()));
            assert!(covered, "{label}: {e}");
        }
    }
}

#[test]
fn closures_are_closed() {
    for (label, pruned, full) in closures() {
        for c in [&pruned, &full] {
            for a in &c.edges {
                for b in c.edges.iter().filter(|b| b.caller == a.callee) {
                    for x in ccomp(c.bounds, b, a).unwrap() {
                        let inside = c
                            .edges
                            .iter()
                            .any(|e| e.caller == x.caller && e.callee == x.callee && sleq(&e.to_term(), &x.to_term()));
                        assert!(inside, "{label}: {b} after {a} gives {x}");
                    }
                }
            }
        }
    }
}

#[test]
fn closures_are_bounded() {
    for (label, _, full) in closures() {
        assert!(full.edges.len() <= 64, "{label}: {} edges", full.edges.len());
    }
}

#[test]
fn closing_twice_changes_nothing() {
    for (label, _, full) in closures() {
        let again =
            transitive_closure(&full, ClosureOptions { subsumption: false, ..ClosureOptions::default() }).unwrap();
        assert_eq!(again.edges, full.edges, "{label}");
    }
}
