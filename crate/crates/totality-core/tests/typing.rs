use std::collections::BTreeSet;

use totality_core::surface::{desugar, parse_program, validate_restrictions, CheckedProgram, Polarity};
use totality_core::typing::*;

const TYPES: &str = "data nat where
    Zero : nat
  | Succ : nat -> nat

data list('x) where
    Nil  : list('x)
  | Cons : 'x -> list('x) -> list('x)

codata stream('x) where
    Head : stream('x) -> 'x
  | Tail : stream('x) -> stream('x)

data stree where
    Node : stream(stree) -> stree
";

fn checked(src: &str) -> CheckedProgram {
    validate_restrictions(&desugar(&parse_program(src).unwrap())).unwrap()
}

fn typed(src: &str) -> (TypeEnv, Vec<Result<TGroup, TypeError>>) {
    let p = checked(src);
    let env = TypeEnv::new(&p.types);
    let mut funs = FunEnv::new();
    let groups = p.groups.iter().map(|g| annotate_group(g, &env, &mut funs)).collect();
    (env, groups)
}

fn ty(s: &str) -> TypeExpr {
    let (name, rest) = s.split_once('(').unwrap_or((s, ""));
    let args = rest.strip_suffix(')').map(|inner| split_top(inner).into_iter().map(ty).collect()).unwrap_or_default();
    if let Some(v) = name.strip_prefix('\'') {
        return TypeExpr::Var(totality_core::name(v));
    }
    TypeExpr::App(totality_core::name(name), args)
}

fn split_top(s: &str) -> Vec<&str> {
    let (mut depth, mut start, mut out) = (0, 0, Vec::new());
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out
}

fn priorities(env: &TypeEnv, instances: &[&str]) -> PriorityMap {
    let set: BTreeSet<TypeExpr> = instances.iter().map(|s| ty(s)).collect();
    assign_instances(&set, env).unwrap()
}

fn table(pm: &PriorityMap) -> Vec<(String, u32)> {
    pm.sorted().into_iter().map(|(t, p)| (t.to_string(), p)).collect()
}

fn pairs(v: &[(&str, u32)]) -> Vec<(String, u32)> {
    v.iter().map(|(t, p)| (t.to_string(), *p)).collect()
}

fn env() -> TypeEnv {
    TypeEnv::new(&checked(TYPES).types)
}

#[test]
fn unify_examples() {
    let s = unify(&ty("list('a)"), &ty("list(nat)")).unwrap();
    assert_eq!(resolve(&s, &ty("'a")), ty("nat"));
    let s = unify(&TypeExpr::arrow(ty("'a"), ty("'b")), &TypeExpr::arrow(ty("nat"), ty("'a"))).unwrap();
    assert_eq!(resolve(&s, &ty("'b")), ty("nat"));
    assert!(matches!(unify(&ty("nat"), &ty("list(nat)")), Err(UnifyError::Clash(..))));
    assert!(matches!(unify(&ty("'a"), &ty("list('a)")), Err(UnifyError::Occurs(..))));
    assert!(unify(&ty("'a"), &ty("'a")).unwrap().is_empty());
}

#[test]
fn stream_of_nat() {
    let pm = priorities(&env(), &["stream(nat)"]);
    assert_eq!(table(&pm), pairs(&[("stream(nat)", 0), ("nat", 1), ("unit", 2)]));
}

#[test]
fn stream_of_stree_shares_a_cycle() {
    let pm = priorities(&env(), &["stream(stree)", "stree"]);
    assert_eq!(table(&pm), pairs(&[("stream(stree)", 0), ("stree", 1)]));
}

#[test]
fn list_of_nat() {
    let e = TypeEnv::new(&checked(&format!("{TYPES}val n : nat -> list(nat)\n  | n x = Cons x (n (Succ x))\n")).types);
    let pm = priorities(&e, &["list(nat)"]);
    let t = table(&pm);
    assert!(t.contains(&("list(nat)".into(), 1)), "{t:?}");
    assert!(t.contains(&("nat".into(), 3)), "{t:?}");
    assert!(t.contains(&("unit".into(), 4)), "{t:?}");
}

/// Parity, ordering and minimality of an assignment.
fn assert_valid(env: &TypeEnv, pm: &PriorityMap) {
    let violated = |pm: &PriorityMap| -> bool {
        pm.0.iter().any(|(t, &p)| {
            let parity = match env.polarity(t) {
                Some(Polarity::Data) => 1,
                _ => 0,
            };
            if p % 2 != parity {
                return true;
            }
            t.proper_subexpressions().into_iter().any(|s| pm.get(s).is_some_and(|q| q <= p))
        })
    };
    assert!(!violated(pm), "{pm}");
    for (t, &p) in &pm.0 {
        if p >= 2 {
            let mut lower = PriorityMap(pm.0.clone());
            lower.0.insert(t.clone(), p - 2);
            let still_ok = !violated(&lower) && {
                let set: BTreeSet<TypeExpr> = pm.0.keys().cloned().collect();
                assign_instances(&set, env).unwrap().get(t) == Some(p - 2)
            };
            assert!(!still_ok, "{t} could be {}", p - 2);
        }
    }
}

#[test]
fn assignments_are_valid_and_least() {
    let e = env();
    for set in [
        &["stream(nat)"][..],
        &["stream(list(nat))", "stream(nat)"],
        &["list(stream(nat))"],
        &["stream(stree)"],
        &["list(list(nat))"],
    ] {
        let pm = priorities(&e, set);
        assert_valid(&e, &pm);
        for s in set {
            assert!(pm.get(&ty(s)).is_some());
        }
    }
}

#[test]
fn nested_instances_exceed_their_context() {
    let e = env();
    let pm = priorities(&e, &["list(stream(nat))"]);
    let (l, s, n) = (ty("list(stream(nat))"), ty("stream(nat)"), ty("nat"));
    assert!(pm.get(&l).unwrap() < pm.get(&s).unwrap());
    assert!(pm.get(&s).unwrap() < pm.get(&n).unwrap());
}

#[test]
fn length_is_typed() {
    let (_, groups) = typed(&format!(
        "{TYPES}val length : list('x) -> nat\n  | length Nil = Zero\n  | length (Cons _ l) = Succ (length l)\n"
    ));
    let g = groups[0].as_ref().unwrap();
    assert_eq!(g.defs[0].arity, 1);
    let (args, res) = g.defs[0].ty.split_arrows();
    assert_eq!(args.len(), 1);
    assert_eq!(*res, ty("nat"));
}

#[test]
fn signatures_are_inferred() {
    let (_, groups) = typed(&format!("{TYPES}val nats x = {{ Head = x ; Tail = nats (Succ x) }}\n"));
    let d = &groups[0].as_ref().unwrap().defs[0];
    assert_eq!(d.ty, TypeExpr::arrow(ty("nat"), ty("stream(nat)")));
}

#[test]
fn nats_priorities_annotate_the_body() {
    let (e, groups) =
        typed(&format!("{TYPES}val nats : nat -> stream(nat)\n  | nats x = {{ Head = x ; Tail = nats (Succ x) }}\n"));
    let g = groups[0].as_ref().unwrap();
    let pm = assign_priorities(g, &e).unwrap();
    let defs = annotate_priorities(g, &pm).unwrap();
    let PExpr::Record(fields, p) = &defs[0].clauses[0].body else { panic!("{:?}", defs[0].clauses[0].body) };
    assert_eq!(*p, 0);
    let (_, tail) = fields.iter().find(|(d, _)| &**d == "Tail").unwrap();
    let PExpr::Call(f, args) = tail else { panic!() };
    assert_eq!(&**f, "nats");
    assert!(matches!(&args[0], PExpr::Ctor(c, 1, _) if &**c == "Succ"));
}

#[test]
fn length_patterns_get_priorities() {
    let (e, groups) = typed(&format!(
        "{TYPES}val length : list(nat) -> nat\n  | length Nil = Zero\n  | length (Cons _ l) = Succ (length l)\n"
    ));
    let g = groups[0].as_ref().unwrap();
    let pm = assign_priorities(g, &e).unwrap();
    let defs = annotate_priorities(g, &pm).unwrap();
    let PPattern::Ctor(c, p, inner) = &defs[0].clauses[1].patterns[0] else { panic!() };
    assert_eq!((&**c, *p), ("Cons", pm.get(&ty("list(nat)")).unwrap()));
    assert!(matches!(&**inner, PPattern::Record(_, 0)));
}

#[test]
fn ill_typed_bodies_are_rejected() {
    let (_, groups) = typed(&format!("{TYPES}val f : nat -> nat\n  | f x = Nil\n"));
    let err = groups[0].as_ref().unwrap_err();
    assert_eq!(&*err.def, "f");
    assert!(err.message.contains("cannot unify"), "{err}");
}

#[test]
fn wrong_signature_is_rejected() {
    let (_, groups) = typed(&format!("{TYPES}val f : nat -> list(nat)\n  | f x = x\n"));
    assert!(groups[0].is_err());
}

#[test]
fn later_groups_see_earlier_types() {
    let src = format!("{TYPES}val id : nat -> nat\n  | id x = x\nval g : nat -> nat\n  | g x = id (g x)\n");
    let (_, groups) = typed(&src);
    assert!(groups.iter().all(Result::is_ok));
}
