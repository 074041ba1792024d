use totality_core::surface::*;

const NAT: &str = "data nat where\n    Zero : nat\n  | Succ : nat -> nat\n";
const LIST: &str = "data list('x) where\n    Nil : list('x)\n  | Cons : 'x -> list('x) -> list('x)\n";

const LENGTH: &str = "data nat where
    Zero : nat
  | Succ : nat -> nat

data list('x) where
    Nil  : list('x)
  | Cons : 'x -> list('x) -> list('x)

val length : list('x) -> nat
  | length Nil = Zero
  | length (Cons _ l) = Succ (length l)
";

const BAD_S: &str = "codata stream('x) where
    Head : stream('x) -> 'x
  | Tail : stream('x) -> stream('x)

data stree where
    Node : stream(stree) -> stree

val bad_s : stream(stree)
  | bad_s = { Head = Node bad_s ; Tail = bad_s }
";

fn desugared(src: &str) -> String {
    pretty_print(&desugar(&parse_program(src).unwrap()))
}

fn violations(src: &str) -> Vec<String> {
    let p = desugar(&parse_program(src).unwrap());
    match validate_restrictions(&p) {
        Ok(_) => Vec::new(),
        Err(v) => v.iter().map(|v| v.to_string()).collect(),
    }
}

#[test]
fn length_parses() {
    let p = parse_program(LENGTH).unwrap();
    assert_eq!(p.types().count(), 2);
    let defs: Vec<_> = p.definitions().collect();
    assert_eq!(defs.len(), 1);
    assert_eq!(&*defs[0].name, "length");
    assert_eq!(defs[0].clauses.len(), 2);
    assert_eq!(defs[0].arity(), 1);
}

#[test]
fn empty_source() {
    let p = parse_program("").unwrap();
    assert!(p.items.is_empty());
    let c = validate_restrictions(&desugar(&p)).unwrap();
    assert!(c.groups.is_empty() && c.types.is_empty());
}

#[test]
fn self_application_is_rejected_after_parsing() {
    let p = parse_program("val f = f f").unwrap();
    assert_eq!(p.definitions().count(), 1);
    let v = violations("val f = f f");
    assert_eq!(v.len(), 1);
    assert!(v[0].contains("arity 0"), "{v:?}");
}

#[test]
fn unit_arguments_become_variables() {
    let src = format!("{NAT}val f : nat -> nat\n  | f (Zero {{}}) = Succ (Zero {{}})\n");
    assert!(desugared(&src).contains("| f (Zero _x1) = Succ (Zero _x1)"));
    let bare = format!("{NAT}val f : nat -> nat\n  | f Zero = Succ Zero\n");
    assert_eq!(desugared(&src), desugared(&bare));
}

#[test]
fn numerals_unfold() {
    let src = format!("{NAT}val f : nat -> nat\n  | f 2 = 1\n");
    assert!(desugared(&src).contains("| f (Succ (Succ (Zero _x1))) = Succ (Zero _x1)"));
}

#[test]
fn empty_record_without_unit_variable() {
    let src = format!("{NAT}val z : nat\n  | z = Succ Zero\n");
    let out = desugared(&src);
    assert!(out.contains(EMPTY_RECORD), "{out}");
    assert!(violations(&src).is_empty());
}

#[test]
fn nonlinear_patterns_are_rejected() {
    let src = format!("{LIST}val f : list('x) -> list('x)\n  | f (Cons x x) = x\n");
    let v = violations(&src);
    assert_eq!(v.len(), 1);
    assert!(v[0].contains("occurs twice"), "{v:?}");
}

#[test]
fn tuple_patterns_are_product_records() {
    let src = format!("{LIST}val f : list('x) -> 'x\n  | f (Cons x _) = x\n");
    assert!(desugared(&src).contains("Cons { Fst = x; Snd = _x1 }"), "{}", desugared(&src));
}

#[test]
fn recursion_is_detected() {
    let rec = format!("{NAT}val g : nat -> nat\n  | g x = Succ (g x)\n");
    let c = validate_restrictions(&desugar(&parse_program(&rec).unwrap())).unwrap();
    assert!(c.groups[0].recursive);
    let flat = format!("{NAT}val g : nat -> nat\n  | g x = Succ x\n");
    let c = validate_restrictions(&desugar(&parse_program(&flat).unwrap())).unwrap();
    assert!(!c.groups[0].recursive);
}

#[test]
fn bad_s_is_accepted() {
    assert!(violations(BAD_S).is_empty());
    let c = validate_restrictions(&desugar(&parse_program(BAD_S).unwrap())).unwrap();
    assert_eq!(c.groups.len(), 1);
    assert_eq!(c.groups[0].defs[0].arity, 0);
}

#[test]
fn pragma_before_val() {
    let src = format!("{NAT}-- totality: B=1, D=0\nval g : nat -> nat\n  | g x = g x\n");
    let p = parse_program(&src).unwrap();
    let pragma = p.groups().next().unwrap().pragma.unwrap();
    assert_eq!((pragma.b, pragma.d), (Some(1), Some(0)));
    let misplaced = format!("-- totality: B=1\n{NAT}");
    assert!(parse_program(&misplaced).is_err());
}

#[test]
fn syntax_errors_have_positions() {
    let errs = parse_program("val f : nat ->\n  | f x = ").unwrap_err();
    assert!(!errs.is_empty());
    assert!(errs[0].pos.line >= 1);
}

#[test]
fn pretty_print_round_trips() {
    for src in [LENGTH, BAD_S] {
        let p = desugar(&parse_program(src).unwrap());
        let text = pretty_print(&p);
        let again = desugar(&parse_program(&text).unwrap());
        assert_eq!(pretty_print(&again), text);
    }
}

#[test]
fn desugaring_is_idempotent() {
    for src in [LENGTH, BAD_S] {
        let once = desugar(&parse_program(src).unwrap());
        assert_eq!(desugar(&once), once);
    }
}
