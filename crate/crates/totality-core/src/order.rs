//! The syntax-directed order `⊴` on normal forms and the weak coherence
//! relation used to select loops.

use crate::nf::{nf, split_delta, Reducer};
use crate::term::Term;
use crate::weight::Weight;

/// `s ⊴ t` on normal forms: every summand of `t` is above some summand of `s`.
pub fn sleq(s: &Term, t: &Term) -> bool {
    t.summands().iter().all(|tj| s.summands().iter().any(|si| leq_simple(si, tj)))
}

fn leq_simple(s: &Term, t: &Term) -> bool {
    match (s, t) {
        (Term::Daimon(s1), Term::Daimon(t1)) => daimon_below(s1, t1),
        (Term::Daimon(_), _) => sleq(s, &Reducer::default().daimon(t.clone())),
        (Term::Approx(v, s1), Term::Approx(w, t1)) => approx_below(v, s1, w, t1),
        (Term::Approx(..), Term::Daimon(_)) => false,
        (Term::Approx(..), _) => {
            let lifted = Reducer::default().approx(&Weight::zero(), t.clone());
            lifted != *t && sleq(s, &lifted)
        }
        (Term::Param(i), Term::Param(j)) => i == j,
        (Term::Unknown, Term::Unknown) => true,
        (Term::FunApp(f, a), Term::FunApp(g, b)) => {
            f == g && a.len() == b.len() && a.iter().zip(b).all(|(x, y)| sleq(x, y))
        }
        (Term::Constr(c, p, s1), Term::Constr(d, q, t1))
        | (Term::ConstrDual(c, p, s1), Term::ConstrDual(d, q, t1))
        | (Term::Project(c, p, s1), Term::Project(d, q, t1)) => c == d && p == q && sleq(s1, t1),
        (Term::Record(fs, p), Term::Record(gs, q)) => {
            p == q && fs.len() == gs.len() && fs.iter().zip(gs).all(|((d, x), (e, y))| d == e && sleq(x, y))
        }
        _ => false,
    }
}

/// `? s ⊴ ? t`: `s` is below some suffix of `t` reached through destructors,
/// or `? s` is below `?` of an argument of a function name in `t`.
fn daimon_below(s: &Term, t: &Term) -> bool {
    if sleq(s, t) {
        return true;
    }
    match t {
        Term::ConstrDual(_, _, r) | Term::Project(_, _, r) => daimon_below(s, r),
        Term::FunApp(_, args) => {
            args.iter().any(|a| sleq(&Term::Daimon(alloc::boxed::Box::new(s.clone())), &nf(&Term::daimon(a.clone()))))
        }
        _ => false,
    }
}

/// `<V> s ⊴ <W> δ t` with `s ⊴ t` and `<W> δ <0> t` normalizing to `<W'> t`
/// where `V` is below `W'` as coefficients.
fn approx_below(v: &Weight, s: &Term, w: &Weight, t: &Term) -> bool {
    let (items, _) = split_delta(t);
    let red = Reducer::default();
    let mut suffix = t;
    for k in 0..=items.len() {
        if k > 0 {
            suffix = match suffix {
                Term::ConstrDual(_, _, r) | Term::Project(_, _, r) => r,
                _ => unreachable!(),
            };
        }
        if !sleq(s, suffix) {
            continue;
        }
        let mut acc = Term::Approx(Weight::zero(), alloc::boxed::Box::new(suffix.clone()));
        for item in items[..k].iter().rev() {
            acc = match item {
                Term::ConstrDual(c, p, _) => red.constr_dual(c, *p, acc),
                Term::Project(d, p, _) => red.project(d, *p, acc),
                _ => unreachable!(),
            };
        }
        if let Term::Approx(w2, r) = red.approx(w, acc) {
            if *r == *suffix && v.coef_leq(&w2) {
                return true;
            }
        }
    }
    false
}

/// Weak coherence `u ⌢̂ v`: some summand of `u` is related to some summand
/// of `v`.
pub fn sqcoh(u: &Term, v: &Term) -> bool {
    u.summands().iter().any(|a| v.summands().iter().any(|b| coh_simple(a, b)))
}

fn coh_simple(u: &Term, v: &Term) -> bool {
    match (u, v) {
        (Term::Param(i), Term::Param(j)) => i == j,
        (Term::Unknown, Term::Unknown) => true,
        (Term::Constr(c, p, a), Term::Constr(d, q, b))
        | (Term::ConstrDual(c, p, a), Term::ConstrDual(d, q, b))
        | (Term::Project(c, p, a), Term::Project(d, q, b)) => c == d && p == q && sqcoh(a, b),
        (Term::FunApp(f, a), Term::FunApp(g, b)) => {
            f == g && a.len() == b.len() && a.iter().zip(b).all(|(x, y)| sqcoh(x, y))
        }
        (Term::Record(fs, p), Term::Record(gs, q)) => {
            p == q && fs.len() == gs.len() && fs.iter().zip(gs).all(|((d, x), (e, y))| d == e && sqcoh(x, y))
        }
        (Term::Daimon(a), Term::Daimon(b)) => daimon_coh(a, b) || daimon_coh(b, a),
        (Term::Daimon(_) | Term::Approx(..), _) | (_, Term::Daimon(_) | Term::Approx(..)) => {
            let red = Reducer::default();
            sqcoh(&red.daimon(u.clone()), &red.daimon(v.clone()))
        }
        _ => false,
    }
}

/// `? a ⌢̂ ? b` by stripping a prefix of `a`.
fn daimon_coh(a: &Term, b: &Term) -> bool {
    if sqcoh(a, b) {
        return true;
    }
    match a {
        Term::ConstrDual(_, _, r) | Term::Project(_, _, r) => daimon_coh(r, b),
        Term::FunApp(_, args) => {
            args.iter().any(|x| sqcoh(&nf(&Term::daimon(x.clone())), &Term::Daimon(alloc::boxed::Box::new(b.clone()))))
        }
        _ => false,
    }
}
