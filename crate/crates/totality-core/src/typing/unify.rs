//! First-order unification. `TypeExpr::Var` are the unknowns.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;

use super::TypeExpr;
use crate::term::Name;

pub type Subst = BTreeMap<Name, TypeExpr>;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum UnifyError {
    #[error("cannot unify `{0}` with `{1}`")]
    Clash(String, String),
    #[error("`'{0}` occurs in `{1}`")]
    Occurs(String, String),
}

/// Follow bindings of `s` until the head is not a bound variable.
pub fn walk(s: &Subst, t: &TypeExpr) -> TypeExpr {
    let mut t = t.clone();
    while let TypeExpr::Var(v) = &t {
        match s.get(v) {
            Some(u) => t = u.clone(),
            None => break,
        }
    }
    t
}

/// Apply `s` everywhere.
pub fn resolve(s: &Subst, t: &TypeExpr) -> TypeExpr {
    match walk(s, t) {
        TypeExpr::Var(v) => TypeExpr::Var(v),
        TypeExpr::App(h, args) => TypeExpr::App(h, args.iter().map(|a| resolve(s, a)).collect()),
        TypeExpr::Arrow(a, b) => TypeExpr::arrow(resolve(s, &a), resolve(s, &b)),
    }
}

/// Extend `s` to a unifier of `a` and `b`.
pub fn unify_in(s: &mut Subst, a: &TypeExpr, b: &TypeExpr) -> Result<(), UnifyError> {
    let (a, b) = (walk(s, a), walk(s, b));
    match (&a, &b) {
        (TypeExpr::Var(x), TypeExpr::Var(y)) if x == y => Ok(()),
        (TypeExpr::Var(x), t) | (t, TypeExpr::Var(x)) => {
            let t = resolve(s, t);
            if t.occurs(x) {
                return Err(UnifyError::Occurs(format!("{x}"), format!("{t}")));
            }
            s.insert(x.clone(), t);
            Ok(())
        }
        (TypeExpr::App(f, xs), TypeExpr::App(g, ys)) if f == g && xs.len() == ys.len() => {
            xs.iter().zip(ys).try_for_each(|(x, y)| unify_in(s, x, y))
        }
        (TypeExpr::Arrow(a1, b1), TypeExpr::Arrow(a2, b2)) => {
            unify_in(s, a1, a2)?;
            unify_in(s, b1, b2)
        }
        _ => Err(UnifyError::Clash(format!("{}", resolve(s, &a)), format!("{}", resolve(s, &b)))),
    }
}

/// Most general unifier of `a` and `b`, fully resolved.
pub fn unify(a: &TypeExpr, b: &TypeExpr) -> Result<Subst, UnifyError> {
    let mut s = Subst::new();
    unify_in(&mut s, a, b)?;
    let keys: alloc::vec::Vec<Name> = s.keys().cloned().collect();
    for k in keys {
        let t = resolve(&s, &s[&k]);
        s.insert(k, t);
    }
    Ok(s)
}
