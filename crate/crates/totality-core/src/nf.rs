//! Reduction to normal form.
//!
//! Innermost (rightmost-first) strategy: children are normalized before the
//! node above them, and each node is then reduced against its already normal
//! child. Weight absorption flips sign when the absorbed subterm contains a
//! function name, so weights on the output side of a call count output
//! constructors negatively.

use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::term::{Name, Term};
use crate::weight::{Priority, Weight};

/// Normalizer. `Reducer::default()` is the one to use; `flip_dual` gives
/// output-side absorption the input-side sign, so the property suite can
/// check that such a bug is caught.
#[derive(Clone, Copy, Debug, Default)]
pub struct Reducer {
    #[doc(hidden)]
    pub flip_dual: bool,
}

/// Normal form of `t`.
pub fn nf(t: &Term) -> Term {
    Reducer::default().nf(t)
}

impl Reducer {
    fn sign(&self, absorbed: &Term) -> i64 {
        if absorbed.contains_fun() && !self.flip_dual {
            -1
        } else {
            1
        }
    }

    pub fn nf(&self, t: &Term) -> Term {
        match t {
            Term::Param(_) | Term::Unknown => t.clone(),
            Term::Sum(v) => Term::sum(v.iter().map(|s| self.nf(s))),
            Term::Constr(c, p, s) => Term::constr(c.clone(), *p, self.nf(s)),
            Term::Record(fs, p) => Term::record(fs.iter().map(|(d, s)| (d.clone(), self.nf(s))).collect(), *p),
            Term::FunApp(f, args) => Term::fun_app(f.clone(), args.iter().map(|a| self.nf(a)).collect()),
            Term::ConstrDual(c, p, s) => self.each(self.nf(s), |u| self.constr_dual(c, *p, u)),
            Term::Project(d, p, s) => self.each(self.nf(s), |u| self.project(d, *p, u)),
            Term::Daimon(s) => self.each(self.nf(s), |u| self.daimon(u)),
            Term::Approx(w, s) => self.each(self.nf(s), |u| self.approx(w, u)),
        }
    }

    fn each(&self, t: Term, f: impl Fn(Term) -> Term) -> Term {
        Term::sum(t.into_summands().into_iter().map(f))
    }

    /// `C-@p` above a simple normal form.
    pub(crate) fn constr_dual(&self, c: &Name, p: Priority, u: Term) -> Term {
        match u {
            Term::Constr(c2, p2, t) => {
                if *c == c2 && p == p2 {
                    *t
                } else {
                    Term::zero()
                }
            }
            Term::Record(..) => Term::zero(),
            Term::Daimon(_) => u,
            Term::Approx(w, t) => {
                let delta = -self.sign(&t);
                Term::Approx(w.add_at(p, delta), t)
            }
            _ => Term::ConstrDual(c.clone(), p, Box::new(u)),
        }
    }

    /// `.D@p` above a simple normal form.
    pub(crate) fn project(&self, d: &Name, p: Priority, u: Term) -> Term {
        match u {
            Term::Constr(..) => Term::zero(),
            Term::Record(fs, _) => match fs.into_iter().find(|f| f.0 == *d) {
                Some((_, t)) => t,
                None => Term::zero(),
            },
            Term::Daimon(_) => u,
            Term::Approx(w, t) => {
                let delta = -self.sign(&t);
                Term::Approx(w.add_at(p, delta), t)
            }
            _ => Term::Project(d.clone(), p, Box::new(u)),
        }
    }

    /// `?` above a simple normal form.
    pub(crate) fn daimon(&self, u: Term) -> Term {
        match u {
            Term::Constr(_, _, t) => self.daimon(*t),
            Term::Record(fs, _) => Term::sum(fs.into_iter().map(|(_, t)| self.daimon(t))),
            Term::Daimon(_) => u,
            Term::Approx(_, t) => Term::Daimon(t),
            _ => Term::Daimon(Box::new(u)),
        }
    }

    /// `<W>` above a simple normal form.
    pub(crate) fn approx(&self, w: &Weight, u: Term) -> Term {
        match u {
            Term::Constr(_, p, t) => {
                let w2 = w.add_at(p, self.sign(&t));
                self.approx(&w2, *t)
            }
            Term::Record(mut fs, p) => {
                if fs.len() == 1 && fs[0].1.contains_fun() {
                    let t = fs.pop().unwrap().1;
                    let w2 = w.add_at(p, self.sign(&t));
                    self.approx(&w2, t)
                } else {
                    Term::sum(fs.into_iter().map(|(_, t)| self.daimon(t)))
                }
            }
            Term::Daimon(_) => u,
            Term::Approx(v, t) => Term::Approx(w.add(&v), t),
            _ => Term::Approx(w.clone(), Box::new(u)),
        }
    }
}

/// Whether `t` matches the normal-form grammar:
/// sums of `C t | {D = t; ...} | ? δ | <W> δ | δ` with
/// `δ ::= C- δ | .D δ | x | _ | f(t, ...)`, sums flattened, sorted and free of
/// duplicates and zeros.
pub fn is_normal(t: &Term) -> bool {
    match t {
        Term::Sum(v) => {
            v.len() != 1
                && v.windows(2).all(|w| w[0] < w[1])
                && v.iter().all(|s| !matches!(s, Term::Sum(_)) && simple_normal(s))
        }
        s => simple_normal(s),
    }
}

fn simple_normal(t: &Term) -> bool {
    match t {
        Term::Constr(_, _, s) => simple_normal(s),
        Term::Record(fs, _) => {
            !fs.is_empty() && fs.windows(2).all(|w| w[0].0 < w[1].0) && fs.iter().all(|(_, s)| simple_normal(s))
        }
        Term::Daimon(s) | Term::Approx(_, s) => is_delta(s),
        s => is_delta(s),
    }
}

fn is_delta(t: &Term) -> bool {
    match t {
        Term::ConstrDual(_, _, s) | Term::Project(_, _, s) => is_delta(s),
        Term::Param(_) | Term::Unknown => true,
        Term::FunApp(_, args) => args.iter().all(simple_normal),
        _ => false,
    }
}

/// Split a destructor chain `δ` into its items (outermost first) and its leaf.
pub(crate) fn split_delta(t: &Term) -> (Vec<&Term>, &Term) {
    let mut items = Vec::new();
    let mut cur = t;
    loop {
        match cur {
            Term::ConstrDual(_, _, s) | Term::Project(_, _, s) => {
                items.push(cur);
                cur = s;
            }
            _ => return (items, cur),
        }
    }
}

/// Rebuild a chain from items (outermost first) over a new bottom.
pub(crate) fn rebuild_delta(items: &[&Term], bottom: Term) -> Term {
    items.iter().rev().fold(bottom, |acc, item| match item {
        Term::ConstrDual(c, p, _) => Term::constr_dual(c.clone(), *p, acc),
        Term::Project(d, p, _) => Term::project(d.clone(), *p, acc),
        _ => unreachable!("not a destructor item"),
    })
}
