//! Terms of the approximated operator algebra.
//!
//! Every [`Term`] value keeps sums at the top: a `Sum` never occurs strictly
//! below another node. The smart constructors distribute sums to keep it so;
//! build terms through them rather than through the variants.

use alloc::boxed::Box;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::weight::{Priority, Weight};

/// Identifier for constructors, fields and functions.
pub type Name = Arc<str>;

pub fn name(s: &str) -> Name {
    Arc::from(s)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    /// `C@p t`
    Constr(Name, Priority, Box<Term>),
    /// `{D1@p = t1; ...}`, fields sorted by name, at least one.
    Record(Vec<(Name, Term)>, Priority),
    /// `C-@p t`
    ConstrDual(Name, Priority, Box<Term>),
    /// `.D@p t`
    Project(Name, Priority, Box<Term>),
    /// `f(t1, ..., tn)`
    FunApp(Name, Vec<Term>),
    /// `x1`, `x2`, ...
    Param(u32),
    /// Leaf standing for the missing argument of a nullary external call.
    Unknown,
    /// `? t`
    Daimon(Box<Term>),
    /// `<W> t`
    Approx(Weight, Box<Term>),
    /// `t1 + t2 + ...`; the empty sum is `0`.
    Sum(Vec<Term>),
}

/// Rebuild a node from children, distributing any sums among them.
fn distribute(children: Vec<Term>, build: &dyn Fn(Vec<Term>) -> Term) -> Term {
    if children.iter().all(|c| !matches!(c, Term::Sum(_))) {
        return build(children);
    }
    let mut combos: Vec<Vec<Term>> = vec![Vec::new()];
    for child in children {
        let parts = child.into_summands();
        if parts.is_empty() {
            return Term::zero();
        }
        let mut next = Vec::with_capacity(combos.len() * parts.len());
        for prefix in &combos {
            for part in &parts {
                let mut c = prefix.clone();
                c.push(part.clone());
                next.push(c);
            }
        }
        combos = next;
    }
    Term::sum(combos.into_iter().map(build))
}

impl Term {
    pub fn zero() -> Term {
        Term::Sum(Vec::new())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Term::Sum(v) if v.is_empty())
    }

    pub fn param(i: u32) -> Term {
        Term::Param(i)
    }

    /// Flattened, sorted, deduplicated sum. A single summand is returned as is.
    pub fn sum<I: IntoIterator<Item = Term>>(parts: I) -> Term {
        let mut out = Vec::new();
        for p in parts {
            match p {
                Term::Sum(inner) => out.extend(inner),
                t => out.push(t),
            }
        }
        out.sort();
        out.dedup();
        if out.len() == 1 {
            out.pop().unwrap()
        } else {
            Term::Sum(out)
        }
    }

    pub fn summands(&self) -> &[Term] {
        match self {
            Term::Sum(v) => v,
            t => core::slice::from_ref(t),
        }
    }

    pub fn into_summands(self) -> Vec<Term> {
        match self {
            Term::Sum(v) => v,
            t => vec![t],
        }
    }

    pub fn constr(c: Name, p: Priority, t: Term) -> Term {
        distribute(vec![t], &|mut v| Term::Constr(c.clone(), p, Box::new(v.pop().unwrap())))
    }

    pub fn constr_dual(c: Name, p: Priority, t: Term) -> Term {
        distribute(vec![t], &|mut v| Term::ConstrDual(c.clone(), p, Box::new(v.pop().unwrap())))
    }

    pub fn project(d: Name, p: Priority, t: Term) -> Term {
        distribute(vec![t], &|mut v| Term::Project(d.clone(), p, Box::new(v.pop().unwrap())))
    }

    pub fn daimon(t: Term) -> Term {
        distribute(vec![t], &|mut v| Term::Daimon(Box::new(v.pop().unwrap())))
    }

    pub fn approx(w: Weight, t: Term) -> Term {
        distribute(vec![t], &|mut v| Term::Approx(w.clone(), Box::new(v.pop().unwrap())))
    }

    /// Record with fields in canonical order. Panics on an empty field list.
    pub fn record(mut fields: Vec<(Name, Term)>, p: Priority) -> Term {
        assert!(!fields.is_empty(), "records have at least one field");
        fields.sort_by(|a, b| a.0.cmp(&b.0));
        let names: Vec<Name> = fields.iter().map(|f| f.0.clone()).collect();
        let children = fields.into_iter().map(|f| f.1).collect();
        distribute(children, &|v| Term::Record(names.iter().cloned().zip(v).collect(), p))
    }

    pub fn fun_app(f: Name, args: Vec<Term>) -> Term {
        distribute(args, &|v| Term::FunApp(f.clone(), v))
    }

    /// Immediate subterms.
    pub fn children(&self) -> Vec<&Term> {
        match self {
            Term::Constr(_, _, t)
            | Term::ConstrDual(_, _, t)
            | Term::Project(_, _, t)
            | Term::Daimon(t)
            | Term::Approx(_, t) => vec![&**t],
            Term::Record(fs, _) => fs.iter().map(|f| &f.1).collect(),
            Term::FunApp(_, args) => args.iter().collect(),
            Term::Sum(v) => v.iter().collect(),
            Term::Param(_) | Term::Unknown => Vec::new(),
        }
    }

    /// Number of nodes, not counting sum nodes.
    pub fn size(&self) -> usize {
        let own = usize::from(!matches!(self, Term::Sum(_)));
        own + self.children().into_iter().map(Term::size).sum::<usize>()
    }

    pub fn contains_fun(&self) -> bool {
        matches!(self, Term::FunApp(..)) || self.children().into_iter().any(Term::contains_fun)
    }

    /// Number of function-name nodes.
    pub fn fun_count(&self) -> usize {
        usize::from(matches!(self, Term::FunApp(..))) + self.children().into_iter().map(Term::fun_count).sum::<usize>()
    }

    /// Rebuild bottom-up with `f` applied to every Approx weight.
    pub fn map_weights(&self, f: &dyn Fn(&Weight) -> Weight) -> Term {
        match self {
            Term::Approx(w, t) => Term::approx(f(w), t.map_weights(f)),
            _ => self.map_children(&|c| c.map_weights(f)),
        }
    }

    /// Rebuild this node with `f` applied to each child, through the smart
    /// constructors.
    pub fn map_children(&self, f: &dyn Fn(&Term) -> Term) -> Term {
        match self {
            Term::Constr(c, p, t) => Term::constr(c.clone(), *p, f(t)),
            Term::ConstrDual(c, p, t) => Term::constr_dual(c.clone(), *p, f(t)),
            Term::Project(d, p, t) => Term::project(d.clone(), *p, f(t)),
            Term::Daimon(t) => Term::daimon(f(t)),
            Term::Approx(w, t) => Term::approx(w.clone(), f(t)),
            Term::Record(fs, p) => Term::record(fs.iter().map(|(d, t)| (d.clone(), f(t))).collect(), *p),
            Term::FunApp(g, args) => Term::fun_app(g.clone(), args.iter().map(f).collect()),
            Term::Sum(v) => Term::sum(v.iter().map(f)),
            Term::Param(_) | Term::Unknown => self.clone(),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Constr(c, p, t) => write!(f, "{c}@{p} {t}"),
            Term::ConstrDual(c, p, t) => write!(f, "{c}-@{p} {t}"),
            Term::Project(d, p, t) => write!(f, ".{d}@{p} {t}"),
            Term::Record(fs, p) => {
                f.write_str("{")?;
                for (i, (d, t)) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str("; ")?;
                    }
                    write!(f, "{d}@{p} = {t}")?;
                }
                f.write_str("}")
            }
            Term::FunApp(g, args) => {
                write!(f, "{g}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
            Term::Param(i) => write!(f, "x{i}"),
            Term::Unknown => f.write_str("_"),
            Term::Daimon(t) => write!(f, "? {t}"),
            Term::Approx(w, t) => write!(f, "<{w}> {t}"),
            Term::Sum(v) if v.is_empty() => f.write_str("0"),
            Term::Sum(v) => {
                for (i, t) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" + ")?;
                    }
                    write!(f, "{t}")?;
                }
                Ok(())
            }
        }
    }
}
