//! Calls, branches and branch weights.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::term::{Name, Term};
use crate::weight::{Priority, Weight};

/// One layer on a path through a normal form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Item {
    Constr(Name, Priority),
    /// A record field `{D = ...}` entered on the way down.
    Field(Name, Priority),
    Approx(Weight),
    Daimon,
    ConstrDual(Name, Priority),
    Project(Name, Priority),
}

impl fmt::Display for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Item::Constr(c, p) => write!(f, "{c}@{p}"),
            Item::Field(d, p) => write!(f, "{{{d}}}@{p}"),
            Item::Approx(w) => write!(f, "<{w}>"),
            Item::Daimon => f.write_str("?"),
            Item::ConstrDual(c, p) => write!(f, "{c}-@{p}"),
            Item::Project(d, p) => write!(f, ".{d}@{p}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Argument side: constructors count `+1`.
    Standard,
    /// Output side of a call: constructors count `-1`.
    Dual,
}

/// Sum of the contributions of `items`. A `Daimon` item contributes nothing.
pub fn branch_weight(items: &[Item], mode: Mode) -> Weight {
    let s = if mode == Mode::Standard { 1 } else { -1 };
    items.iter().fold(Weight::zero(), |w, item| match item {
        Item::Constr(_, p) | Item::Field(_, p) => w.add_at(*p, s),
        Item::ConstrDual(_, p) | Item::Project(_, p) => w.add_at(*p, -s),
        Item::Approx(v) => w.add(v),
        Item::Daimon => w,
    })
}

/// A root-to-parameter path.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Branch {
    pub items: Vec<Item>,
    pub param: u32,
}

impl Branch {
    pub fn weight(&self) -> Weight {
        branch_weight(&self.items, Mode::Standard)
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for item in &self.items {
            write!(f, "{item} ")?;
        }
        write!(f, "x{}", self.param)
    }
}

/// Branches of a function-free normal form. Paths ending under `?`, at the
/// unknown leaf or at a function name yield nothing.
pub fn branches(t: &Term) -> Vec<Branch> {
    let mut out = Vec::new();
    collect_branches(t, &mut Vec::new(), &mut out);
    out
}

fn collect_branches(t: &Term, prefix: &mut Vec<Item>, out: &mut Vec<Branch>) {
    let down = |item: Item, s: &Term, prefix: &mut Vec<Item>, out: &mut Vec<Branch>| {
        prefix.push(item);
        collect_branches(s, prefix, out);
        prefix.pop();
    };
    match t {
        Term::Param(i) => out.push(Branch { items: prefix.clone(), param: *i }),
        Term::Sum(v) => v.iter().for_each(|s| collect_branches(s, prefix, out)),
        Term::Constr(c, p, s) => down(Item::Constr(c.clone(), *p), s, prefix, out),
        Term::ConstrDual(c, p, s) => down(Item::ConstrDual(c.clone(), *p), s, prefix, out),
        Term::Project(d, p, s) => down(Item::Project(d.clone(), *p), s, prefix, out),
        Term::Approx(w, s) => down(Item::Approx(w.clone()), s, prefix, out),
        Term::Record(fs, p) => {
            for (d, s) in fs {
                down(Item::Field(d.clone(), *p), s, prefix, out);
            }
        }
        Term::Daimon(_) | Term::Unknown | Term::FunApp(..) => {}
    }
}

/// A call `caller x̄ ↦ spine callee(args)`.
///
/// Weights stored in the spine count output constructors negatively.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Call {
    pub caller: Name,
    pub callee: Name,
    pub spine: Vec<Item>,
    pub args: Vec<Term>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed call from `{caller}`: {message}")]
pub struct CallError {
    pub caller: Name,
    pub message: String,
}

impl Call {
    pub fn is_loop(&self) -> bool {
        self.caller == self.callee
    }

    pub fn to_term(&self) -> Term {
        let mut t = Term::FunApp(self.callee.clone(), self.args.clone());
        for item in self.spine.iter().rev() {
            t = match item {
                Item::Constr(c, p) => Term::Constr(c.clone(), *p, Box::new(t)),
                Item::Field(d, p) => Term::Record(vec![(d.clone(), t)], *p),
                Item::Approx(w) => Term::Approx(w.clone(), Box::new(t)),
                Item::Daimon => Term::Daimon(Box::new(t)),
                Item::ConstrDual(c, p) => Term::ConstrDual(c.clone(), *p, Box::new(t)),
                Item::Project(d, p) => Term::Project(d.clone(), *p, Box::new(t)),
            };
        }
        t
    }

    /// Read a call off a simple normal form with exactly one function name.
    pub fn from_term(caller: &Name, t: &Term) -> Result<Call, CallError> {
        let err = |message: &str| CallError { caller: caller.clone(), message: message.into() };
        let mut spine = Vec::new();
        let mut cur = t;
        loop {
            match cur {
                Term::Constr(c, p, s) => {
                    spine.push(Item::Constr(c.clone(), *p));
                    cur = s;
                }
                Term::Record(fs, p) if fs.len() == 1 => {
                    spine.push(Item::Field(fs[0].0.clone(), *p));
                    cur = &fs[0].1;
                }
                Term::Approx(w, s) => {
                    spine.push(Item::Approx(w.clone()));
                    cur = s;
                }
                Term::Daimon(s) => {
                    spine.push(Item::Daimon);
                    cur = s;
                }
                Term::ConstrDual(c, p, s) => {
                    spine.push(Item::ConstrDual(c.clone(), *p));
                    cur = s;
                }
                Term::Project(d, p, s) => {
                    spine.push(Item::Project(d.clone(), *p));
                    cur = s;
                }
                Term::FunApp(g, args) => {
                    if args.iter().any(Term::contains_fun) {
                        return Err(err("nested function name"));
                    }
                    return Ok(Call { caller: caller.clone(), callee: g.clone(), spine, args: args.clone() });
                }
                Term::Record(..) => return Err(err("record with several fields above the call")),
                Term::Param(_) | Term::Unknown | Term::Sum(_) => return Err(err("no function name")),
            }
        }
    }

    /// Weight of the spine read as a dual branch; `None` if it contains `?`.
    pub fn spine_weight(&self) -> Option<Weight> {
        if self.spine.contains(&Item::Daimon) {
            None
        } else {
            Some(branch_weight(&self.spine, Mode::Dual))
        }
    }
}

impl fmt::Display for Call {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.caller, self.to_term())
    }
}
