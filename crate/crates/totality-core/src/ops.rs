//! Substitution, composition and the two collapsing functions.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::call::{Call, CallError};
use crate::nf::{nf, rebuild_delta, split_delta, Reducer};
use crate::term::{Name, Term};
use crate::weight::Weight;

/// Simultaneous substitution of parameters.
pub fn substitute(t: &Term, bindings: &BTreeMap<u32, Term>) -> Term {
    match t {
        Term::Param(i) => bindings.get(i).cloned().unwrap_or_else(|| t.clone()),
        _ => t.map_children(&|c| substitute(c, bindings)),
    }
}

fn compose_raw(t1: &Term, t2: &Term, fname: &str) -> Term {
    match t1 {
        Term::FunApp(g, args) if &**g == fname => {
            let bindings = args.iter().enumerate().map(|(j, a)| (j as u32 + 1, compose_raw(a, t2, fname))).collect();
            substitute(t2, &bindings)
        }
        _ => t1.map_children(&|c| compose_raw(c, t2, fname)),
    }
}

/// `t1 ∘ t2`: every occurrence `fname(u1..un)` in `t1` becomes `t2` with
/// `xj := uj ∘ t2`. The result is normalized.
pub fn compose(t1: &Term, t2: &Term, fname: &str) -> Term {
    nf(&compose_raw(t1, t2, fname))
}

/// Bound every weight component into `{-B, ..., B-1, ∞}`.
pub fn collapse_weights(bound: u32, t: &Term) -> Term {
    t.map_weights(&|w: &Weight| w.collapse(bound))
}

/// Keep `depth` constructor layers from the root and `depth` destructors
/// above each leaf, absorbing the rest into weights. Arguments of function
/// names are collapsed the same way.
pub fn collapse_depth(depth: u32, t: &Term) -> Term {
    collapse_depth_with(Reducer::default(), depth, t)
}

/// [`collapse_depth`] normalizing with `red`.
pub fn collapse_depth_with(red: Reducer, depth: u32, t: &Term) -> Term {
    let n = red.nf(t);
    Term::sum(n.summands().iter().map(|u| red.nf(&keep_layers(red, depth, depth, u))))
}

fn keep_layers(red: Reducer, depth: u32, i: u32, u: &Term) -> Term {
    match u {
        Term::Constr(c, p, s) if i > 0 => Term::constr(c.clone(), *p, keep_layers(red, depth, i - 1, s)),
        Term::Record(fs, p) if i > 0 => {
            Term::record(fs.iter().map(|(d, s)| (d.clone(), keep_layers(red, depth, i - 1, s))).collect(), *p)
        }
        Term::Constr(..) | Term::Record(..) => {
            let absorbed = red.nf(&Term::approx(Weight::zero(), u.clone()));
            Term::sum(absorbed.summands().iter().map(|a| keep_layers(red, depth, 0, a)))
        }
        Term::Daimon(s) => Term::daimon(keep_destructors(red, depth, s)),
        Term::Approx(w, s) => Term::approx(w.clone(), keep_destructors(red, depth, s)),
        _ => keep_destructors(red, depth, u),
    }
}

fn keep_destructors(red: Reducer, depth: u32, delta: &Term) -> Term {
    let (items, leaf) = split_delta(delta);
    let leaf = match leaf {
        Term::FunApp(f, args) => {
            Term::fun_app(f.clone(), args.iter().map(|a| collapse_depth_with(red, depth, a)).collect())
        }
        other => other.clone(),
    };
    let depth = depth as usize;
    if items.len() < depth {
        return rebuild_delta(&items, leaf);
    }
    let (outer, inner): (Vec<_>, Vec<_>) = {
        let k = items.len() - depth;
        (items[..k].to_vec(), items[k..].to_vec())
    };
    rebuild_delta(&outer, Term::approx(Weight::zero(), rebuild_delta(&inner, leaf)))
}

/// Weight and depth bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Bounds {
    pub b: u32,
    pub d: u32,
}

impl Bounds {
    pub fn new(b: u32, d: u32) -> Bounds {
        assert!(b >= 1, "the weight bound is at least 1");
        Bounds { b, d }
    }

    /// `cB(cD(t))`.
    pub fn collapse(&self, t: &Term) -> Term {
        self.collapse_with(Reducer::default(), t)
    }

    pub fn collapse_with(&self, red: Reducer, t: &Term) -> Term {
        collapse_weights(self.b, &collapse_depth_with(red, self.d, t))
    }
}

impl Default for Bounds {
    fn default() -> Bounds {
        Bounds { b: 2, d: 2 }
    }
}

/// Collapsed composition `β ⊛ α` of `α: f → g` followed by `β: g → h`.
/// Summands that reduce to 0 disappear, so the result may be empty.
pub fn ccomp(bounds: Bounds, beta: &Call, alpha: &Call) -> Result<Vec<Call>, CallError> {
    debug_assert_eq!(beta.caller, alpha.callee);
    let t = compose(&alpha.to_term(), &beta.to_term(), &alpha.callee);
    ccomp_term(bounds, &alpha.caller, &t)
}

pub(crate) fn ccomp_term(bounds: Bounds, caller: &Name, t: &Term) -> Result<Vec<Call>, CallError> {
    bounds.collapse(t).summands().iter().map(|s| Call::from_term(caller, s)).collect()
}
