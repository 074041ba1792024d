//! Calls of a definition group, the call-graph and its collapsed closure.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;
use core::fmt;

use crate::call::{Call, CallError};
use crate::nf::nf;
use crate::ops::{ccomp, Bounds};
use crate::order::sleq;
use crate::term::{Name, Term};
use crate::typing::{PClause, PDefinition, PExpr, PPattern};

/// `[p := x]`: the destructor chain reaching each variable of the patterns,
/// argument `j` starting from `xj`.
pub fn pattern_substitution(patterns: &[PPattern]) -> BTreeMap<Name, Term> {
    fn go(p: &PPattern, at: Term, out: &mut BTreeMap<Name, Term>) {
        match p {
            PPattern::Var(x) => {
                out.insert(x.clone(), at);
            }
            PPattern::Ctor(c, prio, q) => go(q, Term::constr_dual(c.clone(), *prio, at), out),
            PPattern::Record(fs, prio) => {
                for (d, q) in fs {
                    go(q, Term::project(d.clone(), *prio, at.clone()), out);
                }
            }
        }
    }
    let mut out = BTreeMap::new();
    for (j, p) in patterns.iter().enumerate() {
        go(p, Term::Param(j as u32 + 1), &mut out);
    }
    out
}

/// Term of an expression under `[p := x]`. Calls to functions outside
/// `group` become `? (a1 + ... + ak)`, or `? _` without arguments.
pub fn expr_to_term(e: &PExpr, sub: &BTreeMap<Name, Term>, group: &BTreeSet<Name>) -> Term {
    let go = |x: &PExpr| expr_to_term(x, sub, group);
    match e {
        PExpr::Var(x) => sub[x].clone(),
        PExpr::Ctor(c, p, x) => Term::constr(c.clone(), *p, go(x)),
        PExpr::Record(fs, p) => Term::record(fs.iter().map(|(d, x)| (d.clone(), go(x))).collect(), *p),
        PExpr::Project(x, d, p) => Term::project(d.clone(), *p, go(x)),
        PExpr::Call(g, args) if group.contains(g) => Term::fun_app(g.clone(), args.iter().map(go).collect()),
        PExpr::Call(_, args) if args.is_empty() => Term::daimon(Term::Unknown),
        PExpr::Call(_, args) => Term::daimon(Term::sum(args.iter().map(go))),
    }
}

/// Body of one clause as a term over the parameters.
pub fn body_to_term(clause: &PClause, group: &BTreeSet<Name>) -> Term {
    expr_to_term(&clause.body, &pattern_substitution(&clause.patterns), group)
}

/// `T_f`: the sum of the clause bodies.
pub fn definition_term(def: &PDefinition, group: &BTreeSet<Name>) -> Term {
    Term::sum(def.clauses.iter().map(|c| body_to_term(c, group)))
}

/// Replace every function application by `?` of its arguments.
fn without_calls(t: &Term) -> Term {
    match t {
        Term::FunApp(_, args) if args.is_empty() => Term::daimon(Term::Unknown),
        Term::FunApp(_, args) => Term::daimon(Term::sum(args.iter().map(without_calls))),
        _ => t.map_children(&without_calls),
    }
}

/// `G(t)`: sum of terms with exactly one function name each.
fn graph_term(t: &Term, fnames: &BTreeSet<Name>) -> Term {
    let go = |s: &Term| graph_term(s, fnames);
    match t {
        Term::Sum(v) => Term::sum(v.iter().map(go)),
        Term::FunApp(f, args) => {
            let inner = args.iter().map(|a| Term::daimon(go(a)));
            if fnames.contains(f) {
                let own = Term::fun_app(f.clone(), args.iter().map(without_calls).collect());
                Term::sum(core::iter::once(own).chain(inner))
            } else {
                Term::sum(inner)
            }
        }
        Term::Param(_) | Term::Unknown => Term::zero(),
        Term::Record(fs, p) => Term::sum(fs.iter().map(|(d, s)| Term::record(alloc::vec![(d.clone(), go(s))], *p))),
        _ => t.map_children(&go),
    }
}

/// Calls from `caller` found in `t`, normalized but not collapsed.
pub fn extract_calls(caller: &Name, t: &Term, fnames: &BTreeSet<Name>) -> Result<Vec<Call>, CallError> {
    let mut out = Vec::new();
    for s in graph_term(t, fnames).summands() {
        for u in nf(s).summands() {
            out.push(Call::from_term(caller, u)?);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Calls between the members of a group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CallGraph {
    pub vertices: Vec<Name>,
    pub edges: BTreeSet<Call>,
    pub bounds: Bounds,
}

impl CallGraph {
    pub fn loops(&self) -> impl Iterator<Item = &Call> {
        self.edges.iter().filter(|c| c.is_loop())
    }
}

impl fmt::Display for CallGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.edges.iter().try_for_each(|e| writeln!(f, "{e}"))
    }
}

/// Collapse a call into the bounded space; it may split or vanish.
pub fn collapse_call(bounds: Bounds, c: &Call) -> Result<Vec<Call>, CallError> {
    bounds.collapse(&c.to_term()).summands().iter().map(|s| Call::from_term(&c.caller, s)).collect()
}

/// Initial call-graph of a group, every call already collapsed.
pub fn build_callgraph(defs: &[PDefinition], bounds: Bounds) -> Result<CallGraph, CallError> {
    let names: BTreeSet<Name> = defs.iter().map(|d| d.name.clone()).collect();
    let mut edges = BTreeSet::new();
    for d in defs {
        for c in extract_calls(&d.name, &definition_term(d, &names), &names)? {
            edges.extend(collapse_call(bounds, &c)?);
        }
    }
    Ok(CallGraph { vertices: defs.iter().map(|d| d.name.clone()).collect(), edges, bounds })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClosureOptions {
    /// Drop candidates equivalent, for the order, to an existing call with
    /// the same endpoints.
    pub subsumption: bool,
    pub max_edges: usize,
}

impl Default for ClosureOptions {
    fn default() -> ClosureOptions {
        ClosureOptions { subsumption: true, max_edges: 100_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ClosureError {
    #[error("the closure exceeded {0} calls")]
    TooLarge(usize),
    #[error(transparent)]
    Call(#[from] CallError),
}

/// `s ⊴ t` and `t ⊴ s`. Dropping a call that is only above another one can
/// hide a failing loop: `<{0:-1}> f()` is below `<{0:-1,1:-1}> f()`.
pub fn equivalent(s: &Term, t: &Term) -> bool {
    sleq(s, t) && sleq(t, s)
}

/// Saturate `g` under collapsed composition. A composite `β ⊛ α` of
/// `α: f → g` and `β: g → h` is an edge `f → h`.
pub fn transitive_closure(g: &CallGraph, opts: ClosureOptions) -> Result<CallGraph, ClosureError> {
    let mut edges: Vec<Call> = Vec::new();
    let mut set: BTreeSet<Call> = BTreeSet::new();
    let mut todo: VecDeque<usize> = VecDeque::new();
    let add = |c: Call, edges: &mut Vec<Call>, set: &mut BTreeSet<Call>, todo: &mut VecDeque<usize>| {
        if set.contains(&c) {
            return;
        }
        if opts.subsumption {
            let t = c.to_term();
            let subsumed =
                edges.iter().any(|e| e.caller == c.caller && e.callee == c.callee && equivalent(&e.to_term(), &t));
            if subsumed {
                return;
            }
        }
        set.insert(c.clone());
        todo.push_back(edges.len());
        edges.push(c);
    };
    for e in &g.edges {
        add(e.clone(), &mut edges, &mut set, &mut todo);
    }
    while let Some(i) = todo.pop_front() {
        let mut k = 0;
        while k < edges.len() {
            let (e, other) = (edges[i].clone(), edges[k].clone());
            let mut found = Vec::new();
            if other.callee == e.caller {
                found.extend(ccomp(g.bounds, &e, &other)?);
            }
            if e.callee == other.caller && k != i {
                found.extend(ccomp(g.bounds, &other, &e)?);
            }
            for c in found {
                add(c, &mut edges, &mut set, &mut todo);
            }
            if edges.len() > opts.max_edges {
                return Err(ClosureError::TooLarge(opts.max_edges));
            }
            k += 1;
        }
    }
    Ok(CallGraph { vertices: g.vertices.clone(), edges: set, bounds: g.bounds })
}
