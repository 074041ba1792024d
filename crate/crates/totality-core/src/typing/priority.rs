//! Parity priorities for the type instances of a definition group, and the
//! priority-annotated syntax that the call-graph is built from.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::env::TypeEnv;
use super::infer::{TExpr, TGroup, TPattern};
use super::TypeExpr;
use crate::surface::{Polarity, Pos};
use crate::term::Name;
use crate::weight::Priority;

/// Priority of every type instance of a group.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PriorityMap(pub BTreeMap<TypeExpr, Priority>);

impl PriorityMap {
    pub fn get(&self, t: &TypeExpr) -> Option<Priority> {
        self.0.get(t).copied()
    }

    /// Instances sorted by priority, then by instance.
    pub fn sorted(&self) -> Vec<(&TypeExpr, Priority)> {
        let mut v: Vec<_> = self.0.iter().map(|(t, p)| (t, *p)).collect();
        v.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(b.0)));
        v
    }
}

impl fmt::Display for PriorityMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (t, p) in self.sorted() {
            writeln!(f, "{t} \u{21a6} {p}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("priority assignment failed: {0}")]
pub struct PriorityError(pub String);

fn opaque(t: &TypeExpr) -> bool {
    !matches!(t, TypeExpr::App(..))
}

fn collect_pattern(p: &TPattern, out: &mut BTreeSet<TypeExpr>) {
    match p {
        TPattern::Var(..) => {}
        TPattern::Ctor(_, t, q) => {
            out.insert(t.clone());
            collect_pattern(q, out);
        }
        TPattern::Record(fs, t) => {
            out.insert(t.clone());
            fs.iter().for_each(|(_, q)| collect_pattern(q, out));
        }
    }
}

fn collect_expr(e: &TExpr, out: &mut BTreeSet<TypeExpr>) {
    match e {
        TExpr::Var(..) => {}
        TExpr::Ctor(_, t, x) => {
            out.insert(t.clone());
            collect_expr(x, out);
        }
        TExpr::Record(fs, t) => {
            out.insert(t.clone());
            fs.iter().for_each(|(_, x)| collect_expr(x, out));
        }
        TExpr::Project(x, _, t) => {
            out.insert(t.clone());
            collect_expr(x, out);
        }
        TExpr::Call(_, args) => args.iter().for_each(|a| collect_expr(a, out)),
    }
}

/// Instances appearing in the annotations of `group`.
pub fn group_instances(group: &TGroup) -> BTreeSet<TypeExpr> {
    let mut out = BTreeSet::new();
    for d in &group.defs {
        for c in &d.clauses {
            c.patterns.iter().for_each(|p| collect_pattern(p, &mut out));
            collect_expr(&c.body, &mut out);
        }
    }
    out
}

fn is_product(t: &TypeExpr) -> bool {
    t.head().is_some_and(|h| &**h == "prod" || &**h == "prod3")
}

/// Assign priorities to `instances` closed under subexpressions and
/// unfolding: data instances get odd numbers, codata instances even ones,
/// and `S` gets a larger number than `T` when `S` is a proper subexpression
/// of `T`, or when `S` is reachable from `T` by unfolding without `T` being
/// reachable from `S`. Products are exempt from the second rule. Each
/// instance gets the least number allowed.
pub fn assign_instances(instances: &BTreeSet<TypeExpr>, env: &TypeEnv) -> Result<PriorityMap, PriorityError> {
    let mut all: BTreeSet<TypeExpr> = BTreeSet::new();
    let mut todo: Vec<TypeExpr> = instances.iter().filter(|t| !opaque(t)).cloned().collect();
    while let Some(t) = todo.pop() {
        if !all.insert(t.clone()) {
            continue;
        }
        for s in t.proper_subexpressions().into_iter().cloned().chain(env.unfold(&t)) {
            if !opaque(&s) && !all.contains(&s) {
                todo.push(s);
            }
        }
    }
    let idx: Vec<TypeExpr> = all.into_iter().collect();
    let n = idx.len();
    let pos = |t: &TypeExpr| idx.binary_search(t).ok();
    let mut reach = alloc::vec![alloc::vec![false; n]; n];
    for (i, t) in idx.iter().enumerate() {
        for s in env.unfold(t) {
            if let Some(j) = pos(&s) {
                reach[i][j] = true;
            }
        }
    }
    for k in 0..n {
        let via = reach[k].clone();
        for row in reach.iter_mut().filter(|r| r[k]) {
            row.iter_mut().zip(&via).for_each(|(x, &y)| *x |= y);
        }
    }
    // above[s] lists the instances that s must exceed.
    let mut above: Vec<BTreeSet<usize>> = alloc::vec![BTreeSet::new(); n];
    for (t, ti) in idx.iter().zip(0..) {
        for s in t.proper_subexpressions() {
            if let Some(si) = pos(s) {
                above[si].insert(ti);
            }
        }
        for si in 0..n {
            let same_scc = si == ti || (reach[ti][si] && reach[si][ti]);
            if reach[ti][si] && !same_scc && !is_product(&idx[si]) {
                above[si].insert(ti);
            }
        }
    }
    let parity = |t: &TypeExpr| match env.polarity(t) {
        Some(Polarity::Data) => 1,
        _ => 0,
    };
    // 0 = unvisited, 1 = in progress, 2 = done
    let mut state = alloc::vec![0u8; n];
    let mut prio: Vec<Priority> = alloc::vec![0; n];
    fn visit(
        i: usize,
        above: &[BTreeSet<usize>],
        parities: &[Priority],
        state: &mut [u8],
        prio: &mut [Priority],
        idx: &[TypeExpr],
    ) -> Result<(), PriorityError> {
        match state[i] {
            2 => return Ok(()),
            1 => return Err(PriorityError(format!("cyclic constraints through `{}`", idx[i]))),
            _ => {}
        }
        state[i] = 1;
        let mut least = parities[i];
        for &j in &above[i] {
            visit(j, above, parities, state, prio, idx)?;
            while least <= prio[j] {
                least += 2;
            }
        }
        prio[i] = least;
        state[i] = 2;
        Ok(())
    }
    let parities: Vec<Priority> = idx.iter().map(parity).collect();
    for i in 0..n {
        visit(i, &above, &parities, &mut state, &mut prio, &idx)?;
    }
    Ok(PriorityMap(idx.into_iter().zip(prio).collect()))
}

/// Priorities for the instances of an annotated group.
pub fn assign_priorities(group: &TGroup, env: &TypeEnv) -> Result<PriorityMap, PriorityError> {
    assign_instances(&group_instances(group), env)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PPattern {
    Var(Name),
    Ctor(Name, Priority, Box<PPattern>),
    Record(Vec<(Name, PPattern)>, Priority),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PExpr {
    Var(Name),
    Ctor(Name, Priority, Box<PExpr>),
    Record(Vec<(Name, PExpr)>, Priority),
    Project(Box<PExpr>, Name, Priority),
    Call(Name, Vec<PExpr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PClause {
    pub patterns: Vec<PPattern>,
    pub body: PExpr,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PDefinition {
    pub name: Name,
    pub arity: usize,
    pub clauses: Vec<PClause>,
    pub pos: Pos,
}

fn lookup(pm: &PriorityMap, t: &TypeExpr) -> Result<Priority, PriorityError> {
    pm.get(t).ok_or_else(|| PriorityError(format!("no priority for `{t}`")))
}

fn annotate_pattern(p: &TPattern, pm: &PriorityMap) -> Result<PPattern, PriorityError> {
    Ok(match p {
        TPattern::Var(x, _) => PPattern::Var(x.clone()),
        TPattern::Ctor(c, t, q) => PPattern::Ctor(c.clone(), lookup(pm, t)?, Box::new(annotate_pattern(q, pm)?)),
        TPattern::Record(fs, t) => PPattern::Record(
            fs.iter().map(|(d, q)| Ok((d.clone(), annotate_pattern(q, pm)?))).collect::<Result<_, _>>()?,
            lookup(pm, t)?,
        ),
    })
}

fn annotate_expr(e: &TExpr, pm: &PriorityMap) -> Result<PExpr, PriorityError> {
    Ok(match e {
        TExpr::Var(x, _) => PExpr::Var(x.clone()),
        TExpr::Ctor(c, t, x) => PExpr::Ctor(c.clone(), lookup(pm, t)?, Box::new(annotate_expr(x, pm)?)),
        TExpr::Record(fs, t) => PExpr::Record(
            fs.iter().map(|(d, x)| Ok((d.clone(), annotate_expr(x, pm)?))).collect::<Result<_, _>>()?,
            lookup(pm, t)?,
        ),
        TExpr::Project(x, d, t) => PExpr::Project(Box::new(annotate_expr(x, pm)?), d.clone(), lookup(pm, t)?),
        TExpr::Call(g, args) => {
            PExpr::Call(g.clone(), args.iter().map(|a| annotate_expr(a, pm)).collect::<Result<_, _>>()?)
        }
    })
}

/// Replace types by priorities; the types are not needed afterwards.
pub fn annotate_priorities(group: &TGroup, pm: &PriorityMap) -> Result<Vec<PDefinition>, PriorityError> {
    group
        .defs
        .iter()
        .map(|d| {
            let clauses = d
                .clauses
                .iter()
                .map(|c| {
                    Ok(PClause {
                        patterns: c.patterns.iter().map(|p| annotate_pattern(p, pm)).collect::<Result<_, _>>()?,
                        body: annotate_expr(&c.body, pm)?,
                        pos: c.pos,
                    })
                })
                .collect::<Result<_, PriorityError>>()?;
            Ok(PDefinition { name: d.name.clone(), arity: d.arity, clauses, pos: d.pos })
        })
        .collect()
}

fn fields<T: fmt::Display>(f: &mut fmt::Formatter<'_>, fs: &[(Name, T)], p: Priority) -> fmt::Result {
    f.write_str("{")?;
    for (i, (d, x)) in fs.iter().enumerate() {
        if i > 0 {
            f.write_str(" ; ")?;
        }
        write!(f, "{d}@{p} = {x}")?;
    }
    f.write_str("}")
}

fn atom<T: fmt::Display>(f: &mut fmt::Formatter<'_>, x: &T, simple: bool) -> fmt::Result {
    if simple {
        write!(f, "{x}")
    } else {
        write!(f, "({x})")
    }
}

impl fmt::Display for PPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PPattern::Var(x) => f.write_str(x),
            PPattern::Ctor(c, p, q) => {
                write!(f, "{c}@{p} ")?;
                atom(f, q, !matches!(**q, PPattern::Ctor(..)))
            }
            PPattern::Record(fs, p) => fields(f, fs, *p),
        }
    }
}

impl fmt::Display for PExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let simple = |e: &PExpr| match e {
            PExpr::Ctor(..) => false,
            PExpr::Call(_, args) => args.is_empty(),
            _ => true,
        };
        match self {
            PExpr::Var(x) => f.write_str(x),
            PExpr::Ctor(c, p, x) => {
                write!(f, "{c}@{p} ")?;
                atom(f, x, simple(x))
            }
            PExpr::Record(fs, p) => fields(f, fs, *p),
            PExpr::Project(x, d, p) => {
                atom(f, x, simple(x))?;
                write!(f, ".{d}@{p}")
            }
            PExpr::Call(g, args) => {
                f.write_str(g)?;
                args.iter().try_for_each(|a| {
                    f.write_str(" ")?;
                    atom(f, a, simple(a))
                })
            }
        }
    }
}

impl fmt::Display for PClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.patterns {
            atom(f, p, !matches!(p, PPattern::Ctor(..)))?;
            f.write_str(" ")?;
        }
        write!(f, "= {}", self.body)
    }
}
