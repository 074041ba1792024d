//! From source text to verdicts.
//!
//! [`prepare`] runs the sequential part (typing needs the types of earlier
//! definitions), [`analyze`] handles one group on its own and [`finish`]
//! links verdicts across groups. [`check_source`] does all three.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::callgraph::{build_callgraph, transitive_closure, CallGraph, ClosureOptions};
use crate::ops::Bounds;
use crate::scp::{check_definition_group, Outcome, Verdict};
use crate::surface::{
    desugar, parse_program, validate_restrictions, CExpr, CGroup, CheckedProgram, Pos, SyntaxError, Violation,
};
use crate::term::Name;
use crate::typing::{
    annotate_group, annotate_priorities, assign_priorities, FunEnv, PDefinition, PriorityMap, TypeEnv, TypeError,
};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Options {
    /// Bounds for groups without a pragma; a pragma overrides each bound it
    /// mentions.
    pub bounds: Bounds,
    pub closure: ClosureOptions,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CheckError {
    #[error("{}", join(.0))]
    Syntax(Vec<SyntaxError>),
    #[error("{}", join(.0))]
    Invalid(Vec<Violation>),
    #[error(transparent)]
    Type(#[from] TypeError),
}

fn join<T: core::fmt::Display>(v: &[T]) -> String {
    v.iter().map(|e| format!("{e}")).collect::<Vec<_>>().join("\n")
}

/// A typed group ready for analysis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreparedGroup {
    pub names: Vec<Name>,
    pub pos: Pos,
    pub bounds: Bounds,
    pub priorities: Result<PriorityMap, String>,
    pub defs: Vec<PDefinition>,
    /// Functions outside the group called by each member.
    pub callees: BTreeMap<Name, BTreeSet<Name>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupReport {
    pub names: Vec<Name>,
    pub pos: Pos,
    pub bounds: Bounds,
    pub priorities: Option<PriorityMap>,
    pub callgraph: Option<CallGraph>,
    pub closure: Option<CallGraph>,
    pub verdicts: Vec<Verdict>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub groups: Vec<GroupReport>,
}

impl Report {
    pub fn verdicts(&self) -> impl Iterator<Item = &Verdict> {
        self.groups.iter().flat_map(|g| g.verdicts.iter())
    }

    pub fn verdict(&self, name: &str) -> Option<&Verdict> {
        self.verdicts().find(|v| &*v.name == name)
    }

    pub fn group_of(&self, name: &str) -> Option<&GroupReport> {
        self.groups.iter().find(|g| g.names.iter().any(|n| &**n == name))
    }
}

fn callees(e: &CExpr, out: &mut BTreeSet<Name>) {
    match e {
        CExpr::Var(_) => {}
        CExpr::Ctor(_, x) | CExpr::Project(x, _) => callees(x, out),
        CExpr::Record(fs) => fs.iter().for_each(|(_, x)| callees(x, out)),
        CExpr::Call(g, args) => {
            out.insert(g.clone());
            args.iter().for_each(|a| callees(a, out));
        }
    }
}

fn group_bounds(g: &CGroup, default: Bounds) -> Bounds {
    let p = g.pragma.unwrap_or_default();
    Bounds::new(p.b.unwrap_or(default.b), p.d.unwrap_or(default.d))
}

/// Type every group and assign priorities.
pub fn prepare(program: &CheckedProgram, opts: &Options) -> Result<Vec<PreparedGroup>, TypeError> {
    let env = TypeEnv::new(&program.types);
    let mut funs = FunEnv::new();
    let mut out = Vec::new();
    for g in &program.groups {
        let names = g.names();
        let typed = annotate_group(g, &env, &mut funs)?;
        let mut outside = BTreeMap::new();
        for d in &g.defs {
            let mut set = BTreeSet::new();
            d.clauses.iter().for_each(|c| callees(&c.body, &mut set));
            set.retain(|f| !names.contains(f));
            outside.insert(d.name.clone(), set);
        }
        let (priorities, defs) = match assign_priorities(&typed, &env)
            .and_then(|pm| annotate_priorities(&typed, &pm).map(|defs| (pm, defs)))
        {
            Ok((pm, defs)) => (Ok(pm), defs),
            Err(e) => (Err(format!("{e}")), Vec::new()),
        };
        out.push(PreparedGroup {
            names,
            pos: g.pos,
            bounds: group_bounds(g, opts.bounds),
            priorities,
            defs,
            callees: outside,
        });
    }
    Ok(out)
}

fn error_report(g: &PreparedGroup, priorities: Option<PriorityMap>, message: String) -> GroupReport {
    let verdicts = g
        .names
        .iter()
        .map(|n| Verdict {
            name: n.clone(),
            outcome: Outcome::Error(message.clone()),
            bounds: g.bounds,
            depends_on_unknown: Vec::new(),
        })
        .collect();
    GroupReport {
        names: g.names.clone(),
        pos: g.pos,
        bounds: g.bounds,
        priorities,
        callgraph: None,
        closure: None,
        verdicts,
    }
}

/// Call-graph, closure and verdicts of one group.
pub fn analyze(g: &PreparedGroup, opts: &Options) -> GroupReport {
    let pm = match &g.priorities {
        Ok(pm) => pm.clone(),
        Err(e) => return error_report(g, None, e.clone()),
    };
    let graph = match build_callgraph(&g.defs, g.bounds) {
        Ok(graph) => graph,
        Err(e) => return error_report(g, Some(pm), format!("{e}")),
    };
    let closure = match transitive_closure(&graph, opts.closure) {
        Ok(c) => c,
        Err(e) => return error_report(g, Some(pm), format!("{e}")),
    };
    let verdicts = check_definition_group(&g.names, &closure);
    GroupReport {
        names: g.names.clone(),
        pos: g.pos,
        bounds: g.bounds,
        priorities: Some(pm),
        callgraph: Some(graph),
        closure: Some(closure),
        verdicts,
    }
}

/// Fill in `depends_on_unknown`: earlier definitions reached through calls
/// whose verdict is not total.
pub fn finish(prepared: &[PreparedGroup], mut groups: Vec<GroupReport>) -> Report {
    let mut flagged: BTreeMap<Name, BTreeSet<Name>> = BTreeMap::new();
    let mut total: BTreeMap<Name, bool> = BTreeMap::new();
    for (p, r) in prepared.iter().zip(groups.iter_mut()) {
        for v in &mut r.verdicts {
            let mut deps = BTreeSet::new();
            for g in p.callees.get(&v.name).into_iter().flatten() {
                if total.get(g) == Some(&false) {
                    deps.insert(g.clone());
                }
                deps.extend(flagged.get(g).into_iter().flatten().cloned());
            }
            v.depends_on_unknown = deps.iter().cloned().collect();
            flagged.insert(v.name.clone(), deps);
        }
        for v in &r.verdicts {
            total.insert(v.name.clone(), v.outcome.is_total());
        }
    }
    Report { groups }
}

/// Check a validated program.
pub fn check_program(program: &CheckedProgram, opts: &Options) -> Result<Report, TypeError> {
    let prepared = prepare(program, opts)?;
    let groups = prepared.iter().map(|g| analyze(g, opts)).collect();
    Ok(finish(&prepared, groups))
}

/// Parse, desugar, validate and check.
pub fn front_end(src: &str) -> Result<CheckedProgram, CheckError> {
    let program = parse_program(src).map_err(CheckError::Syntax)?;
    validate_restrictions(&desugar(&program)).map_err(CheckError::Invalid)
}

pub fn check_source(src: &str, opts: &Options) -> Result<Report, CheckError> {
    Ok(check_program(&front_end(src)?, opts)?)
}
