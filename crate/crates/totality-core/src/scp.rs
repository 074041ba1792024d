//! The size-change criterion on the loops of a closed call-graph.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::call::{branches, Branch, Call};
use crate::callgraph::CallGraph;
use crate::ops::{ccomp, Bounds};
use crate::order::sqcoh;
use crate::term::Name;
use crate::weight::Priority;

/// Whether a loop must pass the criterion: some summand of `σ ⊛ σ` is
/// weakly coherent with `σ`. A loop composing to 0 is not checked.
pub fn is_checked_loop(sigma: &Call, bounds: Bounds) -> bool {
    let s = sigma.to_term();
    match ccomp(bounds, sigma, sigma) {
        Ok(taus) => taus.iter().any(|tau| sqcoh(&s, &tau.to_term())),
        Err(_) => true,
    }
}

/// Even priority at which the output spine grows, if any. A spine holding
/// `?` never qualifies.
pub fn check_condition1(sigma: &Call) -> Option<Priority> {
    sigma.spine_weight()?.decreasing_priority(false)
}

/// Evidence that argument `arg` (counted from 1) shrinks along `branch` at
/// the odd priority `priority`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decrease {
    pub arg: usize,
    pub branch: Branch,
    pub priority: Priority,
}

/// First argument branch that leads back to its own parameter and
/// decreases at an odd priority.
pub fn check_condition2(sigma: &Call) -> Option<Decrease> {
    sigma.args.iter().enumerate().find_map(|(k, a)| {
        let arg = k + 1;
        branches(a)
            .into_iter()
            .filter(|b| b.param as usize == arg)
            .find_map(|b| b.weight().decreasing_priority(true).map(|priority| Decrease { arg, branch: b, priority }))
    })
}

/// A checked loop failing both conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopFailure {
    pub call: Call,
    pub explanation: String,
}

impl fmt::Display for LoopFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.call, self.explanation)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Total,
    Unknown(Vec<LoopFailure>),
    Error(String),
}

impl Outcome {
    pub fn is_total(&self) -> bool {
        matches!(self, Outcome::Total)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub name: Name,
    pub outcome: Outcome,
    pub bounds: Bounds,
    /// Earlier definitions, reached through calls, that were not found total.
    pub depends_on_unknown: Vec<Name>,
}

fn explain(sigma: &Call) -> String {
    let out = match sigma.spine_weight() {
        None => String::from("the output side contains ?"),
        Some(w) => format!("output weight {w} has no decreasing even priority"),
    };
    format!("{out}; no argument decreases at an odd priority")
}

/// Loops of `closure` that are checked and fail both conditions.
pub fn failing_loops(closure: &CallGraph) -> Vec<LoopFailure> {
    closure
        .loops()
        .filter(|s| is_checked_loop(s, closure.bounds))
        .filter(|s| check_condition1(s).is_none() && check_condition2(s).is_none())
        .map(|s| LoopFailure { call: s.clone(), explanation: explain(s) })
        .collect()
}

/// One verdict per member of the group: all total if every checked loop
/// passes, all unknown otherwise.
pub fn check_definition_group(members: &[Name], closure: &CallGraph) -> Vec<Verdict> {
    let failures = failing_loops(closure);
    let outcome = if failures.is_empty() { Outcome::Total } else { Outcome::Unknown(failures) };
    members
        .iter()
        .map(|m| Verdict {
            name: m.clone(),
            outcome: outcome.clone(),
            bounds: closure.bounds,
            depends_on_unknown: Vec::new(),
        })
        .collect()
}
