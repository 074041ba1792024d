//! The property suite: algebraic laws of the core crate checked on random
//! and enumerated inputs, with fixed seeds.

use std::fmt;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestError, TestRng, TestRunner};
use rand::seq::index::sample;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use totality_core::callgraph::{transitive_closure, CallGraph, ClosureOptions};
use totality_core::{
    ccomp, check_source, collapse_depth, collapse_weights, compose, is_normal, nf, sleq, sqcoh, Bounds, Call, Options,
    Reducer, Term,
};

use crate::corpus::CORPUS;
use crate::gen::{call_strategy, term_strategy, Alphabet};
use crate::oracle::{reachable, TermUniverse, UniverseParams};

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Cases of each random property.
    pub cases: u32,
    /// Cases of the normal-form shape property.
    pub nf_cases: u32,
    /// Source terms of the oracle comparison; each is compared with the
    /// whole universe.
    pub oracle_sources: usize,
    /// Largest simple normal form in the oracle universe.
    pub universe_size: usize,
    /// Normalizer used for collapsing in the collapse-order property.
    pub reducer: Reducer,
}

impl Default for SuiteConfig {
    fn default() -> SuiteConfig {
        SuiteConfig {
            seed: 0x5eed,
            cases: 1000,
            nf_cases: 10_000,
            oracle_sources: 60,
            universe_size: 3,
            reducer: Reducer::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyOutcome {
    pub name: &'static str,
    /// Cases actually decided.
    pub cases: usize,
    /// Cases given up on (oracle overflow).
    pub skipped: usize,
    pub seed: u64,
    pub counterexample: Option<String>,
}

impl PropertyOutcome {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

impl fmt::Display for PropertyOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.counterexample {
            None => write!(f, "PASS {} ({} cases", self.name, self.cases)?,
            Some(c) => write!(f, "FAIL {} after {} cases: {c} (", self.name, self.cases)?,
        }
        if self.skipped > 0 {
            write!(f, ", {} skipped", self.skipped)?;
        }
        write!(f, ", seed {:#x})", self.seed)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteReport {
    pub outcomes: Vec<PropertyOutcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(PropertyOutcome::passed)
    }

    pub fn get(&self, name: &str) -> Option<&PropertyOutcome> {
        self.outcomes.iter().find(|o| o.name == name)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.outcomes.iter().try_for_each(|o| writeln!(f, "{o}"))
    }
}

pub const ORACLE_EQUIVALENCE: &str = "oracle_equivalence";
pub const COMPOSE_ASSOCIATIVE: &str = "compose_associative";
pub const COLLAPSE_ORDER: &str = "collapse_order";
pub const NF_SHAPE: &str = "nf_shape";
pub const CLOSURE_FIXPOINT: &str = "closure_fixpoint";
pub const COLLAPSE_IDEMPOTENT: &str = "collapse_idempotent";
pub const ORDER_PREORDER: &str = "order_preorder";
pub const UPPER_BOUND_COHERENT: &str = "upper_bound_coherent";

/// Names of the suite's properties, in running order.
pub const PROPERTIES: [&str; 8] = [
    ORACLE_EQUIVALENCE,
    COMPOSE_ASSOCIATIVE,
    COLLAPSE_ORDER,
    NF_SHAPE,
    CLOSURE_FIXPOINT,
    COLLAPSE_IDEMPOTENT,
    ORDER_PREORDER,
    UPPER_BOUND_COHERENT,
];

/// Run every property.
pub fn run_property_suite(config: &SuiteConfig) -> SuiteReport {
    SuiteReport { outcomes: PROPERTIES.iter().map(|p| run_property(p, config)).collect() }
}

/// Run one property by name.
///
/// # Panics
/// On an unknown name.
pub fn run_property(name: &str, config: &SuiteConfig) -> PropertyOutcome {
    match name {
        ORACLE_EQUIVALENCE => oracle_equivalence(config),
        COMPOSE_ASSOCIATIVE => compose_associative(config),
        COLLAPSE_ORDER => collapse_order(config),
        NF_SHAPE => nf_shape(config),
        CLOSURE_FIXPOINT => closure_fixpoint(config),
        COLLAPSE_IDEMPOTENT => collapse_idempotent(config),
        ORDER_PREORDER => order_preorder(config),
        UPPER_BOUND_COHERENT => upper_bound_coherent(config),
        _ => panic!("unknown property `{name}`"),
    }
}

/// Seed of one property, derived from the suite seed and the name.
fn property_seed(seed: u64, name: &str) -> u64 {
    name.bytes().fold(seed ^ 0xcbf2_9ce4_8422_2325, |h, b| (h ^ u64::from(b)).wrapping_mul(0x100_0000_01b3))
}

fn outcome(name: &'static str, config: &SuiteConfig) -> PropertyOutcome {
    PropertyOutcome { name, cases: 0, skipped: 0, seed: property_seed(config.seed, name), counterexample: None }
}

fn random_check<S, F>(name: &'static str, config: &SuiteConfig, cases: u32, strategy: S, test: F) -> PropertyOutcome
where
    S: Strategy,
    S::Value: fmt::Debug,
    F: Fn(S::Value) -> Result<(), TestCaseError>,
{
    let mut out = outcome(name, config);
    let mut bytes = [0u8; 32];
    ChaCha8Rng::seed_from_u64(out.seed).fill_bytes(&mut bytes);
    let runner_config =
        Config { cases, failure_persistence: None, max_global_rejects: cases.saturating_mul(20), ..Config::default() };
    let mut runner = TestRunner::new_with_rng(runner_config, TestRng::from_seed(RngAlgorithm::ChaCha, &bytes));
    match runner.run(&strategy, test) {
        Ok(()) => out.cases = cases as usize,
        Err(TestError::Fail(reason, value)) => {
            out.counterexample = Some(format!("{value:?}: {reason}"));
        }
        Err(TestError::Abort(reason)) => out.counterexample = Some(format!("aborted: {reason}")),
    }
    out
}

fn universe(config: &SuiteConfig) -> (TermUniverse, Vec<Term>) {
    let u = TermUniverse::new(UniverseParams { max_states: 3000, ..UniverseParams::default() });
    let mut terms = u.normal_forms(config.universe_size);
    terms.push(Term::zero());
    (u, terms)
}

/// `sleq` against the saturated order on the universe of small normal
/// forms. Each sampled source is compared with every term.
pub fn oracle_equivalence(config: &SuiteConfig) -> PropertyOutcome {
    let mut out = outcome(ORACLE_EQUIVALENCE, config);
    let (u, terms) = universe(config);
    let budget = config.universe_size + u.params.slack;
    let mut rng = ChaCha8Rng::seed_from_u64(out.seed);
    let mut picks = sample(&mut rng, terms.len(), config.oracle_sources.min(terms.len())).into_vec();
    picks.sort_unstable();
    for i in picks {
        let s = &terms[i];
        let Some(above) = reachable(s, budget, &u) else {
            out.skipped += terms.len();
            continue;
        };
        for t in &terms {
            let oracle = t.is_zero() || above.contains(t);
            let fast = sleq(s, t);
            if oracle != fast {
                out.counterexample = Some(format!("{s} <= {t}: oracle {oracle}, sleq {fast}"));
                return out;
            }
            out.cases += 1;
        }
    }
    out
}

/// `t₁ ∘ (t₂ ∘ t₃) = (t₁ ∘ t₂) ∘ t₃` on one-parameter calls built from the
/// exact operators.
pub fn compose_associative(config: &SuiteConfig) -> PropertyOutcome {
    let c = call_strategy(Alphabet::default().exact(), 3, 3);
    let triples = (c.clone(), c.clone(), c);
    random_check(COMPOSE_ASSOCIATIVE, config, config.cases, triples, |(a, b, c)| {
        let f = &*a.callee;
        let (ta, tb, tc) = (a.to_term(), b.to_term(), c.to_term());
        let left = compose(&compose(&ta, &tb, f), &tc, f);
        let right = compose(&ta, &compose(&tb, &tc, f), f);
        prop_assert_eq!(left.to_string(), right.to_string());
        Ok(())
    })
}

fn bounds_strategy() -> impl Strategy<Value = Bounds> {
    (1u32..=2, 0u32..=2).prop_map(|(b, d)| Bounds::new(b, d))
}

/// Every summand of a collapsed composition lies below the summand of the
/// exact composition it comes from. Calls have one parameter and
/// single-field records.
pub fn collapse_order(config: &SuiteConfig) -> PropertyOutcome {
    let red = config.reducer;
    let c = call_strategy(Alphabet { wide_records: false, ..Alphabet::default() }, 3, 3);
    let pairs = (c.clone(), c, bounds_strategy());
    random_check(COLLAPSE_ORDER, config, config.cases, pairs, move |(alpha, beta, bounds)| {
        let exact = compose(&alpha.to_term(), &beta.to_term(), &alpha.callee);
        for e in exact.summands() {
            for c in bounds.collapse_with(red, e).summands() {
                prop_assert!(sleq(c, e), "{} is not below {}", c, e);
            }
        }
        if !red.flip_dual {
            let calls = ccomp(bounds, &beta, &alpha).map_err(|e| TestCaseError::fail(e.to_string()))?;
            prop_assert_eq!(calls.len(), bounds.collapse(&exact).summands().len());
        }
        Ok(())
    })
}

/// Normal forms follow the normal-form grammar, and `nf` is idempotent.
pub fn nf_shape(config: &SuiteConfig) -> PropertyOutcome {
    random_check(NF_SHAPE, config, config.nf_cases, term_strategy(Alphabet::default(), 5), |t| {
        let n = nf(&t);
        prop_assert!(is_normal(&n), "{} is not normal", n);
        prop_assert_eq!(nf(&n), n);
        Ok(())
    })
}

fn closure_problem(c: &CallGraph, opts: ClosureOptions) -> Result<usize, String> {
    let mut checked = 0;
    let subsumed = |x: &Call| c.edges.contains(x) || (opts.subsumption && subsumed_by(c, x));
    for alpha in &c.edges {
        for beta in c.edges.iter().filter(|b| b.caller == alpha.callee) {
            for x in ccomp(c.bounds, beta, alpha).map_err(|e| e.to_string())? {
                if !subsumed(&x) {
                    return Err(format!("{x} = ({beta}) after ({alpha}) is missing"));
                }
                checked += 1;
            }
        }
    }
    let again = transitive_closure(c, opts).map_err(|e| e.to_string())?;
    if opts.subsumption {
        if let Some(x) = again.edges.iter().find(|x| !c.edges.contains(x)) {
            return Err(format!("closing again adds {x}"));
        }
        if let Some(x) = c.edges.iter().find(|x| !subsumed_by(&again, x)) {
            return Err(format!("closing again loses {x}"));
        }
    } else if again.edges != c.edges {
        return Err("closing again changes the closure".into());
    }
    Ok(checked)
}

fn subsumed_by(g: &CallGraph, x: &Call) -> bool {
    let t = x.to_term();
    g.edges.iter().any(|e| e.caller == x.caller && e.callee == x.callee && sleq(&e.to_term(), &t))
}

/// Every composite of closure edges is already there (or above one that
/// is, when pruning), and closing again changes nothing up to pruning;
/// checked on every corpus program at several bounds, with
/// and without pruning.
pub fn closure_fixpoint(config: &SuiteConfig) -> PropertyOutcome {
    let mut out = outcome(CLOSURE_FIXPOINT, config);
    for (name, src) in CORPUS {
        for (b, d) in [(1, 0), (1, 1), (2, 2)] {
            for subsumption in [true, false] {
                let opts = Options {
                    bounds: Bounds::new(b, d),
                    closure: ClosureOptions { subsumption, ..ClosureOptions::default() },
                };
                let report = match check_source(src, &opts) {
                    Ok(r) => r,
                    Err(e) => {
                        out.counterexample = Some(format!("{name}: {e}"));
                        return out;
                    }
                };
                for g in &report.groups {
                    let Some(c) = &g.closure else { continue };
                    match closure_problem(c, opts.closure) {
                        Ok(n) => out.cases += n.max(1),
                        Err(e) => {
                            out.counterexample = Some(format!("{name} at B={b}, D={d}: {e}"));
                            return out;
                        }
                    }
                }
            }
        }
    }
    out
}

/// `cB`, `cD` and `cB ∘ cD` are idempotent.
pub fn collapse_idempotent(config: &SuiteConfig) -> PropertyOutcome {
    let input = (term_strategy(Alphabet::default(), 5), 1u32..=3, 0u32..=3);
    random_check(COLLAPSE_IDEMPOTENT, config, config.cases, input, |(t, b, d)| {
        let t = nf(&t);
        let cb = collapse_weights(b, &t);
        prop_assert_eq!(collapse_weights(b, &cb), cb);
        let cd = collapse_depth(d, &t);
        prop_assert_eq!(collapse_depth(d, &cd), cd);
        let bounds = Bounds::new(b, d);
        let c = bounds.collapse(&t);
        prop_assert_eq!(bounds.collapse(&c), c);
        Ok(())
    })
}

/// The universe's `sleq` relation, as rows of indices above each term.
fn relation(terms: &[Term]) -> Vec<Vec<usize>> {
    terms.iter().map(|s| (0..terms.len()).filter(|&j| sleq(s, &terms[j])).collect()).collect()
}

/// `sleq` is reflexive and transitive on the universe and on random normal
/// forms.
pub fn order_preorder(config: &SuiteConfig) -> PropertyOutcome {
    let mut out = outcome(ORDER_PREORDER, config);
    let (_, terms) = universe(config);
    let above = relation(&terms);
    for (i, row) in above.iter().enumerate() {
        if !row.contains(&i) {
            out.counterexample = Some(format!("{} is not below itself", terms[i]));
            return out;
        }
        for &j in row {
            for &k in &above[j] {
                if row.binary_search(&k).is_err() {
                    let (s, t, u) = (&terms[i], &terms[j], &terms[k]);
                    out.counterexample = Some(format!("{s} <= {t} <= {u} but not {s} <= {u}"));
                    return out;
                }
                out.cases += 1;
            }
        }
    }
    let random = random_check(ORDER_PREORDER, config, config.cases, term_strategy(Alphabet::default(), 5), |t| {
        let n = nf(&t);
        prop_assert!(sleq(&n, &n), "{} is not below itself", n);
        Ok(())
    });
    out.cases += random.cases;
    out.counterexample = random.counterexample;
    out
}

/// Terms with a common nonzero upper bound are weakly coherent.
pub fn upper_bound_coherent(config: &SuiteConfig) -> PropertyOutcome {
    let mut out = outcome(UPPER_BOUND_COHERENT, config);
    let (_, terms) = universe(config);
    let above = relation(&terms);
    let mut below: Vec<Vec<usize>> = vec![Vec::new(); terms.len()];
    for (i, row) in above.iter().enumerate() {
        for &j in row {
            below[j].push(i);
        }
    }
    for (k, t) in terms.iter().enumerate().filter(|(_, t)| !t.is_zero()) {
        for (a, &i) in below[k].iter().enumerate() {
            for &j in &below[k][a..] {
                let (u, v) = (&terms[i], &terms[j]);
                if !sqcoh(u, v) {
                    out.counterexample = Some(format!("{u} and {v} are both below {t} but not coherent"));
                    return out;
                }
                out.cases += 1;
            }
        }
    }
    out
}
