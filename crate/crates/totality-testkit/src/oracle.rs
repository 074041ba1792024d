//! Brute-force decision of the term order on a tiny universe.
//!
//! The order is generated by a list of basic inequalities, closed under
//! contexts, reflexivity and transitivity. So `s ≤ t` holds exactly when a
//! chain of one-step moves leads from `s` up to `t`, each move rewriting one
//! subterm by a basic inequality. [`leq_oracle`] climbs from `s` through
//! every term reachable that way without leaving the universe: terms over a
//! fixed small alphabet, with a node budget. It shares nothing with the
//! syntax-directed order of the core crate except the term type and its
//! smart constructors.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::{Arc, Mutex};

use totality_core::{is_normal, name, nf, Name, Priority, Term, Weight, ZInf};

/// Parameters of a universe.
#[derive(Clone, Debug)]
pub struct UniverseParams {
    /// Constructors, all at `constr_priority`.
    pub constructors: Vec<Name>,
    pub constr_priority: Priority,
    /// Field names, all at `field_priority`.
    pub fields: Vec<Name>,
    pub field_priority: Priority,
    /// Unary function name, if any.
    pub function: Option<Name>,
    pub min_weight: i64,
    pub max_weight: i64,
    /// Node budget of intermediate terms, over the larger end of the query.
    pub slack: usize,
    pub max_summands: usize,
    /// States explored before giving up.
    pub max_states: usize,
}

impl Default for UniverseParams {
    fn default() -> UniverseParams {
        UniverseParams {
            constructors: vec![name("A"), name("B")],
            constr_priority: 1,
            fields: vec![name("D"), name("E")],
            field_priority: 0,
            function: Some(name("f")),
            min_weight: -2,
            max_weight: 2,
            slack: 1,
            max_summands: 2,
            max_states: 5_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleError {
    /// The search hit `max_states` before deciding.
    Overflow,
    /// A query term lies outside the universe.
    Outside(Term),
}

/// A finite universe of terms.
#[derive(Debug)]
pub struct TermUniverse {
    pub params: UniverseParams,
    /// Every weight whose components lie in range.
    pub weights: Vec<Weight>,
    fillers: Mutex<HashMap<usize, Arc<Vec<Term>>>>,
}

impl TermUniverse {
    pub fn new(params: UniverseParams) -> TermUniverse {
        let mut values: Vec<ZInf> = (params.min_weight..=params.max_weight).map(ZInf::Fin).collect();
        values.push(ZInf::Inf);
        let (p0, p1) = (params.field_priority, params.constr_priority);
        let mut weights = Vec::new();
        for a in &values {
            for b in &values {
                let mut w = Weight::zero();
                w.set(p0, *a);
                w.set(p1, *b);
                weights.push(w);
            }
        }
        TermUniverse { params, weights, fillers: Mutex::new(HashMap::new()) }
    }

    fn weight_ok(&self, w: &Weight) -> bool {
        w.iter().all(|(p, v)| {
            (p == self.params.field_priority || p == self.params.constr_priority)
                && match v {
                    ZInf::Fin(x) => self.params.min_weight <= x && x <= self.params.max_weight,
                    ZInf::Inf => true,
                }
        })
    }

    fn simple_ok(&self, t: &Term) -> bool {
        let p = &self.params;
        match t {
            Term::Param(1) => true,
            Term::Constr(c, q, s) | Term::ConstrDual(c, q, s) => {
                *q == p.constr_priority && p.constructors.contains(c) && self.simple_ok(s)
            }
            Term::Project(d, q, s) => *q == p.field_priority && p.fields.contains(d) && self.simple_ok(s),
            Term::Record(fs, q) => {
                *q == p.field_priority && fs.iter().all(|(d, s)| p.fields.contains(d) && self.simple_ok(s))
            }
            Term::FunApp(f, args) => p.function.as_ref() == Some(f) && args.len() == 1 && self.simple_ok(&args[0]),
            Term::Daimon(s) => self.simple_ok(s),
            Term::Approx(w, s) => self.weight_ok(w) && !s.contains_fun() && self.simple_ok(s),
            _ => false,
        }
    }

    /// Whether `t` belongs to the universe with node budget `budget` per
    /// summand.
    pub fn contains(&self, t: &Term, budget: usize) -> bool {
        let parts = t.summands();
        parts.len() <= self.params.max_summands && parts.iter().all(|s| s.size() <= budget && self.simple_ok(s))
    }

    /// Node budget for deciding `s ≤ t`.
    pub fn budget(&self, s: &Term, t: &Term) -> usize {
        let big = |x: &Term| x.summands().iter().map(Term::size).max().unwrap_or(0);
        big(s).max(big(t)) + self.params.slack
    }

    /// Every simple term with at most `size` nodes, without duplicates.
    pub fn enumerate(&self, size: usize) -> Vec<Term> {
        let mut by_size: Vec<Vec<Term>> = vec![Vec::new(), vec![Term::Param(1)]];
        for n in 2..=size {
            let mut out = Vec::new();
            for t in by_size[n - 1].clone() {
                out.extend(self.unary(&t));
            }
            for k in 1..n - 1 {
                for a in &by_size[k] {
                    for b in &by_size[n - 1 - k] {
                        for (i, d) in self.params.fields.iter().enumerate() {
                            for e in &self.params.fields[i + 1..] {
                                out.push(Term::record(
                                    vec![(d.clone(), a.clone()), (e.clone(), b.clone())],
                                    self.params.field_priority,
                                ));
                            }
                        }
                    }
                }
            }
            out.retain(|t| self.contains(t, size));
            by_size.push(out);
        }
        let mut seen = HashSet::new();
        by_size.into_iter().flatten().filter(|t| seen.insert(t.clone())).collect()
    }

    /// The simple normal forms with at most `size` nodes, sorted.
    pub fn normal_forms(&self, size: usize) -> Vec<Term> {
        let mut out: Vec<Term> = self
            .enumerate(size)
            .iter()
            .map(nf)
            .filter(|t| t.summands().len() == 1 && is_normal(t) && self.contains(t, size))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Every one-node extension `K t` with `K` unary.
    fn unary(&self, t: &Term) -> Vec<Term> {
        let p = &self.params;
        let mut out = Vec::new();
        for c in &p.constructors {
            out.push(Term::constr(c.clone(), p.constr_priority, t.clone()));
            out.push(Term::constr_dual(c.clone(), p.constr_priority, t.clone()));
        }
        for d in &p.fields {
            out.push(Term::project(d.clone(), p.field_priority, t.clone()));
            out.push(Term::record(vec![(d.clone(), t.clone())], p.field_priority));
        }
        out.push(Term::daimon(t.clone()));
        if let Some(f) = &p.function {
            out.push(Term::fun_app(f.clone(), vec![t.clone()]));
        }
        for w in &self.weights {
            out.push(Term::approx(w.clone(), t.clone()));
        }
        out
    }

    fn records_around(&self, a: &Term, b: &Term) -> Vec<Vec<(Name, Term)>> {
        let fs = &self.params.fields;
        let mut out = Vec::new();
        if a == b {
            for d in fs {
                out.push(vec![(d.clone(), a.clone())]);
            }
        }
        for (i, d) in fs.iter().enumerate() {
            for e in &fs[i + 1..] {
                out.push(vec![(d.clone(), a.clone()), (e.clone(), b.clone())]);
                if a != b {
                    out.push(vec![(d.clone(), b.clone()), (e.clone(), a.clone())]);
                }
            }
        }
        out
    }

    /// `✠{…}` and `⟨W⟩{…}` built over fields `a` and `b`: the terms above
    /// `✠a + ✠b`.
    fn merged(&self, a: &Term, b: &Term) -> Vec<Term> {
        let fp = self.params.field_priority;
        let mut out = Vec::new();
        for fields in self.records_around(a, b) {
            let r = Term::record(fields, fp);
            out.push(Term::daimon(r.clone()));
            for w in &self.weights {
                out.push(Term::approx(w.clone(), r.clone()));
            }
        }
        out
    }

    fn fillers(&self, budget: usize) -> Arc<Vec<Term>> {
        let mut cache = self.fillers.lock().expect("filler cache");
        cache
            .entry(budget)
            .or_insert_with(|| Arc::new(if budget == 0 { Vec::new() } else { self.enumerate(budget) }))
            .clone()
    }

    /// One-step moves up at the root of a simple term.
    fn root_moves(&self, u: &Term, budget: usize, out: &mut Vec<Term>) {
        let p = &self.params;
        let cp = p.constr_priority;
        let fp = p.field_priority;
        let size = u.size();
        // C⁻ C t ≈ t
        if let Term::ConstrDual(c, _, s) = u {
            if let Term::Constr(c2, _, t) = &**s {
                if c == c2 {
                    out.push((**t).clone());
                }
            }
        }
        if size + 2 <= budget {
            for c in &p.constructors {
                out.push(Term::ConstrDual(c.clone(), cp, Box::new(Term::Constr(c.clone(), cp, Box::new(u.clone())))));
            }
        }
        // ✠ absorbs destructors above and constructors below, and ✠✠ = ✠
        if let Term::ConstrDual(_, _, s) | Term::Project(_, _, s) = u {
            if matches!(**s, Term::Daimon(_)) {
                out.push((**s).clone());
            }
        }
        if let Term::Daimon(s) = u {
            if let Term::Constr(_, _, t) = &**s {
                out.push(Term::Daimon(t.clone()));
            }
            if let Term::Daimon(_) = &**s {
                out.push((**s).clone());
            }
            if size < budget {
                for c in &p.constructors {
                    out.push(Term::ConstrDual(c.clone(), cp, Box::new(u.clone())));
                    out.push(Term::Daimon(Box::new(Term::Constr(c.clone(), cp, s.clone()))));
                }
                for d in &p.fields {
                    out.push(Term::Project(d.clone(), fp, Box::new(u.clone())));
                }
                out.push(Term::Daimon(Box::new(u.clone())));
            }
        }
        // ⟨W⟩ C t ≈ ⟨W + 1⟩ t and C⁻ ⟨W⟩ t ≈ ⟨W − 1⟩ t
        if let Term::Approx(w, s) = u {
            if let Term::Constr(_, q, t) = &**s {
                out.push(Term::Approx(w.add_at(*q, 1), t.clone()));
            }
            if size < budget {
                for c in &p.constructors {
                    out.push(Term::Approx(w.add_at(cp, -1), Box::new(Term::Constr(c.clone(), cp, s.clone()))));
                    out.push(Term::ConstrDual(c.clone(), cp, Box::new(Term::Approx(w.add_at(cp, 1), s.clone()))));
                }
            }
        }
        if let Term::ConstrDual(_, q, s) = u {
            if let Term::Approx(w, t) = &**s {
                out.push(Term::Approx(w.add_at(*q, -1), t.clone()));
            }
        }
        self.up_only(u, budget, out);
    }

    fn up_only(&self, u: &Term, budget: usize, out: &mut Vec<Term>) {
        let p = &self.params;
        let fp = p.field_priority;
        let size = u.size();
        // ✠x ≤ x, ✠x ≤ f x, instantiated at any term
        if let Term::Daimon(s) = u {
            out.push((**s).clone());
            if let Some(f) = &p.function {
                out.push(Term::FunApp(f.clone(), vec![(**s).clone()]));
            }
        }
        // t_i ≤ D_i {…; D_i = t_i; …}
        if size + 2 <= budget {
            for d in &p.fields {
                out.push(Term::Project(d.clone(), fp, Box::new(Term::record(vec![(d.clone(), u.clone())], fp))));
            }
            for w in self.fillers(budget - size - 2).iter() {
                for d in &p.fields {
                    for e in p.fields.iter().filter(|e| *e != d) {
                        let r = Term::record(vec![(d.clone(), u.clone()), (e.clone(), w.clone())], fp);
                        out.push(Term::Project(d.clone(), fp, Box::new(r)));
                    }
                }
            }
        }
        if let Term::Approx(w, s) = u {
            // ⟨W⟩ t ≤ ⟨W'⟩ t when W ≤ W' as coefficients
            for w2 in &self.weights {
                if w2 != w && w.coef_leq(w2) {
                    out.push(Term::Approx(w2.clone(), s.clone()));
                }
            }
            // ⟨0⟩ t ≤ t
            if w.is_zero() {
                out.push((**s).clone());
            }
            if size < budget {
                // ⟨W − 1⟩ t ≤ D ⟨W⟩ t
                for d in &p.fields {
                    out.push(Term::Project(d.clone(), fp, Box::new(Term::Approx(w.add_at(fp, 1), s.clone()))));
                }
                // ⟨V + W⟩ t ≤ ⟨V⟩ ⟨W⟩ t
                for v in &self.weights {
                    for w2 in &self.weights {
                        if v.add(w2) == *w {
                            out.push(Term::Approx(v.clone(), Box::new(Term::Approx(w2.clone(), s.clone()))));
                        }
                    }
                }
            }
            // ✠ ⟨W⟩ t ≤ ⟨W⟩ ✠ t
        }
        if let Term::Daimon(s) = u {
            if let Term::Approx(w, t) = &**s {
                out.push(Term::Approx(w.clone(), Box::new(Term::Daimon(t.clone()))));
            }
            if size < budget {
                // ✠ t ≤ ✠ ⟨W⟩ t
                for w in &self.weights {
                    out.push(Term::Daimon(Box::new(Term::Approx(w.clone(), s.clone()))));
                }
            }
            // ✠ t ≤ ✠ {D = t}, ⟨W⟩ {D = t}, and the two-field versions
            out.extend(self.merged(s, s));
        }
    }

    /// Every term one move above a simple term, with the move anywhere
    /// inside it.
    fn simple_moves(&self, u: &Term, budget: usize) -> Vec<Term> {
        let mut out = Vec::new();
        self.root_moves(u, budget, &mut out);
        let room = budget.saturating_sub(u.size());
        let kids = u.children();
        for (i, k) in kids.iter().enumerate() {
            for m in self.simple_moves(k, k.size() + room) {
                out.push(replace_child(u, i, m));
            }
        }
        out
    }

    /// Every term one move above `t`, which may be a sum.
    pub fn moves(&self, t: &Term, budget: usize) -> Vec<Term> {
        let parts = t.summands().to_vec();
        let mut out = Vec::new();
        if !t.is_zero() {
            out.push(Term::zero());
        }
        for (i, a) in parts.iter().enumerate() {
            let rest: Vec<Term> = parts.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, x)| x.clone()).collect();
            for m in self.simple_moves(a, budget) {
                out.push(Term::sum(rest.iter().cloned().chain(m.into_summands())));
            }
            if parts.len() > 1 {
                // s + t ≤ t
                out.push(Term::sum(rest.clone()));
            }
        }
        for i in 0..parts.len() {
            for j in i + 1..parts.len() {
                for m in self.merge_in_context(&parts[i], &parts[j]) {
                    let rest = parts.iter().enumerate().filter(|(k, _)| *k != i && *k != j).map(|(_, x)| x.clone());
                    out.push(Term::sum(rest.chain([m])));
                }
            }
        }
        out
    }

    /// `K[✠a] + K[✠b] ≤ K[✠{D = a; E = b}]` and the `⟨W⟩` variants, for
    /// every common context `K`.
    fn merge_in_context(&self, a: &Term, b: &Term) -> Vec<Term> {
        let mut out = Vec::new();
        if let (Term::Daimon(x), Term::Daimon(y)) = (a, b) {
            out.extend(self.merged(x, y));
        }
        if discriminant_eq(a, b) {
            let (ka, kb) = (a.children(), b.children());
            if ka.len() == kb.len() {
                let diff: Vec<usize> = (0..ka.len()).filter(|&i| ka[i] != kb[i]).collect();
                if let [i] = diff[..] {
                    for m in self.merge_in_context(ka[i], kb[i]) {
                        out.push(replace_child(a, i, m));
                    }
                }
            }
        }
        out
    }
}

fn discriminant_eq(a: &Term, b: &Term) -> bool {
    match (a, b) {
        (Term::Constr(c, p, _), Term::Constr(d, q, _))
        | (Term::ConstrDual(c, p, _), Term::ConstrDual(d, q, _))
        | (Term::Project(c, p, _), Term::Project(d, q, _)) => c == d && p == q,
        (Term::Record(f, p), Term::Record(g, q)) => {
            p == q && f.len() == g.len() && f.iter().zip(g).all(|(x, y)| x.0 == y.0)
        }
        (Term::FunApp(f, x), Term::FunApp(g, y)) => f == g && x.len() == y.len(),
        (Term::Daimon(_), Term::Daimon(_)) => true,
        (Term::Approx(v, _), Term::Approx(w, _)) => v == w,
        _ => false,
    }
}

/// `u` with child `i` replaced, through the smart constructors.
fn replace_child(u: &Term, i: usize, new: Term) -> Term {
    match u {
        Term::Constr(c, p, _) => Term::constr(c.clone(), *p, new),
        Term::ConstrDual(c, p, _) => Term::constr_dual(c.clone(), *p, new),
        Term::Project(d, p, _) => Term::project(d.clone(), *p, new),
        Term::Daimon(_) => Term::daimon(new),
        Term::Approx(w, _) => Term::approx(w.clone(), new),
        Term::Record(fs, p) => {
            let mut fs = fs.clone();
            fs[i].1 = new;
            Term::record(fs, *p)
        }
        Term::FunApp(f, args) => {
            let mut args = args.clone();
            args[i] = new;
            Term::fun_app(f.clone(), args)
        }
        _ => unreachable!("leaves have no children"),
    }
}

/// Every term reachable from `t` by moves up within `budget`, or `None`
/// past `max_states`.
pub fn reachable(t: &Term, budget: usize, universe: &TermUniverse) -> Option<HashSet<Term>> {
    search(t, budget, universe, |_| false).map(|(seen, _)| seen)
}

/// Breadth-first search upwards from `t`, stopping early once `stop` holds.
fn search(
    t: &Term,
    budget: usize,
    universe: &TermUniverse,
    stop: impl Fn(&Term) -> bool,
) -> Option<(HashSet<Term>, bool)> {
    let mut seen = HashSet::from([t.clone()]);
    if stop(t) {
        return Some((seen, true));
    }
    let mut frontier = VecDeque::from([t.clone()]);
    while let Some(u) = frontier.pop_front() {
        for v in universe.moves(&u, budget) {
            if universe.contains(&v, budget) && seen.insert(v.clone()) {
                if stop(&v) {
                    return Some((seen, true));
                }
                frontier.push_back(v);
            }
        }
        if seen.len() > universe.params.max_states {
            return None;
        }
    }
    Some((seen, false))
}

/// Decide `s ≤ t` inside `universe`. Terms need not be normal.
///
/// Sums are compared summand by summand: `Σ sᵢ ≤ Σ tⱼ` when every `tⱼ` lies
/// above some `sᵢ`. Between simple terms, the search climbs from `s` through
/// every term of the universe reachable by one-step moves.
pub fn leq_oracle(s: &Term, t: &Term, universe: &TermUniverse) -> Result<bool, OracleError> {
    let budget = universe.budget(s, t);
    for x in [s, t] {
        if !universe.contains(x, budget) {
            return Err(OracleError::Outside(x.clone()));
        }
    }
    for tj in t.summands() {
        let mut found = false;
        for si in s.summands() {
            match search(si, budget, universe, |v| v == tj) {
                None => return Err(OracleError::Overflow),
                Some((_, true)) => {
                    found = true;
                    break;
                }
                Some((_, false)) => {}
            }
        }
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}
