//! Random terms and calls.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use totality_core::{name, nf, Call, Name, Priority, Term, Weight, ZInf};

/// Names, priorities and weights random terms are drawn from.
#[derive(Clone, Debug)]
pub struct Alphabet {
    pub constructors: Vec<(Name, Priority)>,
    pub destructors: Vec<(Name, Priority)>,
    /// Function name used for calls, and its arity.
    pub function: (Name, usize),
    pub params: u32,
    pub priorities: Vec<Priority>,
    pub min_weight: i64,
    pub max_weight: i64,
    /// Generate `⟨W⟩` nodes.
    pub weights: bool,
    /// Generate records with two fields.
    pub wide_records: bool,
}

impl Default for Alphabet {
    fn default() -> Alphabet {
        Alphabet {
            constructors: vec![(name("A"), 1), (name("B"), 1), (name("S"), 3)],
            destructors: vec![(name("D"), 0), (name("E"), 0), (name("H"), 2)],
            function: (name("f"), 1),
            params: 1,
            priorities: vec![0, 1, 2, 3],
            min_weight: -2,
            max_weight: 2,
            weights: true,
            wide_records: true,
        }
    }
}

impl Alphabet {
    /// Same alphabet, calls of arity `n` over `x1..xn`.
    pub fn with_arity(mut self, n: usize) -> Alphabet {
        self.function.1 = n;
        self.params = n as u32;
        self
    }

    /// Same alphabet without weights or two-field records: the operators
    /// whose rewriting is an equality.
    pub fn exact(mut self) -> Alphabet {
        self.weights = false;
        self.wide_records = false;
        self
    }

    fn component(&self, r: u32) -> ZInf {
        let span = (self.max_weight - self.min_weight + 1) as u32;
        if r % (span + 1) == span {
            ZInf::Inf
        } else {
            ZInf::Fin(self.min_weight + i64::from(r % (span + 1)))
        }
    }
}

/// Random term generation driven by a seeded ChaCha stream.
pub struct TermGen {
    pub alphabet: Alphabet,
    rng: ChaCha8Rng,
}

impl TermGen {
    pub fn new(alphabet: Alphabet, seed: u64) -> TermGen {
        TermGen { alphabet, rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    fn pick<T: Clone>(&mut self, v: &[T]) -> T {
        v[self.rng.gen_range(0..v.len())].clone()
    }

    pub fn weight(&mut self) -> Weight {
        let n = self.rng.gen_range(0..=2);
        let pairs: Vec<(Priority, ZInf)> = (0..n)
            .map(|_| {
                let p = self.pick(&self.alphabet.priorities.clone());
                let r = self.rng.gen::<u32>();
                (p, self.alphabet.component(r))
            })
            .collect();
        let mut w = Weight::zero();
        for (p, v) in pairs {
            w.set(p, v);
        }
        w
    }

    fn leaf(&mut self, allow_zero: bool) -> Term {
        if allow_zero && self.rng.gen_bool(0.1) {
            Term::zero()
        } else {
            Term::Param(self.rng.gen_range(1..=self.alphabet.params))
        }
    }

    /// A term with at most `size` nodes. Sums only at the top, constructors
    /// mostly above destructors.
    pub fn term(&mut self, size: usize) -> Term {
        if size >= 3 && self.rng.gen_bool(0.15) {
            let left = self.rng.gen_range(1..size - 1);
            let a = self.inner(left, true, true);
            let b = self.inner(size - 1 - left, true, true);
            return Term::sum([a, b]);
        }
        self.inner(size, true, true)
    }

    /// A term without function names.
    pub fn arg_term(&mut self, size: usize) -> Term {
        self.inner(size, true, false)
    }

    fn inner(&mut self, size: usize, outer: bool, funs: bool) -> Term {
        if size <= 1 {
            return self.leaf(size == 1 && outer);
        }
        let roll = self.rng.gen_range(0..100);
        let rest = size - 1;
        match roll {
            0..=19 if outer => {
                let (c, p) = self.pick(&self.alphabet.constructors.clone());
                Term::constr(c, p, self.inner(rest, true, funs))
            }
            0..=34 if outer => {
                let ds = self.alphabet.destructors.clone();
                if self.alphabet.wide_records && rest >= 2 && self.rng.gen_bool(0.4) {
                    let (d1, p) = self.pick(&ds);
                    let others: Vec<_> = ds.iter().filter(|(d, q)| *d != d1 && *q == p).cloned().collect();
                    if let Some((d2, _)) = others.first() {
                        let left = self.rng.gen_range(1..rest);
                        let a = self.inner(left, true, funs);
                        let b = self.inner(rest - left, true, funs);
                        return Term::record(vec![(d1, a), (d2.clone(), b)], p);
                    }
                }
                let (d, p) = self.pick(&ds);
                Term::record(vec![(d, self.inner(rest, true, funs))], p)
            }
            0..=49 => {
                let t = self.inner(rest, false, funs);
                if self.rng.gen_bool(0.5) {
                    let (c, p) = self.pick(&self.alphabet.constructors.clone());
                    Term::constr_dual(c, p, t)
                } else {
                    let (d, p) = self.pick(&self.alphabet.destructors.clone());
                    Term::project(d, p, t)
                }
            }
            50..=59 => Term::daimon(self.inner(rest, false, funs)),
            60..=74 if self.alphabet.weights => {
                let w = self.weight();
                Term::approx(w, self.inner(rest, false, funs))
            }
            75..=89 if funs => {
                let (f, n) = self.alphabet.function.clone();
                if n == 0 {
                    return Term::fun_app(f, Vec::new());
                }
                let mut budget = rest;
                let mut args = Vec::with_capacity(n);
                for k in 0..n {
                    let left = n - k - 1;
                    let take =
                        if left == 0 { budget } else { self.rng.gen_range(1..=budget.saturating_sub(left).max(1)) };
                    budget = budget.saturating_sub(take);
                    args.push(self.inner(take.max(1), true, funs));
                }
                Term::fun_app(f, args)
            }
            _ => self.inner(rest, outer, funs),
        }
    }

    /// A call `f -> spine f(args)` of the alphabet's arity, in normal form.
    pub fn call(&mut self, spine_len: usize, arg_size: usize) -> Call {
        loop {
            let (f, n) = self.alphabet.function.clone();
            let mut args = Vec::with_capacity(n);
            for _ in 0..n {
                let k = self.rng.gen_range(1..=arg_size);
                args.push(nf(&self.arg_term(k)));
            }
            let mut t = Term::fun_app(f.clone(), args);
            let len = self.rng.gen_range(0..=spine_len);
            let destrs = self.rng.gen_range(0..=len);
            for k in 0..len {
                t = if k < destrs {
                    if self.rng.gen_bool(0.5) {
                        let (c, p) = self.pick(&self.alphabet.constructors.clone());
                        Term::constr_dual(c, p, t)
                    } else {
                        let (d, p) = self.pick(&self.alphabet.destructors.clone());
                        Term::project(d, p, t)
                    }
                } else if k == destrs && self.rng.gen_bool(0.3) {
                    if !self.alphabet.weights || self.rng.gen_bool(0.3) {
                        Term::daimon(t)
                    } else {
                        let w = self.weight();
                        Term::approx(w, t)
                    }
                } else if self.rng.gen_bool(0.5) {
                    let (c, p) = self.pick(&self.alphabet.constructors.clone());
                    Term::constr(c, p, t)
                } else {
                    let (d, p) = self.pick(&self.alphabet.destructors.clone());
                    Term::record(vec![(d, t)], p)
                };
            }
            let t = nf(&t);
            if t.summands().len() == 1 {
                if let Ok(c) = Call::from_term(&f, &t) {
                    return c;
                }
            }
        }
    }
}

/// A random term with at most `size` nodes over the default alphabet,
/// reproducible from `seed`.
pub fn gen_term(size: usize, seed: u64) -> Term {
    assert!(size >= 1, "terms have at least one node");
    TermGen::new(Alphabet::default(), seed).term(size)
}

fn weight_strategy(a: &Alphabet) -> BoxedStrategy<Weight> {
    let value = prop_oneof![
        4 => (a.min_weight..=a.max_weight).prop_map(ZInf::Fin),
        1 => Just(ZInf::Inf),
    ];
    proptest::collection::vec((proptest::sample::select(a.priorities.clone()), value), 0..=2)
        .prop_map(|pairs| {
            let mut w = Weight::zero();
            for (p, v) in pairs {
                w.set(p, v);
            }
            w
        })
        .boxed()
}

/// Proptest strategy for simple terms (no sums) of depth at most `depth`.
/// `funs` allows the alphabet's function name.
pub fn simple_term_strategy(a: Alphabet, depth: u32, funs: bool) -> BoxedStrategy<Term> {
    let leaf = (1..=a.params).prop_map(Term::Param).boxed();
    leaf.prop_recursive(depth, 32, 2, move |inner| {
        let cs = proptest::sample::select(a.constructors.clone());
        let ds = proptest::sample::select(a.destructors.clone());
        let pairs: Vec<_> = a
            .destructors
            .iter()
            .flat_map(|x| a.destructors.iter().map(move |y| (x.clone(), y.clone())))
            .filter(|(x, y)| x.0 < y.0 && x.1 == y.1)
            .collect();
        let (f, n) = a.function.clone();
        let mut options: Vec<(u32, BoxedStrategy<Term>)> = vec![
            (3, (cs.clone(), inner.clone()).prop_map(|((c, p), t)| Term::constr(c, p, t)).boxed()),
            (2, (ds.clone(), inner.clone()).prop_map(|((d, p), t)| Term::record(vec![(d, t)], p)).boxed()),
            (3, (cs, inner.clone()).prop_map(|((c, p), t)| Term::constr_dual(c, p, t)).boxed()),
            (3, (ds, inner.clone()).prop_map(|((d, p), t)| Term::project(d, p, t)).boxed()),
            (1, inner.clone().prop_map(Term::daimon).boxed()),
        ];
        if a.weights {
            options.push((2, (weight_strategy(&a), inner.clone()).prop_map(|(w, t)| Term::approx(w, t)).boxed()));
        }
        if a.wide_records && !pairs.is_empty() {
            options.push((
                1,
                (proptest::sample::select(pairs), inner.clone(), inner.clone())
                    .prop_map(|(((d, p), (e, _)), x, y)| Term::record(vec![(d, x), (e, y)], p))
                    .boxed(),
            ));
        }
        if funs {
            options.push((
                2,
                proptest::collection::vec(inner, n).prop_map(move |args| Term::fun_app(f.clone(), args)).boxed(),
            ));
        }
        proptest::strategy::Union::new_weighted(options)
    })
    .boxed()
}

/// Proptest strategy for terms: one or two simple summands.
pub fn term_strategy(a: Alphabet, depth: u32) -> BoxedStrategy<Term> {
    let simple = simple_term_strategy(a, depth, true);
    prop_oneof![
        4 => simple.clone(),
        1 => (simple.clone(), simple).prop_map(|(x, y)| Term::sum([x, y])),
    ]
    .boxed()
}

#[derive(Clone, Debug)]
enum SpineItem {
    Out(bool, usize),
    Mid(Option<Weight>),
    In(bool, usize),
}

/// Proptest strategy for normal-form calls `f -> spine f(args)` over the
/// alphabet's arity.
pub fn call_strategy(a: Alphabet, spine_len: usize, arg_depth: u32) -> BoxedStrategy<Call> {
    let nc = a.constructors.len();
    let nd = a.destructors.len();
    let out = (any::<bool>(), 0..nc.max(nd)).prop_map(|(c, k)| SpineItem::Out(c, k));
    let inn = (any::<bool>(), 0..nc.max(nd)).prop_map(|(c, k)| SpineItem::In(c, k));
    let weights = if a.weights { proptest::option::of(weight_strategy(&a)).boxed() } else { Just(None).boxed() };
    let mid = proptest::option::of(weights).prop_map(|m| m.map(SpineItem::Mid));
    let args = proptest::collection::vec(simple_term_strategy(a.clone(), arg_depth, false), a.function.1);
    (proptest::collection::vec(out, 0..=spine_len), mid, proptest::collection::vec(inn, 0..=spine_len), args)
        .prop_filter_map("not a call", move |(outs, mid, ins, args)| {
            let (f, _) = a.function.clone();
            let args = args.iter().map(nf).collect();
            let mut t = Term::fun_app(f.clone(), args);
            for item in ins.into_iter().rev().chain(mid).chain(outs.into_iter().rev()) {
                t = match item {
                    SpineItem::In(true, k) => {
                        let (c, p) = a.constructors[k % nc].clone();
                        Term::constr_dual(c, p, t)
                    }
                    SpineItem::In(false, k) => {
                        let (d, p) = a.destructors[k % nd].clone();
                        Term::project(d, p, t)
                    }
                    SpineItem::Mid(None) => Term::daimon(t),
                    SpineItem::Mid(Some(w)) => Term::approx(w, t),
                    SpineItem::Out(true, k) => {
                        let (c, p) = a.constructors[k % nc].clone();
                        Term::constr(c, p, t)
                    }
                    SpineItem::Out(false, k) => {
                        let (d, p) = a.destructors[k % nd].clone();
                        Term::record(vec![(d, t)], p)
                    }
                };
            }
            let t = nf(&t);
            match t.summands() {
                [one] => Call::from_term(&f, one).ok(),
                _ => None,
            }
        })
        .boxed()
}
