//! Removal of numerals, wildcards, nullary and curried constructors and
//! empty records.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::ast::*;
use super::lexer::Pos;
use crate::term::{name, Name};

/// The external function standing for `{}` when no unit-typed variable is at
/// hand.
pub const EMPTY_RECORD: &str = "empty_record";

const TUPLE_FIELDS: [&str; 3] = ["Fst", "Snd", "Thd"];

struct Ctx {
    /// Number of curried arguments of each constructor.
    ctor_args: BTreeMap<Name, usize>,
    numerals: bool,
}

struct ClauseCtx<'a> {
    ctx: &'a Ctx,
    used: BTreeSet<Name>,
    next: usize,
    unit_vars: Vec<Name>,
}

impl ClauseCtx<'_> {
    fn fresh(&mut self) -> Name {
        loop {
            self.next += 1;
            let n = name(&format!("_x{}", self.next));
            if self.used.insert(n.clone()) {
                return n;
            }
        }
    }

    fn numeral<T>(&self, n: u64, pos: Pos, mk: impl Fn(Name, Vec<T>, Pos) -> T, empty: T) -> T {
        let mut t = mk(name("Zero"), vec![empty], pos);
        for _ in 0..n {
            t = mk(name("Succ"), vec![t], pos);
        }
        t
    }

    fn pattern(&mut self, p: &Pattern) -> Pattern {
        match p {
            Pattern::Num(n, pos) if self.ctx.numerals => {
                let sugar = self.numeral(*n, *pos, Pattern::Name, Pattern::Record(Vec::new(), *pos));
                self.pattern(&sugar)
            }
            Pattern::Num(..) => p.clone(),
            Pattern::Wild(pos) => Pattern::Name(self.fresh(), Vec::new(), *pos),
            Pattern::Record(fs, pos) if fs.is_empty() => {
                let v = self.fresh();
                self.unit_vars.push(v.clone());
                Pattern::Name(v, Vec::new(), *pos)
            }
            Pattern::Record(fs, pos) => {
                Pattern::Record(fs.iter().map(|(d, q)| (d.clone(), self.pattern(q))).collect(), *pos)
            }
            Pattern::Name(c, args, pos) => {
                let args = match (self.ctx.ctor_args.get(c), args.len()) {
                    (Some(0), 0) => vec![Pattern::Record(Vec::new(), *pos)],
                    (Some(&k), n) if k >= 2 && n == k => vec![Pattern::Record(
                        TUPLE_FIELDS.iter().map(|f| name(f)).zip(args.iter().cloned()).collect(),
                        *pos,
                    )],
                    _ => args.clone(),
                };
                Pattern::Name(c.clone(), args.iter().map(|a| self.pattern(a)).collect(), *pos)
            }
        }
    }

    fn expr(&mut self, e: &Expr, first_var: Option<&Name>) -> Expr {
        match e {
            Expr::Num(n, pos) if self.ctx.numerals => {
                let sugar = self.numeral(*n, *pos, Expr::Name, Expr::Record(Vec::new(), *pos));
                self.expr(&sugar, first_var)
            }
            Expr::Num(..) => e.clone(),
            Expr::Record(fs, pos) if fs.is_empty() => match (self.unit_vars.first(), first_var) {
                (Some(v), _) => Expr::Name(v.clone(), Vec::new(), *pos),
                (None, Some(v)) => Expr::Name(name(EMPTY_RECORD), vec![Expr::Name(v.clone(), Vec::new(), *pos)], *pos),
                (None, None) => Expr::Name(name(EMPTY_RECORD), Vec::new(), *pos),
            },
            Expr::Record(fs, pos) => {
                Expr::Record(fs.iter().map(|(d, x)| (d.clone(), self.expr(x, first_var))).collect(), *pos)
            }
            Expr::Project(x, d, pos) => Expr::Project(alloc::boxed::Box::new(self.expr(x, first_var)), d.clone(), *pos),
            Expr::Name(c, args, pos) => {
                let args = match (self.ctx.ctor_args.get(c), args.len()) {
                    (Some(0), 0) => vec![Expr::Record(Vec::new(), *pos)],
                    (Some(&k), n) if k >= 2 && n == k => vec![Expr::Record(
                        TUPLE_FIELDS.iter().map(|f| name(f)).zip(args.iter().cloned()).collect(),
                        *pos,
                    )],
                    _ => args.clone(),
                };
                Expr::Name(c.clone(), args.iter().map(|a| self.expr(a, first_var)).collect(), *pos)
            }
        }
    }
}

fn pattern_names(p: &Pattern, out: &mut Vec<Name>) {
    match p {
        Pattern::Name(n, args, _) => {
            out.push(n.clone());
            args.iter().for_each(|a| pattern_names(a, out));
        }
        Pattern::Record(fs, _) => fs.iter().for_each(|(_, q)| pattern_names(q, out)),
        Pattern::Wild(_) | Pattern::Num(..) => {}
    }
}

fn first_variable(ps: &[Pattern], ctx: &Ctx) -> Option<Name> {
    let mut names = Vec::new();
    ps.iter().for_each(|p| pattern_names(p, &mut names));
    names.into_iter().find(|n| !ctx.ctor_args.contains_key(n))
}

/// Rewrite the sugar of `program` away. Desugaring is idempotent.
pub fn desugar(program: &Program) -> Program {
    let mut ctor_args = BTreeMap::new();
    let mut numerals = false;
    for t in program.types() {
        if t.polarity == Polarity::Data {
            for item in &t.items {
                ctor_args.insert(item.name.clone(), item.args.len());
            }
            let has = |c: &str| t.items.iter().any(|i| &*i.name == c);
            numerals |= &*t.name == "nat" && has("Zero") && has("Succ");
        }
    }
    let ctx = Ctx { ctor_args, numerals };
    let items = program
        .items
        .iter()
        .map(|item| match item {
            Item::Type(_) => item.clone(),
            Item::Group(g) => {
                let mut g = g.clone();
                for d in &mut g.defs {
                    for c in &mut d.clauses {
                        let mut used = Vec::new();
                        c.patterns.iter().for_each(|p| pattern_names(p, &mut used));
                        let mut cc =
                            ClauseCtx { ctx: &ctx, used: used.into_iter().collect(), next: 0, unit_vars: Vec::new() };
                        c.patterns = c.patterns.iter().map(|p| cc.pattern(p)).collect();
                        let first = first_variable(&c.patterns, &ctx);
                        c.body = cc.expr(&c.body, first.as_ref());
                    }
                }
                Item::Group(g)
            }
        })
        .collect();
    Program { items }
}
