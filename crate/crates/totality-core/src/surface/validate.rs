//! Name resolution and the restrictions of the checked fragment.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::ast::*;
use super::desugar::EMPTY_RECORD;
use super::lexer::Pos;
use crate::term::{name, Name};
use crate::typing::TypeExpr;

/// A resolved pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CPattern {
    Var(Name),
    Ctor(Name, alloc::boxed::Box<CPattern>),
    Record(Vec<(Name, CPattern)>),
}

/// A resolved expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CExpr {
    Var(Name),
    Ctor(Name, alloc::boxed::Box<CExpr>),
    Record(Vec<(Name, CExpr)>),
    Project(alloc::boxed::Box<CExpr>, Name),
    Call(Name, Vec<CExpr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CClause {
    pub patterns: Vec<CPattern>,
    pub body: CExpr,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CDefinition {
    pub name: Name,
    pub signature: Option<TypeExpr>,
    pub arity: usize,
    pub clauses: Vec<CClause>,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CGroup {
    pub defs: Vec<CDefinition>,
    pub pragma: Option<Pragma>,
    /// Some body calls a member of the group.
    pub recursive: bool,
    pub pos: Pos,
}

impl CGroup {
    pub fn names(&self) -> Vec<Name> {
        self.defs.iter().map(|d| d.name.clone()).collect()
    }
}

/// A validated program: declarations plus resolved definition groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckedProgram {
    pub types: Vec<TypeDecl>,
    pub groups: Vec<CGroup>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub pos: Pos,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.pos, self.message)
    }
}

/// Type names provided without a declaration, with their parameter counts.
pub const BUILTIN_TYPES: [(&str, usize); 3] = [("unit", 0), ("prod", 2), ("prod3", 3)];

struct Env {
    type_arity: BTreeMap<Name, usize>,
    ctors: BTreeSet<Name>,
    dtors: BTreeSet<Name>,
    /// Arity of every function defined so far, plus the current group.
    funs: BTreeMap<Name, usize>,
    errors: Vec<Violation>,
}

impl Env {
    fn err(&mut self, pos: Pos, message: String) {
        self.errors.push(Violation { pos, message });
    }

    fn check_type(&mut self, t: &TypeExpr, params: Option<&[Name]>, pos: Pos) {
        match t {
            TypeExpr::Var(v) => {
                if params.is_some_and(|ps| !ps.contains(v)) {
                    self.err(pos, format!("type variable `'{v}` is not a parameter of the declaration"));
                }
            }
            TypeExpr::App(h, args) => {
                match self.type_arity.get(h) {
                    None => self.err(pos, format!("unknown type `{h}`")),
                    Some(&k) if k != args.len() => {
                        self.err(pos, format!("type `{h}` expects {k} parameters, got {}", args.len()))
                    }
                    _ => {}
                }
                args.iter().for_each(|a| self.check_type(a, params, pos));
            }
            TypeExpr::Arrow(a, b) => {
                if params.is_some() {
                    self.err(pos, "function types cannot appear inside declarations".into());
                }
                self.check_type(a, params, pos);
                self.check_type(b, params, pos);
            }
        }
    }

    fn declarations(&mut self, program: &Program) {
        for (t, k) in BUILTIN_TYPES {
            self.type_arity.insert(name(t), k);
        }
        for t in program.types() {
            if BUILTIN_TYPES.iter().any(|b| b.0 == &*t.name) {
                self.err(t.pos, format!("`{}` is a built-in type", t.name));
            } else if self.type_arity.insert(t.name.clone(), t.params.len()).is_some() {
                self.err(t.pos, format!("type `{}` is declared twice", t.name));
            }
            let distinct: BTreeSet<_> = t.params.iter().collect();
            if distinct.len() != t.params.len() {
                self.err(t.pos, format!("repeated type parameter in `{}`", t.name));
            }
        }
        for builtin in ["Fst", "Snd", "Thd"] {
            self.dtors.insert(name(builtin));
        }
        for t in program.types() {
            let own = TypeExpr::App(t.name.clone(), t.params.iter().cloned().map(TypeExpr::Var).collect());
            for item in &t.items {
                let fresh = !self.ctors.contains(&item.name) && !self.dtors.contains(&item.name);
                if !fresh {
                    self.err(item.pos, format!("`{}` is declared more than once", item.name));
                }
                match t.polarity {
                    Polarity::Data => {
                        self.ctors.insert(item.name.clone());
                        if item.result != own {
                            self.err(item.pos, format!("constructor `{}` must build `{own}`", item.name));
                        }
                        if item.args.len() > 3 {
                            self.err(item.pos, format!("constructor `{}` takes more than three arguments", item.name));
                        }
                    }
                    Polarity::Codata => {
                        self.dtors.insert(item.name.clone());
                        if item.args.len() != 1 || item.args[0] != own {
                            self.err(item.pos, format!("destructor `{}` must take `{own}`", item.name));
                        }
                    }
                }
                for a in item.args.iter().chain(core::iter::once(&item.result)) {
                    self.check_type(a, Some(&t.params), item.pos);
                }
            }
        }
    }

    fn pattern(&mut self, p: &Pattern, vars: &mut BTreeSet<Name>) -> CPattern {
        match p {
            Pattern::Name(n, args, pos) if self.ctors.contains(n) => {
                if args.len() != 1 {
                    self.err(*pos, format!("constructor `{n}` applied to {} arguments", args.len()));
                    return CPattern::Var(n.clone());
                }
                CPattern::Ctor(n.clone(), alloc::boxed::Box::new(self.pattern(&args[0], vars)))
            }
            Pattern::Name(n, args, pos) => {
                if !args.is_empty() {
                    self.err(*pos, format!("unknown constructor `{n}`"));
                } else if self.dtors.contains(n) || self.funs.contains_key(n) {
                    self.err(*pos, format!("`{n}` cannot be used as a pattern variable"));
                } else if !vars.insert(n.clone()) {
                    self.err(*pos, format!("variable `{n}` occurs twice in the patterns"));
                }
                CPattern::Var(n.clone())
            }
            Pattern::Record(fs, pos) => CPattern::Record(self.fields(fs, *pos, |env, q| env.pattern(q, vars))),
            Pattern::Wild(pos) => {
                self.err(*pos, "wildcard left after desugaring".into());
                CPattern::Var(name("_"))
            }
            Pattern::Num(_, pos) => {
                self.err(*pos, "numerals need `data nat` with `Zero` and `Succ`".into());
                CPattern::Var(name("_"))
            }
        }
    }

    fn fields<T, U>(&mut self, fs: &[(Name, T)], pos: Pos, mut f: impl FnMut(&mut Self, &T) -> U) -> Vec<(Name, U)> {
        if fs.is_empty() {
            self.err(pos, "empty record left after desugaring".into());
        }
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for (d, x) in fs {
            if !self.dtors.contains(d) {
                self.err(pos, format!("unknown field `{d}`"));
            }
            if !seen.insert(d.clone()) {
                self.err(pos, format!("field `{d}` given twice"));
            }
            out.push((d.clone(), f(self, x)));
        }
        out
    }

    fn expr(&mut self, e: &Expr, vars: &BTreeSet<Name>, calls: &mut BTreeSet<Name>) -> CExpr {
        match e {
            Expr::Name(n, args, pos) if vars.contains(n) => {
                if !args.is_empty() {
                    self.err(*pos, format!("variable `{n}` is applied to arguments"));
                }
                CExpr::Var(n.clone())
            }
            Expr::Name(n, args, pos) if self.ctors.contains(n) => {
                if args.len() != 1 {
                    self.err(*pos, format!("constructor `{n}` applied to {} arguments", args.len()));
                    return CExpr::Var(n.clone());
                }
                CExpr::Ctor(n.clone(), alloc::boxed::Box::new(self.expr(&args[0], vars, calls)))
            }
            Expr::Name(n, args, pos) => {
                match self.funs.get(n) {
                    Some(&k) if k != args.len() => {
                        self.err(*pos, format!("`{n}` has arity {k} but is applied to {} arguments", args.len()))
                    }
                    Some(_) => {}
                    None if &**n == EMPTY_RECORD && args.len() <= 1 => {}
                    None => self.err(*pos, format!("unknown name `{n}`")),
                }
                calls.insert(n.clone());
                CExpr::Call(n.clone(), args.iter().map(|a| self.expr(a, vars, calls)).collect())
            }
            Expr::Record(fs, pos) => CExpr::Record(self.fields(fs, *pos, |env, x| env.expr(x, vars, calls))),
            Expr::Project(x, d, pos) => {
                if !self.dtors.contains(d) {
                    self.err(*pos, format!("unknown field `{d}`"));
                }
                CExpr::Project(alloc::boxed::Box::new(self.expr(x, vars, calls)), d.clone())
            }
            Expr::Num(_, pos) => {
                self.err(*pos, "numerals need `data nat` with `Zero` and `Succ`".into());
                CExpr::Var(name("_"))
            }
        }
    }

    fn group(&mut self, g: &Group) -> CGroup {
        for d in &g.defs {
            if self.ctors.contains(&d.name) || self.dtors.contains(&d.name) {
                self.err(d.pos, format!("`{}` is already a constructor or field", d.name));
            }
            if self.funs.insert(d.name.clone(), d.arity()).is_some() {
                self.err(d.pos, format!("`{}` is defined twice", d.name));
            }
            if let Some(sig) = &d.signature {
                self.check_type(sig, None, d.pos);
            }
        }
        let members: BTreeSet<_> = g.defs.iter().map(|d| d.name.clone()).collect();
        let mut recursive = false;
        let defs = g
            .defs
            .iter()
            .map(|d| {
                let arity = d.arity();
                let clauses = d
                    .clauses
                    .iter()
                    .map(|c| {
                        if c.patterns.len() != arity {
                            self.err(c.pos, format!("clauses of `{}` disagree on the number of arguments", d.name));
                        }
                        let mut vars = BTreeSet::new();
                        let patterns = c.patterns.iter().map(|p| self.pattern(p, &mut vars)).collect();
                        let mut calls = BTreeSet::new();
                        let body = self.expr(&c.body, &vars, &mut calls);
                        recursive |= calls.iter().any(|f| members.contains(f));
                        CClause { patterns, body, pos: c.pos }
                    })
                    .collect();
                CDefinition { name: d.name.clone(), signature: d.signature.clone(), arity, clauses, pos: d.pos }
            })
            .collect();
        CGroup { defs, pragma: g.pragma, recursive, pos: g.pos }
    }
}

/// Resolve names and check the restrictions on a desugared program: known
/// names, full application, linear patterns, no empty record left.
pub fn validate_restrictions(program: &Program) -> Result<CheckedProgram, Vec<Violation>> {
    let mut env = Env {
        type_arity: BTreeMap::new(),
        ctors: BTreeSet::new(),
        dtors: BTreeSet::new(),
        funs: BTreeMap::new(),
        errors: Vec::new(),
    };
    env.declarations(program);
    let groups = program.groups().map(|g| env.group(g)).collect();
    if env.errors.is_empty() {
        Ok(CheckedProgram { types: program.types().cloned().collect(), groups })
    } else {
        Err(env.errors)
    }
}
