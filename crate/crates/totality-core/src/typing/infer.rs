//! Inference for definition groups. Members of a group are monomorphic;
//! earlier definitions are used at fresh instances of their types.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::env::TypeEnv;
use super::unify::{resolve, unify_in, walk, Subst};
use super::TypeExpr;
use crate::surface::{CExpr, CGroup, CPattern, Pos, EMPTY_RECORD};
use crate::term::{name, Name};

/// Pattern annotated with the types of its variables, constructed values and
/// records.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TPattern {
    Var(Name, TypeExpr),
    /// Constructor and the type it builds.
    Ctor(Name, TypeExpr, Box<TPattern>),
    /// Record and its codata type.
    Record(Vec<(Name, TPattern)>, TypeExpr),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TExpr {
    Var(Name, TypeExpr),
    Ctor(Name, TypeExpr, Box<TExpr>),
    Record(Vec<(Name, TExpr)>, TypeExpr),
    /// Projection and the codata type it takes apart.
    Project(Box<TExpr>, Name, TypeExpr),
    Call(Name, Vec<TExpr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TClause {
    pub patterns: Vec<TPattern>,
    pub body: TExpr,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TDefinition {
    pub name: Name,
    pub arity: usize,
    /// `a1 -> ... -> an -> r`, type variables as `Var`.
    pub ty: TypeExpr,
    pub clauses: Vec<TClause>,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TGroup {
    pub defs: Vec<TDefinition>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{pos}: in `{def}`: {message}")]
pub struct TypeError {
    pub def: Name,
    pub pos: Pos,
    pub message: String,
}

/// Types of the definitions checked so far, with arities.
pub type FunEnv = BTreeMap<Name, (usize, TypeExpr)>;

struct Infer<'a> {
    env: &'a TypeEnv,
    funs: &'a FunEnv,
    group: BTreeMap<Name, TypeExpr>,
    s: Subst,
    next: usize,
    def: Name,
    pos: Pos,
}

fn is_meta(v: &str) -> bool {
    v.starts_with('?')
}

impl Infer<'_> {
    fn fresh(&mut self) -> TypeExpr {
        self.next += 1;
        TypeExpr::Var(name(&format!("?{}", self.next)))
    }

    fn err<T>(&self, message: String) -> Result<T, TypeError> {
        Err(TypeError { def: self.def.clone(), pos: self.pos, message })
    }

    fn unify(&mut self, a: &TypeExpr, b: &TypeExpr) -> Result<(), TypeError> {
        unify_in(&mut self.s, a, b).or_else(|e| self.err(format!("{e}")))
    }

    /// Fresh instance of a declared type.
    fn instance(&mut self, t: &Name) -> TypeExpr {
        let n = self.env.types[t].params.len();
        TypeExpr::App(t.clone(), (0..n).map(|_| self.fresh()).collect())
    }

    /// Fresh copy of a polymorphic type: every `Var` is renamed.
    fn instantiate(&mut self, t: &TypeExpr) -> TypeExpr {
        let mut vars = Vec::new();
        t.vars(&mut vars);
        let fresh: Vec<(Name, TypeExpr)> = vars.into_iter().map(|v| (v, self.fresh())).collect();
        t.subst(&|v| fresh.iter().find(|f| &f.0 == v).map(|f| f.1.clone()))
    }

    fn item(&mut self, item: &Name, kind: &str) -> Result<(TypeExpr, TypeExpr), TypeError> {
        let Some(owner) = self.env.owner(item).cloned() else {
            return self.err(format!("unknown {kind} `{item}`"));
        };
        let t = self.instance(&owner);
        let TypeExpr::App(_, args) = &t else { unreachable!() };
        let inner = self.env.item_type(&owner, item, args).unwrap();
        Ok((t, inner))
    }

    fn record_type(&mut self, fields: &[Name]) -> Result<TypeExpr, TypeError> {
        match self.env.record_type(fields) {
            Some(t) => {
                let t = t.clone();
                Ok(self.instance(&t))
            }
            None => {
                let names: Vec<String> = fields.iter().map(|f| format!("{f}")).collect();
                self.err(format!("no codata type has exactly the fields {{{}}}", names.join(", ")))
            }
        }
    }

    fn field_type(&self, record: &TypeExpr, d: &Name) -> TypeExpr {
        let TypeExpr::App(h, args) = record else { unreachable!() };
        self.env.item_type(h, d, args).unwrap()
    }

    fn pattern(
        &mut self,
        p: &CPattern,
        expected: &TypeExpr,
        vars: &mut BTreeMap<Name, TypeExpr>,
    ) -> Result<TPattern, TypeError> {
        match p {
            CPattern::Var(x) => {
                vars.insert(x.clone(), expected.clone());
                Ok(TPattern::Var(x.clone(), expected.clone()))
            }
            CPattern::Ctor(c, q) => {
                let (t, arg) = self.item(c, "constructor")?;
                self.unify(expected, &t)?;
                Ok(TPattern::Ctor(c.clone(), t, Box::new(self.pattern(q, &arg, vars)?)))
            }
            CPattern::Record(fs) => {
                let names: Vec<Name> = fs.iter().map(|f| f.0.clone()).collect();
                let t = self.record_type(&names)?;
                self.unify(expected, &t)?;
                let fields = fs
                    .iter()
                    .map(|(d, q)| {
                        let ft = self.field_type(&t, d);
                        Ok((d.clone(), self.pattern(q, &ft, vars)?))
                    })
                    .collect::<Result<_, TypeError>>()?;
                Ok(TPattern::Record(fields, t))
            }
        }
    }

    fn expr(&mut self, e: &CExpr, expected: &TypeExpr, vars: &BTreeMap<Name, TypeExpr>) -> Result<TExpr, TypeError> {
        match e {
            CExpr::Var(x) => {
                let t = vars[x].clone();
                self.unify(&t, expected)?;
                Ok(TExpr::Var(x.clone(), t))
            }
            CExpr::Ctor(c, x) => {
                let (t, arg) = self.item(c, "constructor")?;
                self.unify(expected, &t)?;
                Ok(TExpr::Ctor(c.clone(), t, Box::new(self.expr(x, &arg, vars)?)))
            }
            CExpr::Record(fs) => {
                let names: Vec<Name> = fs.iter().map(|f| f.0.clone()).collect();
                let t = self.record_type(&names)?;
                self.unify(expected, &t)?;
                let fields = fs
                    .iter()
                    .map(|(d, x)| {
                        let ft = self.field_type(&t, d);
                        Ok((d.clone(), self.expr(x, &ft, vars)?))
                    })
                    .collect::<Result<_, TypeError>>()?;
                Ok(TExpr::Record(fields, t))
            }
            CExpr::Project(x, d) => {
                let m = self.fresh();
                let inner = self.expr(x, &m, vars)?;
                let known = walk(&self.s, &m);
                let (t, result) = match known.head() {
                    Some(h) if &**h == "prod3" && &**d != "Thd" => {
                        let t = self.instance(&name("prod3"));
                        let r = self.field_type(&t, d);
                        (t, r)
                    }
                    _ => self.item(d, "field")?,
                };
                self.unify(&m, &t)?;
                self.unify(expected, &result)?;
                Ok(TExpr::Project(Box::new(inner), d.clone(), t))
            }
            CExpr::Call(g, args) => {
                let ty = if let Some(t) = self.group.get(g) {
                    t.clone()
                } else if let Some((_, t)) = self.funs.get(g) {
                    let t = t.clone();
                    self.instantiate(&t)
                } else if &**g == EMPTY_RECORD {
                    let unit = TypeExpr::con("unit");
                    match args.len() {
                        0 => unit,
                        _ => TypeExpr::arrow(self.fresh(), unit),
                    }
                } else {
                    return self.err(format!("unknown function `{g}`"));
                };
                let mut cur = ty;
                let mut targs = Vec::new();
                for a in args {
                    let TypeExpr::Arrow(at, rest) = walk(&self.s, &cur) else {
                        return self.err(format!("`{g}` is applied to too many arguments"));
                    };
                    targs.push(self.expr(a, &at, vars)?);
                    cur = *rest;
                }
                self.unify(expected, &cur)?;
                Ok(TExpr::Call(g.clone(), targs))
            }
        }
    }
}

/// Replace rigid signature variables (`'x` as nullary constructors) and
/// leftover unknowns by type variables.
fn generalize(t: &TypeExpr, metas: &mut Vec<Name>) -> TypeExpr {
    match t {
        TypeExpr::Var(v) if is_meta(v) => {
            let k = match metas.iter().position(|m| m == v) {
                Some(k) => k,
                None => {
                    metas.push(v.clone());
                    metas.len() - 1
                }
            };
            TypeExpr::Var(name(&format!("_{}", k + 1)))
        }
        TypeExpr::Var(_) => t.clone(),
        TypeExpr::App(h, args) if args.is_empty() && h.starts_with('\'') => TypeExpr::Var(name(&h[1..])),
        TypeExpr::App(h, args) => TypeExpr::App(h.clone(), args.iter().map(|a| generalize(a, metas)).collect()),
        TypeExpr::Arrow(a, b) => TypeExpr::arrow(generalize(a, metas), generalize(b, metas)),
    }
}

fn rigid(t: &TypeExpr) -> TypeExpr {
    match t {
        TypeExpr::Var(v) => TypeExpr::App(name(&format!("'{v}")), Vec::new()),
        TypeExpr::App(h, args) => TypeExpr::App(h.clone(), args.iter().map(rigid).collect()),
        TypeExpr::Arrow(a, b) => TypeExpr::arrow(rigid(a), rigid(b)),
    }
}

struct Finish<'a> {
    s: &'a Subst,
    metas: Vec<Name>,
}

impl Finish<'_> {
    fn ty(&mut self, t: &TypeExpr) -> TypeExpr {
        generalize(&resolve(self.s, t), &mut self.metas)
    }

    fn pattern(&mut self, p: &TPattern) -> TPattern {
        match p {
            TPattern::Var(x, t) => TPattern::Var(x.clone(), self.ty(t)),
            TPattern::Ctor(c, t, q) => TPattern::Ctor(c.clone(), self.ty(t), Box::new(self.pattern(q))),
            TPattern::Record(fs, t) => {
                let fs = fs.iter().map(|(d, q)| (d.clone(), self.pattern(q))).collect();
                TPattern::Record(fs, self.ty(t))
            }
        }
    }

    fn expr(&mut self, e: &TExpr) -> TExpr {
        match e {
            TExpr::Var(x, t) => TExpr::Var(x.clone(), self.ty(t)),
            TExpr::Ctor(c, t, x) => TExpr::Ctor(c.clone(), self.ty(t), Box::new(self.expr(x))),
            TExpr::Record(fs, t) => {
                let fs = fs.iter().map(|(d, x)| (d.clone(), self.expr(x))).collect();
                TExpr::Record(fs, self.ty(t))
            }
            TExpr::Project(x, d, t) => TExpr::Project(Box::new(self.expr(x)), d.clone(), self.ty(t)),
            TExpr::Call(g, args) => TExpr::Call(g.clone(), args.iter().map(|a| self.expr(a)).collect()),
        }
    }
}

/// Annotate every member of `group`. `funs` holds the types of earlier
/// definitions and is extended with the members on success.
pub fn annotate_group(group: &CGroup, env: &TypeEnv, funs: &mut FunEnv) -> Result<TGroup, TypeError> {
    let mut inf = Infer {
        env,
        funs,
        group: BTreeMap::new(),
        s: Subst::new(),
        next: 0,
        def: group.defs[0].name.clone(),
        pos: group.pos,
    };
    for d in &group.defs {
        inf.def = d.name.clone();
        inf.pos = d.pos;
        let args: Vec<TypeExpr> = (0..d.arity).map(|_| inf.fresh()).collect();
        let res = inf.fresh();
        let ty = TypeExpr::arrows(args, res);
        if let Some(sig) = &d.signature {
            unify_in(&mut inf.s, &ty, &rigid(sig))
                .or_else(|e| inf.err(format!("signature `{sig}` does not fit {} arguments: {e}", d.arity)))?;
        }
        inf.group.insert(d.name.clone(), ty);
    }
    let mut raw = Vec::new();
    for d in &group.defs {
        inf.def = d.name.clone();
        let ty = inf.group[&d.name].clone();
        let mut clauses = Vec::new();
        for c in &d.clauses {
            inf.pos = c.pos;
            let (arg_types, res) = {
                let (a, r) = ty.split_arrows();
                (a.into_iter().cloned().collect::<Vec<_>>(), r.clone())
            };
            let mut vars = BTreeMap::new();
            let patterns = c
                .patterns
                .iter()
                .zip(&arg_types)
                .map(|(p, t)| inf.pattern(p, t, &mut vars))
                .collect::<Result<Vec<_>, _>>()?;
            let body = inf.expr(&c.body, &res, &vars)?;
            clauses.push(TClause { patterns, body, pos: c.pos });
        }
        raw.push((d, ty, clauses));
    }
    let mut fin = Finish { s: &inf.s, metas: Vec::new() };
    let defs: Vec<TDefinition> = raw
        .into_iter()
        .map(|(d, ty, clauses)| TDefinition {
            name: d.name.clone(),
            arity: d.arity,
            ty: fin.ty(&ty),
            clauses: clauses
                .iter()
                .map(|c| TClause {
                    patterns: c.patterns.iter().map(|p| fin.pattern(p)).collect(),
                    body: fin.expr(&c.body),
                    pos: c.pos,
                })
                .collect(),
            pos: d.pos,
        })
        .collect();
    for d in &defs {
        funs.insert(d.name.clone(), (d.arity, d.ty.clone()));
    }
    Ok(TGroup { defs })
}
