//! Surface syntax trees, as parsed.

use alloc::vec::Vec;

use super::lexer::Pos;
use crate::term::Name;
use crate::typing::TypeExpr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Polarity {
    Data,
    Codata,
}

/// `C : A1 -> ... -> T(params)` in a data declaration, or
/// `D : T(params) -> A` in a codata declaration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeclItem {
    pub name: Name,
    pub args: Vec<TypeExpr>,
    pub result: TypeExpr,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeDecl {
    pub name: Name,
    pub params: Vec<Name>,
    pub polarity: Polarity,
    pub items: Vec<DeclItem>,
    pub pos: Pos,
}

/// Patterns before name resolution: `Name` covers both variables and
/// constructor applications.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Pattern {
    Name(Name, Vec<Pattern>, Pos),
    Record(Vec<(Name, Pattern)>, Pos),
    Wild(Pos),
    Num(u64, Pos),
}

/// Expressions before name resolution: `Name` covers variables, constructor
/// applications and function calls.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Name(Name, Vec<Expr>, Pos),
    Record(Vec<(Name, Expr)>, Pos),
    Project(alloc::boxed::Box<Expr>, Name, Pos),
    Num(u64, Pos),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clause {
    pub fname: Name,
    pub patterns: Vec<Pattern>,
    pub body: Expr,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Definition {
    pub name: Name,
    pub signature: Option<TypeExpr>,
    pub clauses: Vec<Clause>,
    pub pos: Pos,
}

impl Definition {
    pub fn arity(&self) -> usize {
        self.clauses.first().map_or(0, |c| c.patterns.len())
    }
}

/// `-- totality: B=_, D=_` just before a `val`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Pragma {
    pub b: Option<u32>,
    pub d: Option<u32>,
}

/// Definitions chained with `and`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    pub defs: Vec<Definition>,
    pub pragma: Option<Pragma>,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Type(TypeDecl),
    Group(Group),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Program {
    pub items: Vec<Item>,
}

impl Program {
    pub fn types(&self) -> impl Iterator<Item = &TypeDecl> {
        self.items.iter().filter_map(|i| match i {
            Item::Type(t) => Some(t),
            Item::Group(_) => None,
        })
    }

    pub fn groups(&self) -> impl Iterator<Item = &Group> {
        self.items.iter().filter_map(|i| match i {
            Item::Group(g) => Some(g),
            Item::Type(_) => None,
        })
    }

    pub fn definitions(&self) -> impl Iterator<Item = &Definition> {
        self.groups().flat_map(|g| g.defs.iter())
    }
}
