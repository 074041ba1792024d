//! Type expressions.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use crate::term::Name;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TypeExpr {
    /// `'x`, without the quote.
    Var(Name),
    App(Name, Vec<TypeExpr>),
    Arrow(Box<TypeExpr>, Box<TypeExpr>),
}

impl TypeExpr {
    pub fn con(n: &str) -> TypeExpr {
        TypeExpr::App(crate::term::name(n), Vec::new())
    }

    pub fn arrow(a: TypeExpr, b: TypeExpr) -> TypeExpr {
        TypeExpr::Arrow(Box::new(a), Box::new(b))
    }

    /// `a1 -> ... -> an -> r`.
    pub fn arrows(args: Vec<TypeExpr>, r: TypeExpr) -> TypeExpr {
        args.into_iter().rev().fold(r, |acc, a| TypeExpr::arrow(a, acc))
    }

    /// Split `a1 -> ... -> an -> r` into `([a1..an], r)`.
    pub fn split_arrows(&self) -> (Vec<&TypeExpr>, &TypeExpr) {
        let mut args = Vec::new();
        let mut cur = self;
        while let TypeExpr::Arrow(a, b) = cur {
            args.push(&**a);
            cur = b;
        }
        (args, cur)
    }

    pub fn head(&self) -> Option<&Name> {
        match self {
            TypeExpr::App(h, _) => Some(h),
            _ => None,
        }
    }

    /// Proper syntactic subexpressions, outermost first.
    pub fn proper_subexpressions(&self) -> Vec<&TypeExpr> {
        let mut out = Vec::new();
        let mut stack: Vec<&TypeExpr> = self.children();
        while let Some(t) = stack.pop() {
            out.push(t);
            stack.extend(t.children());
        }
        out
    }

    fn children(&self) -> Vec<&TypeExpr> {
        match self {
            TypeExpr::Var(_) => Vec::new(),
            TypeExpr::App(_, args) => args.iter().collect(),
            TypeExpr::Arrow(a, b) => alloc::vec![&**a, &**b],
        }
    }

    pub fn occurs(&self, v: &str) -> bool {
        match self {
            TypeExpr::Var(x) => &**x == v,
            _ => self.children().iter().any(|c| c.occurs(v)),
        }
    }

    pub fn subst(&self, f: &dyn Fn(&Name) -> Option<TypeExpr>) -> TypeExpr {
        match self {
            TypeExpr::Var(x) => f(x).unwrap_or_else(|| self.clone()),
            TypeExpr::App(h, args) => TypeExpr::App(h.clone(), args.iter().map(|a| a.subst(f)).collect()),
            TypeExpr::Arrow(a, b) => TypeExpr::arrow(a.subst(f), b.subst(f)),
        }
    }

    pub fn vars(&self, out: &mut Vec<Name>) {
        match self {
            TypeExpr::Var(x) => {
                if !out.contains(x) {
                    out.push(x.clone())
                }
            }
            _ => self.children().into_iter().for_each(|c| c.vars(out)),
        }
    }
}

impl fmt::Display for TypeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeExpr::Var(x) => write!(f, "'{x}"),
            TypeExpr::App(h, args) => {
                f.write_str(h)?;
                if !args.is_empty() {
                    f.write_str("(")?;
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            f.write_str(", ")?;
                        }
                        write!(f, "{a}")?;
                    }
                    f.write_str(")")?;
                }
                Ok(())
            }
            TypeExpr::Arrow(a, b) => match **a {
                TypeExpr::Arrow(..) => write!(f, "({a}) -> {b}"),
                _ => write!(f, "{a} -> {b}"),
            },
        }
    }
}
