//! Printing programs back to source text.

use alloc::string::String;
use core::fmt::{self, Write};

use super::ast::*;

fn fields<T>(
    f: &mut fmt::Formatter<'_>,
    fs: &[(crate::term::Name, T)],
    item: impl Fn(&mut fmt::Formatter<'_>, &T) -> fmt::Result,
) -> fmt::Result {
    if fs.is_empty() {
        return f.write_str("{}");
    }
    f.write_str("{ ")?;
    for (i, (d, t)) in fs.iter().enumerate() {
        if i > 0 {
            f.write_str("; ")?;
        }
        write!(f, "{d} = ")?;
        item(f, t)?;
    }
    f.write_str(" }")
}

fn pattern(f: &mut fmt::Formatter<'_>, p: &Pattern) -> fmt::Result {
    match p {
        Pattern::Name(n, args, _) => {
            f.write_str(n)?;
            args.iter().try_for_each(|a| {
                f.write_char(' ')?;
                pattern_atom(f, a)
            })
        }
        _ => pattern_atom(f, p),
    }
}

fn pattern_atom(f: &mut fmt::Formatter<'_>, p: &Pattern) -> fmt::Result {
    match p {
        Pattern::Name(n, args, _) if args.is_empty() => f.write_str(n),
        Pattern::Name(..) => {
            f.write_char('(')?;
            pattern(f, p)?;
            f.write_char(')')
        }
        Pattern::Record(fs, _) => fields(f, fs, pattern),
        Pattern::Wild(_) => f.write_char('_'),
        Pattern::Num(n, _) => write!(f, "{n}"),
    }
}

fn expr(f: &mut fmt::Formatter<'_>, e: &Expr) -> fmt::Result {
    match e {
        Expr::Name(n, args, _) => {
            f.write_str(n)?;
            args.iter().try_for_each(|a| {
                f.write_char(' ')?;
                expr_atom(f, a)
            })
        }
        _ => expr_atom(f, e),
    }
}

fn expr_atom(f: &mut fmt::Formatter<'_>, e: &Expr) -> fmt::Result {
    match e {
        Expr::Name(n, args, _) if args.is_empty() => f.write_str(n),
        Expr::Name(..) => {
            f.write_char('(')?;
            expr(f, e)?;
            f.write_char(')')
        }
        Expr::Record(fs, _) => fields(f, fs, expr),
        Expr::Project(inner, d, _) => {
            expr_atom(f, inner)?;
            write!(f, ".{d}")
        }
        Expr::Num(n, _) => write!(f, "{n}"),
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        pattern(f, self)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        expr(f, self)
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fname)?;
        for p in &self.patterns {
            f.write_char(' ')?;
            pattern_atom(f, p)?;
        }
        write!(f, " = {}", self.body)
    }
}

impl fmt::Display for Definition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.signature {
            Some(t) => {
                write!(f, "{} : {t}", self.name)?;
                self.clauses.iter().try_for_each(|c| write!(f, "\n  | {c}"))
            }
            None => {
                let mut cs = self.clauses.iter();
                if let Some(c) = cs.next() {
                    write!(f, "{c}")?;
                }
                cs.try_for_each(|c| write!(f, "\n  | {c}"))
            }
        }
    }
}

impl fmt::Display for Pragma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("-- totality:")?;
        let mut sep = " ";
        if let Some(b) = self.b {
            write!(f, "{sep}B={b}")?;
            sep = ", ";
        }
        if let Some(d) = self.d {
            write!(f, "{sep}D={d}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(p) = &self.pragma {
            writeln!(f, "{p}")?;
        }
        for (i, d) in self.defs.iter().enumerate() {
            f.write_str(if i == 0 { "val " } else { "\nand " })?;
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl fmt::Display for TypeDecl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kw = match self.polarity {
            Polarity::Data => "data",
            Polarity::Codata => "codata",
        };
        write!(f, "{kw} {}", self.name)?;
        if !self.params.is_empty() {
            f.write_char('(')?;
            for (i, p) in self.params.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "'{p}")?;
            }
            f.write_char(')')?;
        }
        f.write_str(" where")?;
        for item in &self.items {
            write!(f, "\n  | {} : ", item.name)?;
            for a in &item.args {
                match a {
                    crate::typing::TypeExpr::Arrow(..) => write!(f, "({a}) -> ")?,
                    _ => write!(f, "{a} -> ")?,
                }
            }
            write!(f, "{}", item.result)?;
        }
        Ok(())
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, item) in self.items.iter().enumerate() {
            if i > 0 {
                f.write_str("\n\n")?;
            }
            match item {
                Item::Type(t) => write!(f, "{t}")?,
                Item::Group(g) => write!(f, "{g}")?,
            }
        }
        if !self.items.is_empty() {
            f.write_char('\n')?;
        }
        Ok(())
    }
}

/// Source text of `p`.
pub fn pretty_print(p: &Program) -> String {
    alloc::format!("{p}")
}
