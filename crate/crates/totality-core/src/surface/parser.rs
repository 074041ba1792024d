//! Recursive-descent parser for `.ch` sources.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::ast::*;
use super::lexer::{lex, Pos, Tok};
use super::SyntaxError;
use crate::term::{name, Name};
use crate::typing::TypeExpr;

type PResult<T> = Result<T, SyntaxError>;

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    end: Pos,
}

fn tuple_field(i: usize) -> Option<&'static str> {
    ["Fst", "Snd", "Thd"].get(i).copied()
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.0)
    }

    fn pos(&self) -> Pos {
        self.toks.get(self.at).map_or(self.end, |t| t.1)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|t| t.0.clone());
        self.at += 1;
        t
    }

    fn err<T>(&self, message: String) -> PResult<T> {
        Err(SyntaxError { pos: self.pos(), message })
    }

    fn unexpected<T>(&self, what: &str) -> PResult<T> {
        match self.peek() {
            Some(t) => self.err(format!("expected {what}, found {t}")),
            None => self.err(format!("expected {what}, found end of input")),
        }
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok) -> PResult<()> {
        if self.eat(t) {
            Ok(())
        } else {
            self.unexpected(&format!("{t}"))
        }
    }

    fn ident(&mut self) -> PResult<Name> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let n = name(s);
                self.at += 1;
                Ok(n)
            }
            _ => self.unexpected("an identifier"),
        }
    }

    fn program(&mut self) -> (Program, Vec<SyntaxError>) {
        let mut items = Vec::new();
        let mut errors = Vec::new();
        while self.peek().is_some() {
            match self.item() {
                Ok(item) => items.push(item),
                Err(e) => {
                    errors.push(e);
                    self.at += 1;
                    while !matches!(self.peek(), None | Some(Tok::Val | Tok::Data | Tok::Codata | Tok::Pragma(_))) {
                        self.at += 1;
                    }
                }
            }
        }
        (Program { items }, errors)
    }

    fn item(&mut self) -> PResult<Item> {
        match self.peek() {
            Some(Tok::Data) => self.type_decl(Polarity::Data).map(Item::Type),
            Some(Tok::Codata) => self.type_decl(Polarity::Codata).map(Item::Type),
            Some(Tok::Val) => self.group(None).map(Item::Group),
            Some(Tok::Pragma(text)) => {
                let text = text.clone();
                let pragma = self.pragma(&text)?;
                self.at += 1;
                if self.peek() != Some(&Tok::Val) {
                    return self.err("a totality pragma must come just before `val`".into());
                }
                self.group(Some(pragma)).map(Item::Group)
            }
            _ => self.unexpected("`data`, `codata` or `val`"),
        }
    }

    fn pragma(&self, text: &str) -> PResult<Pragma> {
        let mut p = Pragma::default();
        for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let Some((key, value)) = part.split_once('=') else {
                return self.err(format!("malformed pragma entry `{part}`"));
            };
            let Ok(v) = value.trim().parse::<u32>() else {
                return self.err(format!("malformed pragma value `{}`", value.trim()));
            };
            match key.trim() {
                "B" if v == 0 => return self.err("the weight bound B must be at least 1".into()),
                "B" => p.b = Some(v),
                "D" => p.d = Some(v),
                k => return self.err(format!("unknown pragma key `{k}`")),
            }
        }
        Ok(p)
    }

    fn type_decl(&mut self, polarity: Polarity) -> PResult<TypeDecl> {
        let pos = self.pos();
        self.bump();
        let tname = self.ident()?;
        let mut params = Vec::new();
        if self.eat(&Tok::LParen) {
            loop {
                match self.bump() {
                    Some(Tok::TyVar(v)) => params.push(name(&v)),
                    _ => {
                        self.at -= 1;
                        return self.unexpected("a type variable");
                    }
                }
                if self.eat(&Tok::RParen) {
                    break;
                }
                self.expect(&Tok::Comma)?;
            }
        }
        self.expect(&Tok::Where)?;
        let mut items = Vec::new();
        let first = self.eat(&Tok::Bar);
        if first || matches!(self.peek(), Some(Tok::Ident(_))) {
            loop {
                let ipos = self.pos();
                let iname = self.ident()?;
                self.expect(&Tok::Colon)?;
                let ty = self.type_expr()?;
                let (args, result) = ty.split_arrows();
                let (args, result): (Vec<TypeExpr>, TypeExpr) = (args.into_iter().cloned().collect(), result.clone());
                if polarity == Polarity::Codata && args.len() != 1 {
                    return Err(SyntaxError {
                        pos: ipos,
                        message: format!("destructor `{iname}` must have a type `T -> A`"),
                    });
                }
                items.push(DeclItem { name: iname, args, result, pos: ipos });
                if !self.eat(&Tok::Bar) {
                    break;
                }
            }
        }
        Ok(TypeDecl { name: tname, params, polarity, items, pos })
    }

    fn type_expr(&mut self) -> PResult<TypeExpr> {
        let a = self.type_atom()?;
        if self.eat(&Tok::Arrow) {
            Ok(TypeExpr::arrow(a, self.type_expr()?))
        } else {
            Ok(a)
        }
    }

    fn type_atom(&mut self) -> PResult<TypeExpr> {
        match self.peek() {
            Some(Tok::TyVar(v)) => {
                let v = name(v);
                self.at += 1;
                Ok(TypeExpr::Var(v))
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let t = self.type_expr()?;
                self.expect(&Tok::RParen)?;
                Ok(t)
            }
            Some(Tok::Ident(_)) => {
                let h = self.ident()?;
                let mut args = Vec::new();
                if self.eat(&Tok::LParen) {
                    loop {
                        args.push(self.type_expr()?);
                        if self.eat(&Tok::RParen) {
                            break;
                        }
                        self.expect(&Tok::Comma)?;
                    }
                }
                Ok(TypeExpr::App(h, args))
            }
            _ => self.unexpected("a type"),
        }
    }

    fn group(&mut self, pragma: Option<Pragma>) -> PResult<Group> {
        let pos = self.pos();
        self.expect(&Tok::Val)?;
        let mut defs = alloc::vec![self.definition()?];
        while self.eat(&Tok::And) {
            defs.push(self.definition()?);
        }
        Ok(Group { defs, pragma, pos })
    }

    fn definition(&mut self) -> PResult<Definition> {
        let pos = self.pos();
        let fname = self.ident()?;
        let mut clauses = Vec::new();
        let signature = if self.eat(&Tok::Colon) {
            Some(self.type_expr()?)
        } else {
            clauses.push(self.clause_rest(fname.clone(), pos)?);
            None
        };
        while self.eat(&Tok::Bar) {
            let cpos = self.pos();
            let cname = self.ident()?;
            if cname != fname {
                return Err(SyntaxError {
                    pos: cpos,
                    message: format!("clause for `{cname}` inside the definition of `{fname}`"),
                });
            }
            clauses.push(self.clause_rest(cname, cpos)?);
        }
        if clauses.is_empty() {
            return self.err(format!("definition of `{fname}` has no clauses"));
        }
        Ok(Definition { name: fname, signature, clauses, pos })
    }

    fn clause_rest(&mut self, fname: Name, pos: Pos) -> PResult<Clause> {
        let mut patterns = Vec::new();
        while !matches!(self.peek(), Some(Tok::Eq) | None) {
            patterns.push(self.pattern_atom()?);
        }
        self.expect(&Tok::Eq)?;
        let body = self.expr()?;
        Ok(Clause { fname, patterns, body, pos })
    }

    fn pattern(&mut self) -> PResult<Pattern> {
        if let Some(Tok::Ident(_)) = self.peek() {
            let pos = self.pos();
            let n = self.ident()?;
            let mut args = Vec::new();
            while self.starts_pattern_atom() {
                args.push(self.pattern_atom()?);
            }
            return Ok(Pattern::Name(n, args, pos));
        }
        self.pattern_atom()
    }

    fn starts_pattern_atom(&self) -> bool {
        matches!(self.peek(), Some(Tok::Ident(_) | Tok::Int(_) | Tok::LParen | Tok::LBrace | Tok::Underscore))
    }

    fn pattern_atom(&mut self) -> PResult<Pattern> {
        let pos = self.pos();
        match self.peek() {
            Some(Tok::Underscore) => {
                self.at += 1;
                Ok(Pattern::Wild(pos))
            }
            Some(Tok::Int(n)) => {
                let n = *n;
                self.at += 1;
                Ok(Pattern::Num(n, pos))
            }
            Some(Tok::Ident(_)) => Ok(Pattern::Name(self.ident()?, Vec::new(), pos)),
            Some(Tok::LParen) => {
                self.at += 1;
                let mut parts = alloc::vec![self.pattern()?];
                while self.eat(&Tok::Comma) {
                    parts.push(self.pattern()?);
                }
                self.expect(&Tok::RParen)?;
                if parts.len() == 1 {
                    return Ok(parts.pop().unwrap());
                }
                let fields = self.tuple_fields(parts, pos)?;
                Ok(Pattern::Record(fields, pos))
            }
            Some(Tok::LBrace) => {
                self.at += 1;
                let fields = self.fields(Self::pattern)?;
                Ok(Pattern::Record(fields, pos))
            }
            _ => self.unexpected("a pattern"),
        }
    }

    fn tuple_fields<T>(&self, parts: Vec<T>, pos: Pos) -> PResult<Vec<(Name, T)>> {
        if parts.len() > 3 {
            return Err(SyntaxError { pos, message: "tuples have at most three components".into() });
        }
        Ok(parts.into_iter().enumerate().map(|(i, p)| (name(tuple_field(i).unwrap()), p)).collect())
    }

    /// Fields after `{`, up to and including `}`.
    fn fields<T>(&mut self, mut item: impl FnMut(&mut Self) -> PResult<T>) -> PResult<Vec<(Name, T)>> {
        let mut fields = Vec::new();
        if self.eat(&Tok::RBrace) {
            return Ok(fields);
        }
        loop {
            let d = self.ident()?;
            self.expect(&Tok::Eq)?;
            fields.push((d, item(self)?));
            let semi = self.eat(&Tok::Semi);
            if self.eat(&Tok::RBrace) {
                return Ok(fields);
            }
            if !semi {
                return self.unexpected("`;` or `}`");
            }
        }
    }

    fn starts_expr_atom(&self) -> bool {
        matches!(self.peek(), Some(Tok::Ident(_) | Tok::Int(_) | Tok::LParen | Tok::LBrace))
    }

    fn expr(&mut self) -> PResult<Expr> {
        let pos = self.pos();
        let head = self.expr_postfix()?;
        if !self.starts_expr_atom() {
            return Ok(head);
        }
        let Expr::Name(n, args, _) = head else {
            return Err(SyntaxError { pos, message: "only a name can be applied".into() });
        };
        if !args.is_empty() {
            return Err(SyntaxError { pos, message: "only a name can be applied".into() });
        }
        let mut args = Vec::new();
        while self.starts_expr_atom() {
            args.push(self.expr_postfix()?);
        }
        Ok(Expr::Name(n, args, pos))
    }

    fn expr_postfix(&mut self) -> PResult<Expr> {
        let mut e = self.expr_atom()?;
        while self.peek() == Some(&Tok::Dot) {
            let pos = self.pos();
            self.at += 1;
            let d = self.ident()?;
            e = Expr::Project(Box::new(e), d, pos);
        }
        Ok(e)
    }

    fn expr_atom(&mut self) -> PResult<Expr> {
        let pos = self.pos();
        match self.peek() {
            Some(Tok::Int(n)) => {
                let n = *n;
                self.at += 1;
                Ok(Expr::Num(n, pos))
            }
            Some(Tok::Ident(_)) => Ok(Expr::Name(self.ident()?, Vec::new(), pos)),
            Some(Tok::LParen) => {
                self.at += 1;
                let mut parts = alloc::vec![self.expr()?];
                while self.eat(&Tok::Comma) {
                    parts.push(self.expr()?);
                }
                self.expect(&Tok::RParen)?;
                if parts.len() == 1 {
                    return Ok(parts.pop().unwrap());
                }
                let fields = self.tuple_fields(parts, pos)?;
                Ok(Expr::Record(fields, pos))
            }
            Some(Tok::LBrace) => {
                self.at += 1;
                let fields = self.fields(Self::expr)?;
                Ok(Expr::Record(fields, pos))
            }
            _ => self.unexpected("an expression"),
        }
    }
}

/// Parse a whole source file. On failure every error found (with simple
/// recovery at the next top-level keyword) is returned.
pub fn parse_program(src: &str) -> Result<Program, Vec<SyntaxError>> {
    let toks = lex(src).map_err(|e| alloc::vec![e])?;
    let end = end_pos(src);
    let mut p = Parser { toks, at: 0, end };
    let (program, errors) = p.program();
    if errors.is_empty() {
        Ok(program)
    } else {
        Err(errors)
    }
}

fn end_pos(src: &str) -> Pos {
    let line = src.lines().count().max(1) as u32;
    let col = src.lines().last().map_or(0, |l| l.chars().count()) as u32 + 1;
    Pos { line, col }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arrows_are_right_associative() {
        let mut p = Parser { toks: lex("'a -> b -> c").unwrap(), at: 0, end: Pos::default() };
        let t = p.type_expr().unwrap();
        assert_eq!(alloc::format!("{t}"), "'a -> b -> c");
        assert_eq!(t.split_arrows().0.len(), 2);
    }

    #[test]
    fn tuple_sugar_is_a_product_record() {
        let prog = parse_program("val f x = Cons(x, x)").unwrap();
        let body = &prog.definitions().next().unwrap().clauses[0].body;
        let Expr::Name(_, args, _) = body else { panic!() };
        assert!(matches!(&args[0], Expr::Record(fs, _) if &*fs[1].0 == "Snd"));
    }
}
