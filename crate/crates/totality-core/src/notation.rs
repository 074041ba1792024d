//! Parser for the textual term notation printed by `Display for Term`.
//!
//! ```text
//! x1   C@p t   C-@p t   .D@p t   {D@p = t; E@p = u}   f(t, u)   ? t
//! <{p:w,q:inf}> t   t + u   0   _
//! ```

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::term::{name, Term};
use crate::weight::{Priority, Weight, ZInf};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("term notation, offset {offset}: {message}")]
pub struct NotationError {
    pub offset: usize,
    pub message: String,
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

fn is_ident_start(c: u8) -> bool {
    c.is_ascii_alphabetic() || c == b'_'
}

fn is_ident_char(c: u8) -> bool {
    c.is_ascii_alphanumeric() || c == b'_' || c == b'\''
}

impl<'a> Cursor<'a> {
    fn err<T>(&self, message: &str) -> Result<T, NotationError> {
        Err(NotationError { offset: self.pos, message: message.to_string() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), NotationError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(&alloc::format!("expected `{}`", c as char))
        }
    }

    fn ident(&mut self) -> Result<&'a str, NotationError> {
        self.skip_ws();
        let start = self.pos;
        if !self.src.get(start).copied().is_some_and(is_ident_start) {
            return self.err("expected identifier");
        }
        while self.src.get(self.pos).copied().is_some_and(is_ident_char) {
            self.pos += 1;
        }
        Ok(core::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn number(&mut self) -> Result<i64, NotationError> {
        self.skip_ws();
        let start = self.pos;
        if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        let text = core::str::from_utf8(&self.src[start..self.pos]).unwrap();
        text.parse().or_else(|_| {
            self.pos = start;
            self.err("expected integer")
        })
    }

    fn priority(&mut self) -> Result<Priority, NotationError> {
        let n = self.number()?;
        Priority::try_from(n).or_else(|_| self.err("priority out of range"))
    }

    fn at_priority(&mut self) -> Result<Priority, NotationError> {
        // no whitespace allowed inside `@p`
        if self.src.get(self.pos) != Some(&b'@') {
            return self.err("expected `@`");
        }
        self.pos += 1;
        self.priority()
    }

    fn term(&mut self) -> Result<Term, NotationError> {
        let mut parts = Vec::new();
        loop {
            if self.peek() == Some(b'0') && !self.src.get(self.pos + 1).is_some_and(u8::is_ascii_digit) {
                self.pos += 1;
            } else {
                parts.push(self.simple()?);
            }
            if !self.eat(b'+') {
                break;
            }
        }
        Ok(Term::sum(parts))
    }

    fn weight(&mut self) -> Result<Weight, NotationError> {
        self.expect(b'{')?;
        let mut pairs = Vec::new();
        if !self.eat(b'}') {
            loop {
                let p = self.priority()?;
                self.expect(b':')?;
                let v = if self.peek() == Some(b'i') {
                    if self.ident()? != "inf" {
                        return self.err("expected `inf`");
                    }
                    ZInf::Inf
                } else {
                    ZInf::Fin(self.number()?)
                };
                pairs.push((p, v));
                if self.eat(b'}') {
                    break;
                }
                self.expect(b',')?;
            }
        }
        Ok(Weight::from_pairs(pairs))
    }

    fn simple(&mut self) -> Result<Term, NotationError> {
        match self.peek() {
            None => self.err("unexpected end of input"),
            Some(b'(') => {
                self.pos += 1;
                let t = self.term()?;
                self.expect(b')')?;
                Ok(t)
            }
            Some(b'?') => {
                self.pos += 1;
                Ok(Term::daimon(self.simple()?))
            }
            Some(b'<') => {
                self.pos += 1;
                let w = self.weight()?;
                self.expect(b'>')?;
                Ok(Term::approx(w, self.simple()?))
            }
            Some(b'.') => {
                self.pos += 1;
                let d = self.ident()?;
                let p = self.at_priority()?;
                Ok(Term::project(name(d), p, self.simple()?))
            }
            Some(b'{') => {
                self.pos += 1;
                let mut fields = Vec::new();
                let mut prio = None;
                loop {
                    let d = self.ident()?;
                    let p = self.at_priority()?;
                    if prio.is_some_and(|q| q != p) {
                        return self.err("record fields disagree on priority");
                    }
                    prio = Some(p);
                    self.expect(b'=')?;
                    fields.push((name(d), self.term()?));
                    if self.eat(b'}') {
                        break;
                    }
                    self.expect(b';')?;
                }
                let mut names: Vec<_> = fields.iter().map(|f| f.0.clone()).collect();
                names.sort();
                names.dedup();
                if names.len() != fields.len() {
                    return self.err("duplicate record field");
                }
                Ok(Term::record(fields, prio.unwrap()))
            }
            Some(c) if is_ident_start(c) => {
                let id = self.ident()?;
                match self.src.get(self.pos) {
                    Some(b'@') => {
                        let p = self.at_priority()?;
                        Ok(Term::constr(name(id), p, self.simple()?))
                    }
                    Some(b'-') if self.src.get(self.pos + 1) == Some(&b'@') => {
                        self.pos += 1;
                        let p = self.at_priority()?;
                        Ok(Term::constr_dual(name(id), p, self.simple()?))
                    }
                    Some(b'(') => {
                        self.pos += 1;
                        let mut args = Vec::new();
                        if !self.eat(b')') {
                            loop {
                                args.push(self.term()?);
                                if self.eat(b')') {
                                    break;
                                }
                                self.expect(b',')?;
                            }
                        }
                        Ok(Term::fun_app(name(id), args))
                    }
                    _ if id == "_" => Ok(Term::Unknown),
                    _ => match id.strip_prefix('x').map(str::parse::<u32>) {
                        Some(Ok(i)) if i >= 1 => Ok(Term::Param(i)),
                        _ => self.err("expected parameter `x<i>`, `@`, `-@` or `(`"),
                    },
                }
            }
            Some(_) => self.err("unexpected character"),
        }
    }
}

/// Parse a term in textual notation. The result goes through the smart
/// constructors but is not normalized.
pub fn parse_term(src: &str) -> Result<Term, NotationError> {
    let mut c = Cursor { src: src.as_bytes(), pos: 0 };
    let t = c.term()?;
    if c.peek().is_some() {
        return c.err("trailing input");
    }
    Ok(t)
}
