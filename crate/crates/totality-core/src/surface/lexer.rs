//! Tokens with positions. `--` comments are skipped, except
//! `-- totality: ...` pragmas which are kept as tokens.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use super::SyntaxError;

/// Line and column, both starting at 1.
#[derive(Clone, Copy, Debug, Default, Eq)]
pub struct Pos {
    pub line: u32,
    pub col: u32,
}

/// Positions never take part in comparisons of syntax trees.
impl PartialEq for Pos {
    fn eq(&self, _: &Pos) -> bool {
        true
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    /// `'x`
    TyVar(String),
    Int(u64),
    Data,
    Codata,
    Where,
    Val,
    And,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Semi,
    Comma,
    Eq,
    Bar,
    Colon,
    Arrow,
    Dot,
    Underscore,
    /// Text after `-- totality:`.
    Pragma(String),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(s) => return write!(f, "`{s}`"),
            Tok::TyVar(s) => return write!(f, "`'{s}`"),
            Tok::Int(n) => return write!(f, "`{n}`"),
            Tok::Pragma(_) => "pragma",
            Tok::Data => "`data`",
            Tok::Codata => "`codata`",
            Tok::Where => "`where`",
            Tok::Val => "`val`",
            Tok::And => "`and`",
            Tok::LParen => "`(`",
            Tok::RParen => "`)`",
            Tok::LBrace => "`{`",
            Tok::RBrace => "`}`",
            Tok::Semi => "`;`",
            Tok::Comma => "`,`",
            Tok::Eq => "`=`",
            Tok::Bar => "`|`",
            Tok::Colon => "`:`",
            Tok::Arrow => "`->`",
            Tok::Dot => "`.`",
            Tok::Underscore => "`_`",
        };
        f.write_str(s)
    }
}

fn ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

pub fn lex(src: &str) -> Result<Vec<(Tok, Pos)>, SyntaxError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1u32, 1u32);
    let err = |pos: Pos, message: String| SyntaxError { pos, message };
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '-' && chars.get(i + 1) == Some(&'-') {
            let start = i + 2;
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            col += (i + 2 - start) as u32;
            if let Some(rest) = text.trim_start().strip_prefix("totality:") {
                out.push((Tok::Pragma(rest.trim().to_string()), pos));
            }
            continue;
        }
        if c == '-' && chars.get(i + 1) == Some(&'>') {
            out.push((Tok::Arrow, pos));
            i += 2;
            col += 2;
            continue;
        }
        if c == '\'' {
            let start = i + 1;
            i += 1;
            while i < chars.len() && ident_char(chars[i]) {
                i += 1;
            }
            if start == i {
                return Err(err(pos, "expected a type variable name after `'`".into()));
            }
            col += (i + 1 - start) as u32;
            out.push((Tok::TyVar(chars[start..i].iter().collect()), pos));
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            col += (i - start) as u32;
            let n = text.parse().map_err(|_| err(pos, alloc::format!("numeral `{text}` is too large")))?;
            out.push((Tok::Int(n), pos));
            continue;
        }
        if ident_start(c) {
            let start = i;
            while i < chars.len() && ident_char(chars[i]) {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            col += (i - start) as u32;
            let tok = match text.as_str() {
                "data" => Tok::Data,
                "codata" => Tok::Codata,
                "where" => Tok::Where,
                "val" => Tok::Val,
                "and" => Tok::And,
                "_" => Tok::Underscore,
                _ => Tok::Ident(text),
            };
            out.push((tok, pos));
            continue;
        }
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            ';' => Tok::Semi,
            ',' => Tok::Comma,
            '=' => Tok::Eq,
            '|' => Tok::Bar,
            ':' => Tok::Colon,
            '.' => Tok::Dot,
            _ => return Err(err(pos, alloc::format!("unexpected character `{c}`"))),
        };
        out.push((tok, pos));
        i += 1;
        col += 1;
    }
    Ok(out)
}
