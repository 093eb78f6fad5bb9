//! Surface syntax for formula files.
//!
//! ```text
//! expr  := conj ("|" conj)*
//! conj  := unary ("&" unary)*
//! unary := "~" unary | "(" expr ")" | ident relop ident
//! relop := "<=" | "<" | "=" | "!=" | ">=" | ">"
//! ```
//!
//! `#` starts a comment that runs to the end of the line. Variables are
//! numbered in order of first appearance.

use ordproof::{Formula, Literal, SymbolTable, VarId};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Op(&'static str),
    Eof,
}

struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

const OPS: [&str; 11] = ["<=", ">=", "!=", "<", ">", "=", "&", "|", "~", "(", ")"];

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        let chars: Vec<(usize, char)> = line.char_indices().collect();
        let mut i = 0;
        while i < chars.len() {
            let (byte, c) = chars[i];
            let (line_no, col) = (ln + 1, i + 1);
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c.is_ascii_alphabetic() || c == '_' {
                let start = byte;
                while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_') {
                    i += 1;
                }
                let end = chars.get(i).map_or(line.len(), |&(b, _)| b);
                out.push(Token {
                    tok: Tok::Ident(line[start..end].to_owned()),
                    line: line_no,
                    col,
                });
                continue;
            }
            let rest = &line[byte..];
            let op = OPS
                .iter()
                .find(|op| rest.starts_with(**op))
                .ok_or_else(|| ParseError {
                    line: line_no,
                    col,
                    message: format!("unexpected character {c:?}"),
                })?;
            out.push(Token {
                tok: Tok::Op(op),
                line: line_no,
                col,
            });
            i += op.len();
        }
    }
    let (line, col) = text
        .lines()
        .enumerate()
        .last()
        .map_or((1, 1), |(i, l)| (i + 1, l.chars().count() + 1));
    out.push(Token {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    symbols: SymbolTable,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        let t = self.peek();
        ParseError {
            line: t.line,
            col: t.col,
            message: message.into(),
        }
    }

    fn eat(&mut self, op: &'static str) -> bool {
        if self.peek().tok == Tok::Op(op) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.conj()?;
        while self.eat("|") {
            f = Formula::or(f, self.conj()?);
        }
        Ok(f)
    }

    fn conj(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.unary()?;
        while self.eat("&") {
            f = Formula::and(f, self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        if self.eat("~") {
            return Ok(Formula::neg(self.unary()?));
        }
        if self.eat("(") {
            let f = self.expr()?;
            if !self.eat(")") {
                return Err(self.error("expected ')'"));
            }
            return Ok(f);
        }
        self.atom()
    }

    fn ident(&mut self) -> Result<VarId, ParseError> {
        match &self.peek().tok {
            Tok::Ident(name) => {
                let id = self.symbols.intern(&name.clone());
                self.pos += 1;
                Ok(id)
            }
            _ => Err(self.error("expected a variable")),
        }
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        let x = self.ident()?;
        let op = match self.peek().tok {
            Tok::Op(op @ ("<=" | "<" | "=" | "!=" | ">=" | ">")) => op,
            _ => return Err(self.error("expected a comparison")),
        };
        self.pos += 1;
        let y = self.ident()?;
        let at = |l| Formula::Atom(l);
        Ok(match op {
            "<=" => at(Literal::le(x, y)),
            "<" => at(Literal::lt(x, y)),
            "=" => at(Literal::eq(x, y)),
            "!=" => Formula::neg(at(Literal::eq(x, y))),
            ">=" => at(Literal::le(y, x)),
            _ => at(Literal::lt(y, x)),
        })
    }
}

pub fn parse_input(text: &str) -> Result<(Formula, SymbolTable), ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        symbols: SymbolTable::new(),
    };
    if p.peek().tok == Tok::Eof {
        return Err(p.error("empty input"));
    }
    let f = p.expr()?;
    if p.peek().tok != Tok::Eof {
        return Err(p.error("unexpected trailing input"));
    }
    Ok((f, p.symbols))
}
