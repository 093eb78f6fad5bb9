//! Minimal S-expression reader shared by the certificate and proof-term
//! text formats. Tokens are `(`, `)` and whitespace-delimited symbols.

use std::fmt;

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sexp {
    Sym(String, usize),
    List(Vec<Sexp>, usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("syntax error at offset {offset}: {message}")]
pub struct SyntaxError {
    pub offset: usize,
    pub message: String,
}

impl SyntaxError {
    pub fn new(offset: usize, message: impl Into<String>) -> Self {
        SyntaxError {
            offset,
            message: message.into(),
        }
    }
}

impl Sexp {
    pub fn offset(&self) -> usize {
        match self {
            Sexp::Sym(_, o) | Sexp::List(_, o) => *o,
        }
    }

    pub fn as_sym(&self) -> Option<&str> {
        match self {
            Sexp::Sym(s, _) => Some(s),
            Sexp::List(..) => None,
        }
    }

    /// Splits `(head args...)` into its head symbol and arguments.
    pub fn as_call(&self) -> Option<(&str, &[Sexp])> {
        match self {
            Sexp::List(items, _) => match items.split_first() {
                Some((Sexp::Sym(h, _), rest)) => Some((h, rest)),
                _ => None,
            },
            Sexp::Sym(..) => None,
        }
    }

    pub fn error(&self, message: impl Into<String>) -> SyntaxError {
        SyntaxError::new(self.offset(), message)
    }
}

impl fmt::Display for Sexp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sexp::Sym(s, _) => f.write_str(s),
            Sexp::List(items, _) => {
                f.write_str("(")?;
                for (i, it) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{it}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Parses exactly one S-expression; trailing non-whitespace is an error.
pub fn parse(text: &str) -> Result<Sexp, SyntaxError> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let e = parse_one(text, bytes, &mut pos)?;
    skip_ws(bytes, &mut pos);
    if pos != bytes.len() {
        return Err(SyntaxError::new(pos, "trailing input"));
    }
    Ok(e)
}

fn skip_ws(bytes: &[u8], pos: &mut usize) {
    while *pos < bytes.len() {
        match bytes[*pos] {
            b';' => {
                while *pos < bytes.len() && bytes[*pos] != b'\n' {
                    *pos += 1;
                }
            }
            c if c.is_ascii_whitespace() => *pos += 1,
            _ => break,
        }
    }
}

fn parse_one(text: &str, bytes: &[u8], pos: &mut usize) -> Result<Sexp, SyntaxError> {
    skip_ws(bytes, pos);
    let start = *pos;
    match bytes.get(start) {
        None => Err(SyntaxError::new(start, "unexpected end of input")),
        Some(b')') => Err(SyntaxError::new(start, "unexpected ')'")),
        Some(b'(') => {
            *pos += 1;
            let mut items = Vec::new();
            loop {
                skip_ws(bytes, pos);
                match bytes.get(*pos) {
                    None => {
                        return Err(SyntaxError::new(
                            *pos,
                            format!("unclosed '(' opened at offset {start}"),
                        ))
                    }
                    Some(b')') => {
                        *pos += 1;
                        return Ok(Sexp::List(items, start));
                    }
                    Some(_) => items.push(parse_one(text, bytes, pos)?),
                }
            }
        }
        Some(_) => {
            while *pos < bytes.len()
                && !bytes[*pos].is_ascii_whitespace()
                && !matches!(bytes[*pos], b'(' | b')' | b';')
            {
                *pos += 1;
            }
            Ok(Sexp::Sym(text[start..*pos].to_owned(), start))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nested_lists() {
        let e = parse("(a (b c) d)").unwrap();
        assert_eq!(e.to_string(), "(a (b c) d)");
        let (h, args) = e.as_call().unwrap();
        assert_eq!(h, "a");
        assert_eq!(args.len(), 2);
        assert_eq!(args[0].offset(), 3);
    }

    #[test]
    fn comments_and_whitespace() {
        let e = parse("  ; header\n (x\n\ty) ").unwrap();
        assert_eq!(e.to_string(), "(x y)");
    }

    #[test]
    fn errors_carry_offsets() {
        assert_eq!(parse("(lift (refl").unwrap_err().offset, 11);
        assert_eq!(parse(")").unwrap_err().offset, 0);
        assert_eq!(parse("(a) b").unwrap_err().offset, 4);
    }
}
