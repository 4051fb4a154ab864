//! Recursive-descent parser for the scalar grammar:
//!
//! ```text
//! expr     := term (('+'|'-') term)*
//! term     := factor (('*'|'/') factor)*
//! factor   := '-' factor | base ('^' posint)?
//! base     := rational | variable | '(' expr ')'
//! rational := int ('/' posint)?
//! variable := 'x' posint
//! ```
//!
//! Whitespace is insignificant and juxtaposition is rejected.

use num_bigint::BigInt;

use super::{Rational, ScalarError, ScalarField};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ScalarError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("ascii digits");
                out.push((start, Tok::Int(n)));
                continue;
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Var(text[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(ScalarError::Syntax {
                    position: start,
                    message: format!("unexpected character '{ch}'"),
                });
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    variables: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T, ScalarError> {
        Err(ScalarError::Syntax {
            position: self.offset(),
            message: message.into(),
        })
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<ScalarField, ScalarError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<ScalarField, ScalarError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = &acc * &self.factor()?;
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let at = self.offset();
                    let rhs = self.factor()?;
                    acc = acc.checked_div(&rhs).map_err(|_| ScalarError::Syntax {
                        position: at,
                        message: "division by zero".into(),
                    })?;
                }
                Some(Tok::Int(_) | Tok::Var(_) | Tok::LParen) => {
                    return self.syntax("expected operator ('*' is required for multiplication)");
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<ScalarField, ScalarError> {
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            return Ok(-self.factor()?);
        }
        let base = self.base()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let e = self.posint()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn posint(&mut self) -> Result<u32, ScalarError> {
        match self.peek() {
            Some(Tok::Int(n)) => {
                let e = u32::try_from(n.clone()).ok().filter(|&e| e >= 1);
                match e {
                    Some(e) => {
                        self.bump();
                        Ok(e)
                    }
                    None => self.syntax("expected a positive integer"),
                }
            }
            _ => self.syntax("expected a positive integer"),
        }
    }

    fn base(&mut self) -> Result<ScalarField, ScalarError> {
        let at = self.offset();
        match self.bump() {
            Some(Tok::Int(n)) => {
                // `int '/' posint` binds as one rational literal.
                if self.peek() == Some(&Tok::Slash)
                    && matches!(self.toks.get(self.pos + 1), Some((_, Tok::Int(_))))
                {
                    let den_at = self.toks[self.pos + 1].0;
                    let Some((_, Tok::Int(d))) = self.toks.get(self.pos + 1).cloned() else {
                        unreachable!()
                    };
                    if d == BigInt::from(0) {
                        return Err(ScalarError::Syntax {
                            position: den_at,
                            message: "division by zero".into(),
                        });
                    }
                    self.pos += 2;
                    return Ok(ScalarField::constant(Rational::new(n, d)));
                }
                Ok(ScalarField::constant(Rational::from_integer(n)))
            }
            Some(Tok::Var(name)) => {
                let valid = name.len() > 1
                    && name.starts_with('x')
                    && name[1..].bytes().all(|b| b.is_ascii_digit())
                    && !name[1..].starts_with('0');
                if !valid {
                    return Err(ScalarError::Syntax {
                        position: at,
                        message: format!("'{name}' is not a coordinate of the form x<k>"),
                    });
                }
                match self.variables.iter().position(|v| *v == name) {
                    Some(i) => Ok(ScalarField::var(i)),
                    None => Err(ScalarError::UnknownVariable(name)),
                }
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => {
                        self.pos -= 1;
                        self.syntax("expected ')'")
                    }
                }
            }
            Some(_) => {
                self.pos -= 1;
                self.syntax("expected a number, coordinate or '('")
            }
            None => self.syntax("unexpected end of input"),
        }
    }
}

/// Parses `text` over the ordered coordinate names `variables`; the k-th name
/// becomes coordinate index k.
pub fn parse_scalar(text: &str, variables: &[String]) -> Result<ScalarField, ScalarError> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
        variables,
    };
    let value = p.expr()?;
    if p.pos < p.toks.len() {
        return p.syntax("unexpected trailing input");
    }
    Ok(value)
}
