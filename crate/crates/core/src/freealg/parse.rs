//! Recursive-descent parser for polynomial strings such as `3*x*y^2 - w*z`.
//!
//! ```text
//! expr   = [sign] term { sign term }
//! term   = factor { ["*"] factor }
//! factor = atom [ "^" integer ]
//! atom   = integer [ "/" integer ] | name | "(" expr ")"
//! ```

use num_bigint::BigInt;

use super::{FreeAlgError, GeneratorSet, NcPoly, Word};
use crate::exactla::Scalar;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Sym(char),
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, FreeAlgError> {
    let b = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let s = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            out.push((s, Tok::Int(src[s..i].parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let s = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_' || b[i] == b'\'') {
                i += 1;
            }
            out.push((s, Tok::Name(src[s..i].to_string())));
        } else if "+-*^/()".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(FreeAlgError::Parse { pos: i, msg: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    gens: &'a GeneratorSet,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, msg: &str) -> Result<T, FreeAlgError> {
        Err(FreeAlgError::Parse { pos: self.pos(), msg: msg.to_string() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<NcPoly, FreeAlgError> {
        let mut neg = false;
        if self.eat('-') {
            neg = true;
        } else {
            self.eat('+');
        }
        let mut acc = NcPoly::zero();
        loop {
            let t = self.term()?;
            acc = if neg { acc.sub(&t) } else { acc.add(&t) };
            if self.eat('+') {
                neg = false;
            } else if self.eat('-') {
                neg = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(Tok::Int(_)) | Some(Tok::Name(_)) | Some(Tok::Sym('(')))
    }

    fn term(&mut self) -> Result<NcPoly, FreeAlgError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') || self.starts_factor() {
                acc = acc.mul(&self.factor()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<NcPoly, FreeAlgError> {
        let base = self.atom()?;
        if self.eat('^') {
            let Some(Tok::Int(n)) = self.peek().cloned() else {
                return self.err("expected exponent");
            };
            self.at += 1;
            let n: u32 = match n.try_into() {
                Ok(n) if n <= 64 => n,
                _ => return self.err("exponent too large"),
            };
            let mut p = NcPoly::one();
            for _ in 0..n {
                p = p.mul(&base);
            }
            return Ok(p);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<NcPoly, FreeAlgError> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.at += 1;
                let mut d = BigInt::from(1);
                if self.eat('/') {
                    let Some(Tok::Int(m)) = self.peek().cloned() else {
                        return self.err("expected denominator");
                    };
                    if m == BigInt::from(0) {
                        return self.err("zero denominator");
                    }
                    self.at += 1;
                    d = m;
                }
                Ok(NcPoly::monomial(Scalar::from_big(n, d), Word::empty()))
            }
            Some(Tok::Name(s)) => {
                let Some(g) = self.gens.index_of(&s) else {
                    return Err(FreeAlgError::UnknownGenerator(s));
                };
                self.at += 1;
                Ok(NcPoly::word(self.gens.letter(g)))
            }
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let p = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(p)
            }
            _ => self.err("expected a coefficient, generator or `(`"),
        }
    }
}

/// Parses a polynomial over the given generators.
pub fn parse_poly(src: &str, gens: &GeneratorSet) -> Result<NcPoly, FreeAlgError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, at: 0, end: src.len(), gens };
    let out = p.expr()?;
    if p.at != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(out)
}
