//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' uint)?
//! atom   := uint | var | '(' expr ')'
//! ```
//!
//! Division is only accepted by a nonzero constant, so `1/2*x` and `x/2`
//! are fine while `1/x` is rejected. Implicit multiplication (`2x`) is a
//! syntax error. Whitespace is ignored.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::Error;
use crate::poly::MPoly;
use crate::rat::Rat;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    /// A number immediately followed by a decimal point.
    Decimal,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, Error> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                        i += 1;
                    }
                    out.push((start, Tok::Decimal));
                    continue;
                }
                let n: BigInt = text[start..i].parse().expect("ascii digits");
                out.push((start, Tok::Num(n)));
                continue;
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            b'+' => out.push((start, Tok::Plus)),
            b'-' => out.push((start, Tok::Minus)),
            b'*' => out.push((start, Tok::Star)),
            b'/' => out.push((start, Tok::Slash)),
            b'^' => out.push((start, Tok::Caret)),
            b'(' => out.push((start, Tok::LParen)),
            b')' => out.push((start, Tok::RParen)),
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(Error::Syntax {
                    pos: start,
                    msg: format!("unexpected character `{ch}`"),
                });
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    vars: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn syntax(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.here(),
            msg: msg.into(),
        }
    }

    fn expr(&mut self) -> Result<MPoly, Error> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc.checked_add(&self.term()?)?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc.checked_sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MPoly, Error> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = acc.checked_mul(&self.unary()?)?;
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let at = self.here();
                    let d = self.unary()?;
                    if !d.is_constant() {
                        return Err(Error::NonConstantDivisor { pos: at });
                    }
                    let c = d.constant_term();
                    if c.is_zero() {
                        return Err(Error::DivisionByZero { pos: at });
                    }
                    acc = acc.scale(&c.recip());
                }
                Some(Tok::Num(_) | Tok::Ident(_) | Tok::LParen) => {
                    return Err(self.syntax("implicit multiplication is not allowed; use `*`"));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<MPoly, Error> {
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            let inner = self.unary()?;
            return Ok(-&inner);
        }
        self.power()
    }

    fn power(&mut self) -> Result<MPoly, Error> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        let at = self.here();
        match self.bump() {
            Some(Tok::Num(n)) => {
                let k: u32 = n.try_into().map_err(|_| Error::ExponentOverflow)?;
                base.checked_pow(k)
            }
            Some(Tok::Minus | Tok::Decimal | Tok::LParen) => Err(Error::BadExponent { pos: at }),
            _ => Err(Error::Syntax {
                pos: at,
                msg: "expected an exponent after `^`".into(),
            }),
        }
    }

    fn atom(&mut self) -> Result<MPoly, Error> {
        let at = self.here();
        let n = self.vars.len();
        match self.bump() {
            Some(Tok::Num(v)) => Ok(MPoly::constant(n, Rat::from_integer(v))),
            Some(Tok::Ident(name)) => match self.vars.iter().position(|v| *v == name) {
                Some(i) => Ok(MPoly::var(n, i)),
                None => Err(Error::UnknownVariable { name, pos: at }),
            },
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(Error::Syntax {
                        pos: self.toks.get(self.pos - 1).map_or(self.end, |(p, _)| *p),
                        msg: "expected `)`".into(),
                    }),
                }
            }
            Some(Tok::Decimal) => Err(Error::Syntax {
                pos: at,
                msg: "decimal numbers are not supported; write p/q".into(),
            }),
            Some(_) => Err(Error::Syntax {
                pos: at,
                msg: "expected a number, variable or `(`".into(),
            }),
            None => Err(Error::Syntax {
                pos: at,
                msg: "unexpected end of input".into(),
            }),
        }
    }
}

/// Parses `text` into an expanded polynomial over the variables `vars`
/// (in that order).
pub fn parse_poly(text: &str, vars: &[impl AsRef<str>]) -> Result<MPoly, Error> {
    let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
        end: text.len(),
        vars: &vars,
    };
    let f = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(p.syntax("unexpected trailing input"));
    }
    Ok(f)
}
