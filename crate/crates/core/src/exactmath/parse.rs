//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' uint)?
//! base   := int | ident | '(' expr ')' | '-' base
//! ```
//!
//! Identifiers (`[a-zA-Z][a-zA-Z0-9_]*`) and integers are maximal munches.
//! Whitespace between tokens is ignored. There is no implicit multiplication,
//! and `-x^2` reads as `(-x)^2`.

use std::sync::Arc;

use num_bigint::BigInt;

use super::polynomial::{Polynomial, VarContext};
use super::scalar::Field;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((Tok::Int(text[start..i].parse().expect("digits")), start));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(Error::Syntax {
                    pos: start,
                    msg: format!("unexpected character '{ch}'"),
                });
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    ctx: &'a Arc<VarContext>,
    field: Field,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.term()?)?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = acc.mul(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.base()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        match self.bump() {
            Tok::Int(n) => {
                let e: u32 = n.try_into().map_err(|_| Error::Exponent {
                    pos,
                    msg: "exponent too large".into(),
                })?;
                Ok(base.pow(e))
            }
            Tok::Minus => Err(Error::Exponent {
                pos,
                msg: "exponent must be non-negative".into(),
            }),
            _ => Err(Error::Exponent {
                pos,
                msg: "exponent must be a non-negative integer literal".into(),
            }),
        }
    }

    fn base(&mut self) -> Result<Polynomial> {
        let pos = self.pos();
        match self.bump() {
            Tok::Int(n) => Ok(Polynomial::constant(self.ctx, self.field, self.field.from_bigint(&n))),
            Tok::Ident(name) => match self.ctx.index_of(&name) {
                Some(i) => Ok(Polynomial::var(self.ctx, self.field, i)),
                None => Err(Error::UnknownVariable(name)),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                let pos = self.pos();
                match self.bump() {
                    Tok::RParen => Ok(inner),
                    _ => Err(Error::Syntax {
                        pos,
                        msg: "expected ')'".into(),
                    }),
                }
            }
            Tok::Minus => Ok(self.base()?.neg()),
            Tok::End => Err(Error::Syntax {
                pos,
                msg: "unexpected end of input".into(),
            }),
            t => Err(Error::Syntax {
                pos,
                msg: format!("unexpected token {t:?}"),
            }),
        }
    }
}

/// Parses `text` into a polynomial over `field` in the variables of `ctx`.
pub fn parse_poly(text: &str, ctx: &Arc<VarContext>, field: Field) -> Result<Polynomial> {
    let mut p = Parser {
        toks: tokenize(text)?,
        at: 0,
        ctx,
        field,
    };
    let out = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(Error::Syntax {
            pos: p.pos(),
            msg: "unexpected trailing input (implicit multiplication is not allowed)".into(),
        });
    }
    Ok(out)
}
