//! Recursive-descent parser for the term grammar.

use super::{as_ordinal, from_ordinal, normalize, Generator, Tail, Term};
use crate::error::{Error, Result};
use crate::ordinal::{Ordinal, DEFAULT_DEPTH_CAP};

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

/// Parses a term without normalizing it.
pub fn parse_term(text: &str) -> Result<Term> {
    let mut p = Parser { src: text, pos: 0 };
    let t = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(t)
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_char() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek_char(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_char()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{c}`")))
        }
    }

    fn expr(&mut self) -> Result<Term> {
        let mut parts = vec![self.prod()?];
        while self.eat('+') {
            parts.push(self.prod()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Term::Sum(parts) })
    }

    fn prod(&mut self) -> Result<Term> {
        let mut acc = self.unary()?;
        while self.eat('*') {
            let rhs = self.unary()?;
            acc = Term::prod(acc, rhs);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Term> {
        let a = self.atom()?;
        Ok(if self.eat('~') { Term::rev(a) } else { a })
    }

    fn word(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.peek_char() {
            if c.is_alphabetic() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
        &self.src[start..self.pos]
    }

    fn list(&mut self, close: char) -> Result<Vec<Term>> {
        let mut out = Vec::new();
        if self.peek() == Some(close) {
            return Ok(out);
        }
        loop {
            out.push(self.expr()?);
            if !self.eat(',') {
                return Ok(out);
            }
        }
    }

    fn ordinal_arg(&mut self) -> Result<Ordinal> {
        let at = self.pos;
        let e = self.expr()?;
        as_ordinal(&normalize(&e))
            .ok_or_else(|| Error::Type(format!("subterm at {at} is not an ordinal")))
    }

    fn atom(&mut self) -> Result<Term> {
        match self.peek() {
            None => Err(self.err("unexpected end of input")),
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.peek_char().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                self.src[start..self.pos]
                    .parse()
                    .map(Term::Fin)
                    .map_err(|_| Error::Syntax { pos: start, msg: "number too large".into() })
            }
            Some('(') => {
                self.pos += 1;
                let t = self.expr()?;
                self.expect(')')?;
                Ok(t)
            }
            Some(c) if c.is_alphabetic() => {
                let start = self.pos;
                match self.word() {
                    "w" | "ω" => {
                        if !self.eat('^') {
                            return Ok(Term::Omega);
                        }
                        self.expect('(')?;
                        let e = self.ordinal_arg()?;
                        self.expect(')')?;
                        let o = Ordinal::omega_pow(e);
                        if o.depth() > DEFAULT_DEPTH_CAP {
                            return Err(Error::Capacity("ordinal nesting depth exceeded".into()));
                        }
                        Ok(from_ordinal(&o))
                    }
                    "z" | "ζ" => Ok(Term::Zeta),
                    "q" | "η" => Ok(Term::Eta),
                    "r" | "λ" => Ok(Term::Lambda),
                    kw @ ("geom" | "geomrev") => {
                        self.expect('(')?;
                        let t = self.expr()?;
                        self.expect(')')?;
                        Ok(if kw == "geom" { Term::geom(t) } else { Term::geom_rev(t) })
                    }
                    "shuffle" => {
                        self.expect('(')?;
                        let cs = self.list(')')?;
                        self.expect(')')?;
                        if cs.is_empty() {
                            return Err(self.err("shuffle needs at least one type"));
                        }
                        Ok(Term::Shuffle(cs))
                    }
                    kw @ ("sum" | "sumrev") => {
                        self.expect('[')?;
                        let g = self.generator()?;
                        self.expect(']')?;
                        Ok(if kw == "sum" { Term::OmegaSum(g) } else { Term::OmegaStarSum(g) })
                    }
                    _ => Err(Error::Syntax { pos: start, msg: "unknown identifier".into() }),
                }
            }
            Some(_) => Err(self.err("unexpected character")),
        }
    }

    fn generator(&mut self) -> Result<Generator> {
        let prefix = self.list(';')?;
        self.expect(';')?;
        let start = self.pos;
        let kw = self.word();
        self.expect('(')?;
        let tail = match kw {
            "const" => Tail::Constant(Box::new(self.expr()?)),
            "pow" => Tail::Geometric(Box::new(self.expr()?)),
            "cycle" => {
                let cs = self.list(')')?;
                if cs.is_empty() {
                    return Err(self.err("cycle needs at least one type"));
                }
                Tail::Cycle(cs)
            }
            "fund" | "fundrev" => {
                let a = self.ordinal_arg()?;
                if !a.is_limit() {
                    return Err(Error::Type(format!("{a} is not a limit ordinal")));
                }
                Tail::Fundamental(a, kw == "fundrev")
            }
            _ => return Err(Error::Syntax { pos: start, msg: "unknown tail rule".into() }),
        };
        self.expect(')')?;
        Ok(Generator { prefix, tail })
    }
}
