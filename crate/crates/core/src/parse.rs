//! Polynomials from text.
//!
//! ```text
//! poly   = [ sign ] term { sign term } ;
//! sign   = "+" | "-" ;
//! term   = factor { "*" factor } ;
//! factor = atom [ "^" digits ] ;
//! atom   = number | ident | "(" poly ")" ;
//! number = digits [ "/" digits ] ;
//! ident  = letter { letter | digit | "_" } ;
//! ```
//!
//! Whitespace is ignored between tokens.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::algebra::poly::{MultiPoly, Poly};
use crate::error::{Error, Result};
use crate::scalar::Rational;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>> {
    let b = s.as_bytes();
    let mut out = vec![];
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            out.push((st, Tok::Num(s[st..i].parse().unwrap())));
        } else if c.is_ascii_alphabetic() {
            let st = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push((st, Tok::Ident(s[st..i].to_string())));
        } else if "+-*^/()".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(Error::Parse { pos: i, msg: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

/// Identifiers of `s` in order of first appearance.
pub fn identifiers(s: &str) -> Result<Vec<String>> {
    let mut out: Vec<String> = vec![];
    for (_, t) in tokenize(s)? {
        if let Tok::Ident(n) = t {
            if !out.contains(&n) {
                out.push(n);
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    vars: &'a Arc<[String]>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse { pos: self.offset(), msg: msg.to_string() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn poly(&mut self) -> Result<Poly> {
        let mut neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let mut acc = MultiPoly::zero_in(self.vars);
        loop {
            let t = self.term()?;
            acc = if neg { &acc - &t } else { &acc + &t };
            if self.eat('+') {
                neg = false;
            } else if self.eat('-') {
                neg = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        let a = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().or_else(|_| self.err("exponent too large"))?;
                    Ok(a.pow(e))
                }
                _ => self.err("expected a non-negative integer exponent"),
            }
        } else {
            Ok(a)
        }
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let mut r = Rational::from_integer(n);
                if self.eat('/') {
                    match self.peek().cloned() {
                        Some(Tok::Num(d)) if d != BigInt::from(0) => {
                            self.pos += 1;
                            r /= Rational::from_integer(d);
                        }
                        _ => return self.err("expected a nonzero integer denominator"),
                    }
                }
                Ok(MultiPoly::constant_in(self.vars, r))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match MultiPoly::var(self.vars, &name) {
                    Ok(v) => Ok(v),
                    Err(_) => {
                        self.pos -= 1;
                        self.err(&format!("unknown variable `{name}`"))
                    }
                }
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let p = self.poly()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(p)
            }
            Some(_) => self.err("expected a number, a variable or `(`"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses `s` as a polynomial in `vars`.
pub fn parse_poly(s: &str, vars: &Arc<[String]>) -> Result<Poly> {
    let toks = tokenize(s)?;
    let mut p = Parser { toks, pos: 0, end: s.len(), vars };
    let out = p.poly()?;
    if p.pos != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(out)
}

/// Parses several polynomials over the union of their identifiers, sorted.
pub fn parse_polys(inputs: &[&str]) -> Result<(Arc<[String]>, Vec<Poly>)> {
    let mut names: Vec<String> = vec![];
    for s in inputs {
        for n in identifiers(s)? {
            if !names.contains(&n) {
                names.push(n);
            }
        }
    }
    names.sort();
    let vars: Arc<[String]> = names.into();
    let polys = inputs.iter().map(|s| parse_poly(s, &vars)).collect::<Result<_>>()?;
    Ok((vars, polys))
}
