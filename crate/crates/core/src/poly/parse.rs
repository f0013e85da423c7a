//! Text grammar for polynomials and points.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer ('/' integer)? | identifier | '(' expr ')'
//! ```
//!
//! Identifiers match `[A-Za-z][A-Za-z0-9_]*`. Juxtaposition is not
//! multiplication. Variables are ordered by first appearance unless an
//! explicit list is supplied.

use super::{Polynomial, Rational, Vars};
use crate::error::{Error, Result};
use num::{BigInt, Zero};
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            d if d.is_ascii_digit() => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push((start, Tok::Int(s.parse().expect("digits parse"))));
                continue;
            }
            a if a.is_ascii_alphabetic() => {
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(chars[start..i].iter().collect())));
                continue;
            }
            other => {
                return Err(Error::Parse {
                    pos: start,
                    msg: format!("unexpected character '{other}'"),
                })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

#[derive(Debug)]
enum Ast {
    Num(Rational),
    Var(String),
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, u32),
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    seen: Vec<String>,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.here(),
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<Ast> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    lhs = Ast::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    lhs = Ast::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Ast> {
        let mut lhs = self.unary()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            lhs = Ast::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Ast> {
        if let Some(Tok::Minus) = self.peek() {
            self.pos += 1;
            return Ok(Ast::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Ast> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Int(k)) => {
                    self.pos += 1;
                    let k: u32 = match k.try_into() {
                        Ok(k) => k,
                        Err(_) => return self.err("exponent too large"),
                    };
                    return Ok(Ast::Pow(Box::new(base), k));
                }
                _ => return self.err("expected a nonnegative integer exponent"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Ast> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                if let Some(Tok::Slash) = self.peek() {
                    self.pos += 1;
                    match self.peek().cloned() {
                        Some(Tok::Int(d)) if !d.is_zero() => {
                            self.pos += 1;
                            Ok(Ast::Num(Rational::new(n, d)))
                        }
                        Some(Tok::Int(_)) => self.err("zero denominator"),
                        _ => self.err("expected an integer denominator"),
                    }
                } else {
                    Ok(Ast::Num(Rational::from_integer(n)))
                }
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if !self.seen.contains(&name) {
                    self.seen.push(name.clone());
                }
                Ok(Ast::Var(name))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(e)
                    }
                    _ => self.err("expected ')'"),
                }
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

fn eval(ast: &Ast, vars: &Vars) -> Polynomial {
    match ast {
        Ast::Num(q) => Polynomial::constant(vars.clone(), q.clone()),
        Ast::Var(name) => {
            let i = vars.iter().position(|v| v == name).expect("variable declared");
            Polynomial::var(vars.clone(), i)
        }
        Ast::Neg(a) => -&eval(a, vars),
        Ast::Add(a, b) => &eval(a, vars) + &eval(b, vars),
        Ast::Sub(a, b) => &eval(a, vars) - &eval(b, vars),
        Ast::Mul(a, b) => &eval(a, vars) * &eval(b, vars),
        Ast::Pow(a, k) => eval(a, vars).pow(*k),
    }
}

/// Parse a polynomial. With `vars = None` the variables are the identifiers
/// in order of first appearance; otherwise every identifier must be listed.
pub fn parse_polynomial(text: &str, vars: Option<&Vars>) -> Result<Polynomial> {
    let toks = tokenize(text)?;
    let mut parser = Parser {
        toks,
        pos: 0,
        end: text.chars().count(),
        seen: Vec::new(),
    };
    let ast = parser.expr()?;
    if parser.pos < parser.toks.len() {
        return parser.err("unexpected trailing input (implicit multiplication is not allowed)");
    }
    let vars = match vars {
        Some(v) => {
            if let Some(missing) = parser.seen.iter().find(|s| !v.contains(s)) {
                return Err(Error::Parse {
                    pos: 0,
                    msg: format!("variable '{missing}' is not in the declared variable list"),
                });
            }
            v.clone()
        }
        None => Arc::new(parser.seen.clone()),
    };
    Ok(eval(&ast, &vars))
}

/// Parse `n`, `-n` or `p/q`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest.trim()),
        None => (false, t),
    };
    let bad = || Error::Parse {
        pos: 0,
        msg: format!("'{text}' is not a rational number"),
    };
    let q = match body.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Rational::new(n, d)
        }
        None => Rational::from_integer(body.parse().map_err(|_| bad())?),
    };
    Ok(if neg { -q } else { q })
}

/// Parse a comma-separated list of rationals such as `0,1/2,-3`.
pub fn parse_point(text: &str) -> Result<Vec<Rational>> {
    if text.trim().is_empty() {
        return Ok(vec![]);
    }
    text.split(',').map(parse_rational).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat, vars_of, Exponent};
    use num::One;

    #[test]
    fn first_appearance_order() {
        let p = parse_polynomial("x3^2 - x1^2*x2^3", None).unwrap();
        assert_eq!(p.vars().as_slice(), ["x3", "x1", "x2"]);
        let q = parse_polynomial("x3^2 - x1^2*x2^3", Some(&vars_of(&["x1", "x2", "x3"]))).unwrap();
        assert_eq!(q.coeff(&Exponent(vec![0, 0, 2])), int(1));
        assert_eq!(q.coeff(&Exponent(vec![2, 3, 0])), int(-1));
    }

    #[test]
    fn literals() {
        assert!(parse_polynomial("0", None).unwrap().is_zero());
        let p = parse_polynomial("1/2*x^2 + 3*y", None).unwrap();
        assert_eq!(p.coeff(&Exponent(vec![2, 0])), rat(1, 2));
        assert_eq!(p.coeff(&Exponent(vec![0, 1])), int(3));
        let q = parse_polynomial("-(x - 2)^2", None).unwrap();
        assert_eq!(q.constant_term(), int(-4));
        assert!(parse_polynomial("2/4", None).unwrap().constant_term() == rat(1, 2));
        assert!(parse_polynomial("x_1 + A9", None).is_ok());
        let _ = Rational::one();
    }

    #[test]
    fn errors_carry_positions() {
        match parse_polynomial("2 x", None) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("{other:?}"),
        }
        match parse_polynomial("x + $", None) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(parse_polynomial("x^-1", None).is_err());
        assert!(parse_polynomial("1/0", None).is_err());
        assert!(parse_polynomial("(x", None).is_err());
        assert!(parse_polynomial("z", Some(&vars_of(&["x"]))).is_err());
    }

    #[test]
    fn points() {
        assert_eq!(parse_point("0,1/2,-3").unwrap(), vec![int(0), rat(1, 2), int(-3)]);
        assert!(parse_point("a").is_err());
        assert!(parse_point("").unwrap().is_empty());
    }
}
