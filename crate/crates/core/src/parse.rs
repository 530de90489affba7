//! Expression parser shared by every polynomial input.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/' | <implicit>) unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | letter | '(' expr ')'
//! ```
//!
//! Implicit multiplication applies before a letter or `(`, so `3x^2`,
//! `2pq` and `37/18 x^2` all mean what they look like. Every letter is its
//! own variable. Division is left-associative and only allowed when the
//! evaluation target can divide by the right operand.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::arith::Rational;
use crate::error::Error;

const MAX_EXPONENT: u32 = 4096;

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(Rational),
    Var { name: char, pos: usize },
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div { lhs: Box<Expr>, rhs: Box<Expr>, pos: usize },
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

/// Something an [`Expr`] can be evaluated into.
pub trait ExprTarget:
    Sized + Clone + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn constant(c: Rational) -> Self;
    /// `None` when this target cannot divide by `rhs`.
    fn checked_div(self, rhs: Self) -> Option<Self>;
}

impl Expr {
    /// Distinct variable names, in order of first appearance.
    pub fn variables(&self) -> Vec<(char, usize)> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<(char, usize)>) {
        match self {
            Expr::Num(_) => {}
            Expr::Var { name, pos } => {
                if !out.iter().any(|(n, _)| n == name) {
                    out.push((*name, *pos));
                }
            }
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Expr::Div { lhs, rhs, .. } => {
                lhs.collect_vars(out);
                rhs.collect_vars(out);
            }
            Expr::Neg(a) | Expr::Pow(a, _) => a.collect_vars(out),
        }
    }

    pub fn eval<T: ExprTarget>(
        &self,
        var: &dyn Fn(char, usize) -> Result<T, Error>,
    ) -> Result<T, Error> {
        Ok(match self {
            Expr::Num(c) => T::constant(c.clone()),
            Expr::Var { name, pos } => var(*name, *pos)?,
            Expr::Add(a, b) => a.eval(var)? + b.eval(var)?,
            Expr::Sub(a, b) => a.eval(var)? - b.eval(var)?,
            Expr::Mul(a, b) => a.eval(var)? * b.eval(var)?,
            Expr::Neg(a) => -a.eval(var)?,
            Expr::Div { lhs, rhs, pos } => lhs
                .eval(var)?
                .checked_div(rhs.eval(var)?)
                .ok_or_else(|| Error::parse(*pos, "division by zero or by a non-constant"))?,
            Expr::Pow(a, e) => {
                let base = a.eval(var)?;
                let mut acc = T::constant(Rational::one());
                for _ in 0..*e {
                    acc = acc * base.clone();
                }
                acc
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Letter(char),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, Error> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = i;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push((Tok::Int(digits.parse().expect("ascii digits")), pos));
                continue;
            }
            c if c.is_ascii_alphabetic() => Tok::Letter(c),
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => return Err(Error::parse(pos, format!("unexpected character {other:?}"))),
        };
        out.push((tok, pos));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(_, p)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(t, _)| t.clone());
        self.at += 1;
        t
    }

    fn expr(&mut self) -> Result<Expr, Error> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, Error> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Tok::Slash) => {
                    let pos = self.pos();
                    self.bump();
                    let rhs = self.unary()?;
                    lhs = Expr::Div {
                        lhs: Box::new(lhs),
                        rhs: Box::new(rhs),
                        pos,
                    };
                }
                Some(Tok::Letter(_)) | Some(Tok::LParen) => {
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, Error> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Some(Tok::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr, Error> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Int(e)) => match e.to_u32() {
                Some(e) if e <= MAX_EXPONENT => Ok(Expr::Pow(Box::new(base), e)),
                _ => Err(Error::parse(pos, "exponent too large")),
            },
            _ => Err(Error::parse(pos, "exponent must be a nonnegative integer")),
        }
    }

    fn atom(&mut self) -> Result<Expr, Error> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Int(n)) => Ok(Expr::Num(Rational::from_integer(n))),
            Some(Tok::Letter(name)) => Ok(Expr::Var { name, pos }),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                let close = self.pos();
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(Error::parse(close, "expected ')'")),
                }
            }
            Some(_) => Err(Error::parse(pos, "expected a number, variable or '('")),
            None => Err(Error::parse(pos, "unexpected end of input")),
        }
    }
}

pub fn parse_expr(text: &str) -> Result<Expr, Error> {
    let toks = lex(text)?;
    let mut parser = Parser {
        toks,
        at: 0,
        end: text.chars().count(),
    };
    let e = parser.expr()?;
    if parser.at < parser.toks.len() {
        return Err(Error::parse(parser.pos(), "unexpected trailing input"));
    }
    Ok(e)
}

impl ExprTarget for Rational {
    fn constant(c: Rational) -> Self {
        c
    }

    fn checked_div(self, rhs: Self) -> Option<Self> {
        if num_traits::Zero::is_zero(&rhs) {
            None
        } else {
            Some(self / rhs)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{frac, int};

    fn eval_at(text: &str, x: Rational) -> Result<Rational, Error> {
        parse_expr(text)?.eval(&|_, _| Ok(x.clone()))
    }

    #[test]
    fn precedence_and_implicit_multiplication() {
        assert_eq!(eval_at("x^5 - 3x^2 + x + 1", int(2)).unwrap(), int(23));
        assert_eq!(eval_at("37/18 x^2", int(3)).unwrap(), frac(37, 2));
        assert_eq!(eval_at("-x^2", int(3)).unwrap(), int(-9));
        assert_eq!(eval_at("x/2/3", int(6)).unwrap(), int(1));
        assert_eq!(eval_at("2(x+1)^2", int(1)).unwrap(), int(8));
        assert_eq!(eval_at("3*-x", int(2)).unwrap(), int(-6));
    }

    #[test]
    fn errors_carry_positions() {
        match parse_expr("x^2 + $") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("{other:?}"),
        }
        match parse_expr("x^-1") {
            Err(Error::Parse { pos, msg }) => {
                assert_eq!(pos, 2);
                assert!(msg.contains("nonnegative integer"));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_expr("(x+1"), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(parse_expr("x +"), Err(Error::Parse { .. })));
        assert!(matches!(parse_expr("x 2"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(eval_at("1/(x-1)", int(1)), Err(Error::Parse { pos: 1, .. })));
    }

    #[test]
    fn variables_in_order() {
        let e = parse_expr("q^2 + 2pq - p").unwrap();
        let names: Vec<char> = e.variables().into_iter().map(|(c, _)| c).collect();
        assert_eq!(names, vec!['q', 'p']);
    }
}
