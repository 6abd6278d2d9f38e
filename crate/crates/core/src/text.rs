//! Text form of scalars and phase-space polynomials.
//!
//! Grammar (whitespace is insignificant):
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ['^' uint]
//! atom   := rational | 'i' | 'j' | 'h' | 'x'<uint> | 'p'<uint> | '(' expr ')'
//! ```
//!
//! `h` is the formal Planck parameter, `i^2 = -1`, `j^2 = +1`. Variable indices
//! start at 1. The printer emits terms in graded-lex order (highest phase-space
//! degree first) and only ever produces text this parser reads back to the
//! same value.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::phase::{PhasePolynomial, Var};
use crate::scalar::{Rational, Scalar, Unit};

pub(crate) struct FlatTerm<'a> {
    pub coeff: &'a Rational,
    pub unit: Option<char>,
    pub hbar: u32,
}

/// Writes `Σ coeff * unit * h^k * vars`.
pub(crate) fn write_sum<'a, 'b>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a FlatTerm<'b>, &'a str)>,
) -> fmt::Result
where
    'b: 'a,
{
    let mut first = true;
    for (term, vars) in terms {
        let negative = term.coeff.is_negative();
        match (first, negative) {
            (true, true) => f.write_str("-")?,
            (true, false) => {}
            (false, true) => f.write_str(" - ")?,
            (false, false) => f.write_str(" + ")?,
        }
        first = false;

        let magnitude = term.coeff.abs();
        let mut factors: Vec<String> = Vec::new();
        let bare = term.unit.is_none() && term.hbar == 0 && vars.is_empty();
        if !magnitude.is_one() {
            if magnitude.is_integer() || bare {
                factors.push(magnitude.to_string());
            } else {
                factors.push(format!("({magnitude})"));
            }
        }
        if let Some(u) = term.unit {
            factors.push(u.to_string());
        }
        match term.hbar {
            0 => {}
            1 => factors.push("h".into()),
            k => factors.push(format!("h^{k}")),
        }
        if !vars.is_empty() {
            factors.push(vars.to_string());
        }
        if factors.is_empty() {
            f.write_str("1")?;
        } else {
            f.write_str(&factors.join("*"))?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational),
    Unit(Unit),
    Hbar,
    Var(Var),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn syntax(offset: usize, message: impl Into<String>) -> Error {
    Error::Syntax { offset, message: message.into() }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    let digits = |start: usize| {
        let mut end = start;
        while end < bytes.len() && bytes[end].is_ascii_digit() {
            end += 1;
        }
        end
    };
    while pos < bytes.len() {
        let c = bytes[pos];
        let start = pos;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                pos += 1;
                continue;
            }
            b'0'..=b'9' => {
                let end = digits(pos);
                let num: BigInt = src[pos..end].parse().expect("digits");
                pos = end;
                let mut value = Rational::from_integer(num);
                if pos < bytes.len() && bytes[pos] == b'/' {
                    let dend = digits(pos + 1);
                    if dend == pos + 1 {
                        return Err(syntax(pos + 1, "expected denominator"));
                    }
                    let den: BigInt = src[pos + 1..dend].parse().expect("digits");
                    if den.is_zero() {
                        return Err(syntax(pos + 1, "zero denominator"));
                    }
                    value /= Rational::from_integer(den);
                    pos = dend;
                }
                Tok::Num(value)
            }
            b'x' | b'p' => {
                let end = digits(pos + 1);
                if end == pos + 1 {
                    return Err(syntax(pos + 1, "expected variable index"));
                }
                let index: usize = src[pos + 1..end]
                    .parse()
                    .map_err(|_| syntax(pos + 1, "variable index too large"))?;
                if index == 0 {
                    return Err(syntax(pos + 1, "variable indices start at 1"));
                }
                pos = end;
                Tok::Var(if c == b'x' { Var::X(index) } else { Var::P(index) })
            }
            _ => {
                pos += 1;
                match c {
                    b'i' => Tok::Unit(Unit::Imaginary),
                    b'j' => Tok::Unit(Unit::Split),
                    b'h' => Tok::Hbar,
                    b'+' => Tok::Plus,
                    b'-' => Tok::Minus,
                    b'*' => Tok::Star,
                    b'^' => Tok::Caret,
                    b'(' => Tok::LParen,
                    b')' => Tok::RParen,
                    _ => {
                        let ch = src[start..].chars().next().unwrap_or('?');
                        return Err(syntax(start, format!("unexpected character {ch:?}")));
                    }
                }
            }
        };
        out.push((start, tok));
    }
    Ok(out)
}

#[derive(Debug)]
enum Ast {
    Num(Rational),
    Unit(Unit),
    Hbar,
    Var(Var),
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
}

const MAX_EXPONENT: u32 = 256;

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Ast> {
        let mut lhs = if self.peek() == Some(&Tok::Minus) {
            self.bump();
            Ast::Neg(Box::new(self.term()?))
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    lhs = Ast::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    lhs = Ast::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Ast> {
        let mut lhs = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            lhs = Ast::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Ast> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        let offset = self.offset();
        match self.bump() {
            Some(Tok::Num(n)) if n.is_integer() && !n.is_negative() => {
                let k: u32 = n
                    .to_integer()
                    .try_into()
                    .ok()
                    .filter(|k| *k <= MAX_EXPONENT)
                    .ok_or_else(|| syntax(offset, "exponent too large"))?;
                Ok(Ast::Pow(Box::new(base), k))
            }
            _ => Err(syntax(offset, "expected unsigned integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<Ast> {
        let offset = self.offset();
        match self.bump() {
            Some(Tok::Num(n)) => Ok(Ast::Num(n)),
            Some(Tok::Unit(u)) => Ok(Ast::Unit(u)),
            Some(Tok::Hbar) => Ok(Ast::Hbar),
            Some(Tok::Var(v)) => Ok(Ast::Var(v)),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                let close = self.offset();
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(syntax(close, "expected ')'")),
                }
            }
            Some(t) => Err(syntax(offset, format!("unexpected token {}", describe(&t)))),
            None => Err(syntax(offset, "unexpected end of input")),
        }
    }
}

fn describe(t: &Tok) -> &'static str {
    match t {
        Tok::Plus => "'+'",
        Tok::Minus => "'-'",
        Tok::Star => "'*'",
        Tok::Caret => "'^'",
        Tok::RParen => "')'",
        _ => "operand",
    }
}

fn max_index(ast: &Ast) -> usize {
    match ast {
        Ast::Var(Var::X(k)) | Ast::Var(Var::P(k)) => *k,
        Ast::Num(_) | Ast::Unit(_) | Ast::Hbar => 0,
        Ast::Neg(a) | Ast::Pow(a, _) => max_index(a),
        Ast::Add(a, b) | Ast::Sub(a, b) | Ast::Mul(a, b) => max_index(a).max(max_index(b)),
    }
}

fn eval(ast: &Ast, dim: usize) -> PhasePolynomial {
    match ast {
        Ast::Num(n) => PhasePolynomial::constant(dim, Scalar::from_rational(n.clone())),
        Ast::Unit(Unit::Imaginary) => PhasePolynomial::constant(dim, Scalar::i()),
        Ast::Unit(Unit::Split) => PhasePolynomial::constant(dim, Scalar::j()),
        Ast::Unit(Unit::Real) => PhasePolynomial::one(dim),
        Ast::Hbar => PhasePolynomial::constant(dim, Scalar::hbar()),
        Ast::Var(v) => PhasePolynomial::var(dim, *v),
        Ast::Neg(a) => -&eval(a, dim),
        Ast::Add(a, b) => &eval(a, dim) + &eval(b, dim),
        Ast::Sub(a, b) => &eval(a, dim) - &eval(b, dim),
        Ast::Mul(a, b) => &eval(a, dim) * &eval(b, dim),
        Ast::Pow(a, k) => eval(a, dim).pow(*k),
    }
}

fn parse_ast(src: &str) -> Result<Ast> {
    let toks = lex(src)?;
    let mut seen: Option<(Unit, usize)> = None;
    for (offset, tok) in &toks {
        if let Tok::Unit(u) = tok {
            match seen {
                Some((prev, _)) if prev != *u => {
                    return Err(syntax(*offset, "cannot mix 'i' and 'j'"));
                }
                _ => seen = Some((*u, *offset)),
            }
        }
    }
    let mut parser = Parser { toks, pos: 0, end: src.len() };
    let ast = parser.expr()?;
    if parser.pos < parser.toks.len() {
        let offset = parser.offset();
        let t = parser.bump().expect("token");
        return Err(syntax(offset, format!("unexpected token {}", describe(&t))));
    }
    Ok(ast)
}

/// Parses a polynomial whose dimension is the largest variable index (at
/// least 1).
pub fn parse_poly(src: &str) -> Result<PhasePolynomial> {
    parse_poly_dim(src, 1)
}

/// Parses a polynomial of dimension `max(min_dim, largest index)`.
pub fn parse_poly_dim(src: &str, min_dim: usize) -> Result<PhasePolynomial> {
    let ast = parse_ast(src)?;
    let dim = max_index(&ast).max(min_dim).max(1);
    Ok(eval(&ast, dim))
}

/// Parses a scalar literal such as `3/2`, `1 + j` or `(1/2)*i*h^2`.
pub fn parse_scalar(src: &str) -> Result<Scalar> {
    let ast = parse_ast(src)?;
    if max_index(&ast) > 0 {
        return Err(syntax(0, "scalar literal may not contain phase-space variables"));
    }
    let poly = eval(&ast, 1);
    Ok(poly.constant_term())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn reads_polynomial() {
        let p = parse_poly("x1*p1 - 1").unwrap();
        let expected = &(&PhasePolynomial::var(1, Var::X(1)) * &PhasePolynomial::var(1, Var::P(1)))
            - &PhasePolynomial::one(1);
        assert_eq!(p, expected);
        assert_eq!(p.terms().count(), 2);
    }

    #[test]
    fn reads_hbar_coefficient() {
        let p = parse_poly("(3/2)*h^2*x1").unwrap();
        assert_eq!(p.terms().count(), 1);
        let (_, c) = p.terms().next().unwrap();
        assert_eq!(*c, &Scalar::rational(3, 2) * &Scalar::hbar_pow(2));
    }

    #[test]
    fn reports_offset() {
        match parse_poly("x1 + + p1") {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 5),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_mixed_units() {
        assert!(matches!(parse_poly("i*x1 + j"), Err(Error::Syntax { offset: 7, .. })));
    }

    #[test]
    fn misc_errors() {
        assert!(parse_poly("x0").is_err());
        assert!(parse_poly("1/0").is_err());
        assert!(parse_poly("(x1").is_err());
        assert!(parse_poly("x1 p1").is_err());
        assert!(parse_poly("x1^-1").is_err());
        assert!(parse_poly("").is_err());
        assert!(parse_scalar("x1").is_err());
    }

    #[test]
    fn scalar_literals() {
        assert_eq!(parse_scalar("3/2").unwrap(), Scalar::rational(3, 2));
        assert_eq!(parse_scalar("1 + j").unwrap(), Scalar::split(rat(1, 1), rat(1, 1)));
        assert_eq!(parse_scalar("-(1/2)*h^2").unwrap(), &Scalar::hbar_pow(2) * &Scalar::rational(-1, 2));
    }

    #[test]
    fn printing_order() {
        let p = parse_poly("1/2*i*h + x1*p1").unwrap();
        assert_eq!(p.to_string(), "x1*p1 + (1/2)*i*h");
        let q = parse_poly("-h - x1^2*p1^2").unwrap();
        assert_eq!(q.to_string(), "-x1^2*p1^2 - h");
    }
}
