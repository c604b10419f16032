//! Text format for algebra definitions.
//!
//! ```text
//! # W(2,2)
//! generators: L M
//! bracket L L = (D + 2*x) L
//! bracket L M = (D + 2*x) M
//! ```
//!
//! `D` is the translation operator and `x` the bracket variable. Expressions
//! use `+ - * ^`, parentheses, integer and `p/q` literals, and juxtaposition
//! for multiplication. Each bracket right-hand side must be linear in the
//! generators. Undeclared pairs bracket to zero.

use std::fmt::Write as _;

use lconf_core::algebra::{lam, partial, AlgebraError, AxiomReport, Element};
use lconf_core::poly::{Polynomial, Rational};
use lconf_core::ConformalAlgebra;
use num::{BigInt, Zero};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AlgFileError {
    #[error("{line}:{col}: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error("{0}")]
    Structure(#[from] AlgebraError),
    #[error("axioms fail:\n{0}")]
    Axioms(String),
}

fn syntax(line: usize, col: usize, message: impl Into<String>) -> AlgFileError {
    AlgFileError::Syntax {
        line,
        col,
        message: message.into(),
    }
}

/// Parses and validates: the algebra must satisfy skew-symmetry and Jacobi.
pub fn parse_algebra(text: &str) -> Result<ConformalAlgebra, AlgFileError> {
    let alg = parse_unchecked(text)?;
    let report = alg.check_axioms();
    if !report.ok() {
        return Err(AlgFileError::Axioms(describe_failures(&alg, &report)));
    }
    Ok(alg)
}

/// Parses without running the axiom checks.
pub fn parse_unchecked(text: &str) -> Result<ConformalAlgebra, AlgFileError> {
    let mut names: Option<Vec<String>> = None;
    let mut brackets: Vec<((usize, usize), Element)> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim_start();
        if trimmed.trim_end().is_empty() {
            continue;
        }
        let indent = content.len() - trimmed.len();
        if let Some(rest) = trimmed.strip_prefix("generators:") {
            if names.is_some() {
                return Err(syntax(line, indent + 1, "generators declared twice"));
            }
            let list: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            if list.is_empty() {
                return Err(syntax(line, indent + 1, "expected at least one generator name"));
            }
            for n in &list {
                let col = content.find(n.as_str()).unwrap_or(0) + 1;
                if !is_identifier(n) || n == "D" || n == "x" {
                    return Err(syntax(line, col, format!("invalid generator name `{n}`")));
                }
            }
            names = Some(list);
        } else if trimmed.starts_with("bracket") && trimmed[7..].starts_with(char::is_whitespace) {
            let Some(gens) = names.as_deref() else {
                return Err(syntax(line, indent + 1, "bracket before generators declaration"));
            };
            let mut lx = Lexer::new(content, line, indent + 7);
            let i = lx.generator(gens)?;
            let j = lx.generator(gens)?;
            if i > j {
                return Err(syntax(
                    line,
                    indent + 1,
                    format!(
                        "declare brackets with generators in declared order: bracket {} {}",
                        gens[j], gens[i]
                    ),
                ));
            }
            if brackets.iter().any(|(p, _)| *p == (i, j)) {
                return Err(syntax(line, indent + 1, "bracket declared twice"));
            }
            lx.expect('=')?;
            let value = Parser { lx, gens }.parse_rhs()?;
            brackets.push(((i, j), value));
        } else {
            return Err(syntax(line, indent + 1, "expected `generators:` or `bracket`"));
        }
    }
    let names = names.ok_or_else(|| syntax(1, 1, "missing `generators:` line"))?;
    Ok(ConformalAlgebra::new(names, brackets)?)
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Prints in the format accepted by [`parse_algebra`].
pub fn print_algebra(alg: &ConformalAlgebra) -> String {
    let mut out = format!("generators: {}\n", alg.names().join(" "));
    for (&(i, j), e) in alg.stored() {
        let _ = writeln!(
            out,
            "bracket {} {} = {}",
            alg.names()[i],
            alg.names()[j],
            alg.format_element(e)
        );
    }
    out
}

pub fn describe_failures(alg: &ConformalAlgebra, report: &AxiomReport) -> String {
    let mut out = String::new();
    for w in &report.witnesses {
        let gens: Vec<&str> = w.generators.iter().map(|&g| alg.names()[g].as_str()).collect();
        let _ = writeln!(
            out,
            "  {:?} on ({}): residual {}",
            w.axiom,
            gens.join(","),
            alg.format_element(&w.residual)
        );
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
    End,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
    peeked: Option<(Tok, usize)>,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str, line: usize, pos: usize) -> Self {
        Lexer {
            src,
            pos,
            line,
            peeked: None,
        }
    }

    fn err(&self, col: usize, message: impl Into<String>) -> AlgFileError {
        syntax(self.line, col + 1, message)
    }

    fn scan(&mut self) -> Result<(Tok, usize), AlgFileError> {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        let Some(&b) = bytes.get(start) else {
            return Ok((Tok::End, start));
        };
        if b.is_ascii_digit() {
            while self.pos < bytes.len() && bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let n: BigInt = self.src[start..self.pos].parse().expect("digits");
            return Ok((Tok::Num(n), start));
        }
        if b.is_ascii_alphabetic() || b == b'_' {
            while self.pos < bytes.len() && (bytes[self.pos].is_ascii_alphanumeric() || bytes[self.pos] == b'_') {
                self.pos += 1;
            }
            return Ok((Tok::Ident(self.src[start..self.pos].to_string()), start));
        }
        if b"+-*/^()=".contains(&b) {
            self.pos += 1;
            return Ok((Tok::Sym(b as char), start));
        }
        let c = self.src[start..].chars().next().unwrap();
        Err(self.err(start, format!("unexpected character `{c}`")))
    }

    fn peek(&mut self) -> Result<&(Tok, usize), AlgFileError> {
        if self.peeked.is_none() {
            self.peeked = Some(self.scan()?);
        }
        Ok(self.peeked.as_ref().unwrap())
    }

    fn next(&mut self) -> Result<(Tok, usize), AlgFileError> {
        match self.peeked.take() {
            Some(t) => Ok(t),
            None => self.scan(),
        }
    }

    fn expect(&mut self, c: char) -> Result<(), AlgFileError> {
        match self.next()? {
            (Tok::Sym(s), _) if s == c => Ok(()),
            (_, at) => Err(self.err(at, format!("expected `{c}`"))),
        }
    }

    fn generator(&mut self, gens: &[String]) -> Result<usize, AlgFileError> {
        match self.next()? {
            (Tok::Ident(name), at) => gens
                .iter()
                .position(|g| *g == name)
                .ok_or_else(|| self.err(at, format!("unknown generator `{name}`"))),
            (_, at) => Err(self.err(at, "expected a generator name")),
        }
    }
}

/// A parsed subexpression: a polynomial in `D, x`, or a `C[D, x]`-combination of generators.
#[derive(Clone, Debug)]
enum Value {
    Poly(Polynomial),
    Elem(Element),
}

struct Parser<'a> {
    lx: Lexer<'a>,
    gens: &'a [String],
}

impl Parser<'_> {
    fn parse_rhs(mut self) -> Result<Element, AlgFileError> {
        let at = self.lx.peek()?.1;
        let v = self.sum()?;
        match self.lx.next()? {
            (Tok::End, _) => {}
            (_, at) => return Err(self.lx.err(at, "unexpected trailing input")),
        }
        match v {
            Value::Elem(e) => Ok(e),
            Value::Poly(p) if p.is_zero() => Ok(Element::zero(self.gens.len())),
            Value::Poly(_) => Err(self.lx.err(at, "bracket value must be a combination of generators")),
        }
    }

    fn combine(&self, a: Value, b: Value, subtract: bool, at: usize) -> Result<Value, AlgFileError> {
        let b = match (b, subtract) {
            (Value::Poly(p), true) => Value::Poly(-p),
            (Value::Elem(e), true) => Value::Elem(e.neg()),
            (b, false) => b,
        };
        match (a, b) {
            (Value::Poly(p), Value::Poly(q)) => Ok(Value::Poly(&p + &q)),
            (Value::Elem(e), Value::Elem(f)) => Ok(Value::Elem(e.add(&f))),
            (Value::Poly(p), Value::Elem(e)) | (Value::Elem(e), Value::Poly(p)) if p.is_zero() => Ok(Value::Elem(e)),
            _ => Err(self.lx.err(at, "cannot add a polynomial to a generator combination")),
        }
    }

    fn sum(&mut self) -> Result<Value, AlgFileError> {
        let mut acc = self.product()?;
        loop {
            let (tok, at) = self.lx.peek()?.clone();
            let subtract = match tok {
                Tok::Sym('+') => false,
                Tok::Sym('-') => true,
                _ => return Ok(acc),
            };
            self.lx.next()?;
            let rhs = self.product()?;
            acc = self.combine(acc, rhs, subtract, at)?;
        }
    }

    fn starts_factor(tok: &Tok) -> bool {
        matches!(tok, Tok::Num(_) | Tok::Ident(_) | Tok::Sym('('))
    }

    fn product(&mut self) -> Result<Value, AlgFileError> {
        let mut acc = self.unary()?;
        loop {
            let (tok, at) = self.lx.peek()?.clone();
            if tok == Tok::Sym('*') {
                self.lx.next()?;
            } else if !Self::starts_factor(&tok) {
                return Ok(acc);
            }
            let rhs = self.unary()?;
            acc = match (acc, rhs) {
                (Value::Poly(p), Value::Poly(q)) => Value::Poly(&p * &q),
                (Value::Poly(p), Value::Elem(e)) | (Value::Elem(e), Value::Poly(p)) => Value::Elem(e.map(|c| c * &p)),
                (Value::Elem(_), Value::Elem(_)) => {
                    return Err(self.lx.err(at, "product of two generators is not allowed"))
                }
            };
        }
    }

    fn unary(&mut self) -> Result<Value, AlgFileError> {
        if self.lx.peek()?.0 == Tok::Sym('-') {
            self.lx.next()?;
            return Ok(match self.unary()? {
                Value::Poly(p) => Value::Poly(-p),
                Value::Elem(e) => Value::Elem(e.neg()),
            });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Value, AlgFileError> {
        let base = self.atom()?;
        if self.lx.peek()?.0 != Tok::Sym('^') {
            return Ok(base);
        }
        let at = self.lx.next()?.1;
        let exp = match self.lx.next()? {
            (Tok::Num(n), _) => u32::try_from(n).map_err(|_| self.lx.err(at, "exponent too large"))?,
            (_, at) => return Err(self.lx.err(at, "expected an integer exponent")),
        };
        match base {
            Value::Poly(p) => Ok(Value::Poly(p.pow(exp))),
            Value::Elem(_) => Err(self.lx.err(at, "generators cannot be raised to a power")),
        }
    }

    fn atom(&mut self) -> Result<Value, AlgFileError> {
        match self.lx.next()? {
            (Tok::Num(n), _) => {
                if self.lx.peek()?.0 != Tok::Sym('/') {
                    return Ok(Value::Poly(Polynomial::constant(Rational::from_integer(n))));
                }
                let at = self.lx.next()?.1;
                match self.lx.next()? {
                    (Tok::Num(d), _) if !d.is_zero() => Ok(Value::Poly(Polynomial::constant(Rational::new(n, d)))),
                    _ => Err(self.lx.err(at, "expected a nonzero integer denominator")),
                }
            }
            (Tok::Ident(name), at) => {
                if name == "D" {
                    return Ok(Value::Poly(partial()));
                }
                if name == "x" {
                    return Ok(Value::Poly(Polynomial::var(lam())));
                }
                match self.gens.iter().position(|g| *g == name) {
                    Some(k) => Ok(Value::Elem(Element::generator(self.gens.len(), k))),
                    None => Err(self.lx.err(at, format!("unknown symbol `{name}`"))),
                }
            }
            (Tok::Sym('('), _) => {
                let v = self.sum()?;
                self.lx.expect(')')?;
                Ok(v)
            }
            (Tok::End, at) => Err(self.lx.err(at, "unexpected end of line")),
            (_, at) => Err(self.lx.err(at, "expected a number, symbol or `(`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn juxtaposition_and_literals() {
        let alg = parse_unchecked("generators: A\nbracket A A = 3/2 x^2 A - D*A\n").unwrap();
        let e = &alg.stored()[&(0, 0)];
        assert_eq!(e.coeff(0).to_string(), "3/2*x^2 - D");
    }

    #[test]
    fn error_positions() {
        let err = parse_unchecked("generators: L\nbracket L L = (D + 2*x\n").unwrap_err();
        assert_eq!(err.to_string(), "2:23: expected `)`");
        let err = parse_unchecked("generators: L\nbracket L L = (D + 2*y) L\n").unwrap_err();
        assert_eq!(err.to_string(), "2:22: unknown symbol `y`");
        let err = parse_unchecked("bracket L L = L\n").unwrap_err();
        assert_eq!(err.to_string(), "1:1: bracket before generators declaration");
    }

    #[test]
    fn generator_products_rejected() {
        let err = parse_unchecked("generators: L M\nbracket L M = L M\n").unwrap_err();
        assert!(err.to_string().contains("product of two generators"));
    }
}
