//! Expression grammar for forms in `x, y, z`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' INT)?
//! atom   := INT ('/' INT)? | 'x' | 'y' | 'z' | '(' expr ')'
//! ```
//!
//! Whitespace is ignored. Two adjacent atoms without `*` are rejected.

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;
use tricover::algebra::Poly;
use tricover::{Error as CoreError, FactoredForm, Form, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("expression is not homogeneous: terms of degree {0} and {1}")]
    NotHomogeneous(u32, u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Open,
    Close,
}

fn syntax(position: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        position,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, ch) = chars[i];
        let tok = match ch {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().map(|(_, c)| c).collect();
                out.push((pos, Tok::Int(digits.parse().expect("ascii digits"))));
                continue;
            }
            'x' => Tok::Var(0),
            'y' => Tok::Var(1),
            'z' => Tok::Var(2),
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::Open,
            ')' => Tok::Close,
            c => return Err(syntax(pos, format!("unexpected character '{c}'"))),
        };
        out.push((pos, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly<3>, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(&Tok::Plus) {
                acc = &acc + &self.term()?;
            } else if self.eat(&Tok::Minus) {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly<3>, ParseError> {
        let mut acc = self.unary()?;
        while self.eat(&Tok::Star) {
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly<3>, ParseError> {
        if self.eat(&Tok::Minus) {
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly<3>, ParseError> {
        let base = self.atom()?;
        if !self.eat(&Tok::Caret) {
            return Ok(base);
        }
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.at += 1;
                let e: u32 = n
                    .try_into()
                    .map_err(|_| syntax(pos, "exponent too large"))?;
                Ok(base.pow(e))
            }
            _ => Err(syntax(pos, "expected an integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<Poly<3>, ParseError> {
        let pos = self.pos();
        let Some(tok) = self.peek().cloned() else {
            return Err(syntax(pos, "unexpected end of input"));
        };
        self.at += 1;
        match tok {
            Tok::Int(n) => {
                let mut value = BigRational::from_integer(n);
                if self.eat(&Tok::Slash) {
                    let dpos = self.pos();
                    match self.peek().cloned() {
                        Some(Tok::Int(d)) if d != BigInt::from(0) => {
                            self.at += 1;
                            value /= BigRational::from_integer(d);
                        }
                        Some(Tok::Int(_)) => return Err(syntax(dpos, "division by zero")),
                        _ => return Err(syntax(dpos, "expected an integer denominator")),
                    }
                }
                Ok(Poly::constant(Scalar::from(value)))
            }
            Tok::Var(v) => Ok(Poly::var(v)),
            Tok::Open => {
                let inner = self.expr()?;
                let close = self.pos();
                if !self.eat(&Tok::Close) {
                    return Err(syntax(close, "expected ')'"));
                }
                Ok(inner)
            }
            other => Err(syntax(pos, format!("unexpected {}", describe(&other)))),
        }
    }
}

fn describe(t: &Tok) -> &'static str {
    match t {
        Tok::Int(_) => "number",
        Tok::Var(_) => "variable",
        Tok::Plus => "'+'",
        Tok::Minus => "'-'",
        Tok::Star => "'*'",
        Tok::Slash => "'/'",
        Tok::Caret => "'^'",
        Tok::Open => "'('",
        Tok::Close => "')'",
    }
}

/// Parses an arbitrary polynomial in `x, y, z`.
pub fn parse_polynomial(text: &str) -> Result<Poly<3>, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: text.len(),
    };
    let value = p.expr()?;
    if let Some(t) = p.peek() {
        let message = match t {
            Tok::Int(_) | Tok::Var(_) | Tok::Open => "implicit multiplication is not allowed; use '*'".to_string(),
            other => format!("unexpected {}", describe(other)),
        };
        return Err(syntax(p.pos(), message));
    }
    Ok(value)
}

/// Parses a homogeneous form. The zero polynomial becomes the zero form of degree 0.
pub fn parse_expression(text: &str) -> Result<Form, ParseError> {
    Form::from_poly(parse_polynomial(text)?).map_err(|e| match e {
        CoreError::NotHomogeneous(a, b) => ParseError::NotHomogeneous(a, b),
        other => syntax(0, other.to_string()),
    })
}

/// Renders a form in the parser's grammar.
pub fn format_expression(f: &Form) -> String {
    f.to_string()
}

/// Splits at top-level occurrences of `sep`, returning each piece with its byte offset.
pub(crate) fn split_top_level(text: &str, sep: char) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push((start, &text[start..i]));
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push((start, &text[start..]));
    out
}

fn shift(e: ParseError, by: usize) -> ParseError {
    match e {
        ParseError::Syntax { position, message } => ParseError::Syntax {
            position: position + by,
            message,
        },
        other => other,
    }
}

/// Parses a factored form `unit*(base)^k*...`. A piece is a constant (the unit), a parenthesized
/// base with an optional exponent, or a variable with an optional exponent. A lone `0` is the zero
/// form.
pub fn parse_factored(text: &str, irreducible: bool) -> Result<FactoredForm, ParseError> {
    if text.trim() == "0" {
        return Ok(FactoredForm::zero());
    }
    let mut unit = Scalar::one();
    let mut bases: Vec<(Form, u32)> = Vec::new();
    for (offset, piece) in split_top_level(text, '*') {
        let trimmed = piece.trim();
        let lead = offset + piece.len() - piece.trim_start().len();
        if trimmed.is_empty() {
            return Err(syntax(lead, "empty factor"));
        }
        let (body, exponent) = match split_exponent(trimmed) {
            Some((body, e)) => (body, e.map_err(|m| syntax(lead, m))?),
            None => (trimmed, 1),
        };
        let f = parse_expression(body).map_err(|e| shift(e, lead))?;
        if f.is_constant() {
            if exponent != 1 {
                return Err(syntax(lead, "constant factors take no exponent"));
            }
            if f.is_zero() {
                return Err(syntax(lead, "zero factor in a product"));
            }
            unit = &unit * &f.coefficient([0, 0, 0]);
        } else {
            bases.push((f, exponent));
        }
    }
    FactoredForm::new(unit, bases, irreducible).map_err(|e| syntax(0, e.to_string()))
}

/// `(...)^k` or `v^k` split into body and exponent; `None` when there is no top-level `^`.
fn split_exponent(piece: &str) -> Option<(&str, Result<u32, String>)> {
    let parts = split_top_level(piece, '^');
    if parts.len() != 2 {
        return None;
    }
    let (_, body) = parts[0];
    let (_, exp) = parts[1];
    let body = body.trim();
    let wrapped = body.starts_with('(') && body.ends_with(')');
    let variable = matches!(body, "x" | "y" | "z");
    if !wrapped && !variable {
        return None;
    }
    Some((
        body,
        exp.trim()
            .parse::<u32>()
            .map_err(|_| format!("bad multiplicity '{}'", exp.trim())),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discriminant_shape() {
        let f = parse_expression("4*x*y + 27*z^2").unwrap();
        let expected = (&Form::x() * &Form::y())
            .scale(&Scalar::from(4))
            .checked_add(&Form::z().pow(2).scale(&Scalar::from(27)))
            .unwrap();
        assert_eq!(f, expected);
    }

    #[test]
    fn rejects_mixed_degrees() {
        assert_eq!(parse_expression("x + y^2"), Err(ParseError::NotHomogeneous(1, 2)));
    }

    #[test]
    fn parentheses() {
        assert_eq!(parse_expression("((x))").unwrap(), Form::x());
    }

    #[test]
    fn rationals_and_signs() {
        let f = parse_expression("-3/2*x - -y").unwrap();
        assert_eq!(f.coefficient([1, 0, 0]), Scalar::ratio(-3, 2));
        assert_eq!(f.coefficient([0, 1, 0]), Scalar::from(1));
    }

    #[test]
    fn implicit_multiplication_is_an_error() {
        match parse_expression("2x") {
            Err(ParseError::Syntax { position, .. }) => assert_eq!(position, 1),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_expression("(x)(y)"), Err(ParseError::Syntax { position: 3, .. })));
    }

    #[test]
    fn positions_of_errors() {
        assert!(matches!(parse_expression("x + "), Err(ParseError::Syntax { position: 4, .. })));
        assert!(matches!(parse_expression("x + w"), Err(ParseError::Syntax { position: 4, .. })));
        assert!(matches!(parse_expression("(x + y"), Err(ParseError::Syntax { position: 6, .. })));
        assert!(matches!(parse_expression("x^y"), Err(ParseError::Syntax { position: 2, .. })));
        assert!(matches!(parse_expression("1/0*x"), Err(ParseError::Syntax { position: 2, .. })));
    }

    #[test]
    fn format_round_trip() {
        for text in ["x^2 + x*z + 2/3*y^2 - 2/3*y*z", "-x*y*z", "7", "0", "-1/5*z^4 + y^4"] {
            let f = parse_expression(text).unwrap();
            assert_eq!(parse_expression(&format_expression(&f)).unwrap(), f);
        }
    }

    #[test]
    fn factored_forms() {
        let f = parse_factored("-2*(x - y)^2*(y)^1*z", true).unwrap();
        assert_eq!(f.unit(), &Scalar::from(-2));
        assert_eq!(f.factors().len(), 3);
        assert_eq!(f.degree(), 4);
        let g = parse_factored(&f.to_string(), true).unwrap();
        assert_eq!(f, g);
        assert!(parse_factored("0", true).unwrap().is_zero());
        assert!(parse_factored("(x)^a", true).is_err());
    }
}
