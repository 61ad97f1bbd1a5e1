//! Text syntax for noncommutative polynomials.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ['^' nat]
//! atom   := nat | 't' | var | '(' expr ')' | 'comm' '(' expr ',' expr ')'
//! var    := 'x' nat | 'y' nat '_' nat
//! ```
//!
//! `t` denotes the extension generator and is rejected over a prime field.
//! `comm(a, b)` expands to `a*b - b*a` and may be nested or raised to a
//! power like any other factor. Whitespace is insignificant.

use std::fmt;

use thiserror::Error;

use crate::freealg::{NcPolynomial, Variable};
use crate::gf::FieldSpec;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("parse error at {pos}: {msg}")]
    Syntax { pos: Pos, msg: String },
    #[error("parse error at {pos}: `t` is not an element of the prime field F_{p}")]
    GeneratorInPrimeField { pos: Pos, p: u64 },
}

/// 1-based line and column of an input offset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.col)
    }
}

/// Parse `text` into a polynomial with coefficients in `field`.
pub fn parse_poly(text: &str, field: &FieldSpec) -> Result<NcPolynomial, ParseError> {
    let mut parser = Parser {
        field: field.clone(),
        src: text,
        bytes: text.as_bytes(),
        pos: 0,
    };
    parser.skip_ws();
    let poly = parser.expr()?;
    parser.skip_ws();
    if parser.pos < parser.bytes.len() {
        return Err(parser.err_here("unexpected trailing input"));
    }
    Ok(poly)
}

struct Parser<'a> {
    field: FieldSpec,
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn pos_at(&self, offset: usize) -> Pos {
        let mut line = 1;
        let mut col = 1;
        for &b in &self.bytes[..offset.min(self.bytes.len())] {
            if b == b'\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        Pos { line, col }
    }

    fn err_at(&self, offset: usize, msg: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            pos: self.pos_at(offset),
            msg: msg.into(),
        }
    }

    fn err_here(&self, msg: impl Into<String>) -> ParseError {
        self.err_at(self.pos, msg)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<(), ParseError> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(self.err_here(format!("expected `{}`", b as char)))
        }
    }

    fn nat(&mut self) -> Result<u64, ParseError> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err_here("expected a number"));
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| self.err_at(start, "number too large"))
    }

    fn expr(&mut self) -> Result<NcPolynomial, ParseError> {
        self.skip_ws();
        let mut negate = false;
        if self.eat(b'-') {
            negate = true;
        } else {
            self.eat(b'+');
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            self.skip_ws();
            let negate = match self.peek() {
                Some(b'+') => false,
                Some(b'-') => true,
                _ => break,
            };
            self.pos += 1;
            let term = self.term()?;
            let term = if negate { term.neg() } else { term };
            acc = acc.add(&term).expect("same field");
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<NcPolynomial, ParseError> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            if !self.eat(b'*') {
                break;
            }
            let rhs = self.factor()?;
            acc = acc.mul(&rhs).expect("same field");
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<NcPolynomial, ParseError> {
        let base = self.atom()?;
        self.skip_ws();
        if self.eat(b'^') {
            self.skip_ws();
            let start = self.pos;
            let e = self.nat()?;
            let e = u32::try_from(e).map_err(|_| self.err_at(start, "exponent too large"))?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<NcPolynomial, ParseError> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.skip_ws();
                self.expect(b')')?;
                Ok(inner)
            }
            Some(b'x') => {
                self.pos += 1;
                let i = self.var_index(start)?;
                Ok(NcPolynomial::var(&self.field, i))
            }
            Some(b'y') => {
                self.pos += 1;
                let parent = self.var_index(start)?;
                self.expect(b'_')
                    .map_err(|_| self.err_here("split variable needs `_<slot>`"))?;
                let slot = self.var_index(self.pos)?;
                Ok(NcPolynomial::variable(
                    &self.field,
                    Variable::Split { parent, slot },
                ))
            }
            Some(b'c') => {
                let rest = &self.src[self.pos..];
                if !rest.starts_with("comm") {
                    return Err(self.err_here("expected a term"));
                }
                self.pos += 4;
                self.skip_ws();
                self.expect(b'(')?;
                let a = self.expr()?;
                self.skip_ws();
                self.expect(b',')?;
                let b = self.expr()?;
                self.skip_ws();
                self.expect(b')')?;
                Ok(a.commutator(&b).expect("same field"))
            }
            Some(b't') => {
                self.pos += 1;
                if self.field.is_prime_field() {
                    return Err(ParseError::GeneratorInPrimeField {
                        pos: self.pos_at(start),
                        p: self.field.characteristic(),
                    });
                }
                Ok(NcPolynomial::constant(
                    &self.field,
                    self.field.basis_power(1),
                ))
            }
            Some(b) if b.is_ascii_digit() => {
                let n = self.nat()?;
                Ok(NcPolynomial::constant(&self.field, self.field.from_int(n)))
            }
            Some(b) => Err(self.err_here(format!("unexpected `{}`", b as char))),
            None => Err(self.err_here("unexpected end of input")),
        }
    }

    fn var_index(&mut self, at: usize) -> Result<u32, ParseError> {
        let n = self.nat().map_err(|_| self.err_at(at, "variable needs a numeric index"))?;
        let n = u32::try_from(n).map_err(|_| self.err_at(at, "variable index too large"))?;
        if n == 0 {
            return Err(self.err_at(at, "variable indices start at 1"));
        }
        Ok(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::Monomial;

    fn f3() -> FieldSpec {
        FieldSpec::prime(3).unwrap()
    }

    #[test]
    fn parses_words_and_coefficients() {
        let f = f3();
        let p = parse_poly("2*x1*x2 + x2^2 - x1", &f).unwrap();
        assert_eq!(p.to_string(), "2*x1 + 2*x1*x2 + x2^2");
    }

    #[test]
    fn parse_display_round_trip() {
        let f = f3();
        for text in [
            "x1",
            "2*x1*x2^2*x1 + x2*x1*x2*x1",
            "1 + x1",
            "2",
            "x1^3",
            "y1_1*y1_2 + y1_2*y1_1",
        ] {
            let p = parse_poly(text, &f).unwrap();
            let q = parse_poly(&p.to_string(), &f).unwrap();
            assert_eq!(p, q, "round trip of `{text}`");
        }
    }

    #[test]
    fn comm_expands_to_commutator() {
        let f = f3();
        let direct = parse_poly("x1*x2 - x2*x1", &f).unwrap();
        let sugar = parse_poly("comm(x1, x2)", &f).unwrap();
        assert_eq!(direct, sugar);

        // Nested and powered forms.
        let hall = parse_poly("comm(x1,x2)^2", &f).unwrap();
        assert_eq!(hall.num_terms(), 4);
        let nested = parse_poly("comm(comm(x1,x2),x3)", &f).unwrap();
        assert_eq!(nested.num_terms(), 4); // x1x2x3 - x2x1x3 - x3x1x2 + x3x2x1
    }

    #[test]
    fn unary_minus_and_constant_fold() {
        let f = f3();
        let p = parse_poly("-x1 + 2*x1", &f).unwrap();
        assert_eq!(p.to_string(), "x1");
        let q = parse_poly("3*x1", &f).unwrap();
        assert!(q.is_zero());
        let c = parse_poly("4", &f).unwrap();
        assert_eq!(c.coefficient(&Monomial::one()), f.from_int(1));
    }

    #[test]
    fn extension_coefficients() {
        let f4 = FieldSpec::with_default_modulus(2, 2).unwrap();
        let p = parse_poly("t*x1 + (t+1)*x2", &f4).unwrap();
        assert_eq!(p.to_string(), "t*x1 + (t+1)*x2");
        let sq = parse_poly("t^2", &f4).unwrap();
        // t^2 = t+1 in F_4.
        assert_eq!(sq.coefficient(&Monomial::one()), f4.parse_elem("t+1").unwrap());
    }

    #[test]
    fn t_rejected_in_prime_field() {
        let f = f3();
        match parse_poly("t*x1", &f) {
            Err(ParseError::GeneratorInPrimeField { p: 3, .. }) => {}
            other => panic!("expected prime-field generator error, got {other:?}"),
        }
    }

    #[test]
    fn error_positions_are_line_and_column() {
        let f = f3();
        let err = parse_poly("x1 +\n @", &f).unwrap_err();
        match err {
            ParseError::Syntax { pos, .. } => {
                assert_eq!(pos.line, 2);
                assert_eq!(pos.col, 2);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_malformed_input() {
        let f = f3();
        for text in ["x0", "x", "y1", "y1_0", "x1 +", "comm(x1)", "(x1", "x1 x2", "^2"] {
            assert!(parse_poly(text, &f).is_err(), "`{text}` should fail");
        }
    }

    #[test]
    fn split_variables_parse() {
        let f = f3();
        let p = parse_poly("y2_3", &f).unwrap();
        let vars: Vec<_> = p.variables().into_iter().collect();
        assert_eq!(vars, vec![Variable::Split { parent: 2, slot: 3 }]);
    }
}
