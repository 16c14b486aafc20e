//! Parser for the scalar wire grammar.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' exponent)?
//! exponent := ['-'] integer | '(' ['-'] integer ')'
//! atom   := integer | 'p' | '(' expr ')'
//! ```

use num_bigint::BigInt;
use thiserror::Error;

use super::field::Field;
use super::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("unexpected character {found:?} at offset {pos}")]
    Unexpected { pos: usize, found: char },
    #[error("unexpected end of input")]
    Eof,
    #[error("division by zero at offset {pos}")]
    DivisionByZero { pos: usize },
    #[error("exponent out of range at offset {pos}")]
    Exponent { pos: usize },
}

pub fn parse_scalar(input: &str) -> Result<Scalar, ParseError> {
    let mut parser = Parser {
        chars: input
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .collect(),
        at: 0,
    };
    let value = parser.expr()?;
    match parser.peek() {
        None => Ok(value),
        Some((pos, found)) => Err(ParseError::Unexpected { pos, found }),
    }
}

struct Parser {
    chars: Vec<(usize, char)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> Option<(usize, char)> {
        self.chars.get(self.at).copied()
    }

    fn bump(&mut self) -> Option<(usize, char)> {
        let c = self.peek();
        self.at += 1;
        c
    }

    fn eat(&mut self, want: char) -> bool {
        if self.peek().map(|(_, c)| c) == Some(want) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Scalar, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.plus(&self.term()?);
            } else if self.eat('-') {
                acc = acc.minus(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Scalar, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.times(&self.unary()?);
            } else if let Some((pos, '/')) = self.peek() {
                self.at += 1;
                let rhs = self.unary()?;
                acc = acc.divide(&rhs).ok_or(ParseError::DivisionByZero { pos })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar, ParseError> {
        if self.eat('-') {
            return Ok(self.unary()?.negate());
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Scalar, ParseError> {
        let base = self.atom()?;
        if let Some((pos, '^')) = self.peek() {
            self.at += 1;
            let e = self.exponent()?;
            return match base.pow(e) {
                Ok(v) => Ok(v),
                Err(_) => Err(ParseError::DivisionByZero { pos }),
            };
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<i64, ParseError> {
        let paren = self.eat('(');
        let neg = self.eat('-');
        let (pos, digits) = self.digits()?;
        if paren && !self.eat(')') {
            return Err(self.unexpected());
        }
        let e: i64 = digits.parse().map_err(|_| ParseError::Exponent { pos })?;
        if e > 4096 {
            return Err(ParseError::Exponent { pos });
        }
        Ok(if neg { -e } else { e })
    }

    fn digits(&mut self) -> Result<(usize, String), ParseError> {
        let start = match self.peek() {
            Some((pos, c)) if c.is_ascii_digit() => pos,
            _ => return Err(self.unexpected()),
        };
        let mut s = String::new();
        while let Some((_, c)) = self.peek() {
            if !c.is_ascii_digit() {
                break;
            }
            s.push(c);
            self.at += 1;
        }
        Ok((start, s))
    }

    fn atom(&mut self) -> Result<Scalar, ParseError> {
        match self.peek() {
            Some((_, 'p')) => {
                self.at += 1;
                Ok(Scalar::p())
            }
            Some((_, '(')) => {
                self.at += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.unexpected());
                }
                Ok(inner)
            }
            Some((_, c)) if c.is_ascii_digit() => {
                let (_, digits) = self.digits()?;
                let n: BigInt = digits.parse().expect("ascii digits");
                Ok(Scalar::rational(n.into()))
            }
            _ => {
                let err = self.unexpected();
                self.bump();
                Err(err)
            }
        }
    }

    fn unexpected(&self) -> ParseError {
        match self.peek() {
            Some((pos, found)) => ParseError::Unexpected { pos, found },
            None => ParseError::Eof,
        }
    }
}
