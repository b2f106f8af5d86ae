//! Expression parser.
//!
//! ```text
//! element   := ['+'|'-'] term (('+'|'-') term)*
//! term      := [integer] factor*            (at least one of the two)
//! factor    := generator | '(' element ')' ['^' integer]
//! generator := ('Sq' | 'P') ['^'] integer | 'b' | 'β'
//! ```
//!
//! Juxtaposition is multiplication in the free algebra; nothing is
//! normalized. `Sq^0` and `P^0` denote the unit. At p = 2 the letter `b`
//! is read as Sq^1.

use super::{Generator, SteenrodElement};
use crate::error::{Error, Result};
use crate::prime::Prime;

pub fn parse_expression(text: &str, p: Prime) -> Result<SteenrodElement> {
    let mut parser = Parser { chars: text.char_indices().collect(), pos: 0, len: text.len(), p };
    let e = parser.element()?;
    parser.skip_ws();
    if let Some(&(at, c)) = parser.peek_raw() {
        return Err(syntax(at, format!("unexpected '{c}'")));
    }
    Ok(e)
}

fn syntax(position: usize, message: impl Into<String>) -> Error {
    Error::Syntax { position, message: message.into() }
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    len: usize,
    p: Prime,
}

impl Parser {
    fn peek_raw(&self) -> Option<&(usize, char)> {
        self.chars.get(self.pos)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.len, |&(i, _)| i)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek_raw(), Some((_, c)) if c.is_whitespace() || *c == '*' || *c == '·') {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw().map(|&(_, c)| c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sign(&mut self) -> Option<bool> {
        match self.peek() {
            Some('+') => {
                self.pos += 1;
                Some(false)
            }
            Some('-') | Some('−') => {
                self.pos += 1;
                Some(true)
            }
            _ => None,
        }
    }

    fn element(&mut self) -> Result<SteenrodElement> {
        let mut acc = SteenrodElement::zero(self.p);
        let mut negative = self.sign().unwrap_or(false);
        loop {
            let t = self.term()?;
            acc = if negative { acc.sub(&t)? } else { acc.add(&t)? };
            match self.sign() {
                Some(neg) => negative = neg,
                None => return Ok(acc),
            }
        }
    }

    fn integer(&mut self) -> Result<Option<u64>> {
        self.skip_ws();
        let start = self.pos;
        let at = self.offset();
        let mut value: u64 = 0;
        while let Some(&(_, c)) = self.peek_raw() {
            let Some(d) = c.to_digit(10) else { break };
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(d as u64))
                .ok_or_else(|| syntax(at, "integer too large"))?;
            self.pos += 1;
        }
        Ok((self.pos > start).then_some(value))
    }

    fn term(&mut self) -> Result<SteenrodElement> {
        self.skip_ws();
        let at = self.offset();
        let coeff = self.integer()?;
        let mut acc = SteenrodElement::unit(self.p);
        if let Some(c) = coeff {
            acc = acc.scale((c % self.p.value() as u64) as u32);
        }
        let mut factors = 0;
        while let Some(f) = self.factor()? {
            acc = acc.multiply(&f)?;
            factors += 1;
        }
        if coeff.is_none() && factors == 0 {
            return Err(match self.peek_raw() {
                Some(&(i, c)) => syntax(i, format!("expected a term, found '{c}'")),
                None => syntax(at, "expected a term, found end of input"),
            });
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Option<SteenrodElement>> {
        let at = self.offset();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.element()?;
                if !self.eat(')') {
                    return Err(syntax(self.offset(), "expected ')'"));
                }
                if self.eat('^') {
                    let e_at = self.offset();
                    let n = self.integer()?.ok_or_else(|| syntax(e_at, "expected an exponent"))?;
                    let n = u32::try_from(n).map_err(|_| syntax(e_at, "exponent too large"))?;
                    return Ok(Some(inner.pow(n)));
                }
                Ok(Some(inner))
            }
            Some('b') | Some('β') => {
                self.pos += 1;
                Ok(Some(SteenrodElement::generator(self.p, Generator::bockstein(self.p))?))
            }
            Some('S') => {
                self.pos += 1;
                if self.peek_raw().map(|&(_, c)| c) != Some('q') {
                    return Err(syntax(at, "expected 'Sq'"));
                }
                self.pos += 1;
                let i = self.index(at)?;
                if self.p.is_odd() {
                    return Err(Error::GeneratorPrime { generator: format!("Sq^{i}"), prime: self.p });
                }
                self.generator_or_unit(Generator::Sq(i), i)
            }
            Some('P') => {
                self.pos += 1;
                let i = self.index(at)?;
                if !self.p.is_odd() {
                    return Err(Error::GeneratorPrime { generator: format!("P^{i}"), prime: self.p });
                }
                self.generator_or_unit(Generator::P(i), i)
            }
            _ => Ok(None),
        }
    }

    fn index(&mut self, at: usize) -> Result<u32> {
        self.eat('^');
        let i_at = self.offset();
        let i = self.integer()?.ok_or_else(|| syntax(i_at, "expected an index"))?;
        u32::try_from(i).map_err(|_| syntax(at, "index too large"))
    }

    fn generator_or_unit(&self, g: Generator, i: u32) -> Result<Option<SteenrodElement>> {
        if i == 0 {
            Ok(Some(SteenrodElement::unit(self.p)))
        } else {
            Ok(Some(SteenrodElement::generator(self.p, g)?))
        }
    }
}
