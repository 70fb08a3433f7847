//! Monomial-set text format.
//!
//! ```text
//! set      := monomial (',' monomial)*
//! monomial := factor (('*' | ws)? factor)*
//! factor   := 'x' '_'? integer ('^' integer)?
//! ```
//!
//! Variables are `x1..xn`; positions in errors are 0-based character offsets.

use crate::error::{Error, Result};
use crate::monomial::MonomialSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    Inline,
    File,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedInput {
    pub n: usize,
    /// Source text of each monomial, trimmed.
    pub monomial_texts: Vec<String>,
    pub origin: Origin,
    pub set: MonomialSet,
}

/// Parses `text`; `n` defaults to the largest variable index used.
pub fn parse_monomials(text: &str, n: Option<usize>) -> Result<MonomialSet> {
    Ok(parse_input(text, n, Origin::Inline)?.set)
}

pub fn parse_input(text: &str, n: Option<usize>, origin: Origin) -> Result<ParsedInput> {
    let mut parser = Parser {
        chars: text.chars().collect(),
        pos: 0,
    };
    let factors = parser.set()?;

    let max_index = factors
        .iter()
        .flat_map(|m| m.factors.iter().map(|f| f.index))
        .max()
        .unwrap_or(0);
    let n = match n {
        Some(n) => {
            if let Some(f) = factors
                .iter()
                .flat_map(|m| m.factors.iter())
                .find(|f| f.index > n)
            {
                return Err(Error::IndexOutOfRange {
                    position: f.position,
                    index: f.index,
                    n,
                });
            }
            n
        }
        None => max_index,
    };

    let mut vectors = Vec::with_capacity(factors.len());
    for m in &factors {
        let mut e = vec![0u32; n];
        for f in &m.factors {
            e[f.index - 1] = e[f.index - 1]
                .checked_add(f.exponent)
                .ok_or(Error::ExponentOverflow)?;
        }
        vectors.push(e);
    }
    let set = MonomialSet::new(n, vectors)?;
    Ok(ParsedInput {
        n,
        monomial_texts: factors
            .iter()
            .map(|m| parser.chars[m.span.0..m.span.1].iter().collect::<String>())
            .collect(),
        origin,
        set,
    })
}

struct Factor {
    index: usize,
    exponent: u32,
    position: usize,
}

struct ParsedMonomial {
    factors: Vec<Factor>,
    span: (usize, usize),
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn error<T>(&self, position: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            position,
            message: message.into(),
        })
    }

    fn set(&mut self) -> Result<Vec<ParsedMonomial>> {
        let mut out = vec![self.monomial()?];
        loop {
            self.skip_ws();
            match self.peek() {
                None => return Ok(out),
                Some(',') => {
                    self.pos += 1;
                    out.push(self.monomial()?);
                }
                Some(c) => return self.error(self.pos, format!("unexpected '{}'", c)),
            }
        }
    }

    fn monomial(&mut self) -> Result<ParsedMonomial> {
        self.skip_ws();
        let start = self.pos;
        let mut factors = vec![self.factor()?];
        loop {
            let before = self.pos;
            self.skip_ws();
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    self.skip_ws();
                    factors.push(self.factor()?);
                }
                Some('x') => factors.push(self.factor()?),
                _ => {
                    self.pos = before;
                    return Ok(ParsedMonomial {
                        factors,
                        span: (start, before),
                    });
                }
            }
        }
    }

    fn factor(&mut self) -> Result<Factor> {
        let position = self.pos;
        match self.peek() {
            Some('x') => self.pos += 1,
            Some(c) => {
                return self.error(position, format!("expected variable 'x', found '{}'", c))
            }
            None => return self.error(position, "expected variable 'x', found end of input"),
        }
        if self.peek() == Some('_') {
            self.pos += 1;
        }
        let index_pos = self.pos;
        let index = self.integer("variable index")?;
        if index == 0 {
            return self.error(index_pos, "variable indices start at 1");
        }
        let index = usize::try_from(index).or_else(|_| self.error(index_pos, "index too large"))?;
        let exponent = if self.peek() == Some('^') {
            self.pos += 1;
            let exp_pos = self.pos;
            let e = self.integer("exponent")?;
            u32::try_from(e).or_else(|_| self.error(exp_pos, "exponent too large"))?
        } else {
            1
        };
        Ok(Factor {
            index,
            exponent,
            position,
        })
    }

    fn integer(&mut self, what: &str) -> Result<u64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error(start, format!("expected {}", what));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits
            .parse()
            .or_else(|_| self.error(start, format!("{} too large", what)))
    }
}
