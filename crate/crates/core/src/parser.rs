//! Expression parser for bivariate polynomials.
//!
//! Grammar (whitespace is ignored between tokens):
//!
//! ```text
//! poly  := '-'? term (('+'|'-') term)*
//! term  := coeff ('*'? mono)* | mono ('*'? mono)*
//! mono  := ('x'|'y') ('^' uint)?
//! coeff := int ('/' uint)?
//! ```
//!
//! The printer ([`BiPoly`]'s `Display`) emits terms in descending lex order
//! with explicit `^` and no `*`, so parsing its output round-trips exactly.

use num_bigint::{BigInt, BigUint};

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::{BiPoly, Cap};
use crate::scalar::{FieldTag, Scalar};

pub fn parse_poly(input: &str, field: FieldTag, cap: Cap) -> Result<BiPoly> {
    let mut p = Parser {
        s: input.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    let mut acc = BiPoly::zero(field, cap);
    let mut negate = p.eat(b'-');
    loop {
        let (coeff, mono) = p.term(field)?;
        let coeff = if negate { coeff.neg() } else { coeff };
        acc.add_assign_term(&mono, &coeff);
        p.skip_ws();
        match p.peek() {
            None => break,
            Some(b'+') => {
                p.pos += 1;
                negate = false;
            }
            Some(b'-') => {
                p.pos += 1;
                negate = true;
            }
            Some(c) => {
                return Err(p.err(format!("unexpected character `{}`", c as char)));
            }
        }
        p.skip_ws();
    }
    Ok(acc)
}

/// Parses a list of polynomials separated by `sep` (`,` for monomial
/// generator lists, `;` for the CLI's `--gens`).
pub fn parse_poly_list(input: &str, sep: char, field: FieldTag, cap: Cap) -> Result<Vec<BiPoly>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for chunk in input.split(sep) {
        let p = parse_poly(chunk, field, cap).map_err(|e| match e {
            Error::Parse { pos, msg } => Error::Parse {
                pos: pos + offset,
                msg,
            },
            other => other,
        })?;
        out.push(p);
        offset += chunk.len() + 1;
    }
    Ok(out)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: String) -> Error {
        Error::Parse { pos: self.pos, msg }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    /// One term: returns its coefficient and combined monomial.
    fn term(&mut self, field: FieldTag) -> Result<(Scalar, Monomial)> {
        self.skip_ws();
        let coeff = match self.peek() {
            Some(c) if c.is_ascii_digit() => self.coeff(field)?,
            Some(b'x') | Some(b'y') => Scalar::one(field),
            Some(c) => {
                return Err(self.err(format!(
                    "expected a coefficient or variable, got `{}`",
                    c as char
                )))
            }
            None => return Err(self.err("expected a term".into())),
        };
        let mut mono = Monomial::ONE;
        loop {
            self.skip_ws();
            let explicit_star = self.eat(b'*');
            if explicit_star {
                self.skip_ws();
            }
            match self.peek() {
                Some(b'x') | Some(b'y') => {
                    let m = self.mono()?;
                    mono = checked_mul(&mono, &m).ok_or_else(|| {
                        self.err("exponent exceeds the supported range".into())
                    })?;
                }
                _ if explicit_star => {
                    return Err(self.err("expected a variable after `*`".into()));
                }
                _ => break,
            }
        }
        Ok((coeff, mono))
    }

    fn mono(&mut self) -> Result<Monomial> {
        let var = match self.peek() {
            Some(b'x') => b'x',
            Some(b'y') => b'y',
            _ => return Err(self.err("expected `x` or `y`".into())),
        };
        self.pos += 1;
        self.skip_ws();
        let exp = if self.eat(b'^') {
            self.skip_ws();
            let n = self.uint()?;
            u32::try_from(&n)
                .map_err(|_| self.err("exponent exceeds the supported range".into()))?
        } else {
            1
        };
        Ok(match var {
            b'x' => Monomial::new(exp, 0),
            _ => Monomial::new(0, exp),
        })
    }

    fn coeff(&mut self, field: FieldTag) -> Result<Scalar> {
        let num = self.uint()?;
        self.skip_ws();
        let den = if self.eat(b'/') {
            self.skip_ws();
            self.uint()?
        } else {
            BigUint::from(1u32)
        };
        Scalar::from_ratio(field, BigInt::from(num), den)
    }

    fn uint(&mut self) -> Result<BigUint> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected digits".into()));
        }
        let digits = std::str::from_utf8(&self.s[start..self.pos])
            .expect("ascii digits are valid utf-8");
        digits
            .parse()
            .map_err(|e| self.err(format!("bad integer literal: {e}")))
    }
}

fn checked_mul(a: &Monomial, b: &Monomial) -> Option<Monomial> {
    Some(Monomial {
        a: a.a.checked_add(b.a)?,
        b: a.b.checked_add(b.b)?,
    })
}
