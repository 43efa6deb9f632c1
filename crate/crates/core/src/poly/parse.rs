//! Reader for the shared polynomial text grammar:
//! `3/2*x_1^2*x_2 - g_1_2`. Whitespace is insignificant.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// A parsed term: coefficient and `(variable, exponent)` factors, in input
/// order and possibly repeated.
pub(crate) type RawTerm<V> = (Rational, Vec<(V, u32)>);

pub(crate) fn parse_terms<V>(input: &str, resolve: impl Fn(&str) -> Option<V>) -> Result<Vec<RawTerm<V>>> {
    let mut cur = Cursor { src: input.as_bytes(), pos: 0 };
    let mut terms = Vec::new();
    cur.skip_ws();
    if cur.at_end() {
        return Err(cur.error("empty polynomial"));
    }
    let mut negative = match cur.peek() {
        Some(b'-') => {
            cur.pos += 1;
            true
        }
        Some(b'+') => {
            cur.pos += 1;
            false
        }
        _ => false,
    };
    loop {
        let (mut coeff, factors) = parse_term(&mut cur, &resolve)?;
        if negative {
            coeff = -coeff;
        }
        terms.push((coeff, factors));
        cur.skip_ws();
        match cur.peek() {
            None => break,
            Some(b'+') => negative = false,
            Some(b'-') => negative = true,
            Some(_) => return Err(cur.error("expected '+' or '-'")),
        }
        cur.pos += 1;
    }
    Ok(terms)
}

fn parse_term<V>(cur: &mut Cursor<'_>, resolve: &impl Fn(&str) -> Option<V>) -> Result<RawTerm<V>> {
    let mut coeff = Rational::one();
    let mut factors = Vec::new();
    loop {
        cur.skip_ws();
        match cur.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = cur.integer()?;
                cur.skip_ws();
                let value = if cur.peek() == Some(b'/') {
                    cur.pos += 1;
                    cur.skip_ws();
                    let den = cur.integer()?;
                    if den.is_zero() {
                        return Err(cur.error("zero denominator"));
                    }
                    Rational::new(num, den)
                } else {
                    Rational::from_integer(num)
                };
                coeff *= value;
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = cur.pos;
                let name = cur.ident();
                let var = resolve(name).ok_or_else(|| Error::Parse {
                    position: start,
                    message: format!("unknown variable `{name}`"),
                })?;
                cur.skip_ws();
                let exp = if cur.peek() == Some(b'^') {
                    cur.pos += 1;
                    cur.skip_ws();
                    let at = cur.pos;
                    let e = cur.integer()?;
                    u32::try_from(e).map_err(|_| Error::Parse { position: at, message: "exponent out of range".into() })?
                } else {
                    1
                };
                factors.push((var, exp));
            }
            _ => return Err(cur.error("expected a coefficient or a variable")),
        }
        cur.skip_ws();
        if cur.peek() == Some(b'*') {
            cur.pos += 1;
        } else {
            return Ok((coeff, factors));
        }
    }
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("validated digits"))
    }

    fn ident(&mut self) -> &str {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_') {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii identifier")
    }

    fn error(&self, message: &str) -> Error {
        Error::Parse { position: self.pos, message: message.into() }
    }
}
