//! Series literals such as `3*t^-2 + t + 1/2*t^3`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::QSeries;
use crate::error::{GwError, Result};

struct Cursor {
    chars: Vec<char>,
    pos: usize,
}

impl Cursor {
    fn new(text: &str) -> Self {
        Cursor {
            chars: text.chars().collect(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error(&self, message: &str, expected: &[&str]) -> GwError {
        let before: String = self.chars[..self.pos.min(self.chars.len())]
            .iter()
            .collect();
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        GwError::Parse {
            line,
            column,
            message: message.to_string(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer", &["integer"]));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        Ok(digits.parse().expect("ascii digits"))
    }

    fn signed_exponent(&mut self) -> Result<i64> {
        let negative = self.eat('-');
        let value = self.integer()?;
        let value: i64 = value
            .try_into()
            .map_err(|_| self.error("exponent out of range", &["small integer"]))?;
        Ok(if negative { -value } else { value })
    }

    /// `[coef] ['*'] ['t' ['^' exp]]`, at least one of coefficient or `t`.
    fn term(&mut self) -> Result<(i64, BigRational)> {
        let mut coef = BigRational::one();
        let mut have_coef = false;
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let num = self.integer()?;
            let den = if self.eat('/') {
                self.integer()?
            } else {
                BigInt::one()
            };
            if den == BigInt::from(0) {
                return Err(self.error("zero denominator", &["nonzero integer"]));
            }
            coef = BigRational::new(num, den);
            have_coef = true;
            if self.eat('*') && self.peek() != Some('t') {
                return Err(self.error("expected the variable", &["t"]));
            }
        }
        if self.eat('t') {
            let e = if self.eat('^') {
                self.signed_exponent()?
            } else {
                1
            };
            return Ok((e, coef));
        }
        if !have_coef {
            return Err(self.error("expected a term", &["integer", "rational", "t"]));
        }
        Ok((0, coef))
    }
}

/// Parses a finite sum of rational monomials in `t`, known to `precision`
/// terms past its valuation. A trailing `O(t^k)` caps the known terms
/// below `t^k`, so printed series read back unchanged.
pub fn parse_series(text: &str, precision: usize) -> Result<QSeries> {
    let mut cur = Cursor::new(text);
    let mut terms = Vec::new();
    let mut cap = None;
    let mut negative = cur.eat('-');
    if !negative {
        cur.eat('+');
    }
    loop {
        if !negative && cur.eat('O') {
            if !(cur.eat('(') && cur.eat('t') && cur.eat('^')) {
                return Err(cur.error("malformed order term", &["O(t^k)"]));
            }
            cap = Some(cur.signed_exponent()?);
            if !cur.eat(')') {
                return Err(cur.error("unclosed order term", &[")"]));
            }
            if cur.peek().is_some() {
                return Err(cur.error("order term must come last", &["end of input"]));
            }
            break;
        }
        let (e, c) = cur.term()?;
        terms.push((e, if negative { -c } else { c }));
        match cur.peek() {
            None => break,
            Some('+') => {
                cur.pos += 1;
                negative = false;
            }
            Some('-') => {
                cur.pos += 1;
                negative = true;
            }
            Some(_) => return Err(cur.error("unexpected character", &["+", "-", "end of input"])),
        }
    }
    let series = QSeries::from_terms(&terms, precision);
    Ok(match cap {
        None => series,
        Some(k) if series.is_zero() => QSeries::zero(k.min(series.absolute_precision())),
        Some(k) => {
            let v = series.valuation()?;
            if k <= v {
                return Err(cur.error("order term below the leading term", &["larger exponent"]));
            }
            series.truncate((k - v) as usize)
        }
    })
}
