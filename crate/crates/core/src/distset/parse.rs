//! Recursive-descent parser for the distance-set grammar.
//!
//! ```text
//! set      := distance ("," distance)*
//! distance := term (("+" | "-") term)*
//! term     := rational | rational "s" | "s"
//! rational := ["-"] digits ["/" digits]
//! ```
//!
//! Whitespace is ignored everywhere. `s` stands for √m.

use num_bigint::BigInt;
use num_traits::Zero;

use super::DistError;
use crate::exact::{QuadExt, Radicand, Rational};

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { src: text.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error(&self, message: impl Into<String>) -> DistError {
        DistError::Syntax { position: self.pos, message: message.into() }
    }

    fn digits(&mut self) -> Result<BigInt, DistError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("ascii digits parse"))
    }

    fn rational(&mut self) -> Result<Rational, DistError> {
        let negative = self.eat(b'-');
        let num = self.digits()?;
        let den = if self.eat(b'/') {
            let at = self.pos;
            let d = self.digits()?;
            if d.is_zero() {
                return Err(DistError::Syntax { position: at, message: "zero denominator".into() });
            }
            d
        } else {
            BigInt::from(1)
        };
        let r = Rational::new(num, den);
        Ok(if negative { -r } else { r })
    }

    fn term(&mut self, m: Radicand) -> Result<QuadExt, DistError> {
        if self.eat(b's') {
            return Ok(QuadExt::root(m));
        }
        match self.peek() {
            Some(b'-') | Some(b'0'..=b'9') => {}
            Some(c) => return Err(self.error(format!("unexpected character '{}'", c as char))),
            None => return Err(self.error("unexpected end of input")),
        }
        let r = self.rational()?;
        if self.eat(b's') {
            Ok(QuadExt::new(Rational::zero(), r, m))
        } else {
            Ok(QuadExt::from_rational(r, m))
        }
    }

    fn distance(&mut self, m: Radicand) -> Result<QuadExt, DistError> {
        let mut acc = self.term(m)?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term(m)?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term(m)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }
}

/// Parses one `distance` production. Used for slab breakpoints, which may be
/// zero or negative.
pub fn parse_expression(text: &str, m: Radicand) -> Result<QuadExt, DistError> {
    let mut cur = Cursor::new(text);
    let v = cur.distance(m)?;
    if !cur.at_end() {
        return Err(cur.error("trailing input"));
    }
    Ok(v)
}

/// Parses a comma-separated list of expressions without any sign check.
pub fn parse_list(text: &str, m: Radicand) -> Result<Vec<QuadExt>, DistError> {
    let mut cur = Cursor::new(text);
    let mut out = vec![cur.distance(m)?];
    while cur.eat(b',') {
        out.push(cur.distance(m)?);
    }
    if !cur.at_end() {
        return Err(cur.error("expected ',' or end of input"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m2() -> Radicand {
        Radicand::TWO
    }

    #[test]
    fn terms_and_signs() {
        let v = parse_list("1, 2, s, 2s, 1+s", m2()).unwrap();
        let want: Vec<_> = [(1, 0), (2, 0), (0, 1), (0, 2), (1, 1)]
            .iter()
            .map(|&(a, b)| QuadExt::from_ints(a, b, m2()))
            .collect();
        assert_eq!(v, want);
        assert_eq!(parse_expression("1+s-1-s", m2()).unwrap(), QuadExt::zero(m2()));
        assert_eq!(parse_expression("1--1", m2()).unwrap(), QuadExt::from_int(2, m2()));
        assert_eq!(parse_expression(" - 3 / 4 s ", m2()).unwrap().to_string(), "-3/4s");
    }

    #[test]
    fn syntax_errors_report_positions() {
        match parse_list("1, x", m2()) {
            Err(DistError::Syntax { position, .. }) => assert_eq!(position, 3),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_list("1,", m2()), Err(DistError::Syntax { position: 2, .. })));
        assert!(matches!(parse_list("1/0", m2()), Err(DistError::Syntax { position: 2, .. })));
        assert!(matches!(parse_list("1 2", m2()), Err(DistError::Syntax { position: 2, .. })));
        assert!(matches!(parse_list("", m2()), Err(DistError::Syntax { position: 0, .. })));
        assert!(matches!(parse_list("1.5", m2()), Err(DistError::Syntax { .. })));
        assert!(matches!(parse_expression("-s", m2()), Err(DistError::Syntax { .. })));
    }
}
