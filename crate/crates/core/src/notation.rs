//! Text notation for positions.
//!
//! ```text
//! position := "empty" | term ("+" term)*
//! term     := [count "*"] surface
//! surface  := ("o" | "n") integer
//! count    := integer >= 1
//! ```
//!
//! Whitespace between tokens is ignored. Canonical output has no
//! whitespace, uses `k*` for repeated components and canonical order.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::surface::{Orientability, Position, Surface};
use crate::Genus;

/// Largest number of components a parsed position may expand to.
pub const MAX_COMPONENTS: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at offset {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    fn new(offset: usize, message: impl Into<String>) -> Self {
        ParseError {
            offset,
            message: message.into(),
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self, what: &str) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(ParseError::new(start, format!("expected {what}")));
        }
        // digits only, so the slice is valid UTF-8
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        digits
            .parse::<u64>()
            .map_err(|_| ParseError::new(start, format!("{what} out of range")))
    }

    fn surface(&mut self) -> Result<Surface, ParseError> {
        self.skip_ws();
        let at = self.pos;
        let kind = match self.peek() {
            Some(c) => Orientability::from_letter(c as char).ok_or_else(|| {
                ParseError::new(at, format!("unknown surface kind {:?}", c as char))
            })?,
            None => return Err(ParseError::new(at, "expected surface")),
        };
        self.pos += 1;
        if !matches!(self.peek(), Some(b'0'..=b'9')) {
            return Err(ParseError::new(self.pos, "missing genus"));
        }
        let genus: Genus = self.integer("genus")?;
        Ok(Surface::new(kind, genus))
    }

    fn term(&mut self, out: &mut Vec<Surface>) -> Result<(), ParseError> {
        self.skip_ws();
        let at = self.pos;
        let count = if matches!(self.peek(), Some(b'0'..=b'9')) {
            let count = self.integer("count")?;
            if !self.eat(b'*') {
                return Err(ParseError::new(self.pos, "expected '*' after count"));
            }
            if count == 0 {
                return Err(ParseError::new(at, "count must be at least 1"));
            }
            count
        } else {
            1
        };
        let surface = self.surface()?;
        if count > (MAX_COMPONENTS - out.len()) as u64 {
            return Err(ParseError::new(
                at,
                format!("position has more than {MAX_COMPONENTS} components"),
            ));
        }
        out.extend(std::iter::repeat_n(surface, count as usize));
        Ok(())
    }

    fn position(&mut self) -> Result<Position, ParseError> {
        self.skip_ws();
        if self.src[self.pos..].starts_with(b"empty") {
            self.pos += "empty".len();
        } else {
            let mut surfaces = Vec::new();
            self.term(&mut surfaces)?;
            while self.eat(b'+') {
                self.term(&mut surfaces)?;
            }
            self.skip_ws();
            if self.pos != self.src.len() {
                return Err(ParseError::new(self.pos, "expected '+' or end of input"));
            }
            return Ok(Position::new(surfaces));
        }
        self.skip_ws();
        if self.pos != self.src.len() {
            return Err(ParseError::new(self.pos, "unexpected input after 'empty'"));
        }
        Ok(Position::empty())
    }
}

pub fn parse_position(text: &str) -> Result<Position, ParseError> {
    Parser {
        src: text.as_bytes(),
        pos: 0,
    }
    .position()
}

pub fn format_position(p: &Position) -> String {
    p.to_string()
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("empty");
        }
        for (i, (s, n)) in self.counts().into_iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            if n > 1 {
                write!(f, "{n}*")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for Position {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_position(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn o(g: Genus) -> Surface {
        Surface::orientable(g)
    }

    fn n(g: Genus) -> Surface {
        Surface::nonorientable(g)
    }

    #[test]
    fn parse_examples() {
        assert_eq!(
            parse_position("o3+n2").unwrap(),
            Position::new([o(3), n(2)])
        );
        assert_eq!(
            parse_position("2*n1 + o0").unwrap(),
            Position::new([n(1), n(1)])
        );
        assert_eq!(parse_position("empty").unwrap(), Position::empty());
        assert_eq!(parse_position("  empty ").unwrap(), Position::empty());
        assert_eq!(parse_position("n0").unwrap(), Position::empty());
        assert_eq!(
            parse_position(" 3 * o2 +n1").unwrap(),
            Position::new([o(2), o(2), o(2), n(1)])
        );
    }

    #[test]
    fn format_examples() {
        assert_eq!(format_position(&Position::new([o(1), n(2)])), "o1+n2");
        assert_eq!(format_position(&Position::empty()), "empty");
        assert_eq!(format_position(&Position::new([n(1), n(1)])), "2*n1");
        assert_eq!(
            format_position(&Position::new([n(4), o(1), o(1)])),
            "2*o1+n4"
        );
    }

    #[test]
    fn parse_errors() {
        let err = parse_position("x3").unwrap_err();
        assert_eq!(err.offset, 0);
        assert!(err.message.contains("unknown surface kind"));

        let err = parse_position("o3+n").unwrap_err();
        assert_eq!(err.offset, 4);
        assert_eq!(err.message, "missing genus");

        let err = parse_position("0*n1").unwrap_err();
        assert_eq!(err.message, "count must be at least 1");

        let err = parse_position("2n1").unwrap_err();
        assert_eq!(err.offset, 1);

        assert!(parse_position("").is_err());
        assert!(parse_position("o1+").is_err());
        assert!(parse_position("o1 n2").is_err());
        assert!(parse_position("empty+o1").is_err());
        assert!(parse_position("o-1").is_err());
        assert!(parse_position("o99999999999999999999999").is_err());
        assert!(parse_position("5000*o1").is_err());
    }

    fn surface_strategy() -> impl Strategy<Value = Surface> {
        (any::<bool>(), 0u64..=20).prop_map(|(orientable, g)| if orientable { o(g) } else { n(g) })
    }

    proptest! {
        #[test]
        fn round_trip(surfaces in proptest::collection::vec(surface_strategy(), 0..=5)) {
            let p = Position::new(surfaces);
            prop_assert!(p.components().iter().all(|s| !s.is_sphere()));
            prop_assert_eq!(parse_position(&format_position(&p)).unwrap(), p);
        }
    }
}
