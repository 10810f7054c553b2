use std::fmt;

use crate::error::{Error, Result};

/// Nesting deeper than this is rejected rather than risking the stack.
const MAX_NESTING: usize = 512;

/// Regular expression over bytes: literals, concatenation, union and star.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Regex {
    Literal(u8),
    Concat(Box<Regex>, Box<Regex>),
    Union(Box<Regex>, Box<Regex>),
    Star(Box<Regex>),
}

impl Regex {
    pub fn concat(a: Regex, b: Regex) -> Regex {
        Regex::Concat(Box::new(a), Box::new(b))
    }

    pub fn union(a: Regex, b: Regex) -> Regex {
        Regex::Union(Box::new(a), Box::new(b))
    }

    pub fn star(a: Regex) -> Regex {
        Regex::Star(Box::new(a))
    }

    /// `m`: number of literals plus operators (concatenations included).
    pub fn size(&self) -> usize {
        match self {
            Regex::Literal(_) => 1,
            Regex::Concat(a, b) | Regex::Union(a, b) => 1 + a.size() + b.size(),
            Regex::Star(a) => 1 + a.size(),
        }
    }

    /// Whether the empty string is in the language.
    pub fn nullable(&self) -> bool {
        match self {
            Regex::Literal(_) => false,
            Regex::Concat(a, b) => a.nullable() && b.nullable(),
            Regex::Union(a, b) => a.nullable() || b.nullable(),
            Regex::Star(_) => true,
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Regex::Union(..) => 0,
            Regex::Concat(..) => 1,
            Regex::Star(_) => 2,
            Regex::Literal(_) => 3,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            f.write_str("(")?;
            self.fmt_at(f, 0)?;
            return f.write_str(")");
        }
        match self {
            Regex::Literal(b) => {
                if matches!(b, b'(' | b')' | b'|' | b'*' | b'\\') {
                    f.write_str("\\")?;
                }
                write!(f, "{}", *b as char)
            }
            // right operand one level tighter: concatenation and union parse
            // left-associatively
            Regex::Concat(a, b) => {
                a.fmt_at(f, 1)?;
                b.fmt_at(f, 2)
            }
            Regex::Union(a, b) => {
                a.fmt_at(f, 0)?;
                f.write_str("|")?;
                b.fmt_at(f, 1)
            }
            Regex::Star(a) => {
                a.fmt_at(f, 3)?;
                f.write_str("*")
            }
        }
    }
}

/// Source syntax accepted by [`parse_regex`]. Bytes outside ASCII are
/// printed as Latin-1 characters, so only ASCII literals round-trip.
impl fmt::Display for Regex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

/// Parses `|` (lowest), implicit concatenation, `*` (highest), parentheses,
/// and `\x` escapes for a literal `x`. Every other byte is a literal.
pub fn parse_regex(source: &str) -> Result<Regex> {
    let mut p = Parser {
        src: source.as_bytes(),
        pos: 0,
        depth: 0,
    };
    let r = p.union()?;
    match p.peek() {
        None => Ok(r),
        Some(b')') => Err(p.error("unmatched ')'")),
        Some(_) => Err(p.error("unexpected character")),
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    depth: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn error(&self, reason: &str) -> Error {
        Error::Syntax {
            offset: self.pos,
            reason: reason.to_string(),
        }
    }

    fn union(&mut self) -> Result<Regex> {
        let mut r = self.concat()?;
        while self.peek() == Some(b'|') {
            self.pos += 1;
            let rhs = self.concat()?;
            r = Regex::union(r, rhs);
        }
        Ok(r)
    }

    fn concat(&mut self) -> Result<Regex> {
        let mut r: Option<Regex> = None;
        while let Some(b) = self.peek() {
            if b == b'|' || b == b')' {
                break;
            }
            let rhs = self.starred()?;
            r = Some(match r {
                Some(lhs) => Regex::concat(lhs, rhs),
                None => rhs,
            });
        }
        r.ok_or_else(|| self.error("expected an expression"))
    }

    fn starred(&mut self) -> Result<Regex> {
        let mut r = self.atom()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            r = Regex::star(r);
        }
        Ok(r)
    }

    fn atom(&mut self) -> Result<Regex> {
        match self.peek() {
            Some(b'(') => {
                if self.depth == MAX_NESTING {
                    return Err(self.error("groups nested too deeply"));
                }
                self.pos += 1;
                self.depth += 1;
                let r = self.union()?;
                self.depth -= 1;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(r)
            }
            Some(b'*') => Err(self.error("'*' has nothing to repeat")),
            Some(b'\\') => match self.src.get(self.pos + 1) {
                Some(&b) => {
                    self.pos += 2;
                    Ok(Regex::Literal(b))
                }
                None => Err(self.error("trailing escape")),
            },
            Some(b) => {
                self.pos += 1;
                Ok(Regex::Literal(b))
            }
            None => Err(self.error("expected an expression")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Regex::Literal as L;

    fn offset(src: &str) -> usize {
        match parse_regex(src) {
            Err(Error::Syntax { offset, .. }) => offset,
            other => panic!("{src:?} parsed: {other:?}"),
        }
    }

    #[test]
    fn precedence() {
        assert_eq!(
            parse_regex("a|b*").unwrap(),
            Regex::union(L(b'a'), Regex::star(L(b'b')))
        );
        assert_eq!(
            parse_regex("(ab)*").unwrap(),
            Regex::star(Regex::concat(L(b'a'), L(b'b')))
        );
        assert_eq!(
            parse_regex("ab*|c").unwrap(),
            Regex::union(Regex::concat(L(b'a'), Regex::star(L(b'b'))), L(b'c'))
        );
        assert_eq!(
            parse_regex(r"\*\\").unwrap(),
            Regex::concat(L(b'*'), L(b'\\'))
        );
    }

    #[test]
    fn size_counts_operators() {
        assert_eq!(parse_regex("a").unwrap().size(), 1);
        assert_eq!(parse_regex("(a|b)c*").unwrap().size(), 6);
        assert_eq!(parse_regex("a**").unwrap().size(), 3);
    }

    #[test]
    fn error_offsets() {
        assert_eq!(offset("a("), 2);
        assert_eq!(offset("(a"), 2);
        assert_eq!(offset("a)"), 1);
        assert_eq!(offset(""), 0);
        assert_eq!(offset("|a"), 0);
        assert_eq!(offset("a|"), 2);
        assert_eq!(offset("*a"), 0);
        assert_eq!(offset("a|*"), 2);
        assert_eq!(offset("()"), 1);
        assert_eq!(offset("ab\\"), 2);
        assert!(parse_regex(&"(".repeat(10_000)).is_err());
    }

    #[test]
    fn display_round_trips() {
        for src in [
            "a|b*",
            "(ab)*",
            "a(b|c)d",
            "((a|b)|c)*",
            r"\(\|\)",
            "a**",
            "(a*)*b",
        ] {
            let r = parse_regex(src).unwrap();
            assert_eq!(parse_regex(&r.to_string()).unwrap(), r, "{src}");
        }
        let right_nested = Regex::concat(L(b'a'), Regex::concat(L(b'b'), L(b'c')));
        assert_eq!(
            parse_regex(&right_nested.to_string()).unwrap(),
            right_nested
        );
    }
}
