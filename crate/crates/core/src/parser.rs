//! Recursive-descent parser for the formula grammar:
//!
//! ```text
//! formula := iff
//! iff     := impl ('<->' iff)?
//! impl    := or ('->' impl)?
//! or      := and ('|' and)*
//! and     := unary ('&' unary)*
//! unary   := '~' unary | '(' formula ')' | atom
//! atom    := [a-z][a-z0-9_]*
//! ```
//!
//! Whitespace between tokens is insignificant. `->` and `<->` associate to
//! the right, `&` and `|` to the left.

use std::fmt;

use thiserror::Error;

use crate::formula::Formula;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("syntax error at byte {offset}: expected {expected}, found {found}")]
pub struct ParseError {
    pub offset: usize,
    pub expected: String,
    pub found: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Atom(String),
    Tilde,
    Amp,
    Pipe,
    Arrow,
    DoubleArrow,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Atom(name) => write!(f, "'{name}'"),
            Token::Tilde => write!(f, "'~'"),
            Token::Amp => write!(f, "'&'"),
            Token::Pipe => write!(f, "'|'"),
            Token::Arrow => write!(f, "'->'"),
            Token::DoubleArrow => write!(f, "'<->'"),
            Token::LParen => write!(f, "'('"),
            Token::RParen => write!(f, "')'"),
            Token::End => write!(f, "end of input"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(Token, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'~' => {
                tokens.push((Token::Tilde, i));
                i += 1;
            }
            b'&' => {
                tokens.push((Token::Amp, i));
                i += 1;
            }
            b'|' => {
                tokens.push((Token::Pipe, i));
                i += 1;
            }
            b'(' => {
                tokens.push((Token::LParen, i));
                i += 1;
            }
            b')' => {
                tokens.push((Token::RParen, i));
                i += 1;
            }
            b'-' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    tokens.push((Token::Arrow, i));
                    i += 2;
                } else {
                    return Err(ParseError {
                        offset: i,
                        expected: "'->'".into(),
                        found: format!("'{}'", &text[i..(i + 1).min(text.len())]),
                    });
                }
            }
            b'<' => {
                if bytes.get(i + 1) == Some(&b'-') && bytes.get(i + 2) == Some(&b'>') {
                    tokens.push((Token::DoubleArrow, i));
                    i += 3;
                } else {
                    return Err(ParseError {
                        offset: i,
                        expected: "'<->'".into(),
                        found: format!("'{}'", &text[i..(i + 1).min(text.len())]),
                    });
                }
            }
            b'a'..=b'z' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_lowercase()
                        || bytes[i].is_ascii_digit()
                        || bytes[i] == b'_')
                {
                    i += 1;
                }
                tokens.push((Token::Atom(text[start..i].to_owned()), start));
            }
            _ => {
                let ch = text[i..].chars().next().unwrap();
                return Err(ParseError {
                    offset: i,
                    expected: "an atom, '~', or '('".into(),
                    found: format!("'{ch}'"),
                });
            }
        }
    }
    tokens.push((Token::End, text.len()));
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &(Token, usize) {
        &self.tokens[self.pos]
    }

    fn advance(&mut self) -> (Token, usize) {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> ParseError {
        let (tok, offset) = self.peek();
        ParseError {
            offset: *offset,
            expected: expected.into(),
            found: tok.to_string(),
        }
    }

    fn iff(&mut self) -> Result<Formula, ParseError> {
        let left = self.implication()?;
        if self.peek().0 == Token::DoubleArrow {
            self.advance();
            let right = self.iff()?;
            return Ok(Formula::iff(left, right));
        }
        Ok(left)
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let left = self.or()?;
        if self.peek().0 == Token::Arrow {
            self.advance();
            let right = self.implication()?;
            return Ok(Formula::implies(left, right));
        }
        Ok(left)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.and()?;
        while self.peek().0 == Token::Pipe {
            self.advance();
            let rhs = self.and()?;
            acc = Formula::or(acc, rhs);
        }
        Ok(acc)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.unary()?;
        while self.peek().0 == Token::Amp {
            self.advance();
            let rhs = self.unary()?;
            acc = Formula::and(acc, rhs);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match &self.peek().0 {
            Token::Tilde => {
                self.advance();
                Ok(Formula::neg(self.unary()?))
            }
            Token::LParen => {
                self.advance();
                let inner = self.iff()?;
                if self.peek().0 != Token::RParen {
                    return Err(self.error("')'"));
                }
                self.advance();
                Ok(inner)
            }
            Token::Atom(_) => {
                let (tok, _) = self.advance();
                match tok {
                    Token::Atom(name) => Ok(Formula::Atom(name)),
                    _ => unreachable!(),
                }
            }
            _ => Err(self.error("an atom, '~', or '('")),
        }
    }
}

/// Parse a single formula; the whole input must be consumed.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser { tokens, pos: 0 };
    let formula = parser.iff()?;
    if parser.peek().0 != Token::End {
        return Err(parser.error("end of input"));
    }
    Ok(formula)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::Formula;

    #[test]
    fn parses_implication() {
        assert_eq!(
            parse("p -> q").unwrap(),
            Formula::implies(Formula::atom("p"), Formula::atom("q"))
        );
    }

    #[test]
    fn parses_negated_disjunction() {
        assert_eq!(
            parse("~p | ~q").unwrap(),
            Formula::or(
                Formula::neg(Formula::atom("p")),
                Formula::neg(Formula::atom("q"))
            )
        );
    }

    #[test]
    fn arrows_are_right_associative() {
        assert_eq!(
            parse("p -> q -> r").unwrap(),
            Formula::implies(
                Formula::atom("p"),
                Formula::implies(Formula::atom("q"), Formula::atom("r"))
            )
        );
    }

    #[test]
    fn and_binds_tighter_than_or() {
        assert_eq!(
            parse("p | q & r").unwrap(),
            Formula::or(
                Formula::atom("p"),
                Formula::and(Formula::atom("q"), Formula::atom("r"))
            )
        );
    }

    #[test]
    fn and_is_left_associative() {
        assert_eq!(
            parse("p & q & r").unwrap(),
            Formula::and(
                Formula::and(Formula::atom("p"), Formula::atom("q")),
                Formula::atom("r")
            )
        );
    }

    #[test]
    fn error_carries_byte_offset() {
        let err = parse("p -> ").unwrap_err();
        assert_eq!(err.offset, 5);
        assert!(err.expected.contains("atom"));
        assert_eq!(err.found, "end of input");

        let err = parse("p @ q").unwrap_err();
        assert_eq!(err.offset, 2);

        let err = parse("(p | q").unwrap_err();
        assert_eq!(err.offset, 6);
        assert_eq!(err.expected, "')'");
    }

    #[test]
    fn rejects_uppercase_atoms() {
        assert!(parse("P").is_err());
        assert!(parse("pQ").is_err());
    }

    #[test]
    fn trailing_garbage_is_an_error() {
        let err = parse("p q").unwrap_err();
        assert_eq!(err.expected, "end of input");
        assert_eq!(err.offset, 2);
    }
}
