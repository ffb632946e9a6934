//! Hand-rolled recursive-descent parser for the LTL surface syntax.
//!
//! Precedence, tightest first: unary `! G F X`, then `U`/`R` (right
//! associative), `&`, `|`, `->` (right associative), `<->`. Parentheses
//! override. `true`/`false` are constants; every other identifier must be
//! declared in the signal table.

use thiserror::Error;

use super::Formula;
use crate::signal::SignalTable;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("undeclared signal `{name}` at byte {pos}")]
    UndeclaredSignal { pos: usize, name: String },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    True,
    False,
    Not,
    And,
    Or,
    Implies,
    Iff,
    NextOp,
    Eventually,
    Always,
    Until,
    Release,
    LParen,
    RParen,
    Eof,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn next(&mut self) -> Result<(Tok, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.pos >= self.src.len() {
            return Ok((Tok::Eof, start));
        }
        let c = self.src[self.pos];
        let tok = match c {
            b'(' => {
                self.pos += 1;
                Tok::LParen
            }
            b')' => {
                self.pos += 1;
                Tok::RParen
            }
            b'!' => {
                self.pos += 1;
                Tok::Not
            }
            b'&' => {
                self.pos += 1;
                // tolerate && as well
                if self.peek_byte() == Some(b'&') {
                    self.pos += 1;
                }
                Tok::And
            }
            b'|' => {
                self.pos += 1;
                if self.peek_byte() == Some(b'|') {
                    self.pos += 1;
                }
                Tok::Or
            }
            b'-' => {
                self.pos += 1;
                if self.peek_byte() == Some(b'>') {
                    self.pos += 1;
                    Tok::Implies
                } else {
                    return Err(ParseError::Syntax {
                        pos: start,
                        msg: "expected `->`".into(),
                    });
                }
            }
            b'<' => {
                self.pos += 1;
                if self.peek_byte() == Some(b'-') {
                    self.pos += 1;
                    if self.peek_byte() == Some(b'>') {
                        self.pos += 1;
                        Tok::Iff
                    } else {
                        return Err(ParseError::Syntax {
                            pos: start,
                            msg: "expected `<->`".into(),
                        });
                    }
                } else {
                    return Err(ParseError::Syntax {
                        pos: start,
                        msg: "expected `<->`".into(),
                    });
                }
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let mut end = self.pos;
                while end < self.src.len()
                    && (self.src[end].is_ascii_alphanumeric() || self.src[end] == b'_')
                {
                    end += 1;
                }
                let word = std::str::from_utf8(&self.src[self.pos..end]).unwrap();
                self.pos = end;
                match word {
                    "true" => Tok::True,
                    "false" => Tok::False,
                    "G" => Tok::Always,
                    "F" => Tok::Eventually,
                    "X" => Tok::NextOp,
                    "U" => Tok::Until,
                    "R" => Tok::Release,
                    other => Tok::Ident(other.to_string()),
                }
            }
            other => {
                return Err(ParseError::Syntax {
                    pos: start,
                    msg: format!("unexpected character `{}`", other as char),
                })
            }
        };
        Ok((tok, start))
    }

    fn peek_byte(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    table: &'a SignalTable,
    current: (Tok, usize),
}

/// Parses `text` against the declared signal universe.
pub fn parse(text: &str, table: &SignalTable) -> Result<Formula, ParseError> {
    let mut lexer = Lexer::new(text);
    let current = lexer.next()?;
    let mut p = Parser {
        lexer,
        table,
        current,
    };
    let f = p.parse_iff()?;
    match p.current.0 {
        Tok::Eof => Ok(f),
        ref t => Err(ParseError::Syntax {
            pos: p.current.1,
            msg: format!("unexpected trailing token {t:?}"),
        }),
    }
}

impl<'a> Parser<'a> {
    fn advance(&mut self) -> Result<(), ParseError> {
        self.current = self.lexer.next()?;
        Ok(())
    }

    // <-> is right associative, lowest precedence
    fn parse_iff(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.parse_implies()?;
        if self.current.0 == Tok::Iff {
            self.advance()?;
            let rhs = self.parse_iff()?;
            Ok(Formula::iff(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    // -> is right associative
    fn parse_implies(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.parse_or()?;
        if self.current.0 == Tok::Implies {
            self.advance()?;
            let rhs = self.parse_implies()?;
            Ok(Formula::implies(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn parse_or(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.parse_and()?;
        while self.current.0 == Tok::Or {
            self.advance()?;
            let rhs = self.parse_and()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn parse_and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.parse_until()?;
        while self.current.0 == Tok::And {
            self.advance()?;
            let rhs = self.parse_until()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    // U and R are right associative and bind tighter than &
    fn parse_until(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.parse_unary()?;
        match self.current.0 {
            Tok::Until => {
                self.advance()?;
                let rhs = self.parse_until()?;
                Ok(Formula::until(lhs, rhs))
            }
            Tok::Release => {
                self.advance()?;
                let rhs = self.parse_until()?;
                Ok(Formula::release(lhs, rhs))
            }
            _ => Ok(lhs),
        }
    }

    fn parse_unary(&mut self) -> Result<Formula, ParseError> {
        match self.current.0.clone() {
            Tok::Not => {
                self.advance()?;
                Ok(Formula::not(self.parse_unary()?))
            }
            Tok::NextOp => {
                self.advance()?;
                Ok(Formula::next(self.parse_unary()?))
            }
            Tok::Eventually => {
                self.advance()?;
                Ok(Formula::eventually(self.parse_unary()?))
            }
            Tok::Always => {
                self.advance()?;
                Ok(Formula::always(self.parse_unary()?))
            }
            _ => self.parse_primary(),
        }
    }

    fn parse_primary(&mut self) -> Result<Formula, ParseError> {
        let (tok, pos) = self.current.clone();
        match tok {
            Tok::True => {
                self.advance()?;
                Ok(Formula::True)
            }
            Tok::False => {
                self.advance()?;
                Ok(Formula::False)
            }
            Tok::Ident(name) => {
                let id = self
                    .table
                    .lookup(&name)
                    .ok_or(ParseError::UndeclaredSignal { pos, name })?;
                self.advance()?;
                Ok(Formula::Atom(id))
            }
            Tok::LParen => {
                self.advance()?;
                let f = self.parse_iff()?;
                if self.current.0 != Tok::RParen {
                    return Err(ParseError::Syntax {
                        pos: self.current.1,
                        msg: "expected `)`".into(),
                    });
                }
                self.advance()?;
                Ok(f)
            }
            other => Err(ParseError::Syntax {
                pos,
                msg: format!("expected a formula, found {other:?}"),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::SignalKind;

    fn table() -> SignalTable {
        let mut t = SignalTable::new();
        for name in ["a", "b", "c", "f", "h", "p"] {
            t.declare(name, SignalKind::SutInput).unwrap();
        }
        t
    }

    #[test]
    fn parses_traffic_guarantee() {
        let t = table();
        let f = parse("G(!f | !h)", &t).unwrap();
        let fs = t.require("f").unwrap();
        let hs = t.require("h").unwrap();
        assert_eq!(
            f,
            Formula::always(Formula::or(
                Formula::not(Formula::atom(fs)),
                Formula::not(Formula::atom(hs)),
            ))
        );
    }

    #[test]
    fn atomic_case() {
        let t = table();
        let p = t.require("p").unwrap();
        assert_eq!(parse("p", &t).unwrap(), Formula::Atom(p));
    }

    #[test]
    fn precedence_until_binds_tighter_than_implies() {
        let t = table();
        let a = Formula::atom(t.require("a").unwrap());
        let b = Formula::atom(t.require("b").unwrap());
        let c = Formula::atom(t.require("c").unwrap());
        let f = parse("a U b -> G c", &t).unwrap();
        assert_eq!(
            f,
            Formula::implies(Formula::until(a, b), Formula::always(c))
        );
    }

    #[test]
    fn precedence_and_or() {
        let t = table();
        let a = Formula::atom(t.require("a").unwrap());
        let b = Formula::atom(t.require("b").unwrap());
        let c = Formula::atom(t.require("c").unwrap());
        // & binds tighter than |
        assert_eq!(
            parse("a | b & c", &t).unwrap(),
            Formula::or(a.clone(), Formula::and(b.clone(), c.clone()))
        );
        // -> right associative
        assert_eq!(
            parse("a -> b -> c", &t).unwrap(),
            Formula::implies(a, Formula::implies(b, c))
        );
    }

    #[test]
    fn undeclared_signal_is_named() {
        let t = table();
        match parse("G zz", &t) {
            Err(ParseError::UndeclaredSignal { name, .. }) => assert_eq!(name, "zz"),
            other => panic!("expected undeclared-signal error, got {other:?}"),
        }
    }

    #[test]
    fn syntax_error_has_position() {
        let t = table();
        match parse("a &", &t) {
            Err(ParseError::Syntax { pos, .. }) => assert_eq!(pos, 3),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }
}
