//! Recursive-descent parser. Precedence from loosest to tightest:
//! `->` (right), `|`, `&`, `U`/`R` (right), unary `! X F G`.

use std::collections::BTreeSet;

use super::Ltl;
use crate::error::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    True,
    False,
    Not,
    And,
    Or,
    Implies,
    Next,
    Until,
    Release,
    Finally,
    Globally,
    LParen,
    RParen,
    End,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, Error> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '!' | '~' => Tok::Not,
            '&' => Tok::And,
            '|' => Tok::Or,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Implies
            }
            'X' => Tok::Next,
            'U' => Tok::Until,
            'R' => Tok::Release,
            'F' => Tok::Finally,
            'G' => Tok::Globally,
            c if c.is_ascii_lowercase() => {
                while i + 1 < bytes.len() && {
                    let d = bytes[i + 1] as char;
                    d.is_ascii_lowercase() || d.is_ascii_digit() || d == '_'
                } {
                    i += 1;
                }
                match &text[start..=i] {
                    "true" => Tok::True,
                    "false" => Tok::False,
                    id => Tok::Ident(id.to_string()),
                }
            }
            _ => {
                return Err(Error::LtlSyntax {
                    offset: start,
                    message: format!("unexpected character {c:?}"),
                });
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn syntax(&self, offset: usize, message: impl Into<String>) -> Error {
        Error::LtlSyntax {
            offset,
            message: message.into(),
        }
    }

    /// Parses the right operand of a binary operator, reporting a missing
    /// operand at the operator's own offset.
    fn operand(
        &mut self,
        op_offset: usize,
        f: fn(&mut Parser) -> Result<Ltl, Error>,
    ) -> Result<Ltl, Error> {
        if matches!(self.peek(), Tok::End | Tok::RParen) {
            return Err(self.syntax(op_offset, "operator is missing its right operand"));
        }
        f(self)
    }

    fn implies(&mut self) -> Result<Ltl, Error> {
        let lhs = self.or()?;
        if *self.peek() == Tok::Implies {
            let (_, at) = self.bump();
            let rhs = self.operand(at, Parser::implies)?;
            return Ok(Ltl::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Ltl, Error> {
        let mut lhs = self.and()?;
        while *self.peek() == Tok::Or {
            let (_, at) = self.bump();
            let rhs = self.operand(at, Parser::and)?;
            lhs = Ltl::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Ltl, Error> {
        let mut lhs = self.binary_temporal()?;
        while *self.peek() == Tok::And {
            let (_, at) = self.bump();
            let rhs = self.operand(at, Parser::binary_temporal)?;
            lhs = Ltl::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn binary_temporal(&mut self) -> Result<Ltl, Error> {
        let lhs = self.unary()?;
        match self.peek() {
            Tok::Until => {
                let (_, at) = self.bump();
                Ok(Ltl::until(lhs, self.operand(at, Parser::binary_temporal)?))
            }
            Tok::Release => {
                let (_, at) = self.bump();
                Ok(Ltl::release(
                    lhs,
                    self.operand(at, Parser::binary_temporal)?,
                ))
            }
            _ => Ok(lhs),
        }
    }

    fn unary(&mut self) -> Result<Ltl, Error> {
        let (tok, at) = self.bump();
        let wrap: fn(Ltl) -> Ltl = match tok {
            Tok::Not => Ltl::not,
            Tok::Next => Ltl::next,
            Tok::Finally => Ltl::finally,
            Tok::Globally => Ltl::globally,
            Tok::True => return Ok(Ltl::True),
            Tok::False => return Ok(Ltl::False),
            Tok::Ident(p) => return Ok(Ltl::Prop(p)),
            Tok::LParen => {
                if *self.peek() == Tok::RParen {
                    return Err(self.syntax(self.offset(), "empty parentheses"));
                }
                let inner = self.implies()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.syntax(at, "unclosed parenthesis"));
                }
                self.bump();
                return Ok(inner);
            }
            Tok::End => return Err(self.syntax(at, "unexpected end of formula")),
            other => return Err(self.syntax(at, format!("unexpected token {other:?}"))),
        };
        if matches!(self.peek(), Tok::End | Tok::RParen) {
            return Err(self.syntax(at, "operator is missing its operand"));
        }
        Ok(wrap(self.unary()?))
    }
}

/// Parses without checking propositions against an alphabet.
pub fn parse_ltl_unchecked(text: &str) -> Result<Ltl, Error> {
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
    };
    if *p.peek() == Tok::End {
        return Err(p.syntax(0, "empty formula"));
    }
    let f = p.implies()?;
    if *p.peek() != Tok::End {
        return Err(p.syntax(p.offset(), "trailing input"));
    }
    Ok(f)
}

/// Parses `text`, rejecting propositions outside `props`.
pub fn parse_ltl(text: &str, props: &BTreeSet<String>) -> Result<Ltl, Error> {
    let f = parse_ltl_unchecked(text)?;
    if let Some(p) = f.propositions().into_iter().find(|p| !props.contains(p)) {
        return Err(Error::UndeclaredProposition(p));
    }
    Ok(f)
}
