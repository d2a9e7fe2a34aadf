//! Term parser and printer.
//!
//! ```text
//! forest    := "[" "]" | "[" tree ("," tree)* "]"
//! tree      := singleton | singleton "." forest
//! singleton := label | "s" "{" ordinal "}" "(" tree ")"
//! label     := identifier | "'" identifier "'"
//! ```
//!
//! The bare identifiers `s` and `w` are reserved; labels with those names
//! are written `'s'` and `'w'`. Whitespace is insignificant.

use std::fmt;

use thiserror::Error;

use super::{KindError, Node, Term, TermStore};
use crate::ordinal::parse_ordinal;
use crate::qo::QOrder;
use crate::syntax::{Cursor, SyntaxError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermParseError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("undeclared label '{name}' at {pos}")]
    UnknownLabel { pos: usize, name: String },
    #[error("sort violation at {pos}: {kind}")]
    Kind { pos: usize, kind: KindError },
}

/// Parses a tree or forest term, interning it in `store`.
pub fn parse_term(store: &TermStore, qo: &QOrder, text: &str) -> Result<Term, TermParseError> {
    let mut p = Parser {
        cur: Cursor::new(text),
        store,
        qo,
    };
    let t = p.term()?;
    p.cur.finish()?;
    Ok(t)
}

struct Parser<'a> {
    cur: Cursor<'a>,
    store: &'a TermStore,
    qo: &'a QOrder,
}

impl Parser<'_> {
    fn kind<T>(&self, pos: usize, r: Result<T, KindError>) -> Result<T, TermParseError> {
        r.map_err(|kind| TermParseError::Kind { pos, kind })
    }

    fn term(&mut self) -> Result<Term, TermParseError> {
        let mut head = self.primary()?;
        loop {
            let pos = self.cur.pos();
            if !self.cur.eat(b'.') {
                return Ok(head);
            }
            let tail = self.primary()?;
            head = self.kind(pos, self.store.dot(head, tail))?;
        }
    }

    fn primary(&mut self) -> Result<Term, TermParseError> {
        self.cur.skip_ws();
        let pos = self.cur.pos();
        match self.cur.peek() {
            Some(b'[') => {
                self.cur.expect(b'[')?;
                let mut children = Vec::new();
                if !self.cur.eat(b']') {
                    loop {
                        children.push(self.term()?);
                        if self.cur.eat(b']') {
                            break;
                        }
                        if !self.cur.eat(b',') {
                            return Err(self.cur.unexpected("',' or ']'").into());
                        }
                    }
                }
                self.kind(pos, self.store.forest(children))
            }
            Some(b'\'') => {
                self.cur.expect(b'\'')?;
                let name = self.cur.ident()?;
                self.cur.expect(b'\'')?;
                self.label(pos, name)
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let name = self.cur.ident()?;
                if name == "s" && self.cur.peek() == Some(b'{') {
                    return self.sapp();
                }
                if name == "s" || name == "w" {
                    return Err(SyntaxError::new(
                        pos,
                        format!("'{name}' is reserved; write the label as '{name}' in quotes"),
                    )
                    .into());
                }
                self.label(pos, name)
            }
            _ => Err(self.cur.unexpected("a term").into()),
        }
    }

    fn sapp(&mut self) -> Result<Term, TermParseError> {
        self.cur.expect(b'{')?;
        let index = parse_ordinal(&mut self.cur)?;
        self.cur.expect(b'}')?;
        self.cur.expect(b'(')?;
        self.cur.skip_ws();
        let body_pos = self.cur.pos();
        let body = self.term()?;
        self.cur.expect(b')')?;
        self.kind(body_pos, self.store.sapp(index, body))
    }

    fn label(&self, pos: usize, name: &str) -> Result<Term, TermParseError> {
        let id = self
            .qo
            .label(name)
            .map_err(|_| TermParseError::UnknownLabel {
                pos,
                name: name.to_string(),
            })?;
        Ok(self.store.label(id))
    }
}

/// Display adapter resolving label names through a [`QOrder`].
pub struct TermDisplay<'a> {
    qo: &'a QOrder,
    term: &'a Term,
}

impl<'a> TermDisplay<'a> {
    pub fn new(qo: &'a QOrder, term: &'a Term) -> Self {
        TermDisplay { qo, term }
    }
}

impl fmt::Display for TermDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(f, self.qo, self.term)
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, qo: &QOrder, t: &Term) -> fmt::Result {
    match t.node() {
        Node::Label(l) => {
            let name = qo.name(*l);
            if name == "s" || name == "w" {
                write!(f, "'{name}'")
            } else {
                f.write_str(name)
            }
        }
        Node::SApp(a, u) => {
            write!(f, "s{{{a}}}(")?;
            write_term(f, qo, u)?;
            f.write_str(")")
        }
        Node::Dot(h, tail) => {
            write_term(f, qo, h)?;
            f.write_str(".")?;
            write_term(f, qo, tail)
        }
        Node::Forest(cs) => {
            f.write_str("[")?;
            for (i, c) in cs.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write_term(f, qo, c)?;
            }
            f.write_str("]")
        }
    }
}

pub fn print_term(qo: &QOrder, t: &Term) -> String {
    TermDisplay::new(qo, t).to_string()
}
