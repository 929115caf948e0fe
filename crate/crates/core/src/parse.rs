//! Text format for knowledge bases.
//!
//! ```text
//! % comment
//! #ontology
//! -c.
//! p & q -> r.
//! #rules
//! a :- not b.
//! b :- not a.
//! c :- a.
//! :- a, b.
//! ```
//!
//! Formula precedence, tightest first: `-`, `&`, `|`, `->`; `->` associates
//! to the right. `not`, `true` and `false` are reserved. A file without any
//! section header is read as a rule section.

use std::sync::Arc;

use crate::atoms::{is_atom_name, Atom, Symbols};
use crate::error::{Error, Result};
use crate::formula::{Formula, Literal};
use crate::kb::{KnowledgeBase, Rule};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Header(String),
    Not,
    True,
    False,
    If,
    Comma,
    Dot,
    Neg,
    And,
    Or,
    Arrow,
    LParen,
    RParen,
    Newline,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax { line, column, message: message.into() }
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        let mut push = |tok, len: usize, i: &mut usize, col: &mut usize| {
            out.push(Token { tok, line: tl, column: tc });
            *i += len;
            *col += len;
        };
        match c {
            '\n' => {
                out.push(Token { tok: Tok::Newline, line, column: col });
                i += 1;
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                i += 1;
                col += 1;
            }
            '%' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            ':' if chars.get(i + 1) == Some(&'-') => push(Tok::If, 2, &mut i, &mut col),
            '-' if chars.get(i + 1) == Some(&'>') => push(Tok::Arrow, 2, &mut i, &mut col),
            '-' => push(Tok::Neg, 1, &mut i, &mut col),
            ',' => push(Tok::Comma, 1, &mut i, &mut col),
            '.' => push(Tok::Dot, 1, &mut i, &mut col),
            '&' => push(Tok::And, 1, &mut i, &mut col),
            '|' => push(Tok::Or, 1, &mut i, &mut col),
            '(' => push(Tok::LParen, 1, &mut i, &mut col),
            ')' => push(Tok::RParen, 1, &mut i, &mut col),
            '#' | 'a'..='z' | 'A'..='Z' | '_' | '0'..='9' => {
                let start = i;
                i += 1;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                col += i - start;
                let tok = if let Some(name) = word.strip_prefix('#') {
                    Tok::Header(name.to_owned())
                } else {
                    match word.as_str() {
                        "not" => Tok::Not,
                        "true" => Tok::True,
                        "false" => Tok::False,
                        w if is_atom_name(w) => Tok::Ident(word),
                        w if w.starts_with(|c: char| c.is_ascii_uppercase()) => {
                            return Err(syntax(tl, tc, format!("identifier `{w}` must start with a lowercase letter")))
                        }
                        w => return Err(syntax(tl, tc, format!("invalid identifier `{w}`"))),
                    }
                };
                out.push(Token { tok, line: tl, column: tc });
            }
            other => return Err(syntax(line, col, format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Section {
    None,
    Ontology,
    Rules,
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    eof: (usize, usize),
    symbols: Symbols,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.tokens.get(self.pos).map_or(self.eof, |t| (t.line, t.column))
    }

    fn error(&self, message: impl Into<String>) -> Error {
        let (line, column) = self.here();
        syntax(line, column, message)
    }

    fn skip_newlines(&mut self) {
        while self.peek() == Some(&Tok::Newline) {
            self.pos += 1;
        }
    }

    /// Next significant token; statements may span lines.
    fn peek_sig(&mut self) -> Option<&Tok> {
        self.skip_newlines();
        self.peek()
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        match self.peek_sig() {
            Some(t) if *t == want => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.error(format!("expected {what}"))),
        }
    }

    fn atom(&mut self) -> Result<Atom> {
        match self.peek_sig().cloned() {
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(self.symbols.intern(&name))
            }
            _ => Err(self.error("expected an atom")),
        }
    }

    fn implication(&mut self) -> Result<Formula> {
        let lhs = self.disjunction()?;
        if self.peek_sig() == Some(&Tok::Arrow) {
            self.pos += 1;
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut lhs = self.conjunction()?;
        while self.peek_sig() == Some(&Tok::Or) {
            self.pos += 1;
            lhs = Formula::or(lhs, self.conjunction()?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut lhs = self.unary()?;
        while self.peek_sig() == Some(&Tok::And) {
            self.pos += 1;
            lhs = Formula::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek_sig().cloned() {
            Some(Tok::Neg) => {
                self.pos += 1;
                Ok(Formula::not(self.unary()?))
            }
            Some(Tok::True) => {
                self.pos += 1;
                Ok(Formula::True)
            }
            Some(Tok::False) => {
                self.pos += 1;
                Ok(Formula::False)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.implication()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Some(Tok::Ident(_)) => Ok(Formula::atom(self.atom()?)),
            _ => Err(self.error("expected a formula")),
        }
    }

    fn literal(&mut self) -> Result<Literal> {
        if self.peek_sig() == Some(&Tok::Not) {
            self.pos += 1;
            return Ok(Literal::neg(self.atom()?));
        }
        Ok(Literal::pos(self.atom()?))
    }

    fn rule(&mut self) -> Result<Rule> {
        let head = match self.peek_sig() {
            Some(Tok::Ident(_)) => Some(self.atom()?),
            _ => None,
        };
        let mut body = Vec::new();
        if self.peek_sig() == Some(&Tok::If) {
            self.pos += 1;
            body.push(self.literal()?);
            while self.peek_sig() == Some(&Tok::Comma) {
                self.pos += 1;
                body.push(self.literal()?);
            }
        }
        self.expect(Tok::Dot, "`.` at end of rule")?;
        Ok(Rule::new(head, body))
    }

    /// A header must sit alone on its line.
    fn header(&mut self, name: &str, section: &mut Section, seen: &mut [bool; 2]) -> Result<()> {
        let (next, idx) = match name {
            "ontology" => (Section::Ontology, 0),
            "rules" => (Section::Rules, 1),
            other => return Err(self.error(format!("unknown section `#{other}`"))),
        };
        if seen[idx] {
            return Err(self.error(format!("duplicate section `#{name}`")));
        }
        if next < *section || (*section == Section::Rules) {
            return Err(self.error(format!("section `#{name}` out of order")));
        }
        self.pos += 1;
        match self.peek() {
            None | Some(Tok::Newline) => {}
            _ => return Err(self.error(format!("expected newline after `#{name}`"))),
        }
        seen[idx] = true;
        *section = next;
        Ok(())
    }

    fn file(&mut self) -> Result<(Vec<Formula>, Vec<Rule>)> {
        let (mut ontology, mut rules) = (Vec::new(), Vec::new());
        let mut section = Section::None;
        let mut seen = [false; 2];
        loop {
            match self.peek_sig().cloned() {
                None => break,
                Some(Tok::Header(name)) => self.header(&name, &mut section, &mut seen)?,
                Some(_) => match section {
                    Section::Ontology => {
                        ontology.push(self.implication()?);
                        self.expect(Tok::Dot, "`.` at end of formula")?;
                    }
                    Section::Rules | Section::None => {
                        if section == Section::None {
                            section = Section::Rules;
                            seen[1] = true;
                        }
                        rules.push(self.rule()?);
                    }
                },
            }
        }
        Ok((ontology, rules))
    }
}

/// Parses the knowledge-base text format.
pub fn parse_kb(text: &str) -> Result<KnowledgeBase> {
    let tokens = lex(text)?;
    let last_line = text.lines().count().max(1);
    let last_col = text.lines().last().map_or(1, |l| l.chars().count() + 1);
    let mut parser = Parser { tokens, pos: 0, eof: (last_line, last_col), symbols: Symbols::new() };
    let (ontology, rules) = parser.file()?;
    Ok(KnowledgeBase::new(Arc::new(parser.symbols), ontology, rules))
}
