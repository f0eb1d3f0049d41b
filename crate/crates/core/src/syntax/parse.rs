//! Recursive-descent reader for formulas, structures and sequents.
//!
//! Grammar (ASCII):
//!
//! ```text
//! formula   := impl
//! impl      := or ("->" impl)?
//! or        := and ("|" and)*
//! and       := unary ("&" unary)*
//! unary     := ("dia" | "box" | "bdia" | "bbox" | "~") unary | atom
//! atom      := "p"<digits> | "T" | "F" | "(" formula ")"
//! structure := item ("," item)*
//! item      := "o(" structure ")" | "b(" structure ")" | "(" structure ")" | formula
//! sequent   := structure? "=>" formula
//! ```

use super::formula::Formula;
use super::structure::Structure;
use super::Sequent;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("syntax error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Var(u32),
    Top,
    Bot,
    Dia,
    Box,
    BDia,
    BBox,
    Not,
    And,
    Or,
    Arrow,
    Turnstile,
    Comma,
    LParen,
    RParen,
    /// `o(`
    CircOpen,
    /// `b(`
    BulletOpen,
}

fn describe(t: Option<&Tok>) -> String {
    match t {
        None => "end of input".into(),
        Some(t) => format!("`{}`", t.surface()),
    }
}

impl Tok {
    fn surface(&self) -> String {
        match self {
            Tok::Var(n) => format!("p{n}"),
            Tok::Top => "T".into(),
            Tok::Bot => "F".into(),
            Tok::Dia => "dia".into(),
            Tok::Box => "box".into(),
            Tok::BDia => "bdia".into(),
            Tok::BBox => "bbox".into(),
            Tok::Not => "~".into(),
            Tok::And => "&".into(),
            Tok::Or => "|".into(),
            Tok::Arrow => "->".into(),
            Tok::Turnstile => "=>".into(),
            Tok::Comma => ",".into(),
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
            Tok::CircOpen => "o(".into(),
            Tok::BulletOpen => "b(".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            b'&' => {
                i += 1;
                Tok::And
            }
            b'|' => {
                i += 1;
                Tok::Or
            }
            b'~' => {
                i += 1;
                Tok::Not
            }
            b',' => {
                i += 1;
                Tok::Comma
            }
            b'(' => {
                i += 1;
                Tok::LParen
            }
            b')' => {
                i += 1;
                Tok::RParen
            }
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 2;
                Tok::Arrow
            }
            b'=' if bytes.get(i + 1) == Some(&b'>') => {
                i += 2;
                Tok::Turnstile
            }
            c if c.is_ascii_alphanumeric() => {
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                let word = &text[start..i];
                match word {
                    "T" => Tok::Top,
                    "F" => Tok::Bot,
                    "dia" => Tok::Dia,
                    "box" => Tok::Box,
                    "bdia" => Tok::BDia,
                    "bbox" => Tok::BBox,
                    "o" | "b" => {
                        let mut j = i;
                        while j < bytes.len() && bytes[j].is_ascii_whitespace() {
                            j += 1;
                        }
                        if bytes.get(j) != Some(&b'(') {
                            return Err(ParseError { offset: start, message: format!("expected `(` after `{word}`") });
                        }
                        i = j + 1;
                        if word == "o" {
                            Tok::CircOpen
                        } else {
                            Tok::BulletOpen
                        }
                    }
                    w if w.len() > 1 && w.starts_with('p') && w[1..].bytes().all(|b| b.is_ascii_digit()) => {
                        let n = w[1..]
                            .parse::<u32>()
                            .map_err(|_| ParseError { offset: start, message: "variable index out of range".into() })?;
                        Tok::Var(n)
                    }
                    w => return Err(ParseError { offset: start, message: format!("unknown word `{w}`") }),
                }
            }
            _ => {
                return Err(ParseError {
                    offset: start,
                    message: format!("unexpected character `{}`", text[start..].chars().next().unwrap()),
                })
            }
        };
        out.push((tok, start));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Parser, ParseError> {
        Ok(Parser { toks: lex(text)?, pos: 0, end: text.len() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(_, o)| *o).unwrap_or(self.end)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { offset: self.offset(), message: message.into() })
    }

    fn expect(&mut self, t: Tok) -> Result<(), ParseError> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            self.error(format!("expected `{}`, found {}", t.surface(), describe(self.peek())))
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.pos += 1;
            let rhs = self.formula()?;
            return Ok(Formula::impl_(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.conjunction()?;
        while self.peek() == Some(&Tok::Or) {
            self.pos += 1;
            let rhs = self.conjunction()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(&Tok::And) {
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let t = self.peek().cloned();
        let ctor: fn(Formula) -> Formula = match t {
            Some(Tok::Dia) => Formula::dia,
            Some(Tok::Box) => Formula::boxed,
            Some(Tok::BDia) => Formula::bdia,
            Some(Tok::BBox) => Formula::bbox,
            Some(Tok::Not) => Formula::negation,
            _ => return self.atom(),
        };
        self.pos += 1;
        Ok(ctor(self.unary()?))
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Var(i)) => {
                self.pos += 1;
                Ok(Formula::Var(i))
            }
            Some(Tok::Top) => {
                self.pos += 1;
                Ok(Formula::Top)
            }
            Some(Tok::Bot) => {
                self.pos += 1;
                Ok(Formula::Bot)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            other => self.error(format!("expected a formula, found {}", describe(other.as_ref()))),
        }
    }

    fn structure(&mut self) -> Result<Structure, ParseError> {
        let mut lhs = self.item()?;
        while self.peek() == Some(&Tok::Comma) {
            self.pos += 1;
            let rhs = self.item()?;
            lhs = Structure::comma(lhs, rhs);
        }
        Ok(lhs)
    }

    fn item(&mut self) -> Result<Structure, ParseError> {
        match self.peek() {
            Some(Tok::CircOpen) => {
                self.pos += 1;
                let s = self.structure()?;
                self.expect(Tok::RParen)?;
                Ok(Structure::circ(s))
            }
            Some(Tok::BulletOpen) => {
                self.pos += 1;
                let s = self.structure()?;
                self.expect(Tok::RParen)?;
                Ok(Structure::bullet(s))
            }
            Some(Tok::LParen) => {
                // A parenthesised formula is a leaf; anything else is grouping.
                let save = self.pos;
                if let Ok(f) = self.formula() {
                    if matches!(self.peek(), None | Some(Tok::Comma | Tok::RParen | Tok::Turnstile)) {
                        return Ok(Structure::leaf(f));
                    }
                }
                self.pos = save;
                self.pos += 1;
                let s = self.structure()?;
                self.expect(Tok::RParen)?;
                Ok(s)
            }
            _ => Ok(Structure::leaf(self.formula()?)),
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.pos < self.toks.len() {
            return self.error(format!("unexpected {}", describe(self.peek())));
        }
        Ok(())
    }
}

pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser::new(text)?;
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

/// Parses a non-empty structure.
pub fn parse_structure(text: &str) -> Result<Structure, ParseError> {
    let mut p = Parser::new(text)?;
    let s = p.structure()?;
    p.finish()?;
    Ok(s)
}

/// Parses `antecedent => succedent`; an empty antecedent is `Structure::Empty`.
pub fn parse_sequent(text: &str) -> Result<Sequent, ParseError> {
    let mut p = Parser::new(text)?;
    let antecedent = if p.peek() == Some(&Tok::Turnstile) { Structure::Empty } else { p.structure()? };
    p.expect(Tok::Turnstile)?;
    let succedent = p.formula()?;
    p.finish()?;
    Ok(Sequent::new(antecedent, succedent))
}
