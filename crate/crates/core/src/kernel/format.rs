//! Text format for derivations.
//!
//! ```text
//! (rule DiaR :concl "o(p0) => dia p0" :inst ()
//!   (ida "p0 => p0"))
//! ```
//!
//! Axioms are written `(id "<sequent>")` or `(ida "<sequent>")`. The `:inst`
//! list holds `:at <path>`, `:delta "<structure>"`, `:cutf "<formula>"` and
//! `:holes (<path> ...)`, exactly the keys the rule uses (see [`super::Inst`]).

use std::fmt::Write as _;

use super::derivation::Derivation;
use super::rules::{Inst, RuleId};
use crate::syntax::{parse_formula, parse_sequent, parse_structure, Path};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    #[error("byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("{0}")]
    Shape(String),
    #[error("in {context:?}: {source}")]
    Embedded { context: String, source: crate::syntax::ParseError },
}

#[derive(Debug, Clone, PartialEq)]
enum SExpr {
    Atom(String, usize),
    Str(String, usize),
    List(Vec<SExpr>, usize),
}

impl SExpr {
    fn offset(&self) -> usize {
        match self {
            SExpr::Atom(_, o) | SExpr::Str(_, o) | SExpr::List(_, o) => *o,
        }
    }
}

fn read_all(text: &str) -> Result<Vec<SExpr>, FormatError> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut out = Vec::new();
    loop {
        skip_ws(bytes, &mut pos);
        if pos >= bytes.len() {
            return Ok(out);
        }
        out.push(read(text, &mut pos)?);
    }
}

fn skip_ws(bytes: &[u8], pos: &mut usize) {
    while *pos < bytes.len() {
        if bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        } else if bytes[*pos] == b';' {
            while *pos < bytes.len() && bytes[*pos] != b'\n' {
                *pos += 1;
            }
        } else {
            break;
        }
    }
}

fn read(text: &str, pos: &mut usize) -> Result<SExpr, FormatError> {
    let bytes = text.as_bytes();
    skip_ws(bytes, pos);
    let start = *pos;
    match bytes.get(start) {
        None => Err(FormatError::Syntax { offset: start, message: "unexpected end of input".into() }),
        Some(b'(') => {
            *pos += 1;
            let mut items = Vec::new();
            loop {
                skip_ws(bytes, pos);
                match bytes.get(*pos) {
                    None => return Err(FormatError::Syntax { offset: start, message: "unclosed `(`".into() }),
                    Some(b')') => {
                        *pos += 1;
                        return Ok(SExpr::List(items, start));
                    }
                    _ => items.push(read(text, pos)?),
                }
            }
        }
        Some(b')') => Err(FormatError::Syntax { offset: start, message: "unexpected `)`".into() }),
        Some(b'"') => {
            *pos += 1;
            let mut s = String::new();
            loop {
                match bytes.get(*pos) {
                    None => return Err(FormatError::Syntax { offset: start, message: "unterminated string".into() }),
                    Some(b'"') => {
                        *pos += 1;
                        return Ok(SExpr::Str(s, start));
                    }
                    Some(b'\\') => {
                        match bytes.get(*pos + 1) {
                            Some(&c @ (b'"' | b'\\')) => s.push(c as char),
                            _ => return Err(FormatError::Syntax { offset: *pos, message: "bad escape".into() }),
                        }
                        *pos += 2;
                    }
                    Some(_) => {
                        let ch = text[*pos..].chars().next().unwrap();
                        s.push(ch);
                        *pos += ch.len_utf8();
                    }
                }
            }
        }
        Some(_) => {
            while *pos < bytes.len() && !bytes[*pos].is_ascii_whitespace() && !matches!(bytes[*pos], b'(' | b')' | b'"')
            {
                *pos += 1;
            }
            Ok(SExpr::Atom(text[start..*pos].to_string(), start))
        }
    }
}

fn shape<T>(at: &SExpr, msg: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError::Syntax { offset: at.offset(), message: msg.into() })
}

fn path_of(e: &SExpr) -> Result<Path, FormatError> {
    match e {
        SExpr::Atom(a, _) => Path::parse(a).map_or_else(|| shape(e, format!("bad path `{a}`")), Ok),
        _ => shape(e, "expected a path"),
    }
}

fn string_of(e: &SExpr) -> Result<&str, FormatError> {
    match e {
        SExpr::Str(s, _) => Ok(s),
        _ => shape(e, "expected a string"),
    }
}

fn embedded<T>(context: &str, r: Result<T, crate::syntax::ParseError>) -> Result<T, FormatError> {
    r.map_err(|source| FormatError::Embedded { context: context.to_string(), source })
}

fn derivation(e: &SExpr) -> Result<Derivation, FormatError> {
    let SExpr::List(items, _) = e else {
        return shape(e, "expected a derivation node");
    };
    let Some(SExpr::Atom(head, _)) = items.first() else {
        return shape(e, "expected `rule`, `id` or `ida`");
    };
    match head.as_str() {
        "id" | "ida" => {
            if items.len() != 2 {
                return shape(e, "axiom takes one sequent");
            }
            let text = string_of(&items[1])?;
            let concl = embedded(text, parse_sequent(text))?;
            let rule = if head == "id" { RuleId::Id } else { RuleId::IdA };
            Ok(Derivation::node(rule, Inst::none(), concl, vec![]))
        }
        "rule" => {
            let mut it = items[1..].iter();
            let rule = match it.next() {
                Some(a @ SExpr::Atom(name, _)) => name.parse::<RuleId>().or_else(|m| shape(a, m))?,
                _ => return shape(e, "expected a rule name"),
            };
            let mut concl = None;
            let mut inst = Inst::none();
            let mut premises = Vec::new();
            while let Some(item) = it.next() {
                match item {
                    SExpr::Atom(k, _) if k == ":concl" => {
                        let v = it.next().map_or_else(|| shape(item, ":concl needs a value"), Ok)?;
                        let text = string_of(v)?;
                        concl = Some(embedded(text, parse_sequent(text))?);
                    }
                    SExpr::Atom(k, _) if k == ":inst" => {
                        let v = it.next().map_or_else(|| shape(item, ":inst needs a list"), Ok)?;
                        inst = instantiation(v)?;
                    }
                    SExpr::List(..) => premises.push(derivation(item)?),
                    other => return shape(other, "unexpected item"),
                }
            }
            let Some(concl) = concl else {
                return shape(e, "missing :concl");
            };
            Ok(Derivation::node(rule, inst, concl, premises))
        }
        other => shape(e, format!("unknown node kind `{other}`")),
    }
}

fn instantiation(e: &SExpr) -> Result<Inst, FormatError> {
    let SExpr::List(items, _) = e else {
        return shape(e, ":inst expects a list");
    };
    let mut inst = Inst::none();
    let mut it = items.iter();
    while let Some(k) = it.next() {
        let SExpr::Atom(key, _) = k else {
            return shape(k, "expected a key");
        };
        let v = it.next().map_or_else(|| shape(k, "key without value"), Ok)?;
        match key.as_str() {
            ":at" => inst.at = Some(path_of(v)?),
            ":delta" => {
                let text = string_of(v)?;
                inst.delta = Some(embedded(text, parse_structure(text))?);
            }
            ":cutf" => {
                let text = string_of(v)?;
                inst.cut_formula = Some(embedded(text, parse_formula(text))?);
            }
            ":holes" => {
                let SExpr::List(ps, _) = v else {
                    return shape(v, ":holes expects a list");
                };
                inst.holes = ps.iter().map(path_of).collect::<Result<_, _>>()?;
            }
            other => return shape(k, format!("unknown key `{other}`")),
        }
    }
    Ok(inst)
}

/// Reads one derivation. Reading does not check validity.
pub fn read_derivation(text: &str) -> Result<Derivation, FormatError> {
    let all = read_all(text)?;
    match all.as_slice() {
        [one] => derivation(one),
        [] => Err(FormatError::Shape("empty input".into())),
        _ => Err(FormatError::Shape("expected exactly one derivation".into())),
    }
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

/// Writes a derivation, one node per line, premises indented.
pub fn write_derivation(d: &Derivation) -> String {
    let mut out = String::new();
    write_node(d, 0, &mut out);
    out.push('\n');
    out
}

fn write_node(d: &Derivation, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match d.rule {
        RuleId::Id | RuleId::IdA if d.premises.is_empty() && d.inst == Inst::none() => {
            let head = if d.rule == RuleId::Id { "id" } else { "ida" };
            let _ = write!(out, "{pad}({head} {})", quote(&d.conclusion.to_string()));
        }
        _ => {
            let _ = write!(out, "{pad}(rule {} :concl {} :inst (", d.rule, quote(&d.conclusion.to_string()));
            let mut parts = Vec::new();
            if let Some(at) = &d.inst.at {
                parts.push(format!(":at {at}"));
            }
            if let Some(delta) = &d.inst.delta {
                parts.push(format!(":delta {}", quote(&delta.to_string())));
            }
            if let Some(cf) = &d.inst.cut_formula {
                parts.push(format!(":cutf {}", quote(&cf.to_string())));
            }
            if !d.inst.holes.is_empty() {
                let hs: Vec<String> = d.inst.holes.iter().map(|h| h.to_string()).collect();
                parts.push(format!(":holes ({})", hs.join(" ")));
            }
            out.push_str(&parts.join(" "));
            out.push(')');
            for p in &d.premises {
                out.push('\n');
                write_node(p, depth + 1, out);
            }
            out.push(')');
        }
    }
}
