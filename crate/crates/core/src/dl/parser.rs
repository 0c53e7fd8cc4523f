//! Concrete syntax for concepts and the line-oriented ontology format.
//!
//! ```text
//! C ::= "top" | "bottom" | NAME | "not" C | C "and" C | C "or" C
//!     | "some" ROLE "." C | "all" ROLE "." C | "(" C ")"
//! ```
//!
//! Precedence from tightest: `not`, `some`/`all`, `and`, `or`. Keywords are
//! case-insensitive; `⊓ ⊔ ¬ ∃ ∀ ⊤ ⊥` are accepted as aliases.
//!
//! Ontology statements, one per line, `#` starts a comment:
//!
//! ```text
//! define NAME := C        (alias: ≡)
//! gci C => C              (alias: ⊑)
//! assert C (a)
//! role r (a, b)
//! ```

use super::{Concept, DlError, KnowledgeBase};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Name(String),
    Number(String),
    Top,
    Bottom,
    Not,
    And,
    Or,
    Some,
    All,
    LParen,
    RParen,
    Dot,
    Comma,
    Assign,
    Implies,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Name(n) => format!("name '{n}'"),
            Tok::Number(n) => format!("number '{n}'"),
            Tok::Top => "'top'".into(),
            Tok::Bottom => "'bottom'".into(),
            Tok::Not => "'not'".into(),
            Tok::And => "'and'".into(),
            Tok::Or => "'or'".into(),
            Tok::Some => "'some'".into(),
            Tok::All => "'all'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Dot => "'.'".into(),
            Tok::Comma => "','".into(),
            Tok::Assign => "':='".into(),
            Tok::Implies => "'=>'".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn is_name_start(c: char) -> bool {
    c.is_ascii_alphabetic()
}

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '-'
}

/// Whether `s` can be written as a concept, role or individual name.
pub fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(is_name_start) && chars.all(is_name_char) && keyword(s).is_none()
}

fn keyword(word: &str) -> Option<Tok> {
    Some(match word.to_ascii_lowercase().as_str() {
        "top" => Tok::Top,
        "bottom" => Tok::Bottom,
        "not" => Tok::Not,
        "and" => Tok::And,
        "or" => Tok::Or,
        "some" => Tok::Some,
        "all" => Tok::All,
        _ => return None,
    })
}

fn lex(text: &str, line: usize) -> Result<Vec<Spanned>, DlError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        let single = |tok| Spanned { tok, line, column };
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if is_name_start(c) {
            let start = i;
            while i < chars.len() && is_name_char(chars[i]) {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            let tok = keyword(&word).unwrap_or(Tok::Name(word));
            out.push(single(tok));
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(single(Tok::Number(chars[start..i].iter().collect())));
            continue;
        }
        let two: String = chars[i..(i + 2).min(chars.len())].iter().collect();
        let (tok, width) = match (c, two.as_str()) {
            (_, ":=") => (Tok::Assign, 2),
            (_, "=>") => (Tok::Implies, 2),
            ('(', _) => (Tok::LParen, 1),
            (')', _) => (Tok::RParen, 1),
            ('.', _) => (Tok::Dot, 1),
            (',', _) => (Tok::Comma, 1),
            ('⊓', _) => (Tok::And, 1),
            ('⊔', _) => (Tok::Or, 1),
            ('¬', _) => (Tok::Not, 1),
            ('∃', _) => (Tok::Some, 1),
            ('∀', _) => (Tok::All, 1),
            ('⊤', _) => (Tok::Top, 1),
            ('⊥', _) => (Tok::Bottom, 1),
            ('≡', _) => (Tok::Assign, 1),
            ('⊑', _) => (Tok::Implies, 1),
            _ => {
                return Err(DlError::Syntax {
                    line,
                    column,
                    message: format!("unexpected character '{c}'"),
                })
            }
        };
        out.push(single(tok));
        i += width;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Spanned],
    pos: usize,
    line: usize,
    end_column: usize,
}

impl<'a> Parser<'a> {
    fn new(toks: &'a [Spanned], line: usize, end_column: usize) -> Self {
        Self {
            toks,
            pos: 0,
            line,
            end_column,
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn peek_at(&self, offset: usize) -> Option<&Tok> {
        self.toks.get(self.pos + offset).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map(|s| (s.line, s.column))
            .unwrap_or((self.line, self.end_column))
    }

    fn error(&self, message: String) -> DlError {
        let (line, column) = self.here();
        DlError::Syntax {
            line,
            column,
            message,
        }
    }

    fn unexpected(&self, wanted: &str) -> DlError {
        match self.peek() {
            Some(t) => self.error(format!("expected {wanted}, found {}", t.describe())),
            None => self.error(format!("expected {wanted}, found end of input")),
        }
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|s| s.tok.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, tok: Tok) -> Result<(), DlError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected(&tok.describe()))
        }
    }

    fn name(&mut self, wanted: &str) -> Result<String, DlError> {
        match self.peek() {
            Some(Tok::Name(n)) => {
                let n = n.clone();
                self.pos += 1;
                Ok(n)
            }
            _ => Err(self.unexpected(wanted)),
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn concept(&mut self) -> Result<Concept, DlError> {
        let mut operands = vec![self.conjunction()?];
        while self.peek() == Some(&Tok::Or) {
            self.pos += 1;
            operands.push(self.conjunction()?);
        }
        Ok(Concept::or(operands))
    }

    fn conjunction(&mut self) -> Result<Concept, DlError> {
        let mut operands = vec![self.unary()?];
        while self.peek() == Some(&Tok::And) {
            self.pos += 1;
            operands.push(self.unary()?);
        }
        Ok(Concept::and(operands))
    }

    fn unary(&mut self) -> Result<Concept, DlError> {
        match self.peek() {
            Some(Tok::Not) => {
                self.pos += 1;
                Ok(Concept::not(self.unary()?))
            }
            Some(Tok::Some) | Some(Tok::All) => {
                let existential = self.bump() == Some(Tok::Some);
                let role = self.name("a role name")?;
                self.expect(Tok::Dot)?;
                let filler = self.unary()?;
                Ok(if existential {
                    Concept::exists(role, filler)
                } else {
                    Concept::forall(role, filler)
                })
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Concept, DlError> {
        match self.peek().cloned() {
            Some(Tok::Top) => {
                self.pos += 1;
                Ok(Concept::Top)
            }
            Some(Tok::Bottom) => {
                self.pos += 1;
                Ok(Concept::Bottom)
            }
            Some(Tok::Name(n)) => {
                // a name directly followed by another operand looks like a
                // constructor from a richer language ("min 2 r.C", "only r.C")
                if matches!(self.peek_at(1), Some(Tok::Name(_)) | Some(Tok::Number(_))) {
                    let (line, column) = self.here();
                    return Err(DlError::UnknownConstructor {
                        line,
                        column,
                        keyword: n,
                    });
                }
                self.pos += 1;
                Ok(Concept::Atomic(n))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let c = self.concept()?;
                self.expect(Tok::RParen)?;
                Ok(c)
            }
            _ => Err(self.unexpected("a concept")),
        }
    }
}

fn parse_concept_line(text: &str, line: usize) -> Result<Concept, DlError> {
    let toks = lex(text, line)?;
    let mut p = Parser::new(&toks, line, text.chars().count() + 1);
    let c = p.concept()?;
    if !p.at_end() {
        return Err(p.unexpected("end of concept"));
    }
    Ok(c)
}

/// Parse a single concept description. Line numbers count from 1 over the
/// input text.
pub fn parse_concept(text: &str) -> Result<Concept, DlError> {
    let lines: Vec<&str> = text.lines().collect();
    if lines.len() <= 1 {
        return parse_concept_line(lines.first().copied().unwrap_or(""), 1);
    }
    // multi-line input: lex every line, then parse one token stream
    let mut toks = Vec::new();
    for (i, l) in lines.iter().enumerate() {
        toks.extend(lex(l, i + 1)?);
    }
    let last = lines.len();
    let mut p = Parser::new(&toks, last, lines[last - 1].chars().count() + 1);
    let c = p.concept()?;
    if !p.at_end() {
        return Err(p.unexpected("end of concept"));
    }
    Ok(c)
}

/// Parse an ontology document into a knowledge base. Definitions are checked
/// for duplicates and cycles.
pub fn parse_ontology(text: &str) -> Result<KnowledgeBase, DlError> {
    let mut kb = KnowledgeBase::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let toks = lex(content, line)?;
        let mut p = Parser::new(&toks, line, content.chars().count() + 1);
        let head = p.name("a statement keyword (define, gci, assert, role)")?;
        match head.to_ascii_lowercase().as_str() {
            "define" => {
                let name = p.name("the defined concept name")?;
                p.expect(Tok::Assign)?;
                let c = p.concept()?;
                finish(&p)?;
                kb.tbox.define(name, c).map_err(|e| at_line(e, line))?;
            }
            "gci" => {
                let sub = p.concept()?;
                p.expect(Tok::Implies)?;
                let sup = p.concept()?;
                finish(&p)?;
                kb.tbox.add_gci(sub, sup);
            }
            "assert" => {
                let c = p.concept()?;
                p.expect(Tok::LParen)?;
                let ind = p.name("an individual name")?;
                p.expect(Tok::RParen)?;
                finish(&p)?;
                kb.abox.assert_concept(c, ind);
            }
            "role" => {
                let role = p.name("a role name")?;
                p.expect(Tok::LParen)?;
                let a = p.name("an individual name")?;
                p.expect(Tok::Comma)?;
                let b = p.name("an individual name")?;
                p.expect(Tok::RParen)?;
                finish(&p)?;
                kb.abox.assert_role(role, a, b);
            }
            other => {
                return Err(DlError::Syntax {
                    line,
                    column: toks[0].column,
                    message: format!("unknown statement '{other}'"),
                })
            }
        }
    }
    kb.tbox.check_acyclic()?;
    Ok(kb)
}

fn finish(p: &Parser<'_>) -> Result<(), DlError> {
    if p.at_end() {
        Ok(())
    } else {
        Err(p.unexpected("end of line"))
    }
}

fn at_line(e: DlError, line: usize) -> DlError {
    match e {
        DlError::DuplicateDefinition { name, .. } => DlError::DuplicateDefinition {
            name,
            line: Some(line),
        },
        other => other,
    }
}

/// Canonical ontology text: definitions, then GCIs, then concept assertions,
/// then role assertions, each in stored order, one per line.
pub fn write_ontology(kb: &KnowledgeBase) -> String {
    let mut out = String::new();
    for (name, c) in kb.tbox.definitions() {
        out.push_str(&format!("define {name} := {c}\n"));
    }
    for gci in kb.tbox.gcis() {
        out.push_str(&format!("gci {} => {}\n", gci.sub, gci.sup));
    }
    for (c, ind) in kb.abox.concept_assertions() {
        out.push_str(&format!("assert {c} ({ind})\n"));
    }
    for (r, a, b) in kb.abox.role_assertions() {
        out.push_str(&format!("role {r} ({a}, {b})\n"));
    }
    out
}
