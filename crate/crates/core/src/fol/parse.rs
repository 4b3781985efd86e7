//! Text syntax for terms and formulas.
//!
//! ```text
//! term    := '0' | '1' | decimal | ident | term '+' term | term '*' term | '(' term ')'
//! atom    := term ('=' | '<' | '<=' | '>' | '>=' | '!=') term
//! formula := atom | '~' f | f '&' f | f '|' f | f '->' f | f '<->' f
//!          | ('!' | '?') ident '.' f | '(' f ')'
//! ```
//!
//! Binding strength, tightest first: `~`, `&`, `|`, `->` (right associative),
//! `<->`. Quantifier bodies extend as far to the right as possible. Decimal
//! literals of two or more are expanded to left-nested numerals, `<=` to
//! `< ∨ =`. Variables start with a lowercase ASCII letter.

use thiserror::Error;

use super::formula::Formula;
use super::schematic::{Connective, Quantifier, Schematic};
use super::term::Term;

/// Largest decimal literal accepted; numerals are expanded into unary terms.
pub const MAX_LITERAL: u64 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unexpected token {token:?} at byte {pos}")]
    UnexpectedToken { pos: usize, token: String },
    #[error("predicate {name} expects 1 argument, got {got} (at byte {pos})")]
    Arity { pos: usize, name: String, got: usize },
}

impl ParseError {
    pub fn pos(&self) -> usize {
        match self {
            ParseError::Syntax { pos, .. }
            | ParseError::UnexpectedToken { pos, .. }
            | ParseError::Arity { pos, .. } => *pos,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(u64),
    Ident(String),
    Plus,
    Star,
    Eq,
    Lt,
    Le,
    Gt,
    Ge,
    Ne,
    Tilde,
    Amp,
    Bar,
    Arrow,
    DArrow,
    Bang,
    Query,
    Dot,
    LParen,
    RParen,
    Comma,
    End,
}

fn tok_text(t: &Tok) -> String {
    match t {
        Tok::Num(n) => n.to_string(),
        Tok::Ident(s) => s.clone(),
        Tok::Plus => "+".into(),
        Tok::Star => "*".into(),
        Tok::Eq => "=".into(),
        Tok::Lt => "<".into(),
        Tok::Le => "<=".into(),
        Tok::Gt => ">".into(),
        Tok::Ge => ">=".into(),
        Tok::Ne => "!=".into(),
        Tok::Tilde => "~".into(),
        Tok::Amp => "&".into(),
        Tok::Bar => "|".into(),
        Tok::Arrow => "->".into(),
        Tok::DArrow => "<->".into(),
        Tok::Bang => "!".into(),
        Tok::Query => "?".into(),
        Tok::Dot => ".".into(),
        Tok::LParen => "(".into(),
        Tok::RParen => ")".into(),
        Tok::Comma => ",".into(),
        Tok::End => "end of input".into(),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    let at = |k: usize| chars.get(k).map(|&(_, c)| c);
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let (tok, len) = match c {
            '0'..='9' => {
                let mut j = i;
                while at(j).is_some_and(|c| c.is_ascii_digit()) {
                    j += 1;
                }
                let end = chars.get(j).map(|&(p, _)| p).unwrap_or(text.len());
                let n: u64 = text[pos..end]
                    .parse()
                    .ok()
                    .filter(|n| *n <= MAX_LITERAL)
                    .ok_or_else(|| ParseError::Syntax {
                        pos,
                        msg: format!("numeral literal larger than {MAX_LITERAL}"),
                    })?;
                (Tok::Num(n), j - i)
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut j = i;
                while at(j).is_some_and(|c| c.is_ascii_alphanumeric() || c == '_') {
                    j += 1;
                }
                let end = chars.get(j).map(|&(p, _)| p).unwrap_or(text.len());
                (Tok::Ident(text[pos..end].to_string()), j - i)
            }
            '+' => (Tok::Plus, 1),
            '*' | '×' | '·' => (Tok::Star, 1),
            '=' => (Tok::Eq, 1),
            '<' if at(i + 1) == Some('-') && at(i + 2) == Some('>') => (Tok::DArrow, 3),
            '<' if at(i + 1) == Some('=') => (Tok::Le, 2),
            '<' => (Tok::Lt, 1),
            '>' if at(i + 1) == Some('=') => (Tok::Ge, 2),
            '>' => (Tok::Gt, 1),
            '≤' => (Tok::Le, 1),
            '≥' => (Tok::Ge, 1),
            '≠' => (Tok::Ne, 1),
            '!' if at(i + 1) == Some('=') => (Tok::Ne, 2),
            '!' | '∀' => (Tok::Bang, 1),
            '?' | '∃' => (Tok::Query, 1),
            '~' | '¬' => (Tok::Tilde, 1),
            '&' | '∧' => (Tok::Amp, 1),
            '|' | '∨' => (Tok::Bar, 1),
            '-' if at(i + 1) == Some('>') => (Tok::Arrow, 2),
            '→' => (Tok::Arrow, 1),
            '↔' => (Tok::DArrow, 1),
            '.' => (Tok::Dot, 1),
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            ',' => (Tok::Comma, 1),
            other => {
                return Err(ParseError::UnexpectedToken {
                    pos,
                    token: other.to_string(),
                })
            }
        };
        out.push((tok, pos));
        i += len;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    pred: Option<&'a str>,
}

type PResult<T> = Result<T, ParseError>;

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self) -> ParseError {
        ParseError::UnexpectedToken {
            pos: self.offset(),
            token: tok_text(self.peek()),
        }
    }

    fn expect(&mut self, want: Tok) -> PResult<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(ParseError::Syntax {
                pos: self.offset(),
                msg: format!("expected {}, found {}", tok_text(&want), tok_text(self.peek())),
            })
        }
    }

    fn variable(&mut self) -> PResult<String> {
        let pos = self.offset();
        match self.bump() {
            Tok::Ident(name) => {
                if name.starts_with(|c: char| c.is_ascii_lowercase()) {
                    Ok(name)
                } else {
                    Err(ParseError::Syntax {
                        pos,
                        msg: format!("variable {name:?} must start with a lowercase letter"),
                    })
                }
            }
            other => Err(ParseError::Syntax {
                pos,
                msg: format!("expected a variable, found {}", tok_text(&other)),
            }),
        }
    }

    fn formula(&mut self) -> PResult<Schematic> {
        let mut lhs = self.implication()?;
        while *self.peek() == Tok::DArrow {
            self.bump();
            let rhs = self.implication()?;
            lhs = Schematic::bin(Connective::Iff, lhs, rhs);
        }
        Ok(lhs)
    }

    fn implication(&mut self) -> PResult<Schematic> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.implication()?;
            return Ok(Schematic::bin(Connective::Implies, lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> PResult<Schematic> {
        let mut lhs = self.conjunction()?;
        while *self.peek() == Tok::Bar {
            self.bump();
            let rhs = self.conjunction()?;
            lhs = Schematic::bin(Connective::Or, lhs, rhs);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> PResult<Schematic> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            let rhs = self.unary()?;
            lhs = Schematic::bin(Connective::And, lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> PResult<Schematic> {
        match self.peek() {
            Tok::Tilde => {
                self.bump();
                Ok(Schematic::not(self.unary()?))
            }
            Tok::Bang | Tok::Query => {
                let q = if self.bump() == Tok::Bang {
                    Quantifier::ForAll
                } else {
                    Quantifier::Exists
                };
                let v = self.variable()?;
                self.expect(Tok::Dot)?;
                let body = self.formula()?;
                Ok(Schematic::quant(q, v, body))
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> PResult<Schematic> {
        if *self.peek() != Tok::LParen {
            return self.atom();
        }
        // '(' opens either a term or a formula; try the atom reading first.
        let save = self.pos;
        let as_atom = self.atom();
        let atom_err = match as_atom {
            Ok(a) => return Ok(a),
            Err(e) => e,
        };
        self.pos = save;
        self.bump();
        let inner = self.formula().and_then(|f| {
            self.expect(Tok::RParen)?;
            Ok(f)
        });
        match inner {
            Ok(f) => Ok(f),
            Err(e) => Err(if atom_err.pos() > e.pos() { atom_err } else { e }),
        }
    }

    fn atom(&mut self) -> PResult<Schematic> {
        if let (Tok::Ident(name), Tok::LParen) = (self.peek().clone(), self.peek_at(1).clone()) {
            let pos = self.offset();
            if Some(name.as_str()) != self.pred {
                return Err(ParseError::Syntax {
                    pos,
                    msg: format!("unknown predicate symbol {name:?}"),
                });
            }
            self.bump();
            self.bump();
            let mut args = vec![self.term()?];
            while *self.peek() == Tok::Comma {
                self.bump();
                args.push(self.term()?);
            }
            self.expect(Tok::RParen)?;
            if args.len() != 1 {
                return Err(ParseError::Arity {
                    pos,
                    name,
                    got: args.len(),
                });
            }
            return Ok(Schematic::Hole(args.pop().expect("one argument")));
        }
        let lhs = self.term()?;
        let rel = self.peek().clone();
        let rel_pos = self.offset();
        match rel {
            Tok::Eq | Tok::Lt | Tok::Le | Tok::Gt | Tok::Ge | Tok::Ne => {
                self.bump();
            }
            _ => {
                return Err(ParseError::Syntax {
                    pos: rel_pos,
                    msg: format!("expected a relation, found {}", tok_text(&rel)),
                })
            }
        }
        let rhs = self.term()?;
        let f = match rel {
            Tok::Eq => Formula::eq(lhs, rhs),
            Tok::Lt => Formula::lt(lhs, rhs),
            Tok::Le => Formula::le(lhs, rhs),
            Tok::Gt => Formula::lt(rhs, lhs),
            Tok::Ge => Formula::le(rhs, lhs),
            Tok::Ne => Formula::not(Formula::eq(lhs, rhs)),
            _ => unreachable!(),
        };
        Ok(Schematic::Plain(f))
    }

    fn term(&mut self) -> PResult<Term> {
        let mut lhs = self.product()?;
        while *self.peek() == Tok::Plus {
            self.bump();
            let rhs = self.product()?;
            lhs = Term::add(lhs, rhs);
        }
        Ok(lhs)
    }

    fn product(&mut self) -> PResult<Term> {
        let mut lhs = self.term_atom()?;
        while *self.peek() == Tok::Star {
            self.bump();
            let rhs = self.term_atom()?;
            lhs = Term::mul(lhs, rhs);
        }
        Ok(lhs)
    }

    fn term_atom(&mut self) -> PResult<Term> {
        match self.peek().clone() {
            Tok::Num(0) => {
                self.bump();
                Ok(Term::Zero)
            }
            Tok::Num(1) => {
                self.bump();
                Ok(Term::One)
            }
            Tok::Num(n) => {
                self.bump();
                Ok(Term::numeral(n))
            }
            Tok::Ident(_) => Ok(Term::Var(self.variable()?)),
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            _ => Err(self.unexpected()),
        }
    }

    fn finish(&mut self) -> PResult<()> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            Err(self.unexpected())
        }
    }
}

/// Parses a formula in the text syntax described at module level.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let s = parse_schematic(text, None)?;
    match s {
        Schematic::Plain(f) => Ok(f),
        _ => unreachable!("no predicate symbol was enabled"),
    }
}

/// Parses a formula that may use `pred(t)` atoms for the given predicate name.
pub fn parse_schematic(text: &str, pred: Option<&str>) -> Result<Schematic, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        pred,
    };
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

/// Parses a single term.
pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        pred: None,
    };
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}
