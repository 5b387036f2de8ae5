//! Textual CCS. A program is a top-level process followed by defining
//! equations:
//!
//! ```text
//! new s_t2 in (X_p1 | X_p3 | X_p3)
//! X_p1 = 0
//! X_p2 = 's_t2.0
//! X_p3 = a.0 + s_t2.X_p1 + b.(X_p1 | X_p2)
//! ```
//!
//! Binding, tightest first: prefix `.`, sum `+`, parallel `|`, then
//! `new a, b in P`, which extends as far right as possible.

use std::fmt::Write as _;

use crate::action::{is_identifier, Action, TAU};
use crate::ccs::{DefiningEquations, Process, SeqProcess};
use crate::encode::EncodingResult;
use crate::error::{Error, ParseError, Result};

use super::SourceSpan;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Zero,
    Tick,
    Dot,
    Plus,
    Bar,
    Comma,
    Eq,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Zero => "`0`".into(),
            Tok::Tick => "`'`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Bar => "`|`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Eq => "`=`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(input: &str) -> Result<Vec<(Tok, SourceSpan)>, ParseError> {
    let mut out = Vec::new();
    let bytes = input.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b'#' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
                continue;
            }
            c if c.is_ascii_whitespace() => {
                i += 1;
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((
                    Tok::Ident(input[start..i].to_owned()),
                    SourceSpan::locate(input, start, i),
                ));
                continue;
            }
            b'0' => Tok::Zero,
            b'\'' => Tok::Tick,
            b'.' => Tok::Dot,
            b'+' => Tok::Plus,
            b'|' => Tok::Bar,
            b',' => Tok::Comma,
            b'=' => Tok::Eq,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            _ => {
                let ch = input[i..].chars().next().unwrap_or_default();
                return Err(ParseError::new(
                    format!("unexpected character `{ch}`"),
                    SourceSpan::locate(input, i, i + ch.len_utf8()),
                ));
            }
        };
        i += 1;
        out.push((tok, SourceSpan::locate(input, start, i)));
    }
    out.push((
        Tok::End,
        SourceSpan::locate(input, input.len(), input.len()),
    ));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, SourceSpan)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].0
    }

    fn span(&self) -> SourceSpan {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, SourceSpan) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, expected: &str) -> Result<T, ParseError> {
        Err(ParseError::new(
            format!("expected {expected}, found {}", self.peek().describe()),
            self.span(),
        ))
    }

    fn expect(&mut self, tok: Tok) -> Result<SourceSpan, ParseError> {
        if *self.peek() == tok {
            Ok(self.bump().1)
        } else {
            self.error(&tok.describe())
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, SourceSpan), ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                let sp = self.bump().1;
                Ok((s, sp))
            }
            _ => self.error(what),
        }
    }

    /// `new a, b in P` or a parallel composition.
    fn process(&mut self) -> Result<Process, ParseError> {
        if matches!(self.peek(), Tok::Ident(s) if s == "new")
            && matches!(self.peek_at(1), Tok::Ident(_))
        {
            self.bump();
            let mut names = vec![self.restricted_name()?];
            while *self.peek() == Tok::Comma {
                self.bump();
                names.push(self.restricted_name()?);
            }
            match self.peek() {
                Tok::Ident(s) if s == "in" => {
                    self.bump();
                }
                _ => return self.error("`in`"),
            }
            let body = self.process()?;
            return Ok(Process::restrict(names, body));
        }
        let mut factors = vec![self.sum()?];
        while *self.peek() == Tok::Bar {
            self.bump();
            factors.push(self.sum()?);
        }
        Ok(if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            Process::par(factors)
        })
    }

    fn restricted_name(&mut self) -> Result<String, ParseError> {
        let (n, sp) = self.ident("a channel name")?;
        if n == TAU {
            return Err(ParseError::new("`tau` cannot be restricted", sp));
        }
        Ok(n)
    }

    fn sum(&mut self) -> Result<Process, ParseError> {
        let start = self.span();
        let first = self.unit()?;
        if *self.peek() != Tok::Plus {
            return Ok(first);
        }
        let mut branches = vec![(first, start)];
        while *self.peek() == Tok::Plus {
            self.bump();
            let sp = self.span();
            branches.push((self.unit()?, sp));
        }
        let mut seq = Vec::new();
        for (b, sp) in branches {
            match b {
                Process::Seq(s) => seq.push(s),
                other => {
                    return Err(ParseError::new(
                        format!("sum operand `{other}` is not a sequential process"),
                        sp,
                    ))
                }
            }
        }
        Ok(SeqProcess::sum(seq).into())
    }

    /// A prefix chain or a primary.
    fn unit(&mut self) -> Result<Process, ParseError> {
        let action = match (self.peek().clone(), self.peek_at(1).clone()) {
            (Tok::Tick, _) => {
                self.bump();
                let (n, sp) = self.ident("a channel name after `'`")?;
                if n == TAU {
                    return Err(ParseError::new("`tau` has no co-action", sp));
                }
                Some(Action::output(n))
            }
            (Tok::Ident(n), Tok::Dot) => {
                self.bump();
                Some(Action::parse(&n))
            }
            _ => None,
        };
        match action {
            Some(a) => {
                self.expect(Tok::Dot)?;
                let cont = self.unit()?;
                Ok(Process::prefix(a, cont))
            }
            None => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Process, ParseError> {
        match self.peek().clone() {
            Tok::Zero => {
                self.bump();
                Ok(Process::nil())
            }
            Tok::Ident(n) if n == TAU => self.error("a process"),
            Tok::Ident(n) => {
                self.bump();
                Ok(Process::name(n))
            }
            Tok::LParen => {
                self.bump();
                let p = self.process()?;
                self.expect(Tok::RParen)?;
                Ok(p)
            }
            _ => self.error("a process"),
        }
    }
}

/// Parses a program: a process followed by zero or more `Name = body`
/// equations. Restrictions inside equation bodies are rejected.
pub fn parse_ccs(input: &str) -> Result<(Process, DefiningEquations)> {
    let mut p = Parser {
        toks: lex(input)?,
        pos: 0,
    };
    let top = p.process()?;
    let mut defs = DefiningEquations::new();
    while *p.peek() != Tok::End {
        let (name, sp) = p.ident("an equation `Name = ...`")?;
        if !is_identifier(&name) || name == TAU || name == "new" || name == "in" {
            return Err(ParseError::new(format!("`{name}` cannot be a process name"), sp).into());
        }
        p.expect(Tok::Eq)?;
        let body = p.process()?;
        defs.define(&name, body).map_err(|e| match e {
            Error::Unsupported(m) => Error::Unsupported(format!("line {}: {m}", sp.line)),
            Error::Input(m) => ParseError::new(m, sp).into(),
            other => other,
        })?;
    }
    Ok((top, defs))
}

/// Prints a process and its equations: the process on the first line,
/// then one `Name = body` line per equation in name order.
pub fn print_program(process: &Process, defs: &DefiningEquations) -> String {
    let mut out = format!("{process}\n");
    for (name, body) in defs.iter() {
        writeln!(out, "{name} = {body}").unwrap();
    }
    out
}

/// [`print_program`] for an encoding.
pub fn print_ccs(result: &EncodingResult) -> String {
    print_program(&result.process, &result.defs)
}
