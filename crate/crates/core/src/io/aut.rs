//! Aldebaran `.aut` transition systems.
//!
//! ```text
//! des (0, 2, 3)
//! (0, "a", 1)
//! (1, "tau", 2)
//! ```

use std::fmt::Write as _;

use crate::action::Action;
use crate::error::{ParseError, Result};
use crate::lts::Lts;

use super::SourceSpan;

fn quote(a: &Action) -> String {
    let s = a.to_string();
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

/// Writes `lts` with its own state numbering. Edges are listed by source
/// state, then action, then target.
pub fn write_aut(lts: &Lts) -> String {
    let mut out = format!(
        "des ({}, {}, {})\n",
        lts.initial(),
        lts.num_edges(),
        lts.num_states()
    );
    for (s, a, t) in lts.edges() {
        writeln!(out, "({s}, {}, {t})", quote(a)).unwrap();
    }
    out
}

struct Cursor<'a> {
    input: &'a str,
    line: &'a str,
    offset: usize,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn span(&self, len: usize) -> SourceSpan {
        let start = self.offset + self.pos;
        SourceSpan::locate(
            self.input,
            start,
            (start + len).min(self.offset + self.line.len()),
        )
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::new(msg, self.span(1)))
    }

    fn skip_ws(&mut self) {
        let rest = &self.line[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn eat(&mut self, s: &str) -> Result<(), ParseError> {
        self.skip_ws();
        if self.line[self.pos..].starts_with(s) {
            self.pos += s.len();
            Ok(())
        } else {
            self.err(format!("expected `{s}`"))
        }
    }

    fn number(&mut self) -> Result<usize, ParseError> {
        self.skip_ws();
        let rest = &self.line[self.pos..];
        let len = rest
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(rest.len());
        let n = rest[..len]
            .parse()
            .or_else(|_| self.err("expected a number"))?;
        self.pos += len;
        Ok(n)
    }

    fn label(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        let rest = &self.line[self.pos..];
        if let Some(body) = rest.strip_prefix('"') {
            let mut out = String::new();
            let mut chars = body.char_indices();
            while let Some((i, c)) = chars.next() {
                match c {
                    '"' => {
                        self.pos += i + 2;
                        return Ok(out);
                    }
                    '\\' => match chars.next() {
                        Some((_, e)) => out.push(e),
                        None => break,
                    },
                    c => out.push(c),
                }
            }
            self.err("unterminated label")
        } else {
            let len = rest.find(',').unwrap_or(rest.len());
            let text = rest[..len].trim_end();
            if text.is_empty() {
                return self.err("expected a label");
            }
            self.pos += len;
            Ok(text.to_owned())
        }
    }

    fn end(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        if self.pos == self.line.len() {
            Ok(())
        } else {
            self.err("unexpected trailing text")
        }
    }
}

/// Reads an `.aut` document. `tau` is the internal action, `'x` a
/// co-action. States are labelled by their numbers.
pub fn read_aut(input: &str) -> Result<Lts> {
    let mut header = None;
    let mut edges = Vec::new();
    let mut offset = 0;
    for raw in input.split_inclusive('\n') {
        let line = raw.trim_end_matches(['\n', '\r']);
        let mut c = Cursor {
            input,
            line,
            offset,
            pos: 0,
        };
        offset += raw.len();
        if line.trim().is_empty() {
            continue;
        }
        match header {
            None => {
                c.eat("des")?;
                c.eat("(")?;
                let init = c.number()?;
                c.eat(",")?;
                let n_edges = c.number()?;
                c.eat(",")?;
                let n_states = c.number()?;
                c.eat(")")?;
                c.end()?;
                if n_states == 0 || init >= n_states {
                    return Err(ParseError::new(
                        format!("initial state {init} out of range for {n_states} states"),
                        c.span(line.len()),
                    )
                    .into());
                }
                header = Some((init, n_edges, n_states, c.span(line.len())));
            }
            Some((_, _, n_states, _)) => {
                c.eat("(")?;
                let src = c.number()?;
                c.eat(",")?;
                let label = c.label()?;
                c.eat(",")?;
                let dst = c.number()?;
                c.eat(")")?;
                c.end()?;
                if src >= n_states || dst >= n_states {
                    return Err(ParseError::new(
                        format!("state out of range (only {n_states} states declared)"),
                        c.span(line.len()),
                    )
                    .into());
                }
                edges.push((src, Action::parse(&label), dst));
            }
        }
    }
    let Some((init, n_edges, n_states, span)) = header else {
        return Err(
            ParseError::new("missing `des` header", SourceSpan::locate(input, 0, 0)).into(),
        );
    };
    if edges.len() != n_edges {
        return Err(ParseError::new(
            format!("header declares {n_edges} edges but {} follow", edges.len()),
            span,
        )
        .into());
    }
    Lts::unlabelled(n_states, init, edges)
}
