//! The line-oriented `.pn` net format.
//!
//! ```text
//! # comment
//! place p1 tokens 1
//! place p2
//! transition t1 label a
//! transition t2 label tau
//! arc p1 t1
//! arc t1 p2
//! ```

use std::fmt::Write as _;

use crate::action::{is_identifier, Action};
use crate::error::{ParseError, Result};
use crate::petri::{Marking, PetriNet};

use super::assemble::NetAssembler;
use super::SourceSpan;

struct Word<'a> {
    text: &'a str,
    span: SourceSpan,
}

fn words<'a>(input: &'a str, line_start: usize, line: &'a str) -> Vec<Word<'a>> {
    let mut out = Vec::new();
    let mut rest = line;
    let mut offset = line_start;
    loop {
        let trimmed = rest.trim_start();
        offset += rest.len() - trimmed.len();
        if trimmed.is_empty() {
            break;
        }
        let len = trimmed.find(char::is_whitespace).unwrap_or(trimmed.len());
        out.push(Word {
            text: &trimmed[..len],
            span: SourceSpan::locate(input, offset, offset + len),
        });
        offset += len;
        rest = &trimmed[len..];
    }
    out
}

fn ident<'a>(
    w: Option<&Word<'a>>,
    what: &str,
    line_span: SourceSpan,
) -> Result<&'a str, ParseError> {
    let w = w.ok_or_else(|| ParseError::new(format!("expected {what}"), line_span))?;
    if w.text.starts_with('_') {
        return Err(ParseError::new(
            format!(
                "identifier `{}` starts with an underscore (reserved for generated names)",
                w.text
            ),
            w.span,
        ));
    }
    if !is_identifier(w.text) {
        return Err(ParseError::new(
            format!("`{}` is not a valid identifier", w.text),
            w.span,
        ));
    }
    Ok(w.text)
}

fn no_more(ws: &[Word], from: usize) -> Result<(), ParseError> {
    match ws.get(from) {
        Some(w) => Err(ParseError::new(format!("unexpected `{}`", w.text), w.span)),
        None => Ok(()),
    }
}

/// Parses a `.pn` document into a net and its initial marking.
pub fn parse_net_text(input: &str) -> Result<(PetriNet, Marking)> {
    let mut asm = NetAssembler::default();
    let mut line_start = 0;
    for raw in input.split_inclusive('\n') {
        let start = line_start;
        line_start += raw.len();
        let content = raw.split('#').next().unwrap_or_default();
        let ws = words(input, start, content);
        let Some(head) = ws.first() else { continue };
        let line_span = SourceSpan::locate(input, start, start + content.trim_end().len());
        match head.text {
            "place" => {
                let id = ident(ws.get(1), "place identifier", line_span)?;
                let mut tokens = 0;
                if let Some(kw) = ws.get(2) {
                    if kw.text != "tokens" {
                        return Err(ParseError::new(
                            format!("expected `tokens`, found `{}`", kw.text),
                            kw.span,
                        )
                        .into());
                    }
                    let n = ws
                        .get(3)
                        .ok_or_else(|| ParseError::new("expected token count", line_span))?;
                    tokens = n.text.parse().map_err(|_| {
                        ParseError::new(format!("`{}` is not a token count", n.text), n.span)
                    })?;
                    no_more(&ws, 4)?;
                }
                asm.place(id, tokens, line_span)?;
            }
            "transition" => {
                let id = ident(ws.get(1), "transition identifier", line_span)?;
                let mut label = Action::input(id);
                if let Some(kw) = ws.get(2) {
                    if kw.text != "label" {
                        return Err(ParseError::new(
                            format!("expected `label`, found `{}`", kw.text),
                            kw.span,
                        )
                        .into());
                    }
                    let name = ident(ws.get(3), "action label", line_span)?;
                    label = Action::parse(name);
                    no_more(&ws, 4)?;
                }
                asm.transition(id, label, line_span)?;
            }
            "arc" => {
                let from = ident(ws.get(1), "arc source", line_span)?;
                let to = ident(ws.get(2), "arc target", line_span)?;
                no_more(&ws, 3)?;
                asm.arc(from, to, line_span);
            }
            other => {
                return Err(ParseError::new(
                    format!("expected `place`, `transition` or `arc`, found `{other}`"),
                    head.span,
                )
                .into())
            }
        }
    }
    asm.finish()
}

/// Prints a net in `.pn` form: places, then transitions, then arcs, each in
/// identifier order. Labels are always written; `tokens 0` is omitted.
pub fn print_net_text(net: &PetriNet, m0: &Marking) -> String {
    let mut out = String::new();
    for p in net.places() {
        match m0.get(p) {
            0 => writeln!(out, "place {p}"),
            n => writeln!(out, "place {p} tokens {n}"),
        }
        .unwrap();
    }
    for (t, a) in net.transitions().iter().zip(net.labels()) {
        writeln!(out, "transition {t} label {a}").unwrap();
    }
    for (a, b) in net.edges() {
        writeln!(out, "arc {a} {b}").unwrap();
    }
    out
}
