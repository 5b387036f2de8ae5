//! The place/transition subset of PNML: one net, at most one page, plain
//! places, transitions and unit-weight arcs. Graphics and `toolspecific`
//! elements are skipped.

use roxmltree::{Document, Node};

use crate::action::{is_identifier, Action};
use crate::error::{Error, ParseError, Result};
use crate::petri::{Marking, PetriNet};

use super::assemble::NetAssembler;
use super::SourceSpan;

fn span(input: &str, node: Node) -> SourceSpan {
    let r = node.range();
    SourceSpan::locate(input, r.start, r.end)
}

fn child<'a, 'i>(node: Node<'a, 'i>, name: &str) -> Option<Node<'a, 'i>> {
    node.children().find(|c| c.has_tag_name(name))
}

/// Text of `<name><text>..</text></name>`-style annotations.
fn annotation<'a>(node: Node<'a, '_>, name: &str) -> Option<&'a str> {
    child(node, name)
        .and_then(|n| child(n, "text"))
        .and_then(|t| t.text())
        .map(str::trim)
}

fn id_of(node: Node, input: &str, attr: &str) -> Result<String, ParseError> {
    let sp = span(input, node);
    let id = node.attribute(attr).ok_or_else(|| {
        ParseError::new(format!("<{}> without `{attr}`", node.tag_name().name()), sp)
    })?;
    if !is_identifier(id) {
        return Err(ParseError::new(
            format!("`{id}` is not a valid identifier"),
            sp,
        ));
    }
    Ok(id.to_owned())
}

/// Parses a PNML document. A transition's `<name>` becomes its label
/// (`tau` is the internal action); without one the id is used.
pub fn parse_pnml(input: &str) -> Result<(PetriNet, Marking)> {
    let doc = Document::parse(input).map_err(|e| {
        let pos = e.pos();
        let line_start: usize = input
            .split_inclusive('\n')
            .take(pos.row.saturating_sub(1) as usize)
            .map(str::len)
            .sum();
        let start = input[line_start..]
            .char_indices()
            .nth(pos.col.saturating_sub(1) as usize)
            .map_or(input.len(), |(i, _)| line_start + i);
        ParseError::new(
            format!("malformed XML: {e}"),
            SourceSpan::locate(input, start, start),
        )
    })?;
    let root = doc.root_element();
    let whole = span(input, root);
    let nets: Vec<_> = if root.has_tag_name("net") {
        vec![root]
    } else {
        root.children().filter(|c| c.has_tag_name("net")).collect()
    };
    let net = match nets.as_slice() {
        [n] => *n,
        [] => return Err(ParseError::new("no <net> element", whole).into()),
        [_, second, ..] => {
            let at = span(input, *second);
            return Err(Error::Unsupported(format!(
                "line {}: documents with several nets",
                at.line
            )));
        }
    };
    let pages: Vec<_> = net.children().filter(|c| c.has_tag_name("page")).collect();
    let container = match pages.as_slice() {
        [] => net,
        [p] => *p,
        [_, second, ..] => {
            let at = span(input, *second);
            return Err(Error::Unsupported(format!(
                "line {}: multi-page nets",
                at.line
            )));
        }
    };

    let mut asm = NetAssembler::default();
    for node in container.children().filter(Node::is_element) {
        let sp = span(input, node);
        match node.tag_name().name() {
            "place" => {
                let id = id_of(node, input, "id")?;
                let tokens = match annotation(node, "initialMarking") {
                    None | Some("") => 0,
                    Some(t) => t
                        .parse()
                        .map_err(|_| ParseError::new(format!("`{t}` is not a token count"), sp))?,
                };
                asm.place(&id, tokens, sp)?;
            }
            "transition" => {
                let id = id_of(node, input, "id")?;
                let label = match annotation(node, "name") {
                    Some(name) if !name.is_empty() => {
                        if !is_identifier(name) {
                            return Err(ParseError::new(
                                format!("label `{name}` is not a valid action name"),
                                sp,
                            )
                            .into());
                        }
                        Action::parse(name)
                    }
                    _ => Action::input(&id),
                };
                asm.transition(&id, label, sp)?;
            }
            "arc" => {
                let from = id_of(node, input, "source")?;
                let to = id_of(node, input, "target")?;
                if let Some(w) = annotation(node, "inscription") {
                    if w != "1" {
                        return Err(Error::Unsupported(format!(
                            "line {}: arc weight {w} (only unweighted arcs are supported)",
                            sp.line
                        )));
                    }
                }
                asm.arc(&from, &to, sp);
            }
            _ => {}
        }
    }
    asm.finish()
}
