//! The `.rg` text format.
//!
//! ```text
//! # planar dipole with one twisted edge
//! edges a b
//! vertex u: a.0 b.0
//! vertex v: a.1 b.1
//! twist a
//! ```
//!
//! A `vertex` line lists the rotation of one vertex as half-edges
//! `<edge>.<end>`. The optional `edges` line fixes edge ids; otherwise edges
//! are numbered by first appearance. `twist` lines name twisted edges and `#`
//! starts a comment.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{valid_name, Edge, HalfEdge, RibbonGraph};

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push(Token {
                    text: &line[s..i],
                    column: line[..s].chars().count() + 1,
                });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &line[s..],
            column: line[..s].chars().count() + 1,
        });
    }
    out
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

pub fn parse_rg(text: &str) -> Result<RibbonGraph> {
    let mut declared: Option<Vec<String>> = None;
    let mut edge_ids: HashMap<String, usize> = HashMap::new();
    let mut edge_names: Vec<String> = Vec::new();
    // per half-edge index: (line, column) of its occurrence
    let mut seen: HashMap<(usize, u8), (usize, usize)> = HashMap::new();
    let mut vertices: Vec<(String, Vec<HalfEdge>)> = Vec::new();
    let mut vertex_lines: HashMap<String, usize> = HashMap::new();
    let mut twists: Vec<(String, usize, usize)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("");
        let toks = tokens(line);
        let Some(head) = toks.first() else { continue };
        match head.text {
            "edges" => {
                if declared.is_some() || !edge_names.is_empty() {
                    return Err(err(line_no, head.column, "`edges` must come once, before any vertex"));
                }
                let mut names = Vec::new();
                for t in &toks[1..] {
                    if !valid_name(t.text) {
                        return Err(err(line_no, t.column, format!("bad edge name `{}`", t.text)));
                    }
                    if edge_ids.insert(t.text.to_string(), names.len()).is_some() {
                        return Err(err(line_no, t.column, format!("edge `{}` listed twice", t.text)));
                    }
                    names.push(t.text.to_string());
                }
                edge_names = names.clone();
                declared = Some(names);
            }
            "vertex" => {
                let mut rest = &toks[1..];
                let Some(name_tok) = rest.first() else {
                    return Err(err(line_no, head.column, "vertex line without a name"));
                };
                rest = &rest[1..];
                let name = match name_tok.text.strip_suffix(':') {
                    Some(n) => n,
                    None => {
                        match rest.first() {
                            Some(t) if t.text == ":" => rest = &rest[1..],
                            _ => {
                                return Err(err(
                                    line_no,
                                    name_tok.column + name_tok.text.chars().count(),
                                    "expected `:` after vertex name",
                                ))
                            }
                        }
                        name_tok.text
                    }
                };
                if !valid_name(name) {
                    return Err(err(line_no, name_tok.column, format!("bad vertex name `{name}`")));
                }
                if vertex_lines.insert(name.to_string(), line_no).is_some() {
                    return Err(err(line_no, name_tok.column, format!("duplicate vertex `{name}`")));
                }
                let mut rotation = Vec::new();
                for t in rest {
                    let bad = || err(line_no, t.column, format!("bad half-edge `{}`", t.text));
                    let (edge, end) = t.text.rsplit_once('.').ok_or_else(bad)?;
                    let end: u8 = match end {
                        "0" => 0,
                        "1" => 1,
                        _ => return Err(bad()),
                    };
                    if !valid_name(edge) {
                        return Err(bad());
                    }
                    let id = match edge_ids.get(edge) {
                        Some(&id) => id,
                        None if declared.is_some() => {
                            return Err(err(line_no, t.column, format!("edge `{edge}` is not in the `edges` line")))
                        }
                        None => {
                            edge_ids.insert(edge.to_string(), edge_names.len());
                            edge_names.push(edge.to_string());
                            edge_names.len() - 1
                        }
                    };
                    if let Some((l, c)) = seen.insert((id, end), (line_no, t.column)) {
                        return Err(err(
                            line_no,
                            t.column,
                            format!("duplicate half-edge `{}` (first at line {l}, column {c})", t.text),
                        ));
                    }
                    rotation.push(HalfEdge::new(id, end));
                }
                vertices.push((name.to_string(), rotation));
            }
            "twist" => {
                if toks.len() == 1 {
                    return Err(err(line_no, head.column, "twist line without edges"));
                }
                for t in &toks[1..] {
                    twists.push((t.text.to_string(), line_no, t.column));
                }
            }
            other => {
                return Err(err(line_no, head.column, format!("unexpected token `{other}`")));
            }
        }
    }

    for (id, name) in edge_names.iter().enumerate() {
        match (seen.get(&(id, 0)), seen.get(&(id, 1))) {
            (Some(_), Some(_)) => {}
            (Some(&(l, c)), None) | (None, Some(&(l, c))) => {
                return Err(err(l, c, format!("edge `{name}` is missing its other half-edge")));
            }
            (None, None) => {
                return Err(err(1, 1, format!("edge `{name}` is listed but never used")));
            }
        }
    }
    let mut edges: Vec<Edge> = edge_names
        .into_iter()
        .map(|name| Edge { name, twisted: false })
        .collect();
    for (name, line, column) in twists {
        match edge_ids.get(&name) {
            Some(&id) => edges[id].twisted = true,
            None => return Err(err(line, column, format!("twist names unknown edge `{name}`"))),
        }
    }
    RibbonGraph::new(vertices, edges)
}

/// Canonical text: an `edges` line in id order, vertices in id order with
/// rotations from their smallest half-edge, then one `twist` line per
/// twisted edge.
pub fn render_rg(g: &RibbonGraph) -> String {
    let mut out = String::new();
    if g.edge_count() > 0 {
        out.push_str("edges");
        for e in g.edges() {
            out.push(' ');
            out.push_str(&e.name);
        }
        out.push('\n');
    }
    for v in 0..g.vertex_count() {
        out.push_str("vertex ");
        out.push_str(g.vertex_name(v));
        out.push(':');
        for h in g.rotation(v) {
            out.push_str(&format!(" {}.{}", g.edge_name(h.edge), h.end));
        }
        out.push('\n');
    }
    for e in g.edges().iter().filter(|e| e.twisted) {
        out.push_str(&format!("twist {}\n", e.name));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn planar_dipole() {
        let g = parse_rg("vertex u: a.0 b.0\nvertex v: a.1 b.1\n").unwrap();
        assert_eq!((g.vertex_count(), g.edge_count(), g.face_count()), (2, 2, 2));
        assert!(g.is_orientable());
        let t = parse_rg("vertex u: a.0 b.0\nvertex v: a.1 b.1\ntwist a\n").unwrap();
        assert!(t.is_twisted(0));
        assert!(!t.is_orientable());
    }

    #[test]
    fn diagnostics() {
        match parse_rg("vertex u: a.0 a.0") {
            Err(Error::Parse { line: 1, column: 15, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_rg("vertex u: a.0\nvertex v: b.0 b.1") {
            Err(Error::Parse { line: 1, column: 11, message }) => assert!(message.contains("missing")),
            other => panic!("{other:?}"),
        }
        match parse_rg("vertex u: a.0 a.1\ntwist q") {
            Err(Error::Parse { line: 2, column: 7, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_rg("vertex u: a.0 a.2") {
            Err(Error::Parse { line: 1, column: 15, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_rg("\n  frobnicate") {
            Err(Error::Parse { line: 2, column: 3, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(parse_rg("vertex u a.0 a.1").is_err());
        assert!(parse_rg("edges a\nvertex u: b.0 b.1").is_err());
    }

    #[test]
    fn comments_and_spacing() {
        let g = parse_rg("# loop\nvertex w : x.1   x.0 # trailing\n\n").unwrap();
        assert_eq!(render_rg(&g), "edges x\nvertex w: x.0 x.1\n");
    }

    #[test]
    fn isolated_vertices() {
        let g = parse_rg("vertex a:\nvertex b:").unwrap();
        assert_eq!((g.vertex_count(), g.edge_count(), g.components()), (2, 0, 2));
        assert_eq!(render_rg(&g), "vertex a:\nvertex b:\n");
        assert_eq!(parse_rg(&render_rg(&g)).unwrap(), g);
    }

    #[test]
    fn edges_line_fixes_ids() {
        let g = parse_rg("edges b a\nvertex u: a.0 b.0\nvertex v: a.1 b.1").unwrap();
        assert_eq!(g.edge_name(0), "b");
        assert_eq!(parse_rg(&render_rg(&g)).unwrap(), g);
    }
}
