//! Graph documents.
//!
//! The canonical form is a single line of compact JSON followed by a newline:
//!
//! ```text
//! {"n":4,"edges":[[0,1],[0,3],[1,2],[2,3]]}
//! ```
//!
//! Edges are written with `u < v` in lexicographic order, so writing what was
//! read from a canonical file reproduces it byte for byte. The reader also
//! accepts a plain edge list with one `u v` pair per line; `#` starts a
//! comment, and a `# n = <count>` comment fixes the vertex count so isolated
//! trailing vertices survive.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Serialize, Deserialize)]
struct Document {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl Document {
    fn of(g: &Graph) -> Self {
        Document {
            n: g.order(),
            edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        }
    }

    fn into_graph(self) -> Result<Graph> {
        Graph::from_edges(self.n, self.edges.into_iter().map(|[u, v]| (u, v)))
    }
}

/// Graphs serialize as their canonical document.
impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Document::of(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Document::deserialize(d)?.into_graph().map_err(serde::de::Error::custom)
    }
}

pub fn to_json(g: &Graph) -> String {
    let mut s = serde_json::to_string(&Document::of(g)).expect("graph document serializes");
    s.push('\n');
    s
}

pub fn from_json(text: &str) -> Result<Graph> {
    let doc: Document = serde_json::from_str(text)?;
    doc.into_graph()
}

pub fn from_edge_list(text: &str) -> Result<Graph> {
    let mut edges = Vec::new();
    let mut declared: Option<usize> = None;
    let mut offset = 0;
    for line in text.lines() {
        let pos = offset;
        offset += line.len() + 1;
        let (body, comment) = match line.split_once('#') {
            Some((b, c)) => (b, Some(c)),
            None => (line, None),
        };
        if let Some(c) = comment {
            if let Some(rest) = c.trim().strip_prefix("n") {
                if let Some(value) = rest.trim().strip_prefix('=') {
                    declared = Some(value.trim().parse().map_err(|_| Error::Parse {
                        pos,
                        msg: format!("bad vertex count {:?}", value.trim()),
                    })?);
                }
            }
        }
        let fields: Vec<&str> = body.split_whitespace().collect();
        match fields.as_slice() {
            [] => {}
            [u, v] => {
                let parse = |s: &str| {
                    s.parse::<usize>().map_err(|_| Error::Parse {
                        pos,
                        msg: format!("expected a vertex number, found {s:?}"),
                    })
                };
                edges.push((parse(u)?, parse(v)?));
            }
            _ => {
                return Err(Error::Parse {
                    pos,
                    msg: format!("expected `u v`, found {:?}", body.trim()),
                })
            }
        }
    }
    let needed = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    Graph::from_edges(declared.unwrap_or(needed).max(needed), edges)
}

/// Parses either format: JSON when the first non-blank character is `{`.
pub fn parse_graph(text: &str) -> Result<Graph> {
    if text.trim_start().starts_with('{') {
        from_json(text)
    } else {
        from_edge_list(text)
    }
}

pub fn read_graph(path: impl AsRef<Path>) -> Result<Graph> {
    parse_graph(&std::fs::read_to_string(path)?)
}

pub fn write_graph(path: impl AsRef<Path>, g: &Graph) -> Result<()> {
    std::fs::write(path, to_json(g))?;
    Ok(())
}
