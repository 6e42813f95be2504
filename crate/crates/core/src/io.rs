//! Plain-text edge lists.
//!
//! ```text
//! # optional comments
//! 4 3
//! 0 1
//! 1 2
//! 2 3
//! ```
//!
//! The first content line holds `n m`, followed by exactly `m` lines `u v`.
//! Ordering files carry only the `u v` lines.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn pair(line_no: usize, line: &str) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace();
    let mut next = |what: &str| -> Result<usize> {
        let tok = it.next().ok_or_else(|| Error::Parse {
            line: line_no,
            msg: format!("missing {what}"),
        })?;
        tok.parse().map_err(|_| Error::Parse {
            line: line_no,
            msg: format!("{what} `{tok}` is not a non-negative integer"),
        })
    };
    let a = next("first field")?;
    let b = next("second field")?;
    if let Some(extra) = it.next() {
        return Err(Error::Parse {
            line: line_no,
            msg: format!("unexpected trailing token `{extra}`"),
        });
    }
    Ok((a, b))
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing `n m` header".into(),
    })?;
    let (n, m) = pair(hl, header)?;
    let mut pairs = Vec::with_capacity(m);
    for (no, line) in lines {
        let (u, v) = pair(no, line)?;
        if u >= n || v >= n {
            return Err(Error::Parse {
                line: no,
                msg: format!("endpoint outside 0..{n}"),
            });
        }
        if u == v {
            return Err(Error::Parse {
                line: no,
                msg: format!("self-loop at {u}"),
            });
        }
        pairs.push((u, v));
    }
    if pairs.len() != m {
        return Err(Error::Parse {
            line: hl,
            msg: format!("header declares {m} edges but {} were listed", pairs.len()),
        });
    }
    Graph::new(n, pairs)
}

/// Edge sequence without a header, as used for orderings.
pub fn parse_edge_sequence(text: &str) -> Result<Vec<Edge>> {
    content_lines(text)
        .map(|(no, line)| {
            let (u, v) = pair(no, line)?;
            Edge::try_new(u, v).ok_or(Error::Parse {
                line: no,
                msg: format!("self-loop at {u}"),
            })
        })
        .collect()
}

/// Edge-list text; each line of `comment` becomes a leading `#` line.
pub fn format_graph(g: &Graph, comment: Option<&str>) -> String {
    let mut out = String::new();
    for line in comment.into_iter().flat_map(str::lines) {
        let _ = writeln!(out, "# {line}");
    }
    let _ = writeln!(out, "{} {}", g.n(), g.m());
    for e in g.edges() {
        let _ = writeln!(out, "{} {}", e.lo(), e.hi());
    }
    out
}

pub fn format_edge_sequence(edges: &[Edge]) -> String {
    edges.iter().map(|e| format!("{} {}\n", e.lo(), e.hi())).collect()
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| std::io::Error::new(e.kind(), format!("{}: {e}", path.display())).into())
}

pub fn read_graph(path: &Path) -> Result<Graph> {
    parse_graph(&read_text(path)?)
}

pub fn write_graph(path: &Path, g: &Graph, comment: Option<&str>) -> Result<()> {
    fs::write(path, format_graph(g, comment))?;
    Ok(())
}

/// Writes a spanner, naming its base graph file in the header comment.
pub fn write_subgraph(path: &Path, h: &Graph, base: &Path) -> Result<()> {
    write_graph(path, h, Some(&format!("subgraph of {}", base.display())))
}

pub fn read_edge_sequence(path: &Path) -> Result<Vec<Edge>> {
    parse_edge_sequence(&read_text(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn round_trip() {
        let g = named::cycle(7).with_edge(Edge::new(0, 3));
        let text = format_graph(&g, Some("subgraph of g.edges"));
        assert!(text.starts_with("# subgraph of g.edges\n7 8\n0 1\n0 3\n"));
        assert_eq!(parse_graph(&text).unwrap(), g);
    }

    #[test]
    fn comments_and_blank_lines() {
        let g = parse_graph("# hi\n\n3 2 # header\n0 1\n\n2 1 # reversed\n").unwrap();
        assert_eq!(g, named::path(3));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_graph("3 2\n0 1\n1 x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        assert!(matches!(parse_graph("3 2\n0 1\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_graph("3 1\n0 5\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_graph(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_graph("3 1\n0 1 2\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_graph("3 2\n0 1\n1 0\n"), Err(Error::Input(_))));
    }

    #[test]
    fn edge_sequences() {
        let seq = parse_edge_sequence("2 1\n# c\n0 3\n").unwrap();
        assert_eq!(seq, vec![Edge::new(1, 2), Edge::new(0, 3)]);
        assert_eq!(format_edge_sequence(&seq), "1 2\n0 3\n");
    }
}
