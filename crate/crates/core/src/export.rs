//! Deterministic text serializations of a [`Graph`].
//!
//! All formats list edges `u v` with `u < v` in lexicographic order.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use serde::Serialize;

use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    /// One `u v` line per edge, LF-terminated.
    EdgeList,
    /// `graph G { ... }` with one `u -- v;` statement per edge.
    Dot,
    /// `{"n":5,"edges":[[0,1],...]}`
    Json,
}

impl FromStr for ExportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "edge-list" => Ok(ExportFormat::EdgeList),
            "dot" => Ok(ExportFormat::Dot),
            "json" => Ok(ExportFormat::Json),
            other => Err(format!("unknown export format `{other}`")),
        }
    }
}

impl fmt::Display for ExportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExportFormat::EdgeList => "edge-list",
            ExportFormat::Dot => "dot",
            ExportFormat::Json => "json",
        })
    }
}

#[derive(Serialize)]
struct JsonGraph {
    n: usize,
    edges: Vec<[usize; 2]>,
}

pub fn write_graph<W: Write + ?Sized>(
    g: &Graph,
    format: ExportFormat,
    out: &mut W,
) -> io::Result<()> {
    match format {
        ExportFormat::EdgeList => {
            for (u, v) in g.edges() {
                writeln!(out, "{u} {v}")?;
            }
        }
        ExportFormat::Dot => {
            writeln!(out, "graph G {{")?;
            for (u, v) in g.edges() {
                writeln!(out, "  {u} -- {v};")?;
            }
            writeln!(out, "}}")?;
        }
        ExportFormat::Json => {
            let doc = JsonGraph {
                n: g.vertex_count(),
                edges: g.edges().map(|(u, v)| [u, v]).collect(),
            };
            serde_json::to_writer(&mut *out, &doc)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

pub fn export_graph(g: &Graph, format: ExportFormat) -> Vec<u8> {
    let mut buf = Vec::new();
    write_graph(g, format, &mut buf).expect("writing to a Vec cannot fail");
    buf
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn five_cycle_edge_list() {
        let g = Graph::paley(5).unwrap();
        let out = String::from_utf8(export_graph(&g, ExportFormat::EdgeList)).unwrap();
        assert_eq!(out, "0 1\n0 4\n1 2\n2 3\n3 4\n");
    }

    #[test]
    fn five_cycle_json() {
        let g = Graph::paley(5).unwrap();
        let out = String::from_utf8(export_graph(&g, ExportFormat::Json)).unwrap();
        assert_eq!(
            out.trim_end(),
            r#"{"n":5,"edges":[[0,1],[0,4],[1,2],[2,3],[3,4]]}"#
        );
    }

    #[test]
    fn five_cycle_dot() {
        let g = Graph::paley(5).unwrap();
        let out = String::from_utf8(export_graph(&g, ExportFormat::Dot)).unwrap();
        assert_eq!(
            out,
            "graph G {\n  0 -- 1;\n  0 -- 4;\n  1 -- 2;\n  2 -- 3;\n  3 -- 4;\n}\n"
        );
    }

    #[test]
    fn empty_graph_edge_list() {
        assert!(export_graph(&Graph::empty(3), ExportFormat::EdgeList).is_empty());
    }

    #[test]
    fn format_names_round_trip() {
        for f in [
            ExportFormat::EdgeList,
            ExportFormat::Dot,
            ExportFormat::Json,
        ] {
            assert_eq!(f.to_string().parse::<ExportFormat>(), Ok(f));
        }
        assert!("xml".parse::<ExportFormat>().is_err());
    }
}
