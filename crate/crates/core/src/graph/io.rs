//! Text formats: edge lists, DOT and JSON.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::{Graph, GraphError, Labels};

/// JSON shape of a graph. Labels are binary strings, least significant
/// coordinate first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub order: usize,
    pub size: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl Graph {
    /// `"n m"` header, then one `"u v"` line per edge with `u < v`.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.order(), self.size());
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    /// Parses the edge-list format. Blank lines and `#` comments are skipped.
    pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let parse_pair = |line: usize, l: &str| -> Result<(usize, usize), GraphError> {
            let err = |message: String| GraphError::Parse { line, message };
            let mut it = l.split_whitespace();
            let a = it.next().ok_or_else(|| err("missing field".into()))?;
            let b = it.next().ok_or_else(|| err("missing field".into()))?;
            if it.next().is_some() {
                return Err(err("trailing fields".into()));
            }
            let a = a.parse().map_err(|e| err(format!("{a:?}: {e}")))?;
            let b = b.parse().map_err(|e| err(format!("{b:?}: {e}")))?;
            Ok((a, b))
        };
        let (hline, header) = lines.next().ok_or(GraphError::Parse {
            line: 1,
            message: "empty input".into(),
        })?;
        let (n, m) = parse_pair(hline, header)?;
        let mut edges = Vec::with_capacity(m);
        for (line, l) in lines {
            let (u, v) = parse_pair(line, l)?;
            if u >= v {
                return Err(GraphError::Parse {
                    line,
                    message: format!("expected u < v, got {u} {v}"),
                });
            }
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(GraphError::Parse {
                line: hline,
                message: format!("header declares {m} edges, found {}", edges.len()),
            });
        }
        Graph::from_edges(n, edges)
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for v in 0..self.order() {
            match self.labels() {
                Some(l) => {
                    let _ = writeln!(out, "  {v} [label=\"{}\"];", l.binary(l.masks()[v]));
                }
                None => {
                    let _ = writeln!(out, "  {v};");
                }
            }
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            order: self.order(),
            size: self.size(),
            edges: self.edges().map(|(u, v)| [u, v]).collect(),
            labels: self
                .labels()
                .map(|l| l.masks().iter().map(|&m| l.binary(m)).collect()),
        }
    }

    pub fn from_json(json: &GraphJson) -> Result<Graph, GraphError> {
        let g = Graph::from_edges(json.order, json.edges.iter().map(|e| (e[0], e[1])))?;
        match &json.labels {
            None => Ok(g),
            Some(strings) => {
                let width = strings.first().map_or(0, |s| s.len() as u32);
                let mut masks = Vec::with_capacity(strings.len());
                for (i, s) in strings.iter().enumerate() {
                    if s.len() as u32 != width || s.len() > 64 || s.bytes().any(|b| b != b'0' && b != b'1') {
                        return Err(GraphError::Parse {
                            line: i + 1,
                            message: format!("bad label {s:?}"),
                        });
                    }
                    let mask = s
                        .bytes()
                        .enumerate()
                        .fold(0u64, |acc, (j, b)| acc | (u64::from(b == b'1') << j));
                    masks.push(mask);
                }
                g.with_labels(Labels::new(width, masks)?)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let text = g.to_edge_list();
        assert_eq!(text, "4 3\n0 1\n1 2\n2 3\n");
        assert_eq!(Graph::parse_edge_list(&text).unwrap(), g);
    }

    #[test]
    fn edge_list_errors() {
        assert!(matches!(
            Graph::parse_edge_list(""),
            Err(GraphError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            Graph::parse_edge_list("3 1\n2 1\n"),
            Err(GraphError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            Graph::parse_edge_list("3 2\n0 1\n"),
            Err(GraphError::Parse { .. })
        ));
        assert!(matches!(
            Graph::parse_edge_list("2 1\n0 5\n"),
            Err(GraphError::VertexOutOfRange { vertex: 5, order: 2 })
        ));
        let g = Graph::parse_edge_list("# triangle\n3 3\n0 1\n\n0 2 # diag\n1 2\n").unwrap();
        assert_eq!(g.size(), 3);
    }

    #[test]
    fn dot_and_json_with_labels() {
        let g = Graph::from_edges(2, [(0, 1)])
            .unwrap()
            .with_labels(Labels::new(2, vec![0b01, 0b11]).unwrap())
            .unwrap();
        assert_eq!(
            g.to_dot(),
            "graph G {\n  0 [label=\"10\"];\n  1 [label=\"11\"];\n  0 -- 1;\n}\n"
        );
        let json = g.to_json();
        assert_eq!(json.labels.as_deref(), Some(&["10".to_string(), "11".to_string()][..]));
        assert_eq!(Graph::from_json(&json).unwrap(), g);
    }
}
