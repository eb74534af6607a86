//! Input formats: edge lists, structured graph documents, covers and
//! factorizations. Every error carries a 1-based line number.

use serde::Deserialize;

use crate::bitset::VertexSet;
use crate::cover::{Component, Cover};
use crate::error::{Error, Result};
use crate::factor::IntMatrix;
use crate::graph::Graph;

/// Largest vertex count accepted from a file.
pub const MAX_VERTICES: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    Auto,
    EdgeList,
    Structured,
}

impl std::str::FromStr for GraphFormat {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "auto" => Ok(GraphFormat::Auto),
            "edgelist" => Ok(GraphFormat::EdgeList),
            "structured" => Ok(GraphFormat::Structured),
            other => Err(format!(
                "unknown format '{other}' (auto, edgelist, structured)"
            )),
        }
    }
}

pub fn parse_graph(text: &str, format: GraphFormat) -> Result<Graph> {
    match format {
        GraphFormat::EdgeList => parse_edge_list(text),
        GraphFormat::Structured => parse_structured(text),
        GraphFormat::Auto => {
            if text.trim_start().starts_with('{') {
                parse_structured(text)
            } else {
                parse_edge_list(text)
            }
        }
    }
}

fn vertex_count(raw: &str, line: usize) -> Result<usize> {
    let n: usize = raw
        .parse()
        .map_err(|_| Error::parse(line, format!("'{raw}' is not a vertex count")))?;
    if n > MAX_VERTICES {
        return Err(Error::parse(
            line,
            format!("{n} vertices exceeds the limit of {MAX_VERTICES}"),
        ));
    }
    Ok(n)
}

fn endpoint(raw: &str, n: usize, line: usize) -> Result<usize> {
    let v: usize = raw
        .parse()
        .map_err(|_| Error::parse(line, format!("'{raw}' is not a vertex label")))?;
    if v == 0 || v > n {
        return Err(Error::parse(line, format!("vertex {v} outside 1..={n}")));
    }
    Ok(v)
}

/// `n <N>` then `e <u> <v>` lines; `#` starts a comment.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut g: Option<Graph> = None;
    let mut last = 1;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match (tokens[0], &g) {
            ("n", None) => {
                let [_, count] = tokens[..] else {
                    return Err(Error::parse(line, "expected 'n <count>'"));
                };
                g = Some(Graph::new(vertex_count(count, line)?));
            }
            ("n", Some(_)) => return Err(Error::parse(line, "duplicate 'n' header")),
            ("e", Some(graph)) => {
                let [_, u, v] = tokens[..] else {
                    return Err(Error::parse(line, "expected 'e <u> <v>'"));
                };
                let n = graph.order();
                let (u, v) = (endpoint(u, n, line)?, endpoint(v, n, line)?);
                g.as_mut().expect("header seen").set0(u - 1, v - 1);
            }
            ("e", None) => return Err(Error::parse(line, "edge before the 'n' header")),
            (other, _) => return Err(Error::parse(line, format!("unknown record '{other}'"))),
        }
    }
    g.ok_or_else(|| Error::parse(last, "missing 'n' header"))
}

fn json_error(e: serde_json::Error) -> Error {
    Error::parse(e.line().max(1), e.to_string())
}

/// Line of the first occurrence of `needle` after `key`, for semantic
/// errors found after deserialization.
fn line_of(text: &str, key: &str) -> usize {
    text.find(key)
        .map(|pos| text[..pos].matches('\n').count() + 1)
        .unwrap_or(1)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StructuredGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

/// `{"n": N, "edges": [[u, v], ...]}`, loops as `[u, u]`.
pub fn parse_structured(text: &str) -> Result<Graph> {
    let doc: StructuredGraph = serde_json::from_str(text).map_err(json_error)?;
    let line = line_of(text, "\"n\"");
    if doc.n > MAX_VERTICES {
        return Err(Error::parse(
            line,
            format!("{} vertices exceeds the limit of {MAX_VERTICES}", doc.n),
        ));
    }
    let mut g = Graph::new(doc.n);
    let line = line_of(text, "\"edges\"");
    for (u, v) in doc.edges {
        for w in [u, v] {
            if w == 0 || w > doc.n {
                return Err(Error::parse(
                    line,
                    format!("vertex {w} outside 1..={}", doc.n),
                ));
            }
        }
        g.set0(u - 1, v - 1);
    }
    Ok(g)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CoverDoc {
    order: Option<usize>,
    components: Vec<Vec<usize>>,
    joins: Vec<(usize, usize)>,
}

/// `{"order": k, "components": [[v, ...], ...], "joins": [[i, j], ...]}`
/// over the ground set `1..=n`; joins index the component list from 0.
pub fn parse_cover(text: &str, n: usize) -> Result<Cover> {
    let doc: CoverDoc = serde_json::from_str(text).map_err(json_error)?;
    let cline = line_of(text, "\"components\"");
    let mut comps = Vec::with_capacity(doc.components.len());
    for labels in &doc.components {
        if let Some(&v) = labels.iter().find(|&&v| v == 0 || v > n) {
            return Err(Error::parse(cline, format!("vertex {v} outside 1..={n}")));
        }
        let set = VertexSet::from_iter_width(n, labels.iter().map(|v| v - 1));
        comps.push(Component::new(set).map_err(|e| Error::parse(cline, e.to_string()))?);
    }
    if let Some(k) = doc.order {
        if k != comps.len() {
            return Err(Error::parse(
                line_of(text, "\"order\""),
                format!("order {k} but {} components", comps.len()),
            ));
        }
    }
    Cover::from_parts(n, comps, doc.joins)
        .map_err(|e| Error::parse(line_of(text, "\"joins\""), e.to_string()))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FactorDoc {
    #[serde(rename = "B")]
    b: Vec<Vec<u64>>,
    #[serde(rename = "C")]
    c: Vec<Vec<u64>>,
}

/// `{"B": [[...], ...], "C": [[...], ...]}`, row-major.
pub fn parse_factorization(text: &str) -> Result<(IntMatrix, IntMatrix)> {
    let doc: FactorDoc = serde_json::from_str(text).map_err(json_error)?;
    let b = IntMatrix::from_rows(doc.b)
        .map_err(|e| Error::parse(line_of(text, "\"B\""), e.to_string()))?;
    let c = IntMatrix::from_rows(doc.c)
        .map_err(|e| Error::parse(line_of(text, "\"C\""), e.to_string()))?;
    Ok((b, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;

    #[test]
    fn edge_list_examples() {
        let g = parse_graph("n 4\ne 1 2\ne 2 3\ne 3 4\ne 4 1\n", GraphFormat::Auto).unwrap();
        assert_eq!(g, cycle(4));
        assert_eq!(parse_edge_list("n 1\ne 1 1").unwrap(), looped_vertex());
        let g = parse_edge_list("# header\nn 3 # three\n\ne 1 2\ne 2 1\ne 1 2\n").unwrap();
        assert_eq!(g, Graph::from_edges(3, &[(1, 2)]).unwrap());
    }

    #[test]
    fn edge_list_errors_carry_lines() {
        let cases = [
            ("e 1 2\n", 1),
            ("n 3\ne 1 4\n", 2),
            ("n 3\n\ne 1\n", 3),
            ("n 3\nx 1 2\n", 2),
            ("n 3\nn 3\n", 2),
            ("n -1\n", 1),
            ("# only comments\n", 1),
            ("n 3\ne 0 1\n", 2),
            ("n 99999999999\n", 1),
        ];
        for (text, line) in cases {
            match parse_edge_list(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn structured_looped_band() {
        let text =
            r#"{"n":5, "edges":[[1,2],[1,3],[2,2],[2,3],[2,4],[3,3],[3,4],[3,5],[4,4],[4,5]]}"#;
        let g = parse_graph(text, GraphFormat::Auto).unwrap();
        let loops: Vec<usize> = (0..5).filter(|&v| g.has_loop0(v)).map(|v| v + 1).collect();
        assert_eq!(loops, vec![2, 3, 4]);
        assert_eq!(g.edge_count(), 10);
    }

    #[test]
    fn structured_errors() {
        for text in [
            "{\"n\": 2, \"edges\": [[1, 3]]}",
            "{\"n\": 2}",
            "{\"n\": 2, \"edges\": [[1]]}",
            "{\n\"n\": 2,\n\"edges\": [[1, 2],\n}",
            "{\"n\": 2, \"edges\": [], \"extra\": 1}",
        ] {
            assert!(
                matches!(parse_structured(text), Err(Error::Parse { .. })),
                "{text}"
            );
        }
        match parse_structured("{\n\"n\": 2,\n\"edges\": [[1, 5]]\n}") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn cover_documents() {
        let c = parse_cover(
            r#"{"order": 2, "components": [[2], [1, 3]], "joins": [[0, 1]]}"#,
            3,
        )
        .unwrap();
        assert_eq!(c.order(), 2);
        for bad in [
            r#"{"order": 3, "components": [[2], [1, 3]], "joins": [[0, 1]]}"#,
            r#"{"components": [[2], [1, 4]], "joins": [[0, 1]]}"#,
            r#"{"components": [[2], []], "joins": [[0, 1]]}"#,
            r#"{"components": [[2], [2]], "joins": [[0, 1]]}"#,
            r#"{"components": [[2], [1]], "joins": [[0, 2]]}"#,
            r#"{"components": [[2], [1]], "joins": [[0, 0]]}"#,
        ] {
            assert!(
                matches!(parse_cover(bad, 3), Err(Error::Parse { .. })),
                "{bad}"
            );
        }
    }

    #[test]
    fn factorization_documents() {
        let (b, c) =
            parse_factorization(r#"{"B": [[0,1],[1,0],[0,1]], "C": [[0,1],[1,0]]}"#).unwrap();
        assert_eq!((b.rows(), b.cols(), c.rows()), (3, 2, 2));
        assert!(parse_factorization(r#"{"B": [[0,1],[1]], "C": []}"#).is_err());
        assert!(parse_factorization(r#"{"B": [[-1]], "C": [[0]]}"#).is_err());
    }
}
