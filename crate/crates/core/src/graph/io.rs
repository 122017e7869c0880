use super::Graph;
use crate::error::{Error, Result};

/// Parses whitespace-separated `u v` lines.
///
/// An optional `n <count>` header fixes the vertex count; otherwise it is
/// one more than the largest index seen. `#` starts a comment.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut declared: Option<usize> = None;
    let mut edges = Vec::new();
    let mut max_index: Option<usize> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens[0] == "n" {
            if tokens.len() != 2 || declared.is_some() {
                return Err(Error::Parse { line: line_no, msg: "malformed `n <count>` header".into() });
            }
            declared = Some(parse_index(tokens[1], line_no)?);
            continue;
        }
        if tokens.len() != 2 {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("expected two vertex indices, found {} tokens", tokens.len()),
            });
        }
        let u = parse_index(tokens[0], line_no)?;
        let v = parse_index(tokens[1], line_no)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        max_index = Some(max_index.map_or(u.max(v), |m| m.max(u).max(v)));
        edges.push((u, v));
    }

    let implied = max_index.map_or(0, |m| m + 1);
    let n = match declared {
        Some(n) if n < implied => {
            return Err(Error::InvalidArgument(format!(
                "header declares {n} vertices but index {} appears",
                implied - 1
            )))
        }
        Some(n) => n,
        None => implied,
    };
    Graph::from_edges(n, edges)
}

fn parse_index(token: &str, line: usize) -> Result<usize> {
    token.parse::<usize>().map_err(|_| Error::Parse { line, msg: format!("`{token}` is not a non-negative integer") })
}

/// Edge-list text with an explicit header, so isolated trailing vertices survive.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.n());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}
