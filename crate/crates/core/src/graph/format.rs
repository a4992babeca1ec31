use serde::{Deserialize, Serialize};

use super::{Graph, GraphError};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
    vertices: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    v_star: Option<usize>,
}

/// `{"vertices":n,"edges":[[t,h],...]}`, with `"v_star"` only when it is not
/// the last vertex.
pub fn graph_to_json(g: &Graph) -> String {
    let j = GraphJson {
        vertices: g.vertex_count(),
        edges: g.edges().iter().map(|&(t, h)| [t, h]).collect(),
        v_star: (g.v_star() != g.vertex_count()).then_some(g.v_star()),
    };
    serde_json::to_string(&j).expect("graph serializes")
}

pub fn graph_from_json(s: &str) -> Result<Graph, GraphError> {
    let j: GraphJson = serde_json::from_str(s).map_err(|e| GraphError::Parse(e.to_string()))?;
    let edges = j.edges.into_iter().map(|[t, h]| (t, h)).collect();
    Graph::with_v_star(j.vertices, edges, j.v_star.unwrap_or(j.vertices))
}

/// First line `n m` (optionally `n m v_star`), then one `t h` line per edge.
pub fn graph_to_text(g: &Graph) -> String {
    let mut out = format!("{} {}", g.vertex_count(), g.edge_count());
    if g.v_star() != g.vertex_count() {
        out.push_str(&format!(" {}", g.v_star()));
    }
    out.push('\n');
    for &(t, h) in g.edges() {
        out.push_str(&format!("{t} {h}\n"));
    }
    out
}

pub fn graph_from_text(s: &str) -> Result<Graph, GraphError> {
    let mut lines = s
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
    let (hline, header) = lines.next().ok_or_else(|| GraphError::Parse("empty input".into()))?;
    let head = numbers(hline, header)?;
    let (n, m, v_star) = match head[..] {
        [n, m] => (n, m, n),
        [n, m, v] => (n, m, v),
        _ => return Err(GraphError::Parse(format!("line {hline}: bad header {:?}", header.trim()))),
    };
    let mut edges = Vec::with_capacity(m);
    for (no, line) in lines {
        match numbers(no, line)?[..] {
            [t, h] => edges.push((t, h)),
            _ => return Err(GraphError::Parse(format!("line {no}: bad edge line {:?}", line.trim()))),
        }
    }
    if edges.len() != m {
        return Err(GraphError::Parse(format!("header promises {m} edges, found {}", edges.len())));
    }
    Graph::with_v_star(n, edges, v_star)
}

/// Whitespace-separated numbers; errors name the line and 1-based column.
fn numbers(no: usize, line: &str) -> Result<Vec<usize>, GraphError> {
    let mut out = Vec::new();
    let mut rest = line;
    while let Some(start) = rest.find(|c: char| !c.is_whitespace()) {
        let tok_end = rest[start..].find(char::is_whitespace).map_or(rest.len(), |e| start + e);
        let tok = &rest[start..tok_end];
        let col = line.len() - rest.len() + start + 1;
        out.push(tok.parse().map_err(|_| GraphError::Parse(format!("line {no}, column {col}: bad number {tok:?}")))?);
        rest = &rest[tok_end..];
    }
    Ok(out)
}

/// JSON if the input starts with `{`, plain text otherwise.
pub fn parse_graph(s: &str) -> Result<Graph, GraphError> {
    if s.trim_start().starts_with('{') {
        graph_from_json(s)
    } else {
        graph_from_text(s)
    }
}
