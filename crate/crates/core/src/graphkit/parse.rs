use super::{graph6, Graph, GraphError};

/// Parses an edge list `n; u-v,u-v,...`, a named shape (`P5`, `C6`, `K4`,
/// `K1,3`, `grid3x3`) or a graph6 string, in that order of preference.
pub fn parse_graph(input: &str) -> Result<Graph, GraphError> {
    let text = input.trim();
    if text.contains(';') {
        return parse_edge_list(text);
    }
    if let Some(g) = named_graph(text) {
        return g;
    }
    graph6::decode(text)
}

pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let bad = || GraphError::Malformed(format!("edge list `{text}` (expected `n; u-v,...`)"));
    let (head, tail) = text.split_once(';').ok_or_else(bad)?;
    let n: usize = head.trim().parse().map_err(|_| bad())?;
    let mut g = Graph::empty(n)?;
    for item in tail.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (u, v) = item.split_once('-').ok_or_else(bad)?;
        let u: usize = u.trim().parse().map_err(|_| bad())?;
        let v: usize = v.trim().parse().map_err(|_| bad())?;
        g.add_edge(u, v)?;
    }
    Ok(g)
}

/// Recognises named shapes; `None` when `text` is not a shape name.
pub fn named_graph(text: &str) -> Option<Result<Graph, GraphError>> {
    let lower = text.trim().to_ascii_lowercase();
    let num = |s: &str| -> Option<usize> {
        (!s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()))
            .then(|| s.parse().ok())
            .flatten()
    };
    if let Some(rest) = lower.strip_prefix("grid") {
        let (r, c) = rest.trim().split_once('x')?;
        return Some(Graph::grid(num(r)?, num(c)?));
    }
    if let Some(rest) = lower.strip_prefix('p') {
        return Some(Graph::path(num(rest)?));
    }
    if let Some(rest) = lower.strip_prefix('c') {
        return Some(Graph::cycle(num(rest)?));
    }
    if let Some(rest) = lower.strip_prefix('k') {
        if let Some((a, b)) = rest.split_once(',') {
            return Some(Graph::complete_bipartite(num(a)?, num(b)?));
        }
        return Some(Graph::complete(num(rest)?));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_lists() {
        let p3 = parse_graph("3; 0-1,1-2").unwrap();
        assert_eq!(p3, Graph::path(3).unwrap());
        assert_eq!(parse_graph("2; 0-0"), Err(GraphError::Loop(0)));
        assert!(matches!(
            parse_graph("2; 0-5"),
            Err(GraphError::VertexOutOfRange { .. })
        ));
        assert!(matches!(
            parse_graph("3; 0-1,1-0"),
            Err(GraphError::DuplicateEdge(0, 1))
        ));
        assert!(matches!(
            parse_graph("x; 0-1"),
            Err(GraphError::Malformed(_))
        ));
        assert_eq!(parse_graph("4;").unwrap().edge_count(), 0);
        assert_eq!(parse_graph(&p3.to_edge_list()).unwrap(), p3);
    }

    #[test]
    fn names_and_graph6() {
        assert_eq!(parse_graph("P4").unwrap(), Graph::path(4).unwrap());
        assert_eq!(parse_graph("C3").unwrap(), Graph::complete(3).unwrap());
        assert_eq!(parse_graph("K1,3").unwrap(), Graph::star(3).unwrap());
        assert_eq!(parse_graph("grid 3x3").unwrap(), Graph::grid(3, 3).unwrap());
        assert_eq!(parse_graph("Grid2x4").unwrap().n(), 8);
        assert!(parse_graph("C2").is_err());
        assert_eq!(parse_graph("Ch").unwrap(), Graph::path(4).unwrap());
    }
}
