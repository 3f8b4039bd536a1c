use super::{Graph, GraphError};

/// Parses the edge-list format: a header line `n m`, then `m` lines `u v`.
/// Blank lines and lines starting with `#` are skipped.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (line, header) = lines.next().ok_or(GraphError::Malformed {
        line: 0,
        message: "missing header `n m`".into(),
    })?;
    let [n, m] = two_numbers(line, header)?;

    let mut g = Graph::empty(n);
    let mut seen = 0;
    for (line, text) in lines {
        if seen == m {
            return Err(GraphError::Malformed {
                line,
                message: format!("more than the declared {m} edges"),
            });
        }
        let [u, v] = two_numbers(line, text)?;
        g.add_edge(u, v)?;
        seen += 1;
    }
    if seen != m {
        return Err(GraphError::Malformed {
            line: text.lines().count(),
            message: format!("expected {m} edges, found {seen}"),
        });
    }
    Ok(g)
}

fn two_numbers(line: usize, text: &str) -> Result<[usize; 2], GraphError> {
    let malformed = |message: String| GraphError::Malformed { line, message };
    let mut fields = text.split_whitespace();
    let mut out = [0usize; 2];
    for slot in &mut out {
        let field = fields
            .next()
            .ok_or_else(|| malformed(format!("expected two integers, got `{text}`")))?;
        *slot = field
            .parse()
            .map_err(|_| malformed(format!("not a non-negative integer: `{field}`")))?;
    }
    if fields.next().is_some() {
        return Err(malformed(format!("trailing fields in `{text}`")));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::make_named;

    #[test]
    fn smallest_inputs() {
        let k2 = parse_graph("2 1\n0 1\n").unwrap();
        assert_eq!(k2.vertex_count(), 2);
        assert!(k2.has_edge(0, 1));
        let k1 = parse_graph("1 0\n").unwrap();
        assert_eq!((k1.vertex_count(), k1.edge_count()), (1, 0));
    }

    #[test]
    fn t_star_file_matches_builder() {
        let text = "# T*: center x = 0, legs w-v-u\n10 9\n\n0 1\n1 2\n2 3\n0 4\n4 5\n5 6\n0 7\n7 8\n8 9\n";
        assert_eq!(parse_graph(text).unwrap(), make_named("t_star", 0).unwrap());
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse_graph("2 1\n0 x\n"),
            Err(GraphError::Malformed { line: 2, .. })
        ));
        assert!(matches!(
            parse_graph("2 1\n0 2\n"),
            Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
        ));
        assert_eq!(parse_graph("2 1\n1 1\n"), Err(GraphError::SelfLoop(1)));
        assert_eq!(
            parse_graph("2 2\n0 1\n1 0\n"),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert!(matches!(
            parse_graph("3 2\n0 1\n"),
            Err(GraphError::Malformed { .. })
        ));
        assert!(matches!(
            parse_graph("3 1\n0 1\n1 2\n"),
            Err(GraphError::Malformed { line: 3, .. })
        ));
        assert!(matches!(
            parse_graph("3 1 7\n0 1\n"),
            Err(GraphError::Malformed { line: 1, .. })
        ));
        assert!(parse_graph("# nothing\n\n").is_err());
    }

    #[test]
    fn text_round_trip() {
        let g = make_named("spider", 4).unwrap();
        assert_eq!(parse_graph(&g.to_text()).unwrap(), g);
    }
}
