//! Plain-text graph files. A file is a sequence of lines: `c` comments,
//! one `p forest <n> <m>` header, `e <u> <v>` edges with 1-based
//! endpoints, then optionally `r <v> <n1> <n2> ...` clockwise rotation
//! lines (one per vertex of positive degree) and `f <v1> <v2> ...` outer
//! face walks (at most one per component). Files with rotation lines
//! parse to embedded graphs, plain edge lists to unembedded ones. The
//! emitter is canonical: emitting a parsed file and parsing again is
//! byte-stable.

use anyhow::{anyhow, bail, Context, Result};
use forest::graph::Graph;
use std::collections::HashSet;
use std::fmt::Write as _;

/// A parsed graph file: the graph plus its leading comments.
#[derive(Debug, Clone)]
pub struct GraphFile {
    pub comments: Vec<String>,
    pub graph: Graph,
}

fn vertex_id(token: &str, n: usize, line: usize) -> Result<usize> {
    let v: usize = token
        .parse()
        .with_context(|| format!("line {line}: `{token}` is not a vertex id"))?;
    if v < 1 || v > n {
        bail!("line {line}: vertex {v} out of range 1..={n}");
    }
    Ok(v - 1)
}

/// Parse a graph file, reporting the offending line on failure.
pub fn parse(text: &str) -> Result<GraphFile> {
    let mut comments = Vec::new();
    let mut header: Option<(usize, usize)> = None;
    let mut header_line = 0usize;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    let mut rotations: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    let mut walks: Vec<Vec<usize>> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let t = raw.trim_end();
        if t.is_empty() {
            continue;
        }
        if let Some(rest) = t.strip_prefix('c') {
            if rest.is_empty() {
                comments.push(String::new());
                continue;
            }
            if let Some(body) = rest.strip_prefix(' ') {
                comments.push(body.to_string());
                continue;
            }
        }
        let fields: Vec<&str> = t.split_whitespace().collect();
        let tag = fields[0];
        if tag != "p" && header.is_none() {
            bail!("line {line}: `{tag}` line before the `p forest <n> <m>` header");
        }
        match tag {
            "p" => {
                if header.is_some() {
                    bail!("line {line}: duplicate header");
                }
                if fields.len() != 4 || fields[1] != "forest" {
                    bail!("line {line}: header must be `p forest <n> <m>`");
                }
                let n = fields[2]
                    .parse()
                    .with_context(|| format!("line {line}: bad vertex count"))?;
                let m = fields[3]
                    .parse()
                    .with_context(|| format!("line {line}: bad edge count"))?;
                header = Some((n, m));
                header_line = line;
            }
            "e" => {
                let (n, _) = header.unwrap();
                if fields.len() != 3 {
                    bail!("line {line}: edge line must be `e <u> <v>`");
                }
                let u = vertex_id(fields[1], n, line)?;
                let v = vertex_id(fields[2], n, line)?;
                if u == v {
                    bail!("line {line}: self-loop at vertex {}", u + 1);
                }
                let key = (u.min(v), u.max(v));
                if !seen.insert(key) {
                    bail!("line {line}: duplicate edge {} {}", key.0 + 1, key.1 + 1);
                }
                edges.push(key);
            }
            "r" => {
                let (n, _) = header.unwrap();
                if fields.len() < 3 {
                    bail!("line {line}: rotation line must be `r <v> <n1> ...`");
                }
                let v = vertex_id(fields[1], n, line)?;
                let nbrs = fields[2..]
                    .iter()
                    .map(|t| vertex_id(t, n, line))
                    .collect::<Result<Vec<_>>>()?;
                rotations.push((line, v, nbrs));
            }
            "f" => {
                let (n, _) = header.unwrap();
                if fields.len() < 2 {
                    bail!("line {line}: outer face line must be `f <v1> ...`");
                }
                let walk = fields[1..]
                    .iter()
                    .map(|t| vertex_id(t, n, line))
                    .collect::<Result<Vec<_>>>()?;
                walks.push(walk);
            }
            tag => bail!("line {line}: unrecognized line tag `{tag}`"),
        }
    }

    let Some((n, m)) = header else {
        bail!("missing `p forest <n> <m>` header");
    };
    if edges.len() != m {
        bail!(
            "line {header_line}: header says {m} edges, file has {}",
            edges.len()
        );
    }

    let graph = if rotations.is_empty() {
        if !walks.is_empty() {
            bail!("outer face line without rotation lines");
        }
        Graph::from_edges(n, &edges).context("building the graph")?
    } else {
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let mut rot: Vec<Option<Vec<usize>>> = vec![None; n];
        for (line, v, nbrs) in rotations {
            if rot[v].is_some() {
                bail!("line {line}: second rotation line for vertex {}", v + 1);
            }
            let mut sorted = nbrs.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted != adj[v] {
                bail!(
                    "line {line}: rotation of vertex {} does not match its edges",
                    v + 1
                );
            }
            rot[v] = Some(nbrs);
        }
        let rot = rot
            .into_iter()
            .enumerate()
            .map(|(v, r)| match r {
                Some(list) => Ok(list),
                None if adj[v].is_empty() => Ok(Vec::new()),
                None => Err(anyhow!(
                    "vertex {} has positive degree but no rotation line",
                    v + 1
                )),
            })
            .collect::<Result<Vec<_>>>()?;
        Graph::from_rotations_outer(rot, &walks).context("assembling the embedding")?
    };
    Ok(GraphFile { comments, graph })
}

/// The cyclic list rotated to start at its smallest element.
fn rotate_min_first(list: &[usize]) -> Vec<usize> {
    let k = list
        .iter()
        .enumerate()
        .min_by_key(|&(_, v)| v)
        .map_or(0, |(i, _)| i);
    let mut out = Vec::with_capacity(list.len());
    out.extend_from_slice(&list[k..]);
    out.extend_from_slice(&list[..k]);
    out
}

/// The lexicographically smallest rotation of a walk, orientation kept.
/// Walks may repeat vertices (a bridge is walked twice), so the smallest
/// element alone does not pin the starting point.
fn min_rotation(walk: &[usize]) -> Vec<usize> {
    let k = walk.len();
    let mut best = 0;
    for s in 1..k {
        for i in 0..k {
            let a = walk[(s + i) % k];
            let b = walk[(best + i) % k];
            if a != b {
                if a < b {
                    best = s;
                }
                break;
            }
        }
    }
    (0..k).map(|i| walk[(best + i) % k]).collect()
}

/// Canonical text of a graph file: comments, header, sorted edges, then
/// for embedded graphs rotation lines (each cyclic list starting at its
/// smallest neighbor) and one outer face walk per component.
pub fn emit(file: &GraphFile) -> String {
    let g = &file.graph;
    let mut out = String::new();
    for c in &file.comments {
        if c.is_empty() {
            out.push_str("c\n");
        } else {
            let _ = writeln!(out, "c {c}");
        }
    }
    let _ = writeln!(out, "p forest {} {}", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    if g.is_embedded() {
        for v in 0..g.n() {
            if g.degree(v) == 0 {
                continue;
            }
            let _ = write!(out, "r {}", v + 1);
            for u in rotate_min_first(g.neighbors(v)) {
                let _ = write!(out, " {}", u + 1);
            }
            out.push('\n');
        }
        let faces = g.trace_faces().expect("embedded graph traces");
        for comp in 0..g.components().len() {
            let idx = faces
                .outer_of_component(comp)
                .expect("every component has an outer face");
            out.push('f');
            for v in min_rotation(&faces.faces[idx].vertices) {
                let _ = write!(out, " {}", v + 1);
            }
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use forest::families::make;

    fn canonical(spec: &str) -> String {
        let g = make(&spec.parse().unwrap()).unwrap();
        emit(&GraphFile {
            comments: vec![format!("family: {spec}")],
            graph: g,
        })
    }

    #[test]
    fn emit_parse_emit_is_byte_stable() {
        let specs = [
            "cube",
            "dodecahedron",
            "grid:3x4",
            "hosono:3",
            "cubes:2",
            "cube-minus-edge:1",
            "cubes-linked:2",
            "cycle:6",
            "path:5",
        ];
        for spec in specs {
            let text = canonical(spec);
            let parsed = parse(&text).unwrap_or_else(|e| panic!("{spec}: {e:#}"));
            assert_eq!(emit(&parsed), text, "{spec}");
            let again = parse(&emit(&parsed)).unwrap();
            assert_eq!(again.graph.n(), parsed.graph.n(), "{spec}");
            assert_eq!(again.graph.edges(), parsed.graph.edges(), "{spec}");
            assert!(again.graph.is_embedded(), "{spec}");
        }
    }

    #[test]
    fn unembedded_files_round_trip() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let text = emit(&GraphFile {
            comments: Vec::new(),
            graph: g,
        });
        assert!(!text.contains("\nr "));
        let parsed = parse(&text).unwrap();
        assert!(!parsed.graph.is_embedded());
        assert_eq!(parsed.graph.n(), 5);
        assert_eq!(emit(&parsed), text);
    }

    #[test]
    fn comments_survive_the_round_trip() {
        let text = "c one\nc\nc   spaced\np forest 1 0\n";
        let parsed = parse(text).unwrap();
        assert_eq!(
            parsed.comments,
            vec!["one".to_string(), String::new(), "  spaced".to_string()]
        );
        assert_eq!(emit(&parsed), text);
    }

    #[test]
    fn parse_reports_line_numbers() {
        let err = parse("p forest 3 1\ne 1 5\n").unwrap_err().to_string();
        assert!(err.contains("line 2"), "{err}");

        let err = parse("e 1 2\n").unwrap_err().to_string();
        assert!(err.contains("line 1"), "{err}");

        let err = parse("p forest 2 1\ne 1 2\ne 2 1\n").unwrap_err().to_string();
        assert!(err.contains("line 3") && err.contains("duplicate"), "{err}");

        let err = parse("p forest 2 2\ne 1 2\n").unwrap_err().to_string();
        assert!(err.contains("header says 2 edges"), "{err}");

        let err = parse("p forest 2 1\nq 1 2\n").unwrap_err().to_string();
        assert!(err.contains("line 2") && err.contains("`q`"), "{err}");

        let err = parse("p forest 2 1\ne 1 1\n").unwrap_err().to_string();
        assert!(err.contains("self-loop"), "{err}");
    }

    #[test]
    fn rotation_lines_must_cover_and_match() {
        let base = "p forest 3 3\ne 1 2\ne 1 3\ne 2 3\n";
        let err = parse(&format!("{base}r 1 2 3\nr 2 1 3\n"))
            .unwrap_err()
            .to_string();
        assert!(err.contains("vertex 3"), "{err}");

        let err = parse(&format!("{base}r 1 2 3\nr 2 1 3\nr 3 1 1\n"))
            .unwrap_err()
            .to_string();
        assert!(err.contains("line 7") && err.contains("match"), "{err}");

        let err = parse("p forest 2 1\ne 1 2\nf 1 2\n").unwrap_err().to_string();
        assert!(err.contains("outer face"), "{err}");
    }

    #[test]
    fn embedded_parse_respects_the_outer_walk() {
        // A triangle with a pendant. The default outer face would be the
        // 5-walk around the pendant; the f line picks the triangle instead.
        let text = "p forest 4 4\ne 1 2\ne 1 3\ne 2 3\ne 3 4\nr 1 2 3\nr 2 3 1\nr 3 1 2 4\nr 4 3\nf 1 2 3\n";
        let parsed = parse(text).unwrap();
        let g = &parsed.graph;
        assert!(g.is_embedded());
        let faces = g.trace_faces().unwrap();
        let outer = &faces.faces[faces.outer_of_component(0).unwrap()];
        assert_eq!(outer.len(), 3);
    }
}
