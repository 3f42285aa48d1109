//! Line-oriented text formats. Ids are 1-based on disk.
//!
//! ```text
//! c comment
//! p pvc <n> <m>
//! v <id> <weight>
//! e <u> <v>
//! ```
//!
//! Patches use `p patch <n_old> <c> <mA> <ma>` with `v` lines for the new
//! ids, `e` lines between new vertices and `a <old> <new>` attachment lines.
//! Solutions are `s pvc <k> <size> <weight>` followed by `x <id>` lines.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Graph, InsertionPatch, Vertex, VertexSet, Weight};
use crate::solvers::CoverSolution;

struct Line<'a> {
    number: usize,
    kind: &'a str,
    fields: Vec<&'a str>,
}

fn lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let mut tokens = raw.split_whitespace();
        let kind = tokens.next()?;
        if kind == "c" {
            return None;
        }
        Some(Line {
            number: i + 1,
            kind,
            fields: tokens.collect(),
        })
    })
}

impl Line<'_> {
    fn arity(&self, want: usize) -> Result<()> {
        if self.fields.len() == want {
            Ok(())
        } else {
            Err(Error::parse(
                self.number,
                format!(
                    "`{}` line needs {want} fields, found {}",
                    self.kind,
                    self.fields.len()
                ),
            ))
        }
    }

    fn num(&self, i: usize) -> Result<u64> {
        let field = self.fields[i];
        if field.is_empty() || !field.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::parse(
                self.number,
                format!("`{field}` is not a decimal integer"),
            ));
        }
        field
            .parse()
            .map_err(|_| Error::parse(self.number, format!("`{field}` is out of range")))
    }

    fn id(&self, i: usize, lo: u64, hi: u64) -> Result<Vertex> {
        let id = self.num(i)?;
        if id < lo || id > hi {
            return Err(Error::parse(
                self.number,
                format!("vertex id {id} outside {lo}..={hi}"),
            ));
        }
        Ok((id - 1) as Vertex)
    }

    fn weight(&self, i: usize) -> Result<Weight> {
        let w = self.num(i)?;
        if w < 1 {
            return Err(Error::parse(
                self.number,
                "vertex weights must be at least 1",
            ));
        }
        Ok(w)
    }
}

fn header<'a>(text: &'a str, magic: &str, arity: usize) -> Result<Line<'a>> {
    let mut found: Option<Line> = None;
    for line in lines(text).filter(|l| l.kind == "p") {
        if let Some(first) = &found {
            return Err(Error::parse(
                line.number,
                format!("second `p` line (first on line {})", first.number),
            ));
        }
        found = Some(line);
    }
    let line = found.ok_or_else(|| Error::parse(0, "missing `p` line"))?;
    if line.fields.first() != Some(&magic) {
        return Err(Error::parse(
            line.number,
            format!("expected `p {magic} ...`"),
        ));
    }
    line.arity(arity + 1)?;
    Ok(line)
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let p = header(text, "pvc", 2)?;
    let n = p.num(1)?;
    let m = p.num(2)?;
    let mut weights: Vec<Option<Weight>> = vec![None; n as usize];
    let mut edges = Vec::new();
    let mut seen = HashSet::new();
    for line in lines(text) {
        match line.kind {
            "p" => {}
            "v" => {
                line.arity(2)?;
                let v = line.id(0, 1, n)?;
                if weights[v].replace(line.weight(1)?).is_some() {
                    return Err(Error::parse(
                        line.number,
                        format!("duplicate v-line for {}", v + 1),
                    ));
                }
            }
            "e" => {
                line.arity(2)?;
                let (u, v) = (line.id(0, 1, n)?, line.id(1, 1, n)?);
                if u == v {
                    return Err(Error::parse(line.number, "self-loop"));
                }
                if !seen.insert((u.min(v), u.max(v))) {
                    return Err(Error::parse(line.number, "duplicate edge"));
                }
                edges.push((u, v));
            }
            other => {
                return Err(Error::parse(
                    line.number,
                    format!("unknown line type `{other}`"),
                ))
            }
        }
    }
    if edges.len() as u64 != m {
        return Err(Error::parse(
            p.number,
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    let weights = weights.into_iter().map(|w| w.unwrap_or(1)).collect();
    Graph::new(weights, &edges).map_err(|e| Error::parse(0, e.to_string()))
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p pvc {} {}", g.vertex_count(), g.edge_count());
    for v in g.vertices() {
        let _ = writeln!(out, "v {} {}", v + 1, g.weight(v));
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}

pub fn parse_patch(text: &str) -> Result<InsertionPatch> {
    let p = header(text, "patch", 4)?;
    let n_old = p.num(1)?;
    let c = p.num(2)?;
    let (m_internal, m_attach) = (p.num(3)?, p.num(4)?);
    let (lo, hi) = (n_old + 1, n_old + c);
    let mut weights: Vec<Option<Weight>> = vec![None; c as usize];
    let mut internal = Vec::new();
    let mut attach = Vec::new();
    let mut seen = HashSet::new();
    for line in lines(text) {
        match line.kind {
            "p" => {}
            "v" => {
                line.arity(2)?;
                let v = line.id(0, lo, hi)?;
                let slot = &mut weights[v - n_old as usize];
                if slot.replace(line.weight(1)?).is_some() {
                    return Err(Error::parse(
                        line.number,
                        format!("duplicate v-line for {}", v + 1),
                    ));
                }
            }
            "e" => {
                line.arity(2)?;
                let (u, v) = (line.id(0, lo, hi)?, line.id(1, lo, hi)?);
                if u == v {
                    return Err(Error::parse(line.number, "self-loop"));
                }
                if !seen.insert((u.min(v), u.max(v))) {
                    return Err(Error::parse(line.number, "duplicate edge"));
                }
                internal.push((u.min(v), u.max(v)));
            }
            "a" => {
                line.arity(2)?;
                let old = line.id(0, 1, n_old).map_err(|_| {
                    Error::parse(line.number, "a-line must start with an old vertex id")
                })?;
                let new = line.id(1, lo, hi).map_err(|_| {
                    Error::parse(line.number, "a-line must end with a new vertex id")
                })?;
                if !seen.insert((old, new)) {
                    return Err(Error::parse(line.number, "duplicate edge"));
                }
                attach.push((old, new));
            }
            other => {
                return Err(Error::parse(
                    line.number,
                    format!("unknown line type `{other}`"),
                ))
            }
        }
    }
    if internal.len() as u64 != m_internal || attach.len() as u64 != m_attach {
        return Err(Error::parse(
            p.number,
            format!(
                "header declares {m_internal} e-lines and {m_attach} a-lines, found {} and {}",
                internal.len(),
                attach.len()
            ),
        ));
    }
    let added = weights
        .into_iter()
        .enumerate()
        .map(|(i, w)| (n_old as usize + i, w.unwrap_or(1)))
        .collect();
    InsertionPatch::new(n_old as usize, added, internal, attach)
        .map_err(|e| Error::parse(0, e.to_string()))
}

pub fn write_patch(patch: &InsertionPatch) -> String {
    let mut internal = patch.internal_edges().to_vec();
    internal
        .iter_mut()
        .for_each(|e| *e = (e.0.min(e.1), e.0.max(e.1)));
    internal.sort_unstable();
    let mut attach = patch.attachment_edges().to_vec();
    attach.sort_unstable();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "p patch {} {} {} {}",
        patch.old_vertex_count(),
        patch.added_count(),
        internal.len(),
        attach.len()
    );
    for &(v, w) in patch.added() {
        let _ = writeln!(out, "v {} {}", v + 1, w);
    }
    for (u, v) in internal {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    for (old, new) in attach {
        let _ = writeln!(out, "a {} {}", old + 1, new + 1);
    }
    out
}

/// Parses a solution against the graph it covers; the stated weight must
/// match the recomputed one.
pub fn parse_solution(text: &str, g: &Graph) -> Result<CoverSolution> {
    let s_lines: Vec<Line> = lines(text).filter(|l| l.kind == "s").collect();
    let s = match s_lines.as_slice() {
        [] => return Err(Error::parse(0, "missing `s` line")),
        [one] => one,
        [_, second, ..] => return Err(Error::parse(second.number, "second `s` line")),
    };
    if s.fields.first() != Some(&"pvc") {
        return Err(Error::parse(s.number, "expected `s pvc ...`"));
    }
    s.arity(4)?;
    let k = s.num(1)? as usize;
    let size = s.num(2)?;
    let stated = s.num(3)?;
    let mut vertices = VertexSet::new();
    for line in lines(text) {
        match line.kind {
            "s" => {}
            "x" => {
                line.arity(1)?;
                let v = line.id(0, 1, g.vertex_count() as u64)?;
                if !vertices.insert(v) {
                    return Err(Error::parse(
                        line.number,
                        format!("duplicate x-line for {}", v + 1),
                    ));
                }
            }
            other => {
                return Err(Error::parse(
                    line.number,
                    format!("unknown line type `{other}`"),
                ))
            }
        }
    }
    if vertices.len() as u64 != size {
        return Err(Error::parse(
            s.number,
            format!("header declares {size} vertices, found {}", vertices.len()),
        ));
    }
    if k < 2 {
        return Err(Error::parse(s.number, "k must be at least 2"));
    }
    let sol = CoverSolution::new(g, k, vertices);
    if sol.weight() != stated {
        return Err(Error::WeightMismatch {
            stated,
            actual: sol.weight(),
        });
    }
    Ok(sol)
}

pub fn write_solution(sol: &CoverSolution) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "s pvc {} {} {}",
        sol.k(),
        sol.cardinality(),
        sol.weight()
    );
    for v in sol.vertices() {
        let _ = writeln!(out, "x {}", v + 1);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const PATH4: &str = "p pvc 4 3\nv 1 1\nv 2 1\nv 3 1\nv 4 1\ne 1 2\ne 2 3\ne 3 4\n";

    #[test]
    fn parses_weighted_edge() {
        let g = parse_graph("p pvc 2 1\nv 1 5\nv 2 5\ne 1 2\n").unwrap();
        assert_eq!(g.weights(), &[5, 5]);
        assert!(g.has_edge(0, 1));
    }

    #[test]
    fn canonical_round_trip_and_any_order() {
        let g = parse_graph(PATH4).unwrap();
        assert_eq!(write_graph(&g), PATH4);
        let shuffled =
            "c hand written\ne 4 3\nv 2 1\np pvc 4 3\n\ne 2 1\nv 1 1\ne 3 2\nv 4 1\nv 3 1\n";
        assert_eq!(write_graph(&parse_graph(shuffled).unwrap()), PATH4);
    }

    #[test]
    fn graph_errors() {
        let err = parse_graph("p pvc 2 1\nv 1 1\nv 2 1\ne 1 3\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }));
        assert!(parse_graph("p pvc 2 1\nv 1 0\nv 2 1\ne 1 2\n").is_err());
        assert!(parse_graph("p pvc 2 2\ne 1 2\ne 2 1\n").is_err());
        assert!(parse_graph("p pvc 2 0\nq 1\n").is_err());
        assert!(parse_graph("p pvc 2 1\n").is_err());
        assert!(parse_graph("v 1 1\n").is_err());
        assert!(parse_graph("p pvc 2 0\nv 1 -3\n").is_err());
    }

    #[test]
    fn patch_formats() {
        let patch = parse_patch("p patch 3 1 0 1\nv 4 5\na 3 4\n").unwrap();
        assert_eq!(patch.added(), &[(3, 5)]);
        assert_eq!(patch.attachment_edges(), &[(2, 3)]);
        assert_eq!(write_patch(&patch), "p patch 3 1 0 1\nv 4 5\na 3 4\n");

        let empty = parse_patch("p patch 3 0 0 0\n").unwrap();
        assert_eq!(empty.added_count(), 0);

        let err = parse_patch("p patch 3 2 0 1\nv 4 1\nv 5 1\na 4 5\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }));
        assert!(parse_patch("p patch 3 2 1 0\nv 4 1\nv 5 1\ne 3 5\n").is_err());
    }

    #[test]
    fn solution_formats() {
        let g = parse_graph(PATH4).unwrap();
        let sol = parse_solution("s pvc 3 1 1\nx 3\n", &g).unwrap();
        assert_eq!(sol.vertices(), &[2].into());
        assert_eq!(write_solution(&sol), "s pvc 3 1 1\nx 3\n");
        assert!(sol.is_feasible());

        let empty = parse_solution("s pvc 4 0 0\n", &g).unwrap();
        assert!(empty.vertices().is_empty());

        assert_eq!(
            parse_solution("s pvc 3 1 7\nx 3\n", &g),
            Err(Error::WeightMismatch {
                stated: 7,
                actual: 1
            })
        );
        assert!(parse_solution("s pvc 3 2 2\nx 3\nx 3\n", &g).is_err());
        assert!(parse_solution("s pvc 3 1 1\nx 9\n", &g).is_err());
    }
}
