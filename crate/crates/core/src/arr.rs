//! The ARR text format and line-oriented certificate blocks.
//!
//! ```text
//! # comment
//! arrangement <V>
//! v <id> <n0>.<s0> <n1>.<s1> <n2>.<s2> <n3>.<s3>
//! coord <id> <x> <y>
//! outer <vertex>.<slot>
//! ```
//!
//! Each `v` line lists, counterclockwise by slot, the twin of every dart at
//! the vertex. `coord` and `outer` are optional.

use std::fmt::Write as _;

use thiserror::Error;

use crate::connectivity::{CutCertificate, PathCertificate};
use crate::map::{Dart, PlaneGraph, Point};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: syntax error: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {message}")]
    Semantic { line: usize, message: String },
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

fn semantic(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Semantic {
        line,
        message: message.into(),
    }
}

fn parse_ref(line: usize, token: &str) -> Result<(usize, usize), ParseError> {
    let (v, s) = token
        .split_once('.')
        .ok_or_else(|| syntax(line, format!("expected <vertex>.<slot>, got {token:?}")))?;
    let v = v
        .parse()
        .map_err(|_| syntax(line, format!("bad vertex in {token:?}")))?;
    let s = s
        .parse()
        .map_err(|_| syntax(line, format!("bad slot in {token:?}")))?;
    Ok((v, s))
}

fn parse_num<T: std::str::FromStr>(line: usize, token: &str, what: &str) -> Result<T, ParseError> {
    token
        .parse()
        .map_err(|_| syntax(line, format!("bad {what} {token:?}")))
}

/// Twin references of one `v` line and the line it came from.
type Row = ([(usize, usize); 4], usize);

pub fn parse_arr(text: &str) -> Result<PlaneGraph, ParseError> {
    let mut vertex_count: Option<usize> = None;
    let mut rows: Vec<Option<Row>> = Vec::new();
    let mut coords: Vec<Option<Point>> = Vec::new();
    let mut outer: Option<(Dart, usize)> = None;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let Some(n) = vertex_count else {
            if tokens.len() != 2 || tokens[0] != "arrangement" {
                return Err(syntax(line, "expected header `arrangement <V>`"));
            }
            let n: usize = parse_num(line, tokens[1], "vertex count")?;
            if n == 0 {
                return Err(semantic(line, "arrangement has no vertices"));
            }
            vertex_count = Some(n);
            rows = vec![None; n];
            coords = vec![None; n];
            continue;
        };
        let check_vertex = |v: usize| -> Result<(), ParseError> {
            if v >= n {
                Err(semantic(line, format!("vertex {v} out of range (V = {n})")))
            } else {
                Ok(())
            }
        };
        match tokens[0] {
            "v" => {
                if tokens.len() != 6 {
                    return Err(syntax(line, "expected `v <id>` and four twin references"));
                }
                let id: usize = parse_num(line, tokens[1], "vertex id")?;
                check_vertex(id)?;
                if rows[id].is_some() {
                    return Err(semantic(line, format!("vertex {id} defined twice")));
                }
                let mut row = [(0, 0); 4];
                for (slot, token) in tokens[2..].iter().enumerate() {
                    let (tv, ts) = parse_ref(line, token)?;
                    check_vertex(tv)?;
                    if ts >= 4 {
                        return Err(semantic(line, format!("slot {ts} out of range in {token}")));
                    }
                    row[slot] = (tv, ts);
                }
                rows[id] = Some((row, line));
            }
            "coord" => {
                if tokens.len() != 4 {
                    return Err(syntax(line, "expected `coord <id> <x> <y>`"));
                }
                let id: usize = parse_num(line, tokens[1], "vertex id")?;
                check_vertex(id)?;
                let x: f64 = parse_num(line, tokens[2], "coordinate")?;
                let y: f64 = parse_num(line, tokens[3], "coordinate")?;
                coords[id] = Some(Point::new(x, y));
            }
            "outer" => {
                if tokens.len() != 2 {
                    return Err(syntax(line, "expected `outer <vertex>.<slot>`"));
                }
                let (v, s) = parse_ref(line, tokens[1])?;
                check_vertex(v)?;
                if s >= 4 {
                    return Err(semantic(line, format!("slot {s} out of range")));
                }
                outer = Some((Dart::new(v, s), line));
            }
            "arrangement" => return Err(syntax(line, "duplicate header")),
            other => return Err(syntax(line, format!("unknown directive {other:?}"))),
        }
    }

    let Some(n) = vertex_count else {
        return Err(syntax(last_line.max(1), "missing header `arrangement <V>`"));
    };
    let found = rows.iter().filter(|r| r.is_some()).count();
    if found != n {
        return Err(syntax(
            last_line,
            format!("truncated: expected {n} vertex lines, found {found}"),
        ));
    }
    let rows: Vec<([(usize, usize); 4], usize)> = rows.into_iter().map(Option::unwrap).collect();
    for (v, (row, line)) in rows.iter().enumerate() {
        for (s, &(tv, ts)) in row.iter().enumerate() {
            if (tv, ts) == (v, s) {
                return Err(semantic(
                    *line,
                    format!("dart {v}.{s} names itself as twin"),
                ));
            }
            let back = rows[tv].0[ts];
            if back != (v, s) {
                return Err(semantic(
                    *line,
                    format!(
                        "twin mismatch: {v}.{s} names {tv}.{ts}, which names {}.{}",
                        back.0, back.1
                    ),
                ));
            }
        }
    }
    let table: Vec<[(usize, usize); 4]> = rows.iter().map(|r| r.0).collect();
    let graph = PlaneGraph::build(n, &table).map_err(|e| semantic(last_line, e.to_string()))?;
    let graph = graph.with_coords(coords);
    match outer {
        Some((d, line)) => graph
            .with_outer(Some(d))
            .map_err(|e| semantic(line, e.to_string())),
        None => Ok(graph),
    }
}

/// Canonical ARR text: vertices ascending, slots in order, then
/// coordinates, then the outer dart.
pub fn write_arr(g: &PlaneGraph) -> String {
    let mut out = String::new();
    writeln!(out, "arrangement {}", g.vertex_count()).unwrap();
    for v in 0..g.vertex_count() {
        write!(out, "v {v}").unwrap();
        for s in 0..4 {
            write!(out, " {}", g.twin(Dart::new(v, s))).unwrap();
        }
        out.push('\n');
    }
    for (v, p) in g.coords().iter().enumerate() {
        if let Some(p) = p {
            writeln!(out, "coord {v} {} {}", p.x, p.y).unwrap();
        }
    }
    if let Some(d) = g.outer() {
        writeln!(out, "outer {d}").unwrap();
    }
    out
}

fn join_ids(ids: &[usize]) -> String {
    ids.iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

/// `pair: u v` followed by one `path:` line per path.
pub fn write_path_certificate(c: &PathCertificate) -> String {
    let mut out = format!("pair: {} {}\n", c.u, c.v);
    for p in &c.paths {
        writeln!(out, "path: {}", join_ids(p)).unwrap();
    }
    out
}

/// `cut:` then the two `side:` lines.
pub fn write_cut_certificate(c: &CutCertificate) -> String {
    format!(
        "cut: {}\nside: {}\nside: {}\n",
        join_ids(&c.cut),
        join_ids(&c.sides.0),
        join_ids(&c.sides.1)
    )
}

/// Whitespace-separated vertex list.
pub fn write_cycle(order: &[usize]) -> String {
    join_ids(order)
}

pub fn parse_cycle(text: &str) -> Result<Vec<usize>, ParseError> {
    text.split_whitespace()
        .map(|t| parse_num(1, t, "vertex"))
        .collect()
}

/// Path and cut lines collected from a certificate block; other lines are
/// ignored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CertificateBlock {
    pub pairs: Vec<(usize, usize)>,
    pub paths: Vec<Vec<usize>>,
    pub cuts: Vec<Vec<usize>>,
    pub sides: Vec<Vec<usize>>,
}

pub fn parse_certificate_block(text: &str) -> Result<CertificateBlock, ParseError> {
    let mut block = CertificateBlock::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let Some((key, rest)) = raw.split_once(':') else {
            continue;
        };
        let ids = || -> Result<Vec<usize>, ParseError> {
            rest.split_whitespace()
                .map(|t| parse_num(line, t, "vertex"))
                .collect()
        };
        match key.trim() {
            "pair" => {
                let ids = ids()?;
                if ids.len() != 2 {
                    return Err(syntax(line, "pair needs two vertices"));
                }
                block.pairs.push((ids[0], ids[1]));
            }
            "path" => block.paths.push(ids()?),
            "cut" => block.cuts.push(ids()?),
            "side" => block.sides.push(ids()?),
            _ => {}
        }
    }
    Ok(block)
}

#[cfg(test)]
mod tests {
    use super::*;

    const LENS: &str = "\
# two curves crossing twice
arrangement 2
v 0 1.2 1.1 1.0 1.3
v 1 0.2 0.1 0.0 0.3
";

    #[test]
    fn parses_lens() {
        let g = parse_arr(LENS).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(
            write_arr(&g),
            LENS.lines()
                .skip(1)
                .map(|l| format!("{l}\n"))
                .collect::<String>()
        );
    }

    #[test]
    fn out_of_range_vertex_is_semantic() {
        let text = "arrangement 6\nv 3 0.1 0.2 7.0 2.3\n";
        let err = parse_arr(text).unwrap_err();
        assert!(
            matches!(err, ParseError::Semantic { line: 2, .. }),
            "{err:?}"
        );
    }

    #[test]
    fn truncated_file_reports_last_line() {
        let text = "arrangement 2\nv 0 1.2 1.1 1.0 1.3\n";
        let err = parse_arr(text).unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 2, .. }), "{err:?}");
    }

    #[test]
    fn twin_mismatch_is_semantic() {
        let text = "arrangement 2\nv 0 1.2 1.1 1.0 1.3\nv 1 0.2 0.1 0.3 0.0\n";
        let err = parse_arr(text).unwrap_err();
        assert!(matches!(err, ParseError::Semantic { .. }), "{err:?}");
    }

    #[test]
    fn malformed_tokens_are_syntax_errors() {
        for text in [
            "arrangment 2\n",
            "arrangement x\n",
            "arrangement 1\nv 0 0.1 0.0 0.3\n",
            "arrangement 1\nv 0 0-3 0.2 0.1 0.0\n",
            "arrangement 1\nbogus 1\n",
        ] {
            assert!(
                matches!(parse_arr(text), Err(ParseError::Syntax { .. })),
                "{text}"
            );
        }
    }

    #[test]
    fn bad_slot_is_semantic() {
        let err = parse_arr("arrangement 1\nv 0 0.3 0.2 0.1 0.9\n").unwrap_err();
        assert!(matches!(err, ParseError::Semantic { line: 2, .. }));
    }

    #[test]
    fn certificate_block_round_trip() {
        let c = PathCertificate {
            u: 0,
            v: 5,
            paths: vec![vec![0, 1, 5], vec![0, 2, 3, 5]],
        };
        let cut = CutCertificate {
            cut: vec![1, 2],
            sides: (vec![0], vec![3, 5]),
        };
        let text = write_path_certificate(&c) + &write_cut_certificate(&cut);
        let block = parse_certificate_block(&text).unwrap();
        assert_eq!(block.pairs, vec![(0, 5)]);
        assert_eq!(block.paths, c.paths);
        assert_eq!(block.cuts, vec![vec![1, 2]]);
        assert_eq!(block.sides, vec![vec![0], vec![3, 5]]);
        assert_eq!(
            parse_cycle(&write_cycle(&[0, 3, 1])).unwrap(),
            vec![0, 3, 1]
        );
    }
}
