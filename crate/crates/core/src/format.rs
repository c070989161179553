//! Plain-text formats: `og` ordered graphs, `col` colourings, `adj`
//! unordered graphs, `mat` 0/1 matrices and the `.blocks` sidecar.
//!
//! Blank lines and lines starting with `#` are ignored on input. Errors carry
//! the 1-based line number of the offending line.

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::constructions::BlockedOrderedGraph;
use crate::error::{Error, Result};
use crate::graph::{Color, Coloring, IntervalPartition, OrderedGraph, UnorderedGraph};
use crate::patterns::BinaryMatrix;
use crate::ramsey::SearchStats;

/// Non-empty, non-comment lines with their line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.trim();
        (!l.is_empty() && !l.starts_with('#')).then(|| (i + 1, l.split_whitespace().collect()))
    })
}

fn number(line: usize, tok: &str, what: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| Error::parse(line, format!("{what} `{tok}` is not a non-negative integer")))
}

fn header<'a>(
    lines: &mut impl Iterator<Item = (usize, Vec<&'a str>)>,
    tag: &str,
    arity: usize,
) -> Result<(usize, Vec<usize>)> {
    let (line, toks) = lines
        .next()
        .ok_or_else(|| Error::parse(1, format!("missing `{tag}` header")))?;
    if toks[0] != tag || toks.len() != arity + 1 {
        return Err(Error::parse(
            line,
            format!("expected header `{tag}` with {arity} fields"),
        ));
    }
    let vals = toks[1..]
        .iter()
        .map(|t| number(line, t, "header field"))
        .collect::<Result<_>>()?;
    Ok((line, vals))
}

/// Reads `e i j` lines for a graph on `n` vertices, rejecting loops,
/// out-of-range endpoints and duplicates. Endpoints may appear in either
/// order.
fn edge_lines<'a>(
    lines: impl Iterator<Item = (usize, Vec<&'a str>)>,
    n: usize,
    m: usize,
    header_line: usize,
) -> Result<Vec<(usize, usize)>> {
    let mut seen = BTreeSet::new();
    let mut last = header_line;
    for (line, toks) in lines {
        last = line;
        if toks[0] != "e" || toks.len() != 3 {
            return Err(Error::parse(line, "expected `e <i> <j>`"));
        }
        let a = number(line, toks[1], "endpoint")?;
        let b = number(line, toks[2], "endpoint")?;
        for v in [a, b] {
            if v == 0 || v > n {
                return Err(Error::parse(line, format!("endpoint {v} out of range 1..={n}")));
            }
        }
        if a == b {
            return Err(Error::parse(line, format!("self-loop at vertex {a}")));
        }
        let e = (a.min(b), a.max(b));
        if !seen.insert(e) {
            return Err(Error::parse(line, format!("duplicate edge {{{}, {}}}", e.0, e.1)));
        }
    }
    if seen.len() != m {
        return Err(Error::parse(
            last,
            format!("header announces {m} edges, found {}", seen.len()),
        ));
    }
    Ok(seen.into_iter().collect())
}

pub fn parse_ordered_graph(text: &str) -> Result<OrderedGraph> {
    let mut lines = content_lines(text);
    let (hl, h) = header(&mut lines, "og", 2)?;
    let edges = edge_lines(lines, h[0], h[1], hl)?;
    OrderedGraph::from_edges(h[0], edges)
}

pub fn serialize_ordered_graph(g: &OrderedGraph) -> String {
    let mut s = format!("og {} {}\n", g.n(), g.edge_count());
    for &(a, b) in g.edges() {
        writeln!(s, "e {a} {b}").unwrap();
    }
    s
}

pub fn parse_unordered_graph(text: &str) -> Result<UnorderedGraph> {
    let mut lines = content_lines(text);
    let (hl, h) = header(&mut lines, "adj", 2)?;
    let edges = edge_lines(lines, h[0], h[1], hl)?;
    UnorderedGraph::from_edges(h[0], edges)
}

pub fn serialize_unordered_graph(g: &UnorderedGraph) -> String {
    let mut s = format!("adj {} {}\n", g.n(), g.edge_count());
    for (a, b) in g.edges() {
        writeln!(s, "e {a} {b}").unwrap();
    }
    s
}

pub fn parse_coloring(text: &str) -> Result<Coloring> {
    let mut lines = content_lines(text);
    let (hl, h) = header(&mut lines, "col", 1)?;
    let n = h[0];
    let total = n * n.saturating_sub(1) / 2;
    let mut coloring = Coloring::monochromatic(n, Color::Red);
    let mut seen = BTreeSet::new();
    let mut last = hl;
    for (line, toks) in lines {
        last = line;
        if toks[0] != "c" || toks.len() != 4 {
            return Err(Error::parse(line, "expected `c <i> <j> <R|B>`"));
        }
        let a = number(line, toks[1], "endpoint")?;
        let b = number(line, toks[2], "endpoint")?;
        if a == 0 || b == 0 || a > n || b > n {
            return Err(Error::parse(line, format!("pair {{{a}, {b}}} out of range 1..={n}")));
        }
        if a == b {
            return Err(Error::parse(line, format!("self-loop at vertex {a}")));
        }
        let color = match toks[3] {
            "R" => Color::Red,
            "B" => Color::Blue,
            other => return Err(Error::parse(line, format!("unknown colour `{other}`"))),
        };
        let e = (a.min(b), a.max(b));
        if !seen.insert(e) {
            return Err(Error::parse(line, format!("pair {{{}, {}}} coloured twice", e.0, e.1)));
        }
        coloring.set(e.0, e.1, color);
    }
    if seen.len() != total {
        return Err(Error::parse(
            last,
            format!("expected {total} coloured pairs, found {}", seen.len()),
        ));
    }
    Ok(coloring)
}

pub fn serialize_coloring(c: &Coloring) -> String {
    let mut s = format!("col {}\n", c.n());
    for (a, b, color) in c.pairs() {
        writeln!(s, "c {a} {b} {}", color.letter()).unwrap();
    }
    s
}

pub fn parse_matrix(text: &str) -> Result<BinaryMatrix> {
    let mut lines = content_lines(text);
    let (_, h) = header(&mut lines, "mat", 2)?;
    let (rows, cols) = (h[0], h[1]);
    let mut entries = Vec::with_capacity(rows);
    let mut last = 1;
    for (line, toks) in lines {
        last = line;
        if toks.len() != 1 || toks[0].len() != cols {
            return Err(Error::parse(line, format!("expected a row of {cols} characters 0/1")));
        }
        let row = toks[0]
            .chars()
            .map(|ch| match ch {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::parse(line, format!("invalid matrix entry `{ch}`"))),
            })
            .collect::<Result<Vec<bool>>>()?;
        entries.push(row);
    }
    if entries.len() != rows {
        return Err(Error::parse(
            last,
            format!("header announces {rows} rows, found {}", entries.len()),
        ));
    }
    BinaryMatrix::from_rows(entries)
}

pub fn serialize_matrix(m: &BinaryMatrix) -> String {
    let mut s = format!("mat {} {}\n", m.rows(), m.cols());
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            s.push(if m.get(r, c) { '1' } else { '0' });
        }
        s.push('\n');
    }
    s
}

/// Blocks, inner and outer edge of a blocked graph. Blocks are listed by
/// size and end at the last vertex.
pub fn serialize_blocks(b: &BlockedOrderedGraph) -> String {
    let mut s = String::from("blocks");
    for size in b.blocks.sizes() {
        write!(s, " {size}").unwrap();
    }
    s.push('\n');
    if let Some((i, j)) = b.inner {
        writeln!(s, "inner {i} {j}").unwrap();
    }
    if let Some((i, j)) = b.outer {
        writeln!(s, "outer {i} {j}").unwrap();
    }
    s
}

/// Parses a `.blocks` sidecar and attaches it to `graph`, checking that the
/// blocks fit and the markers are edges.
pub fn parse_blocks(text: &str, graph: OrderedGraph) -> Result<BlockedOrderedGraph> {
    let mut sizes = None;
    let mut inner = None;
    let mut outer = None;
    for (line, toks) in content_lines(text) {
        match toks[0] {
            "blocks" => {
                let s = toks[1..]
                    .iter()
                    .map(|t| number(line, t, "block size"))
                    .collect::<Result<Vec<_>>>()?;
                if s.iter().sum::<usize>() > graph.n() {
                    return Err(Error::parse(line, "blocks exceed the vertex count"));
                }
                sizes = Some(s);
            }
            tag @ ("inner" | "outer") => {
                if toks.len() != 3 {
                    return Err(Error::parse(line, format!("expected `{tag} <i> <j>`")));
                }
                let e = (number(line, toks[1], "endpoint")?, number(line, toks[2], "endpoint")?);
                if !graph.has_edge(e.0, e.1) {
                    return Err(Error::parse(line, format!("{tag} marker is not an edge")));
                }
                if tag == "inner" {
                    inner = Some(e);
                } else {
                    outer = Some(e);
                }
            }
            other => return Err(Error::parse(line, format!("unknown record `{other}`"))),
        }
    }
    let sizes = sizes.ok_or_else(|| Error::parse(1, "missing `blocks` line"))?;
    Ok(BlockedOrderedGraph {
        graph,
        blocks: IntervalPartition::new(sizes),
        inner,
        outer,
    })
}

/// Parses a comma-separated list of interval sizes such as `2,2,3`.
pub fn parse_sizes(text: &str) -> Result<IntervalPartition> {
    let sizes = text
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::invalid(format!("interval size `{t}` is not an integer")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IntervalPartition::new(sizes))
}

/// `orcert upper` followed by `n`, `nodes` and `prunes` lines: the record of
/// an exhausted avoidance search.
pub fn serialize_upper_certificate(n: usize, stats: &SearchStats) -> String {
    format!("orcert upper\nn {n}\nnodes {}\nprunes {}\n", stats.nodes, stats.prunes)
}

pub fn parse_upper_certificate(text: &str) -> Result<(usize, SearchStats)> {
    let mut lines = content_lines(text);
    match lines.next() {
        Some((_, toks)) if toks == ["orcert", "upper"] => {}
        Some((line, _)) => return Err(Error::parse(line, "expected header `orcert upper`")),
        None => return Err(Error::parse(1, "missing `orcert upper` header")),
    }
    let mut field = |key: &str| -> Result<u64> {
        let (line, toks) = lines
            .next()
            .ok_or_else(|| Error::parse(1, format!("missing `{key}` line")))?;
        if toks.len() != 2 || toks[0] != key {
            return Err(Error::parse(line, format!("expected `{key} <value>`")));
        }
        Ok(number(line, toks[1], key)? as u64)
    };
    let n = field("n")? as usize;
    let stats = SearchStats {
        nodes: field("nodes")?,
        prunes: field("prunes")?,
    };
    Ok((n, stats))
}
