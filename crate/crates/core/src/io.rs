//! Text formats.
//!
//! Code file: a header line `n k`, then `k` generator rows of exactly `n`
//! characters from `{0,1}`, coordinate 1 leftmost.
//!
//! Graph file: a header line `V E`, then `E` lines `u v` with
//! `0 <= u, v < V` and `u != v`. Edge `i` (0-indexed by line order) is
//! coordinate `i + 1` of the cut space; repeated lines are parallel edges.
//!
//! Trailing whitespace on a line is ignored, as are blank lines after the
//! last row.

use std::path::Path;

use crate::error::{Error, Result};
use crate::gf2::{BitVector, LinearCode};
use crate::graphs::Graph;

/// Numbered lines, 1-indexed.
type Lines<'a> = Vec<(usize, &'a str)>;

/// Header plus exactly `count` body lines; anything after them must be blank.
fn split_body<'a>(text: &'a str, what: &str) -> Result<((usize, usize), Lines<'a>)> {
    let lines: Lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end()))
        .collect();
    let header = parse_header(&lines, what)?;
    let count = header.1;
    let body: Lines = lines.iter().skip(1).take(count).copied().collect();
    if body.len() < count {
        return Err(Error::parse(
            lines.len() + 1,
            1,
            format!(
                "expected {count} lines after the header, found {}",
                body.len()
            ),
        ));
    }
    if let Some(&(ln, _)) = lines.iter().skip(1 + count).find(|(_, l)| !l.is_empty()) {
        return Err(Error::parse(
            ln,
            1,
            format!("unexpected content after {count} lines"),
        ));
    }
    Ok((header, body))
}

fn parse_header(lines: &[(usize, &str)], what: &str) -> Result<(usize, usize)> {
    let Some(&(ln, line)) = lines.first() else {
        return Err(Error::parse(1, 1, format!("missing {what} header")));
    };
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(Error::parse(
            ln,
            1,
            format!("header must be two integers: {what}"),
        ));
    }
    let num = |i: usize| {
        fields[i].parse::<usize>().map_err(|_| {
            let col = line.find(fields[i]).unwrap_or(0) + 1;
            Error::parse(
                ln,
                col,
                format!("not a nonnegative integer: {:?}", fields[i]),
            )
        })
    };
    Ok((num(0)?, num(1)?))
}

/// Parses a code file. A declared `k` larger than the rank is allowed; the
/// resulting code simply has smaller dimension.
pub fn parse_code(text: &str) -> Result<LinearCode> {
    let ((n, k), body) = split_body(text, "n k")?;
    let mut rows = Vec::with_capacity(k);
    for (ln, line) in body {
        let mut row = BitVector::zeros(n);
        let mut count = 0;
        for (col, ch) in line.chars().enumerate() {
            match ch {
                '0' | '1' if col < n => {
                    if ch == '1' {
                        row.set(col);
                    }
                }
                '0' | '1' => {
                    return Err(Error::parse(
                        ln,
                        col + 1,
                        format!("row longer than n = {n}"),
                    ));
                }
                other => {
                    return Err(Error::parse(
                        ln,
                        col + 1,
                        format!("expected '0' or '1', found {other:?}"),
                    ))
                }
            }
            count += 1;
        }
        if count != n {
            return Err(Error::parse(
                ln,
                count + 1,
                format!("row has {count} characters, expected {n}"),
            ));
        }
        rows.push(row);
    }
    LinearCode::from_rows(n, rows)
}

pub fn parse_code_file(path: impl AsRef<Path>) -> Result<LinearCode> {
    parse_code(&std::fs::read_to_string(path)?)
}

/// Writes the generator rows in code-file format.
pub fn write_code(code: &LinearCode) -> String {
    let rows = code.generators().rows();
    let mut out = format!("{} {}\n", code.len(), rows.len());
    for r in rows {
        out.push_str(&r.to_string());
        out.push('\n');
    }
    out
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let ((nv, ne), body) = split_body(text, "V E")?;
    let mut edges = Vec::with_capacity(ne);
    for (ln, line) in body {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(Error::parse(ln, 1, "edge line must be two vertex indices"));
        }
        let mut ends = [0usize; 2];
        for (slot, field) in ends.iter_mut().zip(&fields) {
            let col = line.find(field).unwrap_or(0) + 1;
            *slot = field
                .parse()
                .map_err(|_| Error::parse(ln, col, format!("not a vertex index: {field:?}")))?;
            if *slot >= nv {
                return Err(Error::parse(
                    ln,
                    col,
                    format!("vertex {slot} out of range 0..{nv}"),
                ));
            }
        }
        if ends[0] == ends[1] {
            return Err(Error::parse(
                ln,
                1,
                format!("self-loop at vertex {}", ends[0]),
            ));
        }
        edges.push((ends[0], ends[1]));
    }
    Graph::new(nv, edges)
}

pub fn parse_graph_file(path: impl AsRef<Path>) -> Result<Graph> {
    parse_graph(&std::fs::read_to_string(path)?)
}

/// Normalized graph file: single spaces, one trailing newline per line.
pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.num_vertices(), g.num_edges());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Parses a 1-indexed subset of `[n]` given as `2,3` (or an empty string).
pub fn parse_subset(spec: &str, n: usize) -> Result<BitVector> {
    parse_indices(
        spec.split(',')
            .map(str::trim)
            .enumerate()
            .map(|(i, t)| (1, i + 1, t)),
        n,
    )
}

/// Parses one 1-indexed coordinate per line.
pub fn parse_subset_lines(text: &str, n: usize) -> Result<BitVector> {
    parse_indices(
        text.lines().enumerate().map(|(i, t)| (i + 1, 1, t.trim())),
        n,
    )
}

fn parse_indices<'a>(
    items: impl Iterator<Item = (usize, usize, &'a str)>,
    n: usize,
) -> Result<BitVector> {
    let mut s = BitVector::zeros(n);
    for (line, col, tok) in items {
        if tok.is_empty() {
            continue;
        }
        let i: usize = tok
            .parse()
            .map_err(|_| Error::parse(line, col, format!("not an index: {tok:?}")))?;
        if i == 0 || i > n {
            return Err(Error::parse(
                line,
                col,
                format!("index {i} outside 1..={n}"),
            ));
        }
        s.set(i - 1);
    }
    Ok(s)
}
