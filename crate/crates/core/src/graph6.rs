//! The graph6 text encoding and corpus files built from it.
//!
//! A graph6 line is `N(n) R(x)`: the order in one, four or eight printable
//! bytes, then the upper triangle of the adjacency matrix in column order
//! (`x(0,1) x(0,2) x(1,2) x(0,3) ...`), six bits per byte, each byte offset
//! by 63. An optional `>>graph6<<` prefix is accepted.

use crate::error::{Error, Graph6ErrorKind, Result};
use crate::graph::{SimpleGraph, Vertex};

const HEADER: &str = ">>graph6<<";

fn err(offset: usize, kind: Graph6ErrorKind) -> Error {
    Error::Graph6 { offset, kind }
}

pub fn parse_graph6(text: &str) -> Result<SimpleGraph> {
    let line = text.trim_end_matches(['\n', '\r']);
    let (bytes, base) = match line.strip_prefix(HEADER) {
        Some(rest) => (rest.as_bytes(), HEADER.len()),
        None if line.starts_with(">>") => return Err(err(0, Graph6ErrorKind::BadHeader)),
        None => (line.as_bytes(), 0),
    };
    if bytes.is_empty() {
        return Err(err(base, Graph6ErrorKind::Empty));
    }
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(err(base + i, Graph6ErrorKind::ByteOutOfRange(b)));
        }
    }
    let (n, mut pos) = decode_order(bytes, base)?;
    let bits_needed = n * n.saturating_sub(1) / 2;
    let bytes_needed = bits_needed.div_ceil(6);
    let body = &bytes[pos..];
    if body.len() < bytes_needed {
        return Err(err(base + bytes.len(), Graph6ErrorKind::Truncated));
    }
    if body.len() > bytes_needed {
        return Err(err(base + pos + bytes_needed, Graph6ErrorKind::TrailingData));
    }

    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    // Padding bits of the last byte must be zero.
    if k % 6 != 0 {
        let last = body[k / 6] - 63;
        if last & ((1 << (6 - k % 6)) - 1) != 0 {
            return Err(err(base + pos + k / 6, Graph6ErrorKind::NonZeroPadding));
        }
    }
    pos += bytes_needed;
    debug_assert_eq!(pos, bytes.len());
    Ok(SimpleGraph::from_edges(n, &edges))
}

fn decode_order(bytes: &[u8], base: usize) -> Result<(usize, usize)> {
    let six = |b: u8| (b - 63) as usize;
    if bytes[0] != 126 {
        return Ok((six(bytes[0]), 1));
    }
    if bytes.len() >= 2 && bytes[1] == 126 {
        if bytes.len() < 8 {
            return Err(err(base + bytes.len(), Graph6ErrorKind::BadHeader));
        }
        let n = bytes[2..8].iter().fold(0usize, |acc, &b| acc << 6 | six(b));
        return Ok((n, 8));
    }
    if bytes.len() < 4 {
        return Err(err(base + bytes.len(), Graph6ErrorKind::BadHeader));
    }
    let n = bytes[1..4].iter().fold(0usize, |acc, &b| acc << 6 | six(b));
    Ok((n, 4))
}

pub fn emit_graph6(g: &SimpleGraph) -> String {
    let n = g.order();
    let mut out: Vec<u8> = Vec::new();
    if n < 63 {
        out.push(n as u8 + 63);
    } else if n < 258_048 {
        out.push(126);
        out.extend((0..3).rev().map(|s| ((n >> (6 * s)) & 63) as u8 + 63));
    } else {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|s| ((n >> (6 * s)) & 63) as u8 + 63));
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 output is ASCII")
}

/// One non-comment line of a corpus file.
#[derive(Debug)]
pub struct CorpusEntry {
    /// 1-based line number in the file.
    pub line: usize,
    pub text: String,
    pub graph: Result<SimpleGraph>,
}

/// Splits a corpus file into graph6 lines, skipping blanks and `#` comments.
pub fn read_corpus(contents: &str) -> Vec<CorpusEntry> {
    contents
        .lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let text = raw.trim();
            if text.is_empty() || text.starts_with('#') {
                return None;
            }
            Some(CorpusEntry { line: i + 1, text: text.to_string(), graph: parse_graph6(text) })
        })
        .collect()
}
