//! graph6 encoding of unlabelled simple graphs.
//!
//! The format packs the upper triangle of the adjacency matrix column by
//! column (x(0,1), x(0,2), x(1,2), x(0,3), ...) into 6-bit groups offset by 63.

use crate::error::{Error, Result};
use crate::graph::{build_graph, LabeledGraph};

const HEADER: &str = ">>graph6<<";

/// Parses one graph6 line. Labels are not part of the format, so the result
/// is unlabelled. Directed (digraph6) and sparse6 inputs are rejected.
pub fn parse_graph6(line: &str) -> Result<LabeledGraph> {
    let mut s = line.trim();
    if let Some(rest) = s.strip_prefix(HEADER) {
        s = rest;
    }
    if s.starts_with('&') || s.starts_with(":") {
        return Err(Error::Graph6(
            "directed or sparse encodings are not supported".into(),
        ));
    }
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(Error::Graph6("empty input".into()));
    }
    for &b in bytes {
        if !(63..=126).contains(&b) {
            return Err(Error::Graph6(format!("invalid byte {b}")));
        }
    }
    let (n, offset) = decode_size(bytes)?;
    let bits_needed = n * n.saturating_sub(1) / 2;
    let available = (bytes.len() - offset) * 6;
    if available < bits_needed {
        return Err(Error::Graph6(format!(
            "truncated: need {bits_needed} adjacency bits, found {available}"
        )));
    }
    let mut edges = Vec::new();
    let mut bit = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = bytes[offset + bit / 6] - 63;
            if byte >> (5 - bit % 6) & 1 == 1 {
                edges.push((i, j));
            }
            bit += 1;
        }
    }
    build_graph(n, &edges, &[])
}

fn decode_size(bytes: &[u8]) -> Result<(usize, usize)> {
    if bytes[0] != 126 {
        return Ok(((bytes[0] - 63) as usize, 1));
    }
    if bytes.len() >= 2 && bytes[1] == 126 {
        if bytes.len() < 8 {
            return Err(Error::Graph6("truncated 8-byte size".into()));
        }
        let mut n: usize = 0;
        for &b in &bytes[2..8] {
            n = n << 6 | (b - 63) as usize;
        }
        Ok((n, 8))
    } else {
        if bytes.len() < 4 {
            return Err(Error::Graph6("truncated 4-byte size".into()));
        }
        let mut n: usize = 0;
        for &b in &bytes[1..4] {
            n = n << 6 | (b - 63) as usize;
        }
        Ok((n, 4))
    }
}

/// Canonical graph6 line for a graph (labels are ignored).
pub fn write_graph6(g: &LabeledGraph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push((n >> shift & 63) as u8 + 63);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push((n >> shift & 63) as u8 + 63);
        }
    }
    let adj = g.adjacency();
    let mut acc: u8 = 0;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc <<= 1;
            if adj.get(i, j) {
                acc |= 1;
            }
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
    String::from_utf8(out).expect("graph6 bytes are printable ascii")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{standard_graph, StandardKind};

    #[test]
    fn known_encodings() {
        // K3 and C5 have well-known single-line encodings.
        let k3 = standard_graph(StandardKind::Complete, 3).unwrap();
        assert_eq!(write_graph6(&k3), "Bw");
        let c5 = standard_graph(StandardKind::Cycle, 5).unwrap();
        let back = parse_graph6(&write_graph6(&c5)).unwrap();
        assert_eq!(back.n(), 5);
        assert_eq!(back.m(), 5);
        assert!(back.is_connected() && !back.is_bipartite());
    }

    #[test]
    fn parses_with_optional_header() {
        let g = parse_graph6(">>graph6<<Bw\n").unwrap();
        assert_eq!((g.n(), g.m()), (3, 3));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_graph6("").is_err());
        assert!(parse_graph6("&Bw").is_err());
        assert!(parse_graph6("D").is_err()); // truncated: 5 vertices need 10 bits
    }
}
