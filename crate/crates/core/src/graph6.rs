//! graph6 encoding.
//!
//! A graph6 line is a size field `N(n)` followed by the upper triangle of the
//! adjacency matrix read column by column (`x(0,1), x(0,2), x(1,2), x(0,3), ...`),
//! packed big-endian six bits per byte, each byte offset by 63.
//!
//! `N(n)` is one byte `n + 63` for `n <= 62`, the byte 126 followed by three
//! bytes (18 bits) for `n <= 258047`, and two 126 bytes followed by six bytes
//! (36 bits) above that.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::Graph;

const OFFSET: u8 = 63;
const MAX_BYTE: u8 = 126;
const HEADER: &[u8] = b">>graph6<<";

/// Largest vertex count the format can express.
pub const GRAPH6_MAX_N: u64 = (1 << 36) - 1;

fn encode_size(n: usize, out: &mut Vec<u8>) {
    let n = n as u64;
    if n <= 62 {
        out.push(n as u8 + OFFSET);
    } else if n <= 258_047 {
        out.push(MAX_BYTE);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + OFFSET);
        }
    } else {
        out.push(MAX_BYTE);
        out.push(MAX_BYTE);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + OFFSET);
        }
    }
}

fn sextet(b: u8) -> Result<u64> {
    if !(OFFSET..=MAX_BYTE).contains(&b) {
        return Err(Error::Graph6(format!("byte {b} outside [63, 126]")));
    }
    Ok(u64::from(b - OFFSET))
}

/// Returns `(n, bytes consumed)`.
fn decode_size(data: &[u8]) -> Result<(u64, usize)> {
    let first = *data
        .first()
        .ok_or_else(|| Error::Graph6("empty input".into()))?;
    let first = sextet(first)?;
    if first < 63 {
        return Ok((first, 1));
    }
    let (width, start) = if data.get(1) == Some(&MAX_BYTE) {
        (6, 2)
    } else {
        (3, 1)
    };
    let field = data
        .get(start..start + width)
        .ok_or_else(|| Error::Graph6("truncated size field".into()))?;
    let mut n = 0u64;
    for &b in field {
        n = (n << 6) | sextet(b)?;
    }
    Ok((n, start + width))
}

/// Encodes `g` as a graph6 line (no trailing newline).
pub fn emit_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    encode_size(n, &mut out);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(acc + OFFSET);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + OFFSET);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

/// Decodes one graph6 line. A leading `>>graph6<<` header and trailing
/// whitespace are accepted.
pub fn parse_graph6(line: &[u8]) -> Result<Graph> {
    let mut data = line;
    if data.starts_with(HEADER) {
        data = &data[HEADER.len()..];
    }
    while let Some((&last, rest)) = data.split_last() {
        if last.is_ascii_whitespace() {
            data = rest;
        } else {
            break;
        }
    }
    let (n, used) = decode_size(data)?;
    if n == 0 {
        return Err(Error::Graph6("graph must have >= 1 vertex".into()));
    }
    let body = &data[used..];
    let bits = u128::from(n) * u128::from(n - 1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() as u128 != expected {
        return Err(Error::Graph6(format!(
            "expected {expected} data bytes for n = {n}, found {}",
            body.len()
        )));
    }
    // Body length matches, so n(n-1)/2 fits comfortably in memory terms of `line`.
    let n = usize::try_from(n).map_err(|_| Error::Graph6("n exceeds address space".into()))?;

    let mut edges = BTreeSet::new();
    let (mut i, mut j) = (0usize, 1usize);
    let mut remaining = bits as usize;
    for &b in body {
        let v = sextet(b)?;
        let take = remaining.min(6);
        for k in 0..take {
            if (v >> (5 - k)) & 1 == 1 {
                edges.insert((i, j));
            }
            i += 1;
            if i == j {
                i = 0;
                j += 1;
            }
        }
        if take < 6 && v & ((1 << (6 - take)) - 1) != 0 {
            return Err(Error::Graph6("nonzero padding bits".into()));
        }
        remaining -= take;
    }
    Graph::new(n, edges)
}

/// Parses a stream of graph6 lines, skipping blank lines. Errors carry the
/// 1-based line number.
pub fn parse_graph6_lines(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(idx, l)| {
            parse_graph6(l.trim().as_bytes()).map_err(|e| Error::Parse {
                line: idx + 1,
                message: e.to_string(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn size_byte_arithmetic() {
        // 'D' = 68, n = 5, 10 triangle bits -> 2 data bytes.
        let g = parse_graph6(b"D??").unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn k2() {
        // Independent encoding: one triangle bit set, left-aligned in a sextet: 0b100000 = 32.
        let expected = [2u8 + 63, 32 + 63];
        assert_eq!(&expected, b"A_");
        let g = parse_graph6(&expected).unwrap();
        assert_eq!(g, Graph::new(2, [(0, 1)]).unwrap());
        assert_eq!(emit_graph6(&g), "A_");
    }

    #[test]
    fn known_string() {
        let g = Graph::new(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(emit_graph6(&g), "DQc");
    }

    #[test]
    fn single_vertex_and_header() {
        let g = parse_graph6(b">>graph6<<@\n").unwrap();
        assert_eq!(g.n(), 1);
        assert_eq!(emit_graph6(&g), "@");
    }

    #[test]
    fn extended_size_field() {
        let g = Graph::new(63, [(0, 62)]).unwrap();
        let s = emit_graph6(&g);
        assert_eq!(&s.as_bytes()[..4], &[126, 63, 63, 63 + 63]);
        assert_eq!(parse_graph6(s.as_bytes()).unwrap(), g);
    }

    #[test]
    fn malformed_inputs() {
        assert!(parse_graph6(b"").is_err());
        assert!(parse_graph6(b"?").is_err()); // n = 0
        assert!(parse_graph6(b"A\x7f").is_err()); // byte 127
        assert!(parse_graph6(b"A ").is_err()); // truncated after whitespace trim
        assert!(parse_graph6(b"A_?").is_err()); // too many bytes
        assert!(parse_graph6(b"A`").is_err()); // padding bit set (0b100001)
        assert!(parse_graph6(b"~").is_err());
        assert!(parse_graph6(b"~~??").is_err());
    }

    #[test]
    fn huge_declared_size_is_rejected_without_allocation() {
        let err = parse_graph6(b"~~~~~~~~").unwrap_err();
        assert!(matches!(err, Error::Graph6(_)));
    }

    #[test]
    fn line_stream() {
        let gs = parse_graph6_lines("A_\n\nD??\n").unwrap();
        assert_eq!(gs.len(), 2);
        let err = parse_graph6_lines("A_\nA`\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }
}
