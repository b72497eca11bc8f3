//! graph6 encoding, restricted to the single-byte size header (`n <= 62`).
//!
//! The upper triangle is written column by column, `(0,1), (0,2), (1,2),
//! (0,3), ...`, six bits per byte, most significant bit first, each byte
//! offset by 63. Trailing pad bits are zero.

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const MAX_GRAPH6_VERTICES: usize = 62;

fn data_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

/// Parses one graph6 record. A single trailing `\n` or `\r\n` is accepted.
pub fn parse_graph6(bytes: &[u8]) -> Result<Graph> {
    let bytes = bytes.strip_suffix(b"\n").unwrap_or(bytes);
    let bytes = bytes.strip_suffix(b"\r").unwrap_or(bytes);
    let (&header, data) = bytes.split_first().ok_or_else(|| Error::Graph6("empty record".into()))?;
    if !(63..=126).contains(&header) {
        return Err(Error::Graph6(format!("header byte {header} outside 63..=126")));
    }
    let n = (header - 63) as usize;
    if n > MAX_GRAPH6_VERTICES {
        return Err(Error::Graph6("multi-byte size headers are not supported".into()));
    }
    if n == 0 {
        return Err(Error::Graph6("graph with zero vertices".into()));
    }
    let expected = data_len(n);
    if data.len() != expected {
        return Err(Error::Graph6(format!(
            "n={n} needs {expected} data bytes, found {}",
            data.len()
        )));
    }
    if let Some(&b) = data.iter().find(|b| !(63..=126).contains(*b)) {
        return Err(Error::Graph6(format!("data byte {b} outside 63..=126")));
    }

    let bit = |k: usize| (data[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    if (k..expected * 6).any(bit) {
        return Err(Error::Graph6("nonzero padding bits".into()));
    }
    Graph::from_edge_list(n, &edges)
}

/// Canonical graph6 encoding, without trailing newline.
pub fn to_graph6(g: &Graph) -> Result<String> {
    let n = g.n();
    if n > MAX_GRAPH6_VERTICES {
        return Err(Error::Graph6(format!("n={n} exceeds the supported maximum of 62")));
    }
    let mut out = Vec::with_capacity(1 + data_len(n));
    out.push(n as u8 + 63);
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
    Ok(String::from_utf8(out).expect("graph6 bytes are printable ASCII"))
}

/// Parses a file of graph6 records, one per line. Blank lines are skipped.
pub fn parse_graph6_lines(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .map(str::trim_end)
        .filter(|l| !l.is_empty())
        .enumerate()
        .map(|(i, l)| {
            parse_graph6(l.as_bytes()).map_err(|e| Error::Graph6(format!("record {}: {e}", i + 1)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn hand_encoded_vectors() {
        assert_eq!(parse_graph6(b"Bg").unwrap(), named::path(3));
        assert_eq!(parse_graph6(b"B?").unwrap(), Graph::empty(3).unwrap());
        assert_eq!(parse_graph6(b"A_").unwrap(), named::path(2));
        assert_eq!(to_graph6(&named::path(3)).unwrap(), "Bg");
        assert_eq!(to_graph6(&Graph::empty(1).unwrap()).unwrap(), "@");
        assert_eq!(parse_graph6(b"@\n").unwrap(), Graph::empty(1).unwrap());
    }

    #[test]
    fn known_reference_strings() {
        // Cross-checked against networkx.to_graph6_bytes for the same labelling.
        assert_eq!(to_graph6(&named::complete(4)).unwrap(), "C~");
        assert_eq!(to_graph6(&named::cycle(5)).unwrap(), "Dhc");
        assert_eq!(to_graph6(&named::petersen()).unwrap(), "IheA@GUAo");
    }

    #[test]
    fn malformed_records() {
        assert!(parse_graph6(b"").is_err());
        assert!(parse_graph6(b"B").is_err());
        assert!(parse_graph6(b"Bgg").is_err());
        assert!(parse_graph6(b"B\x20").is_err());
        assert!(parse_graph6(b"~??").is_err());
        assert!(parse_graph6(b"?").is_err());
        // (0,1)=1 plus a set padding bit
        assert!(parse_graph6(b"A`").is_err());
    }

    #[test]
    fn rejects_large_graphs() {
        let g = Graph::empty(63).unwrap();
        assert!(to_graph6(&g).is_err());
        assert!(to_graph6(&Graph::empty(62).unwrap()).is_ok());
    }

    #[test]
    fn multi_line_files() {
        let gs = parse_graph6_lines("Bg\n\nA_\r\n").unwrap();
        assert_eq!(gs.len(), 2);
        assert!(parse_graph6_lines("Bg\nxx\n").is_err());
    }
}
