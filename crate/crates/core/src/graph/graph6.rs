//! graph6 encoding: order prefix followed by the upper triangle of the
//! adjacency matrix in column-major order (x(0,1), x(0,2), x(1,2), x(0,3), ...),
//! packed six bits per byte with 63 added to each byte.

use super::{Graph, VertexId};
use crate::error::{Error, Result};

const HEADER: &str = ">>graph6<<";

fn err(offset: usize, reason: impl Into<String>) -> Error {
    Error::Graph6 {
        offset,
        reason: reason.into(),
    }
}

/// Parses one graph6 line. A leading `>>graph6<<` header and a trailing
/// newline are accepted. Edge ids follow the bit order of the encoding.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let line = text.strip_suffix('\n').unwrap_or(text);
    let line = line.strip_suffix('\r').unwrap_or(line);
    let (base, body) = match line.strip_prefix(HEADER) {
        Some(rest) => (HEADER.len(), rest.as_bytes()),
        None => (0, line.as_bytes()),
    };
    for (i, &b) in body.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(err(base + i, format!("byte {b:#04x} outside the printable range 63..=126")));
        }
    }
    let (n, header_len) = decode_order(body, base)?;
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    let data = &body[header_len..];
    if data.len() != expected {
        return Err(err(
            base + header_len + data.len().min(expected),
            format!("order {n} needs {expected} data bytes, found {}", data.len()),
        ));
    }
    if bits % 6 != 0 {
        let pad = 6 - bits % 6;
        let last = data[expected - 1] - 63;
        if last & ((1 << pad) - 1) != 0 {
            return Err(err(base + header_len + expected - 1, "nonzero padding bits"));
        }
    }
    let mut g = Graph::with_vertices(n);
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = data[k / 6] - 63;
            if byte & (1 << (5 - k % 6)) != 0 {
                g.add_edge(VertexId(i as u32), VertexId(j as u32))?;
            }
            k += 1;
        }
    }
    Ok(g)
}

fn decode_order(body: &[u8], base: usize) -> Result<(usize, usize)> {
    let first = *body.first().ok_or_else(|| err(base, "empty input"))?;
    if first != 126 {
        return Ok(((first - 63) as usize, 1));
    }
    let word = |from: usize, count: usize| -> Result<usize> {
        let chunk = body
            .get(from..from + count)
            .ok_or_else(|| err(base + body.len(), "truncated extended order prefix"))?;
        Ok(chunk.iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize))
    };
    if body.get(1) == Some(&126) {
        let n = word(2, 6)?;
        if n <= 258_047 {
            return Err(err(base, format!("order {n} must use the 4-byte prefix")));
        }
        Ok((n, 8))
    } else {
        let n = word(1, 3)?;
        if n < 63 {
            return Err(err(base, format!("order {n} must use the 1-byte prefix")));
        }
        Ok((n, 4))
    }
}

/// Encodes `g` as a graph6 line without a trailing newline. Live vertices are
/// numbered in ascending id order.
pub fn emit_graph6(g: &Graph) -> String {
    let (c, _) = g.compact();
    let n = c.order();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let adj = c.adjacency_matrix();
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | adj[i][j] as u8;
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
    String::from_utf8(out).expect("graph6 is ASCII")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_is_c_tilde() {
        let g = parse_graph6("C~").unwrap();
        assert_eq!((g.order(), g.size()), (4, 6));
        assert_eq!(emit_graph6(&g), "C~");
    }

    #[test]
    fn header_and_newline_accepted() {
        let g = parse_graph6(">>graph6<<C~\n").unwrap();
        assert_eq!(g.size(), 6);
    }

    #[test]
    fn empty_and_singleton() {
        assert_eq!(parse_graph6("?").unwrap().order(), 0);
        assert_eq!(parse_graph6("@").unwrap().order(), 1);
        assert_eq!(emit_graph6(&Graph::with_vertices(1)), "@");
    }

    #[test]
    fn malformed_inputs_name_offsets() {
        // K4 needs one data byte.
        assert!(matches!(parse_graph6("C~~"), Err(Error::Graph6 { offset: 2, .. })));
        assert!(matches!(parse_graph6("C"), Err(Error::Graph6 { offset: 1, .. })));
        assert!(matches!(parse_graph6("C \x7f"), Err(Error::Graph6 { offset: 1, .. })));
        // order 3 uses 3 bits; the low three bits of the data byte must be zero
        assert!(matches!(parse_graph6("BA"), Err(Error::Graph6 { offset: 1, .. })));
        assert!(parse_graph6("Bw").is_ok());
        assert!(matches!(parse_graph6(""), Err(Error::Graph6 { offset: 0, .. })));
    }

    #[test]
    fn extended_order_prefix() {
        let n = 70;
        let mut g = Graph::with_vertices(n);
        for i in 0..n {
            g.add_edge(VertexId(i as u32), VertexId(((i + 1) % n) as u32)).unwrap();
        }
        let s = emit_graph6(&g);
        assert_eq!(&s.as_bytes()[..4], &[126, 63, 64, 63 + 6]);
        let back = parse_graph6(&s).unwrap();
        assert_eq!(back.adjacency_matrix(), g.adjacency_matrix());
        // a small order must not use the long prefix
        assert!(parse_graph6("~??C").is_err());
    }
}
