//! graph6 text encoding: `N(n)` header followed by the upper triangle of the
//! adjacency matrix in column order (`x(0,1), x(0,2), x(1,2), x(0,3), ...`),
//! packed six bits per byte with bias 63 and zero padding.

use thiserror::Error;

use crate::graph::{Graph, MAX_ORDER};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("empty input")]
    Empty,
    #[error("malformed header")]
    Header,
    #[error("byte {byte:#04x} at position {position} is outside the graph6 range")]
    InvalidByte { position: usize, byte: u8 },
    #[error("expected {expected} data bytes, found {found}")]
    Length { expected: usize, found: usize },
    #[error("padding bits are not zero")]
    TrailingBits,
    #[error("order {0} exceeds the supported maximum of {MAX_ORDER}")]
    TooLarge(usize),
}

const BIAS: u8 = 63;
const HEADER_PREFIX: &str = ">>graph6<<";

fn write_size(n: usize, out: &mut String) {
    if n < 63 {
        out.push((n as u8 + BIAS) as char);
    } else if n < 258_048 {
        out.push(126 as char);
        for shift in [12, 6, 0] {
            out.push((((n >> shift) & 0x3f) as u8 + BIAS) as char);
        }
    } else {
        out.push(126 as char);
        out.push(126 as char);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push((((n >> shift) & 0x3f) as u8 + BIAS) as char);
        }
    }
}

pub fn encode(g: &Graph) -> String {
    let n = g.order();
    let mut out = String::with_capacity(1 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    write_size(n, &mut out);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push((acc + BIAS) as char);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((acc << (6 - filled)) + BIAS) as char);
    }
    out
}

fn sextet(bytes: &[u8], position: usize) -> Result<usize, Graph6Error> {
    let byte = bytes[position];
    if (63..=126).contains(&byte) {
        Ok((byte - BIAS) as usize)
    } else {
        Err(Graph6Error::InvalidByte { position, byte })
    }
}

/// Decodes one graph6 string. A leading `>>graph6<<` marker and surrounding
/// whitespace are accepted.
pub fn decode(s: &str) -> Result<Graph, Graph6Error> {
    let s = s.trim();
    let s = s.strip_prefix(HEADER_PREFIX).unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    let (n, start) = if bytes[0] != 126 {
        (sextet(bytes, 0)?, 1)
    } else if bytes.len() >= 2 && bytes[1] == 126 {
        if bytes.len() < 8 {
            return Err(Graph6Error::Header);
        }
        let mut n = 0usize;
        for p in 2..8 {
            n = n << 6 | sextet(bytes, p)?;
        }
        (n, 8)
    } else {
        if bytes.len() < 4 {
            return Err(Graph6Error::Header);
        }
        let mut n = 0usize;
        for p in 1..4 {
            n = n << 6 | sextet(bytes, p)?;
        }
        (n, 4)
    };
    if n > MAX_ORDER {
        return Err(Graph6Error::TooLarge(n));
    }
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    let data = &bytes[start..];
    if data.len() != expected {
        return Err(Graph6Error::Length { expected, found: data.len() });
    }
    let mut rows = vec![0u128; n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let word = sextet(bytes, start + k / 6)?;
            if word >> (5 - k % 6) & 1 == 1 {
                rows[i] |= 1u128 << j;
                rows[j] |= 1u128 << i;
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let last = sextet(bytes, start + expected - 1)?;
        let pad = 6 - bits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(Graph6Error::TrailingBits);
        }
    }
    Ok(Graph::from_rows_unchecked(rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_packed_values() {
        assert_eq!(encode(&Graph::empty(5).unwrap()), "D??");
        assert_eq!(encode(&Graph::complete(2).unwrap()), "A_");
        assert_eq!(encode(&Graph::empty(0).unwrap()), "?");
        assert_eq!(encode(&Graph::empty(1).unwrap()), "@");
        // edges 0-2, 0-4, 1-3, 3-4
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(encode(&g), "DQc");
    }

    #[test]
    fn decode_known() {
        assert_eq!(decode("A_").unwrap(), Graph::complete(2).unwrap());
        assert_eq!(decode(">>graph6<<D??\n").unwrap(), Graph::empty(5).unwrap());
    }

    #[test]
    fn large_header_round_trip() {
        let g = Graph::cycle(100).unwrap();
        let s = encode(&g);
        assert_eq!(s.as_bytes()[0], 126);
        assert_eq!(decode(&s).unwrap(), g);
    }

    #[test]
    fn decode_errors() {
        assert_eq!(decode(""), Err(Graph6Error::Empty));
        assert_eq!(decode("~?"), Err(Graph6Error::Header));
        assert_eq!(decode("D?"), Err(Graph6Error::Length { expected: 2, found: 1 }));
        assert_eq!(decode("D???"), Err(Graph6Error::Length { expected: 2, found: 3 }));
        // 10 bits for n=5: the last sextet carries 4 data bits and 2 padding bits
        assert_eq!(decode("D?@"), Err(Graph6Error::TrailingBits));
        assert!(matches!(decode("D?\u{7f}"), Err(Graph6Error::InvalidByte { .. })));
        assert!(matches!(decode("~?A@"), Err(Graph6Error::TooLarge(129))));
    }
}
