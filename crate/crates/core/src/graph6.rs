//! graph6 interchange, short header form only (orders 0..=62).
//!
//! The upper triangle is read column by column, `(0,1), (0,2), (1,2), (0,3), ...`,
//! packed six bits per byte with the first bit most significant, each byte
//! offset by 63. Padding bits in the final byte must be zero.

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const MAX_ORDER: usize = 62;

pub fn encode(g: &Graph) -> Result<String> {
    let n = g.order();
    if n > MAX_ORDER {
        return Err(Error::OrderLimit {
            what: "graph6 short form",
            order: n,
            limit: MAX_ORDER,
        });
    }
    let mut out = String::with_capacity(1 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    out.push((n as u8 + 63) as char);
    let mut chunk = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            chunk = (chunk << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push((chunk + 63) as char);
                chunk = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((chunk << (6 - filled)) + 63) as char);
    }
    Ok(out)
}

pub fn decode(text: &str) -> Result<Graph> {
    let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    let bytes = bytes.strip_prefix(b">>graph6<<").unwrap_or(bytes);
    let (&head, body) = bytes
        .split_first()
        .ok_or_else(|| Error::Graph6("empty string".into()))?;
    if head == 126 {
        return Err(Error::OrderLimit {
            what: "graph6 short form",
            order: 63,
            limit: MAX_ORDER,
        });
    }
    if !(63..126).contains(&head) {
        return Err(Error::Graph6(format!("bad order byte {head}")));
    }
    let n = (head - 63) as usize;
    let nbits = n * n.saturating_sub(1) / 2;
    let want = nbits.div_ceil(6);
    if body.len() != want {
        return Err(Error::Graph6(format!(
            "expected {want} data bytes for order {n}, found {}",
            body.len()
        )));
    }
    let mut values = Vec::with_capacity(want);
    for &b in body {
        if !(63..=126).contains(&b) {
            return Err(Error::Graph6(format!("byte {b} outside 63..=126")));
        }
        values.push(b - 63);
    }
    let pad = want * 6 - nbits;
    if let Some(&last) = values.last() {
        if last & ((1u8 << pad) - 1) != 0 {
            return Err(Error::Graph6("nonzero padding bits".into()));
        }
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if values[k / 6] >> (5 - k % 6) & 1 == 1 {
                g.insert(i, j);
            }
            k += 1;
        }
    }
    Ok(g)
}
