//! graph6 encoding (short form, up to 62 vertices).
//!
//! The first byte is `n + 63`; the upper triangle is then read column by
//! column, `(0,1), (0,2), (1,2), (0,3), …`, padded with zeros to a multiple
//! of six bits, and emitted six bits per byte, each offset by 63.

use crate::error::{Error, Result};
use crate::graph::LabeledGraph;

pub const MAX_GRAPH6_ORDER: usize = 62;

pub fn encode(g: &LabeledGraph) -> Result<String> {
    g.require_loopless("graph6 encoding")?;
    let n = g.order();
    if n > MAX_GRAPH6_ORDER {
        return Err(Error::TooLarge {
            op: "graph6 encoding",
            n,
            max: MAX_GRAPH6_ORDER,
        });
    }
    let mut bits = Vec::with_capacity(n * (n - 1) / 2);
    for v in 1..n {
        for u in 0..v {
            bits.push(g.has_edge(u, v));
        }
    }
    let mut out = String::with_capacity(1 + bits.len().div_ceil(6));
    out.push((n as u8 + 63) as char);
    for chunk in bits.chunks(6) {
        let mut byte = 0u8;
        for (i, &b) in chunk.iter().enumerate() {
            byte |= u8::from(b) << (5 - i);
        }
        out.push((byte + 63) as char);
    }
    Ok(out)
}

pub fn decode(text: &str) -> Result<LabeledGraph> {
    let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    let bytes = bytes.strip_prefix(b">>graph6<<").unwrap_or(bytes);
    let (&first, body) = bytes
        .split_first()
        .ok_or_else(|| Error::Graph6("empty string".into()))?;
    if !(63..=126).contains(&first) {
        return Err(Error::Graph6(format!("invalid size byte {first:#x}")));
    }
    let n = (first - 63) as usize;
    if n == 0 {
        return Err(Error::Graph6("graphs need at least one vertex".into()));
    }
    let needed = (n * (n - 1) / 2).div_ceil(6);
    if body.len() != needed {
        return Err(Error::Graph6(format!(
            "expected {needed} data bytes for {n} vertices, found {}",
            body.len()
        )));
    }
    let mut bits = Vec::with_capacity(needed * 6);
    for &b in body {
        if !(63..=126).contains(&b) {
            return Err(Error::Graph6(format!("invalid data byte {b:#x}")));
        }
        let v = b - 63;
        bits.extend((0..6).rev().map(|i| v >> i & 1 == 1));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            if bits[k] {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    Ok(LabeledGraph::from_edges(n, &edges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named::build;
    use proptest::prelude::*;

    #[test]
    fn known_encodings() {
        assert_eq!(encode(&build("A1", &[]).unwrap()).unwrap(), "@");
        assert_eq!(encode(&build("K2", &[]).unwrap()).unwrap(), "A_");
        // C5 with vertex 0 adjacent to 1 and 4
        assert_eq!(encode(&build("C5", &[]).unwrap()).unwrap(), "Dhc");
        assert_eq!(encode(&build("K4", &[]).unwrap()).unwrap(), "C~");
    }

    #[test]
    fn malformed_inputs() {
        assert!(decode("").is_err());
        assert!(decode("A").is_err());
        assert!(decode("A__").is_err());
        assert!(decode("?").is_err());
        assert!(decode("B\u{7f}").is_err());
        assert!(encode(&build("loopK1", &[]).unwrap()).is_err());
        assert!(encode(&build("K63", &[]).unwrap()).is_err());
    }

    proptest! {
        #[test]
        fn round_trip(n in 1usize..=20, seed in any::<u64>()) {
            let g = LabeledGraph::from_fn(n, |u, v| {
                u != v && (seed.rotate_left((u * 31 + v * 17) as u32) ^ (u * v) as u64) & 1 == 1
            });
            let text = encode(&g).unwrap();
            prop_assert_eq!(decode(&text).unwrap(), g);
        }
    }
}
