//! graph6 encoding for simple undirected graphs.
//!
//! Layout: `N(n)` followed by the upper triangle in column-major order
//! (`(0,1), (0,2), (1,2), (0,3), ...`), packed six bits per byte, MSB first,
//! each byte offset by 63. `N(n)` is one byte for `n <= 62` and `~` plus three
//! bytes for `n <= 258047`.

use crate::error::{Error, Result};
use crate::graph::FiniteGraph;

const MAX_ORDER: usize = 258_047;
const HEADER: &str = ">>graph6<<";

pub fn encode(g: &FiniteGraph) -> String {
    let n = g.order();
    assert!(
        n <= MAX_ORDER,
        "graph6 supports at most {MAX_ORDER} vertices"
    );
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(b'~');
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
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
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

pub fn decode(text: &str) -> Result<FiniteGraph> {
    let trimmed = text.trim_end_matches(['\n', '\r']);
    let (skip, body) = match trimmed.strip_prefix(HEADER) {
        Some(rest) => (HEADER.len(), rest.as_bytes()),
        None => (0, trimmed.as_bytes()),
    };
    let sixbit = |pos: usize| -> Result<u8> {
        match body.get(pos) {
            Some(&b) if (63..=126).contains(&b) => Ok(b - 63),
            Some(&b) => Err(Error::parse(
                skip + pos,
                format!("byte {b} outside 63..=126"),
            )),
            None => Err(Error::parse(skip + pos, "unexpected end of input")),
        }
    };
    let (n, mut pos) = match body.first() {
        None => return Err(Error::parse(skip, "empty graph6 string")),
        Some(b'~') => {
            if body.get(1) == Some(&b'~') {
                return Err(Error::parse(
                    skip + 1,
                    "orders above 258047 are not supported",
                ));
            }
            let mut n = 0usize;
            for k in 1..4 {
                n = n << 6 | sixbit(k)? as usize;
            }
            if n <= 62 {
                return Err(Error::parse(skip, "non-canonical long order field"));
            }
            (n, 4)
        }
        Some(_) => (sixbit(0)? as usize, 1),
    };
    let bits = n * n.saturating_sub(1) / 2;
    let needed = bits.div_ceil(6);
    if body.len() != pos + needed {
        return Err(Error::parse(
            skip + body.len().min(pos + needed),
            format!(
                "expected {} bytes for order {n}, found {}",
                pos + needed,
                body.len()
            ),
        ));
    }
    let mut g = FiniteGraph::empty(n);
    let mut k = 0;
    let mut chunk = 0u8;
    for j in 1..n {
        for i in 0..j {
            if k % 6 == 0 {
                chunk = sixbit(pos)?;
                pos += 1;
            }
            if chunk >> (5 - k % 6) & 1 == 1 {
                g.set_edge(i, j, true);
            }
            k += 1;
        }
    }
    Ok(g)
}
