//! graph6 encoding.
//!
//! Order header: one byte `n + 63` for `n < 63`; `126` plus three bytes for
//! `n < 2^18`; `126 126` plus six bytes otherwise. The upper-triangle bits
//! follow in column-major order (`x01, x02, x12, x03, ...`), six per byte,
//! most significant first, each byte offset by 63, zero-padded at the end.

use super::{pair_count, Graph};
use crate::error::{Error, Result};

const BIAS: u8 = 63;

fn push_order(out: &mut Vec<u8>, n: usize) {
    if n < 63 {
        out.push(n as u8 + BIAS);
    } else if n < 1 << 18 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3F) as u8 + BIAS);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 0x3F) as u8 + BIAS);
        }
    }
}

pub fn encode(g: &Graph) -> String {
    let total = pair_count(g.order());
    let mut out = Vec::with_capacity(8 + total.div_ceil(6));
    push_order(&mut out, g.order());
    let mut byte = 0u8;
    let mut filled = 0;
    for idx in 0..total {
        byte = (byte << 1) | u8::from(g.pair_bit(idx));
        filled += 1;
        if filled == 6 {
            out.push(byte + BIAS);
            byte = 0;
            filled = 0;
        }
    }
    if filled > 0 {
        out.push((byte << (6 - filled)) + BIAS);
    }
    // Every byte is in 63..=126.
    String::from_utf8(out).expect("graph6 output is ASCII")
}

fn sextet(b: u8) -> Result<u64> {
    if (BIAS..=126).contains(&b) {
        Ok(u64::from(b - BIAS))
    } else {
        Err(Error::Graph6(format!("byte {b} outside 63..=126")))
    }
}

pub fn decode(s: &str) -> Result<Graph> {
    let bytes = s.as_bytes();
    let (n, mut pos) = match bytes {
        [] => return Err(Error::Graph6("empty string".into())),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(Error::Graph6("truncated order header".into()));
            }
            let mut n = 0u64;
            for &b in &rest[..6] {
                n = (n << 6) | sextet(b)?;
            }
            (n as usize, 8)
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(Error::Graph6("truncated order header".into()));
            }
            let mut n = 0u64;
            for &b in &rest[..3] {
                n = (n << 6) | sextet(b)?;
            }
            (n as usize, 4)
        }
        [b, ..] => (sextet(*b)? as usize, 1),
    };
    let total = pair_count(n);
    let expected = total.div_ceil(6);
    if bytes.len() - pos != expected {
        return Err(Error::Graph6(format!(
            "order {n} needs {expected} data bytes, found {}",
            bytes.len() - pos
        )));
    }
    let mut g = Graph::empty(n);
    let mut idx = 0;
    while pos < bytes.len() {
        let v = sextet(bytes[pos])?;
        for k in 0..6 {
            let bit = (v >> (5 - k)) & 1 == 1;
            if idx < total {
                if bit {
                    g.set_pair_bit(idx);
                }
            } else if bit {
                return Err(Error::Graph6("non-zero padding bits".into()));
            }
            idx += 1;
        }
        pos += 1;
    }
    Ok(g)
}
