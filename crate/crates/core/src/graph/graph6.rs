//! graph6 encoding: size header, then the upper triangle in column order
//! `(0,1),(0,2),(1,2),(0,3),...` packed into 6-bit groups offset by 63.

use super::Graph;
use crate::error::{Error, Result};

const BIAS: u8 = 63;
const SMALL_N: usize = 62;
const MEDIUM_N: usize = 258_047;

pub fn parse_graph6(line: &str) -> Result<Graph> {
    let line = line.trim_end_matches(['\n', '\r']);
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let bytes = line.as_bytes();
    if let Some(pos) = bytes.iter().position(|b| !(63..=126).contains(b)) {
        return Err(Error::Graph6(format!("byte {:#04x} at position {pos} is outside 63..=126", bytes[pos])));
    }
    let (n, body) = decode_size(bytes)?;
    let bits_needed = n * n.saturating_sub(1) / 2;
    let expected_len = bits_needed.div_ceil(6);
    if body.len() != expected_len {
        return Err(Error::Graph6(format!(
            "expected {expected_len} data bytes for {n} vertices, found {}",
            body.len()
        )));
    }

    let mut g = Graph::new(n);
    let mut bit = 0usize;
    for v in 1..n {
        for u in 0..v {
            let byte = body[bit / 6] - BIAS;
            if byte & (1 << (5 - bit % 6)) != 0 {
                g.add_edge(u, v)?;
            }
            bit += 1;
        }
    }
    Ok(g)
}

fn decode_size(bytes: &[u8]) -> Result<(usize, &[u8])> {
    let first = *bytes.first().ok_or_else(|| Error::Graph6("empty string".into()))?;
    if first != 126 {
        return Ok(((first - BIAS) as usize, &bytes[1..]));
    }
    if bytes.get(1) == Some(&126) {
        if bytes.len() < 8 {
            return Err(Error::Graph6("truncated 36-bit size".into()));
        }
        let n = bytes[2..8].iter().fold(0usize, |acc, &b| (acc << 6) | (b - BIAS) as usize);
        return Ok((n, &bytes[8..]));
    }
    if bytes.len() < 4 {
        return Err(Error::Graph6("truncated 18-bit size".into()));
    }
    let n = bytes[1..4].iter().fold(0usize, |acc, &b| (acc << 6) | (b - BIAS) as usize);
    Ok((n, &bytes[4..]))
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= SMALL_N {
        out.push(n as u8 + BIAS);
    } else if n <= MEDIUM_N {
        out.push(126);
        out.extend((0..3).rev().map(|k| ((n >> (6 * k)) & 63) as u8 + BIAS));
    } else {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|k| ((n >> (6 * k)) & 63) as u8 + BIAS));
    }

    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | g.has_edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + BIAS);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + BIAS);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}
