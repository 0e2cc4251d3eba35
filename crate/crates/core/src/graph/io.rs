//! Plain-text graph format.
//!
//! ```text
//! n k
//! v p w q
//! ...
//! ```
//!
//! One line per port pairing, every port exactly once, decimal and 0-indexed.
//! A half-loop is written `v p v p`.

use super::Graph;
use crate::error::{Error, Result};
use std::fmt::Write as _;

pub fn read_graph(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines
        .next()
        .ok_or(Error::Parse { line: 1, message: "empty input".into() })?;
    let nk = parse_fields::<2>(hline, header)?;
    let (n, k) = (nk[0], nk[1]);
    let mut pairings = Vec::new();
    let mut line_of = std::collections::HashMap::new();
    for (line, l) in lines {
        let f = parse_fields::<4>(line, l)?;
        let (a, b) = ((f[0], f[1]), (f[2], f[3]));
        for port in [a, b] {
            if port.0 >= n || port.1 >= k {
                return Err(Error::Parse {
                    line,
                    message: format!("port ({}, {}) out of range for n = {n}, k = {k}", port.0, port.1),
                });
            }
            if let Some(prev) = line_of.insert(port, line) {
                if !(a == b && port == a && prev == line) {
                    return Err(Error::Parse {
                        line,
                        message: format!("port ({}, {}) already paired on line {prev}", port.0, port.1),
                    });
                }
            }
        }
        pairings.push((a, b));
    }
    Graph::from_pairings(n, k, &pairings).map_err(|e| match e {
        Error::DanglingPort { vertex, port } => Error::Parse {
            line: hline,
            message: format!("port ({vertex}, {port}) is never paired"),
        },
        other => other,
    })
}

fn parse_fields<const N: usize>(line: usize, l: &str) -> Result<[usize; N]> {
    let parts: Vec<&str> = l.split_whitespace().collect();
    if parts.len() != N {
        return Err(Error::Parse {
            line,
            message: format!("expected {N} fields, found {}", parts.len()),
        });
    }
    let mut out = [0usize; N];
    for (slot, p) in out.iter_mut().zip(parts) {
        *slot = p.parse().map_err(|_| Error::Parse {
            line,
            message: format!("`{p}` is not a non-negative integer"),
        })?;
    }
    Ok(out)
}

/// Writes the canonical form: pairings in ascending order of their smaller
/// port.
pub fn write_graph(g: &Graph) -> String {
    let mut s = String::new();
    writeln!(s, "{} {}", g.n(), g.k()).unwrap();
    for ((v, p), (w, q)) in g.pairings() {
        writeln!(s, "{v} {p} {w} {q}").unwrap();
    }
    s
}
