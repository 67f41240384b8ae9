//! graph6 and edge-list formats for simple graphs.

use super::Structure;
use crate::{Error, Result};

fn encode_n(n: usize, out: &mut Vec<u8>) {
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
}

/// graph6 line (no trailing newline). `g` must be a graph.
pub fn to_graph6(g: &Structure) -> String {
    let n = g.n();
    let mut out = Vec::new();
    encode_n(n, &mut out);
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.holds(0, &[i, j]) as u8;
            k += 1;
            if k == 6 {
                out.push(acc + 63);
                acc = 0;
                k = 0;
            }
        }
    }
    if k > 0 {
        out.push((acc << (6 - k)) + 63);
    }
    String::from_utf8(out).unwrap()
}

pub fn from_graph6(line: &str) -> Result<Structure> {
    let line = line.trim();
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let bytes = line.as_bytes();
    if bytes.is_empty() {
        return Err(Error::input("empty graph6 line"));
    }
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::input(format!("invalid graph6 byte {b:#x}")));
    }
    let (n, body) = if bytes[0] != 126 {
        ((bytes[0] - 63) as usize, &bytes[1..])
    } else if bytes.len() >= 2 && bytes[1] != 126 {
        if bytes.len() < 4 {
            return Err(Error::input("truncated graph6 size"));
        }
        let n = bytes[1..4].iter().fold(0, |a, &b| a << 6 | (b - 63) as usize);
        (n, &bytes[4..])
    } else {
        if bytes.len() < 8 {
            return Err(Error::input("truncated graph6 size"));
        }
        let n = bytes[2..8].iter().fold(0, |a, &b| a << 6 | (b - 63) as usize);
        (n, &bytes[8..])
    };
    let pairs = n * n.saturating_sub(1) / 2;
    if body.len() != pairs.div_ceil(6) {
        return Err(Error::input(format!(
            "graph6 body has {} bytes, expected {} for n={n}",
            body.len(),
            pairs.div_ceil(6)
        )));
    }
    let mut g = Structure::try_new(&super::Signature::graph(), n)?;
    let mut bit = 0;
    for j in 1..n {
        for i in 0..j {
            let b = (body[bit / 6] - 63) >> (5 - bit % 6) & 1;
            if b == 1 {
                g.insert(0, &[i, j]);
                g.insert(0, &[j, i]);
            }
            bit += 1;
        }
    }
    Ok(g)
}

/// "n m" header followed by m lines "u v", 0-based.
pub fn to_edge_list(g: &Structure) -> String {
    let edges = g.edges();
    let mut s = format!("{} {}\n", g.n(), edges.len());
    for (u, v) in edges {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

pub fn from_edge_list(text: &str) -> Result<Structure> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .enumerate()
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let nums = |(i, l): (usize, &str)| -> Result<Vec<usize>> {
        l.split_whitespace()
            .map(|w| {
                w.parse::<usize>()
                    .map_err(|_| Error::input(format!("line {}: {w:?} is not a number", i + 1)))
            })
            .collect()
    };
    let header = nums(lines.next().ok_or_else(|| Error::input("empty edge list"))?)?;
    let [n, m] = header[..] else {
        return Err(Error::input("edge list header must be \"n m\""));
    };
    let mut g = Structure::try_new(&super::Signature::graph(), n)?;
    let mut count = 0;
    for entry in lines {
        let line_no = entry.0 + 1;
        let [u, v] = nums(entry)?[..] else {
            return Err(Error::input(format!("line {line_no}: expected \"u v\"")));
        };
        if u >= n || v >= n {
            return Err(Error::input(format!("line {line_no}: vertex out of range 0..{n}")));
        }
        if u == v {
            return Err(Error::input(format!("line {line_no}: loops are not allowed")));
        }
        g.insert(0, &[u, v]);
        g.insert(0, &[v, u]);
        count += 1;
    }
    if count != m {
        return Err(Error::input(format!("header announces {m} edges, found {count}")));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_graph6_strings() {
        // standard examples: K3 is "Bw", C5 is "Dhc", empty graph on 0 vertices is "?"
        let k3 = Structure::graph(3, &[(0, 1), (0, 2), (1, 2)]);
        assert_eq!(to_graph6(&k3), "Bw");
        let c5 = Structure::graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]);
        assert_eq!(to_graph6(&c5), "Dhc");
        assert_eq!(from_graph6("Dhc").unwrap(), c5);
        assert_eq!(from_graph6("?").unwrap().n(), 0);
    }

    #[test]
    fn graph6_roundtrip_large_n() {
        let edges: Vec<_> = (0..99).map(|i| (i, i + 1)).collect();
        let g = Structure::graph(100, &edges);
        let s = to_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(from_graph6(&s).unwrap(), g);
    }

    #[test]
    fn graph6_rejects_bad_length() {
        assert!(from_graph6("Dh").is_err());
        assert!(from_graph6("D hc").is_err());
    }

    #[test]
    fn edge_list_roundtrip_and_errors() {
        let g = Structure::graph(4, &[(0, 1), (2, 3)]);
        let text = to_edge_list(&g);
        assert_eq!(text, "4 2\n0 1\n2 3\n");
        assert_eq!(from_edge_list(&text).unwrap(), g);
        assert!(from_edge_list("3 1\n0 3\n").is_err());
        assert!(from_edge_list("3 2\n0 1\n").is_err());
        assert!(from_edge_list("3\n").is_err());
    }
}
