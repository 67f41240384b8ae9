//! Independent brute-force recognizers for the classes the catalog targets.
//! Exponential ones refuse graphs with more than [`RECOGNIZER_LIMIT`] vertices.

use crate::structures::Structure;
use crate::{Error, Result};

pub const RECOGNIZER_LIMIT: usize = 8;

fn guard(g: &Structure) -> Result<()> {
    if !g.is_graph() {
        return Err(Error::input("recognizers take loopless graphs"));
    }
    if g.n() > RECOGNIZER_LIMIT {
        return Err(Error::BlowUp { positions: g.n(), limit: RECOGNIZER_LIMIT });
    }
    Ok(())
}

fn adj(g: &Structure, u: usize, v: usize) -> bool {
    g.holds(0, &[u, v])
}

pub fn bipartite(g: &Structure) -> Result<bool> {
    k_colourable(g, 2)
}

pub fn k_colourable(g: &Structure, k: usize) -> Result<bool> {
    guard(g)?;
    fn go(g: &Structure, k: usize, colour: &mut Vec<usize>) -> bool {
        let v = colour.len();
        if v == g.n() {
            return true;
        }
        for c in 0..k {
            if (0..v).all(|u| colour[u] != c || !adj(g, u, v)) {
                colour.push(c);
                if go(g, k, colour) {
                    return true;
                }
                colour.pop();
            }
        }
        false
    }
    Ok(go(g, k, &mut Vec::new()))
}

/// No induced cycle on four or more vertices.
pub fn chordal(g: &Structure) -> Result<bool> {
    guard(g)?;
    let n = g.n();
    for mask in 0u32..1 << n {
        if mask.count_ones() < 4 {
            continue;
        }
        let vs: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let h = g.induced(&vs)?;
        let all_two = (0..h.n()).all(|v| h.neighbours(v).len() == 2);
        if all_two && connected(&h) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn connected(h: &Structure) -> bool {
    if h.n() == 0 {
        return true;
    }
    let mut seen = vec![false; h.n()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for v in h.neighbours(u) {
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

pub fn cobipartite(g: &Structure) -> Result<bool> {
    guard(g)?;
    bipartite(&g.complement_graph())
}

/// `{C4, P4}`-free.
pub fn trivially_perfect(g: &Structure) -> Result<bool> {
    guard(g)?;
    let n = g.n();
    for mask in 0u32..1 << n {
        if mask.count_ones() != 4 {
            continue;
        }
        let vs: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let mut deg: Vec<usize> = (0..4).map(|i| (0..4).filter(|&j| adj(g, vs[i], vs[j])).count()).collect();
        deg.sort();
        if deg == [2, 2, 2, 2] || deg == [1, 1, 2, 2] {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn complete(g: &Structure) -> Result<bool> {
    guard(g)?;
    Ok(g.edges().len() == g.n() * g.n().saturating_sub(1) / 2)
}

/// A clique and an independent set covering the vertices.
pub fn split(g: &Structure) -> Result<bool> {
    guard(g)?;
    let n = g.n();
    Ok((0u32..1 << n).any(|mask| {
        let inside = |v: usize| mask >> v & 1 == 1;
        (0..n).all(|u| (u + 1..n).all(|v| if inside(u) == inside(v) { inside(u) == adj(g, u, v) } else { true }))
    }))
}

/// Has a transitive orientation.
pub fn comparability(g: &Structure) -> Result<bool> {
    guard(g)?;
    let edges = g.edges();
    let n = g.n();
    // arc[u][v]: Some(true) if oriented u -> v
    fn go(i: usize, edges: &[(usize, usize)], n: usize, g: &Structure, dir: &mut Vec<Vec<Option<bool>>>) -> bool {
        if i == edges.len() {
            return true;
        }
        let (a, b) = edges[i];
        for (u, v) in [(a, b), (b, a)] {
            dir[u][v] = Some(true);
            dir[v][u] = Some(false);
            let bad = (0..n).any(|w| {
                let into = dir[w][u] == Some(true) && (!adj(g, w, v) || dir[w][v] == Some(false));
                let out = dir[v][w] == Some(true) && (!adj(g, u, w) || dir[u][w] == Some(false));
                into || out
            });
            if !bad && go(i + 1, edges, n, g, dir) {
                return true;
            }
            dir[u][v] = None;
            dir[v][u] = None;
        }
        false
    }
    Ok(go(0, &edges, n, g, &mut vec![vec![None; n]; n]))
}

/// Tucker's characterisation: a circular ordering in which, for every edge
/// `xy`, all vertices from `x` clockwise to `y` are adjacent to `x`, or all
/// vertices from `y` clockwise to `x` are adjacent to `y`.
pub fn tucker_circular_arc(g: &Structure) -> Result<bool> {
    guard(g)?;
    let n = g.n();
    if n <= 2 {
        return Ok(true);
    }
    let mut order: Vec<usize> = (0..n).collect();
    Ok(permute(&mut order, 1, &mut |ord| {
        let mut pos = vec![0; n];
        for (i, &v) in ord.iter().enumerate() {
            pos[v] = i;
        }
        g.edges().into_iter().all(|(x, y)| {
            let arc_ok = |a: usize, b: usize| {
                let mut i = (pos[a] + 1) % n;
                while i != pos[b] {
                    if !adj(g, a, ord[i]) {
                        return false;
                    }
                    i = (i + 1) % n;
                }
                true
            };
            arc_ok(x, y) || arc_ok(y, x)
        })
    }))
}

fn permute(v: &mut [usize], k: usize, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
    if k == v.len() {
        return f(v);
    }
    for i in k..v.len() {
        v.swap(k, i);
        if permute(v, k + 1, f) {
            return true;
        }
        v.swap(k, i);
    }
    false
}

/// Looks up a recognizer by catalog name, e.g. `chordal` or `k_colourable(3)`.
pub fn reference_recognizer(name: &str, g: &Structure) -> Result<bool> {
    if let Some(k) = name.strip_prefix("k_colourable(").and_then(|r| r.strip_suffix(')')) {
        let k = k.trim().parse().map_err(|_| Error::input(format!("bad colour count in {name:?}")))?;
        return k_colourable(g, k);
    }
    match name {
        "bipartite" => bipartite(g),
        "chordal" => chordal(g),
        "cobipartite" => cobipartite(g),
        "trivially_perfect" => trivially_perfect(g),
        "complete" => complete(g),
        "split" => split(g),
        "comparability" => comparability(g),
        "tucker_circular_arc" => tucker_circular_arc(g),
        _ => Err(Error::input(format!("no recognizer named {name:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::enumerate_graphs;

    fn cycle(n: usize) -> Structure {
        Structure::graph(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
    }

    #[test]
    fn small_cases() {
        assert!(bipartite(&cycle(4)).unwrap());
        assert!(!bipartite(&cycle(5)).unwrap());
        assert!(k_colourable(&cycle(5), 3).unwrap());
        assert!(!chordal(&cycle(4)).unwrap());
        assert!(chordal(&cycle(3)).unwrap());
        assert!(!trivially_perfect(&Structure::graph(4, &[(0, 1), (1, 2), (2, 3)])).unwrap());
        assert!(cobipartite(&Structure::graph(4, &[(0, 1), (1, 2), (0, 2)])).unwrap());
        assert!(!cobipartite(&Structure::graph(3, &[])).unwrap());
        assert!(split(&Structure::graph(4, &[(0, 1), (1, 2), (2, 3)])).unwrap());
        assert!(!split(&cycle(4)).unwrap());
        assert!(comparability(&cycle(4)).unwrap());
        assert!(!comparability(&cycle(5)).unwrap());
        assert!(tucker_circular_arc(&cycle(5)).unwrap());
    }

    #[test]
    fn prism_is_not_comparability() {
        assert!(!comparability(&cycle(6).complement_graph()).unwrap());
    }

    #[test]
    fn circular_arc_counts() {
        // every graph on at most four vertices is a circular-arc graph
        for n in 0..=4 {
            for g in enumerate_graphs(n, true).unwrap() {
                assert!(tucker_circular_arc(&g).unwrap(), "{g:?}");
            }
        }
        // the arcs of C4 cover the circle, leaving no room for an isolated vertex
        let s = Structure::graph(5, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert!(!tucker_circular_arc(&s).unwrap());
    }

    #[test]
    fn guard_refuses_large_graphs() {
        assert!(matches!(chordal(&cycle(9)), Err(Error::BlowUp { .. })));
        assert!(reference_recognizer("nope", &cycle(3)).is_err());
        assert!(reference_recognizer("k_colourable(2)", &cycle(4)).unwrap());
    }
}
