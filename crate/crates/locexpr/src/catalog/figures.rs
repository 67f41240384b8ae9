//! The shipped expressions, built in code. The data files hold the same
//! expressions in DSL form; tests keep the two in step.

use std::collections::HashSet;

use super::bases::{self, at, coloured_signature, cyclic_signature, ordered_signature, two_colour_signature};
use crate::classes::LocalClass;
use crate::expressions::{subgraph_closure, LocalExpression};
use crate::logic::{Node, QfDefinition};
use crate::structures::{canonical_form, enumerate_graphs, Signature, Structure};
use crate::{Error, Result};

/// A graph on `0..n` ordered `0 < 1 < ... < n-1`, over `{E, LT}`.
pub fn ordered_graph(n: usize, edges: &[(usize, usize)]) -> Structure {
    let s = ordered_signature();
    let mut x = Structure::new(&s, n);
    for &(u, v) in edges {
        x.insert(0, &[u, v]);
        x.insert(0, &[v, u]);
    }
    for u in 0..n {
        for v in u + 1..n {
            x.insert(1, &[u, v]);
        }
    }
    x
}

/// An oriented graph on `0..n` ordered `0 < ... < n-1`, over `{E, LT}`.
pub fn ordered_digraph(n: usize, arcs: &[(usize, usize)]) -> Structure {
    let mut x = ordered_graph(n, &[]);
    for &(u, v) in arcs {
        x.insert(0, &[u, v]);
    }
    x
}

fn lor_expression(base: LocalClass, forbidden: Vec<Structure>) -> Result<LocalExpression> {
    LocalExpression::new(bases::forget(&ordered_signature(), 0), base, forbidden)
}

/// `1 < 2 < 3` with `12, 13` edges and `23` a non-edge.
pub fn chordal_peo() -> Result<LocalExpression> {
    lor_expression(bases::lor(), vec![ordered_graph(3, &[(0, 1), (0, 2)])])
}

fn interval_patterns() -> Vec<Structure> {
    vec![ordered_graph(3, &[(0, 2)]), ordered_graph(3, &[(0, 2), (1, 2)])]
}

/// `1 < 2 < 3` with `13` an edge, `12` a non-edge, `23` either.
pub fn interval_lor() -> Result<LocalExpression> {
    lor_expression(bases::lor(), interval_patterns())
}

pub fn chordal_gen() -> Result<LocalExpression> {
    lor_expression(bases::gen(), interval_patterns())
}

/// Two comparable non-adjacent vertices.
fn ordered_2k1() -> Structure {
    ordered_graph(2, &[])
}

pub fn trivially_perfect_gen() -> Result<LocalExpression> {
    lor_expression(bases::gen(), vec![ordered_2k1()])
}

pub fn complete_lor() -> Result<LocalExpression> {
    lor_expression(bases::lor(), vec![ordered_2k1()])
}

pub fn comparability_so() -> Result<LocalExpression> {
    lor_expression(bases::so(), vec![ordered_2k1()])
}

/// Also forbids a chain of `k + 1` pairwise adjacent vertices.
pub fn comparability_height(k: usize) -> Result<LocalExpression> {
    if k == 0 {
        return Err(Error::input("height must be at least 1"));
    }
    let mut clique = Vec::new();
    for u in 0..=k {
        for v in u + 1..=k {
            clique.push((u, v));
        }
    }
    lor_expression(bases::so(), vec![ordered_2k1(), ordered_graph(k + 1, &clique)])
}

fn or_expression(forbidden: Vec<Structure>) -> Result<LocalExpression> {
    LocalExpression::new(bases::symmetric_closure(&Signature::graph(), 0), bases::oriented(), forbidden)
}

/// The directed path on `k + 1` vertices, forbidden as a subgraph.
pub fn rghv(k: usize) -> Result<LocalExpression> {
    if k == 0 {
        return Err(Error::input("rghv needs k at least 1"));
    }
    let path: Vec<(usize, usize)> = (0..k).map(|i| (i, i + 1)).collect();
    let closure = subgraph_closure(&Structure::digraph(k + 1, &path), &bases::oriented(), &[0])?;
    or_expression(closure)
}

/// Directed `P3` as a subgraph: the three orientations of its closing pair.
pub fn bipartite_or() -> Result<LocalExpression> {
    or_expression(vec![
        Structure::digraph(3, &[(0, 1), (1, 2)]),
        Structure::digraph(3, &[(0, 1), (1, 2), (0, 2)]),
        Structure::digraph(3, &[(0, 1), (1, 2), (2, 0)]),
    ])
}

/// `B1`: a vertex with two out-neighbours that are not adjacent.
pub fn b1_free_or() -> Result<LocalExpression> {
    or_expression(vec![Structure::digraph(3, &[(1, 0), (1, 2)])])
}

/// In- and out-neighbourhoods are tournaments: no two non-adjacent
/// in-neighbours, no two non-adjacent out-neighbours.
pub fn pca_or() -> Result<LocalExpression> {
    or_expression(vec![Structure::digraph(3, &[(0, 2), (1, 2)]), Structure::digraph(3, &[(2, 0), (2, 1)])])
}

/// Arcs orient the non-edges; no directed `P3` as a subgraph.
pub fn cobipartite_or() -> Result<LocalExpression> {
    let closure = subgraph_closure(&Structure::digraph(3, &[(0, 1), (1, 2)]), &bases::oriented(), &[0])?;
    LocalExpression::new(bases::co_symmetric_closure(&Signature::graph(), 0), bases::oriented(), closure)
}

fn eg2_graph(n: usize, red: &[(usize, usize)], blue: &[(usize, usize)]) -> Structure {
    let mut x = Structure::new(&two_colour_signature(), n);
    for (sym, es) in [(0, red), (1, blue)] {
        for &(u, v) in es {
            x.insert(sym, &[u, v]);
            x.insert(sym, &[v, u]);
        }
    }
    x
}

fn cobipartite_patterns(isolated_edge_red: bool) -> Vec<Structure> {
    let lone = if isolated_edge_red {
        eg2_graph(3, &[(1, 2)], &[])
    } else {
        eg2_graph(3, &[], &[(1, 2)])
    };
    vec![
        eg2_graph(3, &[], &[]),
        lone,
        eg2_graph(3, &[(1, 0), (0, 2)], &[]),
        eg2_graph(3, &[(1, 0), (0, 2)], &[(2, 1)]),
        eg2_graph(3, &[], &[(0, 1), (1, 2), (0, 2)]),
        eg2_graph(3, &[], &[(1, 0), (0, 2)]),
    ]
}

/// Red edges inside the two cliques, blue edges across.
pub fn cobipartite_2ec() -> Result<LocalExpression> {
    LocalExpression::new(bases::forget_colours(&two_colour_signature()), bases::eg2(), cobipartite_patterns(false))
}

/// The set as drawn, with a red edge next to the isolated vertex. It
/// rejects `K3 + K1`, which is co-bipartite.
pub fn cobipartite_2ec_as_drawn() -> Result<LocalExpression> {
    LocalExpression::new(bases::forget_colours(&two_colour_signature()), bases::eg2(), cobipartite_patterns(true))
}

fn loor_patterns() -> Vec<Structure> {
    let rows: [[(usize, usize); 2]; 3] = [[(0, 1), (1, 2)], [(2, 1), (1, 0)], [(1, 0), (1, 2)]];
    let mut out = Vec::new();
    for row in rows {
        for extra in [None, Some((0, 2)), Some((2, 0))] {
            let mut arcs = row.to_vec();
            arcs.extend(extra);
            out.push(ordered_digraph(3, &arcs));
        }
    }
    out
}

pub fn threecol_loor() -> Result<LocalExpression> {
    LocalExpression::new(bases::symmetric_closure(&ordered_signature(), 0), bases::loor(), loor_patterns())
}

/// Linearly ordered oriented graph to linearly ordered 2-edge-coloured
/// graph: an arc from an earlier to a later vertex becomes a blue edge, an
/// arc from a later to an earlier one a red edge.
pub fn code_loor_to_lo2ec(x: &Structure) -> Result<Structure> {
    x.signature().expect_eq(&ordered_signature(), "LOOR coding")?;
    let target = bases::lo_eg2().signature().clone();
    let mut y = Structure::new(&target, x.n());
    for t in x.tuples(1) {
        y.insert(2, &t);
    }
    for t in x.tuples(0) {
        let (u, v) = (t[0], t[1]);
        if x.holds(0, &[v, u]) || u == v {
            return Err(Error::input("not an oriented graph"));
        }
        let forward = x.holds(1, &[u, v]);
        if !forward && !x.holds(1, &[v, u]) {
            return Err(Error::input("not linearly ordered"));
        }
        let sym = if forward { 1 } else { 0 };
        y.insert(sym, &[u, v]);
        y.insert(sym, &[v, u]);
    }
    Ok(y)
}

/// Inverse of [`code_loor_to_lo2ec`].
pub fn decode_lo2ec_to_loor(y: &Structure) -> Result<Structure> {
    y.signature().expect_eq(bases::lo_eg2().signature(), "LO-2EC decoding")?;
    let mut x = Structure::new(&ordered_signature(), y.n());
    for t in y.tuples(2) {
        x.insert(1, &t);
    }
    for (sym, forward) in [(0, false), (1, true)] {
        for t in y.tuples(sym) {
            if y.holds(2, &t) == forward {
                x.insert(0, &t);
            }
        }
    }
    Ok(x)
}

pub fn threecol_lo2ec() -> Result<LocalExpression> {
    let sig = bases::lo_eg2().signature().clone();
    let patterns = loor_patterns().iter().map(code_loor_to_lo2ec).collect::<Result<Vec<_>>>()?;
    LocalExpression::new(bases::forget_colours(&sig), bases::lo_eg2(), patterns)
}

/// `x`, `z`, `y` in clockwise order as vertices 0, 1, 2; the arc `x → y`
/// jumps over `z`, which is not adjacent to `x`.
pub fn circulararc_coor() -> Result<LocalExpression> {
    let s = cyclic_signature();
    let pattern = |arcs: &[(usize, usize)]| {
        let mut p = Structure::new(&s, 3);
        for t in [[0, 1, 2], [1, 2, 0], [2, 0, 1]] {
            p.insert(1, &t);
        }
        for &(u, v) in arcs {
            p.insert(0, &[u, v]);
        }
        p
    };
    let forbidden = vec![pattern(&[(0, 2), (2, 1)]), pattern(&[(0, 2), (1, 2)]), pattern(&[(0, 2)])];
    LocalExpression::new(bases::symmetric_closure(&s, 0), bases::coor(), forbidden)
}

fn t2_tournament(red: &[(usize, usize)], blue: &[(usize, usize)]) -> Structure {
    let mut x = Structure::new(&two_colour_signature(), 3);
    for &(u, v) in red {
        x.insert(0, &[u, v]);
    }
    for &(u, v) in blue {
        x.insert(1, &[u, v]);
    }
    x
}

/// Blue arcs orient the edges, red arcs the non-edges.
pub fn pca_cobip_t2() -> Result<LocalExpression> {
    let s = two_colour_signature();
    let forbidden = vec![
        t2_tournament(&[(2, 1)], &[(1, 0), (2, 0)]),
        t2_tournament(&[(2, 1)], &[(0, 1), (0, 2)]),
        t2_tournament(&[(1, 0), (0, 2)], &[(1, 2)]),
        t2_tournament(&[(1, 0), (0, 2)], &[(2, 1)]),
        t2_tournament(&[(1, 0), (0, 2), (2, 1)], &[]),
        t2_tournament(&[(1, 0), (0, 2), (1, 2)], &[]),
    ];
    let delta = QfDefinition::from_nodes(&Signature::graph(), &s, vec![Node::Or(vec![at(1, &[0, 1]), at(1, &[1, 0])])])?;
    LocalExpression::new(delta, bases::t2(), forbidden)
}

/// Symmetric pairs form a graph in the class bounded by `p_bounds`, the
/// asymmetric arcs avoid an induced directed `P3`, and a symmetric pair
/// meeting an asymmetric arc follows the three listed shapes. Each graph
/// bound is lifted to every digraph whose symmetric pairs are its edges.
pub fn pmixed(p_bounds: &[Structure]) -> Result<LocalExpression> {
    let g = Signature::graph();
    let mut forbidden = vec![
        Structure::digraph(3, &[(0, 1), (1, 2)]),
        Structure::digraph(3, &[(0, 1), (1, 2), (2, 1)]),
        Structure::digraph(3, &[(0, 1), (1, 2), (2, 1), (0, 2)]),
        Structure::digraph(3, &[(0, 1), (1, 2), (2, 1), (2, 0)]),
    ];
    let mut seen: HashSet<Structure> = forbidden.iter().map(canonical_form).collect();
    for b in p_bounds {
        g.expect_eq(b.signature(), "P bound")?;
        if !b.is_graph() {
            return Err(Error::input("P bounds must be graphs"));
        }
        let m = b.n();
        let mut pairs = Vec::new();
        for u in 0..m {
            for v in u + 1..m {
                if !b.holds(0, &[u, v]) {
                    pairs.push((u, v));
                }
            }
        }
        if pairs.len() > 15 {
            return Err(Error::BlowUp { positions: pairs.len(), limit: 15 });
        }
        let mut choice = vec![0usize; pairs.len()];
        loop {
            let mut d = b.clone();
            for (i, &(u, v)) in pairs.iter().enumerate() {
                match choice[i] {
                    1 => d.insert(0, &[u, v]),
                    2 => d.insert(0, &[v, u]),
                    _ => {}
                }
            }
            if seen.insert(canonical_form(&d)) {
                forbidden.push(d);
            }
            let Some(i) = choice.iter().position(|&c| c < 2) else { break };
            choice[i] += 1;
            choice[..i].iter_mut().for_each(|c| *c = 0);
        }
    }
    LocalExpression::new(bases::symmetric_closure(&g, 0), bases::digraphs(), forbidden)
}

/// [`pmixed`] with `P` the edgeless graphs.
pub fn pmixed_edgeless() -> Result<LocalExpression> {
    pmixed(&[Structure::graph(2, &[(0, 1)])])
}

/// Entry of an M-partition matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MEntry {
    /// No edges.
    Zero,
    /// All edges.
    One,
    /// No restriction.
    Star,
    /// At most one vertex on the diagonal; no pair at all off it.
    Plus,
}

impl MEntry {
    pub fn parse(c: char) -> Result<Self> {
        match c {
            '0' => Ok(MEntry::Zero),
            '1' => Ok(MEntry::One),
            '*' => Ok(MEntry::Star),
            '+' => Ok(MEntry::Plus),
            _ => Err(Error::input(format!("matrix entry {c:?} is not one of 0 1 * +"))),
        }
    }
}

/// Parses rows such as `1*;*0`.
pub fn parse_matrix(text: &str) -> Result<Vec<Vec<MEntry>>> {
    text.split(';').map(|row| row.trim().chars().map(MEntry::parse).collect()).collect()
}

/// Vertex colourings into `k` parts avoiding the 2-vertex patterns `M`
/// rules out: `(2K1, i, j)` for 1, `(K2, i, j)` for 0, both for `+`.
pub fn m_partition_expression(m: &[Vec<MEntry>]) -> Result<LocalExpression> {
    let k = m.len();
    if k == 0 || m.iter().any(|r| r.len() != k) {
        return Err(Error::input("M must be a non-empty square matrix"));
    }
    for i in 0..k {
        for j in 0..k {
            if m[i][j] != m[j][i] {
                return Err(Error::input(format!("M is not symmetric at ({i},{j})")));
            }
        }
    }
    let s = coloured_signature(k);
    let pair = |i: usize, j: usize, edge: bool| {
        let mut x = Structure::new(&s, 2);
        x.insert(1 + i, &[0]);
        x.insert(1 + j, &[1]);
        if edge {
            x.insert(0, &[0, 1]);
            x.insert(0, &[1, 0]);
        }
        x
    };
    let mut forbidden = Vec::new();
    for i in 0..k {
        for j in i..k {
            match m[i][j] {
                MEntry::Star => {}
                MEntry::One => forbidden.push(pair(i, j, false)),
                MEntry::Zero => forbidden.push(pair(i, j, true)),
                MEntry::Plus => {
                    forbidden.push(pair(i, j, false));
                    forbidden.push(pair(i, j, true));
                }
            }
        }
    }
    LocalExpression::new(bases::forget(&s, 0), bases::gk(k), forbidden)
}

fn eq_structure(g: &Structure, class: &[usize]) -> Structure {
    let s = bases::eq().signature().clone();
    let mut x = Structure::new(&s, g.n());
    for (u, v) in g.edges() {
        x.insert(0, &[u, v]);
        x.insert(0, &[v, u]);
    }
    for u in 0..g.n() {
        for v in 0..g.n() {
            if class[u] == class[v] {
                x.insert(1, &[u, v]);
            }
        }
    }
    x
}

/// The graph on the classes of `x`, numbered by first vertex.
fn quotient(x: &Structure) -> Structure {
    let n = x.n();
    let mut class = vec![usize::MAX; n];
    let mut k = 0;
    for u in 0..n {
        if class[u] == usize::MAX {
            for v in u..n {
                if x.holds(1, &[u, v]) {
                    class[v] = k;
                }
            }
            k += 1;
        }
    }
    let mut edges = HashSet::new();
    for t in x.tuples(0) {
        let (a, b) = (class[t[0]], class[t[1]]);
        if a != b {
            edges.insert((a.min(b), a.max(b)));
        }
    }
    let edges: Vec<_> = edges.into_iter().collect();
    Structure::graph(k, &edges)
}

/// Set partitions of `0..m` into exactly `k` blocks, as block indices.
fn partitions(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(m: usize, k: usize, cur: &mut Vec<usize>, used: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            if used == k {
                out.push(cur.clone());
            }
            return;
        }
        if k - used > m - cur.len() {
            return;
        }
        for b in 0..(used + 1).min(k) {
            cur.push(b);
            go(m, k, cur, used.max(b + 1), out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(m, k, &mut Vec::new(), 0, &mut out);
    out
}

/// `EQ(H)`: vertex-minimal equivalence graphs whose quotient is `H`.
pub fn eq_obstructions(h: &Structure) -> Result<Vec<Structure>> {
    let degree_sum: usize = (0..h.n()).map(|v| h.neighbours(v).len().max(1)).sum();
    if degree_sum > 6 {
        return Err(Error::BlowUp { positions: degree_sum, limit: 6 });
    }
    let target = canonical_form(h);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for m in h.n()..=degree_sum {
        for class in partitions(m, h.n()) {
            let cross: Vec<(usize, usize)> = (0..m)
                .flat_map(|u| (u + 1..m).map(move |v| (u, v)))
                .filter(|&(u, v)| class[u] != class[v])
                .collect();
            for mask in 0u32..1 << cross.len() {
                let edges: Vec<_> = cross.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|p| *p.1).collect();
                let x = eq_structure(&Structure::graph(m, &edges), &class);
                if canonical_form(&quotient(&x)) != target {
                    continue;
                }
                let minimal = (0..m).all(|v| {
                    let rest: Vec<usize> = (0..m).filter(|&u| u != v).collect();
                    canonical_form(&quotient(&x.induced(&rest).unwrap())) != target
                });
                if minimal && seen.insert(canonical_form(&x)) {
                    out.push(x);
                }
            }
        }
    }
    Ok(out)
}

fn is_subgraph(small: &Structure, big: &Structure) -> bool {
    // injective maps preserving edges
    let (m, n) = (small.n(), big.n());
    let mut map = vec![0; m];
    let mut used = vec![false; n];
    fn go(i: usize, small: &Structure, big: &Structure, map: &mut [usize], used: &mut [bool]) -> bool {
        if i == map.len() {
            return true;
        }
        for v in 0..big.n() {
            if used[v] || (0..i).any(|j| small.holds(0, &[j, i]) && !big.holds(0, &[map[j], v])) {
                continue;
            }
            used[v] = true;
            map[i] = v;
            if go(i + 1, small, big, map, used) {
                return true;
            }
            used[v] = false;
        }
        false
    }
    m <= n && go(0, small, big, &mut map, &mut used)
}

/// `H`-colourability through equivalence graphs: no edge inside a class, at
/// most `|V(H)|` classes, and no quotient on at most `|V(H)|` vertices that
/// fails to be a subgraph of `H`.
pub fn csp_expression(h: &Structure) -> Result<LocalExpression> {
    if !h.is_graph() {
        return Err(Error::input("H must be a loopless graph"));
    }
    let n = h.n();
    if n > 4 {
        return Err(Error::BlowUp { positions: n, limit: 4 });
    }
    let mut forbidden = vec![eq_structure(&Structure::graph(2, &[(0, 1)]), &[0, 0])];
    let singletons: Vec<usize> = (0..=n).collect();
    for g in enumerate_graphs(n + 1, true)? {
        forbidden.push(eq_structure(&g, &singletons));
    }
    for m in 1..=n {
        for hp in enumerate_graphs(m, true)? {
            if !is_subgraph(&hp, h) {
                forbidden.extend(eq_obstructions(&hp)?);
            }
        }
    }
    LocalExpression::new(bases::forget(bases::eq().signature(), 0), bases::eq(), forbidden)
}
