use std::collections::HashSet;

use super::iso::{canonical_cmp, canonical_form};
use super::structure::for_each_tuple;
use super::{Signature, Structure};
use crate::{Error, Result};

/// Default limit on tuple positions for exhaustive enumeration.
pub const GUARD: usize = 24;

fn guard(positions: usize, limit: usize) -> Result<()> {
    if positions > limit {
        Err(Error::BlowUp { positions, limit })
    } else {
        Ok(())
    }
}

/// Every structure on `n` vertices, or one per isomorphism class in canonical
/// order. Refuses when the signature has more than [`GUARD`] tuple positions.
pub fn enumerate_structures(sig: &Signature, n: usize, up_to_iso: bool) -> Result<Vec<Structure>> {
    enumerate_structures_with(sig, n, up_to_iso, GUARD)
}

/// As [`enumerate_structures`] with an explicit guard; `usize::MAX` forces.
pub fn enumerate_structures_with(
    sig: &Signature,
    n: usize,
    up_to_iso: bool,
    limit: usize,
) -> Result<Vec<Structure>> {
    guard(sig.positions(n), limit)?;
    if up_to_iso {
        Ok(augment_all(sig, n, &|_| true, limit)?.pop().unwrap())
    } else {
        Ok(Labeled::new(sig, n).collect())
    }
}

/// Iterator over all labelled structures on `n` vertices, counting in binary
/// over tuple positions (symbol-major, tuples lexicographic).
pub struct Labeled {
    current: Option<Structure>,
    cells: Vec<(usize, usize)>,
}

impl Labeled {
    pub fn new(sig: &Signature, n: usize) -> Self {
        let mut cells = Vec::new();
        for sym in 0..sig.len() {
            let c = n.pow(sig.arity(sym) as u32);
            cells.extend((0..c).map(|i| (sym, i)));
        }
        Labeled { current: Some(Structure::new(sig, n)), cells }
    }
}

impl Iterator for Labeled {
    type Item = Structure;

    fn next(&mut self) -> Option<Structure> {
        let out = self.current.clone()?;
        let cur = self.current.as_mut().unwrap();
        let mut done = true;
        for &(sym, i) in &self.cells {
            if cur.holds_index(sym, i) {
                cur.set_index(sym, i, false);
            } else {
                cur.set_index(sym, i, true);
                done = false;
                break;
            }
        }
        if done {
            self.current = None;
        }
        Some(out)
    }
}

/// Isomorphism-class representatives of the structures accepted by `keep`
/// on `0..=n` vertices, grown one vertex at a time. `keep` must be hereditary.
/// The guard applies to the positions added per step.
pub(crate) fn augment_all(
    sig: &Signature,
    n: usize,
    keep: &dyn Fn(&Structure) -> bool,
    limit: usize,
) -> Result<Vec<Vec<Structure>>> {
    let mut levels: Vec<Vec<Structure>> = Vec::with_capacity(n + 1);
    let empty = Structure::new(sig, 0);
    levels.push(if keep(&empty) { vec![empty] } else { Vec::new() });
    for m in 1..=n {
        let fresh: Vec<(usize, Vec<usize>)> = new_positions(sig, m);
        guard(fresh.len(), limit)?;
        let mut seen: HashSet<Structure> = HashSet::new();
        for base in &levels[m - 1] {
            let mut s = Structure::new(sig, m);
            for sym in 0..sig.len() {
                for t in base.tuples(sym) {
                    s.insert(sym, &t);
                }
            }
            let total = 1u64 << fresh.len();
            for mask in 0..total {
                for (b, (sym, t)) in fresh.iter().enumerate() {
                    s.set(*sym, t, mask >> b & 1 == 1);
                }
                if keep(&s) {
                    seen.insert(canonical_form(&s));
                }
            }
        }
        let mut level: Vec<Structure> = seen.into_iter().collect();
        level.sort_by(canonical_cmp);
        levels.push(level);
    }
    Ok(levels)
}

/// Tuples on `0..m` that mention vertex `m - 1`.
pub(crate) fn new_positions(sig: &Signature, m: usize) -> Vec<(usize, Vec<usize>)> {
    let mut out = Vec::new();
    for sym in 0..sig.len() {
        let r = sig.arity(sym);
        let mut t = vec![0; r];
        for_each_tuple(m, r, &mut t, &mut |t| {
            if t.contains(&(m - 1)) {
                out.push((sym, t.to_vec()));
            }
        });
    }
    out
}

/// Graphs on `n` vertices: all labelled ones, or one per isomorphism class
/// in canonical order. Guarded on the `n(n-1)/2` edge positions.
pub fn enumerate_graphs(n: usize, up_to_iso: bool) -> Result<Vec<Structure>> {
    let pairs = n * n.saturating_sub(1) / 2;
    guard(pairs, GUARD)?;
    if !up_to_iso {
        let mut e = Vec::with_capacity(pairs);
        for v in 1..n {
            for u in 0..v {
                e.push((u, v));
            }
        }
        return Ok((0..1u64 << pairs)
            .map(|mask| {
                let edges: Vec<_> = e
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| mask >> b & 1 == 1)
                    .map(|(_, &p)| p)
                    .collect();
                Structure::graph(n, &edges)
            })
            .collect());
    }
    Ok(graph_levels(n).pop().unwrap())
}

/// Graph isomorphism classes on `0..=n` vertices, level by level.
pub fn graph_levels(n: usize) -> Vec<Vec<Structure>> {
    let mut levels = vec![vec![Structure::graph(0, &[])]];
    for m in 1..=n {
        let mut seen: HashSet<Structure> = HashSet::new();
        for base in &levels[m - 1] {
            let edges = base.edges();
            for mask in 0..1u64 << (m - 1) {
                let mut s = Structure::graph(m, &edges);
                for u in 0..m - 1 {
                    if mask >> u & 1 == 1 {
                        s.insert(0, &[u, m - 1]);
                        s.insert(0, &[m - 1, u]);
                    }
                }
                seen.insert(canonical_form(&s));
            }
        }
        let mut level: Vec<Structure> = seen.into_iter().collect();
        level.sort_by(canonical_cmp);
        levels.push(level);
    }
    levels
}

/// All graphs on 1..=n vertices up to isomorphism.
pub fn graphs_up_to(n: usize) -> Vec<Structure> {
    graph_levels(n).into_iter().skip(1).flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graphs_on_three_vertices() {
        assert_eq!(enumerate_graphs(3, true).unwrap().len(), 4);
        assert_eq!(enumerate_graphs(3, false).unwrap().len(), 8);
    }

    #[test]
    fn irreflexive_digraphs_on_two_vertices() {
        let all = enumerate_structures(&Signature::graph(), 2, true).unwrap();
        let irreflexive: Vec<_> = all
            .iter()
            .filter(|s| !s.holds(0, &[0, 0]) && !s.holds(0, &[1, 1]))
            .collect();
        assert_eq!(irreflexive.len(), 3);
    }

    #[test]
    fn n_zero_gives_one_structure() {
        let sig = Signature::new([("R", 3), ("U", 1)]).unwrap();
        assert_eq!(enumerate_structures(&sig, 0, true).unwrap().len(), 1);
        assert_eq!(enumerate_structures(&sig, 0, false).unwrap().len(), 1);
    }

    #[test]
    fn labelled_count_matches_positions() {
        let sig = Signature::new([("U", 1), ("E", 2)]).unwrap();
        assert_eq!(enumerate_structures(&sig, 2, false).unwrap().len(), 64);
    }

    #[test]
    fn guard_refuses() {
        let sig = Signature::new([("C", 3)]).unwrap();
        assert!(matches!(
            enumerate_structures(&sig, 3, true),
            Err(Error::BlowUp { positions: 27, limit: 24 })
        ));
        assert!(enumerate_graphs(8, true).is_err());
    }

    #[test]
    fn graph_counts_up_to_seven() {
        let counts: Vec<usize> = graph_levels(7).iter().map(|l| l.len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34, 156, 1044]);
        assert_eq!(graphs_up_to(7).len(), 1252);
    }

    #[test]
    fn digraph_counts_up_to_three() {
        // loops allowed: 2, 10, 104 classes on 1, 2, 3 vertices
        let counts: Vec<usize> = (1..=3)
            .map(|n| enumerate_structures(&Signature::graph(), n, true).unwrap().len())
            .collect();
        assert_eq!(counts, vec![2, 10, 104]);
    }
}
