use std::cmp::Ordering;

use super::structure::for_each_tuple;
use super::Structure;
use crate::Result;

/// Colour refinement over all relations: a vertex's colour is refined by the
/// multiset of (symbol, position, colours of the tuple) over tuples it occurs in.
fn refine(a: &Structure) -> Vec<usize> {
    let n = a.n();
    let sig = a.signature();
    let tuples: Vec<Vec<Vec<usize>>> = (0..sig.len()).map(|s| a.tuples(s)).collect();
    let mut colour = vec![0usize; n];
    let mut classes = if n == 0 { 0 } else { 1 };
    loop {
        let mut items: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n];
        for (sym, ts) in tuples.iter().enumerate() {
            for t in ts {
                for (p, &v) in t.iter().enumerate() {
                    let mut item = Vec::with_capacity(t.len() + 2);
                    item.push(sym);
                    item.push(p);
                    item.extend(t.iter().map(|&u| colour[u]));
                    items[v].push(item);
                }
            }
        }
        let keys: Vec<(usize, Vec<Vec<usize>>)> = items
            .into_iter()
            .enumerate()
            .map(|(v, mut it)| {
                it.sort_unstable();
                (colour[v], it)
            })
            .collect();
        let mut distinct: Vec<&(usize, Vec<Vec<usize>>)> = keys.iter().collect();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = keys
            .iter()
            .map(|k| distinct.binary_search(&k).unwrap())
            .collect();
        let count = distinct.len();
        colour = next;
        if count == classes {
            return colour;
        }
        classes = count;
    }
}

struct Search<'a> {
    a: &'a Structure,
    cell_of_pos: Vec<usize>,
    colour: Vec<usize>,
    order: Vec<usize>,
    used: Vec<bool>,
    code: Vec<bool>,
    best: Option<(Vec<bool>, Vec<usize>)>,
    version: usize,
}

impl Search<'_> {
    fn block(&self, k: usize, out: &mut Vec<bool>) {
        let sig = self.a.signature();
        for sym in 0..sig.len() {
            let r = sig.arity(sym);
            let mut t = vec![0; r];
            let mut img = vec![0; r];
            for_each_tuple(k + 1, r, &mut t, &mut |t| {
                if t.contains(&k) {
                    for (x, &p) in img.iter_mut().zip(t) {
                        *x = self.order[p];
                    }
                    out.push(self.a.holds(sym, &img));
                }
            });
        }
    }

    fn go(&mut self, k: usize, mut tied: bool) {
        let n = self.a.n();
        if k == n {
            if self.best.is_none() || !tied {
                self.best = Some((self.code.clone(), self.order.clone()));
                self.version += 1;
            }
            return;
        }
        let cell = self.cell_of_pos[k];
        for v in 0..n {
            if self.used[v] || self.colour[v] != cell {
                continue;
            }
            self.order.push(v);
            self.used[v] = true;
            let start = self.code.len();
            let mut code = std::mem::take(&mut self.code);
            self.block(k, &mut code);
            self.code = code;
            let next = match &self.best {
                Some((best, _)) if tied => {
                    match self.code[start..].cmp(&best[start..self.code.len()]) {
                        Ordering::Greater => None,
                        Ordering::Equal => Some(true),
                        Ordering::Less => Some(false),
                    }
                }
                _ => Some(false),
            };
            if let Some(t) = next {
                let version = self.version;
                self.go(k + 1, t);
                if self.version != version {
                    // the current prefix is now the best prefix
                    tied = true;
                }
            }
            self.code.truncate(start);
            self.order.pop();
            self.used[v] = false;
        }
    }
}

/// Permutation `perm` (vertex `v` goes to position `perm[v]`) such that
/// `a.relabel(&perm)` is the same for all structures isomorphic to `a`.
pub fn canonical_labeling(a: &Structure) -> Vec<usize> {
    let n = a.n();
    if n == 0 {
        return Vec::new();
    }
    let colour = refine(a);
    let mut sorted = colour.clone();
    sorted.sort_unstable();
    let mut s = Search {
        a,
        cell_of_pos: sorted,
        colour,
        order: Vec::with_capacity(n),
        used: vec![false; n],
        code: Vec::new(),
        best: None,
        version: 0,
    };
    s.go(0, true);
    let (_, order) = s.best.expect("at least one labeling");
    let mut perm = vec![0; n];
    for (p, &v) in order.iter().enumerate() {
        perm[v] = p;
    }
    perm
}

pub fn canonical_form(a: &Structure) -> Structure {
    a.relabel(&canonical_labeling(a))
}

pub fn are_isomorphic(a: &Structure, b: &Structure) -> Result<bool> {
    a.signature().expect_eq(b.signature(), "isomorphism")?;
    if a.n() != b.n() || (0..a.signature().len()).any(|s| a.count(s) != b.count(s)) {
        return Ok(false);
    }
    Ok(canonical_form(a) == canonical_form(b))
}

/// An isomorphism `a -> b` as a vertex map, if one exists.
pub fn find_isomorphism(a: &Structure, b: &Structure) -> Result<Option<Vec<usize>>> {
    a.signature().expect_eq(b.signature(), "isomorphism")?;
    if a.n() != b.n() {
        return Ok(None);
    }
    let pa = canonical_labeling(a);
    let pb = canonical_labeling(b);
    if a.relabel(&pa) != b.relabel(&pb) {
        return Ok(None);
    }
    let mut inv_b = vec![0; b.n()];
    for (v, &p) in pb.iter().enumerate() {
        inv_b[p] = v;
    }
    Ok(Some(pa.iter().map(|&p| inv_b[p]).collect()))
}

/// Total order on structures of one signature; canonical forms sorted by it
/// give the canonical enumeration order.
pub fn canonical_cmp(a: &Structure, b: &Structure) -> Ordering {
    a.n().cmp(&b.n()).then_with(|| {
        (0..a.signature().len())
            .map(|s| a.words(s).cmp(b.words(s)))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::embed::is_embedding;
    use crate::structures::Signature;

    fn all_perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in all_perms(n - 1) {
            for i in 0..n {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }

    fn brute_iso(a: &Structure, b: &Structure) -> bool {
        a.n() == b.n() && all_perms(a.n()).iter().any(|p| is_embedding(a, b, p))
    }

    #[test]
    fn relabelled_triangle() {
        let a = Structure::graph(3, &[(0, 1), (1, 2), (0, 2)]);
        let b = a.relabel(&[2, 0, 1]);
        assert!(are_isomorphic(&a, &b).unwrap());
    }

    #[test]
    fn p3_vs_k2_plus_k1() {
        let p3 = Structure::graph(3, &[(0, 1), (1, 2)]);
        let k2k1 = Structure::graph(3, &[(0, 1)]);
        assert!(!are_isomorphic(&p3, &k2k1).unwrap());
    }

    #[test]
    fn c3_vs_tt3() {
        let c3 = Structure::digraph(3, &[(0, 1), (1, 2), (2, 0)]);
        let tt3 = Structure::digraph(3, &[(0, 1), (1, 2), (0, 2)]);
        assert!(!are_isomorphic(&c3, &tt3).unwrap());
        assert!(!brute_iso(&c3, &tt3));
    }

    #[test]
    fn find_isomorphism_is_an_isomorphism() {
        let a = Structure::digraph(4, &[(0, 1), (1, 2), (2, 3), (1, 3)]);
        let b = a.relabel(&[3, 1, 0, 2]);
        let f = find_isomorphism(&a, &b).unwrap().unwrap();
        assert!(is_embedding(&a, &b, &f));
    }

    #[test]
    fn canonical_form_invariant_on_small_digraph_pairs() {
        // two binary symbols on 3 vertices, every structure against every relabelling
        let sig = Signature::new([("A", 2), ("B", 2)]).unwrap();
        let perms = all_perms(3);
        let mut rng = 0x2545F4914F6CDD1Du64;
        for _ in 0..400 {
            let mut s = Structure::new(&sig, 3);
            for sym in 0..2 {
                for u in 0..3 {
                    for v in 0..3 {
                        rng ^= rng << 13;
                        rng ^= rng >> 7;
                        rng ^= rng << 17;
                        if rng & 1 == 1 {
                            s.insert(sym, &[u, v]);
                        }
                    }
                }
            }
            let c = canonical_form(&s);
            assert_eq!(canonical_form(&c), c);
            for p in &perms {
                assert_eq!(canonical_form(&s.relabel(p)), c);
            }
        }
    }
}
