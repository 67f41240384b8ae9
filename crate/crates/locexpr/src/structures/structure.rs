use std::fmt;

use super::Signature;
use crate::{Error, Result};

const MAX_CELLS: usize = 1 << 30;

/// Finite structure on vertices `0..n`. Each relation is a dense bitset over
/// all `n^arity` tuples indexed in lexicographic order, so iteration order and
/// equality are canonical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Structure {
    sig: Signature,
    n: usize,
    rels: Vec<Vec<u64>>,
}

fn cells(n: usize, arity: usize) -> Option<usize> {
    n.checked_pow(arity as u32).filter(|&c| c <= MAX_CELLS)
}

impl Structure {
    /// Empty structure. Panics when some relation would exceed 2^30 cells.
    pub fn new(sig: &Signature, n: usize) -> Self {
        Self::try_new(sig, n).expect("structure too large for dense storage")
    }

    pub fn try_new(sig: &Signature, n: usize) -> Result<Self> {
        let mut rels = Vec::with_capacity(sig.len());
        for s in sig.symbols() {
            let c = cells(n, s.arity).ok_or_else(|| {
                Error::input(format!("{} on {n} vertices is too large", s.name))
            })?;
            rels.push(vec![0u64; c.div_ceil(64)]);
        }
        Ok(Structure { sig: sig.clone(), n, rels })
    }

    /// Builds from explicit tuple lists, one list per symbol in signature order.
    pub fn from_tuples(sig: &Signature, n: usize, tuples: &[Vec<Vec<usize>>]) -> Result<Self> {
        if tuples.len() != sig.len() {
            return Err(Error::input(format!(
                "expected {} tuple lists, got {}",
                sig.len(),
                tuples.len()
            )));
        }
        let mut s = Self::try_new(sig, n)?;
        for (sym, list) in tuples.iter().enumerate() {
            for t in list {
                s.try_insert(sym, t)?;
            }
        }
        Ok(s)
    }

    /// Graph on `n` vertices; each edge is stored in both directions.
    pub fn graph(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut s = Structure::new(&Signature::graph(), n);
        for &(u, v) in edges {
            s.insert(0, &[u, v]);
            s.insert(0, &[v, u]);
        }
        s
    }

    pub fn digraph(n: usize, arcs: &[(usize, usize)]) -> Self {
        let mut s = Structure::new(&Signature::graph(), n);
        for &(u, v) in arcs {
            s.insert(0, &[u, v]);
        }
        s
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arity(&self, sym: usize) -> usize {
        self.sig.arity(sym)
    }

    #[inline]
    pub(crate) fn index(&self, t: &[usize]) -> usize {
        t.iter().fold(0, |acc, &v| acc * self.n + v)
    }

    fn check_tuple(&self, sym: usize, t: &[usize]) -> Result<()> {
        if sym >= self.sig.len() {
            return Err(Error::input(format!("no symbol with index {sym}")));
        }
        if t.len() != self.sig.arity(sym) {
            return Err(Error::input(format!(
                "{} has arity {}, got a {}-tuple",
                self.sig.name(sym),
                self.sig.arity(sym),
                t.len()
            )));
        }
        if let Some(&v) = t.iter().find(|&&v| v >= self.n) {
            return Err(Error::input(format!("vertex {v} out of range 0..{}", self.n)));
        }
        Ok(())
    }

    #[inline]
    pub fn holds(&self, sym: usize, t: &[usize]) -> bool {
        debug_assert_eq!(t.len(), self.sig.arity(sym));
        let i = self.index(t);
        self.rels[sym][i >> 6] >> (i & 63) & 1 == 1
    }

    #[inline]
    pub(crate) fn holds_index(&self, sym: usize, i: usize) -> bool {
        self.rels[sym][i >> 6] >> (i & 63) & 1 == 1
    }

    pub fn try_holds(&self, sym: usize, t: &[usize]) -> Result<bool> {
        self.check_tuple(sym, t)?;
        Ok(self.holds(sym, t))
    }

    #[inline]
    pub fn set(&mut self, sym: usize, t: &[usize], value: bool) {
        let i = self.index(t);
        self.set_index(sym, i, value);
    }

    #[inline]
    pub(crate) fn set_index(&mut self, sym: usize, i: usize, value: bool) {
        if value {
            self.rels[sym][i >> 6] |= 1 << (i & 63);
        } else {
            self.rels[sym][i >> 6] &= !(1 << (i & 63));
        }
    }

    pub fn insert(&mut self, sym: usize, t: &[usize]) {
        self.set(sym, t, true)
    }

    pub fn try_insert(&mut self, sym: usize, t: &[usize]) -> Result<()> {
        self.check_tuple(sym, t)?;
        self.insert(sym, t);
        Ok(())
    }

    pub fn count(&self, sym: usize) -> usize {
        self.rels[sym].iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Tuples of `sym` in lexicographic order.
    pub fn tuples(&self, sym: usize) -> Vec<Vec<usize>> {
        let r = self.sig.arity(sym);
        let mut out = Vec::with_capacity(self.count(sym));
        for (w, &word) in self.rels[sym].iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                out.push(decode(w * 64 + b, self.n, r));
            }
        }
        out
    }

    /// Induced substructure on `vs`, re-indexed in ascending order of `vs`.
    pub fn induced(&self, vs: &[usize]) -> Result<Structure> {
        let mut sorted = vs.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if let Some(&v) = sorted.iter().find(|&&v| v >= self.n) {
            return Err(Error::input(format!("vertex {v} out of range 0..{}", self.n)));
        }
        Ok(self.pullback_map(&sorted))
    }

    /// Structure on `0..map.len()` where `t` holds iff `map(t)` holds here.
    /// `map` need not be injective; callers rely on that for restrictions.
    pub(crate) fn pullback_map(&self, map: &[usize]) -> Structure {
        let m = map.len();
        let mut out = Structure::new(&self.sig, m);
        for sym in 0..self.sig.len() {
            let r = self.sig.arity(sym);
            let mut t = vec![0usize; r];
            let mut img = vec![0usize; r];
            for_each_tuple(m, r, &mut t, &mut |t| {
                for (a, &b) in img.iter_mut().zip(t) {
                    *a = map[b];
                }
                if self.holds(sym, &img) {
                    out.insert(sym, t);
                }
            });
        }
        out
    }

    /// Relabels vertex `v` as `perm[v]`; `perm` must be a permutation.
    pub fn relabel(&self, perm: &[usize]) -> Structure {
        debug_assert_eq!(perm.len(), self.n);
        let mut inv = vec![0; self.n];
        for (v, &p) in perm.iter().enumerate() {
            inv[p] = v;
        }
        self.pullback_map(&inv)
    }

    /// Same vertices, restricted to the symbols of `sub` (matched by name).
    pub fn restrict(&self, sub: &Signature) -> Result<Structure> {
        let mut out = Structure::try_new(sub, self.n)?;
        for (j, s) in sub.symbols().iter().enumerate() {
            let i = self.sig.index_of(&s.name).ok_or_else(|| {
                Error::Signature(format!("{} is not a symbol of {}", s.name, self.sig))
            })?;
            if self.sig.arity(i) != s.arity {
                return Err(Error::Signature(format!("arity of {} differs", s.name)));
            }
            out.rels[j] = self.rels[i].clone();
        }
        Ok(out)
    }

    /// Same vertices over a larger signature; symbols missing here are empty.
    pub fn widen(&self, sup: &Signature) -> Result<Structure> {
        let mut out = Structure::try_new(sup, self.n)?;
        for (i, s) in self.sig.symbols().iter().enumerate() {
            let j = sup.index_of(&s.name).ok_or_else(|| {
                Error::Signature(format!("{} is not a symbol of {}", s.name, sup))
            })?;
            if sup.arity(j) != s.arity {
                return Err(Error::Signature(format!("arity of {} differs", s.name)));
            }
            out.rels[j] = self.rels[i].clone();
        }
        Ok(out)
    }

    /// Copy with a different signature of identical shape (renaming).
    pub fn rename(&self, sig: &Signature) -> Result<Structure> {
        let same_shape = sig.len() == self.sig.len()
            && (0..sig.len()).all(|i| sig.arity(i) == self.sig.arity(i));
        if !same_shape {
            return Err(Error::Signature(format!("{} and {} differ in shape", self.sig, sig)));
        }
        Ok(Structure { sig: sig.clone(), n: self.n, rels: self.rels.clone() })
    }

    /// Raw bitset of a relation; used by hashing-heavy oracles.
    pub(crate) fn words(&self, sym: usize) -> &[u64] {
        &self.rels[sym]
    }

    /// Complement of a graph; loops stay absent.
    pub fn complement_graph(&self) -> Structure {
        let mut out = Structure::new(&self.sig, self.n);
        for u in 0..self.n {
            for v in 0..self.n {
                if u != v && !self.holds(0, &[u, v]) {
                    out.insert(0, &[u, v]);
                }
            }
        }
        out
    }

    pub fn is_graph(&self) -> bool {
        self.sig == Signature::graph()
            && (0..self.n).all(|u| {
                !self.holds(0, &[u, u])
                    && (0..self.n).all(|v| self.holds(0, &[u, v]) == self.holds(0, &[v, u]))
            })
    }

    /// Undirected edges `u < v` of a graph.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.holds(0, &[u, v]) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn neighbours(&self, u: usize) -> Vec<usize> {
        (0..self.n).filter(|&v| v != u && self.holds(0, &[u, v])).collect()
    }
}

pub(crate) fn decode(mut i: usize, n: usize, r: usize) -> Vec<usize> {
    let mut t = vec![0; r];
    for k in (0..r).rev() {
        t[k] = i % n;
        i /= n;
    }
    t
}

/// Calls `f` on every tuple in `0..m` of length `r`, lexicographically.
pub(crate) fn for_each_tuple(m: usize, r: usize, t: &mut [usize], f: &mut impl FnMut(&[usize])) {
    debug_assert_eq!(t.len(), r);
    if r == 0 {
        f(t);
        return;
    }
    if m == 0 {
        return;
    }
    t.iter_mut().for_each(|x| *x = 0);
    loop {
        f(t);
        let mut k = r;
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            t[k] += 1;
            if t[k] < m {
                break;
            }
            t[k] = 0;
        }
    }
}

impl fmt::Debug for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Structure(n={}", self.n)?;
        for sym in 0..self.sig.len() {
            write!(f, "; {}=", self.sig.name(sym))?;
            for t in self.tuples(sym) {
                let parts: Vec<String> = t.iter().map(|v| v.to_string()).collect();
                write!(f, "({})", parts.join(","))?;
            }
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> Structure {
        Structure::graph(3, &[(0, 1), (1, 2)])
    }

    #[test]
    fn induced_on_nonadjacent_pair_is_2k1() {
        let s = p3().induced(&[0, 2]).unwrap();
        assert_eq!(s, Structure::graph(2, &[]));
    }

    #[test]
    fn induced_on_everything_is_identity() {
        let a = p3();
        assert_eq!(a.induced(&[2, 0, 1]).unwrap(), a);
    }

    #[test]
    fn induced_directed_c4_is_directed_p3() {
        let c4 = Structure::digraph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let s = c4.induced(&[0, 1, 2]).unwrap();
        assert_eq!(s, Structure::digraph(3, &[(0, 1), (1, 2)]));
        assert_eq!(s.tuples(0), vec![vec![0, 1], vec![1, 2]]);
    }

    #[test]
    fn induced_rejects_out_of_range() {
        assert!(matches!(p3().induced(&[0, 3]), Err(Error::Input(_))));
    }

    #[test]
    fn tuples_are_lexicographic() {
        let sig = Signature::new([("R", 3)]).unwrap();
        let s = Structure::from_tuples(&sig, 3, &[vec![vec![2, 0, 1], vec![0, 2, 2], vec![0, 2, 2]]]).unwrap();
        assert_eq!(s.tuples(0), vec![vec![0, 2, 2], vec![2, 0, 1]]);
        assert!(Structure::from_tuples(&sig, 3, &[vec![vec![0, 1]]]).is_err());
    }

    #[test]
    fn relabel_roundtrip() {
        let a = Structure::digraph(3, &[(0, 1), (1, 2)]);
        let b = a.relabel(&[2, 0, 1]);
        assert!(b.holds(0, &[2, 0]) && b.holds(0, &[0, 1]));
        assert_eq!(b.relabel(&[1, 2, 0]), a);
    }

    #[test]
    fn complement_and_edges() {
        let c = p3().complement_graph();
        assert_eq!(c.edges(), vec![(0, 2)]);
        assert!(c.is_graph());
        assert!(!Structure::digraph(2, &[(0, 1)]).is_graph());
    }
}
