use std::ops::ControlFlow;

use super::structure::for_each_tuple;
use super::Structure;
use crate::Result;

/// Injective map `0..m -> 0..n` preserving and reflecting every relation.
pub type Embedding = Vec<usize>;

/// Precomputed consistency checks for embedding a fixed pattern. When vertex
/// `i` of the pattern is placed, every tuple over `0..=i` that mentions `i` is
/// compared against the target.
pub struct Matcher<'a> {
    pattern: &'a Structure,
    // per depth: (symbol, tuple, expected)
    checks: Vec<Vec<(usize, Vec<usize>, bool)>>,
}

impl<'a> Matcher<'a> {
    pub fn new(pattern: &'a Structure) -> Self {
        let m = pattern.n();
        let sig = pattern.signature();
        let mut checks = vec![Vec::new(); m];
        for (i, slot) in checks.iter_mut().enumerate() {
            for sym in 0..sig.len() {
                let r = sig.arity(sym);
                let mut t = vec![0; r];
                for_each_tuple(i + 1, r, &mut t, &mut |t| {
                    if t.contains(&i) {
                        slot.push((sym, t.to_vec(), pattern.holds(sym, t)));
                    }
                });
            }
        }
        Matcher { pattern, checks }
    }

    /// Visits embeddings into `target` in lexicographic order of the map.
    pub fn for_each<B>(
        &self,
        target: &Structure,
        f: &mut impl FnMut(&[usize]) -> ControlFlow<B>,
    ) -> Result<Option<B>> {
        self.pattern
            .signature()
            .expect_eq(target.signature(), "embedding")?;
        let m = self.pattern.n();
        if m > target.n() {
            return Ok(None);
        }
        let mut map = Vec::with_capacity(m);
        let mut used = vec![false; target.n()];
        let mut img = Vec::new();
        Ok(match self.go(target, &mut map, &mut used, &mut img, f) {
            ControlFlow::Break(b) => Some(b),
            ControlFlow::Continue(()) => None,
        })
    }

    fn go<B>(
        &self,
        target: &Structure,
        map: &mut Vec<usize>,
        used: &mut [bool],
        img: &mut Vec<usize>,
        f: &mut impl FnMut(&[usize]) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        let i = map.len();
        if i == self.pattern.n() {
            return f(map);
        }
        for v in 0..target.n() {
            if used[v] {
                continue;
            }
            map.push(v);
            let ok = self.checks[i].iter().all(|(sym, t, want)| {
                img.clear();
                img.extend(t.iter().map(|&x| map[x]));
                target.holds(*sym, img) == *want
            });
            if ok {
                used[v] = true;
                let r = self.go(target, map, used, img, f);
                used[v] = false;
                if r.is_break() {
                    map.pop();
                    return r;
                }
            }
            map.pop();
        }
        ControlFlow::Continue(())
    }

    pub fn embeds_into(&self, target: &Structure) -> Result<bool> {
        Ok(self.for_each(target, &mut |_| ControlFlow::Break(()))?.is_some())
    }

    pub fn first(&self, target: &Structure) -> Result<Option<Embedding>> {
        self.for_each(target, &mut |m| ControlFlow::Break(m.to_vec()))
    }
}

/// All embeddings `a -> b`, lexicographic in the map.
pub fn enumerate_embeddings(a: &Structure, b: &Structure) -> Result<Vec<Embedding>> {
    let mut out = Vec::new();
    Matcher::new(a).for_each::<()>(b, &mut |m| {
        out.push(m.to_vec());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

pub fn embeds(a: &Structure, b: &Structure) -> Result<bool> {
    Matcher::new(a).embeds_into(b)
}

/// True iff no member of `forbidden` embeds into `b`.
pub fn is_free(b: &Structure, forbidden: &[Structure]) -> Result<bool> {
    for f in forbidden {
        if embeds(f, b)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks that `map` is an embedding `a -> b`.
pub fn is_embedding(a: &Structure, b: &Structure, map: &[usize]) -> bool {
    if a.signature() != b.signature() || map.len() != a.n() || map.iter().any(|&v| v >= b.n()) {
        return false;
    }
    let mut seen = vec![false; b.n()];
    for &v in map {
        if std::mem::replace(&mut seen[v], true) {
            return false;
        }
    }
    let sig = a.signature();
    for sym in 0..sig.len() {
        let r = sig.arity(sym);
        let mut t = vec![0; r];
        let mut img = vec![0; r];
        let mut ok = true;
        for_each_tuple(a.n(), r, &mut t, &mut |t| {
            for (x, &y) in img.iter_mut().zip(t) {
                *x = map[y];
            }
            if a.holds(sym, t) != b.holds(sym, &img) {
                ok = false;
            }
        });
        if !ok {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::Signature;
    use crate::Error;

    fn k(n: usize) -> Structure {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        Structure::graph(n, &e)
    }

    #[test]
    fn k1_into_k3() {
        assert_eq!(enumerate_embeddings(&k(1), &k(3)).unwrap().len(), 3);
    }

    #[test]
    fn two_k1_into_k3_is_empty() {
        let e = enumerate_embeddings(&Structure::graph(2, &[]), &k(3)).unwrap();
        assert!(e.is_empty());
    }

    #[test]
    fn k2_into_p3_matches_brute_force() {
        let p3 = Structure::graph(3, &[(0, 1), (1, 2)]);
        let found = enumerate_embeddings(&k(2), &p3).unwrap();
        let mut brute = Vec::new();
        for a in 0..3 {
            for b in 0..3 {
                if a != b && is_embedding(&k(2), &p3, &[a, b]) {
                    brute.push(vec![a, b]);
                }
            }
        }
        assert_eq!(found, brute);
        assert_eq!(found.len(), 4);
    }

    #[test]
    fn is_free_examples() {
        let c5 = Structure::graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        assert!(is_free(&c5, &[k(3)]).unwrap());
        assert!(!is_free(&k(3), &[k(3)]).unwrap());
        let c4 = Structure::graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert!(!is_free(&c4, std::slice::from_ref(&c4)).unwrap());
    }

    #[test]
    fn signature_mismatch_is_reported() {
        let other = Structure::new(&Signature::new([("F", 2)]).unwrap(), 2);
        assert!(matches!(embeds(&k(2), &other), Err(Error::Signature(_))));
    }
}
