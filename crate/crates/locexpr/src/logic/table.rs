use super::definition::{characteristic_formula, QfDefinition};
use super::formula::{Formula, Node};
use crate::structures::{
    canonical_form, enumerate_embeddings, enumerate_structures_with, find_isomorphism,
    for_each_tuple, is_embedding, Signature, Structure, GUARD,
};
use crate::{Error, Result};

/// A concrete functor given by its action on small carrier structures: one
/// `(C, F(C))` pair per isomorphism class of a hereditary domain, up to
/// `bound` vertices (the largest target arity).
#[derive(Clone, Debug)]
pub struct FunctorTable {
    carrier: Signature,
    target: Signature,
    bound: usize,
    entries: Vec<(Structure, Structure)>,
}

impl FunctorTable {
    /// Checks vertex preservation, that entries are pairwise non-isomorphic and
    /// closed under induced substructures, and that every embedding between
    /// domain entries is an embedding between their images.
    pub fn new(
        carrier: &Signature,
        target: &Signature,
        entries: Vec<(Structure, Structure)>,
    ) -> Result<Self> {
        let bound = target.max_arity();
        let mut forms = std::collections::HashSet::new();
        for (c, fc) in &entries {
            carrier.expect_eq(c.signature(), "table domain entry")?;
            target.expect_eq(fc.signature(), "table image")?;
            if c.n() != fc.n() {
                return Err(Error::input(format!(
                    "image has {} vertices, domain entry has {}",
                    fc.n(),
                    c.n()
                )));
            }
            if c.n() > bound {
                return Err(Error::input(format!(
                    "domain entry on {} vertices exceeds the table bound {bound}",
                    c.n()
                )));
            }
            if !forms.insert(canonical_form(c)) {
                return Err(Error::input(format!("duplicate domain entry {c:?}")));
            }
        }
        let t = FunctorTable { carrier: carrier.clone(), target: target.clone(), bound, entries };
        for (c, _) in &t.entries {
            for v in 0..c.n() {
                let rest: Vec<usize> = (0..c.n()).filter(|&u| u != v).collect();
                let sub = c.induced(&rest)?;
                if !forms.contains(&canonical_form(&sub)) {
                    return Err(Error::input(format!(
                        "domain is not hereditary: {sub:?} is induced in {c:?} but missing"
                    )));
                }
            }
        }
        for (c, fc) in &t.entries {
            for (d, fd) in &t.entries {
                if c.n() > d.n() {
                    continue;
                }
                for e in enumerate_embeddings(c, d)? {
                    if !is_embedding(fc, fd, &e) {
                        return Err(Error::input(format!(
                            "embedding {e:?} of {c:?} into {d:?} is not an embedding of {fc:?} into {fd:?}"
                        )));
                    }
                }
            }
        }
        Ok(t)
    }

    /// Tabulates `f` on the carrier structures accepted by `domain`, one per
    /// isomorphism class, up to the largest target arity.
    pub fn from_fn(
        carrier: &Signature,
        target: &Signature,
        domain: &dyn Fn(&Structure) -> bool,
        f: &dyn Fn(&Structure) -> Structure,
    ) -> Result<Self> {
        let mut entries = Vec::new();
        for m in 0..=target.max_arity() {
            for c in enumerate_structures_with(carrier, m, true, GUARD)? {
                if domain(&c) {
                    let fc = f(&c);
                    entries.push((c, fc));
                }
            }
        }
        Self::new(carrier, target, entries)
    }

    /// The table of `sh_Δ` on all carrier structures accepted by `domain`.
    pub fn from_definition(d: &QfDefinition, domain: &dyn Fn(&Structure) -> bool) -> Result<Self> {
        Self::from_fn(d.carrier(), d.source(), domain, &|c| d.reduct_unchecked(c))
    }

    pub fn carrier(&self) -> &Signature {
        &self.carrier
    }

    pub fn target(&self) -> &Signature {
        &self.target
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn entries(&self) -> &[(Structure, Structure)] {
        &self.entries
    }

    /// `F(A)` for `A` isomorphic to a domain entry.
    pub fn image(&self, a: &Structure) -> Result<Option<Structure>> {
        self.carrier.expect_eq(a.signature(), "table lookup")?;
        for (c, fc) in &self.entries {
            if c.n() == a.n() {
                if let Some(map) = find_isomorphism(c, a)? {
                    return Ok(Some(fc.relabel(&map)));
                }
            }
        }
        Ok(None)
    }
}

/// The qf definition realising a table: `Δ(R)` is the disjunction of
/// `χ(B, b̄)` over entries `B` and spanning tuples `b̄ ∈ R(F(B))`, or `⊥_r`.
pub fn synthesize_definition(t: &FunctorTable) -> Result<QfDefinition> {
    let mut formulas = Vec::new();
    for sym in 0..t.target.len() {
        let r = t.target.arity(sym);
        let mut ds = Vec::new();
        for (b, fb) in &t.entries {
            let mut seen = vec![false; b.n()];
            let mut spanning = Vec::new();
            for_each_tuple(b.n(), r, &mut vec![0; r], &mut |tup| {
                seen.iter_mut().for_each(|s| *s = false);
                tup.iter().for_each(|&v| seen[v] = true);
                if seen.iter().all(|&s| s) && fb.holds(sym, tup) {
                    spanning.push(tup.to_vec());
                }
            });
            for tup in spanning {
                ds.push(characteristic_formula(b, &tup)?.into_body());
            }
        }
        formulas.push(if ds.is_empty() {
            Formula::bottom(&t.carrier, r)
        } else {
            Formula::new(&t.carrier, r, Node::Or(ds))?
        });
    }
    QfDefinition::new(&t.target, &t.carrier, formulas)
}

/// The weak extension `F*(A)`: `ā ∈ R(F*(A))` iff some domain entry `C`
/// embeds into `A` by a map sending some `c̄ ∈ R(F(C))` to `ā`.
pub fn weak_extension(t: &FunctorTable, a: &Structure) -> Result<Structure> {
    t.carrier.expect_eq(a.signature(), "weak extension")?;
    let mut out = Structure::new(&t.target, a.n());
    for (c, fc) in &t.entries {
        if c.n() > a.n() {
            continue;
        }
        let embs = enumerate_embeddings(c, a)?;
        if embs.is_empty() {
            continue;
        }
        for sym in 0..t.target.len() {
            for tup in fc.tuples(sym) {
                for e in &embs {
                    let img: Vec<usize> = tup.iter().map(|&v| e[v]).collect();
                    out.insert(sym, &img);
                }
            }
        }
    }
    Ok(out)
}
