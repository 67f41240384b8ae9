use std::collections::HashSet;

use crate::logic::{characteristic_formula, UniversalSentence};
use crate::structures::{
    augment_all, canonical_cmp, canonical_form, embeds, enumerate_structures_with, graph_levels,
    Signature, Structure, GUARD,
};
use crate::{Error, Result};

/// Tells the solver that every member interprets a symbol as an order, so
/// it can branch on positions instead of tuples.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderHint {
    /// Binary symbol is a strict linear order.
    Linear(usize),
    /// Ternary symbol is a cyclic order: `C(x,y,z)` iff `x,y,z` are distinct
    /// and appear in this cyclic order.
    Circular(usize),
}

impl OrderHint {
    pub fn symbol(self) -> usize {
        match self {
            OrderHint::Linear(s) | OrderHint::Circular(s) => s,
        }
    }
}

/// A local class, given by minimal bounds, universal axioms, or both.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalClass {
    sig: Signature,
    bounds: Option<Vec<Structure>>,
    axioms: Option<Vec<UniversalSentence>>,
    window: usize,
    hints: Vec<OrderHint>,
}

/// Drops duplicates (up to isomorphism) and bounds containing another bound;
/// the rest is sorted by size, then canonical order.
pub fn minimize_bounds(bounds: &[Structure]) -> Result<Vec<Structure>> {
    let mut seen = HashSet::new();
    let mut all: Vec<Structure> = Vec::new();
    for b in bounds {
        let c = canonical_form(b);
        if seen.insert(c.clone()) {
            all.push(c);
        }
    }
    all.sort_by(canonical_cmp);
    let mut out: Vec<Structure> = Vec::new();
    for b in all {
        let mut redundant = false;
        for kept in &out {
            if kept.n() < b.n() && embeds(kept, &b)? {
                redundant = true;
                break;
            }
        }
        if !redundant {
            out.push(b);
        }
    }
    Ok(out)
}

/// `∀x̄ ¬χ(B)`: the sentence saying `B` does not embed.
pub fn bound_axiom(b: &Structure) -> UniversalSentence {
    let vs: Vec<usize> = (0..b.n()).collect();
    let chi = characteristic_formula(b, &vs).expect("identity tuple spans");
    UniversalSentence::new(chi.not())
}

impl LocalClass {
    /// All structures over `sig`.
    pub fn everything(sig: &Signature) -> Self {
        LocalClass { sig: sig.clone(), bounds: Some(Vec::new()), axioms: None, window: 0, hints: Vec::new() }
    }

    /// Loopless symmetric `{E}`-structures.
    pub fn graphs() -> Self {
        let g = Signature::graph();
        let lp = Structure::digraph(1, &[(0, 0)]);
        let arc = Structure::digraph(2, &[(0, 1)]);
        Self::from_bounds(&g, vec![lp, arc]).expect("graph bounds")
    }

    pub fn from_bounds(sig: &Signature, bounds: Vec<Structure>) -> Result<Self> {
        for b in &bounds {
            sig.expect_eq(b.signature(), "bound")?;
        }
        let bounds = minimize_bounds(&bounds)?;
        let window = bounds.iter().map(Structure::n).max().unwrap_or(0);
        Ok(LocalClass { sig: sig.clone(), bounds: Some(bounds), axioms: None, window, hints: Vec::new() })
    }

    pub fn from_axioms(sig: &Signature, axioms: Vec<UniversalSentence>) -> Result<Self> {
        for a in &axioms {
            sig.expect_eq(a.signature(), "axiom")?;
        }
        let window = axioms.iter().map(UniversalSentence::arity).max().unwrap_or(0);
        Ok(LocalClass { sig: sig.clone(), bounds: None, axioms: Some(axioms), window, hints: Vec::new() })
    }

    /// Both presentations. They must agree on all structures with at most
    /// `N + 1` vertices; the check is skipped where enumeration is refused by
    /// the blow-up guard.
    pub fn new(sig: &Signature, bounds: Vec<Structure>, axioms: Vec<UniversalSentence>) -> Result<Self> {
        let b = Self::from_bounds(sig, bounds)?;
        let a = Self::from_axioms(sig, axioms)?;
        let window = b.window.max(a.window);
        let c = LocalClass {
            sig: sig.clone(),
            bounds: b.bounds,
            axioms: a.axioms,
            window,
            hints: Vec::new(),
        };
        c.check_agreement()?;
        Ok(c)
    }

    fn check_agreement(&self) -> Result<()> {
        let (Some(bounds), Some(axioms)) = (&self.bounds, &self.axioms) else {
            return Ok(());
        };
        for m in 0..=self.window + 1 {
            let all = match enumerate_structures_with(&self.sig, m, true, GUARD) {
                Ok(all) => all,
                Err(Error::BlowUp { .. }) => break,
                Err(e) => return Err(e),
            };
            for x in all {
                let by_bounds = free_of(&x, bounds);
                let by_axioms = axioms.iter().all(|s| s.holds_unchecked(&x));
                if by_bounds != by_axioms {
                    return Err(Error::logic(format!(
                        "bounds and axioms disagree on {x:?} (bounds say {by_bounds})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn with_hint(mut self, hint: OrderHint) -> Result<Self> {
        let s = hint.symbol();
        let want = match hint {
            OrderHint::Linear(_) => 2,
            OrderHint::Circular(_) => 3,
        };
        if s >= self.sig.len() || self.sig.arity(s) != want {
            return Err(Error::input(format!("order hint needs a symbol of arity {want}")));
        }
        if !self.hints.contains(&hint) {
            self.hints.push(hint);
        }
        Ok(self)
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn bounds(&self) -> Option<&[Structure]> {
        self.bounds.as_deref()
    }

    pub fn axioms(&self) -> Option<&[UniversalSentence]> {
        self.axioms.as_deref()
    }

    /// Largest bound size or axiom arity.
    pub fn window(&self) -> usize {
        self.window
    }

    pub fn hints(&self) -> &[OrderHint] {
        &self.hints
    }

    pub fn contains(&self, a: &Structure) -> Result<bool> {
        self.sig.expect_eq(a.signature(), "class membership")?;
        Ok(self.contains_unchecked(a))
    }

    pub(crate) fn contains_unchecked(&self, a: &Structure) -> bool {
        if let Some(bs) = &self.bounds {
            if !free_of(a, bs) {
                return false;
            }
        }
        if let Some(xs) = &self.axioms {
            if !xs.iter().all(|s| s.holds_unchecked(a)) {
                return false;
            }
        }
        true
    }

    /// Universal sentences defining the class: the axioms, or `¬χ` of every
    /// bound when only bounds are given.
    pub fn to_axioms(&self) -> Vec<UniversalSentence> {
        match (&self.axioms, &self.bounds) {
            (Some(xs), _) => xs.clone(),
            (None, Some(bs)) => bs.iter().map(bound_axiom).collect(),
            (None, None) => Vec::new(),
        }
    }

    /// The members of the class are graphs.
    pub fn is_graph_subclass(&self) -> bool {
        self.sig == Signature::graph()
            && !self.contains_unchecked(&Structure::digraph(1, &[(0, 0)]))
            && !self.contains_unchecked(&Structure::digraph(2, &[(0, 1)]))
    }

    /// Members on `0..=max_n` vertices, one per isomorphism class, level by
    /// level in canonical order.
    pub fn levels(&self, max_n: usize) -> Result<Vec<Vec<Structure>>> {
        if self.is_graph_subclass() {
            if max_n > 7 {
                return Err(Error::BlowUp { positions: max_n * (max_n - 1) / 2, limit: GUARD });
            }
            let levels = graph_levels(max_n);
            return Ok(levels
                .into_iter()
                .map(|l| l.into_iter().filter(|g| self.contains_unchecked(g)).collect())
                .collect());
        }
        augment_all(&self.sig, max_n, &|s| self.contains_unchecked(s), GUARD)
    }

    /// Members on exactly `n` vertices, one per isomorphism class.
    pub fn members(&self, n: usize) -> Result<Vec<Structure>> {
        Ok(self.levels(n)?.pop().unwrap_or_default())
    }

    pub(crate) fn merge(&self, other: &LocalClass) -> Result<LocalClass> {
        self.sig.expect_eq(&other.sig, "class intersection")?;
        let mut c = match (&self.axioms, &other.axioms) {
            (None, None) => {
                let mut bs = self.bounds.clone().unwrap_or_default();
                bs.extend(other.bounds.clone().unwrap_or_default());
                Self::from_bounds(&self.sig, bs)?
            }
            _ => {
                let mut xs = self.to_axioms();
                xs.extend(other.to_axioms());
                Self::from_axioms(&self.sig, xs)?
            }
        };
        for h in self.hints.iter().chain(&other.hints) {
            c = c.with_hint(*h)?;
        }
        Ok(c)
    }
}

fn free_of(a: &Structure, bounds: &[Structure]) -> bool {
    bounds.iter().all(|b| b.n() > a.n() || !embeds(b, a).expect("same signature"))
}
