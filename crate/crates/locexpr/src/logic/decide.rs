use super::definition::{characteristic_formula, QfDefinition};
use super::formula::Formula;
use crate::structures::{enumerate_structures_with, for_each_tuple, Structure, GUARD};
use crate::Result;

/// Calls `f(A, ā)` for every structure `A` on at most `k` vertices (up to
/// isomorphism) and every `k`-tuple spanning `A`. Stops when `f` returns true.
/// Quantifier-free truth only depends on the substructure induced by the
/// tuple, so this covers every case.
pub(crate) fn any_small_model(
    sig: &crate::Signature,
    k: usize,
    limit: usize,
    f: &mut impl FnMut(&Structure, &[usize]) -> bool,
) -> Result<bool> {
    let sizes: Vec<usize> = if k == 0 { vec![0] } else { (1..=k).collect() };
    for m in sizes {
        for a in enumerate_structures_with(sig, m, true, limit)? {
            let mut t = vec![0; k];
            let mut seen = vec![false; m];
            let mut hit = false;
            for_each_tuple(m, k, &mut t, &mut |t| {
                if hit {
                    return;
                }
                seen.iter_mut().for_each(|s| *s = false);
                t.iter().for_each(|&v| seen[v] = true);
                if seen.iter().all(|&s| s) && f(&a, t) {
                    hit = true;
                }
            });
            if hit {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Decides `phi ≡ psi` by checking every structure on at most `k` vertices.
pub fn logically_equivalent(phi: &Formula, psi: &Formula) -> Result<bool> {
    phi.same_shape(psi)?;
    let differ = any_small_model(phi.signature(), phi.arity(), GUARD, &mut |a, t| {
        phi.body().eval(a, t) != psi.body().eval(a, t)
    })?;
    Ok(!differ)
}

/// A structure and tuple on which `phi` and `psi` differ, if any.
pub fn distinguishing_model(phi: &Formula, psi: &Formula) -> Result<Option<(Structure, Vec<usize>)>> {
    phi.same_shape(psi)?;
    let mut out = None;
    any_small_model(phi.signature(), phi.arity(), GUARD, &mut |a, t| {
        if phi.body().eval(a, t) != psi.body().eval(a, t) {
            out = Some((a.clone(), t.to_vec()));
            true
        } else {
            false
        }
    })?;
    Ok(out)
}

pub fn is_satisfiable(phi: &Formula) -> Result<bool> {
    any_small_model(phi.signature(), phi.arity(), GUARD, &mut |a, t| phi.body().eval(a, t))
}

/// True iff `Δ(χ(A))` is satisfiable for every source structure `A` on at
/// most `max_n` vertices.
pub fn is_logically_injective(d: &QfDefinition, max_n: usize) -> Result<bool> {
    is_logically_injective_on(d, &|_| true, max_n)
}

/// As [`is_logically_injective`], restricted to source structures accepted by
/// `domain`.
pub fn is_logically_injective_on(
    d: &QfDefinition,
    domain: &dyn Fn(&Structure) -> bool,
    max_n: usize,
) -> Result<bool> {
    for m in 0..=max_n {
        for a in enumerate_structures_with(d.source(), m, true, GUARD)? {
            if !domain(&a) {
                continue;
            }
            let t: Vec<usize> = (0..m).collect();
            let chi = characteristic_formula(&a, &t)?;
            if !is_satisfiable(&d.apply(&chi)?)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{compose, Node};
    use crate::Signature;

    fn g() -> Signature {
        Signature::graph()
    }

    fn s_def() -> QfDefinition {
        QfDefinition::from_nodes(
            &g(),
            &g(),
            vec![Node::Or(vec![Node::Atom(0, vec![0, 1]), Node::Atom(0, vec![1, 0])])],
        )
        .unwrap()
    }

    fn co_def() -> QfDefinition {
        QfDefinition::from_nodes(&g(), &g(), vec![Node::Atom(0, vec![0, 1]).not()]).unwrap()
    }

    fn non_symmetric_arc() -> Formula {
        Formula::new(
            &g(),
            2,
            Node::And(vec![Node::Atom(0, vec![0, 1]), Node::Atom(0, vec![1, 0]).not()]),
        )
        .unwrap()
    }

    #[test]
    fn s_of_non_symmetric_arc_is_bottom() {
        let f = s_def().apply(&non_symmetric_arc()).unwrap();
        assert!(logically_equivalent(&f, &Formula::bottom(&g(), 2)).unwrap());
        assert!(!is_satisfiable(&f).unwrap());
    }

    #[test]
    fn idempotence_and_constants() {
        let e = Formula::atom(&g(), 0);
        assert!(logically_equivalent(&e, &e.or(&e).unwrap()).unwrap());
        assert!(is_satisfiable(&Formula::top(&g(), 2)).unwrap());
        assert!(!is_satisfiable(&Formula::bottom(&g(), 2)).unwrap());
    }

    #[test]
    fn symmetric_closure_differs_from_e() {
        let e = Formula::atom(&g(), 0);
        let se = s_def().formula(0).clone();
        assert!(!logically_equivalent(&se, &e).unwrap());
        let (a, t) = distinguishing_model(&se, &e).unwrap().unwrap();
        assert!(se.evaluate(&a, &t).unwrap() && !e.evaluate(&a, &t).unwrap());
    }

    #[test]
    fn co_twice_is_identity() {
        let cc = compose(&co_def(), &co_def()).unwrap();
        assert!(logically_equivalent(cc.formula(0), &Formula::atom(&g(), 0)).unwrap());
    }

    #[test]
    fn injectivity_examples() {
        assert!(!is_logically_injective(&s_def(), 2).unwrap());
        assert!(is_logically_injective(&QfDefinition::identity(&g()), 3).unwrap());

        // E ↦ E(x,y)∧x<y ∨ E(y,x)∧y<x over {E, LT}, tested on graphs
        let sigma = Signature::new([("E", 2), ("LT", 2)]).unwrap();
        let fwd = QfDefinition::from_nodes(
            &g(),
            &sigma,
            vec![Node::Or(vec![
                Node::And(vec![Node::Atom(0, vec![0, 1]), Node::Atom(1, vec![0, 1])]),
                Node::And(vec![Node::Atom(0, vec![1, 0]), Node::Atom(1, vec![1, 0])]),
            ])],
        )
        .unwrap();
        assert!(is_logically_injective_on(&fwd, &|a| a.is_graph(), 2).unwrap());
        // a single non-symmetric arc has no preimage
        assert!(!is_logically_injective(&fwd, 2).unwrap());
    }
}
