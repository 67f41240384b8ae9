use std::collections::HashSet;

use super::LocalExpression;
use crate::classes::{bound_axiom, LocalClass, OrderHint};
use crate::logic::{compose, distinguishing_model, logically_equivalent, Formula, Node, QfDefinition, UniversalSentence};
use crate::structures::{canonical_form, for_each_tuple, Signature, Structure, GUARD};
use crate::{Error, Result};

/// Every structure obtained from `pattern` by adding tuples of `symbols` on
/// its own vertex set, kept when in `base`, one per isomorphism class. Forbidding
/// the result forbids `pattern` as a subgraph instead of an induced one.
pub fn subgraph_closure(pattern: &Structure, base: &LocalClass, symbols: &[usize]) -> Result<Vec<Structure>> {
    base.signature().expect_eq(pattern.signature(), "subgraph closure")?;
    let sig = pattern.signature();
    let mut free = Vec::new();
    for &sym in symbols {
        if sym >= sig.len() {
            return Err(Error::input(format!("no symbol with index {sym}")));
        }
        let r = sig.arity(sym);
        for_each_tuple(pattern.n(), r, &mut vec![0; r], &mut |t| {
            if !pattern.holds(sym, t) {
                free.push((sym, t.to_vec()));
            }
        });
    }
    if free.len() > GUARD {
        return Err(Error::BlowUp { positions: free.len(), limit: GUARD });
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u64..1 << free.len() {
        let mut x = pattern.clone();
        for (i, (sym, t)) in free.iter().enumerate() {
            if mask >> i & 1 == 1 {
                x.insert(*sym, t);
            }
        }
        if base.contains(&x)? && seen.insert(canonical_form(&x)) {
            out.push(x);
        }
    }
    Ok(out)
}

/// Renames both signatures with `pa`/`pb` prefixes when they share a name.
fn rename_apart(a: &Signature, b: &Signature, pa: &str, pb: &str) -> (Signature, Signature) {
    let clash = a.symbols().iter().any(|s| b.index_of(&s.name).is_some());
    if clash {
        (a.prefixed(pa), b.prefixed(pb))
    } else {
        (a.clone(), b.clone())
    }
}

fn fresh_name(sig: &Signature, base: &str) -> String {
    let mut name = base.to_string();
    while sig.index_of(&name).is_some() {
        name.push('_');
    }
    name
}

/// Copies `x` into `sig`, symbol `s` going to `s + offset`.
fn lift(x: &Structure, sig: &Signature, offset: usize) -> Structure {
    let mut y = Structure::new(sig, x.n());
    for s in 0..x.signature().len() {
        for t in x.tuples(s) {
            y.insert(s + offset, &t);
        }
    }
    y
}

fn shift(len: usize, offset: usize) -> Vec<usize> {
    (0..len).map(|s| s + offset).collect()
}

fn sentence(sig: &Signature, k: usize, body: Node) -> Result<UniversalSentence> {
    Ok(UniversalSentence::new(Formula::new(sig, k, body)?))
}

fn lift_axiom(ax: &UniversalSentence, sig: &Signature, map: &[usize]) -> Result<UniversalSentence> {
    sentence(sig, ax.arity(), ax.body().body().rename_symbols(map))
}

/// Members of `e1` or of `e2`. Carriers are tagged by fresh unary markers
/// `U_B` (first side) and `U_C` (second side): every vertex carries exactly
/// one, all vertices carry the same one, and the other side's relations are
/// empty. Order hints are dropped, since the unmarked side's order symbol
/// is empty.
pub fn disjoint_union(e1: &LocalExpression, e2: &LocalExpression) -> Result<LocalExpression> {
    e1.target().expect_eq(e2.target(), "disjoint union")?;
    let (s1, s2) = rename_apart(e1.carrier(), e2.carrier(), "B_", "C_");
    let both = s1.concat(&s2)?;
    let ub_name = fresh_name(&both, "U_B");
    let uc_name = fresh_name(&both, "U_C");
    let markers = Signature::new([(ub_name.as_str(), 1), (uc_name.as_str(), 1)])?;
    let sig = both.concat(&markers)?;
    let (n1, n2) = (s1.len(), s2.len());
    let (ub, uc) = (n1 + n2, n1 + n2 + 1);
    let m1 = shift(n1, 0);
    let m2 = shift(n2, n1);
    let mark = |u: usize| Node::Atom(u, vec![0]);

    let mut axioms = vec![
        sentence(&sig, 1, Node::Or(vec![mark(ub), mark(uc)]))?,
        sentence(&sig, 1, Node::And(vec![mark(ub), mark(uc)]).not())?,
        sentence(&sig, 2, mark(ub).implies(Node::Atom(ub, vec![1])))?,
    ];
    for (side, (e, map, u, other)) in [(e1, &m1, ub, uc), (e2, &m2, uc, ub)].into_iter().enumerate() {
        for ax in e.base().to_axioms() {
            let k = ax.arity().max(1);
            let body = ax.body().body().rename_symbols(map);
            axioms.push(sentence(&sig, k, mark(u).implies(body))?);
        }
        let own = if side == 0 { &s1 } else { &s2 };
        for s in 0..own.len() {
            let r = own.arity(s);
            let atom = Node::Atom(map[s], (0..r).collect());
            axioms.push(sentence(&sig, r, mark(other).implies(atom.not()))?);
        }
    }
    let base = LocalClass::from_axioms(&sig, axioms)?;

    let mut forbidden = Vec::new();
    for (e, offset, u) in [(e1, 0, ub), (e2, n1, uc)] {
        for f in e.forbidden() {
            let mut y = lift(f, &sig, offset);
            for v in 0..f.n() {
                y.insert(u, &[v]);
            }
            forbidden.push(y);
        }
    }

    let tau = e1.target();
    let bodies = (0..tau.len())
        .map(|r| {
            Node::Or(vec![
                Node::And(vec![mark(ub), e1.definition().formula(r).body().rename_symbols(&m1)]),
                Node::And(vec![mark(uc), e2.definition().formula(r).body().rename_symbols(&m2)]),
            ])
        })
        .collect();
    let def = QfDefinition::from_nodes(tau, &sig, bodies)?;
    LocalExpression::new(def, base, forbidden)
}

/// Members of both `e1` and `e2`: pairs of expansions with equal reducts.
/// The carrier is the concatenation of both carriers (prefixed `A_`/`B_` on a
/// name clash), Δ is taken from `e1`, and the base is both bases plus
/// `∀x̄ Δ1(R)(x̄) ↔ Δ2(R)(x̄)` for every target symbol `R`. Forbidden
/// structures of either side become `∀x̄ ¬χ` axioms over that side's symbols,
/// which forbids every structure restricting to them.
pub fn pullback(e1: &LocalExpression, e2: &LocalExpression) -> Result<LocalExpression> {
    e1.target().expect_eq(e2.target(), "pullback")?;
    let (s1, s2) = rename_apart(e1.carrier(), e2.carrier(), "A_", "B_");
    let sig = s1.concat(&s2)?;
    let m1 = shift(s1.len(), 0);
    let m2 = shift(s2.len(), s1.len());
    let mut axioms = Vec::new();
    let mut hints = Vec::new();
    for (e, map) in [(e1, &m1), (e2, &m2)] {
        for ax in e.base().to_axioms() {
            axioms.push(lift_axiom(&ax, &sig, map)?);
        }
        for f in e.forbidden() {
            axioms.push(lift_axiom(&bound_axiom(f), &sig, map)?);
        }
        for h in e.base().hints() {
            hints.push(match *h {
                OrderHint::Linear(s) => OrderHint::Linear(map[s]),
                OrderHint::Circular(s) => OrderHint::Circular(map[s]),
            });
        }
    }
    let tau = e1.target();
    for r in 0..tau.len() {
        let d1 = e1.definition().formula(r).body().rename_symbols(&m1);
        let d2 = e2.definition().formula(r).body().rename_symbols(&m2);
        axioms.push(sentence(&sig, tau.arity(r), d1.iff(d2))?);
    }
    let mut base = LocalClass::from_axioms(&sig, axioms)?;
    for h in hints {
        base = base.with_hint(h)?;
    }
    let bodies = (0..tau.len()).map(|r| e1.definition().formula(r).body().rename_symbols(&m1)).collect();
    let def = QfDefinition::from_nodes(tau, &sig, bodies)?;
    LocalExpression::new(def, base, Vec::new())
}

fn same_formula(a: &Formula, b: &Formula, what: &str) -> Result<()> {
    if logically_equivalent(a, b)? {
        return Ok(());
    }
    let (w, t) = distinguishing_model(a, b)?.expect("inequivalent formulas differ somewhere");
    Err(Error::logic(format!("{what}: `{a}` and `{b}` differ at {t:?} in {w:?}")))
}

fn identity_formula(sig: &Signature, s: usize) -> Formula {
    Formula::atom(sig, s)
}

/// Checks `d∘d = id` on every symbol, exactly.
fn check_involution_logically(d: &QfDefinition, what: &str) -> Result<()> {
    let dd = compose(d, d)?;
    for s in 0..d.source().len() {
        same_formula(dd.formula(s), &identity_formula(d.source(), s), what)?;
    }
    Ok(())
}

/// The same check restricted to the given structures.
fn check_on(xs: &[Structure], e: &LocalExpression, nu: &QfDefinition, mu: &QfDefinition) -> Result<()> {
    let delta = e.definition();
    for x in xs {
        let y = nu.reduct(x)?;
        if nu.reduct(&y)? != *x {
            return Err(Error::logic(format!("nu is not an involution on {x:?}")));
        }
        if !e.base().contains(&y)? {
            return Err(Error::logic(format!("nu maps the base member {x:?} outside the base")));
        }
        let g = delta.reduct(x)?;
        if mu.reduct(&mu.reduct(&g)?)? != g {
            return Err(Error::logic(format!("mu is not an involution on {g:?}")));
        }
        if delta.reduct(&y)? != mu.reduct(&g)? {
            return Err(Error::logic(format!("reduct does not commute with nu, mu on {x:?}")));
        }
    }
    Ok(())
}

fn hint_survives(nu: &QfDefinition, h: OrderHint) -> Result<bool> {
    let s = h.symbol();
    let sig = nu.source();
    let r = sig.arity(s);
    let phi = nu.formula(s);
    let same = Formula::atom(sig, s);
    let reversed = Formula::new(sig, r, Node::Atom(s, (0..r).rev().collect()))?;
    Ok(logically_equivalent(phi, &same)? || logically_equivalent(phi, &reversed)?)
}

/// Moves `e` along symmetries `nu` of the carrier and `mu` of the target:
/// `G` is a member of `e` iff `mu(G)` is a member of the result.
///
/// Both must be involutions and `Δ∘nu = mu∘Δ`. This is checked on every base
/// member with at most `window` vertices, or exactly on all structures when
/// enumerating the base is refused. Order hints survive when `nu` fixes or
/// reverses the order symbol.
pub fn transform(e: &LocalExpression, nu: &QfDefinition, mu: &QfDefinition) -> Result<LocalExpression> {
    nu.source().expect_eq(e.carrier(), "transform nu source")?;
    nu.carrier().expect_eq(e.carrier(), "transform nu carrier")?;
    mu.source().expect_eq(e.target(), "transform mu source")?;
    mu.carrier().expect_eq(e.target(), "transform mu carrier")?;
    match e.base().levels(e.window()) {
        Ok(levels) => {
            let all: Vec<Structure> = levels.into_iter().flatten().collect();
            check_on(&all, e, nu, mu)?;
        }
        Err(Error::BlowUp { .. }) => {
            check_involution_logically(nu, "nu is not an involution")?;
            check_involution_logically(mu, "mu is not an involution")?;
            let lhs = compose(e.definition(), nu)?;
            let rhs = compose(mu, e.definition())?;
            for r in 0..e.target().len() {
                same_formula(lhs.formula(r), rhs.formula(r), "reduct does not commute with nu, mu")?;
            }
        }
        Err(other) => return Err(other),
    }

    let sig = e.carrier();
    let axioms = match e.base().axioms() {
        Some(xs) => Some(
            xs.iter()
                .map(|a| Ok(UniversalSentence::new(nu.apply(a.body())?)))
                .collect::<Result<Vec<_>>>()?,
        ),
        None => None,
    };
    let bounds = match e.base().bounds() {
        Some(bs) => Some(bs.iter().map(|b| nu.reduct(b)).collect::<Result<Vec<_>>>()?),
        None => None,
    };
    let mut base = match (bounds, axioms) {
        (Some(b), Some(a)) => LocalClass::new(sig, b, a)?,
        (Some(b), None) => LocalClass::from_bounds(sig, b)?,
        (None, Some(a)) => LocalClass::from_axioms(sig, a)?,
        (None, None) => LocalClass::everything(sig),
    };
    for h in e.base().hints() {
        if hint_survives(nu, *h)? {
            base = base.with_hint(*h)?;
        }
    }
    let forbidden = e.forbidden().iter().map(|f| nu.reduct(f)).collect::<Result<Vec<_>>>()?;
    LocalExpression::new(e.definition().clone(), base, forbidden)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::bases::{self, at, ordered_signature};
    use crate::catalog::figures::*;
    use crate::catalog::recognizers;
    use crate::expressions::decide;
    use crate::structures::enumerate_graphs;

    fn member(e: &LocalExpression, g: &Structure) -> bool {
        decide(e, g).unwrap().is_some()
    }

    fn graphs(max: usize) -> Vec<Structure> {
        (0..=max).flat_map(|n| enumerate_graphs(n, true).unwrap()).collect()
    }

    fn all_graphs_expression() -> LocalExpression {
        LocalExpression::new(QfDefinition::identity(&Signature::graph()), LocalClass::graphs(), vec![]).unwrap()
    }

    fn edgeless_expression() -> LocalExpression {
        LocalExpression::new(
            QfDefinition::identity(&Signature::graph()),
            LocalClass::graphs(),
            vec![Structure::graph(2, &[(0, 1)])],
        )
        .unwrap()
    }

    #[test]
    fn subgraph_closure_of_directed_p3() {
        let p3 = Structure::digraph(3, &[(0, 1), (1, 2)]);
        assert_eq!(subgraph_closure(&p3, &bases::oriented(), &[0]).unwrap().len(), 3);
    }

    #[test]
    fn union_with_itself() {
        let e = chordal_peo().unwrap();
        let u = disjoint_union(&e, &e).unwrap();
        for g in graphs(4) {
            assert_eq!(member(&u, &g), member(&e, &g), "{g:?}");
        }
    }

    #[test]
    fn complete_or_edgeless() {
        let u = disjoint_union(&complete_lor().unwrap(), &edgeless_expression()).unwrap();
        for g in graphs(5) {
            let want = recognizers::complete(&g).unwrap() || g.edges().is_empty();
            assert_eq!(member(&u, &g), want, "{g:?}");
        }
    }

    #[test]
    fn chordal_or_cobipartite_accepts_c4() {
        let u = disjoint_union(&chordal_peo().unwrap(), &cobipartite_2ec().unwrap()).unwrap();
        let c4 = Structure::graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert!(member(&u, &c4));
        let c5 = Structure::graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        assert!(!member(&u, &c5));
    }

    #[test]
    fn pullback_with_everything_is_neutral() {
        let e = bipartite_or().unwrap();
        let p = pullback(&e, &all_graphs_expression()).unwrap();
        for g in graphs(5) {
            assert_eq!(member(&p, &g), member(&e, &g), "{g:?}");
        }
    }

    #[test]
    fn pullback_is_intersection() {
        let (a, b) = (pca_or().unwrap(), cobipartite_or().unwrap());
        let p = pullback(&a, &b).unwrap();
        for g in graphs(4) {
            assert_eq!(member(&p, &g), member(&a, &g) && member(&b, &g), "{g:?}");
        }
    }

    #[test]
    fn target_mismatch() {
        let t2 = Signature::new([("H", 3)]).unwrap();
        let other = LocalExpression::new(QfDefinition::identity(&t2), LocalClass::everything(&t2), vec![]).unwrap();
        assert!(pullback(&chordal_peo().unwrap(), &other).is_err());
        assert!(disjoint_union(&chordal_peo().unwrap(), &other).is_err());
    }

    fn mirror() -> QfDefinition {
        QfDefinition::from_nodes(&ordered_signature(), &ordered_signature(), vec![at(0, &[0, 1]), at(1, &[1, 0])]).unwrap()
    }

    #[test]
    fn mirror_keeps_interval_graphs() {
        let e = interval_lor().unwrap();
        let m = transform(&e, &mirror(), &QfDefinition::identity(&Signature::graph())).unwrap();
        assert_eq!(m.base().hints(), e.base().hints());
        for g in graphs(5) {
            assert_eq!(member(&m, &g), member(&e, &g), "{g:?}");
        }
    }

    #[test]
    fn arc_reversal_keeps_bipartite_graphs() {
        let e = bipartite_or().unwrap();
        let g1 = Signature::graph();
        let rev = QfDefinition::from_nodes(&g1, &g1, vec![at(0, &[1, 0])]).unwrap();
        let r = transform(&e, &rev, &QfDefinition::identity(&g1)).unwrap();
        for g in graphs(5) {
            assert_eq!(member(&r, &g), member(&e, &g), "{g:?}");
        }
    }

    #[test]
    fn complement_moves_to_complements() {
        let e = chordal_peo().unwrap();
        let s = ordered_signature();
        let co_l = QfDefinition::from_nodes(
            &s,
            &s,
            vec![Node::And(vec![at(0, &[0, 1]).not(), Node::neq(0, 1)]), at(1, &[0, 1])],
        )
        .unwrap();
        let c = transform(&e, &co_l, &bases::graph_complement()).unwrap();
        for g in graphs(5) {
            assert_eq!(member(&e, &g), member(&c, &g.complement_graph()), "{g:?}");
        }
    }

    #[test]
    fn non_commuting_symmetry_is_refused() {
        let e = chordal_peo().unwrap();
        let err = transform(&e, &mirror(), &bases::graph_complement()).unwrap_err();
        assert!(matches!(err, Error::Logic(_)), "{err:?}");
    }
}
