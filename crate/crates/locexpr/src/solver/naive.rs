//! Reference enumerator: builds every labelled expansion vertex by vertex
//! and tests it with the semantic definitions (class membership, embedding
//! search, reduct evaluation). The tuples of a new vertex are tried one
//! vertex set at a time, checking the induced substructure on that set.
//! Shares no code with the compiled search.

use std::collections::{BTreeMap, HashSet};

use super::problem::cyclic;
use crate::classes::OrderHint;
use crate::expressions::LocalExpression;
use crate::structures::{for_each_tuple, is_free, Structure};
use crate::Result;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    let mut used = vec![false; n];
    fn go(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                go(n, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    go(n, &mut cur, &mut used, &mut out);
    out
}

/// Every interpretation of the hinted symbols, without repeats.
fn order_choices(e: &LocalExpression, n: usize) -> Vec<Structure> {
    let sig = e.carrier();
    let mut acc = vec![Structure::new(sig, n)];
    for h in e.base().hints() {
        let mut next = Vec::new();
        let mut seen = HashSet::new();
        for s in &acc {
            for perm in permutations(n) {
                // perm lists the vertices in order; rank[v] is v's place
                let mut rank = vec![0; n];
                for (i, &v) in perm.iter().enumerate() {
                    rank[v] = i;
                }
                let mut t = s.clone();
                match *h {
                    OrderHint::Linear(sym) => {
                        for u in 0..n {
                            for v in 0..n {
                                t.set(sym, &[u, v], rank[u] < rank[v]);
                            }
                        }
                    }
                    OrderHint::Circular(sym) => {
                        for_each_tuple(n, 3, &mut [0; 3], &mut |x| {
                            t.set(sym, x, cyclic(rank[x[0]], rank[x[1]], rank[x[2]], n));
                        });
                    }
                }
                if seen.insert(t.clone()) {
                    next.push(t);
                }
            }
        }
        acc = next;
    }
    acc
}

/// Whether the substructure of `y` induced on `vs` could still be part of an
/// expansion of `g`.
fn locally_valid(e: &LocalExpression, g: &Structure, y: &Structure, vs: &[usize]) -> Result<bool> {
    let sub = y.induced(vs)?;
    Ok(e.base().contains(&sub)? && is_free(&sub, e.forbidden())? && e.definition().reduct(&sub)? == g.induced(vs)?)
}

/// Fresh tuples grouped by the vertices they mention, smaller sets first, so
/// that each group completes the substructure induced on its vertex set.
fn fresh_groups(e: &LocalExpression, v: usize) -> Vec<(Vec<usize>, Vec<(usize, Vec<usize>)>)> {
    let sig = e.carrier();
    let hinted: Vec<usize> = e.base().hints().iter().map(|h| h.symbol()).collect();
    let mut groups: BTreeMap<(usize, Vec<usize>), Vec<(usize, Vec<usize>)>> = BTreeMap::new();
    for sym in 0..sig.len() {
        if hinted.contains(&sym) {
            continue;
        }
        let r = sig.arity(sym);
        for_each_tuple(v + 1, r, &mut vec![0; r], &mut |t| {
            if t.contains(&v) {
                let mut vs = t.to_vec();
                vs.sort_unstable();
                vs.dedup();
                groups.entry((vs.len(), vs)).or_default().push((sym, t.to_vec()));
            }
        });
    }
    groups.into_iter().map(|((_, vs), ts)| (vs, ts)).collect()
}

struct Level<'a> {
    e: &'a LocalExpression,
    g: &'a Structure,
    orders: &'a Structure,
    target: Structure,
    groups: Vec<(Vec<usize>, Vec<(usize, Vec<usize>)>)>,
}

impl Level<'_> {
    fn assign(&self, i: usize, y: &mut Structure, out: &mut dyn FnMut(&Structure) -> bool) -> Result<bool> {
        if i == self.groups.len() {
            let ok = self.e.base().contains(y)?
                && is_free(y, self.e.forbidden())?
                && self.e.definition().reduct(y)? == self.target;
            return Ok(ok && extend(self.e, self.g, self.orders, y, out)?);
        }
        let (vs, tuples) = &self.groups[i];
        for mask in 0u64..1 << tuples.len() {
            for (j, (sym, t)) in tuples.iter().enumerate() {
                y.set(*sym, t, mask >> j & 1 == 1);
            }
            if locally_valid(self.e, self.g, y, vs)? && self.assign(i + 1, y, out)? {
                return Ok(true);
            }
        }
        for (sym, t) in tuples {
            y.set(*sym, t, false);
        }
        Ok(false)
    }
}

fn extend(
    e: &LocalExpression,
    g: &Structure,
    orders: &Structure,
    x: &Structure,
    out: &mut dyn FnMut(&Structure) -> bool,
) -> Result<bool> {
    let v = x.n();
    if v == g.n() {
        return Ok(out(x));
    }
    let sig = e.carrier();
    let hinted: Vec<usize> = e.base().hints().iter().map(|h| h.symbol()).collect();
    let prefix: Vec<usize> = (0..=v).collect();
    let mut y = orders.induced(&prefix)?;
    for sym in 0..sig.len() {
        if !hinted.contains(&sym) {
            for t in x.tuples(sym) {
                y.insert(sym, &t);
            }
        }
    }
    let level = Level { e, g, orders, target: g.induced(&prefix)?, groups: fresh_groups(e, v) };
    level.assign(0, &mut y, out)
}

fn all_solutions(e: &LocalExpression, g: &Structure, stop_at_first: bool) -> Result<Vec<Structure>> {
    e.check_target(g)?;
    let mut seen = HashSet::new();
    let mut list = Vec::new();
    for orders in order_choices(e, g.n()) {
        let empty = Structure::new(e.carrier(), 0);
        let done = extend(e, g, &orders, &empty, &mut |x| {
            if seen.insert(x.clone()) {
                list.push(x.clone());
            }
            stop_at_first
        })?;
        if done {
            break;
        }
    }
    Ok(list)
}

/// Some expansion of `g` found by brute force, if one exists.
pub fn solve_naive(e: &LocalExpression, g: &Structure) -> Result<Option<Structure>> {
    Ok(all_solutions(e, g, true)?.pop())
}

/// Number of distinct expansions of `g`, by brute force.
pub fn count_naive(e: &LocalExpression, g: &Structure) -> Result<u64> {
    Ok(all_solutions(e, g, false)?.len() as u64)
}
