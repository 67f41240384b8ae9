//! Backtracking search for forbidden-pattern-free expansions with a
//! prescribed reduct.
//!
//! Vertices are placed in index order. Within a vertex, carrier symbols come
//! in signature order: a symbol carrying an order hint is one placement
//! variable (insertion position in the linear order, or gap in the cyclic
//! order with vertex 0 fixed), any other symbol contributes one boolean per
//! tuple whose largest entry is the vertex, lexicographic, false first.
//! Every constraint is checked as soon as its last variable is assigned.

mod naive;
mod problem;
mod search;

use std::fmt;
use std::time::Duration;

pub use naive::{count_naive, solve_naive};
pub use problem::{compile, ConstraintKind, SearchProblem};

use crate::structures::Structure;
use crate::Result;

/// Failed checks per constraint kind.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Failures {
    pub reduct: u64,
    pub axiom: u64,
    pub bound: u64,
    pub forbidden: u64,
}

impl Failures {
    pub(crate) fn add(&mut self, kind: ConstraintKind) {
        match kind {
            ConstraintKind::Reduct => self.reduct += 1,
            ConstraintKind::Axiom => self.axiom += 1,
            ConstraintKind::Bound => self.bound += 1,
            ConstraintKind::Forbidden => self.forbidden += 1,
        }
    }

    pub fn total(&self) -> u64 {
        self.reduct + self.axiom + self.bound + self.forbidden
    }
}

/// Counters of one search. Everything except `elapsed` is deterministic.
#[derive(Clone, Debug, Default)]
pub struct SearchStats {
    /// Variable assignments tried.
    pub nodes: u64,
    pub failures: Failures,
    pub elapsed: Duration,
}

impl SearchStats {
    pub(crate) fn absorb(&mut self, other: &SearchStats) {
        self.nodes += other.nodes;
        self.failures.reduct += other.failures.reduct;
        self.failures.axiom += other.failures.axiom;
        self.failures.bound += other.failures.bound;
        self.failures.forbidden += other.failures.forbidden;
    }
}

/// Key-value lines, one counter per line.
impl fmt::Display for SearchStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "nodes={}", self.nodes)?;
        writeln!(f, "fail.reduct={}", self.failures.reduct)?;
        writeln!(f, "fail.axiom={}", self.failures.axiom)?;
        writeln!(f, "fail.bound={}", self.failures.bound)?;
        writeln!(f, "fail.forbidden={}", self.failures.forbidden)?;
        write!(f, "elapsed_ms={}", self.elapsed.as_millis())
    }
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
    /// 1 runs the plain depth-first search; more splits the search below a
    /// fixed prefix and explores branches concurrently. Results and node
    /// counts do not depend on this value.
    pub threads: usize,
    /// Re-checks every fully assigned constraint at every node (slow).
    pub audit: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { max_nodes: None, max_time: None, threads: 1, audit: false }
    }
}

/// First expansion in search order, if any.
pub fn solve(p: &SearchProblem) -> Result<Option<Structure>> {
    Ok(solve_with(p, &SolveOptions::default())?.0)
}

pub fn solve_with(p: &SearchProblem, opts: &SolveOptions) -> Result<(Option<Structure>, SearchStats)> {
    if opts.threads > 1 {
        search::solve_parallel(p, opts)
    } else {
        search::solve_sequential(p, opts)
    }
}

/// Number of expansions, stopping at `cap`.
pub fn count_solutions(p: &SearchProblem, cap: u64) -> Result<u64> {
    Ok(count_solutions_with(p, cap, &SolveOptions::default())?.0)
}

pub fn count_solutions_with(p: &SearchProblem, cap: u64, opts: &SolveOptions) -> Result<(u64, SearchStats)> {
    if cap == 0 {
        return Err(crate::Error::input("cap must be at least 1"));
    }
    search::count_sequential(p, cap, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::figures::{bipartite_or, chordal_peo, rghv};
    use crate::structures::{enumerate_graphs, Signature};
    use crate::Error;

    fn cycle(n: usize) -> Structure {
        Structure::graph(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
    }

    fn k(n: usize) -> Structure {
        let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Structure::graph(n, &edges)
    }

    #[test]
    fn peo_counts() {
        let e = chordal_peo().unwrap();
        let count = |g: &Structure| count_solutions(&compile(&e, g).unwrap(), 1000).unwrap();
        assert_eq!(count(&k(3)), 6);
        assert_eq!(count(&Structure::graph(2, &[])), 2);
        assert_eq!(count(&cycle(4)), 0);
        assert_eq!(count(&Structure::graph(3, &[(0, 1), (1, 2)])), count_naive(&e, &Structure::graph(3, &[(0, 1), (1, 2)])).unwrap());
    }

    #[test]
    fn c4_search_stays_below_all_orders() {
        let e = chordal_peo().unwrap();
        let (x, stats) = solve_with(&compile(&e, &cycle(4)).unwrap(), &SolveOptions::default()).unwrap();
        assert!(x.is_none());
        // one order placement per vertex: at most 1 + 2 + 3 + 4 nodes per prefix chain
        assert!(stats.nodes <= 24 + 12 + 4 + 1, "{}", stats.nodes);
    }

    #[test]
    fn compiled_decisions() {
        let e = rghv(2).unwrap();
        let p = compile(&e, &k(3)).unwrap();
        assert_eq!(p.free_vertex_sets(0), 3);
        let id = crate::LocalExpression::new(
            crate::logic::QfDefinition::identity(&Signature::graph()),
            crate::LocalClass::graphs(),
            vec![],
        )
        .unwrap();
        assert_eq!(compile(&id, &cycle(4)).unwrap().free_tuples(0), 0);
    }

    #[test]
    fn agrees_with_naive_on_small_graphs() {
        for e in [chordal_peo().unwrap(), bipartite_or().unwrap()] {
            for n in 0..=4 {
                for g in enumerate_graphs(n, true).unwrap() {
                    let p = compile(&e, &g).unwrap();
                    let x = solve(&p).unwrap();
                    assert_eq!(x.is_some(), solve_naive(&e, &g).unwrap().is_some(), "{g:?}");
                    assert_eq!(count_solutions(&p, u64::MAX).unwrap(), count_naive(&e, &g).unwrap(), "{g:?}");
                }
            }
        }
    }

    #[test]
    fn threads_do_not_change_results() {
        let e = rghv(3).unwrap();
        for g in [cycle(5), k(4), cycle(6).complement_graph()] {
            let p = compile(&e, &g).unwrap();
            let one = solve_with(&p, &SolveOptions::default()).unwrap();
            let four = solve_with(&p, &SolveOptions { threads: 4, ..Default::default() }).unwrap();
            assert_eq!(one.0, four.0);
            assert_eq!(one.1.nodes, four.1.nodes);
            assert_eq!(one.1.failures, four.1.failures);
        }
    }

    #[test]
    fn audit_finds_no_missed_violation() {
        let e = chordal_peo().unwrap();
        for g in enumerate_graphs(5, true).unwrap() {
            let p = compile(&e, &g).unwrap();
            let plain = solve_with(&p, &SolveOptions::default()).unwrap();
            let audited = solve_with(&p, &SolveOptions { audit: true, ..Default::default() }).unwrap();
            assert_eq!(plain.0, audited.0);
        }
    }

    #[test]
    fn budget_is_an_error() {
        let e = rghv(3).unwrap();
        let p = compile(&e, &k(4)).unwrap();
        match solve_with(&p, &SolveOptions { max_nodes: Some(5), ..Default::default() }) {
            Err(Error::Timeout(stats)) => assert!(stats.nodes >= 5),
            other => panic!("{other:?}"),
        }
    }
}
