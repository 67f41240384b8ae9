//! Search statistics, budgets, and the brute-force cross-check.

use locexpr::catalog::builtin;
use locexpr::solver::{compile, count_naive, count_solutions, solve_with, SolveOptions};
use locexpr::{Error, Structure};

fn main() -> locexpr::Result<()> {
    let e = builtin("threecol_loor")?.expression;
    let wheel = Structure::graph(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (5, 0), (5, 1), (5, 2), (5, 3), (5, 4)]);
    let p = compile(&e, &wheel)?;
    let (found, stats) = solve_with(&p, &SolveOptions::default())?;
    println!("W5 3-colourable: {}\n{stats}", found.is_some());

    let tight = SolveOptions { max_nodes: Some(10), ..SolveOptions::default() };
    match solve_with(&p, &tight) {
        Err(Error::Timeout(s)) => println!("budget of 10 nodes exhausted after {} nodes", s.nodes),
        other => println!("finished within budget: {:?}", other.map(|r| r.0.is_some())),
    }

    let c5 = Structure::graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
    let fast = count_solutions(&compile(&e, &c5)?, u64::MAX)?;
    let slow = count_naive(&e, &c5)?;
    println!("C5 expansions: search {fast}, brute force {slow}");
    Ok(())
}
