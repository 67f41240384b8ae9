//! The pullback of two expressions decides the intersection of their classes.

use locexpr::catalog::builtin;
use locexpr::expressions::{decide, pullback};
use locexpr::structures::graphs_up_to;
use locexpr::structures::io::to_graph6;

fn main() -> locexpr::Result<()> {
    let a = builtin("pca_or")?.expression;
    let b = builtin("cobipartite_or")?.expression;
    let p = pullback(&a, &b)?;
    println!("carrier of the pullback: {:?}", p.carrier().symbols().iter().map(|s| &s.name).collect::<Vec<_>>());
    let mut both = Vec::new();
    for g in graphs_up_to(5) {
        let inside = decide(&p, &g)?.is_some();
        assert_eq!(inside, decide(&a, &g)?.is_some() && decide(&b, &g)?.is_some());
        if inside {
            both.push(to_graph6(&g));
        }
    }
    println!("{} graphs on at most 5 vertices are in both classes:", both.len());
    println!("{}", both.join(" "));
    Ok(())
}
