//! Minimal forbidden induced subgraphs recovered from membership oracles.

use locexpr::catalog::{bases, builtin, recognizers};
use locexpr::classes::{mine_bounds, preimage_bounds, LocalClass};
use locexpr::expressions::decide;
use locexpr::structures::io::to_graph6;
use locexpr::{Signature, Structure};

fn show(label: &str, bounds: &[Structure]) {
    let codes: Vec<String> = bounds.iter().map(to_graph6).collect();
    println!("{label}: {}", codes.join(" "));
}

fn main() -> locexpr::Result<()> {
    let graphs = LocalClass::graphs();
    let split = mine_bounds(&|g| recognizers::split(g).unwrap(), &graphs, 6)?;
    for c in &split.per_size {
        println!("n={} graphs={} split={} new bounds={}", c.n, c.ambient, c.members, c.bounds);
    }
    show("split", &split.bounds);

    let chordal = builtin("chordal_peo")?.expression;
    let report = mine_bounds(&|g| decide(&chordal, g).unwrap().is_some(), &graphs, 6)?;
    show("chordal_peo", &report.bounds);

    // orientations whose underlying graph is a triangle
    let tau = Signature::graph();
    let oriented = bases::oriented();
    let k3 = Structure::graph(3, &[(0, 1), (1, 2), (0, 2)]);
    let pre = preimage_bounds(&bases::symmetric_closure(&tau, 0), &[k3], &oriented, 4)?;
    println!("oriented preimages of K3: {}", pre.len());
    for p in &pre {
        println!("  arcs {:?}", p.tuples(0));
    }
    Ok(())
}
