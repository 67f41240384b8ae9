//! Symmetries of carriers act on expressions: reversing the order keeps the
//! class, complementing edges and non-edges moves it to the complements.

use locexpr::catalog::{bases, builtin};
use locexpr::expressions::{decide, transform};
use locexpr::logic::Node;
use locexpr::structures::graphs_up_to;
use locexpr::{QfDefinition, Signature};

fn main() -> locexpr::Result<()> {
    let s = bases::ordered_signature();
    let at = |sym: usize, vs: &[usize]| Node::Atom(sym, vs.to_vec());

    let mirror = QfDefinition::from_nodes(&s, &s, vec![at(0, &[0, 1]), at(1, &[1, 0])])?;
    let interval = builtin("interval_lor")?.expression;
    let mirrored = transform(&interval, &mirror, &QfDefinition::identity(&Signature::graph()))?;

    let co_l = QfDefinition::from_nodes(&s, &s, vec![Node::And(vec![at(0, &[0, 1]).not(), Node::neq(0, 1)]), at(1, &[0, 1])])?;
    let chordal = builtin("chordal_peo")?.expression;
    let co_chordal = transform(&chordal, &co_l, &bases::graph_complement())?;

    let (mut same, mut moved, mut total) = (0, 0, 0);
    for g in graphs_up_to(5) {
        total += 1;
        same += (decide(&mirrored, &g)?.is_some() == decide(&interval, &g)?.is_some()) as usize;
        moved += (decide(&co_chordal, &g.complement_graph())?.is_some() == decide(&chordal, &g)?.is_some()) as usize;
    }
    println!("mirror of interval_lor agrees on {same}/{total} graphs");
    println!("complement transform of chordal_peo decides co-chordal graphs: {moved}/{total}");

    match transform(&chordal, &mirror, &bases::graph_complement()) {
        Ok(_) => println!("unexpected: mismatched symmetry accepted"),
        Err(e) => println!("mirror with graph complement is refused: {e}"),
    }
    Ok(())
}
