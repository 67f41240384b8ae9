//! A definition synthesized from a functor given on small structures, checked
//! for logical equivalence against the expected formula.

use locexpr::logic::{distinguishing_model, logically_equivalent, synthesize_definition, FunctorTable, Node};
use locexpr::{Formula, Signature, Structure};

fn main() -> locexpr::Result<()> {
    let e = Signature::graph();
    let closure = |d: &Structure| {
        let mut out = d.clone();
        for t in d.tuples(0) {
            out.insert(0, &[t[1], t[0]]);
        }
        out
    };
    let table = FunctorTable::from_fn(&e, &e, &|_| true, &closure)?;
    println!("table has {} entries on at most {} vertices", table.entries().len(), table.bound());
    let d = synthesize_definition(&table)?;
    let want = Formula::new(&e, 2, Node::Or(vec![Node::Atom(0, vec![0, 1]), Node::Atom(0, vec![1, 0])]))?;
    println!("synthesized E(x1,x2) equivalent to E(x1,x2) | E(x2,x1): {}", logically_equivalent(d.formula(0), &want)?);

    let arc = Formula::new(&e, 2, Node::Atom(0, vec![0, 1]))?;
    if let Some((model, tuple)) = distinguishing_model(&want, &arc)? {
        println!("E(x1,x2) | E(x2,x1) and E(x1,x2) differ at {tuple:?} in {:?}", model.tuples(0));
    }
    Ok(())
}
