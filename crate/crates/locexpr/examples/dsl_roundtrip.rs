//! An expression written in the DSL, decided, and printed back.

use locexpr::cli::dsl::parse;
use locexpr::expressions::{decide, validate};
use locexpr::Structure;

const TEXT: &str = "
signature Graph { rel E: 2; }
signature OR { rel E: 2; }

class Oriented over OR {
  axiom forall x1: !E(x1,x1);
  axiom forall x1,x2: !(E(x1,x2) & E(x2,x1));
}

definition Underlying : Graph <- OR {
  E(x1,x2) := E(x1,x2) | E(x2,x1);
}

# every orientation of three vertices containing a directed path 0 -> 1 -> 2;
# forbidding them leaves only sources and sinks, so the class is bipartite
structure Path over OR {
  vertices 3;
  E = {(0,1) (1,2)};
}

structure Transitive over OR {
  vertices 3;
  E = {(0,1) (0,2) (1,2)};
}

structure Cycle over OR {
  vertices 3;
  E = {(0,1) (1,2) (2,0)};
}

expression bipartite {
  target Graph;
  carrier OR;
  definition Underlying;
  base Oriented;
  forbid { Path Transitive Cycle }
}
";

fn main() -> locexpr::Result<()> {
    let doc = parse(TEXT)?;
    let e = doc.expression("bipartite").expect("declared above");
    for w in validate(e)?.warnings() {
        println!("warning: {w}");
    }
    let c4 = Structure::graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
    let k3 = Structure::graph(3, &[(0, 1), (1, 2), (0, 2)]);
    println!("C4 member: {}", decide(e, &c4)?.is_some());
    println!("K3 member: {}", decide(e, &k3)?.is_some());
    print!("{doc}");
    Ok(())
}
