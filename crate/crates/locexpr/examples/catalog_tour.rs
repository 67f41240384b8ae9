//! Every shipped entry against its reference recognizer on graphs up to five
//! vertices.

use locexpr::catalog::recognizers::reference_recognizer;
use locexpr::catalog::{builtin, list};
use locexpr::expressions::decide;
use locexpr::structures::graphs_up_to;

fn main() -> locexpr::Result<()> {
    let graphs = graphs_up_to(5);
    for name in list() {
        let Ok(entry) = builtin(&name) else {
            println!("{name:<28} parameterised");
            continue;
        };
        let mut members = 0;
        let mut mismatches = 0;
        for g in &graphs {
            let inside = decide(&entry.expression, g)?.is_some();
            members += inside as usize;
            if let Some(r) = &entry.recognizer {
                mismatches += (reference_recognizer(r, g)? != inside) as usize;
            }
        }
        let check = match &entry.recognizer {
            Some(r) => format!("{mismatches} mismatches vs {r}"),
            None => "no recognizer".to_string(),
        };
        println!("{name:<28} {members:>3}/{} members, {check}", graphs.len());
    }
    Ok(())
}
