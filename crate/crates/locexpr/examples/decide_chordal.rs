//! Decide chordality of a few graphs and check the certificates.

use locexpr::catalog::builtin;
use locexpr::cli::dsl::certificate_text;
use locexpr::expressions::{decide, verify};
use locexpr::structures::io::to_graph6;
use locexpr::Structure;

fn main() -> locexpr::Result<()> {
    let e = builtin("chordal_peo")?.expression;
    let graphs = [
        ("K4", Structure::graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])),
        ("P4", Structure::graph(4, &[(0, 1), (1, 2), (2, 3)])),
        ("C4", Structure::graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)])),
        ("gem", Structure::graph(5, &[(0, 1), (1, 2), (2, 3), (4, 0), (4, 1), (4, 2), (4, 3)])),
    ];
    for (name, g) in graphs {
        match decide(&e, &g)? {
            Some(cert) => {
                println!("{name} ({}) is chordal; verified: {}", to_graph6(&g), verify(&e, &g, &cert)?);
                print!("{}", certificate_text(e.carrier(), cert.structure()));
            }
            None => println!("{name} ({}) is not chordal", to_graph6(&g)),
        }
    }
    Ok(())
}
