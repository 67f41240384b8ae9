//! SNP sentences of catalog entries, parsed back and evaluated.

use locexpr::catalog::builtin;
use locexpr::cli::dsl::parse_snp;
use locexpr::expressions::render_snp;
use locexpr::Structure;

fn main() -> locexpr::Result<()> {
    let c5 = Structure::graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
    for name in ["bipartite_or", "threecol_loor", "chordal_peo"] {
        let e = builtin(name)?.expression;
        let text = render_snp(&e)?;
        let sentence = parse_snp(&text, e.target())?;
        println!("# {name}\n{text}\nC5 satisfies it: {}\n", sentence.evaluate(&c5)?);
    }
    Ok(())
}
