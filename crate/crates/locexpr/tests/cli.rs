use std::path::{Path, PathBuf};
use std::process::Command;

use locexpr::cli::dsl::parse;
use locexpr::cli::{main_with_args, EXIT_FALSE, EXIT_INPUT, EXIT_TRUE, EXIT_UNKNOWN};
use locexpr::structures::find_isomorphism;
use locexpr::structures::io::from_graph6;
use locexpr::Structure;
use tempfile::TempDir;

fn cycle(n: usize) -> Structure {
    Structure::graph(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
}

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn run(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("locexpr").chain(args.iter().copied());
    let code = main_with_args(argv, &mut out, &mut err);
    Run { code, out: String::from_utf8(out).unwrap(), err: String::from_utf8(err).unwrap() }
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn fixtures() -> (TempDir, PathBuf, PathBuf) {
    let dir = TempDir::new().unwrap();
    let k4 = write(&dir, "k4.edgelist", "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    let c5 = write(&dir, "c5.g6", "Dhc\n");
    (dir, k4, c5)
}

#[test]
fn decide_k4_chordal() {
    let (_d, k4, _) = fixtures();
    let r = run(&["decide", "--expr", "chordal_peo", "--graph", s(&k4)]);
    assert_eq!(r.code, EXIT_TRUE, "{}", r.err);
    assert!(r.out.starts_with("member\n"));
    assert!(r.out.contains("structure certificate over"));
}

#[test]
fn decide_c5_not_cobipartite() {
    let (_d, _, c5) = fixtures();
    let r = run(&["decide", "--expr", "cobipartite_2ec", "--graph", s(&c5)]);
    assert_eq!(r.code, EXIT_FALSE);
    assert_eq!(r.out, "non-member\n");
}

#[test]
fn equiv_symmetric_closure_differs_on_a_single_arc() {
    let r = run(&["equiv", "--f", "E(x1,x2)|E(x2,x1)", "--g", "E(x1,x2)"]);
    assert_eq!(r.code, EXIT_FALSE);
    assert!(r.out.starts_with("different\n"));
    // the witness has exactly one arc
    let w: Vec<&str> = r.out.lines().filter(|l| l.trim_start().starts_with("E =")).collect();
    assert_eq!(w.len(), 1, "{}", r.out);
    assert_eq!(w[0].matches('(').count(), 1, "{}", r.out);
}

#[test]
fn equiv_equivalent_formulas() {
    let r = run(&["equiv", "--f", "!(E(x1,x2) & E(x2,x1))", "--g", "!E(x1,x2) | !E(x2,x1)"]);
    assert_eq!(r.code, EXIT_TRUE, "{}", r.err);
    assert_eq!(r.out, "equivalent\n");
    let r = run(&["equiv", "--f", "P(x1)", "--g", "P(x1) & (Q(x1) | !Q(x1))", "--signature", "P/1,Q/1"]);
    assert_eq!(r.code, EXIT_TRUE, "{}", r.err);
}

#[test]
fn certificate_round_trip() {
    let (d, k4, _) = fixtures();
    let cert = d.path().join("k4.cert");
    let r = run(&["decide", "--expr", "chordal_peo", "--graph", s(&k4), "--cert", s(&cert)]);
    assert_eq!(r.code, EXIT_TRUE);
    assert_eq!(r.out, "member\n");
    let r = run(&["verify", "--expr", "chordal_peo", "--graph", s(&k4), "--cert", s(&cert)]);
    assert_eq!((r.code, r.out.as_str()), (EXIT_TRUE, "valid\n"), "{}", r.err);

    // a certificate for a different graph is rejected
    let p4 = write(&d, "p4.edgelist", "4 3\n0 1\n1 2\n2 3\n");
    let r = run(&["verify", "--expr", "chordal_peo", "--graph", s(&p4), "--cert", s(&cert)]);
    assert_eq!(r.code, EXIT_FALSE);
    assert!(r.out.starts_with("invalid\n"));
}

#[test]
fn verify_rejects_a_forbidden_pattern() {
    let d = TempDir::new().unwrap();
    let p3 = write(&d, "p3.edgelist", "3 2\n0 1\n1 2\n");
    // orientation 0 -> 1 -> 2 contains the forbidden directed path
    let cert = write(&d, "bad.cert", "signature Carrier { rel E: 2; }\nstructure certificate over Carrier {\n  vertices 3;\n  E = {(0,1) (1,2)};\n}\n");
    let r = run(&["verify", "--expr", "rghv(2)", "--graph", s(&p3), "--cert", s(&cert)]);
    assert_eq!(r.code, EXIT_FALSE, "{}", r.err);
    let good = write(&d, "good.cert", "signature Carrier { rel E: 2; }\nstructure certificate over Carrier {\n  vertices 3;\n  E = {(0,1) (2,1)};\n}\n");
    let r = run(&["verify", "--expr", "rghv(2)", "--graph", s(&p3), "--cert", s(&good)]);
    assert_eq!(r.code, EXIT_TRUE, "{}{}", r.out, r.err);
}

#[test]
fn budget_exhaustion_is_unknown() {
    let d = TempDir::new().unwrap();
    let c7 = write(&d, "c7.edgelist", "7 7\n0 1\n1 2\n2 3\n3 4\n4 5\n5 6\n6 0\n");
    let r = run(&["decide", "--expr", "threecol_loor", "--graph", s(&c7), "--max-nodes", "3", "--stats"]);
    assert_eq!(r.code, EXIT_UNKNOWN);
    assert!(r.out.starts_with("unknown\n[stats]\nnodes="), "{}", r.out);
    assert!(!r.out.contains("elapsed_ms"));
}

#[test]
fn stats_block() {
    let (_d, k4, _) = fixtures();
    let r = run(&["decide", "--expr", "chordal_peo", "--graph", s(&k4), "--stats", "--machine"]);
    assert_eq!(r.code, EXIT_TRUE);
    let lines: Vec<&str> = r.out.lines().collect();
    assert_eq!(lines[0], "result=member");
    assert!(lines[1..].iter().all(|l| l.contains('=')), "{}", r.out);
    assert!(lines.iter().any(|l| l.starts_with("nodes=")));

    let r = run(&["decide", "--expr", "chordal_peo", "--graph", s(&k4), "--stats", "--deterministic", "false"]);
    assert_eq!(r.code, EXIT_TRUE);
    assert!(r.out.contains("elapsed_ms="), "{}", r.out);
}

#[test]
fn deterministic_output_repeats() {
    let (_d, k4, _) = fixtures();
    let a = run(&["decide", "--expr", "threecol_lo2ec", "--graph", s(&k4), "--stats"]);
    let b = run(&["decide", "--expr", "threecol_lo2ec", "--graph", s(&k4), "--stats"]);
    assert_eq!(a.code, EXIT_FALSE);
    assert_eq!(a.out, b.out);
}

#[test]
fn decide_all_counts_certificates() {
    let (_d, k4, _) = fixtures();
    // every ordering of K4 is a perfect elimination ordering
    let r = run(&["decide", "--expr", "chordal_peo", "--graph", s(&k4), "--all"]);
    assert_eq!(r.code, EXIT_TRUE);
    assert_eq!(r.out, "member\ncertificates=24\n");
}

#[test]
fn input_errors() {
    let d = TempDir::new().unwrap();
    let txt = write(&d, "k2.txt", "2 1\n0 1\n");
    let r = run(&["decide", "--expr", "chordal_peo", "--graph", s(&txt)]);
    assert_eq!(r.code, EXIT_INPUT);
    assert!(r.err.starts_with("error:"));

    let two = write(&d, "two.g6", "A_\nA?\n");
    assert_eq!(run(&["decide", "--expr", "chordal_peo", "--graph", s(&two)]).code, EXIT_INPUT);

    let bad = write(&d, "bad.edgelist", "3 2\n0 1\n");
    assert_eq!(run(&["decide", "--expr", "chordal_peo", "--graph", s(&bad)]).code, EXIT_INPUT);

    let k2 = write(&d, "k2.g6", "A_\n");
    assert_eq!(run(&["decide", "--expr", "no_such_entry", "--graph", s(&k2)]).code, EXIT_INPUT);
    assert_eq!(run(&["decide", "--expr", "chordal_peo", "--graph", "/nonexistent.g6"]).code, EXIT_INPUT);
    assert_eq!(run(&["frobnicate"]).code, EXIT_INPUT);
    assert_eq!(run(&["decide", "--graph", s(&k2)]).code, EXIT_INPUT);
    assert_eq!(run(&["equiv", "--f", "E(x1", "--g", "E(x1,x2)"]).code, EXIT_INPUT);
    assert_eq!(run(&["--help"]).code, EXIT_TRUE);
}

#[test]
fn expressions_from_files() {
    let d = TempDir::new().unwrap();
    let text = locexpr::catalog::show("bipartite_or").unwrap();
    let file = write(&d, "bip.lex", &text);
    let c5 = write(&d, "c5.g6", "Dhc\n");
    let c4 = write(&d, "c4.edgelist", "4 4\n0 1\n1 2\n2 3\n3 0\n");
    assert_eq!(run(&["decide", "--expr", s(&file), "--graph", s(&c5)]).code, EXIT_FALSE);
    assert_eq!(run(&["decide", "--expr", s(&file), "--graph", s(&c4)]).code, EXIT_TRUE);
    let named = format!("{}#bipartite_or", s(&file));
    assert_eq!(run(&["decide", "--expr", &named, "--graph", s(&c4)]).code, EXIT_TRUE);
    let missing = format!("{}#nope", s(&file));
    assert_eq!(run(&["decide", "--expr", &missing, "--graph", s(&c4)]).code, EXIT_INPUT);
}

#[test]
fn bounds_of_chordal() {
    let r = run(&["bounds", "--expr", "chordal_peo", "--max-vertices", "5"]);
    assert_eq!(r.code, EXIT_TRUE, "{}", r.err);
    let bounds: Vec<Structure> =
        r.out.lines().filter(|l| !l.starts_with("n=")).map(|l| from_graph6(l).unwrap()).collect();
    assert_eq!(bounds.len(), 2, "{}", r.out);
    for (b, n) in bounds.iter().zip([4, 5]) {
        assert!(find_isomorphism(b, &cycle(n)).unwrap().is_some(), "{b:?}");
    }
}

#[test]
fn enumerate_bipartite() {
    let r = run(&["enumerate", "--expr", "bipartite_or", "--max-vertices", "4"]);
    assert_eq!(r.code, EXIT_TRUE);
    // bipartite graphs on 0..4 vertices: 1 + 1 + 2 + 3 + 7
    assert_eq!(r.out.lines().count(), 14, "{}", r.out);
    let r = run(&["enumerate", "--expr", "bipartite_or", "--max-vertices", "3", "--all"]);
    assert_eq!(r.out.lines().count(), 1 + 1 + 2 + 4);
    assert!(r.out.contains("Bw non-member"), "{}", r.out);
}

#[test]
fn snp_output() {
    let r = run(&["snp", "--expr", "bipartite_or"]);
    assert_eq!(r.code, EXIT_TRUE);
    assert!(r.out.contains("exists"), "{}", r.out);
    assert!(r.out.contains("forall"), "{}", r.out);
}

#[test]
fn synth_complement_table() {
    let d = TempDir::new().unwrap();
    let table = "signature Source { rel E: 2; }\nsignature Target { rel E: 2; }\n\
        structure in_0 over Source { vertices 0; }\nstructure out_0 over Target { vertices 0; }\n\
        structure in_1 over Source { vertices 1; }\nstructure out_1 over Target { vertices 1; }\n\
        structure in_2 over Source { vertices 2; }\nstructure out_2 over Target { vertices 2; E = {(0,1) (1,0)}; }\n\
        structure in_3 over Source { vertices 2; E = {(0,1) (1,0)}; }\nstructure out_3 over Target { vertices 2; }\n";
    let path = write(&d, "complement.lex", table);
    let r = run(&["synth", "--table", s(&path)]);
    assert_eq!(r.code, EXIT_TRUE, "{}", r.err);
    let doc = parse(&format!("signature Source {{ rel E: 2; }}\nsignature Target {{ rel E: 2; }}\n{}", r.out)).unwrap();
    let def = doc.definition("Synthesized").unwrap();
    let c5 = cycle(5);
    assert_eq!(def.reduct(&c5).unwrap(), c5.complement_graph());

    let broken = write(&d, "broken.lex", &table.replace("structure out_3 over Target { vertices 2; }\n", ""));
    assert_eq!(run(&["synth", "--table", s(&broken)]).code, EXIT_INPUT);
}

#[test]
fn catalog_commands() {
    let r = run(&["catalog", "list"]);
    assert_eq!(r.code, EXIT_TRUE);
    assert!(r.out.lines().any(|l| l.starts_with("chordal_peo\tchordal\t")), "{}", r.out);
    assert!(r.out.lines().any(|l| l.starts_with("rghv(k)\t")), "{}", r.out);
    let r = run(&["catalog", "show", "chordal_peo"]);
    assert_eq!(r.code, EXIT_TRUE);
    assert!(r.out.starts_with("# chordal_peo\n"));
    assert!(parse(&r.out).unwrap().expression("chordal_peo").is_some());
    let r = run(&["catalog", "show", "rghv(4)"]);
    assert_eq!(r.code, EXIT_TRUE);
    assert!(parse(&r.out).unwrap().expression("rghv_4").is_some(), "{}", r.out);
    assert_eq!(run(&["catalog", "show", "rghv(x)"]).code, EXIT_INPUT);
}

#[test]
fn binary_exit_codes() {
    let (_d, k4, c5) = fixtures();
    let bin = env!("CARGO_BIN_EXE_locexpr");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code().unwrap();
    assert_eq!(status(&["decide", "--expr", "chordal_peo", "--graph", s(&k4)]), 0);
    assert_eq!(status(&["decide", "--expr", "cobipartite_2ec", "--graph", s(&c5)]), 1);
    assert_eq!(status(&["decide", "--expr", "threecol_loor", "--graph", s(&c5), "--max-nodes", "2"]), 2);
    assert_eq!(status(&["decide", "--expr", "chordal_peo"]), 3);
}
