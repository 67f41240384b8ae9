use std::collections::HashMap;

use locexpr::catalog::figures::{self, MEntry};
use locexpr::catalog::recognizers::{self, reference_recognizer};
use locexpr::catalog::{builtin, FIXED};
use locexpr::expressions::{decide, verify, Certificate};
use locexpr::solver::{compile, count_solutions};
use locexpr::structures::{canonical_form, enumerate_graphs, graphs_up_to};
use locexpr::{LocalExpression, Structure};
use sha2::{Digest, Sha256};

fn member(e: &LocalExpression, g: &Structure) -> bool {
    decide(e, g).unwrap().is_some()
}

fn clique(k: usize) -> Structure {
    let edges: Vec<_> = (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v))).collect();
    Structure::graph(k, &edges)
}

fn cycle(n: usize) -> Structure {
    Structure::graph(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
}

#[test]
fn entries_match_their_recognizers() {
    for f in FIXED {
        let entry = builtin(f.name).unwrap();
        let Some(rec) = &entry.recognizer else { continue };
        for g in graphs_up_to(5) {
            assert_eq!(member(&entry.expression, &g), reference_recognizer(rec, &g).unwrap(), "{} on {g:?}", f.name);
        }
    }
}

#[test]
fn memberships_are_hereditary() {
    for f in FIXED {
        let e = builtin(f.name).unwrap().expression;
        let mut known: HashMap<Structure, bool> = HashMap::new();
        for n in 0..=6 {
            for g in enumerate_graphs(n, true).unwrap() {
                let inside = member(&e, &g);
                if inside {
                    for v in 0..n {
                        let rest: Vec<usize> = (0..n).filter(|&u| u != v).collect();
                        let sub = canonical_form(&g.induced(&rest).unwrap());
                        assert_ne!(known.get(&sub), Some(&false), "{}: {g:?} in, {sub:?} out", f.name);
                    }
                }
                known.insert(canonical_form(&g), inside);
            }
        }
    }
}

#[test]
fn drawn_cobipartite_set_rejects_k3_plus_k1() {
    let g = Structure::graph(4, &[(0, 1), (1, 2), (0, 2)]);
    assert!(recognizers::cobipartite(&g).unwrap());
    assert!(!member(&builtin("cobipartite_2ec_as_drawn").unwrap().expression, &g));
    assert!(member(&builtin("cobipartite_2ec").unwrap().expression, &g));
}

#[test]
fn loor_coding_is_a_bijection_on_certificates() {
    let loor = figures::threecol_loor().unwrap();
    let lo2ec = figures::threecol_lo2ec().unwrap();
    for g in graphs_up_to(5) {
        let a = count_solutions(&compile(&loor, &g).unwrap(), u64::MAX).unwrap();
        let b = count_solutions(&compile(&lo2ec, &g).unwrap(), u64::MAX).unwrap();
        assert_eq!(a, b, "{g:?}");
        if let Some(x) = decide(&loor, &g).unwrap() {
            let y = figures::code_loor_to_lo2ec(x.structure()).unwrap();
            assert!(verify(&lo2ec, &g, &Certificate::new(y.clone())).unwrap());
            assert_eq!(&figures::decode_lo2ec_to_loor(&y).unwrap(), x.structure());
        }
    }
}

#[test]
fn csp_small_targets() {
    let k1 = figures::csp_expression(&clique(1)).unwrap();
    let k2 = figures::csp_expression(&clique(2)).unwrap();
    for g in graphs_up_to(5) {
        assert_eq!(member(&k1, &g), g.edges().is_empty(), "{g:?}");
        assert_eq!(member(&k2, &g), recognizers::bipartite(&g).unwrap(), "{g:?}");
    }
    for g in enumerate_graphs(6, true).unwrap() {
        assert_eq!(member(&k2, &g), recognizers::bipartite(&g).unwrap(), "{g:?}");
    }
}

#[test]
fn csp_target_that_is_not_a_clique() {
    // P3 as H: a graph maps to P3 iff it is bipartite, but the
    // equivalence-graph presentation also bounds the number of classes
    let p3 = Structure::graph(3, &[(0, 1), (1, 2)]);
    let e = figures::csp_expression(&p3).unwrap();
    for g in graphs_up_to(5) {
        assert_eq!(member(&e, &g), recognizers::bipartite(&g).unwrap(), "{g:?}");
    }
}

#[test]
fn csp_guard() {
    assert!(figures::csp_expression(&clique(5)).is_err());
    assert!(figures::csp_expression(&Structure::digraph(2, &[(0, 1)])).is_err());
}

#[test]
fn matrix_partitions() {
    let star = figures::m_partition_expression(&[vec![MEntry::Star]]).unwrap();
    let split = figures::m_partition_expression(&figures::parse_matrix("1*;*0").unwrap()).unwrap();
    let obstructions = [Structure::graph(4, &[(0, 1), (2, 3)]), cycle(4), cycle(5)];
    for g in graphs_up_to(6) {
        assert!(member(&star, &g));
        let free = !obstructions.iter().any(|o| locexpr::structures::embeds(o, &g).unwrap());
        assert_eq!(member(&split, &g), free, "{g:?}");
    }
    for k in 1..=3 {
        let e = builtin(&format!("kcol_partition({k})")).unwrap().expression;
        for g in graphs_up_to(5) {
            assert_eq!(member(&e, &g), recognizers::k_colourable(&g, k).unwrap(), "k={k} {g:?}");
        }
    }
    assert!(figures::parse_matrix("1x;*0").is_err());
    assert!(figures::m_partition_expression(&figures::parse_matrix("1*;00").unwrap()).is_err());
}

#[test]
fn plus_entry_limits_a_part_to_one_vertex() {
    // [[+, *], [*, 0]]: at most one vertex in part 1, the rest independent
    let e = figures::m_partition_expression(&figures::parse_matrix("+*;*0").unwrap()).unwrap();
    for g in graphs_up_to(5) {
        let want = (0..g.n()).any(|v| {
            let rest: Vec<usize> = (0..g.n()).filter(|&u| u != v).collect();
            g.induced(&rest).unwrap().edges().is_empty()
        }) || g.n() == 0;
        assert_eq!(member(&e, &g), want, "{g:?}");
    }
}

#[test]
fn pmixed_edgeless_is_comparability_up_to_six() {
    let e = builtin("pmixed(edgeless)").unwrap().expression;
    for g in enumerate_graphs(6, true).unwrap() {
        assert_eq!(member(&e, &g), recognizers::comparability(&g).unwrap(), "{g:?}");
    }
}

#[test]
fn height_two_comparability_is_bipartite() {
    let e = builtin("comparability_height(2)").unwrap().expression;
    for g in graphs_up_to(6) {
        assert_eq!(member(&e, &g), recognizers::bipartite(&g).unwrap(), "{g:?}");
    }
}

#[test]
fn data_file_checksums() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let manifest = std::fs::read_to_string(dir.join("SHA256SUMS")).unwrap();
    let mut listed = 0;
    for line in manifest.lines().filter(|l| !l.trim().is_empty()) {
        let (want, file) = line.split_once("  ").unwrap();
        let bytes = std::fs::read(dir.join(file)).unwrap();
        let got: String = Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect();
        assert_eq!(got, want, "{file} changed; regenerate the data files and the manifest together");
        listed += 1;
    }
    assert_eq!(listed, FIXED.len());
}
