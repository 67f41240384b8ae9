use locexpr::catalog::bases;
use locexpr::logic::{compose, Node};
use locexpr::structures::{enumerate_embeddings, enumerate_structures, find_isomorphism, is_embedding};
use locexpr::{Formula, QfDefinition, Signature, Structure};
use proptest::prelude::*;

fn sig(symbols: &[(&str, usize)]) -> Signature {
    Signature::new(symbols.iter().copied()).unwrap()
}

fn node(sig: Signature, vars: usize) -> BoxedStrategy<Node> {
    let arities: Vec<usize> = sig.symbols().iter().map(|s| s.arity).collect();
    let atom = (0..arities.len()).prop_flat_map(move |s| {
        proptest::collection::vec(0..vars, arities[s]).prop_map(move |vs| Node::Atom(s, vs))
    });
    let leaf = prop_oneof![
        1 => Just(Node::True),
        1 => Just(Node::False),
        2 => (0..vars, 0..vars).prop_map(|(i, j)| Node::Eq(i, j)),
        6 => atom,
    ];
    leaf.prop_recursive(3, 16, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(Node::not),
            proptest::collection::vec(inner.clone(), 1..4).prop_map(Node::And),
            proptest::collection::vec(inner, 1..4).prop_map(Node::Or),
        ]
    })
    .boxed()
}

fn structure(sig: Signature, max_n: usize) -> BoxedStrategy<Structure> {
    (1..=max_n)
        .prop_flat_map(move |n| {
            let sizes: Vec<usize> = sig.symbols().iter().map(|s| n.pow(s.arity as u32)).collect();
            let total: usize = sizes.iter().sum();
            let sig = sig.clone();
            proptest::collection::vec(any::<bool>(), total).prop_map(move |bits| {
                let mut a = Structure::new(&sig, n);
                let mut k = 0;
                for s in 0..sig.len() {
                    let r = sig.arity(s);
                    for i in 0..sizes[s] {
                        let t: Vec<usize> = (0..r).map(|p| i / n.pow((r - 1 - p) as u32) % n).collect();
                        a.set(s, &t, bits[k]);
                        k += 1;
                    }
                }
                a
            })
        })
        .boxed()
}

/// A definition of `source` from `carrier`: one random formula per symbol.
fn definition(source: Signature, carrier: Signature) -> BoxedStrategy<QfDefinition> {
    let parts: Vec<BoxedStrategy<Node>> =
        source.symbols().iter().map(|s| node(carrier.clone(), s.arity.max(1))).collect();
    parts
        .prop_map(move |bodies| {
            let bodies = bodies
                .into_iter()
                .enumerate()
                .map(|(i, b)| if source.arity(i) == 0 { Node::True } else { b })
                .collect();
            QfDefinition::from_nodes(&source, &carrier, bodies).unwrap()
        })
        .boxed()
}

fn tau() -> Signature {
    sig(&[("E", 2)])
}

fn sigma() -> Signature {
    sig(&[("A", 2), ("U", 1)])
}

fn pi() -> Signature {
    sig(&[("P", 1), ("Q", 2)])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn translation(d in definition(tau(), sigma()), phi in node(tau(), 3), a in structure(sigma(), 4), seed in any::<u64>()) {
        let f = Formula::new(&tau(), 3, phi).unwrap();
        let n = a.n();
        let t: Vec<usize> = (0..3).map(|i| (seed >> (8 * i)) as usize % n).collect();
        let lhs = d.apply(&f).unwrap().evaluate(&a, &t).unwrap();
        let rhs = f.evaluate(&d.reduct(&a).unwrap(), &t).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn composition(g in definition(tau(), sigma()), d in definition(sigma(), pi()), a in structure(pi(), 4)) {
        let gd = compose(&g, &d).unwrap();
        prop_assert_eq!(gd.reduct(&a).unwrap(), g.reduct(&d.reduct(&a).unwrap()).unwrap());
    }
}

fn small_digraphs(max_n: usize) -> Vec<Structure> {
    (0..=max_n).flat_map(|n| enumerate_structures(&tau(), n, true).unwrap()).collect()
}

fn definitions() -> Vec<QfDefinition> {
    let g = tau();
    vec![
        bases::symmetric_closure(&g, 0),
        bases::complement(&g),
        bases::graph_complement(),
        bases::simplification(&g),
        QfDefinition::from_nodes(
            &g,
            &g,
            vec![Node::And(vec![Node::Atom(0, vec![0, 1]), Node::Atom(0, vec![1, 0]).not()])],
        )
        .unwrap(),
    ]
}

#[test]
fn reducts_preserve_embeddings() {
    let small = small_digraphs(3);
    let big = small_digraphs(4);
    for d in definitions() {
        let rb: Vec<Structure> = big.iter().map(|b| d.reduct(b).unwrap()).collect();
        for a in &small {
            let ra = d.reduct(a).unwrap();
            for (b, rb) in big.iter().zip(&rb) {
                if a.n() > b.n() {
                    continue;
                }
                for e in enumerate_embeddings(a, b).unwrap() {
                    assert!(is_embedding(&ra, rb, &e), "{a:?} -> {b:?} via {e:?}");
                }
            }
        }
    }
}

#[test]
fn embeddings_into_reducts_lift() {
    for d in definitions() {
        for b in small_digraphs(4) {
            let rb = d.reduct(&b).unwrap();
            let n = b.n();
            for mask in 0u32..1 << n {
                let image: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
                let x = rb.induced(&image).unwrap();
                let lifted = d.reduct(&b.induced(&image).unwrap()).unwrap();
                assert!(find_isomorphism(&lifted, &x).unwrap().is_some(), "{b:?} at {image:?}");
            }
        }
    }
}
