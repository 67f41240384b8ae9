//! Carrier signatures, base classes and the usual qf definitions.
//!
//! Orders are strict. Symbol names: `E` (graph or arcs), `LT` (linear or
//! partial order), `C` (cyclic order), `SIM` (equivalence), `Er`/`Eb`
//! (red/blue edges or arcs), `U1..Uk` (vertex colours).

use crate::classes::{LocalClass, OrderHint};
use crate::logic::{Formula, Node, QfDefinition, UniversalSentence};
use crate::structures::{Signature, Structure};
use crate::Result;

pub(crate) fn at(sym: usize, vs: &[usize]) -> Node {
    Node::Atom(sym, vs.to_vec())
}

pub(crate) fn forall(sig: &Signature, k: usize, body: Node) -> UniversalSentence {
    UniversalSentence::new(Formula::new(sig, k, body).expect("well-formed axiom"))
}

pub fn irreflexive(sig: &Signature, s: usize) -> UniversalSentence {
    forall(sig, 1, at(s, &[0, 0]).not())
}

pub fn symmetric(sig: &Signature, s: usize) -> UniversalSentence {
    forall(sig, 2, at(s, &[0, 1]).implies(at(s, &[1, 0])))
}

pub fn asymmetric(sig: &Signature, s: usize) -> UniversalSentence {
    forall(sig, 2, Node::And(vec![at(s, &[0, 1]), at(s, &[1, 0])]).not())
}

pub fn total(sig: &Signature, s: usize) -> UniversalSentence {
    forall(sig, 2, Node::Or(vec![Node::Eq(0, 1), at(s, &[0, 1]), at(s, &[1, 0])]))
}

pub fn transitive(sig: &Signature, s: usize) -> UniversalSentence {
    forall(sig, 3, Node::And(vec![at(s, &[0, 1]), at(s, &[1, 2])]).implies(at(s, &[0, 2])))
}

fn graph_axioms(sig: &Signature, e: usize) -> Vec<UniversalSentence> {
    vec![irreflexive(sig, e), symmetric(sig, e)]
}

fn oriented_axioms(sig: &Signature, e: usize) -> Vec<UniversalSentence> {
    vec![irreflexive(sig, e), asymmetric(sig, e)]
}

fn strict_partial_order(sig: &Signature, s: usize) -> Vec<UniversalSentence> {
    vec![irreflexive(sig, s), transitive(sig, s)]
}

fn strict_linear_order(sig: &Signature, s: usize) -> Vec<UniversalSentence> {
    vec![irreflexive(sig, s), asymmetric(sig, s), total(sig, s), transitive(sig, s)]
}

/// `C(x,y,z)`: distinct, rotation invariant, asymmetric, total on distinct
/// triples, and transitive.
fn cyclic_order(sig: &Signature, c: usize) -> Vec<UniversalSentence> {
    let distinct = Node::And(vec![Node::neq(0, 1), Node::neq(1, 2), Node::neq(0, 2)]);
    vec![
        forall(sig, 3, at(c, &[0, 1, 2]).implies(distinct.clone())),
        forall(sig, 3, at(c, &[0, 1, 2]).implies(at(c, &[1, 2, 0]))),
        forall(sig, 3, at(c, &[0, 1, 2]).implies(at(c, &[0, 2, 1]).not())),
        forall(sig, 3, distinct.implies(Node::Or(vec![at(c, &[0, 1, 2]), at(c, &[0, 2, 1])]))),
        forall(
            sig,
            4,
            Node::And(vec![at(c, &[0, 1, 2]), at(c, &[0, 2, 3])]).implies(at(c, &[0, 1, 3])),
        ),
    ]
}

fn sig(symbols: &[(&str, usize)]) -> Signature {
    Signature::new(symbols.iter().copied()).expect("catalog signature")
}

pub fn graph_signature() -> Signature {
    Signature::graph()
}

/// `{E/2, LT/2}`.
pub fn ordered_signature() -> Signature {
    sig(&[("E", 2), ("LT", 2)])
}

/// `{E/2, C/3}`.
pub fn cyclic_signature() -> Signature {
    sig(&[("E", 2), ("C", 3)])
}

/// `{Er/2, Eb/2}`.
pub fn two_colour_signature() -> Signature {
    sig(&[("Er", 2), ("Eb", 2)])
}

/// `{E/2, U1/1, ..., Uk/1}`.
pub fn coloured_signature(k: usize) -> Signature {
    let names: Vec<(String, usize)> =
        std::iter::once(("E".to_string(), 2)).chain((1..=k).map(|i| (format!("U{i}"), 1))).collect();
    Signature::new(names).expect("colour signature")
}

fn loop_at(s: &Signature, sym: usize) -> Structure {
    let mut a = Structure::new(s, 1);
    a.insert(sym, &[0, 0]);
    a
}

fn directed_cycle(n: usize) -> Structure {
    let arcs: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Structure::digraph(n, &arcs)
}

/// Loopless graphs (`Id` carrier).
pub fn graphs() -> LocalClass {
    LocalClass::graphs()
}

/// Loopless digraphs: symmetric pairs allowed.
pub fn digraphs() -> LocalClass {
    let g = Signature::graph();
    LocalClass::from_bounds(&g, vec![loop_at(&g, 0)]).expect("digraph bounds")
}

/// Oriented graphs: no loop, no symmetric pair.
pub fn oriented() -> LocalClass {
    let g = Signature::graph();
    let pair = Structure::digraph(2, &[(0, 1), (1, 0)]);
    LocalClass::from_bounds(&g, vec![loop_at(&g, 0), pair]).expect("oriented bounds")
}

/// Oriented graphs without directed cycles of length at most `max_cycle`.
/// Acyclic orientations have every directed cycle as a minimal bound, so
/// this class agrees with them exactly on structures with at most
/// `max_cycle` vertices and admits longer cycles beyond that.
pub fn acyclic_oriented(max_cycle: usize) -> LocalClass {
    let g = Signature::graph();
    let mut bounds = vec![loop_at(&g, 0), Structure::digraph(2, &[(0, 1), (1, 0)])];
    bounds.extend((3..=max_cycle).map(directed_cycle));
    LocalClass::from_bounds(&g, bounds).expect("acyclic bounds")
}

/// Strict linear orders over `{LT}`, presented both ways: bounds are a loop,
/// a symmetric pair, two incomparable vertices, and a directed triangle.
pub fn linear_orders() -> LocalClass {
    let s = sig(&[("LT", 2)]);
    let bounds = vec![
        loop_at(&s, 0),
        Structure::from_tuples(&s, 2, &[vec![vec![0, 1], vec![1, 0]]]).unwrap(),
        Structure::new(&s, 2),
        Structure::from_tuples(&s, 3, &[vec![vec![0, 1], vec![1, 2], vec![2, 0]]]).unwrap(),
    ];
    LocalClass::new(&s, bounds, strict_linear_order(&s, 0))
        .expect("linear order presentations agree")
        .with_hint(OrderHint::Linear(0))
        .unwrap()
}

/// Linearly ordered graphs over `{E, LT}`.
pub fn lor() -> LocalClass {
    let s = ordered_signature();
    let mut xs = graph_axioms(&s, 0);
    xs.extend(strict_linear_order(&s, 1));
    LocalClass::from_axioms(&s, xs).unwrap().with_hint(OrderHint::Linear(1)).unwrap()
}

/// Linearly ordered oriented graphs over `{E, LT}`.
pub fn loor() -> LocalClass {
    let s = ordered_signature();
    let mut xs = oriented_axioms(&s, 0);
    xs.extend(strict_linear_order(&s, 1));
    LocalClass::from_axioms(&s, xs).unwrap().with_hint(OrderHint::Linear(1)).unwrap()
}

/// Partially ordered graphs over `{E, LT}`.
pub fn po() -> LocalClass {
    let s = ordered_signature();
    let mut xs = graph_axioms(&s, 0);
    xs.extend(strict_partial_order(&s, 1));
    LocalClass::from_axioms(&s, xs).unwrap()
}

fn adjacent_comparable(s: &Signature) -> UniversalSentence {
    forall(s, 2, at(0, &[0, 1]).implies(Node::Or(vec![at(1, &[0, 1]), at(1, &[1, 0])])))
}

/// Suitably ordered graphs: adjacent vertices are comparable.
pub fn so() -> LocalClass {
    let s = ordered_signature();
    let mut xs = graph_axioms(&s, 0);
    xs.extend(strict_partial_order(&s, 1));
    xs.push(adjacent_comparable(&s));
    LocalClass::from_axioms(&s, xs).unwrap()
}

/// Genealogical graphs: suitably ordered, and the down-set of every vertex
/// is a chain.
pub fn gen() -> LocalClass {
    let s = ordered_signature();
    let mut xs = graph_axioms(&s, 0);
    xs.extend(strict_partial_order(&s, 1));
    xs.push(adjacent_comparable(&s));
    xs.push(forall(
        &s,
        3,
        Node::And(vec![at(1, &[1, 0]), at(1, &[2, 0])])
            .implies(Node::Or(vec![Node::Eq(1, 2), at(1, &[1, 2]), at(1, &[2, 1])])),
    ));
    LocalClass::from_axioms(&s, xs).unwrap()
}

/// Equivalence graphs over `{E, SIM}`.
pub fn eq() -> LocalClass {
    let s = sig(&[("E", 2), ("SIM", 2)]);
    let mut xs = graph_axioms(&s, 0);
    xs.push(forall(&s, 1, at(1, &[0, 0])));
    xs.push(symmetric(&s, 1));
    xs.push(transitive(&s, 1));
    LocalClass::from_axioms(&s, xs).unwrap()
}

/// 2-edge-coloured graphs over `{Er, Eb}`: two disjoint graphs.
pub fn eg2() -> LocalClass {
    let s = two_colour_signature();
    let mut xs = graph_axioms(&s, 0);
    xs.extend(graph_axioms(&s, 1));
    xs.push(forall(&s, 2, Node::And(vec![at(0, &[0, 1]), at(1, &[0, 1])]).not()));
    LocalClass::from_axioms(&s, xs).unwrap()
}

/// Linearly ordered 2-edge-coloured graphs over `{Er, Eb, LT}`.
pub fn lo_eg2() -> LocalClass {
    let s = sig(&[("Er", 2), ("Eb", 2), ("LT", 2)]);
    let mut xs = graph_axioms(&s, 0);
    xs.extend(graph_axioms(&s, 1));
    xs.push(forall(&s, 2, Node::And(vec![at(0, &[0, 1]), at(1, &[0, 1])]).not()));
    xs.extend(strict_linear_order(&s, 2));
    LocalClass::from_axioms(&s, xs).unwrap().with_hint(OrderHint::Linear(2)).unwrap()
}

/// 2-arc-coloured tournaments over `{Er, Eb}`: every pair of distinct
/// vertices carries exactly one arc, red or blue.
pub fn t2() -> LocalClass {
    let s = two_colour_signature();
    let arcs = [at(0, &[0, 1]), at(0, &[1, 0]), at(1, &[0, 1]), at(1, &[1, 0])];
    let mut xs = vec![irreflexive(&s, 0), irreflexive(&s, 1)];
    xs.push(forall(&s, 2, Node::neq(0, 1).implies(Node::Or(arcs.to_vec()))));
    for i in 0..4 {
        for j in i + 1..4 {
            xs.push(forall(&s, 2, Node::And(vec![arcs[i].clone(), arcs[j].clone()]).not()));
        }
    }
    LocalClass::from_axioms(&s, xs).unwrap()
}

/// Circularly ordered graphs over `{E, C}`.
pub fn cor() -> LocalClass {
    let s = cyclic_signature();
    let mut xs = graph_axioms(&s, 0);
    xs.extend(cyclic_order(&s, 1));
    LocalClass::from_axioms(&s, xs).unwrap().with_hint(OrderHint::Circular(1)).unwrap()
}

/// Circularly ordered oriented graphs over `{E, C}`.
pub fn coor() -> LocalClass {
    let s = cyclic_signature();
    let mut xs = oriented_axioms(&s, 0);
    xs.extend(cyclic_order(&s, 1));
    LocalClass::from_axioms(&s, xs).unwrap().with_hint(OrderHint::Circular(1)).unwrap()
}

/// `k`-vertex-coloured graphs: every vertex has exactly one of `U1..Uk`.
pub fn gk(k: usize) -> LocalClass {
    let s = coloured_signature(k);
    let mut xs = graph_axioms(&s, 0);
    xs.push(forall(&s, 1, Node::Or((1..=k).map(|i| at(i, &[0])).collect())));
    for i in 1..=k {
        for j in i + 1..=k {
            xs.push(forall(&s, 1, Node::And(vec![at(i, &[0]), at(j, &[0])]).not()));
        }
    }
    LocalClass::from_axioms(&s, xs).unwrap()
}

/// `E ↦ E(x1,x2)` from a carrier whose `E` has index `e`.
pub fn forget(carrier: &Signature, e: usize) -> QfDefinition {
    QfDefinition::from_nodes(&Signature::graph(), carrier, vec![at(e, &[0, 1])]).unwrap()
}

/// `E ↦ E(x1,x2) ∨ E(x2,x1)`: the underlying graph.
pub fn symmetric_closure(carrier: &Signature, e: usize) -> QfDefinition {
    QfDefinition::from_nodes(&Signature::graph(), carrier, vec![Node::Or(vec![at(e, &[0, 1]), at(e, &[1, 0])])])
        .unwrap()
}

/// `E ↦ ¬E(x1,x2) ∧ ¬E(x2,x1) ∧ x1 ≠ x2`: the complement of the underlying
/// graph, so arcs orient non-edges.
pub fn co_symmetric_closure(carrier: &Signature, e: usize) -> QfDefinition {
    QfDefinition::from_nodes(
        &Signature::graph(),
        carrier,
        vec![Node::And(vec![at(e, &[0, 1]).not(), at(e, &[1, 0]).not(), Node::neq(0, 1)])],
    )
    .unwrap()
}

/// `E ↦ Er(x1,x2) ∨ Eb(x1,x2)` over a signature starting with `Er, Eb`.
pub fn forget_colours(carrier: &Signature) -> QfDefinition {
    QfDefinition::from_nodes(&Signature::graph(), carrier, vec![Node::Or(vec![at(0, &[0, 1]), at(1, &[0, 1])])])
        .unwrap()
}

/// `CO`: `R ↦ ¬R` for every symbol.
pub fn complement(s: &Signature) -> QfDefinition {
    let bodies = (0..s.len()).map(|i| Formula::atom(s, i).not().into_body()).collect();
    QfDefinition::from_nodes(s, s, bodies).unwrap()
}

/// `SP`: `R ↦ R ∧ dif`, dropping tuples with repeated entries.
pub fn simplification(s: &Signature) -> QfDefinition {
    let bodies = (0..s.len())
        .map(|i| Formula::atom(s, i).and(&Formula::dif(s, s.arity(i))).unwrap().into_body())
        .collect();
    QfDefinition::from_nodes(s, s, bodies).unwrap()
}

/// Complement of a loopless graph: `E ↦ ¬E ∧ x1 ≠ x2`.
pub fn graph_complement() -> QfDefinition {
    let g = Signature::graph();
    QfDefinition::from_nodes(&g, &g, vec![Node::And(vec![at(0, &[0, 1]).not(), Node::neq(0, 1)])]).unwrap()
}

/// Two-graphs from graphs: `H(x,y,z)` iff the three vertices are distinct
/// and induce an odd number of edges.
pub fn two_graph_definition() -> Result<QfDefinition> {
    let g = Signature::graph();
    let h = sig(&[("H", 3)]);
    let (a, b, c) = (at(0, &[0, 1]), at(0, &[1, 2]), at(0, &[0, 2]));
    let odd = Node::Or(vec![
        Node::And(vec![a.clone(), b.clone().not(), c.clone().not()]),
        Node::And(vec![a.clone().not(), b.clone(), c.clone().not()]),
        Node::And(vec![a.clone().not(), b.clone().not(), c.clone()]),
        Node::And(vec![a, b, c]),
    ]);
    let body = Node::And(vec![Node::neq(0, 1), Node::neq(1, 2), Node::neq(0, 2), odd]);
    QfDefinition::from_nodes(&h, &g, vec![body])
}
