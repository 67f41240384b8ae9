use std::fmt;

use crate::classes::OrderHint;
use crate::expressions::LocalExpression;
use crate::logic::{Node, UniversalSentence};
use crate::structures::{automorphisms, for_each_tuple, Signature, Structure};
use crate::Result;

/// Where a constraint comes from; failures are tallied per kind.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConstraintKind {
    /// `Δ(R)(ā)` must match the input.
    Reduct,
    /// A base-class axiom instance.
    Axiom,
    /// A base-class bound.
    Bound,
    /// A forbidden structure of the expression.
    Forbidden,
}

impl fmt::Display for ConstraintKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConstraintKind::Reduct => "reduct",
            ConstraintKind::Axiom => "axiom",
            ConstraintKind::Bound => "bound",
            ConstraintKind::Forbidden => "forbidden",
        })
    }
}

/// A formula instance over the bits of the expansion.
#[derive(Clone, Debug)]
pub(crate) enum CNode {
    Const(bool),
    Bit(u32),
    Not(Box<CNode>),
    And(Vec<CNode>),
    Or(Vec<CNode>),
}

impl CNode {
    pub(crate) fn eval(&self, vals: &[bool]) -> bool {
        match self {
            CNode::Const(b) => *b,
            CNode::Bit(i) => vals[*i as usize],
            CNode::Not(c) => !c.eval(vals),
            CNode::And(cs) => cs.iter().all(|c| c.eval(vals)),
            CNode::Or(cs) => cs.iter().any(|c| c.eval(vals)),
        }
    }

    fn bits(&self, out: &mut Vec<u32>) {
        match self {
            CNode::Const(_) => {}
            CNode::Bit(i) => out.push(*i),
            CNode::Not(c) => c.bits(out),
            CNode::And(cs) | CNode::Or(cs) => cs.iter().for_each(|c| c.bits(out)),
        }
    }

    fn simplify(self, forced: &[Option<bool>]) -> CNode {
        match self {
            CNode::Bit(i) => match forced[i as usize] {
                Some(b) => CNode::Const(b),
                None => CNode::Bit(i),
            },
            CNode::Const(b) => CNode::Const(b),
            CNode::Not(c) => match c.simplify(forced) {
                CNode::Const(b) => CNode::Const(!b),
                CNode::Not(inner) => *inner,
                other => CNode::Not(Box::new(other)),
            },
            CNode::And(cs) => Self::simplify_list(cs, forced, true),
            CNode::Or(cs) => Self::simplify_list(cs, forced, false),
        }
    }

    /// `and = true` simplifies a conjunction, `false` a disjunction.
    fn simplify_list(cs: Vec<CNode>, forced: &[Option<bool>], and: bool) -> CNode {
        let mut out = Vec::with_capacity(cs.len());
        for c in cs {
            match c.simplify(forced) {
                CNode::Const(b) if b == and => {}
                CNode::Const(b) => return CNode::Const(b),
                CNode::And(inner) if and => out.extend(inner),
                CNode::Or(inner) if !and => out.extend(inner),
                other => out.push(other),
            }
        }
        match out.len() {
            0 => CNode::Const(and),
            1 => out.pop().unwrap(),
            _ if and => CNode::And(out),
            _ => CNode::Or(out),
        }
    }
}

/// Bit numbering: symbol-major, tuples lexicographic.
#[derive(Clone, Debug)]
pub(crate) struct Layout {
    pub n: usize,
    pub offsets: Vec<usize>,
    pub total: usize,
}

impl Layout {
    fn new(sig: &Signature, n: usize) -> Self {
        let mut offsets = Vec::with_capacity(sig.len());
        let mut total = 0;
        for s in 0..sig.len() {
            offsets.push(total);
            total += n.pow(sig.arity(s) as u32);
        }
        Layout { n, offsets, total }
    }

    pub(crate) fn bit(&self, sym: usize, t: &[usize]) -> u32 {
        (self.offsets[sym] + t.iter().fold(0, |i, &x| i * self.n + x)) as u32
    }
}

fn instantiate(node: &Node, t: &[usize], layout: &Layout) -> CNode {
    match node {
        Node::True => CNode::Const(true),
        Node::False => CNode::Const(false),
        Node::Eq(i, j) => CNode::Const(t[*i] == t[*j]),
        Node::Atom(s, vs) => {
            let img: Vec<usize> = vs.iter().map(|&v| t[v]).collect();
            CNode::Bit(layout.bit(*s, &img))
        }
        Node::Not(c) => CNode::Not(Box::new(instantiate(c, t, layout))),
        Node::And(cs) => CNode::And(cs.iter().map(|c| instantiate(c, t, layout)).collect()),
        Node::Or(cs) => CNode::Or(cs.iter().map(|c| instantiate(c, t, layout)).collect()),
    }
}

fn node_symbols(node: &Node, out: &mut Vec<usize>) {
    match node {
        Node::Atom(s, _) => out.push(*s),
        Node::Not(c) => node_symbols(c, out),
        Node::And(cs) | Node::Or(cs) => cs.iter().for_each(|c| node_symbols(c, out)),
        _ => {}
    }
}

#[derive(Clone, Debug)]
pub(crate) enum Check {
    Formula { node: CNode, want: bool },
    /// Fires when every literal `(bit, value)` holds.
    Nogood(Vec<(u32, bool)>),
}

#[derive(Clone, Debug)]
pub(crate) struct Constraint {
    pub kind: ConstraintKind,
    pub check: Check,
}

impl Constraint {
    pub(crate) fn violated(&self, vals: &[bool]) -> bool {
        match &self.check {
            Check::Formula { node, want } => node.eval(vals) != *want,
            Check::Nogood(lits) => lits.iter().all(|&(b, v)| vals[b as usize] == v),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) enum Var {
    Bit(u32),
    /// Places vertex `v` into the order of hint `hint`.
    Order {
        hint: usize,
        v: usize,
        circular: bool,
        /// Bits of the order symbol whose tuples have maximum `v`.
        block: Vec<(u32, Vec<usize>)>,
        /// Values fixed during compilation, checked on placement.
        forced: Vec<(u32, bool, ConstraintKind)>,
    },
}

impl Var {
    pub(crate) fn domain(&self) -> usize {
        match self {
            Var::Bit(_) => 2,
            Var::Order { v, circular: false, .. } => v + 1,
            Var::Order { v, circular: true, .. } => (*v).max(1),
        }
    }
}

/// A compiled membership question: find bits for every carrier tuple on
/// `n` vertices satisfying all constraints.
#[derive(Clone, Debug)]
pub struct SearchProblem {
    pub(crate) sig: Signature,
    pub(crate) n: usize,
    pub(crate) window: usize,
    pub(crate) layout: Layout,
    pub(crate) hints: Vec<OrderHint>,
    pub(crate) forced: Vec<Option<bool>>,
    pub(crate) vars: Vec<Var>,
    pub(crate) constraints: Vec<Constraint>,
    pub(crate) triggers: Vec<Vec<u32>>,
    pub(crate) infeasible: Option<ConstraintKind>,
}

pub(crate) struct Builder {
    sig: Signature,
    layout: Layout,
    hints: Vec<OrderHint>,
    forced: Vec<Option<bool>>,
    forced_kind: Vec<ConstraintKind>,
    formulas: Vec<(CNode, bool, ConstraintKind)>,
    nogoods: Vec<(Vec<(u32, bool)>, ConstraintKind)>,
    infeasible: Option<ConstraintKind>,
}

impl Builder {
    pub(crate) fn new(sig: &Signature, n: usize, hints: &[OrderHint]) -> Self {
        let layout = Layout::new(sig, n);
        Builder {
            sig: sig.clone(),
            forced: vec![None; layout.total],
            forced_kind: vec![ConstraintKind::Reduct; layout.total],
            layout,
            hints: hints.to_vec(),
            formulas: Vec::new(),
            nogoods: Vec::new(),
            infeasible: None,
        }
    }

    /// Requires `node(t)` to evaluate to `want`.
    pub(crate) fn require(&mut self, node: &Node, t: &[usize], want: bool, kind: ConstraintKind) {
        let c = instantiate(node, t, &self.layout);
        self.formulas.push((c, want, kind));
    }

    /// Requires the sentence on every tuple, unless it only constrains a
    /// hinted order symbol and holds on every order.
    pub(crate) fn axiom(&mut self, s: &UniversalSentence) {
        let mut syms = Vec::new();
        node_symbols(s.body().body(), &mut syms);
        syms.sort_unstable();
        syms.dedup();
        if let [only] = syms[..] {
            if let Some(h) = self.hints.iter().find(|h| h.symbol() == only) {
                if (1..=s.arity()).all(|m| s.holds_unchecked(&order_structure(&self.sig, *h, m))) {
                    return;
                }
            }
        }
        let n = self.layout.n;
        let k = s.arity();
        let body = s.body().body().clone();
        for_each_tuple(n, k, &mut vec![0; k], &mut |t| {
            self.formulas.push((instantiate(&body, t, &self.layout), true, ConstraintKind::Axiom));
        });
    }

    /// Forbids every embedding of `p`, one map per automorphism orbit.
    pub(crate) fn forbid(&mut self, p: &Structure, kind: ConstraintKind) {
        let (m, n) = (p.n(), self.layout.n);
        if m > n {
            return;
        }
        let auts = automorphisms(p);
        let mut map = Vec::with_capacity(m);
        let mut used = vec![false; n];
        let mut lits = Vec::new();
        injective_maps(m, n, &mut map, &mut used, &mut |phi| {
            let min = auts.iter().all(|a| {
                let comp: Vec<usize> = a.iter().map(|&x| phi[x]).collect();
                comp.as_slice() >= phi
            });
            if !min {
                return;
            }
            lits.clear();
            for sym in 0..p.signature().len() {
                let r = p.arity(sym);
                let mut img = vec![0; r];
                for_each_tuple(m, r, &mut vec![0; r], &mut |t| {
                    for (k, &x) in t.iter().enumerate() {
                        img[k] = phi[x];
                    }
                    lits.push((self.layout.bit(sym, &img), p.holds(sym, t)));
                });
            }
            self.nogoods.push((lits.clone(), kind));
        });
    }

    fn set_forced(&mut self, b: u32, v: bool, kind: ConstraintKind) -> bool {
        match self.forced[b as usize] {
            Some(x) => x == v,
            None => {
                self.forced[b as usize] = Some(v);
                self.forced_kind[b as usize] = kind;
                true
            }
        }
    }

    /// Pushes `want` into `node`. Returns `Err` on contradiction and
    /// `Ok(true)` when the node is fully captured by forced bits.
    fn force(&mut self, node: &CNode, want: bool, kind: ConstraintKind, changed: &mut bool) -> std::result::Result<bool, ()> {
        match node {
            CNode::Const(b) => {
                if *b == want {
                    Ok(true)
                } else {
                    Err(())
                }
            }
            CNode::Bit(b) => {
                if self.forced[*b as usize].is_none() {
                    *changed = true;
                }
                if self.set_forced(*b, want, kind) {
                    Ok(true)
                } else {
                    Err(())
                }
            }
            CNode::Not(c) => self.force(c, !want, kind, changed),
            CNode::And(cs) if want => {
                let mut all = true;
                for c in cs {
                    all &= self.force(c, true, kind, changed)?;
                }
                Ok(all)
            }
            CNode::Or(cs) if !want => {
                let mut all = true;
                for c in cs {
                    all &= self.force(c, false, kind, changed)?;
                }
                Ok(all)
            }
            _ => Ok(false),
        }
    }

    fn propagate(&mut self) {
        loop {
            let mut changed = false;
            let formulas = std::mem::take(&mut self.formulas);
            for (node, want, kind) in formulas {
                let node = node.simplify(&self.forced);
                match self.force(&node, want, kind, &mut changed) {
                    Err(()) => {
                        self.infeasible.get_or_insert(kind);
                        return;
                    }
                    Ok(true) => {}
                    Ok(false) => self.formulas.push((node, want, kind)),
                }
            }
            let nogoods = std::mem::take(&mut self.nogoods);
            for (lits, kind) in nogoods {
                let mut rest = Vec::with_capacity(lits.len());
                let mut dead = false;
                for (b, v) in lits {
                    match self.forced[b as usize] {
                        Some(x) if x != v => {
                            dead = true;
                            break;
                        }
                        Some(_) => {}
                        None => rest.push((b, v)),
                    }
                }
                if dead {
                    continue;
                }
                match rest[..] {
                    [] => {
                        self.infeasible.get_or_insert(kind);
                        return;
                    }
                    [(b, v)] => {
                        changed = true;
                        self.set_forced(b, !v, kind);
                    }
                    _ => self.nogoods.push((rest, kind)),
                }
            }
            if !changed {
                return;
            }
        }
    }

    pub(crate) fn finish(mut self, window: usize) -> SearchProblem {
        self.propagate();
        let n = self.layout.n;
        let sig = self.sig.clone();
        let mut vars = Vec::new();
        let mut bit_var = vec![u32::MAX; self.layout.total];
        for v in 0..n {
            for sym in 0..sig.len() {
                let r = sig.arity(sym);
                let hint = self.hints.iter().position(|h| h.symbol() == sym);
                let mut block = Vec::new();
                for_each_tuple(v + 1, r, &mut vec![0; r], &mut |t| {
                    if t.contains(&v) {
                        block.push((self.layout.bit(sym, t), t.to_vec()));
                    }
                });
                match hint {
                    Some(h) => {
                        let id = vars.len() as u32;
                        let forced = block
                            .iter()
                            .filter_map(|(b, _)| {
                                self.forced[*b as usize].map(|x| (*b, x, self.forced_kind[*b as usize]))
                            })
                            .collect();
                        for (b, _) in &block {
                            bit_var[*b as usize] = id;
                        }
                        vars.push(Var::Order {
                            hint: h,
                            v,
                            circular: matches!(self.hints[h], OrderHint::Circular(_)),
                            block,
                            forced,
                        });
                    }
                    None => {
                        for (b, _) in block {
                            if self.forced[b as usize].is_none() {
                                bit_var[b as usize] = vars.len() as u32;
                                vars.push(Var::Bit(b));
                            }
                        }
                    }
                }
            }
        }
        let mut constraints = Vec::new();
        let mut triggers = vec![Vec::new(); vars.len()];
        let mut bits = Vec::new();
        let mut add = |check: Check, kind, bits: &[u32], constraints: &mut Vec<Constraint>| {
            let t = bits.iter().map(|&b| bit_var[b as usize]).max().expect("constraint has bits");
            triggers[t as usize].push(constraints.len() as u32);
            constraints.push(Constraint { kind, check });
        };
        for (node, want, kind) in std::mem::take(&mut self.formulas) {
            bits.clear();
            node.bits(&mut bits);
            add(Check::Formula { node, want }, kind, &bits, &mut constraints);
        }
        for (lits, kind) in std::mem::take(&mut self.nogoods) {
            bits.clear();
            bits.extend(lits.iter().map(|l| l.0));
            add(Check::Nogood(lits), kind, &bits, &mut constraints);
        }
        SearchProblem {
            sig,
            n,
            window,
            layout: self.layout,
            hints: self.hints,
            forced: self.forced,
            vars,
            constraints,
            triggers,
            infeasible: self.infeasible,
        }
    }
}

fn injective_maps(m: usize, n: usize, map: &mut Vec<usize>, used: &mut [bool], f: &mut dyn FnMut(&[usize])) {
    if map.len() == m {
        f(map);
        return;
    }
    for v in 0..n {
        if !used[v] {
            used[v] = true;
            map.push(v);
            injective_maps(m, n, map, used, f);
            map.pop();
            used[v] = false;
        }
    }
}

/// The order `0 < 1 < … < m-1` (or its cyclic version) on the hinted symbol,
/// every other symbol empty.
pub(crate) fn order_structure(sig: &Signature, h: OrderHint, m: usize) -> Structure {
    let mut s = Structure::new(sig, m);
    match h {
        OrderHint::Linear(sym) => {
            for i in 0..m {
                for j in i + 1..m {
                    s.insert(sym, &[i, j]);
                }
            }
        }
        OrderHint::Circular(sym) => {
            for_each_tuple(m, 3, &mut [0; 3], &mut |t| {
                if cyclic(t[0], t[1], t[2], m) {
                    s.insert(sym, t);
                }
            });
        }
    }
    s
}

/// Positions `a, b, c` on a cycle of length `len` are distinct and in
/// cyclic order.
pub(crate) fn cyclic(a: usize, b: usize, c: usize, len: usize) -> bool {
    if a == b || b == c || a == c {
        return false;
    }
    (b + len - a) % len < (c + len - a) % len
}

impl SearchProblem {
    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Largest constraint support, in vertices.
    pub fn window(&self) -> usize {
        self.window
    }

    /// Number of branching variables (free bits plus order placements).
    pub fn variables(&self) -> usize {
        self.vars.len()
    }

    pub fn constraint_count(&self) -> usize {
        self.constraints.len()
    }

    /// Tuples of `sym` whose value compilation did not fix.
    pub fn free_tuples(&self, sym: usize) -> usize {
        let size = self.n.pow(self.sig.arity(sym) as u32);
        let off = self.layout.offsets[sym];
        (off..off + size).filter(|&b| self.forced[b].is_none()).count()
    }

    /// Vertex sets spanned by the free tuples of `sym`; for a binary symbol
    /// with an orientation constraint this counts the edges to orient.
    pub fn free_vertex_sets(&self, sym: usize) -> usize {
        let r = self.sig.arity(sym);
        let mut sets = std::collections::BTreeSet::new();
        for_each_tuple(self.n, r, &mut vec![0; r], &mut |t| {
            if self.forced[self.layout.bit(sym, t) as usize].is_none() {
                let mut s = t.to_vec();
                s.sort_unstable();
                s.dedup();
                sets.insert(s);
            }
        });
        sets.len()
    }

    /// A kind of constraint already violated by compilation alone.
    pub fn infeasible(&self) -> Option<ConstraintKind> {
        self.infeasible
    }
}

/// Compiles the membership question "is `g` the Δ-reduct of a base member
/// avoiding the forbidden set?".
pub fn compile(e: &LocalExpression, g: &Structure) -> Result<SearchProblem> {
    e.check_target(g)?;
    let base = e.base();
    let mut b = Builder::new(e.carrier(), g.n(), base.hints());
    let d = e.definition();
    for sym in 0..e.target().len() {
        let r = e.target().arity(sym);
        let body = d.formula(sym).body();
        for_each_tuple(g.n(), r, &mut vec![0; r], &mut |t| {
            b.require(body, t, g.holds(sym, t), ConstraintKind::Reduct);
        });
    }
    if let Some(xs) = base.axioms() {
        for s in xs {
            b.axiom(s);
        }
    }
    if let Some(bs) = base.bounds() {
        for p in bs {
            b.forbid(p, ConstraintKind::Bound);
        }
    }
    for p in e.forbidden() {
        b.forbid(p, ConstraintKind::Forbidden);
    }
    Ok(b.finish(e.window()))
}
