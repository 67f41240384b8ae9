use std::fmt;

use crate::structures::{Signature, Structure};
use crate::{Error, Result};

/// Quantifier-free formula tree. Variables are 0-based positions; they print
/// as `x1`, `x2`, ...
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    True,
    False,
    Eq(usize, usize),
    Atom(usize, Vec<usize>),
    Not(Box<Node>),
    And(Vec<Node>),
    Or(Vec<Node>),
}

impl Node {
    pub fn not(self) -> Node {
        Node::Not(Box::new(self))
    }

    pub fn implies(self, other: Node) -> Node {
        Node::Or(vec![self.not(), other])
    }

    pub fn iff(self, other: Node) -> Node {
        Node::Or(vec![
            Node::And(vec![self.clone(), other.clone()]),
            Node::And(vec![self.not(), other.not()]),
        ])
    }

    pub fn neq(i: usize, j: usize) -> Node {
        Node::Eq(i, j).not()
    }

    pub fn eval(&self, a: &Structure, env: &[usize]) -> bool {
        match self {
            Node::True => true,
            Node::False => false,
            Node::Eq(i, j) => env[*i] == env[*j],
            Node::Atom(s, vs) => {
                let mut t = [0usize; 8];
                if vs.len() <= 8 {
                    for (k, &v) in vs.iter().enumerate() {
                        t[k] = env[v];
                    }
                    a.holds(*s, &t[..vs.len()])
                } else {
                    let t: Vec<usize> = vs.iter().map(|&v| env[v]).collect();
                    a.holds(*s, &t)
                }
            }
            Node::Not(f) => !f.eval(a, env),
            Node::And(fs) => fs.iter().all(|f| f.eval(a, env)),
            Node::Or(fs) => fs.iter().any(|f| f.eval(a, env)),
        }
    }

    /// Largest variable index plus one.
    pub fn var_bound(&self) -> usize {
        match self {
            Node::True | Node::False => 0,
            Node::Eq(i, j) => i.max(j) + 1,
            Node::Atom(_, vs) => vs.iter().map(|v| v + 1).max().unwrap_or(0),
            Node::Not(f) => f.var_bound(),
            Node::And(fs) | Node::Or(fs) => fs.iter().map(Node::var_bound).max().unwrap_or(0),
        }
    }

    /// Renames variable `i` to `map[i]`.
    pub fn rename_vars(&self, map: &[usize]) -> Node {
        match self {
            Node::True => Node::True,
            Node::False => Node::False,
            Node::Eq(i, j) => Node::Eq(map[*i], map[*j]),
            Node::Atom(s, vs) => Node::Atom(*s, vs.iter().map(|&v| map[v]).collect()),
            Node::Not(f) => f.rename_vars(map).not(),
            Node::And(fs) => Node::And(fs.iter().map(|f| f.rename_vars(map)).collect()),
            Node::Or(fs) => Node::Or(fs.iter().map(|f| f.rename_vars(map)).collect()),
        }
    }

    /// Renumbers symbols through `map` (old index to new index).
    pub fn rename_symbols(&self, map: &[usize]) -> Node {
        match self {
            Node::Atom(s, vs) => Node::Atom(map[*s], vs.clone()),
            Node::Not(f) => f.rename_symbols(map).not(),
            Node::And(fs) => Node::And(fs.iter().map(|f| f.rename_symbols(map)).collect()),
            Node::Or(fs) => Node::Or(fs.iter().map(|f| f.rename_symbols(map)).collect()),
            other => other.clone(),
        }
    }

    fn check(&self, sig: &Signature, arity: usize) -> Result<()> {
        match self {
            Node::True | Node::False => Ok(()),
            Node::Eq(i, j) => {
                if *i >= arity || *j >= arity {
                    Err(Error::input(format!("variable out of range 1..{arity}")))
                } else {
                    Ok(())
                }
            }
            Node::Atom(s, vs) => {
                if *s >= sig.len() {
                    return Err(Error::input(format!("no symbol with index {s} in {sig}")));
                }
                if vs.len() != sig.arity(*s) {
                    return Err(Error::input(format!(
                        "{} expects {} arguments, got {}",
                        sig.name(*s),
                        sig.arity(*s),
                        vs.len()
                    )));
                }
                if vs.iter().any(|&v| v >= arity) {
                    return Err(Error::input(format!("variable out of range 1..{arity}")));
                }
                Ok(())
            }
            Node::Not(f) => f.check(sig, arity),
            Node::And(fs) | Node::Or(fs) => fs.iter().try_for_each(|f| f.check(sig, arity)),
        }
    }

    pub(crate) fn write(&self, sig: &Signature, f: &mut fmt::Formatter<'_>, prec: u8) -> fmt::Result {
        // prec: 0 = top, 1 = inside |, 2 = inside &, 3 = operand of !
        match self {
            Node::True => write!(f, "true"),
            Node::False => write!(f, "false"),
            Node::Eq(i, j) => {
                if prec >= 3 {
                    write!(f, "(x{} = x{})", i + 1, j + 1)
                } else {
                    write!(f, "x{} = x{}", i + 1, j + 1)
                }
            }
            Node::Atom(s, vs) => {
                write!(f, "{}(", sig.name(*s))?;
                for (k, v) in vs.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "x{}", v + 1)?;
                }
                write!(f, ")")
            }
            Node::Not(g) => {
                write!(f, "!")?;
                g.write(sig, f, 3)
            }
            Node::And(fs) if fs.is_empty() => write!(f, "true"),
            Node::Or(fs) if fs.is_empty() => write!(f, "false"),
            Node::And(fs) => write_list(sig, f, fs, " & ", 2, prec >= 3),
            Node::Or(fs) => write_list(sig, f, fs, " | ", 1, prec >= 2),
        }
    }
}

fn write_list(
    sig: &Signature,
    f: &mut fmt::Formatter<'_>,
    fs: &[Node],
    sep: &str,
    inner: u8,
    paren: bool,
) -> fmt::Result {
    if paren {
        write!(f, "(")?;
    }
    for (k, g) in fs.iter().enumerate() {
        if k > 0 {
            write!(f, "{sep}")?;
        }
        // a nested list of the same kind keeps its parentheses
        let same = matches!(
            (g, inner),
            (Node::And(h), 2) | (Node::Or(h), 1) if !h.is_empty()
        );
        g.write(sig, f, if same { inner + 1 } else { inner })?;
    }
    if paren {
        write!(f, ")")?;
    }
    Ok(())
}

/// Quantifier-free formula over a signature with `arity` free variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Formula {
    sig: Signature,
    arity: usize,
    body: Node,
}

impl Formula {
    pub fn new(sig: &Signature, arity: usize, body: Node) -> Result<Self> {
        body.check(sig, arity)?;
        Ok(Formula { sig: sig.clone(), arity, body })
    }

    pub fn top(sig: &Signature, arity: usize) -> Self {
        Formula { sig: sig.clone(), arity, body: Node::True }
    }

    /// `⊥_r`: conjunction of `¬(xi = xi)` over every variable.
    pub fn bottom(sig: &Signature, arity: usize) -> Self {
        let body = if arity == 0 {
            Node::False
        } else {
            Node::And((0..arity).map(|i| Node::neq(i, i)).collect())
        };
        Formula { sig: sig.clone(), arity, body }
    }

    /// `dif_n`: pairwise distinct variables.
    pub fn dif(sig: &Signature, arity: usize) -> Self {
        let mut cs = Vec::new();
        for i in 0..arity {
            for j in i + 1..arity {
                cs.push(Node::neq(i, j));
            }
        }
        Formula { sig: sig.clone(), arity, body: Node::And(cs) }
    }

    /// `R(x1, ..., xr)` for symbol `sym`.
    pub fn atom(sig: &Signature, sym: usize) -> Self {
        let r = sig.arity(sym);
        Formula { sig: sig.clone(), arity: r, body: Node::Atom(sym, (0..r).collect()) }
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn body(&self) -> &Node {
        &self.body
    }

    pub fn into_body(self) -> Node {
        self.body
    }

    pub fn evaluate(&self, a: &Structure, env: &[usize]) -> Result<bool> {
        self.sig.expect_eq(a.signature(), "evaluate")?;
        if env.len() != self.arity {
            return Err(Error::input(format!(
                "formula has {} variables, assignment has {}",
                self.arity,
                env.len()
            )));
        }
        if let Some(&v) = env.iter().find(|&&v| v >= a.n()) {
            return Err(Error::input(format!("vertex {v} out of range 0..{}", a.n())));
        }
        Ok(self.body.eval(a, env))
    }

    pub fn not(&self) -> Formula {
        Formula { sig: self.sig.clone(), arity: self.arity, body: self.body.clone().not() }
    }

    pub fn or(&self, other: &Formula) -> Result<Formula> {
        self.same_shape(other)?;
        Ok(Formula {
            sig: self.sig.clone(),
            arity: self.arity,
            body: Node::Or(vec![self.body.clone(), other.body.clone()]),
        })
    }

    pub fn and(&self, other: &Formula) -> Result<Formula> {
        self.same_shape(other)?;
        Ok(Formula {
            sig: self.sig.clone(),
            arity: self.arity,
            body: Node::And(vec![self.body.clone(), other.body.clone()]),
        })
    }

    pub(crate) fn same_shape(&self, other: &Formula) -> Result<()> {
        self.sig.expect_eq(&other.sig, "formula")?;
        if self.arity != other.arity {
            return Err(Error::input(format!(
                "arity mismatch: {} vs {}",
                self.arity, other.arity
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.body.write(&self.sig, f, 0)
    }
}

/// `∀x1 ... xk body`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniversalSentence(pub Formula);

impl UniversalSentence {
    pub fn new(body: Formula) -> Self {
        UniversalSentence(body)
    }

    pub fn arity(&self) -> usize {
        self.0.arity()
    }

    pub fn signature(&self) -> &Signature {
        self.0.signature()
    }

    pub fn body(&self) -> &Formula {
        &self.0
    }

    /// True iff the body holds under every assignment into `a`.
    pub fn holds(&self, a: &Structure) -> Result<bool> {
        self.0.signature().expect_eq(a.signature(), "sentence")?;
        Ok(self.holds_unchecked(a))
    }

    pub(crate) fn holds_unchecked(&self, a: &Structure) -> bool {
        let k = self.arity();
        let mut env = vec![0; k];
        let mut ok = true;
        crate::structures::for_each_tuple(a.n(), k, &mut env, &mut |t| {
            if ok && !self.0.body().eval(a, t) {
                ok = false;
            }
        });
        ok
    }
}

impl fmt::Display for UniversalSentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "forall ")?;
        for i in 0..self.arity() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "x{}", i + 1)?;
        }
        write!(f, ": {}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn digraph() -> Signature {
        Signature::graph()
    }

    #[test]
    fn evaluate_examples() {
        let k2 = Structure::graph(2, &[(0, 1)]);
        let e = Formula::atom(&digraph(), 0);
        assert!(e.evaluate(&k2, &[0, 1]).unwrap());

        let arc = Structure::digraph(2, &[(0, 1)]);
        let f = Formula::new(
            &digraph(),
            2,
            Node::And(vec![Node::Atom(0, vec![0, 1]), Node::Atom(0, vec![1, 0]).not()]),
        )
        .unwrap();
        assert!(f.evaluate(&arc, &[0, 1]).unwrap());
        assert!(!f.evaluate(&arc, &[1, 0]).unwrap());

        let eq = Formula::new(&digraph(), 2, Node::Eq(0, 1)).unwrap();
        assert!(eq.evaluate(&arc, &[1, 1]).unwrap());
    }

    #[test]
    fn evaluate_rejects_bad_input() {
        let e = Formula::atom(&digraph(), 0);
        let k2 = Structure::graph(2, &[(0, 1)]);
        assert!(e.evaluate(&k2, &[0]).is_err());
        assert!(e.evaluate(&k2, &[0, 2]).is_err());
        assert!(Formula::new(&digraph(), 1, Node::Atom(0, vec![0, 1])).is_err());
        assert!(Formula::new(&digraph(), 2, Node::Atom(0, vec![0])).is_err());
    }

    #[test]
    fn bottom_and_dif() {
        let k3 = Structure::graph(3, &[(0, 1), (1, 2), (0, 2)]);
        let b = Formula::bottom(&digraph(), 2);
        let d = Formula::dif(&digraph(), 3);
        assert!(!b.evaluate(&k3, &[0, 1]).unwrap());
        assert!(d.evaluate(&k3, &[0, 1, 2]).unwrap());
        assert!(!d.evaluate(&k3, &[0, 1, 0]).unwrap());
    }

    #[test]
    fn display() {
        let sig = Signature::new([("E", 2), ("LT", 2)]).unwrap();
        let f = Formula::new(
            &sig,
            2,
            Node::Or(vec![
                Node::And(vec![Node::Atom(0, vec![0, 1]), Node::Atom(1, vec![0, 1])]),
                Node::neq(0, 1).not(),
            ]),
        )
        .unwrap();
        assert_eq!(f.to_string(), "E(x1,x2) & LT(x1,x2) | !!(x1 = x2)");
    }
}
