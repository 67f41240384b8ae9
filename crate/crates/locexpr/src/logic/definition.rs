use std::fmt;

use super::formula::{Formula, Node};
use crate::structures::{for_each_tuple, Signature, Structure};
use crate::{Error, Result};

/// One carrier formula per source symbol. `reduct` evaluates them to turn a
/// carrier structure into a source structure on the same vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QfDefinition {
    source: Signature,
    carrier: Signature,
    formulas: Vec<Formula>,
}

impl QfDefinition {
    pub fn new(source: &Signature, carrier: &Signature, formulas: Vec<Formula>) -> Result<Self> {
        if formulas.len() != source.len() {
            return Err(Error::input(format!(
                "{} formulas for {} symbols of {source}",
                formulas.len(),
                source.len()
            )));
        }
        for (i, f) in formulas.iter().enumerate() {
            carrier.expect_eq(f.signature(), "definition formula")?;
            if f.arity() != source.arity(i) {
                return Err(Error::input(format!(
                    "formula for {} has {} variables, symbol has arity {}",
                    source.name(i),
                    f.arity(),
                    source.arity(i)
                )));
            }
        }
        Ok(QfDefinition { source: source.clone(), carrier: carrier.clone(), formulas })
    }

    /// Builds from bodies, one per source symbol.
    pub fn from_nodes(source: &Signature, carrier: &Signature, bodies: Vec<Node>) -> Result<Self> {
        if bodies.len() != source.len() {
            return Err(Error::input(format!(
                "{} formulas for {} symbols of {source}",
                bodies.len(),
                source.len()
            )));
        }
        let formulas = bodies
            .into_iter()
            .enumerate()
            .map(|(i, b)| Formula::new(carrier, source.arity(i), b))
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, carrier, formulas)
    }

    pub fn identity(sig: &Signature) -> Self {
        let formulas = (0..sig.len()).map(|s| Formula::atom(sig, s)).collect();
        QfDefinition { source: sig.clone(), carrier: sig.clone(), formulas }
    }

    pub fn source(&self) -> &Signature {
        &self.source
    }

    pub fn carrier(&self) -> &Signature {
        &self.carrier
    }

    pub fn formula(&self, sym: usize) -> &Formula {
        &self.formulas[sym]
    }

    pub fn formulas(&self) -> &[Formula] {
        &self.formulas
    }

    /// Largest formula arity.
    pub fn max_arity(&self) -> usize {
        self.source.max_arity()
    }

    /// The Δ-reduct: same vertices, `R` holds exactly where `Δ(R)` does.
    pub fn reduct(&self, a: &Structure) -> Result<Structure> {
        self.carrier.expect_eq(a.signature(), "reduct")?;
        Ok(self.reduct_unchecked(a))
    }

    pub(crate) fn reduct_unchecked(&self, a: &Structure) -> Structure {
        let mut out = Structure::new(&self.source, a.n());
        for (sym, f) in self.formulas.iter().enumerate() {
            let r = f.arity();
            let mut t = vec![0; r];
            for_each_tuple(a.n(), r, &mut t, &mut |t| {
                if f.body().eval(a, t) {
                    out.insert(sym, t);
                }
            });
        }
        out
    }

    /// Substitutes the definition into a source formula, giving a carrier
    /// formula true of `ā` in `A` iff `phi` is true of `ā` in the reduct.
    pub fn apply(&self, phi: &Formula) -> Result<Formula> {
        self.source.expect_eq(phi.signature(), "apply")?;
        Formula::new(&self.carrier, phi.arity(), self.apply_node(phi.body()))
    }

    pub(crate) fn apply_node(&self, node: &Node) -> Node {
        match node {
            Node::True => Node::True,
            Node::False => Node::False,
            Node::Eq(i, j) => Node::Eq(*i, *j),
            Node::Atom(s, vs) => self.formulas[*s].body().rename_vars(vs),
            Node::Not(f) => self.apply_node(f).not(),
            Node::And(fs) => Node::And(fs.iter().map(|f| self.apply_node(f)).collect()),
            Node::Or(fs) => Node::Or(fs.iter().map(|f| self.apply_node(f)).collect()),
        }
    }
}

/// `compose(g, d)` for `g: τ→σ` and `d: σ→π`; its reduct is `g`'s reduct of
/// `d`'s reduct.
pub fn compose(g: &QfDefinition, d: &QfDefinition) -> Result<QfDefinition> {
    g.carrier.expect_eq(&d.source, "compose")?;
    let formulas = g.formulas.iter().map(|f| d.apply(f)).collect::<Result<Vec<_>>>()?;
    QfDefinition::new(&g.source, &d.carrier, formulas)
}

/// χ(A, ā): every atomic or negated atomic fact about the spanning tuple `a`,
/// equalities first, then each symbol over variable tuples in lexicographic order.
pub fn characteristic_formula(a: &Structure, tuple: &[usize]) -> Result<Formula> {
    let k = tuple.len();
    if let Some(&v) = tuple.iter().find(|&&v| v >= a.n()) {
        return Err(Error::input(format!("vertex {v} out of range 0..{}", a.n())));
    }
    let mut seen = vec![false; a.n()];
    for &v in tuple {
        seen[v] = true;
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::input("characteristic formula needs a spanning tuple"));
    }
    let mut cs = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            let eq = Node::Eq(i, j);
            cs.push(if tuple[i] == tuple[j] { eq } else { eq.not() });
        }
    }
    let sig = a.signature();
    let mut img = Vec::new();
    for sym in 0..sig.len() {
        let r = sig.arity(sym);
        let mut vars = vec![0; r];
        for_each_tuple(k, r, &mut vars, &mut |vars| {
            img.clear();
            img.extend(vars.iter().map(|&x| tuple[x]));
            let atom = Node::Atom(sym, vars.to_vec());
            cs.push(if a.holds(sym, &img) { atom } else { atom.not() });
        });
    }
    Formula::new(sig, k, Node::And(cs))
}

impl fmt::Display for QfDefinition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, phi) in self.formulas.iter().enumerate() {
            let vars: Vec<String> = (1..=phi.arity()).map(|v| format!("x{v}")).collect();
            writeln!(f, "{}({}) := {};", self.source.name(i), vars.join(","), phi)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym_closure() -> QfDefinition {
        let g = Signature::graph();
        QfDefinition::from_nodes(
            &g,
            &g,
            vec![Node::Or(vec![Node::Atom(0, vec![0, 1]), Node::Atom(0, vec![1, 0])])],
        )
        .unwrap()
    }

    fn complement() -> QfDefinition {
        let g = Signature::graph();
        QfDefinition::from_nodes(&g, &g, vec![Node::Atom(0, vec![0, 1]).not()]).unwrap()
    }

    #[test]
    fn symmetric_closure_of_directed_c4() {
        let dc4 = Structure::digraph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let c4 = Structure::graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(sym_closure().reduct(&dc4).unwrap(), c4);
    }

    #[test]
    fn complement_of_k3_is_three_loops() {
        let k3 = Structure::graph(3, &[(0, 1), (1, 2), (0, 2)]);
        let out = complement().reduct(&k3).unwrap();
        assert_eq!(out.tuples(0), vec![vec![0, 0], vec![1, 1], vec![2, 2]]);
    }

    #[test]
    fn identity_reduct() {
        let a = Structure::digraph(3, &[(0, 1), (2, 2)]);
        assert_eq!(QfDefinition::identity(a.signature()).reduct(&a).unwrap(), a);
    }

    #[test]
    fn compose_matches_double_reduct() {
        let a = Structure::digraph(3, &[(0, 1), (1, 1), (2, 0)]);
        let both = compose(&complement(), &sym_closure()).unwrap();
        let twice = complement().reduct(&sym_closure().reduct(&a).unwrap()).unwrap();
        assert_eq!(both.reduct(&a).unwrap(), twice);
    }

    #[test]
    fn chi_of_k2() {
        let k2 = Structure::graph(2, &[(0, 1)]);
        let chi = characteristic_formula(&k2, &[0, 1]).unwrap();
        assert_eq!(
            chi.to_string(),
            "!(x1 = x2) & !E(x1,x1) & E(x1,x2) & E(x2,x1) & !E(x2,x2)"
        );
        assert!(characteristic_formula(&k2, &[0, 0]).is_err());
    }

    #[test]
    fn definition_shape_is_checked() {
        let g = Signature::graph();
        let two = Signature::new([("A", 2), ("B", 1)]).unwrap();
        assert!(QfDefinition::new(&two, &g, vec![Formula::atom(&g, 0)]).is_err());
        let unary = Formula::new(&g, 1, Node::Atom(0, vec![0, 0])).unwrap();
        assert!(QfDefinition::new(&g, &g, vec![unary]).is_err());
    }
}
