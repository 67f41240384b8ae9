use std::fmt;

use super::LocalExpression;
use crate::classes::bound_axiom;
use crate::logic::Node;
use crate::structures::{for_each_tuple, Signature, Structure, GUARD};
use crate::{Error, Result};

/// `∃R1...Rk ∀x1...xm body`, with `body` over the input symbols followed by
/// the existential ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnpSentence {
    input: Signature,
    existential: Signature,
    all: Signature,
    arity: usize,
    body: Node,
}

impl SnpSentence {
    pub fn new(input: &Signature, existential: &Signature, arity: usize, body: Node) -> Result<Self> {
        let all = input.concat(existential)?;
        crate::logic::Formula::new(&all, arity, body.clone())?;
        Ok(SnpSentence { input: input.clone(), existential: existential.clone(), all, arity, body })
    }

    /// The sentence whose models are the members of `e`: base axioms, `¬χ`
    /// of every forbidden structure, and `Δ(R)(x̄) ↔ R(x̄)` for each target
    /// symbol. A carrier symbol `s` with `Δ(R) = s(x̄)` is identified with `R`
    /// instead of quantified.
    pub fn from_expression(e: &LocalExpression) -> Result<Self> {
        let tau = e.target();
        let sigma = e.carrier();
        let mut same: Vec<Option<usize>> = vec![None; sigma.len()];
        let mut identified = vec![false; tau.len()];
        for r in 0..tau.len() {
            let ar = tau.arity(r);
            if let Node::Atom(s, vs) = e.definition().formula(r).body() {
                if same[*s].is_none() && sigma.arity(*s) == ar && *vs == (0..ar).collect::<Vec<_>>() {
                    same[*s] = Some(r);
                    identified[r] = true;
                }
            }
        }
        let mut names: Vec<(String, usize)> = Vec::new();
        let mut map = vec![0; sigma.len()];
        for s in 0..sigma.len() {
            match same[s] {
                Some(r) => map[s] = r,
                None => {
                    let mut name = sigma.name(s).to_string();
                    while tau.index_of(&name).is_some() || names.iter().any(|(n, _)| *n == name) {
                        name.push('_');
                    }
                    map[s] = tau.len() + names.len();
                    names.push((name, sigma.arity(s)));
                }
            }
        }
        let existential = Signature::new(names)?;
        let mut parts: Vec<(usize, Node)> = Vec::new();
        for ax in e.base().to_axioms() {
            parts.push((ax.arity(), ax.body().body().rename_symbols(&map)));
        }
        for f in e.forbidden() {
            let ax = bound_axiom(f);
            parts.push((ax.arity(), ax.body().body().rename_symbols(&map)));
        }
        for r in 0..tau.len() {
            if !identified[r] {
                let ar = tau.arity(r);
                let d = e.definition().formula(r).body().rename_symbols(&map);
                parts.push((ar, d.iff(Node::Atom(r, (0..ar).collect()))));
            }
        }
        let arity = parts.iter().map(|p| p.0).max().unwrap_or(0);
        let body = match parts.len() {
            0 => Node::True,
            1 => parts.pop().unwrap().1,
            _ => Node::And(parts.into_iter().map(|p| p.1).collect()),
        };
        SnpSentence::new(tau, &existential, arity, body)
    }

    pub fn input(&self) -> &Signature {
        &self.input
    }

    pub fn existential(&self) -> &Signature {
        &self.existential
    }

    /// Input symbols followed by the existential ones.
    pub fn signature(&self) -> &Signature {
        &self.all
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn body(&self) -> &Node {
        &self.body
    }

    /// Brute force: assigns the existential tuples vertex by vertex, checking
    /// each instantiation of the universal block once its largest vertex is
    /// placed.
    pub fn evaluate(&self, g: &Structure) -> Result<bool> {
        self.input.expect_eq(g.signature(), "SNP input")?;
        let n = g.n();
        let mut x = Structure::new(&self.all, n);
        for s in 0..self.input.len() {
            for t in g.tuples(s) {
                x.insert(s, &t);
            }
        }
        let k = self.arity;
        if n == 0 {
            return Ok(k > 0 || self.body.eval(&x, &[]));
        }
        let mut layers: Vec<Vec<(usize, Vec<usize>)>> = vec![Vec::new(); n];
        let mut checks: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n];
        for (i, sym) in self.existential.symbols().iter().enumerate() {
            for_each_tuple(n, sym.arity, &mut vec![0; sym.arity], &mut |t| {
                let top = *t.iter().max().unwrap();
                layers[top].push((self.input.len() + i, t.to_vec()));
            });
        }
        for_each_tuple(n, k, &mut vec![0; k], &mut |t| {
            let top = t.iter().copied().max().unwrap_or(0);
            checks[top].push(t.to_vec());
        });
        if let Some(l) = layers.iter().find(|l| l.len() > GUARD) {
            return Err(Error::BlowUp { positions: l.len(), limit: GUARD });
        }
        Ok(self.place(&mut x, 0, &layers, &checks))
    }

    fn place(&self, x: &mut Structure, v: usize, layers: &[Vec<(usize, Vec<usize>)>], checks: &[Vec<Vec<usize>>]) -> bool {
        if v == layers.len() {
            return true;
        }
        let layer = &layers[v];
        for mask in 0u64..1 << layer.len() {
            for (i, (s, t)) in layer.iter().enumerate() {
                x.set(*s, t, mask >> i & 1 == 1);
            }
            if checks[v].iter().all(|t| self.body.eval(x, t)) && self.place(x, v + 1, layers, checks) {
                return true;
            }
        }
        false
    }
}

impl fmt::Display for SnpSentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.existential.is_empty() {
            write!(f, "exists ")?;
            for (i, s) in self.existential.symbols().iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}/{}", s.name, s.arity)?;
            }
            writeln!(f, " .")?;
        }
        let vars: Vec<String> = (1..=self.arity).map(|i| format!("x{i}")).collect();
        writeln!(f, "forall {}:", vars.join(","))?;
        match &self.body {
            Node::And(parts) if !parts.is_empty() => {
                for (i, p) in parts.iter().enumerate() {
                    write!(f, "  ")?;
                    let nested = matches!(p, Node::And(h) if !h.is_empty());
                    p.write(&self.all, f, if nested { 3 } else { 2 })?;
                    writeln!(f, "{}", if i + 1 < parts.len() { " &" } else { "" })?;
                }
                Ok(())
            }
            other => {
                write!(f, "  ")?;
                other.write(&self.all, f, 0)?;
                writeln!(f)
            }
        }
    }
}

/// SNP text of `e` in the formula syntax; see [`SnpSentence::from_expression`].
pub fn render_snp(e: &LocalExpression) -> Result<String> {
    Ok(SnpSentence::from_expression(e)?.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::figures::*;
    use crate::classes::LocalClass;
    use crate::expressions::decide;
    use crate::logic::QfDefinition;
    use crate::structures::enumerate_graphs;

    #[test]
    fn identity_has_no_existential_symbols() {
        let e = LocalExpression::new(QfDefinition::identity(&Signature::graph()), LocalClass::graphs(), vec![]).unwrap();
        let s = SnpSentence::from_expression(&e).unwrap();
        assert!(s.existential().is_empty());
        assert!(!render_snp(&e).unwrap().contains("exists"));
    }

    #[test]
    fn chordal_accepts_p4() {
        let s = SnpSentence::from_expression(&chordal_peo().unwrap()).unwrap();
        assert_eq!(s.existential().len(), 1);
        assert!(s.evaluate(&Structure::graph(4, &[(0, 1), (1, 2), (2, 3)])).unwrap());
        assert!(!s.evaluate(&Structure::graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)])).unwrap());
    }

    #[test]
    fn agrees_with_decide() {
        for e in [chordal_peo().unwrap(), bipartite_or().unwrap(), cobipartite_2ec().unwrap()] {
            let s = SnpSentence::from_expression(&e).unwrap();
            for n in 0..=4 {
                for g in enumerate_graphs(n, true).unwrap() {
                    assert_eq!(s.evaluate(&g).unwrap(), decide(&e, &g).unwrap().is_some(), "{g:?}\n{s}");
                }
            }
        }
    }
}
