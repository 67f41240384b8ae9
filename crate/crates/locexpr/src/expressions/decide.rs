use std::collections::HashSet;
use std::fmt;

use super::LocalExpression;
use crate::solver::{compile, solve_with, SearchStats, SolveOptions};
use crate::structures::{canonical_form, is_embedding, Matcher, Structure};
use crate::Result;

/// An expansion witnessing membership: a carrier structure on the input's
/// vertices whose reduct is the input, inside the base, forbidden-free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate(Structure);

impl Certificate {
    pub fn new(x: Structure) -> Self {
        Certificate(x)
    }

    pub fn structure(&self) -> &Structure {
        &self.0
    }

    pub fn into_structure(self) -> Structure {
        self.0
    }
}

/// Which certificate invariant fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// The reduct differs from the input.
    Reduct,
    /// Not a base member.
    Base,
    /// Forbidden structure `i` embeds, at `map`.
    Forbidden { index: usize, map: Vec<usize> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Reduct => write!(f, "reduct differs from the input"),
            Violation::Base => write!(f, "not a member of the base class"),
            Violation::Forbidden { index, map } => write!(f, "forbidden structure {index} embeds at {map:?}"),
        }
    }
}

/// The first certificate in search order, if any.
pub fn decide(e: &LocalExpression, g: &Structure) -> Result<Option<Certificate>> {
    Ok(decide_with(e, g, &SolveOptions::default())?.0)
}

pub fn decide_with(
    e: &LocalExpression,
    g: &Structure,
    opts: &SolveOptions,
) -> Result<(Option<Certificate>, SearchStats)> {
    let p = compile(e, g)?;
    let (x, stats) = solve_with(&p, opts)?;
    Ok((x.map(Certificate), stats))
}

/// First failing invariant of `x` as a certificate for `g`, if any.
pub fn certificate_violation(e: &LocalExpression, g: &Structure, x: &Structure) -> Result<Option<Violation>> {
    e.check_certificate(g, x)?;
    if e.definition().reduct(x)? != *g {
        return Ok(Some(Violation::Reduct));
    }
    if !e.base().contains(x)? {
        return Ok(Some(Violation::Base));
    }
    for (index, f) in e.forbidden().iter().enumerate() {
        if let Some(map) = Matcher::new(f).first(x)? {
            debug_assert!(is_embedding(f, x, &map));
            return Ok(Some(Violation::Forbidden { index, map }));
        }
    }
    Ok(None)
}

/// True iff `x` is a certificate for `g`. Polynomial: no search.
pub fn verify(e: &LocalExpression, g: &Structure, x: &Certificate) -> Result<bool> {
    Ok(certificate_violation(e, g, &x.0)?.is_none())
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub window: usize,
    /// Forbidden structures outside the base; they can never embed.
    pub redundant: Vec<usize>,
    /// Forbidden structures isomorphic to an earlier one.
    pub duplicates: Vec<usize>,
}

impl ValidationReport {
    pub fn warnings(&self) -> Vec<String> {
        let mut out: Vec<String> =
            self.redundant.iter().map(|i| format!("forbidden structure {i} violates the base")).collect();
        out.extend(self.duplicates.iter().map(|i| format!("forbidden structure {i} repeats an earlier one")));
        out
    }
}

/// Re-checks signatures and reports redundant forbidden structures.
pub fn validate(e: &LocalExpression) -> Result<ValidationReport> {
    e.definition().carrier().expect_eq(e.base().signature(), "expression base")?;
    let mut report = ValidationReport { window: e.window(), ..Default::default() };
    let mut seen = HashSet::new();
    for (i, f) in e.forbidden().iter().enumerate() {
        e.carrier().expect_eq(f.signature(), "forbidden structure")?;
        if !e.base().contains(f)? {
            report.redundant.push(i);
        }
        if !seen.insert(canonical_form(f)) {
            report.duplicates.push(i);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::bases;
    use crate::catalog::figures::*;
    use crate::logic::QfDefinition;
    use crate::structures::Signature;
    use crate::Error;

    fn cycle(n: usize) -> Structure {
        Structure::graph(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
    }

    fn k(n: usize) -> Structure {
        let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Structure::graph(n, &edges)
    }

    #[test]
    fn catalog_examples() {
        let peo = chordal_peo().unwrap();
        assert!(decide(&peo, &cycle(4)).unwrap().is_none());
        assert!(decide(&peo, &k(4)).unwrap().is_some());
        let cob = cobipartite_2ec().unwrap();
        assert!(decide(&cob, &k(3)).unwrap().is_some());
        let mut all_red = Structure::new(cob.carrier(), 3);
        for (u, v) in k(3).edges() {
            all_red.insert(0, &[u, v]);
            all_red.insert(0, &[v, u]);
        }
        assert!(verify(&cob, &k(3), &Certificate::new(all_red)).unwrap());
        assert!(decide(&cob, &cycle(5)).unwrap().is_none());
        let loor = threecol_loor().unwrap();
        assert!(decide(&loor, &cycle(5)).unwrap().is_some());
        assert!(decide(&loor, &k(4)).unwrap().is_none());
        assert!(decide(&rghv(2).unwrap(), &cycle(7)).unwrap().is_none());
    }

    #[test]
    fn certificates_verify_and_mutations_do_not() {
        let e = chordal_peo().unwrap();
        let g = Structure::graph(4, &[(0, 1), (1, 2), (2, 3), (0, 2)]);
        let x = decide(&e, &g).unwrap().unwrap();
        assert!(verify(&e, &g, &x).unwrap());

        let mut flipped = x.structure().clone();
        flipped.set(0, &[0, 3], true);
        flipped.set(0, &[3, 0], true);
        assert_eq!(certificate_violation(&e, &g, &flipped).unwrap(), Some(Violation::Reduct));

        // 2 first: its later neighbours 3 and 0 are not adjacent
        let mut planted = Structure::new(e.carrier(), 4);
        for (u, v) in [(0, 1), (1, 2), (2, 3), (0, 2)] {
            planted.insert(0, &[u, v]);
            planted.insert(0, &[v, u]);
        }
        let order = [2, 3, 0, 1];
        for i in 0..4 {
            for j in i + 1..4 {
                planted.insert(1, &[order[i], order[j]]);
            }
        }
        assert!(matches!(certificate_violation(&e, &g, &planted).unwrap(), Some(Violation::Forbidden { .. })));

        let wrong_size = Structure::new(e.carrier(), 3);
        assert!(matches!(certificate_violation(&e, &g, &wrong_size), Err(Error::Input(_))));
    }

    #[test]
    fn validation() {
        assert!(validate(&chordal_peo().unwrap()).unwrap().warnings().is_empty());
        let looped = {
            let mut x = Structure::new(&bases::ordered_signature(), 1);
            x.insert(0, &[0, 0]);
            x
        };
        let e = LocalExpression::new(bases::forget(&bases::ordered_signature(), 0), bases::lor(), vec![looped.clone(), looped]).unwrap();
        let r = validate(&e).unwrap();
        assert_eq!(r.redundant, vec![0, 1]);
        assert_eq!(r.duplicates, vec![1]);
        assert_eq!(r.warnings().len(), 3);
    }

    #[test]
    fn mismatched_definition_is_an_error() {
        let d = QfDefinition::identity(&Signature::graph());
        assert!(LocalExpression::new(d, bases::lor(), vec![]).is_err());
    }
}
