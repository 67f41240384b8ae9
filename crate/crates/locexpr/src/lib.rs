//! Local expressions of graph classes.
//!
//! A graph class is presented as the set of reducts of forbidden-pattern-free
//! expansions: orientations, orderings, colourings, equivalence relations and
//! so on. This crate decides membership by search, emits and checks
//! certificates, manipulates expressions, and cross-checks everything against
//! brute-force oracles.
//!
//! Module map:
//!
//! - [`structures`]: finite relational structures, embeddings, isomorphism.
//! - [`logic`]: quantifier-free formulas, definitions, reducts, synthesis.
//! - [`classes`]: local classes by bounds or universal axioms, bound mining.
//! - [`expressions`]: local expressions, decide/verify, algebra, SNP text.
//! - [`solver`]: the backtracking engine behind `decide`.
//! - [`catalog`]: shipped expressions and reference recognizers.
//! - [`cli`]: the DSL and the command-line front end.
//!
//! ```
//! use locexpr::catalog::builtin;
//! use locexpr::expressions::{decide, verify};
//! use locexpr::Structure;
//!
//! let e = builtin("chordal_peo")?.expression;
//! let p4 = Structure::graph(4, &[(0, 1), (1, 2), (2, 3)]);
//! let cert = decide(&e, &p4)?.expect("P4 is chordal");
//! assert!(verify(&e, &p4, &cert)?);
//! # Ok::<(), locexpr::Error>(())
//! ```

pub mod catalog;
pub mod classes;
pub mod cli;
mod error;
pub mod expressions;
pub mod logic;
pub mod solver;
pub mod structures;

pub use error::{Error, Result};
pub use expressions::{Certificate, LocalExpression};
pub use logic::{Formula, QfDefinition, UniversalSentence};
pub use classes::LocalClass;
pub use structures::{Signature, Structure};
