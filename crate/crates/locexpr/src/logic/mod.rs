//! Quantifier-free formulas, definitions and their reducts, and the
//! functor-table machinery.

mod decide;
mod definition;
mod formula;
mod table;

pub use decide::{
    distinguishing_model, is_logically_injective, is_logically_injective_on, is_satisfiable,
    logically_equivalent,
};
pub use definition::{characteristic_formula, compose, QfDefinition};
pub use formula::{Formula, Node, UniversalSentence};
pub use table::{synthesize_definition, weak_extension, FunctorTable};
