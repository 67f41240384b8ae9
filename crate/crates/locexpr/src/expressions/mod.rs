//! Local expressions: membership, certificates, algebra, SNP text.

mod decide;
mod expression;
mod ops;
mod snp;

pub use decide::{certificate_violation, decide, decide_with, validate, verify, Certificate, ValidationReport, Violation};
pub use expression::LocalExpression;
pub use ops::{disjoint_union, pullback, subgraph_closure, transform};
pub use snp::{render_snp, SnpSentence};
