//! Finite relational structures over finite signatures.

mod embed;
mod enumerate;
pub mod io;
mod iso;
mod signature;
mod structure;

pub use embed::{embeds, enumerate_embeddings, is_embedding, is_free, Embedding, Matcher};
pub use enumerate::{
    enumerate_graphs, enumerate_structures, enumerate_structures_with, graph_levels, graphs_up_to,
    Labeled, GUARD,
};
pub(crate) use enumerate::augment_all;
pub use iso::{are_isomorphic, canonical_cmp, canonical_form, canonical_labeling, find_isomorphism};
pub use signature::{Signature, Symbol};
pub use structure::Structure;
pub(crate) use structure::for_each_tuple;

/// Induced substructure on `vs`, re-indexed in ascending order.
pub fn induced_substructure(a: &Structure, vs: &[usize]) -> crate::Result<Structure> {
    a.induced(vs)
}

/// Automorphisms of `a`, lexicographic.
pub fn automorphisms(a: &Structure) -> Vec<Embedding> {
    enumerate_embeddings(a, a).expect("same signature")
}
