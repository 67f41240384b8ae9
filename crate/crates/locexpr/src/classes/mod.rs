//! Local classes: membership, bound mining, class algebra and bounded
//! locality checks.

mod class;
mod mining;

pub use class::{bound_axiom, minimize_bounds, LocalClass, OrderHint};
pub use mining::{
    intersect, is_local_up_to, locality_witness, mine_bounds, minimal_bounds_relative,
    preimage_bounds, union_classes, union_classes_within, MiningReport, Pred, SizeCount,
};
