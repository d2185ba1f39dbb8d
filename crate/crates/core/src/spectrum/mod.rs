//! The two-layer spectrum, supports, and the classification of tt-ideals by Thomason pairs.

pub mod points;
pub mod support;

pub use points::{
    emit_spectrum, pair_to_subset, spectrum_edges, subset_to_pair, BasePrime, HomPrime, HomSubset, Layer, LayerSet, ThomasonPair, ThomasonSubset,
};
pub use support::{
    candidate_points, ideal_signature, in_ideal, prime_test, realize, realize_pair, support, support_pair, support_report, support_total, Evidence,
    SupportReport,
};
