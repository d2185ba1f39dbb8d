//! Constructive membership: build traces, closure search, random objects and separating primes.

pub mod closure;
pub mod random;
pub mod witness;

pub use closure::{closure_search, separate, SearchBounds};
pub use random::{
    random_chain_map, random_complex, random_complex_with, random_elementary_complex, random_filt_chain, random_filt_morphism, random_filt_object,
    random_gl, random_matrix, random_mixed_complex, random_scalar, random_seq_object, RandomBounds,
};
pub use witness::{matrices_json, witness_cone_beta_power, Step, TraceBuilder, Witness};
