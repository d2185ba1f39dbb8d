//! Bounded complexes of split filtered modules and their homotopy category.

pub mod central;
pub mod complex;
pub mod equivalence;
pub mod maps;
pub mod minimize;
pub mod ops;
pub mod split;

pub use central::{check_multiplication, graded_central_ring, localized_hom, CentralRingSlice, LocalizedHom};
pub use complex::FiltComplex;
pub use equivalence::{are_homotopy_equivalent, certify_equivalence, homotopy_hom_rank, invariants_agree, is_zero_object};
pub use maps::{ChainMap, H0Basis, HomComplex, HomElement};
pub use minimize::{decompose_field, is_minimal, minimize, Decomposition, Reduction, Summand};
pub use ops::{beta_map, cone, direct_sum_maps, direct_sum_of_maps, double_dual_iso, evaluation, internal_hom, symmetry, tensor_maps, triangle_maps};
pub use split::{GradedMatrix, SplitObject};

/// Nullhomotopy of a chain map, if one exists.
pub fn is_nullhomotopic(f: &ChainMap) -> Option<HomElement> {
    f.nullhomotopy()
}
