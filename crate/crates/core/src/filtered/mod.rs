//! Finitely filtered modules over a field inside presheaves on Z.
//!
//! Kernels, images and the strictness test work inside `π`, where every
//! filtered object embeds. Cokernels are reflected back by `κ`.

pub mod chain;
pub mod object;
pub mod ops;
pub mod seq;

pub use chain::FiltChainComplex;
pub use object::{hom_basis, FiltMorphism, FiltObject};
pub use ops::{
    coimage, cokernel, day_tensor, factorization, image, is_epi, is_mono, is_strict, kappa, kernel, lkappa_resolution, rees_lambda, swap_matrix,
    Factorization, LKappa,
};
pub use seq::{GradedDims, SeqMorphism, SeqObject};
