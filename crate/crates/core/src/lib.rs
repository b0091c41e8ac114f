//! Exact computations with crystallographic groups.
//!
//! A crystallographic group is handled as a finite point group `G ⊂ GL(n,Z)`
//! together with a vector system `g ↦ t_g ∈ Q^n / Z^n`. The crate computes
//! centers, `H^1(G, Z^n)`, `GL(n,Z)`-normalizers, affine normalizers and the
//! order of the outer automorphism group, and iterates the affine normalizer
//! to a fixed point.

pub mod exact;
pub mod builtin;
pub mod crystal;
pub mod forms;
pub mod matgroup;
pub mod normalizer;

pub use crystal::{
    affine_normalizer, analyze, analyze_with, aut_is_crystallographic_check, construct_complete_group,
    decompose_dimension, iterate_fixpoint, out_order, rebase, AffNormalizerResult, Analysis, AnalysisReport,
    CrystError, CrystGroup, FixpointRun, LatticeExtension, DEFAULT_MAX_ITER,
};
pub use exact::{IntMatrix, Lattice, RatMatrix, RatVector};
pub use forms::{invariant_form_space, isometries, short_vectors, FormError, SymForm};
pub use matgroup::{FinMatGroup, GroupError, GroupFingerprint, DEFAULT_MAX_ORDER};
pub use normalizer::{
    normalizer, normalizer_bruteforce, normalizer_formbased, Backend, NormalizerConfig, NormalizerError,
    NormalizerResult, NormalizerStatus,
};
