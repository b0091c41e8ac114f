//! The two complete crystallographic groups used as building blocks.
//!
//! `gamma1` is the split extension of Z^2 by the dihedral group of order 12
//! acting on the hexagonal lattice; `gamma2` is the split extension of Z^3 by
//! a copy of S4 x Z2. Both have trivial center and trivial outer
//! automorphism group, and products of them seed the construction in every
//! dimension.

use crate::crystal::CrystGroup;
use crate::exact::{IntMatrix, RatVector};
use crate::matgroup::{FinMatGroup, DEFAULT_MAX_ORDER};

pub fn d12_generators() -> Vec<IntMatrix> {
    vec![
        IntMatrix::from_i64(&[[0, -1], [1, -1]]),
        IntMatrix::from_i64(&[[-1, 0], [0, -1]]),
        IntMatrix::from_i64(&[[0, 1], [1, 0]]),
    ]
}

pub fn g2_generators() -> Vec<IntMatrix> {
    vec![
        IntMatrix::from_i64(&[[0, 1, 0], [0, -1, -1], [1, 1, 0]]),
        IntMatrix::from_i64(&[[0, 0, 1], [0, -1, -1], [-1, 0, 1]]),
    ]
}

/// Dihedral group of order 12 in GL(2, Z).
pub fn d12() -> FinMatGroup {
    FinMatGroup::closure(2, &d12_generators(), DEFAULT_MAX_ORDER).expect("D12 is finite")
}

/// S4 x Z2 in GL(3, Z).
pub fn g2() -> FinMatGroup {
    FinMatGroup::closure(3, &g2_generators(), DEFAULT_MAX_ORDER).expect("G2 is finite")
}

fn split(dim: usize, gens: Vec<IntMatrix>) -> CrystGroup {
    let affine: Vec<_> = gens.into_iter().map(|g| (g, RatVector::zeros(dim))).collect();
    CrystGroup::new(dim, &affine, DEFAULT_MAX_ORDER).expect("split extensions are consistent")
}

/// `D12 ⋉ Z^2`.
pub fn gamma1() -> CrystGroup {
    split(2, d12_generators())
}

/// `(S4 x Z2) ⋉ Z^3`.
pub fn gamma2() -> CrystGroup {
    split(3, g2_generators())
}

/// `gamma1^k x gamma2^i`, in that block order.
pub fn product(k: usize, i: usize) -> CrystGroup {
    let mut g = CrystGroup::trivial(0);
    for _ in 0..k {
        g = g.direct_product(&gamma1());
    }
    for _ in 0..i {
        g = g.direct_product(&gamma2());
    }
    g
}
