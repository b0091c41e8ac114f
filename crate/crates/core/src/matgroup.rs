//! Finite subgroups of GL(n, Z).

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::exact::IntMatrix;

/// Default cap on group orders; comfortably above |D12 ≀ S3| = 10368.
pub const DEFAULT_MAX_ORDER: usize = 20_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group order exceeds the cap of {cap} (the generated group is likely infinite)")]
    OrderCapExceeded { cap: usize },
    #[error("generator {index} is not a {dim}x{dim} matrix")]
    BadShape { index: usize, dim: usize },
    #[error("generator {index} is not unimodular (det = {det})")]
    NotUnimodular { index: usize, det: BigInt },
    #[error("element list does not form the group generated by the given generators")]
    NotClosed,
}

/// A finite matrix group: generators plus the full, sorted element list.
#[derive(Clone, Debug)]
pub struct FinMatGroup {
    dim: usize,
    generators: Vec<IntMatrix>,
    elements: Vec<IntMatrix>,
}

impl PartialEq for FinMatGroup {
    /// Groups are equal as sets of matrices; generators are ignored.
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.elements == other.elements
    }
}

impl Eq for FinMatGroup {}

fn check_generators(dim: usize, gens: &[IntMatrix]) -> Result<(), GroupError> {
    for (index, g) in gens.iter().enumerate() {
        if g.rows() != dim || g.cols() != dim {
            return Err(GroupError::BadShape { index, dim });
        }
        let det = g.det();
        if !det.abs().is_one() {
            return Err(GroupError::NotUnimodular { index, det });
        }
    }
    Ok(())
}

/// Dimino's algorithm: adds generators one at a time, extending the current
/// subgroup by right cosets.
fn dimino(dim: usize, gens: &[IntMatrix], max_order: usize) -> Result<Vec<IntMatrix>, GroupError> {
    let identity = IntMatrix::identity(dim);
    let mut elements = vec![identity.clone()];
    let mut seen: HashSet<IntMatrix> = HashSet::from([identity.clone()]);
    for (i, s) in gens.iter().enumerate() {
        if seen.contains(s) {
            continue;
        }
        let previous = elements.clone();
        let mut reps = vec![identity.clone()];
        let add_coset = |rep: &IntMatrix,
                             elements: &mut Vec<IntMatrix>,
                             seen: &mut HashSet<IntMatrix>|
         -> Result<(), GroupError> {
            for h in &previous {
                let e = h * rep;
                seen.insert(e.clone());
                elements.push(e);
            }
            if elements.len() > max_order {
                return Err(GroupError::OrderCapExceeded { cap: max_order });
            }
            Ok(())
        };
        add_coset(s, &mut elements, &mut seen)?;
        reps.push(s.clone());
        let mut pos = 1;
        while pos < reps.len() {
            for t in &gens[..=i] {
                let e = &reps[pos] * t;
                if !seen.contains(&e) {
                    add_coset(&e, &mut elements, &mut seen)?;
                    reps.push(e);
                }
            }
            pos += 1;
        }
    }
    elements.sort();
    Ok(elements)
}

impl FinMatGroup {
    /// The group generated by `gens`, or `OrderCapExceeded` once more than
    /// `max_order` elements appear.
    pub fn closure(dim: usize, gens: &[IntMatrix], max_order: usize) -> Result<Self, GroupError> {
        check_generators(dim, gens)?;
        let elements = dimino(dim, gens, max_order)?;
        Ok(Self { dim, generators: gens.to_vec(), elements })
    }

    pub fn trivial(dim: usize) -> Self {
        Self { dim, generators: Vec::new(), elements: vec![IntMatrix::identity(dim)] }
    }

    /// Builds a group from a known element set and a generating subset,
    /// verifying that the generators produce exactly that set.
    pub fn from_elements(
        dim: usize,
        generators: Vec<IntMatrix>,
        mut elements: Vec<IntMatrix>,
    ) -> Result<Self, GroupError> {
        elements.sort();
        elements.dedup();
        let closed = Self::closure(dim, &generators, elements.len())
            .map_err(|_| GroupError::NotClosed)?;
        if closed.elements != elements {
            return Err(GroupError::NotClosed);
        }
        Ok(closed)
    }

    /// Builds a group from a set expected to be closed, extending `base`
    /// greedily to a generating set; fails with `NotClosed` otherwise.
    pub fn from_closed_set(
        dim: usize,
        mut elements: Vec<IntMatrix>,
        base: &[IntMatrix],
    ) -> Result<Self, GroupError> {
        elements.sort();
        elements.dedup();
        if base.iter().any(|b| elements.binary_search(b).is_err()) {
            return Err(GroupError::NotClosed);
        }
        let generators =
            greedy_generators(dim, &elements, base).map_err(|_| GroupError::NotClosed)?;
        Self::from_elements(dim, generators, elements)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[IntMatrix] {
        &self.generators
    }

    /// Elements in canonical (row-major lexicographic) order.
    pub fn elements(&self) -> &[IntMatrix] {
        &self.elements
    }

    pub fn index_of(&self, x: &IntMatrix) -> Option<usize> {
        self.elements.binary_search(x).ok()
    }

    pub fn contains(&self, x: &IntMatrix) -> bool {
        x.rows() == self.dim && x.cols() == self.dim && self.index_of(x).is_some()
    }

    pub fn is_subgroup_of(&self, other: &FinMatGroup) -> bool {
        self.dim == other.dim && self.elements.iter().all(|g| other.contains(g))
    }

    /// True iff `X g X^-1 ∈ G` for every generator `g` (enough for finite `G`).
    pub fn normalizes(&self, x: &IntMatrix) -> bool {
        match x.inverse() {
            Some(inv) => self.normalizes_with_inverse(x, &inv, &self.generators),
            None => false,
        }
    }

    /// Same test quantified over every element of `G`.
    pub fn normalizes_all(&self, x: &IntMatrix) -> bool {
        match x.inverse() {
            Some(inv) => self.normalizes_with_inverse(x, &inv, &self.elements),
            None => false,
        }
    }

    fn normalizes_with_inverse(&self, x: &IntMatrix, inv: &IntMatrix, gens: &[IntMatrix]) -> bool {
        gens.iter().all(|g| self.contains(&(&(x * g) * inv)))
    }

    /// The conjugate group `X G X^-1`.
    pub fn conjugate(&self, x: &IntMatrix) -> Option<FinMatGroup> {
        let inv = x.inverse()?;
        let conj = |g: &IntMatrix| &(x * g) * &inv;
        let mut elements: Vec<_> = self.elements.iter().map(conj).collect();
        elements.sort();
        Some(Self { dim: self.dim, generators: self.generators.iter().map(conj).collect(), elements })
    }

    /// Block-diagonal direct product acting on `Q^{a+b}`.
    pub fn direct_product(a: &FinMatGroup, b: &FinMatGroup) -> FinMatGroup {
        let ia = IntMatrix::identity(a.dim);
        let ib = IntMatrix::identity(b.dim);
        let mut generators: Vec<_> = a.generators.iter().map(|g| IntMatrix::block_diag(g, &ib)).collect();
        generators.extend(b.generators.iter().map(|h| IntMatrix::block_diag(&ia, h)));
        let mut elements = Vec::with_capacity(a.order() * b.order());
        for g in &a.elements {
            for h in &b.elements {
                elements.push(IntMatrix::block_diag(g, h));
            }
        }
        elements.sort();
        FinMatGroup { dim: a.dim + b.dim, generators, elements }
    }

    /// Deterministic generating set depending only on the element set:
    /// walks the canonical order, keeping each element not yet generated.
    pub fn canonical_generators(&self) -> Vec<IntMatrix> {
        greedy_generators(self.dim, &self.elements, &[]).expect("subgroups of a finite group are finite")
    }

    /// Extends `base` greedily to a generating set of this group.
    pub fn generators_extending(&self, base: &[IntMatrix]) -> Vec<IntMatrix> {
        greedy_generators(self.dim, &self.elements, base).expect("subgroups of a finite group are finite")
    }

    pub fn element_order(&self, g: &IntMatrix) -> usize {
        element_order(g)
    }

    pub fn fingerprint(&self) -> GroupFingerprint {
        let mut histogram = BTreeMap::new();
        for g in &self.elements {
            *histogram.entry(element_order(g)).or_insert(0) += 1;
        }
        GroupFingerprint {
            order: self.order(),
            element_order_histogram: histogram,
            abelianization_invariants: self.abelianization_invariants(),
        }
    }

    /// Commutator subgroup, as the normal closure of the generator commutators.
    pub fn derived_subgroup(&self) -> FinMatGroup {
        let inv: Vec<IntMatrix> =
            self.generators.iter().map(|g| g.inverse().expect("unimodular")).collect();
        let mut gens = Vec::new();
        for i in 0..self.generators.len() {
            for j in 0..i {
                let c = &(&(&inv[i] * &inv[j]) * &self.generators[i]) * &self.generators[j];
                if !c.is_identity() {
                    gens.push(c);
                }
            }
        }
        loop {
            let k = FinMatGroup::closure(self.dim, &gens, self.order()).expect("subgroup of a finite group");
            let extra = k.generators.iter().find_map(|kg| {
                self.generators
                    .iter()
                    .zip(&inv)
                    .map(|(s, si)| &(si * kg) * s)
                    .find(|c| !k.contains(c))
            });
            match extra {
                Some(c) => gens.push(c),
                None => return k,
            }
        }
    }

    /// Invariant factors `d_1 | d_2 | ...` (all > 1) of `G / [G, G]`.
    fn abelianization_invariants(&self) -> Vec<u64> {
        let derived = self.derived_subgroup();
        let index = (self.order() / derived.order()) as u64;
        let mut per_prime: Vec<Vec<u64>> = Vec::new();
        for p in prime_factors(index) {
            // |A[p^j]| = #{g : g^{p^j} ∈ G'} / |G'|
            let mut exps_at_least = Vec::new();
            let mut prev_log = 0u32;
            let mut j = 1u32;
            loop {
                let e = p.pow(j);
                let count = self
                    .elements
                    .iter()
                    .filter(|g| derived.contains(&matrix_pow(g, e)))
                    .count() as u64
                    / derived.order() as u64;
                let log = ilog_exact(count, p);
                if log == prev_log {
                    break;
                }
                exps_at_least.push(log - prev_log);
                prev_log = log;
                j += 1;
            }
            // exps_at_least[j-1] = number of cyclic p-factors of exponent >= j
            let mut powers = Vec::new();
            for (jdx, &cnt) in exps_at_least.iter().enumerate() {
                let next = exps_at_least.get(jdx + 1).copied().unwrap_or(0);
                for _ in 0..(cnt - next) {
                    powers.push(p.pow(jdx as u32 + 1));
                }
            }
            powers.sort_unstable_by(|a, b| b.cmp(a));
            per_prime.push(powers);
        }
        let len = per_prime.iter().map(Vec::len).max().unwrap_or(0);
        let mut factors: Vec<u64> = (0..len)
            .map(|k| per_prime.iter().map(|ps| ps.get(k).copied().unwrap_or(1)).product())
            .collect();
        factors.sort_unstable();
        factors
    }
}

/// Coarse isomorphism invariant: equal groups have equal fingerprints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupFingerprint {
    pub order: usize,
    pub element_order_histogram: BTreeMap<usize, usize>,
    pub abelianization_invariants: Vec<u64>,
}

fn greedy_generators(
    dim: usize,
    elements: &[IntMatrix],
    base: &[IntMatrix],
) -> Result<Vec<IntMatrix>, GroupError> {
    let mut gens = base.to_vec();
    let mut current = FinMatGroup::closure(dim, &gens, elements.len())?;
    for e in elements {
        if current.order() == elements.len() {
            break;
        }
        if !current.contains(e) {
            gens.push(e.clone());
            current = FinMatGroup::closure(dim, &gens, elements.len())?;
        }
    }
    Ok(gens)
}

fn element_order(g: &IntMatrix) -> usize {
    let mut p = g.clone();
    let mut k = 1;
    while !p.is_identity() {
        p = &p * g;
        k += 1;
    }
    k
}

fn matrix_pow(g: &IntMatrix, mut e: u64) -> IntMatrix {
    let mut result = IntMatrix::identity(g.rows());
    let mut base = g.clone();
    while e > 0 {
        if e & 1 == 1 {
            result = &result * &base;
        }
        base = &base * &base;
        e >>= 1;
    }
    result
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn ilog_exact(mut n: u64, p: u64) -> u32 {
    let mut k = 0;
    while n > 1 {
        debug_assert_eq!(n % p, 0, "count must be a power of p");
        n /= p;
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;

    #[test]
    fn closure_orders() {
        let trivial = FinMatGroup::closure(2, &[IntMatrix::identity(2)], DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(trivial.order(), 1);
        assert_eq!(builtin::d12().order(), 12);
        assert_eq!(builtin::g2().order(), 48);
    }

    #[test]
    fn closure_rejects_bad_generators() {
        let shear2 = IntMatrix::from_i64(&[[2, 1], [0, 1]]);
        assert!(matches!(
            FinMatGroup::closure(2, &[shear2], 10),
            Err(GroupError::NotUnimodular { index: 0, .. })
        ));
        let shear = IntMatrix::from_i64(&[[1, 1], [0, 1]]);
        assert_eq!(
            FinMatGroup::closure(2, &[shear], 100),
            Err(GroupError::OrderCapExceeded { cap: 100 })
        );
        assert!(matches!(
            FinMatGroup::closure(3, &[IntMatrix::identity(2)], 10),
            Err(GroupError::BadShape { .. })
        ));
    }

    #[test]
    fn membership() {
        let g = builtin::d12();
        assert!(g.contains(&IntMatrix::identity(2)));
        assert!(!g.contains(&IntMatrix::from_i64(&[[1, 1], [0, 1]])));
        assert!(g.contains(&IntMatrix::from_i64(&[[0, 1], [1, 0]])));
    }

    #[test]
    fn normalizes_examples() {
        let g = builtin::d12();
        assert!(g.normalizes(&IntMatrix::identity(2)));
        assert!(g.elements().iter().all(|x| g.normalizes(x)));
        let g2 = builtin::g2();
        assert!(g2.normalizes(&-&IntMatrix::identity(3)));
        assert!(!g.normalizes(&IntMatrix::from_i64(&[[1, 1], [0, 1]])));
    }

    #[test]
    fn trivial_fingerprint() {
        let f = FinMatGroup::trivial(3).fingerprint();
        assert_eq!(f.order, 1);
        assert_eq!(f.element_order_histogram, BTreeMap::from([(1, 1)]));
        assert!(f.abelianization_invariants.is_empty());
    }

    #[test]
    fn canonical_generators_regenerate_group() {
        let g = builtin::g2();
        let gens = g.canonical_generators();
        let again = FinMatGroup::closure(3, &gens, DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(again, g);
    }

    #[test]
    fn from_elements_detects_non_closed_sets() {
        let g = builtin::d12();
        let mut partial = g.elements().to_vec();
        partial.pop();
        assert_eq!(
            FinMatGroup::from_elements(2, g.generators().to_vec(), partial),
            Err(GroupError::NotClosed)
        );
    }
}
