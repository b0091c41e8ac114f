use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::normal_form::{hnf, snf};
use super::{ExactError, IntMatrix, RatMatrix, RatVector};

/// Full-rank lattice in Q^n commensurable with Z^n.
///
/// Stored as `basis / denominator` where `basis` is the column Hermite form
/// of the cleared basis and `gcd(content(basis), denominator) == 1`; two
/// lattices are equal iff their stored forms are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    basis: IntMatrix,
    denominator: BigInt,
}

impl Lattice {
    /// The standard lattice Z^n.
    pub fn standard(dim: usize) -> Self {
        Self { basis: IntMatrix::identity(dim), denominator: BigInt::one() }
    }

    /// The lattice `(1/q) Z^n`.
    pub fn scaled_standard(dim: usize, q: u64) -> Self {
        Self::from_integer_basis(&IntMatrix::identity(dim), BigInt::from(q))
            .expect("identity basis is nonsingular")
    }

    /// Lattice spanned by the columns of `basis / denominator`.
    pub fn from_integer_basis(basis: &IntMatrix, denominator: BigInt) -> Result<Self, ExactError> {
        if !basis.is_square() {
            return Err(ExactError::ShapeMismatch {
                expected: "square basis".into(),
                found: format!("{}x{}", basis.rows(), basis.cols()),
            });
        }
        if denominator.is_zero() {
            return Err(ExactError::Singular);
        }
        if basis.det().is_zero() {
            return Err(ExactError::Singular);
        }
        // Rows of the row-HNF of the transpose are the canonical basis vectors.
        let (h, _) = hnf(&basis.transpose());
        let mut cols = h.transpose();
        let mut denominator = denominator;
        if denominator < BigInt::zero() {
            denominator = -denominator;
        }
        let g = cols.content().gcd(&denominator);
        if !g.is_one() {
            cols = IntMatrix::new(
                cols.rows(),
                cols.cols(),
                cols.entries().iter().map(|x| x / &g).collect(),
            )
            .expect("shape preserved");
            denominator /= g;
        }
        Ok(Self { basis: cols, denominator })
    }

    /// Lattice spanned by rational column vectors (exactly `dim` of them).
    pub fn from_rational_columns(dim: usize, columns: &[RatVector]) -> Result<Self, ExactError> {
        if columns.len() != dim || columns.iter().any(|c| c.dim() != dim) {
            return Err(ExactError::ShapeMismatch {
                expected: format!("{dim} columns of dimension {dim}"),
                found: format!("{} columns", columns.len()),
            });
        }
        let den = columns.iter().fold(BigInt::one(), |acc, c| acc.lcm(&c.denominator_lcm()));
        let mut b = IntMatrix::zeros(dim, dim);
        for (j, c) in columns.iter().enumerate() {
            for i in 0..dim {
                b[(i, j)] = (&c[i] * BigRational::from_integer(den.clone())).to_integer();
            }
        }
        Self::from_integer_basis(&b, den)
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Canonical integer basis (columns), to be divided by [`Self::denominator`].
    pub fn integer_basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    pub fn is_standard(&self) -> bool {
        self.denominator.is_one() && self.basis.is_identity()
    }

    /// Basis vectors as rational columns.
    pub fn basis_vectors(&self) -> Vec<RatVector> {
        let d = BigRational::from_integer(self.denominator.clone());
        (0..self.dim())
            .map(|j| RatVector::from_integers(&self.basis.column(j)).scale(&d.recip()))
            .collect()
    }

    pub fn basis_matrix(&self) -> RatMatrix {
        RatMatrix::from_columns(self.dim(), &self.basis_vectors())
    }

    /// Coordinates of `v` in the canonical basis.
    pub fn coordinates(&self, v: &RatVector) -> RatVector {
        let inv = self.basis_matrix().inverse().expect("lattice basis is nonsingular");
        inv.mul_vec(v)
    }

    pub fn contains(&self, v: &RatVector) -> bool {
        v.dim() == self.dim() && self.coordinates(v).is_integral()
    }

    /// True iff `other` is a sublattice of `self`.
    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.dim() == self.dim() && other.basis_vectors().iter().all(|v| self.contains(v))
    }

    /// True iff `g * L == L` for the unimodular (in lattice terms) map `g`.
    pub fn is_invariant_under(&self, g: &IntMatrix) -> bool {
        self.basis_vectors().iter().all(|v| self.contains(&g.mul_rat_vec(v)))
    }
}

/// Elementary divisors greater than one of the finite quotient `sup / sub`.
///
/// An empty result means the quotient is trivial; the product of the
/// divisors is the index `[sup : sub]`.
pub fn lattice_quotient_invariants(sup: &Lattice, sub: &Lattice) -> Result<Vec<BigInt>, ExactError> {
    if sup.dim() != sub.dim() {
        return Err(ExactError::DimensionMismatch(sup.dim(), sub.dim()));
    }
    let inv = sup.basis_matrix().inverse().expect("lattice basis is nonsingular");
    let rel = inv.mul(&sub.basis_matrix()).to_integer().ok_or(ExactError::NotSublattice)?;
    Ok(snf(&rel).diagonal().into_iter().filter(|d| !d.is_one()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn quotient_examples() {
        let z2 = Lattice::standard(2);
        assert!(lattice_quotient_invariants(&z2, &z2).unwrap().is_empty());
        let half = Lattice::scaled_standard(2, 2);
        assert_eq!(lattice_quotient_invariants(&half, &z2).unwrap(), ints(&[2, 2]));
        let sixth = Lattice::scaled_standard(1, 6);
        assert_eq!(lattice_quotient_invariants(&sixth, &Lattice::standard(1)).unwrap(), ints(&[6]));
    }

    #[test]
    fn quotient_rejects_non_sublattice() {
        let z2 = Lattice::standard(2);
        let half = Lattice::scaled_standard(2, 2);
        assert_eq!(lattice_quotient_invariants(&z2, &half), Err(ExactError::NotSublattice));
    }

    #[test]
    fn canonical_form_ignores_basis_choice() {
        let a = Lattice::from_integer_basis(&IntMatrix::from_i64(&[[2, 0], [0, 2]]), BigInt::from(4)).unwrap();
        let b = Lattice::from_integer_basis(&IntMatrix::from_i64(&[[1, 1], [1, -1]]), BigInt::from(2)).unwrap();
        let c = Lattice::scaled_standard(2, 2);
        assert_eq!(a, c);
        assert_ne!(b, c);
        assert!(c.contains_lattice(&b));
        assert!(!b.contains_lattice(&c));
    }

    #[test]
    fn singular_basis_is_rejected() {
        let r = Lattice::from_integer_basis(&IntMatrix::from_i64(&[[1, 2], [2, 4]]), BigInt::one());
        assert_eq!(r, Err(ExactError::Singular));
    }
}
