use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Vector of rationals. `BigRational` keeps every entry in lowest terms with
/// a positive denominator, so structural equality is value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RatVector {
    entries: Vec<BigRational>,
}

impl RatVector {
    pub fn new(entries: Vec<BigRational>) -> Self {
        Self { entries }
    }

    pub fn zeros(dim: usize) -> Self {
        Self { entries: vec![BigRational::zero(); dim] }
    }

    pub fn from_integers(v: &[BigInt]) -> Self {
        Self { entries: v.iter().map(|x| BigRational::from_integer(x.clone())).collect() }
    }

    /// Builds a vector from `(numerator, denominator)` pairs.
    pub fn from_fractions(v: &[(i64, i64)]) -> Self {
        Self {
            entries: v
                .iter()
                .map(|&(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)))
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<BigRational> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|x| x.is_integer())
    }

    /// Integer entries, if every entry is integral.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.entries.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect()
    }

    /// Canonical representative modulo Z^n, with every entry in [0, 1).
    pub fn reduce_mod_one(&self) -> Self {
        Self { entries: self.entries.iter().map(|x| x - x.floor()).collect() }
    }

    /// Least common multiple of the entry denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.entries.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self { entries: self.entries.iter().map(|x| x * k).collect() }
    }

    /// Concatenation (direct sum) of two vectors.
    pub fn concat(&self, other: &RatVector) -> Self {
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Self { entries }
    }
}

impl Index<usize> for RatVector {
    type Output = BigRational;

    fn index(&self, i: usize) -> &BigRational {
        &self.entries[i]
    }
}

impl Add for &RatVector {
    type Output = RatVector;

    fn add(self, rhs: &RatVector) -> RatVector {
        assert_eq!(self.dim(), rhs.dim(), "vector dimension mismatch");
        RatVector { entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &RatVector {
    type Output = RatVector;

    fn sub(self, rhs: &RatVector) -> RatVector {
        assert_eq!(self.dim(), rhs.dim(), "vector dimension mismatch");
        RatVector { entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &RatVector {
    type Output = RatVector;

    fn neg(self) -> RatVector {
        RatVector { entries: self.entries.iter().map(|x| -x).collect() }
    }
}

impl fmt::Display for RatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entries_are_normalized() {
        let v = RatVector::from_fractions(&[(2, 4), (3, -6), (0, 5)]);
        assert_eq!(v[0], BigRational::new(1.into(), 2.into()));
        assert_eq!(v[1].denom(), &BigInt::from(2));
        assert_eq!(v[1].numer(), &BigInt::from(-1));
        assert!(v[2].is_zero());
    }

    #[test]
    fn reduce_mod_one_lands_in_unit_interval() {
        let v = RatVector::from_fractions(&[(-1, 2), (7, 3), (4, 1)]);
        assert_eq!(v.reduce_mod_one(), RatVector::from_fractions(&[(1, 2), (1, 3), (0, 1)]));
        assert_eq!(v.denominator_lcm(), BigInt::from(6));
    }
}
