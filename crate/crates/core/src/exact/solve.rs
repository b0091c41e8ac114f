//! Integer linear systems and rational congruences modulo the integer lattice.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use super::normal_form::{hnf, snf, SnfResult};
use super::{ExactError, IntMatrix, Lattice, RatMatrix, RatVector};

/// Integer solution set `particular + span_Z(kernel)` of `A x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerSolution {
    pub particular: Vec<BigInt>,
    /// Basis of the integer kernel, one vector per entry, in Hermite form.
    pub kernel: Vec<Vec<BigInt>>,
}

/// Solves `A x = b` over the integers. `Ok(None)` means no integer solution.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Result<Option<IntegerSolution>, ExactError> {
    if b.len() != a.rows() {
        return Err(ExactError::ShapeMismatch {
            expected: format!("right-hand side of length {}", a.rows()),
            found: format!("length {}", b.len()),
        });
    }
    let s = snf(a);
    let r = s.rank();
    let c = s.u.mul_vec(b);
    let diag = s.diagonal();
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, ci) in c.iter().enumerate() {
        if i < r {
            let (q, rem) = ci.div_rem(&diag[i]);
            if !rem.is_zero() {
                return Ok(None);
            }
            y[i] = q;
        } else if !ci.is_zero() {
            return Ok(None);
        }
    }
    let particular = s.v.mul_vec(&y);
    Ok(Some(IntegerSolution { particular, kernel: integer_kernel_from(&s, a.cols()) }))
}

/// Hermite-reduced basis of the integer kernel of `a`.
pub fn integer_kernel(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    integer_kernel_from(&snf(a), a.cols())
}

fn integer_kernel_from(s: &SnfResult, n: usize) -> Vec<Vec<BigInt>> {
    let r = s.rank();
    if r == n {
        return Vec::new();
    }
    let raw: Vec<Vec<BigInt>> = (r..n).map(|j| s.v.column(j)).collect();
    let (h, _) = hnf(&IntMatrix::from_rows(raw).expect("kernel vectors share a length"));
    h.to_rows().into_iter().filter(|row| row.iter().any(|x| !x.is_zero())).collect()
}

/// Homogeneous solutions `{v : A v ≡ 0 mod Z^m}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolutionSpace {
    /// Discrete: a full-rank lattice containing Z^n.
    Lattice(Lattice),
    /// Contains whole real lines along `free_directions`; not a lattice.
    NonDiscrete { free_directions: Vec<RatVector> },
}

impl SolutionSpace {
    pub fn is_discrete(&self) -> bool {
        matches!(self, SolutionSpace::Lattice(_))
    }

    pub fn lattice(&self) -> Option<&Lattice> {
        match self {
            SolutionSpace::Lattice(l) => Some(l),
            SolutionSpace::NonDiscrete { .. } => None,
        }
    }
}

/// Solution of `A v ≡ b (mod Z^m)` for rational `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceSolution {
    pub solvable: bool,
    pub particular: Option<RatVector>,
    pub homogeneous: SolutionSpace,
}

/// Reusable solver for congruences with a fixed integer matrix: the Smith
/// form is computed once and every right-hand side costs one product.
#[derive(Clone, Debug)]
pub struct CongruenceSolver {
    snf: SnfResult,
    rank: usize,
    rows: usize,
    cols: usize,
    v_rat: RatMatrix,
    homogeneous: SolutionSpace,
}

impl CongruenceSolver {
    pub fn new(a: &IntMatrix) -> Self {
        let s = snf(a);
        let rank = s.rank();
        let n = a.cols();
        let v_rat = RatMatrix::from(&s.v);
        let diag = s.diagonal();
        let scaled: Vec<RatVector> = (0..n)
            .map(|j| {
                let col = RatVector::from_integers(&s.v.column(j));
                if j < rank {
                    col.scale(&BigRational::from_integer(diag[j].clone()).recip())
                } else {
                    col
                }
            })
            .collect();
        let homogeneous = if rank == n {
            SolutionSpace::Lattice(
                Lattice::from_rational_columns(n, &scaled).expect("scaled unimodular basis is nonsingular"),
            )
        } else {
            SolutionSpace::NonDiscrete { free_directions: scaled[rank..].to_vec() }
        };
        Self { snf: s, rank, rows: a.rows(), cols: n, v_rat, homogeneous }
    }

    pub fn homogeneous(&self) -> &SolutionSpace {
        &self.homogeneous
    }

    /// Particular solution of `A v ≡ b`, or `None` when unsolvable.
    pub fn particular(&self, b: &RatVector) -> Option<RatVector> {
        assert_eq!(b.dim(), self.rows, "right-hand side dimension mismatch");
        let c = self.snf.u.mul_rat_vec(b);
        let mut w = vec![BigRational::zero(); self.cols];
        for (i, ci) in c.entries().iter().enumerate() {
            if i < self.rank {
                w[i] = ci / BigRational::from_integer(self.snf.d[(i, i)].clone());
            } else if !ci.is_integer() {
                return None;
            }
        }
        Some(self.v_rat.mul_vec(&RatVector::new(w)))
    }

    pub fn solve(&self, b: &RatVector) -> CongruenceSolution {
        let particular = self.particular(b);
        CongruenceSolution {
            solvable: particular.is_some(),
            particular,
            homogeneous: self.homogeneous.clone(),
        }
    }
}

/// Solves `A v ≡ b (mod Z^m)` for rational `v`.
pub fn solve_congruence(a: &IntMatrix, b: &RatVector) -> Result<CongruenceSolution, ExactError> {
    if b.dim() != a.rows() {
        return Err(ExactError::ShapeMismatch {
            expected: format!("right-hand side of length {}", a.rows()),
            found: format!("length {}", b.dim()),
        });
    }
    Ok(CongruenceSolver::new(a).solve(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn integer_solve_examples() {
        let s = solve_integer(&IntMatrix::identity(2), &ints(&[3, 5])).unwrap().unwrap();
        assert_eq!(s.particular, ints(&[3, 5]));
        assert!(s.kernel.is_empty());

        let two = IntMatrix::from_i64(&[[2, 0], [0, 2]]);
        assert_eq!(solve_integer(&two, &ints(&[1, 0])).unwrap(), None);

        let s = solve_integer(&IntMatrix::from_i64(&[[1, 1]]), &ints(&[2])).unwrap().unwrap();
        assert_eq!(s.particular, ints(&[2, 0]));
        assert_eq!(s.kernel, vec![ints(&[1, -1])]);
    }

    #[test]
    fn integer_solve_shape_error_is_distinct() {
        assert!(solve_integer(&IntMatrix::identity(2), &ints(&[1])).is_err());
    }

    #[test]
    fn congruence_examples() {
        let two = IntMatrix::from_i64(&[[2, 0], [0, 2]]);
        let s = solve_congruence(&two, &RatVector::from_fractions(&[(1, 2), (0, 1)])).unwrap();
        assert!(s.solvable);
        assert_eq!(s.particular.unwrap(), RatVector::from_fractions(&[(1, 4), (0, 1)]));
        assert_eq!(s.homogeneous, SolutionSpace::Lattice(Lattice::scaled_standard(2, 2)));

        let zero = IntMatrix::zeros(2, 2);
        let s = solve_congruence(&zero, &RatVector::from_fractions(&[(3, 1), (-1, 1)])).unwrap();
        assert!(s.solvable);
        assert!(s.particular.unwrap().is_zero());
        assert!(!s.homogeneous.is_discrete());

        let zero = IntMatrix::zeros(1, 1);
        let s = solve_congruence(&zero, &RatVector::from_fractions(&[(1, 3)])).unwrap();
        assert!(!s.solvable);
        assert!(s.particular.is_none());
    }
}
