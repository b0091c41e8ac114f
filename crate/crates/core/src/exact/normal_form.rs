//! Hermite and Smith normal forms over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// Result of [`snf`]: `u * a * v == d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    /// Diagonal entries `d_1 | d_2 | ...`, including trailing zeros.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d[(i, i)].clone()).collect()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|x| !x.is_zero()).count()
    }
}

fn extended_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Row Hermite normal form: returns `(h, u)` with `u * a == h`, `u` unimodular,
/// `h` upper echelon with positive pivots and the entries above each pivot
/// reduced into `[0, pivot)`.
pub fn hnf(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (m, n) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        for i in r + 1..m {
            if h[(i, c)].is_zero() {
                continue;
            }
            let (g, x, y) = extended_gcd(&h[(r, c)], &h[(i, c)]);
            let p = -(&h[(i, c)] / &g);
            let q = &h[(r, c)] / &g;
            h.combine_rows(r, i, [&x, &y, &p, &q]);
            u.combine_rows(r, i, [&x, &y, &p, &q]);
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        for i in 0..r {
            let q = h[(i, c)].div_floor(&h[(r, c)]);
            if !q.is_zero() {
                let k = -q;
                h.add_row_multiple(i, r, &k);
                u.add_row_multiple(i, r, &k);
            }
        }
        r += 1;
    }
    (h, u)
}

/// Position of the nonzero entry of smallest absolute value in the trailing
/// submatrix starting at `(t, t)`; ties go to the lowest `(row, col)`.
fn min_pivot(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let e = &d[(i, j)];
            if e.is_zero() {
                continue;
            }
            let a = e.abs();
            if best.as_ref().is_none_or(|(_, b)| a < *b) {
                best = Some(((i, j), a));
            }
        }
    }
    best.map(|(p, _)| p)
}

/// Smith normal form `u * a * v == d`.
pub fn snf(a: &IntMatrix) -> SnfResult {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    for t in 0..m.min(n) {
        let Some((pi, pj)) = min_pivot(&d, t) else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let mut remainder = false;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -(&d[(i, t)] / &d[(t, t)]);
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                remainder |= !d[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -(&d[(t, j)] / &d[(t, t)]);
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                remainder |= !d[(t, j)].is_zero();
            }
            if !remainder {
                // Row and column are clear; enforce divisibility on the rest.
                let bad = (t + 1..m).find(|&i| {
                    (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&d[(t, t)]))
                });
                match bad {
                    Some(i) => {
                        let one = BigInt::one();
                        d.add_row_multiple(t, i, &one);
                        u.add_row_multiple(t, i, &one);
                    }
                    None => break,
                }
            }
            // Re-pivot on the smallest remaining entry.
            let (pi, pj) = min_pivot(&d, t).expect("nonzero pivot survives reduction");
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SnfResult { d, u, v }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag_i64(r: &SnfResult) -> Vec<i64> {
        r.diagonal().iter().map(|x| i64::try_from(x).unwrap()).collect()
    }

    #[test]
    fn hnf_examples() {
        let (h, u) = hnf(&IntMatrix::identity(2));
        assert!(h.is_identity() && u.is_identity());

        let a = IntMatrix::from_i64(&[[2, 6], [4, 8]]);
        let (h, u) = hnf(&a);
        assert_eq!(h, IntMatrix::from_i64(&[[2, 2], [0, 4]]));
        assert_eq!(&u * &a, h);
        assert!(u.is_unimodular());

        let (h, _) = hnf(&IntMatrix::zeros(2, 2));
        assert!(h.is_zero());
    }

    #[test]
    fn hnf_handles_zero_leading_entries() {
        let a = IntMatrix::from_i64(&[[0, 3, 1], [0, 0, 2], [0, 6, 0]]);
        let (h, u) = hnf(&a);
        assert_eq!(&u * &a, h);
        assert_eq!(h.column(0), vec![BigInt::zero(); 3]);
        assert!(h[(0, 1)].is_positive());
        assert!(h[(2, 1)].is_zero() && h[(2, 2)].is_zero());
    }

    #[test]
    fn snf_examples() {
        assert_eq!(diag_i64(&snf(&IntMatrix::identity(3))), vec![1, 1, 1]);
        let r = snf(&IntMatrix::from_i64(&[[2, 4], [6, 8]]));
        assert_eq!(diag_i64(&r), vec![2, 4]);
        let r = snf(&IntMatrix::from_i64(&[[2, 0], [0, 3]]));
        assert_eq!(diag_i64(&r), vec![1, 6]);
    }

    #[test]
    fn snf_rectangular_and_zero() {
        let a = IntMatrix::from_i64(&[[1, 1]]);
        let r = snf(&a);
        assert_eq!(&(&r.u * &a) * &r.v, r.d);
        assert_eq!(r.rank(), 1);
        let z = snf(&IntMatrix::zeros(3, 2));
        assert!(z.d.is_zero());
        assert_eq!(z.rank(), 0);
    }
}
