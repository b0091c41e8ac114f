//! Invariant symmetric forms, short vectors and integral isometries.
//!
//! Forms are integer symmetric matrices. Positive definiteness is decided
//! by leading principal minors. Short vectors come from a Fincke–Pohst
//! enumeration over an exact rational completion of squares, and isometries
//! from a column-by-column backtracking search in the style of
//! Plesken–Souvignier.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::exact::{integer_kernel, IntMatrix};
use crate::matgroup::FinMatGroup;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormError {
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("form is not positive definite")]
    NotPositiveDefinite,
    #[error("form dimensions differ ({0} vs {1})")]
    DimensionMismatch(usize, usize),
    #[error("vector entries exceed the range of the enumeration kernel")]
    EntryOverflow,
}

/// Integer symmetric bilinear form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymForm {
    matrix: IntMatrix,
    positive_definite: bool,
}

/// Positions `(i, j)`, `i <= j`, of the independent entries of an `n x n`
/// symmetric matrix: the diagonal first, then the upper triangle row by row.
pub fn sym_positions(n: usize) -> Vec<(usize, usize)> {
    let mut out: Vec<_> = (0..n).map(|i| (i, i)).collect();
    for i in 0..n {
        for j in i + 1..n {
            out.push((i, j));
        }
    }
    out
}

impl SymForm {
    pub fn new(matrix: IntMatrix) -> Result<Self, FormError> {
        if !matrix.is_symmetric() {
            return Err(FormError::NotSymmetric);
        }
        let positive_definite = leading_minors_positive(&matrix);
        Ok(Self { matrix, positive_definite })
    }

    pub fn from_i64<const C: usize>(rows: &[[i64; C]]) -> Result<Self, FormError> {
        Self::new(IntMatrix::from_i64(rows))
    }

    /// Inverse of [`Self::coordinates`].
    pub fn from_coordinates(n: usize, coords: &[BigInt]) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for (&(i, j), c) in sym_positions(n).iter().zip(coords) {
            m[(i, j)] = c.clone();
            m[(j, i)] = c.clone();
        }
        Self::new(m).expect("symmetric by construction")
    }

    /// Independent entries in [`sym_positions`] order.
    pub fn coordinates(&self) -> Vec<BigInt> {
        sym_positions(self.dim()).into_iter().map(|(i, j)| self.matrix[(i, j)].clone()).collect()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn is_positive_definite(&self) -> bool {
        self.positive_definite
    }

    pub fn det(&self) -> BigInt {
        self.matrix.det()
    }

    pub fn max_diagonal(&self) -> BigInt {
        (0..self.dim()).map(|i| self.matrix[(i, i)].clone()).max().unwrap_or_else(BigInt::zero)
    }

    /// `v^T Q v`
    pub fn norm(&self, v: &[BigInt]) -> BigInt {
        let qv = self.matrix.mul_vec(v);
        v.iter().zip(&qv).map(|(a, b)| a * b).sum()
    }

    /// `X^T Q X`
    pub fn transform(&self, x: &IntMatrix) -> SymForm {
        SymForm::new(&(&x.transpose() * &self.matrix) * x).expect("congruent forms stay symmetric")
    }

    pub fn is_invariant_under(&self, g: &IntMatrix) -> bool {
        self.transform(g).matrix == self.matrix
    }

    /// The form divided by the gcd of its entries.
    pub fn primitive(&self) -> SymForm {
        let c = self.matrix.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        let m = IntMatrix::new(
            self.dim(),
            self.dim(),
            self.matrix.entries().iter().map(|x| x / &c).collect(),
        )
        .expect("shape preserved");
        SymForm::new(m).expect("symmetric")
    }
}

fn leading_minors_positive(m: &IntMatrix) -> bool {
    let n = m.rows();
    (1..=n).all(|k| {
        let sub = IntMatrix::new(
            k,
            k,
            (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).map(|(i, j)| m[(i, j)].clone()).collect(),
        )
        .expect("square leading block");
        sub.det().is_positive()
    })
}

/// Integral basis of the lattice of `G`-invariant symmetric forms
/// `{F : g^T F g = F for all generators g}`, saturated in `Sym_n(Z)` and in
/// Hermite form with respect to [`sym_positions`] coordinates.
pub fn invariant_form_space(group: &FinMatGroup) -> Vec<SymForm> {
    let n = group.dim();
    let positions = sym_positions(n);
    let unknowns = positions.len();
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for g in group.generators() {
        for &(a, b) in &positions {
            // (g^T F g - F)_{ab} = sum_{k,l} g_{ka} F_{kl} g_{lb} - F_{ab}
            let mut row = vec![BigInt::zero(); unknowns];
            for (col, &(k, l)) in positions.iter().enumerate() {
                let mut c = &g[(k, a)] * &g[(l, b)];
                if k != l {
                    c += &g[(l, a)] * &g[(k, b)];
                }
                if (k, l) == (a, b) {
                    c -= BigInt::one();
                }
                row[col] = c;
            }
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return (0..unknowns)
            .map(|c| {
                let mut coords = vec![BigInt::zero(); unknowns];
                coords[c] = BigInt::one();
                SymForm::from_coordinates(n, &coords)
            })
            .collect();
    }
    let system = IntMatrix::from_rows(rows).expect("rows share a length");
    integer_kernel(&system).into_iter().map(|coords| SymForm::from_coordinates(n, &coords)).collect()
}

/// `sum_{g in G} g^T g`, a positive definite `G`-invariant form.
pub fn average_form(group: &FinMatGroup) -> SymForm {
    let n = group.dim();
    let sum = group
        .elements()
        .iter()
        .fold(IntMatrix::zeros(n, n), |acc, g| &acc + &(&g.transpose() * g));
    SymForm::new(sum).expect("sum of Gram matrices is symmetric")
}

/// Exact completion of squares `Q(x) = sum_i q_i (x_i + sum_{j>i} mu_ij x_j)^2`.
struct Completion {
    q: Vec<BigRational>,
    mu: Vec<Vec<BigRational>>,
}

impl Completion {
    fn new(form: &SymForm) -> Self {
        let n = form.dim();
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| (0..n).map(|j| BigRational::from_integer(form.matrix[(i, j)].clone())).collect())
            .collect();
        let mut q = Vec::with_capacity(n);
        let mut mu = vec![vec![BigRational::zero(); n]; n];
        for i in 0..n {
            let qi = a[i][i].clone();
            for j in i + 1..n {
                mu[i][j] = &a[i][j] / &qi;
            }
            for k in i + 1..n {
                for l in k..n {
                    let d = &qi * &mu[i][k] * &mu[i][l];
                    a[k][l] -= &d;
                    if k != l {
                        a[l][k] -= d;
                    }
                }
            }
            q.push(qi);
        }
        Self { q, mu }
    }
}

/// All nonzero `v` with `v^T Q v <= bound`, both signs, with their norms.
fn enumerate_signed(form: &SymForm, bound: &BigInt) -> Result<Vec<(Vec<BigInt>, BigInt)>, FormError> {
    if !form.is_positive_definite() {
        return Err(FormError::NotPositiveDefinite);
    }
    let n = form.dim();
    let mut out: Vec<Vec<BigInt>> = Vec::new();
    if n == 0 || bound.is_negative() {
        return Ok(Vec::new());
    }
    let comp = Completion::new(form);
    let mut x = vec![BigInt::zero(); n];
    recurse(&comp, n, BigRational::from_integer(bound.clone()), &mut x, &mut out);
    out.retain(|v| v.iter().any(|c| !c.is_zero()));
    Ok(out
        .into_iter()
        .map(|v| {
            let nrm = form.norm(&v);
            (v, nrm)
        })
        .collect())
}

fn recurse(
    comp: &Completion,
    level: usize,
    budget: BigRational,
    x: &mut Vec<BigInt>,
    out: &mut Vec<Vec<BigInt>>,
) {
    if level == 0 {
        out.push(x.clone());
        return;
    }
    let i = level - 1;
    let n = x.len();
    let mut center = BigRational::zero();
    for j in i + 1..n {
        if !x[j].is_zero() {
            center -= &comp.mu[i][j] * BigRational::from_integer(x[j].clone());
        }
    }
    let qi = &comp.q[i];
    // Float bounds only delimit the scan; membership is decided exactly.
    let c = center.to_f64().unwrap_or(0.0);
    let r = (budget.to_f64().unwrap_or(0.0) / qi.to_f64().unwrap_or(1.0)).max(0.0).sqrt();
    let lo = (c - r).floor() as i64 - 2;
    let hi = (c + r).ceil() as i64 + 2;
    for xi in lo..=hi {
        let xi_big = BigInt::from(xi);
        let diff = BigRational::from_integer(xi_big.clone()) - &center;
        let used = qi * &diff * &diff;
        if used > budget {
            continue;
        }
        x[i] = xi_big;
        recurse(comp, i, &budget - used, x, out);
    }
    x[i] = BigInt::zero();
}

fn canonical_sign(v: &[BigInt]) -> bool {
    v.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_positive())
}

/// All nonzero integer `v` with `v^T Q v <= bound`, one per `±` pair (first
/// nonzero coordinate positive), sorted.
pub fn short_vectors(form: &SymForm, bound: &BigInt) -> Result<Vec<Vec<BigInt>>, FormError> {
    let mut v: Vec<Vec<BigInt>> =
        enumerate_signed(form, bound)?.into_iter().map(|(v, _)| v).filter(|v| canonical_sign(v)).collect();
    v.sort();
    Ok(v)
}

fn to_i128(x: &BigInt) -> Result<i128, FormError> {
    x.to_i128().ok_or(FormError::EntryOverflow)
}

/// Enumerates isometries out of a fixed source form, caching its short
/// vectors across target forms.
pub struct IsometrySearch {
    source: SymForm,
    bound: BigInt,
    vectors: Vec<Vec<i128>>,
    images: Vec<Vec<i128>>,
    norms: Vec<i128>,
}

impl IsometrySearch {
    /// Prepares a search for targets whose diagonal entries are at most `max_norm`.
    pub fn new(source: &SymForm, max_norm: &BigInt) -> Result<Self, FormError> {
        let found = enumerate_signed(source, max_norm)?;
        let mut vectors = Vec::with_capacity(found.len());
        let mut images = Vec::with_capacity(found.len());
        let mut norms = Vec::with_capacity(found.len());
        for (v, nrm) in found {
            let qv = source.matrix.mul_vec(&v);
            vectors.push(v.iter().map(to_i128).collect::<Result<Vec<_>, _>>()?);
            images.push(qv.iter().map(to_i128).collect::<Result<Vec<_>, _>>()?);
            norms.push(to_i128(&nrm)?);
        }
        Ok(Self { source: source.clone(), bound: max_norm.clone(), vectors, images, norms })
    }

    /// All integer `X` with `X^T Q_source X = target`, sorted.
    pub fn isometries_to(&self, target: &SymForm) -> Result<Vec<IntMatrix>, FormError> {
        let n = self.source.dim();
        if target.dim() != n {
            return Err(FormError::DimensionMismatch(n, target.dim()));
        }
        if !target.is_positive_definite() {
            return Err(FormError::NotPositiveDefinite);
        }
        if target.det() != self.source.det() {
            return Ok(Vec::new());
        }
        assert!(target.max_diagonal() <= self.bound, "target diagonal exceeds the prepared norm bound");
        let t: Vec<Vec<i128>> = (0..n)
            .map(|i| (0..n).map(|j| to_i128(&target.matrix[(i, j)])).collect::<Result<_, _>>())
            .collect::<Result<_, _>>()?;
        let candidates: Vec<Vec<usize>> = (0..n)
            .map(|i| (0..self.vectors.len()).filter(|&k| self.norms[k] == t[i][i]).collect())
            .collect();
        if candidates.iter().any(Vec::is_empty) {
            return Ok(Vec::new());
        }
        let mut chosen = Vec::with_capacity(n);
        let mut found = Vec::new();
        self.backtrack(&t, &candidates, &mut chosen, &mut found);
        let mut out: Vec<IntMatrix> = found
            .into_iter()
            .map(|cols| {
                let mut m = IntMatrix::zeros(n, n);
                for (j, &k) in cols.iter().enumerate() {
                    for i in 0..n {
                        m[(i, j)] = BigInt::from(self.vectors[k][i]);
                    }
                }
                m
            })
            .collect();
        out.sort();
        Ok(out)
    }

    fn backtrack(
        &self,
        target: &[Vec<i128>],
        candidates: &[Vec<usize>],
        chosen: &mut Vec<usize>,
        found: &mut Vec<Vec<usize>>,
    ) {
        let level = chosen.len();
        if level == candidates.len() {
            found.push(chosen.clone());
            return;
        }
        for &k in &candidates[level] {
            let v = &self.vectors[k];
            let fits = chosen.iter().enumerate().all(|(j, &c)| {
                let ip: i128 = self.images[c].iter().zip(v).map(|(a, b)| a * b).sum();
                ip == target[j][level]
            });
            if fits {
                chosen.push(k);
                self.backtrack(target, candidates, chosen, found);
                chosen.pop();
            }
        }
    }
}

/// All integer `X` with `X^T Q1 X = Q2`. Empty when the determinants differ;
/// for `Q1 == Q2` this is the (finite) automorphism group of the form.
pub fn isometries(q1: &SymForm, q2: &SymForm) -> Result<Vec<IntMatrix>, FormError> {
    if q1.dim() != q2.dim() {
        return Err(FormError::DimensionMismatch(q1.dim(), q2.dim()));
    }
    if !q1.is_positive_definite() || !q2.is_positive_definite() {
        return Err(FormError::NotPositiveDefinite);
    }
    if q1.det() != q2.det() {
        return Ok(Vec::new());
    }
    IsometrySearch::new(q1, &q2.max_diagonal())?.isometries_to(q2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn positive_definiteness() {
        assert!(SymForm::from_i64(&[[2, 1], [1, 2]]).unwrap().is_positive_definite());
        assert!(!SymForm::from_i64(&[[1, 2], [2, 1]]).unwrap().is_positive_definite());
        assert!(!SymForm::from_i64(&[[0, 0], [0, 1]]).unwrap().is_positive_definite());
        assert_eq!(SymForm::from_i64(&[[1, 2], [0, 1]]), Err(FormError::NotSymmetric));
    }

    #[test]
    fn form_space_examples() {
        assert_eq!(invariant_form_space(&FinMatGroup::trivial(2)).len(), 3);
        let basis = invariant_form_space(&builtin::d12());
        assert_eq!(basis.len(), 1);
        let g = builtin::d12();
        assert!(g.elements().iter().all(|x| basis[0].is_invariant_under(x)));
    }

    #[test]
    fn average_form_examples() {
        assert_eq!(average_form(&FinMatGroup::trivial(2)).matrix(), &IntMatrix::identity(2));
        let pm = FinMatGroup::closure(2, &[-&IntMatrix::identity(2)], 10).unwrap();
        assert_eq!(average_form(&pm).matrix(), &IntMatrix::identity(2).scale(&big(2)));
        let avg = average_form(&builtin::d12()).primitive();
        assert_eq!(avg.det(), big(3));
        assert!(avg.is_positive_definite());
    }

    #[test]
    fn short_vector_examples() {
        let id = SymForm::new(IntMatrix::identity(2)).unwrap();
        assert_eq!(short_vectors(&id, &big(1)).unwrap().len(), 2);
        assert_eq!(short_vectors(&id, &big(2)).unwrap().len(), 4);
        let hex = SymForm::from_i64(&[[2, 1], [1, 2]]).unwrap();
        assert_eq!(short_vectors(&hex, &big(2)).unwrap().len(), 3);
        let indef = SymForm::from_i64(&[[1, 2], [2, 1]]).unwrap();
        assert_eq!(short_vectors(&indef, &big(2)), Err(FormError::NotPositiveDefinite));
    }

    #[test]
    fn isometry_examples() {
        let id = SymForm::new(IntMatrix::identity(2)).unwrap();
        assert_eq!(isometries(&id, &id).unwrap().len(), 8);
        let two = SymForm::new(IntMatrix::identity(2).scale(&big(2))).unwrap();
        assert!(isometries(&id, &two).unwrap().is_empty());
        let hex = SymForm::from_i64(&[[2, 1], [1, 2]]).unwrap();
        let auts = isometries(&hex, &hex).unwrap();
        assert_eq!(auts.len(), 12);
        assert!(auts.iter().all(|x| hex.transform(x) == hex));
    }
}
