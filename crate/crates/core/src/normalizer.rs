//! Normalizers `N_GL(n,Z)(G)` of finite integral matrix groups.
//!
//! Two backends are available. The form-based backend reduces the search to
//! isometries between `G`-invariant positive definite forms: a normalizer
//! element `X` maps the primitive average form `Q0` to `X^T Q0 X`, which is
//! again invariant with the same determinant. When the invariant forms are
//! one-dimensional that image is `Q0` itself and the answer is certified.
//! The brute-force backend enumerates bounded unimodular matrices and serves
//! as an independent oracle in low dimension.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::exact::IntMatrix;
use crate::forms::{average_form, invariant_form_space, FormError, IsometrySearch, SymForm};
use crate::matgroup::{FinMatGroup, GroupError, DEFAULT_MAX_ORDER};

/// Largest number of candidate matrices the brute-force backend will scan.
pub const BRUTE_FORCE_LIMIT: u128 = 1_000_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NormalizerError {
    #[error("group consists of scalar matrices in dimension {0}; its normalizer is all of GL(n,Z)")]
    ScalarGroup(usize),
    #[error("brute-force search over {candidates} matrices exceeds the limit of {BRUTE_FORCE_LIMIT}")]
    SearchTooLarge { candidates: u128 },
    #[error("brute-force normalizer is not contained in the form-based result")]
    BackendDisagreement,
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NormalizerStatus {
    /// Provably the full normalizer.
    Certified,
    /// Complete within the recorded search bound.
    HeuristicComplete,
    /// The elements found generate a group above the order cap.
    InfiniteOrCapExceeded,
}

impl NormalizerStatus {
    pub fn is_finite(self) -> bool {
        self != NormalizerStatus::InfiniteOrCapExceeded
    }

    pub fn as_str(self) -> &'static str {
        match self {
            NormalizerStatus::Certified => "certified",
            NormalizerStatus::HeuristicComplete => "heuristic-complete",
            NormalizerStatus::InfiniteOrCapExceeded => "infinite-or-cap-exceeded",
        }
    }
}

impl fmt::Display for NormalizerStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Backend {
    Form,
    Brute,
    /// Form-based result, cross-checked against brute force.
    Both,
}

impl Backend {
    pub fn as_str(self) -> &'static str {
        match self {
            Backend::Form => "form",
            Backend::Brute => "brute",
            Backend::Both => "both",
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Backend {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "form" => Ok(Backend::Form),
            "brute" => Ok(Backend::Brute),
            "both" => Ok(Backend::Both),
            other => Err(format!("unknown backend `{other}` (expected form, brute or both)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizerConfig {
    pub backend: Backend,
    /// Entry bound for the brute-force backend.
    pub entry_bound: u32,
    pub max_order: usize,
    /// Candidate target forms have diagonal entries at most this multiple
    /// of the largest diagonal entry of the average form.
    pub diag_bound_factor: BigRational,
}

impl Default for NormalizerConfig {
    fn default() -> Self {
        Self {
            backend: Backend::Form,
            entry_bound: 3,
            max_order: DEFAULT_MAX_ORDER,
            diag_bound_factor: BigRational::from_integer(BigInt::from(4)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizerResult {
    /// The normalizer, when the search produced a finite group.
    pub group: Option<FinMatGroup>,
    pub status: NormalizerStatus,
    pub backend: Backend,
    /// Brute force: the entry bound; form-based: the diagonal bound on target forms.
    pub search_bound_used: BigInt,
}

impl NormalizerResult {
    pub fn order(&self) -> Option<usize> {
        self.group.as_ref().map(FinMatGroup::order)
    }
}

fn is_scalar_group(group: &FinMatGroup) -> bool {
    let id = IntMatrix::identity(group.dim());
    let minus = -&id;
    group.elements().iter().all(|g| *g == id || *g == minus)
}

fn close_found(
    group: &FinMatGroup,
    found: Vec<IntMatrix>,
    max_order: usize,
) -> Result<Option<FinMatGroup>, NormalizerError> {
    let mut gens = group.generators().to_vec();
    gens.extend(found);
    match FinMatGroup::closure(group.dim(), &gens, max_order) {
        Ok(n) => {
            let tidy = n.generators_extending(group.generators());
            Ok(Some(FinMatGroup::from_elements(group.dim(), tidy, n.elements().to_vec())?))
        }
        Err(GroupError::OrderCapExceeded { .. }) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

/// Fraction-free determinant of a small square matrix.
fn det_small(m: &[i128], n: usize) -> i128 {
    let mut a = m.to_vec();
    let mut sign = 1;
    let mut prev = 1;
    for k in 0..n.saturating_sub(1) {
        if a[k * n + k] == 0 {
            match (k + 1..n).find(|&i| a[i * n + k] != 0) {
                Some(i) => {
                    for j in 0..n {
                        a.swap(k * n + j, i * n + j);
                    }
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i * n + j] = (a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j]) / prev;
            }
        }
        prev = a[k * n + k];
    }
    if n == 0 {
        1
    } else {
        sign * a[n * n - 1]
    }
}

/// Inverse of a unimodular matrix with determinant `det` via cofactors.
fn inverse_small(m: &[i128], n: usize, det: i128) -> Vec<i128> {
    let mut inv = vec![0; n * n];
    let mut minor = Vec::with_capacity((n - 1) * (n - 1));
    for i in 0..n {
        for j in 0..n {
            minor.clear();
            for r in (0..n).filter(|&r| r != i) {
                for c in (0..n).filter(|&c| c != j) {
                    minor.push(m[r * n + c]);
                }
            }
            let cof = if (i + j) % 2 == 0 { 1 } else { -1 } * det_small(&minor, n - 1);
            // adj(M)_{ji} = cofactor_{ij}; M^-1 = adj / det with det = ±1
            inv[j * n + i] = cof * det;
        }
    }
    inv
}

fn mul_small(a: &[i128], b: &[i128], n: usize) -> Vec<i128> {
    let mut out = vec![0; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += x * b[k * n + j];
            }
        }
    }
    out
}

fn to_small(m: &IntMatrix) -> Result<Vec<i128>, FormError> {
    m.entries().iter().map(|x| x.to_i128().ok_or(FormError::EntryOverflow)).collect()
}

/// Brute-force normalizer: every `X` with entries in `[-bound, bound]`,
/// `det X = ±1` and `X G X^-1 = G`, closed under multiplication.
pub fn normalizer_bruteforce(
    group: &FinMatGroup,
    entry_bound: u32,
    max_order: usize,
) -> Result<NormalizerResult, NormalizerError> {
    let n = group.dim();
    let width = 2 * entry_bound as u128 + 1;
    let candidates = width.checked_pow((n * n) as u32).unwrap_or(u128::MAX);
    if candidates > BRUTE_FORCE_LIMIT {
        return Err(NormalizerError::SearchTooLarge { candidates });
    }
    let members: HashSet<Vec<i128>> =
        group.elements().iter().map(to_small).collect::<Result<_, _>>()?;
    let gens: Vec<Vec<i128>> = group.generators().iter().map(to_small).collect::<Result<_, _>>()?;
    let b = entry_bound as i128;
    let mut x = vec![-b; n * n];
    let mut found = Vec::new();
    loop {
        let det = det_small(&x, n);
        if det == 1 || det == -1 {
            let inv = inverse_small(&x, n, det);
            let normalizes = gens.iter().all(|g| members.contains(&mul_small(&mul_small(&x, g, n), &inv, n)));
            if normalizes {
                let data = x.iter().map(|&v| BigInt::from(v)).collect();
                found.push(IntMatrix::new(n, n, data).expect("n x n entries"));
            }
        }
        // odometer step
        let mut pos = 0;
        loop {
            if pos == x.len() {
                return finish_brute(group, found, entry_bound, max_order);
            }
            if x[pos] < b {
                x[pos] += 1;
                break;
            }
            x[pos] = -b;
            pos += 1;
        }
    }
}

fn finish_brute(
    group: &FinMatGroup,
    found: Vec<IntMatrix>,
    entry_bound: u32,
    max_order: usize,
) -> Result<NormalizerResult, NormalizerError> {
    let closed = close_found(group, found, max_order)?;
    let status = if closed.is_some() {
        NormalizerStatus::HeuristicComplete
    } else {
        NormalizerStatus::InfiniteOrCapExceeded
    };
    Ok(NormalizerResult {
        group: closed,
        status,
        backend: Backend::Brute,
        search_bound_used: BigInt::from(entry_bound),
    })
}

/// Positive definite members of the invariant-form lattice with diagonal
/// entries at most `bound` and determinant `det`.
///
/// `basis` is in Hermite form over [`crate::forms::sym_positions`]
/// coordinates, so the coordinate of each basis form is pinned by the
/// entry at its pivot position and the scan is a bounded triangular search.
pub fn candidate_forms(basis: &[SymForm], bound: &BigInt, det: &BigInt) -> Vec<SymForm> {
    let Some(first) = basis.first() else { return Vec::new() };
    let n = first.dim();
    let coords: Vec<Vec<BigInt>> = basis.iter().map(SymForm::coordinates).collect();
    let pivots: Vec<usize> = coords
        .iter()
        .map(|c| c.iter().position(|x| !x.is_zero()).expect("basis forms are nonzero"))
        .collect();
    let mut out = Vec::new();
    let mut partial = vec![BigInt::zero(); coords[0].len()];
    scan_forms(&coords, &pivots, n, bound, det, 0, &mut partial, &mut out);
    out
}

fn entry_range(position: usize, n: usize, bound: &BigInt) -> (BigInt, BigInt) {
    if position < n {
        (BigInt::one(), bound.clone())
    } else {
        (-bound, bound.clone())
    }
}

#[allow(clippy::too_many_arguments)]
fn scan_forms(
    coords: &[Vec<BigInt>],
    pivots: &[usize],
    n: usize,
    bound: &BigInt,
    det: &BigInt,
    level: usize,
    partial: &mut Vec<BigInt>,
    out: &mut Vec<SymForm>,
) {
    if level == coords.len() {
        let in_box = partial.iter().enumerate().all(|(p, v)| {
            let (lo, hi) = entry_range(p, n, bound);
            *v >= lo && *v <= hi
        });
        if !in_box {
            return;
        }
        let form = SymForm::from_coordinates(n, partial);
        if form.is_positive_definite() && form.det() == *det {
            out.push(form);
        }
        return;
    }
    let p = pivots[level];
    let piv = &coords[level][p];
    debug_assert!(piv.is_positive());
    let (lo, hi) = entry_range(p, n, bound);
    let cmin = (&lo - &partial[p]).div_ceil(piv);
    let cmax = (&hi - &partial[p]).div_floor(piv);
    let mut c = cmin;
    while c <= cmax {
        for (acc, b) in partial.iter_mut().zip(&coords[level]) {
            *acc += &c * b;
        }
        scan_forms(coords, pivots, n, bound, det, level + 1, partial, out);
        for (acc, b) in partial.iter_mut().zip(&coords[level]) {
            *acc -= &c * b;
        }
        c += 1;
    }
}

/// Form-based normalizer.
pub fn normalizer_formbased(
    group: &FinMatGroup,
    diag_bound_factor: &BigRational,
    max_order: usize,
) -> Result<NormalizerResult, NormalizerError> {
    let n = group.dim();
    if n >= 2 && is_scalar_group(group) {
        return Err(NormalizerError::ScalarGroup(n));
    }
    let space = invariant_form_space(group);
    let q0 = average_form(group).primitive();
    if space.len() == 1 {
        let search = IsometrySearch::new(&q0, &q0.max_diagonal())?;
        let elements: Vec<IntMatrix> =
            search.isometries_to(&q0)?.into_iter().filter(|x| group.normalizes(x)).collect();
        let normalizer = FinMatGroup::from_closed_set(n, elements, group.generators())?;
        return Ok(NormalizerResult {
            group: Some(normalizer),
            status: NormalizerStatus::Certified,
            backend: Backend::Form,
            search_bound_used: q0.max_diagonal(),
        });
    }
    let bound = (diag_bound_factor * BigRational::from_integer(q0.max_diagonal())).floor().to_integer();
    let targets = candidate_forms(&space, &bound, &q0.det());
    let search = IsometrySearch::new(&q0, &bound)?;
    let mut found = Vec::new();
    for target in &targets {
        found.extend(search.isometries_to(target)?.into_iter().filter(|x| group.normalizes(x)));
    }
    let closed = close_found(group, found, max_order)?;
    let status = if closed.is_some() {
        NormalizerStatus::HeuristicComplete
    } else {
        NormalizerStatus::InfiniteOrCapExceeded
    };
    Ok(NormalizerResult { group: closed, status, backend: Backend::Form, search_bound_used: bound })
}

/// Backend dispatch. With [`Backend::Both`] the form-based result is
/// returned after checking that it contains the brute-force result.
pub fn normalizer(group: &FinMatGroup, config: &NormalizerConfig) -> Result<NormalizerResult, NormalizerError> {
    match config.backend {
        Backend::Form => normalizer_formbased(group, &config.diag_bound_factor, config.max_order),
        Backend::Brute => {
            let n = group.dim();
            if n >= 2 && is_scalar_group(group) {
                return Err(NormalizerError::ScalarGroup(n));
            }
            normalizer_bruteforce(group, config.entry_bound, config.max_order)
        }
        Backend::Both => {
            let form = normalizer_formbased(group, &config.diag_bound_factor, config.max_order)?;
            let brute = normalizer_bruteforce(group, config.entry_bound, config.max_order)?;
            match (&form.group, &brute.group) {
                (Some(f), Some(b)) if !b.is_subgroup_of(f) => return Err(NormalizerError::BackendDisagreement),
                (None, Some(_)) | (Some(_), None) if form.status == NormalizerStatus::Certified => {
                    return Err(NormalizerError::BackendDisagreement)
                }
                _ => {}
            }
            Ok(NormalizerResult { backend: Backend::Both, ..form })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;

    fn pm_identity(n: usize) -> FinMatGroup {
        FinMatGroup::closure(n, &[-&IntMatrix::identity(n)], 10).unwrap()
    }

    #[test]
    fn brute_force_examples() {
        let r = normalizer_bruteforce(&pm_identity(1), 3, DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(r.order(), Some(2));
        let r = normalizer_bruteforce(&builtin::d12(), 3, DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(r.group.as_ref(), Some(&builtin::d12()));
        assert_eq!(r.status, NormalizerStatus::HeuristicComplete);
        let r = normalizer_bruteforce(&pm_identity(2), 2, 2000).unwrap();
        assert_eq!(r.status, NormalizerStatus::InfiniteOrCapExceeded);
        assert!(r.group.is_none());
    }

    #[test]
    fn brute_force_refuses_huge_searches() {
        let g = builtin::product(2, 0).point_group().clone();
        assert!(matches!(
            normalizer_bruteforce(&g, 3, DEFAULT_MAX_ORDER),
            Err(NormalizerError::SearchTooLarge { .. })
        ));
    }

    #[test]
    fn form_based_examples() {
        let four = BigRational::from_integer(BigInt::from(4));
        let r = normalizer_formbased(&builtin::d12(), &four, DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(r.status, NormalizerStatus::Certified);
        assert_eq!(r.group.as_ref(), Some(&builtin::d12()));
        let r = normalizer_formbased(&builtin::g2(), &four, DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(r.status, NormalizerStatus::Certified);
        assert_eq!(r.order(), Some(48));
    }

    #[test]
    fn dispatch_rejects_scalar_groups() {
        let cfg = NormalizerConfig::default();
        assert_eq!(normalizer(&pm_identity(2), &cfg), Err(NormalizerError::ScalarGroup(2)));
        assert_eq!(normalizer(&FinMatGroup::trivial(3), &cfg), Err(NormalizerError::ScalarGroup(3)));
        let r = normalizer(&FinMatGroup::trivial(1), &cfg).unwrap();
        assert_eq!(r.order(), Some(2));
    }

    #[test]
    fn both_backends_on_dihedral_group() {
        let cfg = NormalizerConfig { backend: Backend::Both, ..NormalizerConfig::default() };
        let r = normalizer(&builtin::d12(), &cfg).unwrap();
        assert_eq!(r.backend, Backend::Both);
        assert_eq!(r.order(), Some(12));
    }
}
