//! Crystallographic groups as point group plus vector system.
//!
//! A group `Γ` with translation lattice `Z^n` is stored as its point group
//! `G ⊂ GL(n,Z)` and one translation `t_g ∈ [0,1)^n` per element, the
//! canonical representative of its class modulo `Z^n`. For centerless `Γ`
//! the affine normalizer `A(Γ)` is again crystallographic: its translations
//! form the lattice `A0 = {m : (g - I) m ∈ Z^n for all g}` and its linear
//! parts form the subgroup `N_α` of the `GL(n,Z)`-normalizer of `G` whose
//! elements admit a translation solving the membership congruence. Counting
//! cosets then gives `|Out(Γ)| = |A0 / Z^n| · |N_α| / |G|`.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact::{
    lattice_quotient_invariants, snf, CongruenceSolver, ExactError, IntMatrix, Lattice, RatMatrix, RatVector,
    SolutionSpace,
};
use crate::matgroup::{FinMatGroup, GroupError};
use crate::normalizer::{normalizer, Backend, NormalizerConfig, NormalizerError, NormalizerResult, NormalizerStatus};

/// Default iteration budget for [`iterate_fixpoint`].
pub const DEFAULT_MAX_ITER: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CrystError {
    #[error("inconsistent vector system: {0}")]
    InconsistentVectorSystem(String),
    #[error("translation of generator {index} has dimension {found}, expected {expected}")]
    BadTranslation { index: usize, expected: usize, found: usize },
    #[error("the point group fixes a nonzero vector, so the group has a nontrivial center")]
    NotCenterless,
    #[error("normalizer of the point group is not known to be finite (status {0})")]
    NormalizerNotFinite(NormalizerStatus),
    #[error("rebasing onto the translation lattice produced a non-integral point group")]
    NonIntegralRebase,
    #[error("no fixed point within {max_iter} iterations")]
    MaxIterExceeded { max_iter: usize, history: Vec<AnalysisReport> },
    #[error("construction needs dimension at least 2, got {0}")]
    DimensionTooSmall(usize),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Normalizer(#[from] NormalizerError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Crystallographic group with translation lattice `Z^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrystGroup {
    point_group: FinMatGroup,
    /// `translations[i]` belongs to `point_group.elements()[i]`.
    translations: Vec<RatVector>,
}

impl CrystGroup {
    /// Builds the group generated by `Z^n` and the affine maps
    /// `x ↦ g x + t`, propagating translations to every point-group element.
    pub fn new(dim: usize, generators: &[(IntMatrix, RatVector)], max_order: usize) -> Result<Self, CrystError> {
        for (index, (_, t)) in generators.iter().enumerate() {
            if t.dim() != dim {
                return Err(CrystError::BadTranslation { index, expected: dim, found: t.dim() });
            }
        }
        let linear: Vec<IntMatrix> = generators.iter().map(|(g, _)| g.clone()).collect();
        let point_group = FinMatGroup::closure(dim, &linear, max_order)?;
        let gens: Vec<(IntMatrix, RatVector)> =
            generators.iter().map(|(g, t)| (g.clone(), t.reduce_mod_one())).collect();
        let translations = propagate(&point_group, &gens)?;
        Ok(Self { point_group, translations })
    }

    /// Assembles a group from a point group and one translation per element
    /// (in element order), checking the cocycle condition.
    pub fn from_parts(point_group: FinMatGroup, translations: Vec<RatVector>) -> Result<Self, CrystError> {
        if translations.len() != point_group.order() {
            return Err(CrystError::InconsistentVectorSystem(format!(
                "{} translations for {} elements",
                translations.len(),
                point_group.order()
            )));
        }
        let translations: Vec<RatVector> = translations.iter().map(RatVector::reduce_mod_one).collect();
        let g = Self { point_group, translations };
        g.check_cocycle_on_generators()?;
        Ok(g)
    }

    /// The split group `G ⋉ Z^n`.
    pub fn split(point_group: FinMatGroup) -> Self {
        let translations = vec![RatVector::zeros(point_group.dim()); point_group.order()];
        Self { point_group, translations }
    }

    /// `Z^n` itself (trivial point group).
    pub fn trivial(dim: usize) -> Self {
        Self::split(FinMatGroup::trivial(dim))
    }

    pub fn dim(&self) -> usize {
        self.point_group.dim()
    }

    pub fn point_group(&self) -> &FinMatGroup {
        &self.point_group
    }

    pub fn translations(&self) -> &[RatVector] {
        &self.translations
    }

    /// Canonical translation of the element with linear part `g`.
    pub fn translation(&self, g: &IntMatrix) -> Option<&RatVector> {
        self.point_group.index_of(g).map(|i| &self.translations[i])
    }

    /// Point-group generators paired with their translations.
    pub fn affine_generators(&self) -> Vec<(IntMatrix, RatVector)> {
        self.point_group
            .generators()
            .iter()
            .map(|g| (g.clone(), self.translation(g).expect("generators are elements").clone()))
            .collect()
    }

    /// Canonical generating set (depends only on the group as a set).
    pub fn canonical_affine_generators(&self) -> Vec<(IntMatrix, RatVector)> {
        self.point_group
            .canonical_generators()
            .into_iter()
            .map(|g| {
                let t = self.translation(&g).expect("generators are elements").clone();
                (g, t)
            })
            .collect()
    }

    /// `t_{s h} ≡ t_s + s t_h` for generators `s` and all `h`; by induction
    /// on word length this is equivalent to the full cocycle condition.
    fn check_cocycle_on_generators(&self) -> Result<(), CrystError> {
        let id = IntMatrix::identity(self.dim());
        if !self.translation(&id).is_some_and(RatVector::is_zero) {
            return Err(CrystError::InconsistentVectorSystem("identity carries a translation".into()));
        }
        for s in self.point_group.generators() {
            let ts = self.translation(s).expect("generators are elements");
            for (h, th) in self.point_group.elements().iter().zip(&self.translations) {
                let sh = s * h;
                let expected = (ts + &s.mul_rat_vec(th)).reduce_mod_one();
                if self.translation(&sh) != Some(&expected) {
                    return Err(CrystError::InconsistentVectorSystem(format!(
                        "t(s h) != t(s) + s t(h) for s = {s}, h = {h}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Cocycle condition checked on every pair of elements.
    pub fn satisfies_cocycle_condition(&self) -> bool {
        let elems = self.point_group.elements();
        elems.iter().zip(&self.translations).all(|(g, tg)| {
            elems.iter().zip(&self.translations).all(|(h, th)| {
                let expected = (tg + &g.mul_rat_vec(th)).reduce_mod_one();
                self.translation(&(g * h)) == Some(&expected)
            })
        })
    }

    /// Direct product acting block-diagonally on `Q^{a+b}`.
    pub fn direct_product(&self, other: &CrystGroup) -> CrystGroup {
        let point_group = FinMatGroup::direct_product(&self.point_group, &other.point_group);
        let mut pairs = Vec::with_capacity(point_group.order());
        for (g, tg) in self.point_group.elements().iter().zip(&self.translations) {
            for (h, th) in other.point_group.elements().iter().zip(&other.translations) {
                pairs.push((IntMatrix::block_diag(g, h), tg.concat(th)));
            }
        }
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        let translations = pairs.into_iter().map(|(_, t)| t).collect();
        CrystGroup { point_group, translations }
    }

    fn stacked_fixed_point_system(&self) -> IntMatrix {
        let n = self.dim();
        let id = IntMatrix::identity(n);
        let blocks: Vec<IntMatrix> = self.point_group.generators().iter().map(|g| g - &id).collect();
        if blocks.is_empty() {
            return IntMatrix::zeros(0, n);
        }
        IntMatrix::vstack(&blocks).expect("generators share a dimension")
    }

    /// True iff `G` fixes no nonzero vector of `Q^n`.
    pub fn center_trivial(&self) -> bool {
        snf(&self.stacked_fixed_point_system()).rank() == self.dim()
    }

    /// `A0(Γ) = {m ∈ Q^n : g m - m ∈ Z^n for all g ∈ G}`.
    pub fn a0_lattice(&self) -> Result<Lattice, CrystError> {
        match CongruenceSolver::new(&self.stacked_fixed_point_system()).homogeneous() {
            SolutionSpace::Lattice(l) => Ok(l.clone()),
            SolutionSpace::NonDiscrete { .. } => Err(CrystError::NotCenterless),
        }
    }

    /// Invariants of `H^1(G, Z^n) ≅ A0(Γ) / Z^n`.
    pub fn h1_invariants(&self) -> Result<Vec<BigInt>, CrystError> {
        let a0 = self.a0_lattice()?;
        Ok(lattice_quotient_invariants(&a0, &Lattice::standard(self.dim()))?)
    }
}

fn propagate(point_group: &FinMatGroup, gens: &[(IntMatrix, RatVector)]) -> Result<Vec<RatVector>, CrystError> {
    let dim = point_group.dim();
    let mut t: Vec<Option<RatVector>> = vec![None; point_group.order()];
    let start = point_group.index_of(&IntMatrix::identity(dim)).expect("identity is an element");
    t[start] = Some(RatVector::zeros(dim));
    let mut queue = VecDeque::from([start]);
    while let Some(h) = queue.pop_front() {
        let th = t[h].clone().expect("queued elements carry translations");
        let hm = &point_group.elements()[h];
        for (s, ts) in gens {
            let e = point_group.index_of(&(s * hm)).expect("closure is closed");
            let value = (ts + &s.mul_rat_vec(&th)).reduce_mod_one();
            match &t[e] {
                None => {
                    t[e] = Some(value);
                    queue.push_back(e);
                }
                Some(existing) if *existing != value => {
                    return Err(CrystError::InconsistentVectorSystem(format!(
                        "element {} reached with translations {existing} and {value}",
                        point_group.elements()[e]
                    )));
                }
                Some(_) => {}
            }
        }
    }
    Ok(t.into_iter().map(|x| x.expect("every element is reachable")).collect())
}

/// Affine maps `(X, v)` over a lattice `L ⊇ Z^n`, prior to rebasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeExtension {
    pub lattice: Lattice,
    /// Point-group generators (a subset of the linear parts below).
    pub generators: Vec<IntMatrix>,
    pub elements: Vec<(IntMatrix, RatVector)>,
}

/// Rewrites an extension over `L` in coordinates of a basis `B` of `L`:
/// `X ↦ B^-1 X B`, `v ↦ B^-1 v`, so the translation lattice becomes `Z^n`.
pub fn rebase(ext: &LatticeExtension) -> Result<CrystGroup, CrystError> {
    let n = ext.lattice.dim();
    let (conj_elements, conj_gens): (Vec<(IntMatrix, RatVector)>, Vec<IntMatrix>) = if ext.lattice.is_standard() {
        (ext.elements.clone(), ext.generators.clone())
    } else {
        let b = ext.lattice.basis_matrix();
        let b_inv = b.inverse().expect("lattice basis is nonsingular");
        let conj = |x: &IntMatrix| -> Result<IntMatrix, CrystError> {
            b_inv.mul(&RatMatrix::from(x)).mul(&b).to_integer().ok_or(CrystError::NonIntegralRebase)
        };
        let elements = ext
            .elements
            .iter()
            .map(|(x, v)| Ok((conj(x)?, b_inv.mul_vec(v))))
            .collect::<Result<Vec<_>, CrystError>>()?;
        let gens = ext.generators.iter().map(conj).collect::<Result<Vec<_>, _>>()?;
        (elements, gens)
    };
    if conj_elements.iter().any(|(x, _)| !x.is_unimodular()) {
        return Err(CrystError::NonIntegralRebase);
    }
    let mut pairs = conj_elements;
    pairs.sort_by(|a, b| a.0.cmp(&b.0));
    let linear: Vec<IntMatrix> = pairs.iter().map(|(x, _)| x.clone()).collect();
    let point_group = FinMatGroup::from_closed_set(n, linear, &conj_gens)?;
    let translations = pairs.into_iter().map(|(_, v)| v).collect();
    CrystGroup::from_parts(point_group, translations)
}

/// The affine normalizer `A(Γ)` and its pieces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffNormalizerResult {
    /// `A(Γ)` rebased onto its own translation lattice.
    pub group: CrystGroup,
    /// Linear parts of `A(Γ)`, a subgroup of the normalizer containing `G`.
    pub n_alpha: FinMatGroup,
    /// Translation lattice `A0(Γ)` of `A(Γ)`.
    pub a0: Lattice,
    /// Basis of `A0(Γ)` used for the rebase (columns).
    pub rebase_matrix: RatMatrix,
    /// `A(Γ)` in the original coordinates, one translation per `N_α` element.
    pub unrebased: LatticeExtension,
}

impl AffNormalizerResult {
    /// `A(Γ) = Γ`: no new linear parts and no new translations.
    pub fn is_fixpoint(&self, gamma: &CrystGroup) -> bool {
        self.n_alpha == *gamma.point_group() && self.a0.is_standard()
    }
}

/// Decides which normalizer elements lift to `A(Γ)`. For a fixed `X` the
/// maps `(X, v)` in `A(Γ)` are the solutions of
/// `(h - I) v ≡ X t_{X^-1 h X} - t_h (mod Z^n)` over the generators `h` of
/// `G`; the coefficient matrix does not depend on `X`, so one Smith form
/// serves every candidate.
pub fn affine_normalizer(gamma: &CrystGroup, normalizer: &NormalizerResult) -> Result<AffNormalizerResult, CrystError> {
    if !gamma.center_trivial() {
        return Err(CrystError::NotCenterless);
    }
    let ngroup = match (&normalizer.group, normalizer.status.is_finite()) {
        (Some(g), true) => g,
        _ => return Err(CrystError::NormalizerNotFinite(normalizer.status)),
    };
    let n = gamma.dim();
    let g = gamma.point_group();
    let solver = CongruenceSolver::new(&gamma.stacked_fixed_point_system());
    let a0 = solver.homogeneous().lattice().ok_or(CrystError::NotCenterless)?.clone();
    let mut elements = Vec::new();
    for x in ngroup.elements() {
        if !g.normalizes(x) {
            continue;
        }
        let x_inv = x.inverse().expect("normalizer elements are unimodular");
        let mut rhs = Vec::with_capacity(n * g.generators().len());
        for h in g.generators() {
            let conj = &(&x_inv * h) * x;
            let th = gamma.translation(h).expect("generator is an element");
            let tc = gamma.translation(&conj).expect("X normalizes G");
            // the stacked system is (h - I) v, hence the sign
            rhs.extend((&x.mul_rat_vec(tc) - th).into_entries());
        }
        if let Some(v) = solver.particular(&RatVector::new(rhs)) {
            elements.push((x.clone(), v));
        }
    }
    let linear: Vec<IntMatrix> = elements.iter().map(|(x, _)| x.clone()).collect();
    let n_alpha = FinMatGroup::from_closed_set(n, linear, g.generators())?;
    let unrebased = LatticeExtension { lattice: a0.clone(), generators: n_alpha.generators().to_vec(), elements };
    let group = rebase(&unrebased)?;
    Ok(AffNormalizerResult { group, n_alpha, rebase_matrix: a0.basis_matrix(), a0, unrebased })
}

/// `|Out(Γ)| = |H^1(G, Z^n)| · |N_α| / |G|`.
pub fn out_order(gamma: &CrystGroup, normalizer: &NormalizerResult) -> Result<BigInt, CrystError> {
    let aff = affine_normalizer(gamma, normalizer)?;
    Ok(out_order_from(gamma, &aff)?)
}

fn out_order_from(gamma: &CrystGroup, aff: &AffNormalizerResult) -> Result<BigInt, ExactError> {
    let h1: BigInt = lattice_quotient_invariants(&aff.a0, &Lattice::standard(gamma.dim()))?.iter().product();
    let numer = h1 * BigInt::from(aff.n_alpha.order());
    let denom = BigInt::from(gamma.point_group().order());
    debug_assert!((&numer % &denom).is_zero(), "G is a subgroup of N_alpha");
    Ok(numer / denom)
}

/// Summary of one analysis of a centerless crystallographic group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisReport {
    pub dim: usize,
    pub point_group_order: usize,
    pub center_trivial: bool,
    pub h1_invariants: Vec<BigInt>,
    pub normalizer_order: usize,
    pub normalizer_status: NormalizerStatus,
    pub normalizer_backend: Backend,
    /// Entry bound (brute force) or diagonal bound on target forms.
    pub normalizer_search_bound: BigInt,
    pub n_alpha_order: usize,
    pub out_order: BigInt,
    pub out_trivial: bool,
    /// `A(Γ) = Γ`
    pub fixpoint: bool,
}

impl AnalysisReport {
    pub fn h1_order(&self) -> BigInt {
        self.h1_invariants.iter().product()
    }

    /// `|Out| · |G| = |H^1| · |N_α|`
    pub fn exact_sequence_holds(&self) -> bool {
        &self.out_order * BigInt::from(self.point_group_order)
            == self.h1_order() * BigInt::from(self.n_alpha_order)
    }
}

/// Everything computed while analysing one group.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub report: AnalysisReport,
    pub normalizer: NormalizerResult,
    pub affine: AffNormalizerResult,
}

/// Center, `H^1`, normalizer, affine normalizer and `|Out|` of `Γ`.
pub fn analyze(gamma: &CrystGroup, config: &NormalizerConfig) -> Result<Analysis, CrystError> {
    if !gamma.center_trivial() {
        return Err(CrystError::NotCenterless);
    }
    let norm = normalizer(gamma.point_group(), config)?;
    analyze_with(gamma, norm)
}

/// As [`analyze`], with a precomputed normalizer of the point group.
pub fn analyze_with(gamma: &CrystGroup, norm: NormalizerResult) -> Result<Analysis, CrystError> {
    let affine = affine_normalizer(gamma, &norm)?;
    let h1_invariants = lattice_quotient_invariants(&affine.a0, &Lattice::standard(gamma.dim()))?;
    let out = out_order_from(gamma, &affine)?;
    let report = AnalysisReport {
        dim: gamma.dim(),
        point_group_order: gamma.point_group().order(),
        center_trivial: true,
        h1_invariants,
        normalizer_order: norm.order().expect("finite normalizer"),
        normalizer_status: norm.status,
        normalizer_backend: norm.backend,
        normalizer_search_bound: norm.search_bound_used.clone(),
        n_alpha_order: affine.n_alpha.order(),
        out_trivial: out.is_one(),
        out_order: out,
        fixpoint: affine.is_fixpoint(gamma),
    };
    Ok(Analysis { report, normalizer: norm, affine })
}

/// Result of [`iterate_fixpoint`].
#[derive(Clone, Debug)]
pub struct FixpointRun {
    /// `Γ_N` with `A(Γ_N) = Γ_N`.
    pub group: CrystGroup,
    /// One report per analysed group, `Γ_0` through `Γ_N`.
    pub history: Vec<AnalysisReport>,
    /// Number of affine-normalizer steps taken (`N`).
    pub steps: usize,
}

/// Iterates `Γ ↦ A(Γ)` (rebased) until `A(Γ) = Γ`, taking at most
/// `max_iter` steps.
pub fn iterate_fixpoint(gamma: &CrystGroup, max_iter: usize, config: &NormalizerConfig) -> Result<FixpointRun, CrystError> {
    let mut current = gamma.clone();
    let mut history = Vec::new();
    for step in 0..=max_iter {
        let analysis = analyze(&current, config)?;
        let done = analysis.report.fixpoint;
        history.push(analysis.report);
        if done {
            return Ok(FixpointRun { group: current, history, steps: step });
        }
        current = analysis.affine.group;
    }
    Err(CrystError::MaxIterExceeded { max_iter, history })
}

/// Splits `n = 2k + 3i` with `i = n mod 2`.
pub fn decompose_dimension(n: usize) -> Result<(usize, usize), CrystError> {
    if n < 2 {
        return Err(CrystError::DimensionTooSmall(n));
    }
    let i = n % 2;
    Ok(((n - 3 * i) / 2, i))
}

/// A crystallographic group of dimension `n >= 2` with trivial center and
/// trivial outer automorphism group: the fixed point of the affine
/// normalizer iteration started at `gamma1^k x gamma2^i`.
pub fn construct_complete_group(n: usize, max_iter: usize, config: &NormalizerConfig) -> Result<FixpointRun, CrystError> {
    let (k, i) = decompose_dimension(n)?;
    iterate_fixpoint(&crate::builtin::product(k, i), max_iter, config)
}

/// Checks that `Out(Γ)` is finite exactly when `A(Γ)` is crystallographic
/// (finite linear parts, full-rank discrete translations).
pub fn aut_is_crystallographic_check(gamma: &CrystGroup, normalizer: &NormalizerResult) -> Result<bool, CrystError> {
    let aff = affine_normalizer(gamma, normalizer)?;
    let out_finite = out_order_from(gamma, &aff).is_ok();
    let standard = Lattice::standard(gamma.dim());
    let a_crystallographic = aff.a0.dim() == gamma.dim()
        && aff.a0.contains_lattice(&standard)
        && aff.group.point_group().order() == aff.n_alpha.order()
        && aff.group.dim() == gamma.dim();
    Ok(out_finite == a_crystallographic)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use crate::matgroup::DEFAULT_MAX_ORDER;

    fn minus_identity_group(t: RatVector) -> CrystGroup {
        CrystGroup::new(2, &[(-&IntMatrix::identity(2), t)], DEFAULT_MAX_ORDER).unwrap()
    }

    #[test]
    fn make_cryst_examples() {
        let g1 = builtin::gamma1();
        assert_eq!(g1.point_group().order(), 12);
        assert!(g1.translations().iter().all(RatVector::is_zero));
        assert_eq!(builtin::gamma2().point_group().order(), 48);
        let g = minus_identity_group(RatVector::from_fractions(&[(1, 2), (0, 1)]));
        assert_eq!(g.point_group().order(), 2);
        assert!(g.satisfies_cocycle_condition());
    }

    #[test]
    fn inconsistent_vector_system_is_rejected() {
        // two words for the identity with different translations
        let id = IntMatrix::identity(2);
        let r = CrystGroup::new(2, &[(id, RatVector::from_fractions(&[(1, 2), (0, 1)]))], 10);
        assert!(matches!(r, Err(CrystError::InconsistentVectorSystem(_))));
        // the same linear part given twice with different translations
        let m = -&IntMatrix::identity(2);
        let r = CrystGroup::new(
            2,
            &[(m.clone(), RatVector::zeros(2)), (m, RatVector::from_fractions(&[(1, 3), (0, 1)]))],
            10,
        );
        assert!(matches!(r, Err(CrystError::InconsistentVectorSystem(_))));
    }

    #[test]
    fn center_examples() {
        assert!(builtin::gamma1().center_trivial());
        assert!(!CrystGroup::trivial(2).center_trivial());
        assert!(minus_identity_group(RatVector::zeros(2)).center_trivial());
    }

    #[test]
    fn a0_and_h1_examples() {
        assert!(builtin::gamma1().a0_lattice().unwrap().is_standard());
        assert!(builtin::gamma2().a0_lattice().unwrap().is_standard());
        let pm = minus_identity_group(RatVector::zeros(2));
        assert_eq!(pm.a0_lattice().unwrap(), Lattice::scaled_standard(2, 2));
        assert_eq!(pm.h1_invariants().unwrap(), vec![BigInt::from(2), BigInt::from(2)]);
        assert!(builtin::gamma1().h1_invariants().unwrap().is_empty());
        assert_eq!(CrystGroup::trivial(2).a0_lattice(), Err(CrystError::NotCenterless));
    }

    #[test]
    fn direct_product_examples() {
        let g11 = builtin::gamma1().direct_product(&builtin::gamma1());
        assert_eq!((g11.dim(), g11.point_group().order()), (4, 144));
        let g12 = builtin::gamma1().direct_product(&builtin::gamma2());
        assert_eq!((g12.dim(), g12.point_group().order()), (5, 576));
        assert_eq!(builtin::gamma1().direct_product(&CrystGroup::trivial(0)), builtin::gamma1());
    }

    #[test]
    fn rebase_examples() {
        let g1 = builtin::gamma1();
        let ext = LatticeExtension {
            lattice: Lattice::standard(2),
            generators: g1.point_group().generators().to_vec(),
            elements: g1
                .point_group()
                .elements()
                .iter()
                .cloned()
                .zip(g1.translations().iter().cloned())
                .collect(),
        };
        assert_eq!(rebase(&ext).unwrap(), g1);

        let pm = minus_identity_group(RatVector::zeros(2));
        let ext = LatticeExtension {
            lattice: Lattice::scaled_standard(2, 2),
            generators: pm.point_group().generators().to_vec(),
            elements: pm.point_group().elements().iter().map(|x| (x.clone(), RatVector::zeros(2))).collect(),
        };
        let r = rebase(&ext).unwrap();
        assert_eq!(r.point_group(), pm.point_group());
    }

    #[test]
    fn rebase_rejects_non_invariant_lattice() {
        let swap = IntMatrix::from_i64(&[[0, 1], [1, 0]]);
        let lattice = Lattice::from_integer_basis(&IntMatrix::from_i64(&[[1, 0], [0, 2]]), BigInt::from(2)).unwrap();
        let ext = LatticeExtension {
            lattice,
            generators: vec![swap.clone()],
            elements: vec![(IntMatrix::identity(2), RatVector::zeros(2)), (swap, RatVector::zeros(2))],
        };
        assert_eq!(rebase(&ext), Err(CrystError::NonIntegralRebase));
    }

    #[test]
    fn paper_groups_are_fixed_points() {
        let cfg = NormalizerConfig::default();
        for g in [builtin::gamma1(), builtin::gamma2()] {
            let a = analyze(&g, &cfg).unwrap();
            assert!(a.report.fixpoint);
            assert_eq!(a.affine.group, g);
            assert_eq!(a.report.out_order, BigInt::one());
        }
    }

    #[test]
    fn decomposition() {
        assert_eq!(decompose_dimension(2).unwrap(), (1, 0));
        assert_eq!(decompose_dimension(3).unwrap(), (0, 1));
        assert_eq!(decompose_dimension(7).unwrap(), (2, 1));
        assert_eq!(decompose_dimension(1), Err(CrystError::DimensionTooSmall(1)));
    }
}
