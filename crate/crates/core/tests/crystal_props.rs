use cryst_core::builtin;
use cryst_core::exact::{solve_congruence, IntMatrix, Lattice, RatVector};
use cryst_core::matgroup::{FinMatGroup, DEFAULT_MAX_ORDER};
use cryst_core::normalizer::{normalizer, normalizer_bruteforce, NormalizerConfig, NormalizerError};
use cryst_core::{affine_normalizer, analyze, aut_is_crystallographic_check, CrystError, CrystGroup};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_subgroup(rng: &mut impl Rng, g: &FinMatGroup) -> FinMatGroup {
    let k = rng.random_range(1..=2);
    let gens: Vec<IntMatrix> = (0..k).map(|_| g.elements().choose(rng).unwrap().clone()).collect();
    FinMatGroup::closure(g.dim(), &gens, DEFAULT_MAX_ORDER).unwrap()
}

fn random_fraction(rng: &mut impl Rng) -> (i64, i64) {
    let q = *[1i64, 2, 3, 4, 6].choose(rng).unwrap();
    (rng.random_range(0..q), q)
}

/// A random vector system on `h`: random rational translations on the
/// generators when they happen to be consistent, else a coboundary.
fn random_cryst(rng: &mut impl Rng, h: &FinMatGroup) -> CrystGroup {
    let n = h.dim();
    for _ in 0..4 {
        let gens: Vec<(IntMatrix, RatVector)> = h
            .generators()
            .iter()
            .map(|g| (g.clone(), RatVector::from_fractions(&(0..n).map(|_| random_fraction(rng)).collect::<Vec<_>>())))
            .collect();
        if let Ok(c) = CrystGroup::new(n, &gens, DEFAULT_MAX_ORDER) {
            return c;
        }
    }
    let w = RatVector::from_fractions(&(0..n).map(|_| random_fraction(rng)).collect::<Vec<_>>());
    let gens: Vec<(IntMatrix, RatVector)> =
        h.generators().iter().map(|g| (g.clone(), &w - &g.mul_rat_vec(&w))).collect();
    CrystGroup::new(n, &gens, DEFAULT_MAX_ORDER).unwrap()
}

/// Number of elements of `A0 / Z^n` killed by `d`, found by scanning the
/// grid `(1/|G|) Z^n / Z^n`, which contains `A0 / Z^n` because `|G|`
/// annihilates `H^1(G, Z^n)`.
fn h1_torsion_counts(gamma: &CrystGroup) -> Vec<(u64, u64)> {
    let n = gamma.dim();
    let m = gamma.point_group().order() as i64;
    let mut fixed = Vec::new();
    let total = (m as usize).pow(n as u32);
    for idx in 0..total {
        let mut rest = idx;
        let coords: Vec<i64> = (0..n)
            .map(|_| {
                let k = (rest % m as usize) as i64;
                rest /= m as usize;
                k
            })
            .collect();
        let v = RatVector::from_fractions(&coords.iter().map(|&k| (k, m)).collect::<Vec<_>>());
        if gamma.point_group().generators().iter().all(|g| (&g.mul_rat_vec(&v) - &v).is_integral()) {
            fixed.push(coords);
        }
    }
    (1..=m as u64)
        .filter(|d| (m as u64).is_multiple_of(*d))
        .map(|d| {
            let killed = fixed.iter().filter(|c| c.iter().all(|&k| (k * d as i64) % m == 0)).count();
            (d, killed as u64)
        })
        .collect()
}

fn predicted_counts(invariants: &[BigInt], m: u64) -> Vec<(u64, u64)> {
    let inv: Vec<u64> = invariants.iter().map(|x| x.to_u64().unwrap()).collect();
    (1..=m).filter(|d| m.is_multiple_of(*d)).map(|d| (d, inv.iter().map(|a| a.gcd(&d)).product())).collect()
}

#[test]
fn h1_of_minus_identity_by_enumeration() {
    let g = CrystGroup::new(2, &[(-&IntMatrix::identity(2), RatVector::zeros(2))], 10).unwrap();
    let inv = g.h1_invariants().unwrap();
    assert_eq!(inv, vec![BigInt::from(2), BigInt::from(2)]);
    assert_eq!(predicted_counts(&inv, 2), h1_torsion_counts(&g));
}

#[test]
fn h1_matches_enumeration_on_small_groups() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut checked = 0;
    for _ in 0..60 {
        let h = random_subgroup(&mut rng, &builtin::d12());
        let gamma = random_cryst(&mut rng, &h);
        if !gamma.center_trivial() {
            assert_eq!(gamma.h1_invariants(), Err(CrystError::NotCenterless));
            continue;
        }
        let inv = gamma.h1_invariants().unwrap();
        assert_eq!(predicted_counts(&inv, h.order() as u64), h1_torsion_counts(&gamma));
        checked += 1;
    }
    assert!(checked > 10);
}

/// `X` lifts to `A(Γ)` iff some `v` makes `(X, v)` conjugate every element
/// of `Γ` (not just the generators) back into `Γ`.
fn lifts_by_definition(gamma: &CrystGroup, x: &IntMatrix) -> bool {
    let n = gamma.dim();
    let x_inv = x.inverse().unwrap();
    let mut blocks = Vec::new();
    let mut rhs = Vec::new();
    for (g, tg) in gamma.point_group().elements().iter().zip(gamma.translations()) {
        let h = &(x * g) * &x_inv;
        let Some(th) = gamma.translation(&h) else { return false };
        blocks.push(&IntMatrix::identity(n) - &h);
        rhs.extend((th - &x.mul_rat_vec(tg)).into_entries());
    }
    let a = IntMatrix::vstack(&blocks).unwrap();
    solve_congruence(&a, &RatVector::new(rhs)).unwrap().solvable
}

fn check_affine_normalizer(gamma: &CrystGroup, config: &NormalizerConfig) -> bool {
    let norm = match normalizer(gamma.point_group(), config) {
        Ok(r) if r.status.is_finite() => r,
        Ok(_) | Err(NormalizerError::ScalarGroup(_)) => return false,
        Err(e) => panic!("{e}"),
    };
    let analysis = analyze(gamma, config).unwrap();
    let aff = &analysis.affine;
    // n_alpha is exactly the set of normalizer elements passing the full test
    let full: Vec<&IntMatrix> =
        norm.group.as_ref().unwrap().elements().iter().filter(|x| lifts_by_definition(gamma, x)).collect();
    assert_eq!(full.len(), aff.n_alpha.order());
    assert!(full.iter().all(|x| aff.n_alpha.contains(x)));
    assert!(gamma.point_group().is_subgroup_of(&aff.n_alpha));
    // Γ ⊆ A(Γ): each element of Γ appears with its own translation modulo A0
    for (g, tg) in gamma.point_group().elements().iter().zip(gamma.translations()) {
        let (_, v) = aff.unrebased.elements.iter().find(|(x, _)| x == g).unwrap();
        assert!(aff.a0.contains(&(v - tg)), "g={g} tg={tg} v={v} a0={:?} gens={:?}", aff.a0, gamma.affine_generators().iter().map(|(a,b)| format!("{a} {b}")).collect::<Vec<_>>());
    }
    // the identity lifts exactly by the elements of A0
    let (_, v_id) = aff.unrebased.elements.iter().find(|(x, _)| x.is_identity()).unwrap();
    assert!(aff.a0.contains(v_id));
    assert!(aff.a0.contains_lattice(&Lattice::standard(gamma.dim())));
    assert!(aff.group.satisfies_cocycle_condition());
    assert_eq!(aff.group.point_group().order(), aff.n_alpha.order());
    assert!(analysis.report.exact_sequence_holds());
    assert!(aut_is_crystallographic_check(gamma, &norm).unwrap());
    true
}

#[test]
fn affine_normalizer_on_random_groups() {
    let config = NormalizerConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0;
    for parent in [builtin::d12(), builtin::g2()] {
        for _ in 0..25 {
            let h = random_subgroup(&mut rng, &parent);
            let gamma = random_cryst(&mut rng, &h);
            if gamma.center_trivial() && check_affine_normalizer(&gamma, &config) {
                checked += 1;
            }
        }
    }
    assert!(checked >= 10, "only {checked} usable random groups");
}

#[test]
fn affine_normalizer_on_paper_groups() {
    let config = NormalizerConfig::default();
    for gamma in [builtin::gamma1(), builtin::gamma2(), builtin::product(2, 0)] {
        assert!(check_affine_normalizer(&gamma, &config));
    }
}

#[test]
fn block_swap_lifts_for_gamma1_squared() {
    let gamma = builtin::product(2, 0);
    let norm = normalizer(gamma.point_group(), &NormalizerConfig::default()).unwrap();
    let aff = affine_normalizer(&gamma, &norm).unwrap();
    assert_eq!(aff.n_alpha.order(), 2 * gamma.point_group().order());
    let swap = IntMatrix::from_i64(&[[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]);
    assert!(aff.n_alpha.contains(&swap));
    assert!(aff.a0.is_standard());
    assert!(!aff.is_fixpoint(&gamma));
}

#[test]
fn brute_force_agrees_on_planar_subgroups() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..20 {
        let h = random_subgroup(&mut rng, &builtin::d12());
        let config = NormalizerConfig::default();
        let Ok(form) = normalizer(&h, &config) else { continue };
        if form.status != cryst_core::NormalizerStatus::Certified {
            continue;
        }
        let brute = normalizer_bruteforce(&h, 3, DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(form.group, brute.group, "subgroup of order {}", h.order());
    }
}

/// A subgroup with a finite normalizer forces a finite normalizer upstairs.
#[test]
fn finite_normalizer_passes_to_supergroups() {
    let config = NormalizerConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for parent in [builtin::d12(), builtin::g2()] {
        for _ in 0..10 {
            let h = random_subgroup(&mut rng, &parent);
            let Ok(nh) = normalizer(&h, &config) else { continue };
            if nh.status == cryst_core::NormalizerStatus::Certified {
                assert!(normalizer(&parent, &config).unwrap().status.is_finite());
            }
        }
    }
}
