use cryst_core::builtin;
use cryst_core::{analyze, iterate_fixpoint, NormalizerConfig, NormalizerStatus};
use num_bigint::BigInt;

#[test]
fn gamma1_squared_reaches_fixpoint_after_one_step() {
    let cfg = NormalizerConfig::default();
    let g = builtin::product(2, 0);
    let a = analyze(&g, &cfg).unwrap();
    assert_eq!(a.report.normalizer_order, 288);
    assert_eq!(a.report.normalizer_status, NormalizerStatus::HeuristicComplete);
    assert_eq!(a.report.out_order, BigInt::from(2));
    assert!(!a.report.fixpoint);
    let run = iterate_fixpoint(&g, 10, &cfg).unwrap();
    assert_eq!(run.steps, 1);
    assert_eq!(run.group.point_group().order(), 288);
    let last = run.history.last().unwrap();
    assert_eq!(last.out_order, BigInt::from(1));
    assert!(last.fixpoint);
}

#[test]
fn gamma1_times_gamma2_is_already_complete() {
    let cfg = NormalizerConfig::default();
    let g = builtin::product(1, 1);
    let a = analyze(&g, &cfg).unwrap();
    assert_eq!(a.report.out_order, BigInt::from(1));
    assert!(a.report.fixpoint);
}

#[test]
fn gamma1_cubed_has_outer_automorphisms_of_order_six() {
    let cfg = NormalizerConfig::default();
    let a = analyze(&builtin::product(3, 0), &cfg).unwrap();
    assert_eq!(a.report.normalizer_order, 10368);
    assert_eq!(a.report.out_order, BigInt::from(6));
}

#[test]
fn construction_in_low_dimensions() {
    let cfg = NormalizerConfig::default();
    for n in 2..=7 {
        let run = cryst_core::construct_complete_group(n, 10, &cfg).unwrap();
        let last = run.history.last().unwrap();
        eprintln!("n={n} steps={} order={} status={}", run.steps, last.point_group_order, last.normalizer_status);
        assert!(last.fixpoint);
        assert_eq!(last.out_order, BigInt::from(1));
        assert_eq!(run.group.dim(), n);
    }
}
