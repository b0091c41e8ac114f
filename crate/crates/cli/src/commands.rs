//! Subcommand implementations, separated from argument parsing so tests can
//! drive them directly.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context, Result};
use cryst_core::builtin;
use cryst_core::{
    analyze, construct_complete_group, decompose_dimension, iterate_fixpoint, normalizer, CrystError, CrystGroup,
    FixpointRun, IntMatrix, NormalizerConfig, RatVector,
};
use num_bigint::BigInt;
use serde::Serialize;

use crate::files::{Decomposition, GroupFile, IterationRecord, ReportRecord};

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const VERIFY_FAILED: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const MAX_ITER: u8 = 3;
}

/// Parses `gamma1`, `gamma2`, products such as `gamma1^2*gamma2`, or
/// returns `None` for anything else.
pub fn builtin_group(name: &str) -> Option<CrystGroup> {
    let mut group = CrystGroup::trivial(0);
    for factor in name.split('*') {
        let (base, power) = match factor.trim().split_once('^') {
            Some((b, p)) => (b.trim(), p.trim().parse::<usize>().ok()?),
            None => (factor.trim(), 1),
        };
        let g = match base {
            "gamma1" => builtin::gamma1(),
            "gamma2" => builtin::gamma2(),
            _ => return None,
        };
        for _ in 0..power {
            group = group.direct_product(&g);
        }
    }
    (group.dim() > 0).then_some(group)
}

/// A built-in name or the path of a group file.
pub fn load_group(spec: &str, max_order: usize) -> Result<CrystGroup> {
    if let Some(g) = builtin_group(spec) {
        return Ok(g);
    }
    let path = Path::new(spec);
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("`{spec}` is neither a built-in group nor a readable file"))?;
    let file = GroupFile::parse(&text).with_context(|| format!("parsing {}", path.display()))?;
    file.to_group(max_order).with_context(|| format!("building the group in {}", path.display()))
}

pub fn analyze_group(group: &CrystGroup, config: &NormalizerConfig) -> Result<ReportRecord> {
    if !group.center_trivial() {
        bail!(CrystError::NotCenterless);
    }
    let a = analyze(group, config)?;
    Ok(ReportRecord::new(&a.report))
}

pub fn render_report(r: &ReportRecord) -> String {
    let mut s = String::new();
    let h1 = if r.h1_invariants.is_empty() { "0".to_string() } else { r.h1_invariants.join(" x ") };
    let _ = writeln!(s, "dimension            {}", r.dimension);
    let _ = writeln!(s, "point group order    {}", r.point_group_order);
    let _ = writeln!(s, "center trivial       {}", r.center_trivial);
    let _ = writeln!(s, "H^1                  {h1}");
    let _ = writeln!(
        s,
        "normalizer order     {} ({}, backend {}, bound {})",
        r.normalizer_order, r.normalizer_status, r.normalizer_backend, r.normalizer_search_bound
    );
    let _ = writeln!(s, "N_alpha order        {}", r.n_alpha_order);
    let _ = writeln!(s, "|Out|                {}", r.out_order);
    let _ = writeln!(s, "A(G) = G             {}", r.fixpoint);
    s
}

/// Result of `iterate` or `construct`; `exit_code` is 3 when the budget ran out.
pub struct IterationOutcome {
    pub record: IterationRecord,
    pub exit_code: u8,
}

fn iteration_record(run: Result<FixpointRun, CrystError>) -> Result<IterationOutcome> {
    match run {
        Ok(run) => Ok(IterationOutcome {
            record: IterationRecord {
                requested_dimension: None,
                decomposition: None,
                converged: true,
                steps: Some(run.steps),
                history: run.history.iter().map(ReportRecord::new).collect(),
                group: Some(GroupFile::from_group(&run.group)),
            },
            exit_code: exit::OK,
        }),
        Err(CrystError::MaxIterExceeded { history, .. }) => Ok(IterationOutcome {
            record: IterationRecord {
                requested_dimension: None,
                decomposition: None,
                converged: false,
                steps: None,
                history: history.iter().map(ReportRecord::new).collect(),
                group: None,
            },
            exit_code: exit::MAX_ITER,
        }),
        Err(e) => Err(e.into()),
    }
}

pub fn iterate_group(group: &CrystGroup, max_iter: usize, config: &NormalizerConfig) -> Result<IterationOutcome> {
    if !group.center_trivial() {
        bail!(CrystError::NotCenterless);
    }
    iteration_record(iterate_fixpoint(group, max_iter, config))
}

pub fn construct(n: usize, max_iter: usize, config: &NormalizerConfig) -> Result<IterationOutcome> {
    let (k, i) = decompose_dimension(n)?;
    let mut out = iteration_record(construct_complete_group(n, max_iter, config))?;
    out.record.requested_dimension = Some(n);
    out.record.decomposition = Some(Decomposition { k, i });
    Ok(out)
}

pub fn render_iteration(r: &IterationRecord) -> String {
    let mut s = String::new();
    if let (Some(n), Some(d)) = (r.requested_dimension, r.decomposition) {
        let _ = writeln!(s, "dimension {n} = 2*{} + 3*{}", d.k, d.i);
    }
    for (step, h) in r.history.iter().enumerate() {
        let _ = writeln!(
            s,
            "step {step}: |G| = {}, H^1 order {}, |N| = {} ({}), |N_alpha| = {}, |Out| = {}, fixpoint {}",
            h.point_group_order,
            h.h1_order,
            h.normalizer_order,
            h.normalizer_status,
            h.n_alpha_order,
            h.out_order,
            h.fixpoint
        );
    }
    match r.steps {
        Some(n) => {
            let _ = writeln!(s, "fixed point reached after {n} step(s)");
        }
        None => {
            let _ = writeln!(s, "no fixed point within the iteration budget");
        }
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }
}

fn check(checks: &mut Vec<Check>, name: &str, expected: impl ToString, actual: Result<String>) {
    let expected = expected.to_string();
    let (actual, passed) = match actual {
        Ok(a) => {
            let passed = a == expected;
            (a, passed)
        }
        Err(e) => (format!("error: {e:#}"), false),
    };
    checks.push(Check { name: name.into(), expected, actual, passed });
}

/// `gamma1` with the reflection generator dropped; used to exercise the
/// failure path of `verify-examples`.
fn corrupted_gamma1() -> CrystGroup {
    let gens: Vec<(IntMatrix, RatVector)> =
        builtin::d12_generators().into_iter().take(2).map(|g| (g, RatVector::zeros(2))).collect();
    CrystGroup::new(2, &gens, cryst_core::DEFAULT_MAX_ORDER).expect("cyclic subgroup")
}

/// The example suite for the two building blocks and the first products.
pub fn verify_examples(config: &NormalizerConfig, corrupt: bool) -> VerifyReport {
    let mut checks = Vec::new();
    let gamma1 = if corrupt { corrupted_gamma1() } else { builtin::gamma1() };
    for (label, gamma, order) in [("gamma1", gamma1, 12usize), ("gamma2", builtin::gamma2(), 48)] {
        let g = gamma.point_group().clone();
        check(&mut checks, &format!("{label}: point group order"), order, Ok(g.order().to_string()));
        check(&mut checks, &format!("{label}: center trivial"), true, Ok(gamma.center_trivial().to_string()));
        let norm = normalizer(&g, config);
        check(
            &mut checks,
            &format!("{label}: normalizer equals point group"),
            "certified, equal",
            norm.as_ref().map_err(|e| anyhow::anyhow!("{e}")).map(|n| {
                let equal = n.group.as_ref() == Some(&g);
                format!("{}, {}", n.status, if equal { "equal" } else { "different" })
            }),
        );
        check(
            &mut checks,
            &format!("{label}: H^1 trivial"),
            "[]",
            gamma.h1_invariants().map(|v| format!("{v:?}")).map_err(Into::into),
        );
        let analysis = analyze(&gamma, config);
        check(
            &mut checks,
            &format!("{label}: |Out| = 1"),
            1,
            analysis.as_ref().map(|a| a.report.out_order.to_string()).map_err(|e| anyhow::anyhow!("{e}")),
        );
        check(
            &mut checks,
            &format!("{label}: A(G) = G"),
            true,
            analysis.as_ref().map(|a| (a.affine.group == gamma).to_string()).map_err(|e| anyhow::anyhow!("{e}")),
        );
    }
    for (name, expected) in [("gamma1^2", 2u32), ("gamma1*gamma2", 1)] {
        let gamma = builtin_group(name).expect("built-in product");
        check(
            &mut checks,
            &format!("{name}: |Out| = {expected}"),
            BigInt::from(expected),
            analyze(&gamma, config).map(|a| a.report.out_order.to_string()).map_err(Into::into),
        );
    }
    VerifyReport { passed: checks.iter().all(|c| c.passed), checks }
}

pub fn render_verify(r: &VerifyReport) -> String {
    let width = r.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    let mut s = String::new();
    for c in &r.checks {
        let mark = if c.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(s, "{mark}  {:width$}  expected {}, got {}", c.name, c.expected, c.actual);
    }
    let _ = writeln!(s, "{}", if r.passed { "all checks passed" } else { "some checks failed" });
    s
}
