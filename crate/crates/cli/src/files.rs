//! JSON group files and analysis reports.
//!
//! Integers in matrices are JSON numbers of any size; rationals are strings
//! such as `"1/2"`, `"-3/4"` or `"0"`. Orders in reports are decimal strings.

use std::str::FromStr;

use cryst_core::{AnalysisReport, CrystError, CrystGroup, IntMatrix, RatVector};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FileError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{field}: {message}")]
    Field { field: String, message: String },
    #[error(transparent)]
    Group(#[from] CrystError),
}

fn field_error(field: impl Into<String>, message: impl Into<String>) -> FileError {
    FileError::Field { field: field.into(), message: message.into() }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub dimension: usize,
    pub generators: Vec<GeneratorRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorRecord {
    pub linear: Vec<Vec<serde_json::Number>>,
    pub translation: Vec<String>,
}

pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        None => BigInt::from_str(s).ok().map(BigRational::from_integer),
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).ok()?;
            let q = BigInt::from_str(q.trim()).ok()?;
            (!q.is_zero()).then(|| BigRational::new(p, q))
        }
    }
}

pub fn format_rational(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn format_integer(x: &BigInt) -> serde_json::Number {
    serde_json::Number::from_str(&x.to_string()).expect("decimal integers are JSON numbers")
}

impl GroupFile {
    pub fn parse(text: &str) -> Result<Self, FileError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Canonical file for a group: generators chosen greedily from the
    /// sorted element list, translations reduced into `[0, 1)`.
    pub fn from_group(group: &CrystGroup) -> Self {
        let generators = group
            .canonical_affine_generators()
            .into_iter()
            .map(|(g, t)| GeneratorRecord {
                linear: g.to_rows().iter().map(|r| r.iter().map(format_integer).collect()).collect(),
                translation: t.entries().iter().map(format_rational).collect(),
            })
            .collect();
        Self { dimension: group.dim(), generators }
    }

    pub fn affine_generators(&self) -> Result<Vec<(IntMatrix, RatVector)>, FileError> {
        let n = self.dimension;
        let mut out = Vec::with_capacity(self.generators.len());
        for (i, gen) in self.generators.iter().enumerate() {
            let field = format!("generators[{i}]");
            if gen.linear.len() != n {
                return Err(field_error(format!("{field}.linear"), format!("expected {n} rows, found {}", gen.linear.len())));
            }
            let mut rows = Vec::with_capacity(n);
            for (r, row) in gen.linear.iter().enumerate() {
                if row.len() != n {
                    return Err(field_error(
                        format!("{field}.linear[{r}]"),
                        format!("expected {n} entries, found {}", row.len()),
                    ));
                }
                let parsed = row
                    .iter()
                    .enumerate()
                    .map(|(c, x)| {
                        BigInt::from_str(&x.to_string())
                            .map_err(|_| field_error(format!("{field}.linear[{r}][{c}]"), format!("`{x}` is not an integer")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                rows.push(parsed);
            }
            if gen.translation.len() != n {
                return Err(field_error(
                    format!("{field}.translation"),
                    format!("expected {n} entries, found {}", gen.translation.len()),
                ));
            }
            let t = gen
                .translation
                .iter()
                .enumerate()
                .map(|(c, s)| {
                    parse_rational(s)
                        .ok_or_else(|| field_error(format!("{field}.translation[{c}]"), format!("`{s}` is not a rational")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let m = if n == 0 { IntMatrix::zeros(0, 0) } else { IntMatrix::from_rows(rows).expect("rows checked") };
            out.push((m, RatVector::new(t)));
        }
        Ok(out)
    }

    pub fn to_group(&self, max_order: usize) -> Result<CrystGroup, FileError> {
        Ok(CrystGroup::new(self.dimension, &self.affine_generators()?, max_order)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("group files serialize")
    }
}

/// Machine-readable rendering of one analysis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub dimension: usize,
    pub point_group_order: String,
    pub center_trivial: bool,
    pub h1_invariants: Vec<String>,
    pub h1_order: String,
    pub normalizer_order: String,
    pub normalizer_status: String,
    pub normalizer_backend: String,
    pub normalizer_search_bound: String,
    pub n_alpha_order: String,
    pub out_order: String,
    pub out_trivial: bool,
    pub fixpoint: bool,
}

impl ReportRecord {
    pub fn new(report: &AnalysisReport) -> Self {
        Self {
            dimension: report.dim,
            point_group_order: report.point_group_order.to_string(),
            center_trivial: report.center_trivial,
            h1_invariants: report.h1_invariants.iter().map(BigInt::to_string).collect(),
            h1_order: report.h1_order().to_string(),
            normalizer_order: report.normalizer_order.to_string(),
            normalizer_status: report.normalizer_status.to_string(),
            normalizer_backend: report.normalizer_backend.to_string(),
            normalizer_search_bound: report.normalizer_search_bound.to_string(),
            n_alpha_order: report.n_alpha_order.to_string(),
            out_order: report.out_order.to_string(),
            out_trivial: report.out_trivial,
            fixpoint: report.fixpoint,
        }
    }
}

/// Output of `iterate` and `construct`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IterationRecord {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub requested_dimension: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub decomposition: Option<Decomposition>,
    pub converged: bool,
    pub steps: Option<usize>,
    pub history: Vec<ReportRecord>,
    pub group: Option<GroupFile>,
}

/// `n = 2k + 3i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub k: usize,
    pub i: usize,
}
