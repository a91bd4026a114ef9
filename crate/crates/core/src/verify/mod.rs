//! Seeded property checks of the inequalities over generated test functions.
//!
//! A check evaluates comparisons `lhs ≤ rhs` on a radius grid for many samples.
//! A comparison is a violation only when the certain part of the left side
//! exceeds the upper bound of the right side, `lhs.value - (rhs.value + rhs.tail) > tol`,
//! so truncation can never manufacture a counterexample. Every violation is
//! recomputed at doubled truncation order before it is reported.

mod checks;
pub mod generate;

use rayon::prelude::*;
use serde::Serialize;

use crate::functionals::FunctionalValue;
use crate::{Error, Result};

pub use checks::*;
pub use generate::{gen, sample_seed, Family, FamilyParams, Generated, TestFunctionSpec};

/// Default slack for inequality checks.
pub const TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckConfig {
    pub samples: usize,
    pub seed: u64,
    pub order: usize,
    pub grid_points: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        Self {
            samples: 1000,
            seed: 42,
            order: crate::series::DEFAULT_ORDER,
            grid_points: 64,
        }
    }
}

/// One instance of an inequality `lhs ≤ rhs`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Comparison {
    pub relation: &'static str,
    pub r: Option<f64>,
    pub index: Option<usize>,
    pub lhs: FunctionalValue,
    pub rhs: FunctionalValue,
}

impl Comparison {
    pub fn at(relation: &'static str, r: f64, lhs: FunctionalValue, rhs: FunctionalValue) -> Self {
        Self {
            relation,
            r: Some(r),
            index: None,
            lhs,
            rhs,
        }
    }

    pub fn indexed(relation: &'static str, index: usize, lhs: FunctionalValue, rhs: FunctionalValue) -> Self {
        Self {
            relation,
            r: None,
            index: Some(index),
            lhs,
            rhs,
        }
    }

    /// `lhs.value - (rhs.value + rhs.tail_bound)`.
    pub fn residual(&self) -> f64 {
        self.lhs.value - self.rhs.upper()
    }

    /// The inequality cannot be certified from the truncated data.
    fn uncertified(&self, tol: f64) -> bool {
        self.lhs.upper() > self.rhs.value + tol
    }

    fn same_point(&self, other: &Self) -> bool {
        self.relation == other.relation && self.r == other.r && self.index == other.index
    }
}

/// `exact(x)` as a functional value without tail.
pub fn exact(x: f64) -> FunctionalValue {
    FunctionalValue {
        value: x,
        tail_bound: 0.0,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub spec: Option<TestFunctionSpec>,
    pub relation: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    /// Residual recomputed at doubled truncation order.
    pub residual_doubled: f64,
}

/// A point beyond the radius where an extremal function breaks the inequality.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Witness {
    pub a: f64,
    pub r: f64,
    pub value: f64,
    pub tail_bound: f64,
    pub bound: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    Violation,
    NoWitness,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub check: String,
    pub outcome: Outcome,
    pub samples: usize,
    pub grid: Vec<f64>,
    pub max_residual: Option<f64>,
    pub violations: Vec<Violation>,
    pub witnesses: Vec<Witness>,
    pub seed: u64,
    pub order: usize,
    pub families: Vec<Family>,
    /// Comparisons that hold on the known prefix but cannot be certified once the
    /// truncation bounds are added.
    pub uncertified: usize,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

impl VerificationReport {
    pub fn skipped(check: &str, cfg: &CheckConfig, reason: String) -> Self {
        Self {
            check: check.to_string(),
            outcome: Outcome::Skipped,
            samples: 0,
            grid: Vec::new(),
            max_residual: None,
            violations: Vec::new(),
            witnesses: Vec::new(),
            seed: cfg.seed,
            order: cfg.order,
            families: Vec::new(),
            uncertified: 0,
            tolerance: TOLERANCE,
            skipped: Some(reason),
        }
    }

    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialise")
    }

    fn finish(&mut self, needs_witness: bool) {
        self.outcome = if self.skipped.is_some() {
            Outcome::Skipped
        } else if !self.violations.is_empty() {
            Outcome::Violation
        } else if needs_witness && self.witnesses.is_empty() {
            Outcome::NoWitness
        } else {
            Outcome::Pass
        };
    }
}

/// `n` equispaced points on `[a, b]`, both ends included.
pub fn closed_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n <= 1 {
        return vec![b];
    }
    (0..n).map(|j| a + (b - a) * j as f64 / (n - 1) as f64).collect()
}

/// `n` equispaced points on `(a, b]`.
pub fn open_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    (1..=n).map(|j| a + (b - a) * j as f64 / n as f64).collect()
}

/// The test function drawn for sample `index`: families cycle, degrees run through `1..=8`.
pub fn sample_spec(families: &[Family], base_seed: u64, index: usize, params: FamilyParams) -> TestFunctionSpec {
    TestFunctionSpec {
        family: families[index % families.len()],
        seed: sample_seed(base_seed, index as u64),
        degree: 1 + (index / families.len()) % generate::MAX_DEGREE,
        params,
    }
}

struct SampleOutcome {
    max_residual: f64,
    uncertified: usize,
    violations: Vec<(TestFunctionSpec, Comparison)>,
}

/// Runs a fuzz check.
///
/// `context` builds the per-order data shared by all samples (weight tables on the
/// grid); `eval` produces the comparisons for one generated sample.
pub(crate) fn run_fuzz<C, M, E>(
    check: &str,
    cfg: &CheckConfig,
    grid: Vec<f64>,
    families: &[Family],
    params: FamilyParams,
    tol: f64,
    context: M,
    eval: E,
) -> Result<VerificationReport>
where
    C: Sync,
    M: Fn(usize) -> Result<C>,
    E: Fn(&C, &Generated) -> Result<Vec<Comparison>> + Sync,
{
    let ctx = context(cfg.order)?;
    let outcomes: Vec<SampleOutcome> = (0..cfg.samples)
        .into_par_iter()
        .map(|i| {
            let spec = sample_spec(families, cfg.seed, i, params);
            let generated = gen(&spec, cfg.order)?;
            let comparisons = eval(&ctx, &generated)?;
            let mut out = SampleOutcome {
                max_residual: f64::NEG_INFINITY,
                uncertified: 0,
                violations: Vec::new(),
            };
            for c in comparisons {
                let res = c.residual();
                out.max_residual = out.max_residual.max(res);
                if c.uncertified(tol) {
                    out.uncertified += 1;
                }
                if res > tol {
                    out.violations.push((spec, c));
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;

    let mut max_residual = f64::NEG_INFINITY;
    let mut uncertified = 0;
    let mut candidates = Vec::new();
    for o in outcomes {
        max_residual = max_residual.max(o.max_residual);
        uncertified += o.uncertified;
        candidates.extend(o.violations);
    }

    let violations = if candidates.is_empty() {
        Vec::new()
    } else {
        recheck(&candidates, cfg.order * 2, tol, &context, &eval)?
    };

    let mut report = VerificationReport {
        check: check.to_string(),
        outcome: Outcome::Pass,
        samples: cfg.samples,
        grid,
        max_residual: if max_residual.is_finite() { Some(max_residual) } else { None },
        violations,
        witnesses: Vec::new(),
        seed: cfg.seed,
        order: cfg.order,
        families: families.to_vec(),
        uncertified,
        tolerance: tol,
        skipped: None,
    };
    report.finish(false);
    Ok(report)
}

/// Recomputes candidate violations at a doubled truncation order. A violation
/// that disappears there is a truncation artefact, which is a tooling failure.
fn recheck<C, M, E>(
    candidates: &[(TestFunctionSpec, Comparison)],
    order: usize,
    tol: f64,
    context: &M,
    eval: &E,
) -> Result<Vec<Violation>>
where
    C: Sync,
    M: Fn(usize) -> Result<C>,
    E: Fn(&C, &Generated) -> Result<Vec<Comparison>> + Sync,
{
    let ctx = context(order)?;
    candidates
        .iter()
        .map(|(spec, c)| {
            let again = eval(&ctx, &gen(spec, order)?)?;
            let doubled = again
                .iter()
                .find(|d| d.same_point(c))
                .map(Comparison::residual)
                .ok_or_else(|| Error::Tooling(format!("comparison {} vanished at order {order}", c.relation)))?;
            if doubled <= tol {
                return Err(Error::Tooling(format!(
                    "{} violation for {:?} seed {} at r = {:?} (residual {:.3e}) disappears at order {order}",
                    c.relation,
                    spec.family,
                    spec.seed,
                    c.r,
                    c.residual()
                )));
            }
            Ok(Violation {
                spec: Some(*spec),
                relation: c.relation,
                r: c.r,
                index: c.index,
                lhs: c.lhs.value,
                rhs: c.rhs.upper(),
                residual: c.residual(),
                residual_doubled: doubled,
            })
        })
        .collect()
}
