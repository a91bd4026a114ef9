//! Weight sequences `φ = {φ_k(r)}` and their tail sums `Φ_N(r) = Σ_{k≥N} φ_k(r)`.
//!
//! Four kinds are built in. Every kind has nonnegative terms and a series that
//! converges locally uniformly on `[0, 1)`, so membership in the admissible class
//! holds by construction:
//!
//! | kind                     | `φ_0(r)` | `φ_k(r)`, `k ≥ 1`          |
//! |--------------------------|----------|----------------------------|
//! | `geometric`              | 1        | `r^k`                      |
//! | `power(α)`               | 1        | `(k+1)^α r^k`              |
//! | `truncated_geometric(n)` | 1        | `r^k` for `k ≤ n`, else 0  |
//! | `custom(b, cap)`         | `b_0`    | `b_k r^k`                  |
//!
//! A custom weight lists an explicit prefix `b_0, ..., b_{L-1}`. Beyond the prefix
//! the coefficients continue as the constant `growth_cap`; without a cap the
//! sequence is unknown past the prefix and any quantity that needs those terms
//! fails with a capability error.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::check_radius;
use crate::sum::{Tail, SUM_ROUNDING};
use crate::{Error, Result};

/// Submultiplicativity and monotonicity checks allow this much slack.
pub const WEIGHT_CHECK_SLACK: f64 = 1e-15;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "WeightDescriptor", into = "WeightDescriptor")]
pub enum WeightSequence {
    Geometric,
    Power { alpha: f64 },
    TruncatedGeometric { n: usize },
    Custom(CustomWeights),
}

/// Explicit coefficient prefix with an optional constant continuation.
#[derive(Debug, Clone, PartialEq)]
pub struct CustomWeights {
    b: Vec<f64>,
    growth_cap: Option<f64>,
}

impl CustomWeights {
    pub fn prefix(&self) -> &[f64] {
        &self.b
    }

    pub fn growth_cap(&self) -> Option<f64> {
        self.growth_cap
    }

    fn coefficient(&self, k: usize) -> Result<f64> {
        match (self.b.get(k), self.growth_cap) {
            (Some(&b), _) => Ok(b),
            (None, Some(cap)) => Ok(cap),
            (None, None) => Err(Error::Capability(format!(
                "custom weight coefficient b_{k} lies beyond the {}-term prefix and no growth cap was declared",
                self.b.len()
            ))),
        }
    }
}

/// JSON form of a weight sequence.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum WeightDescriptor {
    Geometric,
    Power {
        alpha: f64,
    },
    TruncatedGeometric {
        n: usize,
    },
    Custom {
        b: Vec<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        growth_cap: Option<f64>,
    },
}

impl TryFrom<WeightDescriptor> for WeightSequence {
    type Error = Error;

    fn try_from(d: WeightDescriptor) -> Result<Self> {
        match d {
            WeightDescriptor::Geometric => Ok(Self::Geometric),
            WeightDescriptor::Power { alpha } => Self::power(alpha),
            WeightDescriptor::TruncatedGeometric { n } => Self::truncated_geometric(n),
            WeightDescriptor::Custom { b, growth_cap } => Self::custom(b, growth_cap),
        }
    }
}

impl From<WeightSequence> for WeightDescriptor {
    fn from(w: WeightSequence) -> Self {
        match w {
            WeightSequence::Geometric => Self::Geometric,
            WeightSequence::Power { alpha } => Self::Power { alpha },
            WeightSequence::TruncatedGeometric { n } => Self::TruncatedGeometric { n },
            WeightSequence::Custom(c) => Self::Custom {
                b: c.b,
                growth_cap: c.growth_cap,
            },
        }
    }
}

/// A tail sum together with a bound on its absolute error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TailSum {
    pub value: f64,
    pub error_bound: f64,
}

/// Outcome of a structural check on a weight sequence over a grid of radii.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightCheck {
    pub holds: bool,
    pub violations: Vec<WeightViolation>,
}

/// `lhs ≤ rhs + slack` failed for the index pair at radius `r`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightViolation {
    pub indices: (usize, usize),
    pub r: f64,
    pub lhs: f64,
    pub rhs: f64,
}

impl WeightSequence {
    pub fn geometric() -> Self {
        Self::Geometric
    }

    pub fn power(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(Error::Domain(format!("power exponent {alpha} is not finite")));
        }
        Ok(Self::Power { alpha })
    }

    pub fn truncated_geometric(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("truncation index must be positive".into()));
        }
        Ok(Self::TruncatedGeometric { n })
    }

    /// Custom weights `φ_k(r) = b_k r^k`.
    ///
    /// `growth_cap`, when given, is the constant value of `b_k` beyond the prefix,
    /// which keeps `limsup b_k^{1/k} ≤ 1`.
    pub fn custom(b: Vec<f64>, growth_cap: Option<f64>) -> Result<Self> {
        if b.is_empty() {
            return Err(Error::Domain("custom weight prefix is empty".into()));
        }
        if let Some((k, v)) = b.iter().enumerate().find(|(_, v)| !(v.is_finite() && **v >= 0.0)) {
            return Err(Error::Domain(format!(
                "custom weight coefficient b_{k} = {v} is not a finite nonnegative number"
            )));
        }
        if let Some(cap) = growth_cap {
            if !(cap.is_finite() && cap >= 0.0) {
                return Err(Error::Capability(format!(
                    "growth cap {cap} does not define a summable continuation"
                )));
            }
        }
        Ok(Self::Custom(CustomWeights { b, growth_cap }))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("weight descriptors always serialise")
    }

    /// `φ_0` is identically one (required by the subordination results).
    pub fn phi0_is_one(&self) -> bool {
        match self {
            Self::Custom(c) => c.b[0] == 1.0,
            _ => true,
        }
    }

    /// `φ_k(r)`.
    pub fn weight_at(&self, k: usize, r: f64) -> Result<f64> {
        check_radius(r)?;
        self.weight_unchecked(k, r)
    }

    pub(crate) fn weight_unchecked(&self, k: usize, r: f64) -> Result<f64> {
        Ok(match self {
            Self::Geometric => pow(r, k),
            Self::Power { alpha } => {
                if k == 0 {
                    1.0
                } else {
                    ((k + 1) as f64).powf(*alpha) * pow(r, k)
                }
            }
            Self::TruncatedGeometric { n } => {
                if k <= *n {
                    pow(r, k)
                } else {
                    0.0
                }
            }
            Self::Custom(c) => c.coefficient(k)? * pow(r, k),
        })
    }

    /// `Φ_N(r) = Σ_{k≥N} φ_k(r)`, with an error bound of at most `1e-14·max(1, Φ_N)`.
    pub fn tail_sum(&self, n: usize, r: f64) -> Result<TailSum> {
        check_radius(r)?;
        let closed = match self {
            Self::Geometric => Some(pow(r, n) / (1.0 - r)),
            Self::Power { alpha } if *alpha == 1.0 => Some(first_moment_geometric(n, r)),
            Self::Power { alpha } if *alpha == 2.0 => {
                let q = 1.0 - r;
                let nf = n as f64;
                Some(pow(r, n) * ((1.0 + r) / (q * q * q) + 2.0 * nf / (q * q) + nf * nf / q))
            }
            _ => None,
        };
        match closed {
            Some(value) => Ok(TailSum {
                value,
                error_bound: closed_form_rounding(n) * value,
            }),
            None => self.strided_sum(n, 1, 0, r),
        }
    }

    /// `Σ_{k≥N} (k+1) φ_k(r)`, the tail that controls derivative majorants.
    pub fn moment_tail(&self, n: usize, r: f64) -> Result<TailSum> {
        check_radius(r)?;
        if let Self::Geometric = self {
            let value = first_moment_geometric(n, r);
            return Ok(TailSum {
                value,
                error_bound: closed_form_rounding(n) * value,
            });
        }
        self.strided_sum(n, 1, 1, r)
    }

    /// `Σ_{n≥1} φ_{2n}(r)`.
    pub fn even_tail(&self, r: f64) -> Result<TailSum> {
        check_radius(r)?;
        if let Self::Geometric = self {
            let value = r * r / (1.0 - r * r);
            return Ok(TailSum {
                value,
                error_bound: 8.0 * f64::EPSILON * value,
            });
        }
        self.strided_sum(2, 2, 0, r)
    }

    /// `Σ_j (k+1)^moment φ_k(r)` over `k = start + j·stride`.
    fn strided_sum(&self, start: usize, stride: usize, moment: i32, r: f64) -> Result<TailSum> {
        let term = |k: usize| -> f64 {
            let base = self.weight_unchecked(k, r).unwrap_or(f64::NAN);
            if moment == 0 {
                base
            } else {
                ((k + 1) as f64).powi(moment) * base
            }
        };
        let growth = |k: usize, exponent: f64| -> f64 {
            let step = ((k + stride + 1) as f64 / (k + 1) as f64).powf(exponent.max(0.0));
            step * pow(r, stride)
        };
        let (last, stop_from, exponent) = match self {
            Self::Geometric => (None, 0, moment as f64),
            Self::Power { alpha } => (None, 0, alpha + moment as f64),
            Self::TruncatedGeometric { n } => (Some(*n), 0, moment as f64),
            Self::Custom(c) => match c.growth_cap {
                Some(cap) if cap == 0.0 => (Some(c.b.len().saturating_sub(1)), 0, 0.0),
                Some(_) => (None, c.b.len(), moment as f64),
                // Past the prefix the coefficients are unknown; only r = 0 is summable.
                None if r == 0.0 => (Some(0), 0, 0.0),
                None => {
                    return Err(Error::Capability(
                        "custom weights without a growth cap have no summable tail".into(),
                    ))
                }
            },
        };
        let tail = Tail {
            start,
            stride,
            last,
            stop_from,
            term,
            ratio_sup: |k: usize| growth(k, exponent),
        };
        let (value, error_bound) = tail.sum()?;
        if value.is_nan() {
            return Err(Error::Capability("weight evaluation failed inside a tail sum".into()));
        }
        Ok(TailSum { value, error_bound })
    }

    /// Checks `φ_{m+n}(r) ≤ φ_m(r) φ_n(r)` for all `m, n ≤ max_index` on the grid.
    pub fn check_submultiplicative(&self, r_grid: &[f64], max_index: usize) -> Result<WeightCheck> {
        let mut violations = Vec::new();
        for &r in r_grid {
            check_radius(r)?;
            let phi: Vec<f64> = (0..=2 * max_index)
                .map(|k| self.weight_unchecked(k, r))
                .collect::<Result<_>>()?;
            for m in 0..=max_index {
                for n in m..=max_index {
                    let lhs = phi[m + n];
                    let rhs = phi[m] * phi[n];
                    if lhs > rhs + WEIGHT_CHECK_SLACK {
                        violations.push(WeightViolation {
                            indices: (m, n),
                            r,
                            lhs,
                            rhs,
                        });
                    }
                }
            }
        }
        Ok(WeightCheck {
            holds: violations.is_empty(),
            violations,
        })
    }

    /// Checks `φ_{k+1}(r) ≤ φ_k(r)` for `1 ≤ k < max_index` on the grid.
    pub fn check_decreasing(&self, r_grid: &[f64], max_index: usize) -> Result<WeightCheck> {
        let mut violations = Vec::new();
        for &r in r_grid {
            check_radius(r)?;
            for k in 1..max_index {
                let lhs = self.weight_unchecked(k + 1, r)?;
                let rhs = self.weight_unchecked(k, r)?;
                if lhs > rhs + WEIGHT_CHECK_SLACK {
                    violations.push(WeightViolation {
                        indices: (k + 1, k),
                        r,
                        lhs,
                        rhs,
                    });
                }
            }
        }
        Ok(WeightCheck {
            holds: violations.is_empty(),
            violations,
        })
    }
}

impl fmt::Display for WeightSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Geometric => write!(f, "geometric"),
            Self::Power { alpha } => write!(f, "power({alpha})"),
            Self::TruncatedGeometric { n } => write!(f, "truncated_geometric({n})"),
            Self::Custom(c) => match c.growth_cap {
                Some(cap) => write!(f, "custom({} terms, cap {cap})", c.b.len()),
                None => write!(f, "custom({} terms)", c.b.len()),
            },
        }
    }
}

fn pow(r: f64, k: usize) -> f64 {
    match i32::try_from(k) {
        Ok(k) => r.powi(k),
        Err(_) => r.powf(k as f64),
    }
}

/// `Σ_{k≥N} (k+1) r^k = r^N (1/(1-r)^2 + N/(1-r))`.
fn first_moment_geometric(n: usize, r: f64) -> f64 {
    let q = 1.0 - r;
    pow(r, n) * (1.0 / (q * q) + n as f64 / q)
}

fn closed_form_rounding(n: usize) -> f64 {
    (8.0 + ((n + 1) as f64).log2().ceil()) * f64::EPSILON
}

// The strided engine already folds term-evaluation error into SUM_ROUNDING.
const _: () = assert!(SUM_ROUNDING < 1e-14);
