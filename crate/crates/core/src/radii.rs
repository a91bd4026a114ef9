//! Radius equations, solved as the minimal positive root of a residual `G`.
//!
//! Every equation is written as `G(x) = LHS(x) - RHS(x)` with `G(0) > 0`. The
//! solver scans `x = j·h` until `G` stops being positive and then bisects the
//! bracketing step.

use serde::Serialize;

use crate::weights::WeightSequence;
use crate::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_SCAN_STEP: f64 = 1.0 / 1024.0;
pub const DEFAULT_UPPER: f64 = 1.0 - 1e-6;

/// Entries `(p, n, R_n(p))` of the published table of roots of
/// `p(1-r) - 2r(1-r^n) = 0`, as printed (six decimals, trailing digits truncated).
pub const TABLE1: [(f64, usize, f64); 28] = [
    (1.0, 2, 0.366025),
    (1.0, 3, 0.342508),
    (1.0, 4, 0.336197),
    (1.0, 5, 0.334263),
    (1.0, 6, 0.33364),
    (1.0, 7, 0.333435),
    (1.0, 8, 0.333367),
    (1.0, 9, 0.333345),
    (1.0, 10, 0.333337),
    (1.0, 15, 0.333333),
    (1.0, 20, 0.333333),
    (1.0, 25, 0.333333),
    (1.0, 30, 0.333333),
    (1.0, 35, 0.333333),
    (2.0, 2, 0.618034),
    (2.0, 3, 0.543689),
    (2.0, 4, 0.51879),
    (2.0, 5, 0.50866),
    (2.0, 6, 0.504138),
    (2.0, 7, 0.502017),
    (2.0, 8, 0.500994),
    (2.0, 9, 0.500493),
    (2.0, 10, 0.500245),
    (2.0, 15, 0.500008),
    (2.0, 20, 0.5),
    (2.0, 25, 0.5),
    (2.0, 30, 0.5),
    (2.0, 35, 0.5),
];

#[derive(Debug, Clone, PartialEq)]
pub enum RadiusProblem {
    /// `p φ_0(x) = 2 Φ_1(x)`.
    General { w: WeightSequence, p: f64 },
    /// `p(1-x) = 2x(1-x^n)`.
    Corollary { n: usize, p: f64 },
    /// `Φ_1(x) = p/2` for power weights `(k+1)^α x^k`.
    PowerAlpha { alpha: f64, p: f64 },
    /// `1 = (2/p)(1+k) Φ_1(x)`.
    Harmonic { w: WeightSequence, p: f64, k: f64 },
    /// `φ_0(x) = 2 Σ_{n≥1} (n+1) φ_n(x)`.
    SchwarzDerivative { w: WeightSequence },
    /// `1 = 2 Σ_{n≥1} φ_{2n}(x)`.
    Odd { w: WeightSequence },
}

/// Scan-and-bisect parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    pub tol: f64,
    pub scan_step: f64,
    pub upper: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            scan_step: DEFAULT_SCAN_STEP,
            upper: DEFAULT_UPPER,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadiusSolution {
    pub radius: f64,
    /// `G(radius)`.
    pub residual: f64,
    /// `false` when `G` reaches zero at a scan point without becoming negative
    /// just beyond it; no sharpness can be claimed at such a touch point.
    pub crossing: bool,
}

fn check_p(p: f64, max: f64) -> Result<()> {
    if p > 0.0 && p <= max {
        Ok(())
    } else {
        Err(Error::Domain(format!("p = {p} is outside (0, {max}]")))
    }
}

impl RadiusProblem {
    pub fn name(&self) -> &'static str {
        match self {
            Self::General { .. } => "general",
            Self::Corollary { .. } => "corollary",
            Self::PowerAlpha { .. } => "power",
            Self::Harmonic { .. } => "harmonic",
            Self::SchwarzDerivative { .. } => "schwarz-derivative",
            Self::Odd { .. } => "odd",
        }
    }

    /// Checks parameter ranges and `G(0) > 0`.
    pub fn validate(&self) -> Result<()> {
        match self {
            Self::General { p, .. } | Self::PowerAlpha { p, .. } => check_p(*p, 2.0)?,
            Self::Corollary { n, p } => {
                check_p(*p, 2.0)?;
                if *n == 0 {
                    return Err(Error::Domain("n must be at least 1".into()));
                }
            }
            Self::Harmonic { p, k, .. } => {
                check_p(*p, 1.0)?;
                if !(0.0..=1.0).contains(k) {
                    return Err(Error::Domain(format!("k = {k} is outside [0, 1]")));
                }
            }
            Self::SchwarzDerivative { .. } | Self::Odd { .. } => {}
        }
        if let Self::PowerAlpha { alpha, .. } = self {
            WeightSequence::power(*alpha)?;
        }
        let g0 = self.residual(0.0)?;
        if !(g0 > 0.0) {
            return Err(Error::Precondition(format!(
                "the {} equation has G(0) = {g0}, so there is no positive radius",
                self.name()
            )));
        }
        Ok(())
    }

    /// `G(x)`.
    pub fn residual(&self, x: f64) -> Result<f64> {
        Ok(match self {
            Self::General { w, p } => p * w.weight_at(0, x)? - 2.0 * w.tail_sum(1, x)?.value,
            Self::Corollary { n, p } => p * (1.0 - x) - 2.0 * x * (1.0 - x.powi(*n as i32)),
            Self::PowerAlpha { alpha, p } => p / 2.0 - WeightSequence::Power { alpha: *alpha }.tail_sum(1, x)?.value,
            Self::Harmonic { w, p, k } => 1.0 - 2.0 / p * (1.0 + k) * w.tail_sum(1, x)?.value,
            Self::SchwarzDerivative { w } => w.weight_at(0, x)? - 2.0 * w.moment_tail(1, x)?.value,
            Self::Odd { w } => 1.0 - 2.0 * w.even_tail(x)?.value,
        })
    }

    /// The root in closed form, where one is known.
    pub fn closed_form(&self) -> Option<f64> {
        use WeightSequence::*;
        let general = |w: &WeightSequence, p: f64| match w {
            Geometric => Some(p / (2.0 + p)),
            TruncatedGeometric { n } => corollary_closed_form(*n, p),
            Power { alpha } => power_closed_form(*alpha, p),
            Custom(_) => None,
        };
        match self {
            Self::General { w, p } => general(w, *p),
            Self::Corollary { n, p } => corollary_closed_form(*n, *p),
            Self::PowerAlpha { alpha, p } => power_closed_form(*alpha, *p),
            Self::Harmonic { w: Geometric, p, k } => Some(p / (p + 2.0 * (1.0 + k))),
            Self::SchwarzDerivative { w: Geometric } => Some(1.0 - (2.0f64 / 3.0).sqrt()),
            Self::Odd { w: Geometric } => Some((1.0f64 / 3.0).sqrt()),
            _ => None,
        }
        .filter(|r| *r > 0.0 && *r < 1.0)
    }
}

fn corollary_closed_form(n: usize, p: f64) -> Option<f64> {
    match n {
        1 => Some(p / 2.0),
        2 => Some((-1.0 + (1.0 + 2.0 * p).sqrt()) / 2.0),
        _ => None,
    }
}

fn power_closed_form(alpha: f64, p: f64) -> Option<f64> {
    if alpha == 1.0 {
        Some(1.0 - (2.0 / (2.0 + p)).sqrt())
    } else if alpha == 2.0 {
        // (1+r)/(1-r)³ = c with c = (p+2)/2; u = 1 - r solves c u³ + u - 2 = 0,
        // whose single real root is given by Cardano's formula.
        let c = (p + 2.0) / 2.0;
        let s = (1.0 / (c * c) + 1.0 / (27.0 * c * c * c)).sqrt();
        Some(1.0 - ((1.0 / c + s).cbrt() + (1.0 / c - s).cbrt()))
    } else {
        None
    }
}

/// Minimal positive root with default scan step and domain cap.
pub fn solve(problem: &RadiusProblem, tol: f64) -> Result<RadiusSolution> {
    solve_with(problem, SolveOptions { tol, ..Default::default() })
}

pub fn solve_with(problem: &RadiusProblem, opts: SolveOptions) -> Result<RadiusSolution> {
    if !(opts.tol > 0.0) {
        return Err(Error::Domain(format!("tolerance {} must be positive", opts.tol)));
    }
    if !(opts.scan_step > 0.0 && opts.scan_step < 1.0) {
        return Err(Error::Domain(format!("scan step {} must lie in (0, 1)", opts.scan_step)));
    }
    if !(opts.upper > 0.0 && opts.upper < 1.0) {
        return Err(Error::Domain(format!("upper limit {} must lie in (0, 1)", opts.upper)));
    }
    problem.validate()?;
    let g = |x: f64| problem.residual(x);

    let mut lo = 0.0;
    let mut j = 1usize;
    let (mut hi, g_hi) = loop {
        let x = (j as f64 * opts.scan_step).min(opts.upper);
        let gx = g(x)?;
        if gx <= 0.0 {
            break (x, gx);
        }
        if x >= opts.upper {
            return Err(Error::NoRadius(format!(
                "the {} equation stays positive on (0, {}]: the inequality holds throughout the scanned range",
                problem.name(),
                opts.upper
            )));
        }
        lo = x;
        j += 1;
    };

    if g_hi == 0.0 {
        let beyond = (hi + opts.tol.max(1e-9)).min(opts.upper);
        return Ok(RadiusSolution {
            radius: hi,
            residual: 0.0,
            crossing: beyond > hi && g(beyond)? < 0.0,
        });
    }
    while hi - lo > opts.tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if g(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let radius = 0.5 * (lo + hi);
    Ok(RadiusSolution {
        radius,
        residual: g(radius)?,
        crossing: g(hi)? < 0.0,
    })
}

fn solve_default(problem: RadiusProblem) -> Result<f64> {
    Ok(solve(&problem, DEFAULT_TOL)?.radius)
}

/// Root of `p(1-r) = 2r(1-r^n)`.
pub fn radius_corollary(n: usize, p: f64) -> Result<f64> {
    solve_default(RadiusProblem::Corollary { n, p })
}

/// Root of `Φ_1(r) = p/2` for power weights.
pub fn radius_power(alpha: f64, p: f64) -> Result<f64> {
    solve_default(RadiusProblem::PowerAlpha { alpha, p })
}

/// Root of `1 = (2/p)(1+k)Φ_1(r)`; requires `φ_k` to decrease in `k ≥ 1` on `(0, R]`.
pub fn radius_harmonic(w: &WeightSequence, p: f64, k: f64) -> Result<f64> {
    let r = solve_default(RadiusProblem::Harmonic { w: w.clone(), p, k })?;
    let grid: Vec<f64> = (1..=64).map(|j| r * j as f64 / 64.0).collect();
    let check = w.check_decreasing(&grid, 64)?;
    if !check.holds {
        let v = &check.violations[0];
        return Err(Error::Precondition(format!(
            "weights are not decreasing from index 1: φ_{} > φ_{} at r = {}",
            v.indices.1, v.indices.0, v.r
        )));
    }
    Ok(r)
}

/// Root of `φ_0(r) = 2 Σ_{n≥1} (n+1) φ_n(r)`.
pub fn radius_schwarz_derivative(w: &WeightSequence) -> Result<f64> {
    solve_default(RadiusProblem::SchwarzDerivative { w: w.clone() })
}

/// Root of `1 = 2 Σ_{n≥1} φ_{2n}(r)`.
pub fn radius_odd(w: &WeightSequence) -> Result<f64> {
    solve_default(RadiusProblem::Odd { w: w.clone() })
}

pub fn min_radius(values: &[f64]) -> Result<f64> {
    values
        .iter()
        .copied()
        .reduce(f64::min)
        .ok_or_else(|| Error::Precondition("min_radius needs at least one value".into()))
}

/// `k = (K-1)/(K+1)` for a `K`-quasiconformal map.
pub fn dilatation(big_k: f64) -> Result<f64> {
    if !(big_k >= 1.0 && big_k.is_finite()) {
        return Err(Error::Domain(format!("K = {big_k} must be a finite value ≥ 1")));
    }
    Ok((big_k - 1.0) / (big_k + 1.0))
}
