//! Majorant-type functionals with rigorous accounting for truncated coefficients.
//!
//! Each functional returns the contribution of the known coefficients together
//! with a bound on everything the truncation omitted. For a series tagged
//! `bounded-by-one`, the omitted coefficients satisfy `Σ_{n>N} |a_n|² ≤ 1 - Σ_{n≤N} |a_n|²`,
//! so each one is at most `c = √(1 - Σ_{n≤N}|a_n|²)`. Untagged series get an
//! infinite tail bound.
//!
//! The `*_in` variants take a precomputed [`WeightTable`] so that a fixed radius
//! can be shared across many series.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::check_radius;
use crate::series::PowerSeries;
use crate::weights::WeightSequence;
use crate::{Error, Result};

/// A functional value and a bound on the contribution of omitted coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FunctionalValue {
    pub value: f64,
    pub tail_bound: f64,
}

impl FunctionalValue {
    pub const ZERO: Self = Self {
        value: 0.0,
        tail_bound: 0.0,
    };

    /// `value + tail_bound`, an upper bound for the untruncated functional.
    pub fn upper(&self) -> f64 {
        self.value + self.tail_bound
    }

    fn plus(self, other: Self) -> Self {
        Self {
            value: self.value + other.value,
            tail_bound: self.tail_bound + other.tail_bound,
        }
    }
}

/// Relative inflation applied to accumulated tails so they stay upper bounds
/// despite rounding in the backward recurrences.
const TABLE_ROUNDING: f64 = 1e-13;

/// `φ_k(r)`, `Φ_k(r)` and `M_k(r) = Σ_{j≥k} (j+1) φ_j(r)` at one radius.
#[derive(Debug, Clone)]
pub struct WeightTable {
    r: f64,
    phi: Vec<f64>,
    tail: Vec<f64>,
    moment: Vec<f64>,
}

impl WeightTable {
    /// Weights for `k ≤ max_index`; tails and moment tails for `k ≤ max_index + 1`.
    pub fn new(w: &WeightSequence, r: f64, max_index: usize) -> Result<Self> {
        check_radius(r)?;
        let phi = (0..=max_index)
            .map(|k| w.weight_unchecked(k, r))
            .collect::<Result<Vec<_>>>()?;
        let top = w.tail_sum(max_index + 1, r)?;
        let top_moment = w.moment_tail(max_index + 1, r)?;
        let mut tail = vec![0.0; max_index + 2];
        let mut moment = vec![0.0; max_index + 2];
        tail[max_index + 1] = top.value + top.error_bound;
        moment[max_index + 1] = top_moment.value + top_moment.error_bound;
        for k in (0..=max_index).rev() {
            tail[k] = (tail[k + 1] + phi[k]) * (1.0 + TABLE_ROUNDING);
            moment[k] = (moment[k + 1] + (k + 1) as f64 * phi[k]) * (1.0 + TABLE_ROUNDING);
        }
        Ok(Self { r, phi, tail, moment })
    }

    /// A table deep enough for every functional of a series of the given order.
    pub fn for_order(w: &WeightSequence, r: f64, order: usize) -> Result<Self> {
        Self::new(w, r, 2 * order + 2)
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn max_index(&self) -> usize {
        self.phi.len() - 1
    }

    /// `φ_k(r)`.
    pub fn phi(&self, k: usize) -> f64 {
        self.phi[k]
    }

    /// `Φ_k(r)`, valid for `k ≤ max_index + 1`.
    pub fn tail(&self, k: usize) -> f64 {
        self.tail[k]
    }

    /// `Σ_{j≥k} (j+1) φ_j(r)`, valid for `k ≤ max_index + 1`.
    pub fn moment(&self, k: usize) -> f64 {
        self.moment[k]
    }

    fn require(&self, index: usize) -> Result<()> {
        if index > self.max_index() {
            return Err(Error::Capability(format!(
                "weight table reaches index {} but {index} is needed",
                self.max_index()
            )));
        }
        Ok(())
    }
}

/// Per-coefficient bound on the unknown tail of `f`: `√(1 - Σ|a_n|²)` for
/// tagged series, infinity otherwise.
pub fn tail_coefficient_bound(f: &PowerSeries) -> f64 {
    if f.is_bounded_by_one() {
        (1.0 - f.energy() + 1e-14).max(0.0).sqrt().min(1.0)
    } else {
        f64::INFINITY
    }
}

/// `c · t`, where an infinite `c` against a vanishing tail stays zero.
fn scaled(c: f64, t: f64) -> f64 {
    if t == 0.0 {
        0.0
    } else {
        c * t
    }
}

fn check_p(p: f64, max: f64) -> Result<()> {
    if p > 0.0 && p <= max {
        Ok(())
    } else {
        Err(Error::Domain(format!("p = {p} is outside (0, {max}]")))
    }
}

/// `|a_0|^p`, with `0^p = 0`.
fn power_modulus(a0: Complex64, p: f64) -> f64 {
    let m = a0.norm();
    if m == 0.0 {
        0.0
    } else {
        m.powf(p)
    }
}

/// `B_N(f, φ, r) = Σ_{n≥N} |a_n| φ_n(r)`.
pub fn majorant(f: &PowerSeries, w: &WeightSequence, n: usize, r: f64) -> Result<FunctionalValue> {
    majorant_in(f, &WeightTable::new(w, r, f.order())?, n)
}

pub fn majorant_in(f: &PowerSeries, table: &WeightTable, n: usize) -> Result<FunctionalValue> {
    let order = f.order();
    table.require(order)?;
    let c = tail_coefficient_bound(f);
    if n > order && !f.is_bounded_by_one() {
        return Err(Error::Capability(format!(
            "B_{n} of an untagged series of order {order} involves only unknown coefficients"
        )));
    }
    let value = f
        .coeffs()
        .iter()
        .enumerate()
        .skip(n)
        .map(|(k, a)| a.norm() * table.phi(k))
        .sum();
    let start = n.max(order + 1);
    Ok(FunctionalValue {
        value,
        tail_bound: scaled(c, table.tail(start)),
    })
}

/// `A(f_0, φ, r) = Σ_{n≥1} |a_n|² (φ_{2n}(r)/(1+|a_0|) + Φ_{2n+1}(r))`.
pub fn refined_remainder(f: &PowerSeries, w: &WeightSequence, r: f64) -> Result<FunctionalValue> {
    refined_remainder_in(f, &WeightTable::for_order(w, r, f.order())?)
}

pub fn refined_remainder_in(f: &PowerSeries, table: &WeightTable) -> Result<FunctionalValue> {
    let order = f.order();
    table.require(2 * order + 2)?;
    let a = f.coeffs();
    let inv = 1.0 / (1.0 + a[0].norm());
    let value = (1..=order)
        .map(|n| a[n].norm_sqr() * (table.phi(2 * n) * inv + table.tail(2 * n + 1)))
        .sum();
    // Σ_{n>N} (φ_{2n} + Φ_{2n+1}) ≤ Φ_{2N+2} + ½ M_{2N+3}
    let omitted = table.tail(2 * order + 2) + 0.5 * table.moment(2 * order + 3);
    let c = tail_coefficient_bound(f);
    Ok(FunctionalValue {
        value,
        tail_bound: scaled(c * c, omitted),
    })
}

/// `‖f_0‖²_r = Σ_{n≥1} |a_n|² r^{2n}`.
pub fn norm_sq(f: &PowerSeries, r: f64) -> Result<FunctionalValue> {
    check_radius(r)?;
    quadratic_sum(f, r, QuadraticWeight::Geometric)
}

/// `|a_0|^p φ_0(r) + B_1(f, φ, r)` for `p ∈ (0, 2]`.
pub fn bohr_functional(f: &PowerSeries, w: &WeightSequence, p: f64, r: f64) -> Result<FunctionalValue> {
    check_p(p, 2.0)?;
    bohr_functional_in(f, &WeightTable::new(w, r, f.order())?, p)
}

pub fn bohr_functional_in(f: &PowerSeries, table: &WeightTable, p: f64) -> Result<FunctionalValue> {
    check_p(p, 2.0)?;
    let head = FunctionalValue {
        value: power_modulus(f.coeffs()[0], p) * table.phi(0),
        tail_bound: 0.0,
    };
    Ok(head.plus(majorant_in(f, table, 1)?))
}

/// `|a_0|^p φ_0(r) + B_1(f, φ, r) + A(f_0, φ, r)`.
pub fn refined_functional(f: &PowerSeries, w: &WeightSequence, p: f64, r: f64) -> Result<FunctionalValue> {
    check_p(p, 2.0)?;
    refined_functional_in(f, &WeightTable::for_order(w, r, f.order())?, p)
}

pub fn refined_functional_in(f: &PowerSeries, table: &WeightTable, p: f64) -> Result<FunctionalValue> {
    Ok(bohr_functional_in(f, table, p)?.plus(refined_remainder_in(f, table)?))
}

/// `B_{f'}(φ, r) = Σ_{n≥0} (n+1) |a_{n+1}| φ_n(r)` for `f(0) = 0`.
pub fn derivative_majorant(f: &PowerSeries, w: &WeightSequence, r: f64) -> Result<FunctionalValue> {
    derivative_majorant_in(f, &WeightTable::new(w, r, f.order())?)
}

pub fn derivative_majorant_in(f: &PowerSeries, table: &WeightTable) -> Result<FunctionalValue> {
    if f.coeffs()[0] != Complex64::new(0.0, 0.0) {
        return Err(Error::Precondition(
            "the derivative majorant is defined for functions vanishing at the origin".into(),
        ));
    }
    derivative_sum_in(f, table)
}

/// `Σ_{n≥0} (n+1) |a_{n+1}| φ_n(r)` without the normalisation `f(0) = 0`.
pub fn derivative_sum_in(f: &PowerSeries, table: &WeightTable) -> Result<FunctionalValue> {
    let order = f.order();
    table.require(order)?;
    let a = f.coeffs();
    let value = (0..order)
        .map(|n| (n + 1) as f64 * a[n + 1].norm() * table.phi(n))
        .sum();
    Ok(FunctionalValue {
        value,
        tail_bound: scaled(tail_coefficient_bound(f), table.moment(order)),
    })
}

/// Quadratic weights `ψ_k(r)` for the Goluzin-type sums `Σ_{k≥1} |a_k|² ψ_k(r)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadraticWeight {
    /// `r^{2k}`.
    Geometric,
    /// `k r^{2k}`.
    Linear,
    /// `k² r^{2(k-1)}`.
    Square,
}

impl QuadraticWeight {
    pub const ALL: [Self; 3] = [Self::Geometric, Self::Linear, Self::Square];

    /// `ψ_k` is decreasing in `k` exactly for `r ≤ r_ψ` (`r < 1` for the geometric case).
    pub fn r_psi(&self) -> f64 {
        match self {
            Self::Geometric => 1.0,
            Self::Linear => FRAC_1_SQRT_2,
            Self::Square => 0.5,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Geometric => "geometric",
            Self::Linear => "linear",
            Self::Square => "square",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|q| q.name() == name)
            .ok_or_else(|| Error::Input(format!("unknown quadratic weight {name:?}")))
    }

    pub fn at(&self, k: usize, r: f64) -> f64 {
        let x = r * r;
        let kf = k as f64;
        match self {
            Self::Geometric => x.powi(k as i32),
            Self::Linear => kf * x.powi(k as i32),
            Self::Square => kf * kf * x.powi(k as i32 - 1),
        }
    }

    /// `Σ_{k≥m} ψ_k(r)` in closed form (`m ≥ 1`).
    pub fn tail(&self, m: usize, r: f64) -> f64 {
        let x = r * r;
        let q = 1.0 - x;
        let mf = m as f64;
        match self {
            Self::Geometric => x.powi(m as i32) / q,
            Self::Linear => x.powi(m as i32) * (mf / q + x / (q * q)),
            Self::Square => {
                x.powi(m as i32 - 1) * (mf * mf / q + 2.0 * mf * x / (q * q) + x * (1.0 + x) / (q * q * q))
            }
        }
    }
}

/// `Σ_{k≥1} |a_k|² ψ_k(r)` for `r < r_ψ`.
pub fn quadratic_weighted_sum(f: &PowerSeries, psi: QuadraticWeight, r: f64) -> Result<FunctionalValue> {
    check_radius(r)?;
    if r >= psi.r_psi() {
        return Err(Error::Domain(format!(
            "r = {r} is not below r_ψ = {} for the {} quadratic weight",
            psi.r_psi(),
            psi.name()
        )));
    }
    quadratic_sum(f, r, psi)
}

fn quadratic_sum(f: &PowerSeries, r: f64, psi: QuadraticWeight) -> Result<FunctionalValue> {
    let value = f
        .coeffs()
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, a)| a.norm_sqr() * psi.at(k, r))
        .sum();
    let c = tail_coefficient_bound(f);
    let omitted = psi.tail(f.order() + 1, r) * (1.0 + TABLE_ROUNDING);
    Ok(FunctionalValue {
        value,
        tail_bound: scaled(c * c, omitted),
    })
}

/// `a_0^p + Σ_{n≥1} |a_n| φ_n(r) + Σ_{n≥1} |b_n| φ_n(r)` for a harmonic map `h + conj(g)`
/// with `Re h ≤ 1`, `h(0) = a_0 ∈ (0, 1]` and `|g'| ≤ |h'|`.
///
/// Omitted coefficients are bounded by `|a_n| ≤ 2(1-a_0)` and
/// `|b_n| ≤ 2k(1-a_0)√(e n) ≤ 2k(1-a_0)(n+1)` with the dilatation `k ≤ 1`.
pub fn harmonic_functional(
    h: &PowerSeries,
    g: &PowerSeries,
    w: &WeightSequence,
    p: f64,
    r: f64,
) -> Result<FunctionalValue> {
    let table = WeightTable::new(w, r, h.order().max(g.order()))?;
    harmonic_functional_in(h, g, &table, p, 1.0)
}

/// [`harmonic_functional`] with a known dilatation bound `|g'| ≤ k|h'|`.
pub fn harmonic_functional_in(
    h: &PowerSeries,
    g: &PowerSeries,
    table: &WeightTable,
    p: f64,
    k: f64,
) -> Result<FunctionalValue> {
    check_p(p, 1.0)?;
    if !(0.0..=1.0).contains(&k) {
        return Err(Error::Domain(format!("dilatation k = {k} is outside [0, 1]")));
    }
    let a0 = h.coeffs()[0];
    if a0.im != 0.0 || !(a0.re > 0.0 && a0.re <= 1.0) {
        return Err(Error::Precondition(format!("h(0) = {a0} must be real with 0 < h(0) ≤ 1")));
    }
    let a0 = a0.re;
    table.require(h.order().max(g.order()))?;
    let weighted = |s: &PowerSeries| -> f64 {
        s.coeffs()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, c)| c.norm() * table.phi(n))
            .sum()
    };
    let bound = 2.0 * (1.0 - a0);
    Ok(FunctionalValue {
        value: a0.powf(p) + weighted(h) + weighted(g),
        tail_bound: bound * table.tail(h.order() + 1) + k * bound * table.moment(g.order() + 1),
    })
}

/// Residuals of the two coefficient inequalities for `f` in the unit ball:
/// `odd[n] = (1 - Σ_{k≤n}|a_k|²) - |a_{2n+1}|` for `0 ≤ n ≤ n_max` and
/// `even[n-1] = (1 - Σ_{k<n}|a_k|² - |a_n|²/(1+|a_0|)) - |a_{2n}|` for `1 ≤ n ≤ n_max`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CarlsonResiduals {
    pub odd: Vec<f64>,
    pub even: Vec<f64>,
}

impl CarlsonResiduals {
    pub fn min(&self) -> f64 {
        self.odd.iter().chain(&self.even).copied().fold(f64::INFINITY, f64::min)
    }
}

pub fn carlson_residuals(f: &PowerSeries, n_max: usize) -> Result<CarlsonResiduals> {
    if !f.is_bounded_by_one() {
        return Err(Error::Precondition("coefficient inequalities need a bounded-by-one series".into()));
    }
    if 2 * n_max + 1 > f.order() {
        return Err(Error::Capability(format!(
            "residuals up to n = {n_max} need order {} but the series has order {}",
            2 * n_max + 1,
            f.order()
        )));
    }
    let a = f.coeffs();
    let inv = 1.0 / (1.0 + a[0].norm());
    let mut odd = Vec::with_capacity(n_max + 1);
    let mut even = Vec::with_capacity(n_max);
    // partial = Σ_{k<n} |a_k|²
    let mut partial = 0.0;
    for n in 0..=n_max {
        let sq = a[n].norm_sqr();
        if n >= 1 {
            even.push(1.0 - partial - sq * inv - a[2 * n].norm());
        }
        partial += sq;
        odd.push(1.0 - partial - a[2 * n + 1].norm());
    }
    Ok(CarlsonResiduals { odd, even })
}

/// Upper bound for `Σ_{n≥0} |a_n| r^n` over the unit ball, `r ∈ [1/3, 1)`:
/// `(3 - √(8(1-r²)))/r` up to `1/√2`, and `1/√(1-r²)` beyond.
pub fn bombieri_bound(r: f64) -> Result<f64> {
    if !(1.0 / 3.0..1.0).contains(&r) {
        return Err(Error::Domain(format!("r = {r} is outside [1/3, 1)")));
    }
    if r <= FRAC_1_SQRT_2 {
        // Rationalised in x = 3r, which is exactly 1 at the left endpoint:
        // (3 - √(8(1-r²)))/r = (9 + 8x²)/(x(9 + √(72 - 8x²))).
        let x = 3.0 * r;
        Ok((9.0 + 8.0 * x * x) / (x * (9.0 + (72.0 - 8.0 * x * x).sqrt())))
    } else {
        Ok(1.0 / (1.0 - r * r).sqrt())
    }
}

/// `max |S_n(z)|` over `samples` equispaced points of `|z| = r`, where
/// `S_n = Σ_{k≤n} a_k z^k`.
pub fn partial_sum_sup(f: &PowerSeries, n: usize, r: f64, samples: usize) -> Result<f64> {
    if n > f.order() {
        return Err(Error::Capability(format!(
            "partial sum S_{n} needs order {n} but the series has order {}",
            f.order()
        )));
    }
    let head = f.clone().truncate(n);
    Ok((0..samples.max(1))
        .map(|j| {
            let z = Complex64::from_polar(r, 2.0 * PI * j as f64 / samples.max(1) as f64);
            head.eval_at(z).norm()
        })
        .fold(0.0, f64::max))
}

/// `Σ_{k=1}^{n} |a_k|²`.
pub fn partial_energy(f: &PowerSeries, n: usize) -> f64 {
    f.coeffs().iter().take(n + 1).skip(1).map(|c| c.norm_sqr()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::mobius;
    use approx::assert_relative_eq;

    fn bounded(v: &[f64]) -> PowerSeries {
        PowerSeries::from_real(v).unwrap().with_bounded_by_one().unwrap()
    }

    fn geo() -> WeightSequence {
        WeightSequence::geometric()
    }

    #[test]
    fn majorant_examples() {
        let z = bounded(&[0.0, 1.0]);
        let v = majorant(&z, &geo(), 1, 0.25).unwrap();
        assert_eq!(v.value, 0.25);
        assert!(v.tail_bound < 1e-6);

        let a = 0.5;
        let r = 1.0 / 3.0;
        let m = majorant(&mobius(a, 256).unwrap(), &geo(), 0, r).unwrap();
        assert_relative_eq!(m.value, 0.8, epsilon = 1e-12);
        assert_relative_eq!(a + (1.0 - a * a) * r / (1.0 - a * r), 0.8, epsilon = 1e-15);
        assert!(m.tail_bound < 1e-100);

        let c = PowerSeries::from_real(&[0.4]).unwrap();
        assert!(matches!(majorant(&c, &geo(), 1, 0.3), Err(Error::Capability(_))));
        let c = bounded(&[0.4]);
        assert_eq!(majorant(&c, &geo(), 1, 0.3).unwrap().value, 0.0);
    }

    #[test]
    fn untagged_series_has_infinite_tail() {
        let f = PowerSeries::from_real(&[0.5, 0.5]).unwrap();
        let v = majorant(&f, &geo(), 0, 0.5).unwrap();
        assert_eq!(v.value, 0.75);
        assert!(v.tail_bound.is_infinite());
        // A finitely supported weight has nothing left to bound.
        let t = majorant(&f, &WeightSequence::truncated_geometric(1).unwrap(), 0, 0.5).unwrap();
        assert_eq!(t.tail_bound, 0.0);
    }

    #[test]
    fn refined_remainder_examples() {
        for r in [0.1, 0.3, 0.6] {
            let v = refined_remainder(&bounded(&[0.5, 0.75]), &geo(), r).unwrap();
            let expected = 0.75f64.powi(2) * (r * r / 1.5 + r.powi(3) / (1.0 - r));
            assert_relative_eq!(v.value, expected, max_relative = 1e-12);
        }
        assert_eq!(refined_remainder(&bounded(&[0.7]), &geo(), 0.4).unwrap().value, 0.0);
        // a_0 = 0, so the weight is φ_2 + Φ_3 = 0.25 + 0.125/0.5.
        let v = refined_remainder(&bounded(&[0.0, 1.0]), &geo(), 0.5).unwrap();
        assert_relative_eq!(v.value, 0.5, max_relative = 1e-12);
    }

    #[test]
    fn norm_sq_examples() {
        assert_relative_eq!(norm_sq(&bounded(&[0.0, 1.0]), 0.5).unwrap().value, 0.25);
        assert_eq!(norm_sq(&bounded(&[0.3]), 0.5).unwrap().value, 0.0);
        let v = norm_sq(&mobius(0.5, 256).unwrap(), 0.5).unwrap();
        assert_relative_eq!(v.value, 0.15, max_relative = 1e-12);
    }

    #[test]
    fn bohr_functional_examples() {
        let one = bounded(&[1.0]);
        for r in [0.0, 0.2, 0.7] {
            let v = bohr_functional(&one, &geo(), 1.0, r).unwrap();
            assert_eq!(v.value, 1.0);
            assert!(v.tail_bound < 1e-6);
        }
        for a in [0.3, 0.9, 0.999] {
            let v = bohr_functional(&mobius(a, 512).unwrap(), &geo(), 1.0, 1.0 / 3.0).unwrap();
            let closed = a + (1.0 - a * a) * (1.0 / 3.0) / (1.0 - a / 3.0);
            assert_relative_eq!(v.value, closed, max_relative = 1e-12);
            assert!(v.value <= 1.0);
        }
        let v = bohr_functional(&bounded(&[0.0, 1.0]), &geo(), 2.0, 0.5).unwrap();
        assert_eq!(v.value, 0.5);
        assert!(matches!(bohr_functional(&one, &geo(), 2.5, 0.5), Err(Error::Domain(_))));
        assert!(matches!(bohr_functional(&one, &geo(), 0.0, 0.5), Err(Error::Domain(_))));
    }

    #[test]
    fn refined_functional_examples() {
        for w in [geo(), WeightSequence::power(2.0).unwrap()] {
            let v = refined_functional(&bounded(&[1.0]), &w, 1.5, 0.4).unwrap();
            assert_eq!(v.value, w.weight_at(0, 0.4).unwrap());
        }
        let v = refined_functional(&mobius(0.9, 256).unwrap(), &geo(), 1.0, 1.0 / 3.0).unwrap();
        assert!(v.upper() <= 1.0 + 1e-12);
        let v = refined_functional(&mobius(0.999, 256).unwrap(), &geo(), 1.0, 0.36).unwrap();
        assert!(v.value - v.tail_bound > 1.0);
    }

    #[test]
    fn refined_dominates_bohr() {
        let f = mobius(0.7, 128).unwrap();
        for r in [0.1, 0.3, 0.5] {
            let b = bohr_functional(&f, &geo(), 1.0, r).unwrap();
            let rf = refined_functional(&f, &geo(), 1.0, r).unwrap();
            assert!(rf.value >= b.value - 1e-12);
        }
    }

    #[test]
    fn derivative_majorant_examples() {
        for r in [0.0, 0.3, 0.9] {
            assert_eq!(derivative_majorant(&bounded(&[0.0, 1.0]), &geo(), r).unwrap().value, 1.0);
        }
        let r0 = 1.0 - (2.0f64 / 3.0).sqrt();
        for k in 1..=9 {
            let f = mobius(k as f64 / 10.0, 256).unwrap().mul_z();
            assert!(derivative_majorant(&f, &geo(), r0).unwrap().upper() <= 1.0 + 1e-12);
        }
        let v = derivative_majorant(&bounded(&[0.0, 0.0, 1.0]), &geo(), 0.4).unwrap();
        assert_relative_eq!(v.value, 0.8);
        assert!(matches!(
            derivative_majorant(&bounded(&[0.1, 0.5]), &geo(), 0.4),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn quadratic_examples() {
        use QuadraticWeight::*;
        assert_relative_eq!(quadratic_weighted_sum(&bounded(&[0.0, 1.0]), Geometric, 0.5).unwrap().value, 0.25);
        let f = PowerSeries::from_real(&[0.0, 1.0, 1.0]).unwrap();
        assert_relative_eq!(quadratic_weighted_sum(&f, Linear, 0.5).unwrap().value, 0.375);
        assert_eq!(quadratic_weighted_sum(&bounded(&[0.0, 1.0]), Square, 0.4).unwrap().value, 1.0);
        assert!(matches!(quadratic_weighted_sum(&f, Linear, 0.75), Err(Error::Domain(_))));
        assert!(matches!(quadratic_weighted_sum(&f, Square, 0.5), Err(Error::Domain(_))));
    }

    #[test]
    fn quadratic_tails_match_direct_sums() {
        for psi in QuadraticWeight::ALL {
            for r in [0.1, 0.45, 0.49] {
                for m in [1, 2, 7, 30] {
                    let direct: f64 = (m..m + 4000).map(|k| psi.at(k, r)).sum();
                    assert_relative_eq!(psi.tail(m, r), direct, max_relative = 1e-12);
                }
            }
        }
    }

    #[test]
    fn harmonic_examples() {
        let h = PowerSeries::from_real(&[0.6]).unwrap();
        let g = PowerSeries::from_real(&[0.0]).unwrap();
        let v = harmonic_functional(&h, &g, &geo(), 0.5, 0.3).unwrap();
        assert_relative_eq!(v.value, 0.6f64.sqrt());
        assert!(matches!(
            harmonic_functional(&PowerSeries::from_real(&[-0.5]).unwrap(), &g, &geo(), 1.0, 0.3),
            Err(Error::Precondition(_))
        ));
        let complex = PowerSeries::new(vec![Complex64::new(0.5, 0.1)]).unwrap();
        assert!(harmonic_functional(&complex, &g, &geo(), 1.0, 0.3).is_err());
        assert!(matches!(harmonic_functional(&h, &g, &geo(), 1.5, 0.3), Err(Error::Domain(_))));
    }

    #[test]
    fn carlson_examples() {
        let z = bounded(&[0.0, 1.0, 0.0, 0.0]);
        let res = carlson_residuals(&z, 1).unwrap();
        assert_eq!(res.odd[0], 0.0);
        let one = bounded(&[1.0, 0.0, 0.0, 0.0]);
        assert_eq!(carlson_residuals(&one, 1).unwrap().odd[0], 0.0);
        assert!(matches!(carlson_residuals(&z, 2), Err(Error::Capability(_))));
        let untagged = PowerSeries::from_real(&[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(carlson_residuals(&untagged, 1), Err(Error::Precondition(_))));

        let zeros = [Complex64::new(0.3, -0.5), Complex64::new(-0.7, 0.2)];
        let b = crate::series::blaschke(&zeros, Complex64::new(0.0, 1.0), 16).unwrap();
        let res = carlson_residuals(&b, 3).unwrap();
        assert_eq!((res.odd.len(), res.even.len()), (4, 3));
        assert!(res.min() >= -1e-12);
    }

    #[test]
    fn bombieri_examples() {
        assert_eq!(bombieri_bound(1.0 / 3.0).unwrap(), 1.0);
        let left = bombieri_bound(FRAC_1_SQRT_2).unwrap();
        let right = 1.0 / (1.0 - 0.5f64).sqrt();
        assert!((left - right).abs() <= 1e-12);
        assert_relative_eq!(left, 2f64.sqrt(), max_relative = 1e-12);
        assert_relative_eq!(bombieri_bound(0.9).unwrap(), 1.0 / 0.19f64.sqrt());
        assert_relative_eq!(bombieri_bound(0.5).unwrap(), (3.0 - 6f64.sqrt()) / 0.5, max_relative = 1e-14);
        assert!((bombieri_bound(0.5).unwrap() - 1.101021).abs() < 1e-6);
        assert!(matches!(bombieri_bound(0.3), Err(Error::Domain(_))));
        assert!(bombieri_bound(1.0).is_err());
    }

    #[test]
    fn partial_sum_examples() {
        assert_eq!(partial_sum_sup(&bounded(&[1.0]), 0, 0.5, 16).unwrap(), 1.0);
        assert!(partial_sum_sup(&mobius(0.7, 64).unwrap(), 5, 0.5, 256).unwrap() <= 1.0 + 1e-9);
        assert_relative_eq!(partial_sum_sup(&bounded(&[0.0, 1.0]), 1, 0.5, 64).unwrap(), 0.5);
        assert!(partial_sum_sup(&bounded(&[0.0, 1.0]), 3, 0.5, 64).is_err());
    }

    #[test]
    fn table_matches_weights() {
        let w = WeightSequence::power(-1.0).unwrap();
        let t = WeightTable::new(&w, 0.6, 40).unwrap();
        for k in [0, 1, 17, 40] {
            assert_eq!(t.phi(k), w.weight_at(k, 0.6).unwrap());
            assert_relative_eq!(t.tail(k), w.tail_sum(k, 0.6).unwrap().value, max_relative = 1e-11);
            assert_relative_eq!(t.moment(k), w.moment_tail(k, 0.6).unwrap().value, max_relative = 1e-11);
        }
    }
}
