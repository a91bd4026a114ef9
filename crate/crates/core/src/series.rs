//! Truncated power series `Σ_{n≤N} a_n z^n` on the unit disk.
//!
//! A series knows its coefficients up to its truncation order only; everything
//! past the order is unknown, not zero. Consumers that need the omitted part add
//! a tail bound, which is only possible for series tagged `bounded-by-one`
//! (members of the closed unit ball of `H^∞`, so `|a_n| ≤ 1`).

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Default truncation order for generated series.
pub const DEFAULT_ORDER: usize = 256;

/// Slack allowed when prefix-checking `Σ|a_n|² ≤ 1` for the `bounded-by-one` tag.
pub const NORM_SLACK: f64 = 1e-12;

const BOUNDED_TAG: &str = "bounded-by-one";
const SCHWARZ_TAG: &str = "schwarz";

/// Membership facts a series carries from its construction.
///
/// `schwarz` implies `bounded_by_one` and a vanishing constant term.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SeriesTags {
    pub bounded_by_one: bool,
    pub schwarz: bool,
}

impl SeriesTags {
    pub const NONE: Self = Self {
        bounded_by_one: false,
        schwarz: false,
    };
    pub const BOUNDED: Self = Self {
        bounded_by_one: true,
        schwarz: false,
    };
    pub const SCHWARZ: Self = Self {
        bounded_by_one: true,
        schwarz: true,
    };

    fn names(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.bounded_by_one {
            out.push(BOUNDED_TAG.to_string());
        }
        if self.schwarz {
            out.push(SCHWARZ_TAG.to_string());
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries {
    coeffs: Vec<Complex64>,
    tags: SeriesTags,
}

impl PowerSeries {
    /// An untagged series from its coefficient prefix.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Domain("a power series needs at least one coefficient".into()));
        }
        if coeffs.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::Domain("power series coefficients must be finite".into()));
        }
        Ok(Self {
            coeffs,
            tags: SeriesTags::NONE,
        })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// The zero series to the given order.
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Complex64::new(0.0, 0.0); order + 1],
            tags: SeriesTags::BOUNDED,
        }
    }

    /// The identity map `z` (order at least 1).
    pub fn identity(order: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); order.max(1) + 1];
        coeffs[1] = Complex64::new(1.0, 0.0);
        Self {
            coeffs,
            tags: SeriesTags::SCHWARZ,
        }
    }

    /// Used by generators whose construction guarantees the tags.
    pub(crate) fn trusted(coeffs: Vec<Complex64>, tags: SeriesTags) -> Self {
        debug_assert!(!coeffs.is_empty());
        let schwarz = tags.schwarz && coeffs[0] == Complex64::new(0.0, 0.0);
        Self {
            coeffs,
            tags: SeriesTags {
                bounded_by_one: tags.bounded_by_one,
                schwarz,
            },
        }
    }

    /// Tags the series as a member of the unit ball after prefix-checking `Σ|a_n|² ≤ 1`.
    pub fn with_bounded_by_one(mut self) -> Result<Self> {
        let energy = self.energy();
        if energy > 1.0 + NORM_SLACK {
            return Err(Error::Precondition(format!(
                "Σ|a_n|² = {energy} exceeds 1, so the series is not in the unit ball"
            )));
        }
        self.tags.bounded_by_one = true;
        Ok(self)
    }

    /// Tags the series as a Schwarz function (bounded by one, `a_0 = 0`).
    pub fn with_schwarz(self) -> Result<Self> {
        if self.coeffs[0] != Complex64::new(0.0, 0.0) {
            return Err(Error::Precondition("a Schwarz function must vanish at the origin".into()));
        }
        let mut s = self.with_bounded_by_one()?;
        s.tags.schwarz = true;
        Ok(s)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn tags(&self) -> SeriesTags {
        self.tags
    }

    pub fn is_bounded_by_one(&self) -> bool {
        self.tags.bounded_by_one
    }

    pub fn is_schwarz(&self) -> bool {
        self.tags.schwarz
    }

    /// `Σ |a_n|²` over the known prefix.
    pub fn energy(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Moduli `|a_n|` of the known prefix.
    pub fn moduli(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.norm()).collect()
    }

    /// Drops coefficients past `order` (no-op if the series is already shorter).
    pub fn truncate(mut self, order: usize) -> Self {
        self.coeffs.truncate(order + 1);
        self
    }

    /// Coefficientwise sum; the result is untagged.
    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let coeffs = (0..=n).map(|k| self.coeffs[k] + other.coeffs[k]).collect();
        Self {
            coeffs,
            tags: SeriesTags::NONE,
        }
    }

    /// Multiplies every coefficient by `c`. Tags survive when `|c| ≤ 1`.
    pub fn scale(&self, c: Complex64) -> Self {
        let tags = if c.norm() <= 1.0 {
            self.tags
        } else {
            SeriesTags::NONE
        };
        Self::trusted(self.coeffs.iter().map(|a| a * c).collect(), tags)
    }

    /// Cauchy product `c_n = Σ_{m+j=n} a_m b_j` up to the smaller order.
    pub fn cauchy_product(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let a = &self.coeffs;
        let b = &other.coeffs;
        let coeffs = (0..=n)
            .map(|k| (0..=k).map(|m| a[m] * b[k - m]).sum())
            .collect();
        let bounded = self.tags.bounded_by_one && other.tags.bounded_by_one;
        Self::trusted(
            coeffs,
            SeriesTags {
                bounded_by_one: bounded,
                schwarz: bounded,
            },
        )
    }

    /// `z · f`; the known prefix grows by one.
    pub fn mul_z(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Complex64::new(0.0, 0.0));
        coeffs.extend_from_slice(&self.coeffs);
        Self::trusted(
            coeffs,
            SeriesTags {
                bounded_by_one: self.tags.bounded_by_one,
                schwarz: self.tags.bounded_by_one,
            },
        )
    }

    /// `f(z^m)`.
    pub fn substitute_power(&self, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::Domain("substitution power must be positive".into()));
        }
        // Coefficients up to m·(N+1) - 1 are determined by a_0..a_N.
        let len = m * self.coeffs.len();
        let mut coeffs = vec![Complex64::new(0.0, 0.0); len];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[m * k] = *c;
        }
        Ok(Self::trusted(coeffs, self.tags))
    }

    /// `g ∘ ω` for `ω(0) = 0`, by Horner accumulation `g_0 + ω(g_1 + ω(g_2 + ...))`.
    ///
    /// The accumulator at depth `k` is later multiplied by `ω^k = O(z^k)`, so it is
    /// only carried to order `N - k`.
    pub fn compose(&self, omega: &Self) -> Result<Self> {
        if omega.coeffs[0] != Complex64::new(0.0, 0.0) {
            return Err(Error::Precondition(
                "the inner function of a composition must vanish at the origin".into(),
            ));
        }
        let n = self.order().min(omega.order());
        let g = &self.coeffs;
        let w = &omega.coeffs;
        let mut acc = vec![g[n]];
        for k in (0..n).rev() {
            let len = n - k + 1;
            let mut next = vec![Complex64::new(0.0, 0.0); len];
            next[0] = g[k];
            for (j, slot) in next.iter_mut().enumerate().skip(1) {
                let mut s = Complex64::new(0.0, 0.0);
                for i in 1..=j {
                    if let Some(h) = acc.get(j - i) {
                        s += w[i] * h;
                    }
                }
                *slot += s;
            }
            acc = next;
        }
        let bounded = self.tags.bounded_by_one && omega.tags.bounded_by_one;
        Ok(Self::trusted(
            acc,
            SeriesTags {
                bounded_by_one: bounded,
                schwarz: bounded,
            },
        ))
    }

    /// `f'`, with coefficients `(n+1) a_{n+1}`; an order-0 input gives the zero series.
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self {
                coeffs: vec![Complex64::new(0.0, 0.0)],
                tags: SeriesTags::NONE,
            };
        }
        let coeffs = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(n, c)| c * (n + 1) as f64)
            .collect();
        Self {
            coeffs,
            tags: SeriesTags::NONE,
        }
    }

    /// Horner evaluation of the known prefix.
    pub fn eval_at(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: CoefficientFile = serde_json::from_str(text)?;
        file.try_into()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&CoefficientFile::from(self)).expect("coefficients serialise")
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }
}

/// On-disk coefficient format: `{"coeffs":[[re,im],...], "tags":["bounded-by-one"]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoefficientFile {
    pub coeffs: Vec<[f64; 2]>,
    #[serde(default)]
    pub tags: Vec<String>,
}

impl From<&PowerSeries> for CoefficientFile {
    fn from(s: &PowerSeries) -> Self {
        Self {
            coeffs: s.coeffs.iter().map(|c| [c.re, c.im]).collect(),
            tags: s.tags.names(),
        }
    }
}

impl TryFrom<CoefficientFile> for PowerSeries {
    type Error = Error;

    /// Tags are prefix-checked; a truncated prefix can only certify necessary conditions.
    fn try_from(file: CoefficientFile) -> Result<Self> {
        let series = Self::new(file.coeffs.iter().map(|[re, im]| Complex64::new(*re, *im)).collect())?;
        let mut bounded = false;
        let mut schwarz = false;
        for tag in &file.tags {
            match tag.as_str() {
                BOUNDED_TAG => bounded = true,
                SCHWARZ_TAG => schwarz = true,
                other => return Err(Error::Input(format!("unknown series tag {other:?}"))),
            }
        }
        match (bounded, schwarz) {
            (_, true) => series.with_schwarz(),
            (true, false) => series.with_bounded_by_one(),
            (false, false) => Ok(series),
        }
    }
}

/// `(a - z)/(1 - a z) = a - (1-a²) Σ_{n≥1} a^{n-1} z^n` for real `a ∈ [0, 1)`.
pub fn mobius(a: f64, order: usize) -> Result<PowerSeries> {
    if !(0.0..1.0).contains(&a) {
        return Err(Error::Domain(format!("Möbius parameter a = {a} is outside [0, 1)")));
    }
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(Complex64::new(a, 0.0));
    let scale = 1.0 - a * a;
    let mut power = 1.0;
    for _ in 1..=order {
        coeffs.push(Complex64::new(-scale * power, 0.0));
        power *= a;
    }
    Ok(PowerSeries::trusted(coeffs, SeriesTags::BOUNDED))
}

/// Finite Blaschke product `rotation · Π (z_i - z)/(1 - conj(z_i) z)`.
pub fn blaschke(zeros: &[Complex64], rotation: Complex64, order: usize) -> Result<PowerSeries> {
    Ok(RationalFunction::blaschke(zeros, rotation)?.expand(order, SeriesTags::BOUNDED))
}

/// Polynomial ratio `num(z) / den(z)` with `den(0) ≠ 0`, used to build the
/// extremal families exactly before expanding to a given order.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalFunction {
    num: Vec<Complex64>,
    den: Vec<Complex64>,
}

impl RationalFunction {
    pub fn new(num: Vec<Complex64>, den: Vec<Complex64>) -> Result<Self> {
        if num.is_empty() || den.is_empty() || den[0] == Complex64::new(0.0, 0.0) {
            return Err(Error::Domain("rational function needs a denominator with den(0) ≠ 0".into()));
        }
        Ok(Self { num, den })
    }

    pub fn constant(c: Complex64) -> Self {
        Self {
            num: vec![c],
            den: vec![Complex64::new(1.0, 0.0)],
        }
    }

    pub fn blaschke(zeros: &[Complex64], rotation: Complex64) -> Result<Self> {
        if (rotation.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::Domain(format!("rotation {rotation} is not unimodular")));
        }
        let mut out = Self::constant(rotation);
        for &c in zeros {
            if !(c.norm() < 1.0) {
                return Err(Error::Domain(format!("Blaschke zero {c} is not inside the unit disk")));
            }
            out = out.mul(&Self {
                num: vec![c, Complex64::new(-1.0, 0.0)],
                den: vec![Complex64::new(1.0, 0.0), -c.conj()],
            });
        }
        Ok(out)
    }

    pub fn numerator(&self) -> &[Complex64] {
        &self.num
    }

    pub fn denominator(&self) -> &[Complex64] {
        &self.den
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            num: poly_mul(&self.num, &other.num),
            den: poly_mul(&self.den, &other.den),
        }
    }

    /// `z · self`.
    pub fn mul_z(&self) -> Self {
        let mut num = vec![Complex64::new(0.0, 0.0)];
        num.extend_from_slice(&self.num);
        Self {
            num,
            den: self.den.clone(),
        }
    }

    /// `self(z^m)`.
    pub fn substitute_power(&self, m: usize) -> Self {
        let spread = |p: &[Complex64]| {
            let mut out = vec![Complex64::new(0.0, 0.0); m * (p.len() - 1) + 1];
            for (k, c) in p.iter().enumerate() {
                out[m * k] = *c;
            }
            out
        };
        Self {
            num: spread(&self.num),
            den: spread(&self.den),
        }
    }

    /// `self ∘ inner` where `self` is a Blaschke product with the given zeros and
    /// rotation and `inner = z·P/Q`. Each factor `(c - zP/Q)/(1 - c̄ zP/Q)` becomes
    /// `(cQ - zP)/(Q - c̄ zP)`.
    pub fn compose_blaschke(zeros: &[Complex64], rotation: Complex64, inner: &Self) -> Result<Self> {
        if inner.num[0] != Complex64::new(0.0, 0.0) {
            return Err(Error::Precondition("inner function must vanish at the origin".into()));
        }
        let mut out = Self::constant(rotation);
        for &c in zeros {
            let num = poly_sub(&poly_scale(&inner.den, c), &inner.num);
            let den = poly_sub(&inner.den, &poly_scale(&inner.num, c.conj()));
            out = out.mul(&Self { num, den });
        }
        Ok(out)
    }

    /// Taylor coefficients up to `order` by the recurrence `den · y = num`.
    pub fn expand(&self, order: usize, tags: SeriesTags) -> PowerSeries {
        let d0 = self.den[0];
        let mut y: Vec<Complex64> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut s = self.num.get(n).copied().unwrap_or_default();
            for (j, dj) in self.den.iter().enumerate().skip(1).take(n) {
                s -= dj * y[n - j];
            }
            y.push(s / d0);
        }
        PowerSeries::trusted(y, tags)
    }

    pub fn eval_at(&self, z: Complex64) -> Complex64 {
        poly_eval(&self.num, z) / poly_eval(&self.den, z)
    }
}

fn poly_mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_scale(a: &[Complex64], c: Complex64) -> Vec<Complex64> {
    a.iter().map(|x| x * c).collect()
}

fn poly_sub(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let len = a.len().max(b.len());
    (0..len)
        .map(|k| a.get(k).copied().unwrap_or_default() - b.get(k).copied().unwrap_or_default())
        .collect()
}

fn poly_eval(p: &[Complex64], z: Complex64) -> Complex64 {
    p.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn real(s: &PowerSeries) -> Vec<f64> {
        s.coeffs().iter().map(|c| c.re).collect()
    }

    fn series(v: &[f64]) -> PowerSeries {
        PowerSeries::from_real(v).unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(real(&series(&[1.0, 2.0]).add(&series(&[3.0, 4.0]))), vec![4.0, 6.0]);
        let f = series(&[1.0, -2.0, 0.5]);
        assert_eq!(f.add(&PowerSeries::zero(2)).coeffs(), f.coeffs());
        let s = series(&[1.0, 1.0, 1.0]).add(&series(&[0.0, 0.0, 0.0, 5.0]));
        assert_eq!(real(&s), vec![1.0, 1.0, 1.0]);
        assert_eq!(s.order(), 2);
    }

    #[test]
    fn cauchy_product_examples() {
        assert_eq!(real(&series(&[1.0, 1.0]).cauchy_product(&series(&[1.0, 1.0]))), vec![1.0, 2.0]);
        let f = series(&[0.5, -0.25, 2.0]);
        assert_eq!(f.cauchy_product(&series(&[1.0, 0.0, 0.0])).coeffs(), f.coeffs());
        // (1/(1-z))·(1-z) = 1
        let p = series(&[1.0, 1.0, 1.0, 1.0]).cauchy_product(&series(&[1.0, -1.0, 0.0, 0.0]));
        assert_eq!(real(&p), vec![1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn compose_examples() {
        let g = series(&[0.3, -1.0, 2.0, 0.25]);
        let id = PowerSeries::identity(3);
        assert_eq!(g.compose(&id).unwrap().coeffs(), g.coeffs());

        let sq = series(&[0.0, 0.0, 1.0]);
        let two_z = series(&[0.0, 2.0, 0.0]);
        assert_eq!(real(&sq.compose(&two_z).unwrap()), vec![0.0, 0.0, 4.0]);

        // 1/(1-z) ∘ z² = 1/(1-z²)
        let geo = series(&[1.0; 9]);
        let z2 = series(&[0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(
            real(&geo.compose(&z2).unwrap()),
            vec![1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0]
        );

        assert!(matches!(g.compose(&series(&[0.1, 1.0])), Err(Error::Precondition(_))));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(real(&series(&[0.0, 1.0, 1.0]).derivative()), vec![1.0, 2.0]);
        assert_eq!(real(&series(&[5.0]).derivative()), vec![0.0]);

        // z(a-z)/(1-az): compare (n+1)a_{n+1} with a central difference of the closed form.
        let a = 0.6;
        let f = mobius(a, 80).unwrap().mul_z();
        let df = f.derivative();
        let closed = |z: Complex64| z * (c(a, 0.0) - z) / (c(1.0, 0.0) - z * a);
        for k in 0..8 {
            let z = Complex64::from_polar(0.4, 2.0 * PI * k as f64 / 8.0);
            let h = 1e-6;
            let fd = (closed(z + h) - closed(z - h)) / (2.0 * h);
            assert!((df.eval_at(z) - fd).norm() < 1e-8);
        }
    }

    #[test]
    fn mobius_examples() {
        assert_eq!(real(&mobius(0.0, 3).unwrap()), vec![0.0, -1.0, 0.0, 0.0]);
        assert_eq!(real(&mobius(0.5, 3).unwrap()), vec![0.5, -0.75, -0.375, -0.1875]);
        let m = real(&mobius(0.9, 1).unwrap());
        assert_eq!(m[0], 0.9);
        assert!((m[1] + 0.19).abs() < 1e-15);
        assert!(mobius(1.0, 3).is_err());
        assert!(mobius(-0.1, 3).is_err());

        let f = mobius(0.5, 40).unwrap();
        for k in 0..8 {
            let z = Complex64::from_polar(0.3, 2.0 * PI * k as f64 / 8.0);
            let closed = (c(0.5, 0.0) - z) / (c(1.0, 0.0) - z * 0.5);
            assert!((f.eval_at(z) - closed).norm() < 1e-12);
        }
    }

    #[test]
    fn blaschke_examples() {
        let empty = blaschke(&[], c(1.0, 0.0), 0).unwrap();
        assert_eq!(real(&empty), vec![1.0]);
        assert_eq!(real(&blaschke(&[c(0.0, 0.0)], c(1.0, 0.0), 3).unwrap()), vec![0.0, -1.0, 0.0, 0.0]);
        assert!(blaschke(&[c(1.0, 0.0)], c(1.0, 0.0), 3).is_err());
        assert!(blaschke(&[c(0.5, 0.0)], c(2.0, 0.0), 3).is_err());

        let zeros = [c(0.5, 0.0), c(0.0, -0.3)];
        let rot = c(0.0, 1.0);
        let b = blaschke(&zeros, rot, 8).unwrap();
        let direct = |z: Complex64| {
            zeros
                .iter()
                .fold(rot, |acc, zi| acc * (zi - z) / (c(1.0, 0.0) - zi.conj() * z))
        };
        // An order-8 prefix at |z| = 0.6 leaves a tail of roughly 0.6^9.
        let tail = 0.6f64.powi(9) / 0.4;
        for k in 0..16 {
            let z = Complex64::from_polar(0.6, 2.0 * PI * k as f64 / 16.0);
            assert!(b.eval_at(z).norm() <= 1.0 + tail);
            assert!((b.eval_at(z) - direct(z)).norm() <= tail);
        }
        let long = blaschke(&zeros, rot, 96).unwrap();
        for k in 0..16 {
            let z = Complex64::from_polar(0.6, 2.0 * PI * k as f64 / 16.0);
            assert!(long.eval_at(z).norm() <= 1.0 + 1e-9);
            assert!((long.eval_at(z) - direct(z)).norm() <= 1e-9);
        }
    }

    #[test]
    fn blaschke_matches_product_of_factor_expansions() {
        // Independent route: expand each factor and multiply by Cauchy products.
        let zeros = [c(0.2, 0.7), c(-0.9, 0.1), c(0.0, 0.0), c(0.4, -0.4)];
        let rot = Complex64::from_polar(1.0, 0.7);
        let order = 64;
        let mut product = PowerSeries::trusted(
            std::iter::once(rot)
                .chain(std::iter::repeat(c(0.0, 0.0)).take(order))
                .collect(),
            SeriesTags::BOUNDED,
        );
        for &zi in &zeros {
            let mut factor = vec![zi];
            let scale = 1.0 - zi.norm_sqr();
            let mut p = c(1.0, 0.0);
            for _ in 1..=order {
                factor.push(-p * scale);
                p *= zi.conj();
            }
            product = product.cauchy_product(&PowerSeries::new(factor).unwrap());
        }
        let fast = blaschke(&zeros, rot, order).unwrap();
        for (x, y) in fast.coeffs().iter().zip(product.coeffs()) {
            assert!((x - y).norm() < 1e-14);
        }
    }

    #[test]
    fn rational_blaschke_composition_matches_horner() {
        let g_zeros = [c(0.3, 0.5), c(-0.6, 0.0)];
        let g_rot = c(0.0, -1.0);
        let w_zeros = [c(0.1, -0.8)];
        let inner = RationalFunction::blaschke(&w_zeros, c(1.0, 0.0)).unwrap().mul_z();
        let order = 48;
        let fast = RationalFunction::compose_blaschke(&g_zeros, g_rot, &inner)
            .unwrap()
            .expand(order, SeriesTags::BOUNDED);
        let g = blaschke(&g_zeros, g_rot, order).unwrap();
        let omega = inner.expand(order, SeriesTags::SCHWARZ);
        let horner = g.compose(&omega).unwrap();
        for (x, y) in fast.coeffs().iter().zip(horner.coeffs()) {
            assert!((x - y).norm() < 1e-12);
        }
    }

    #[test]
    fn eval_examples() {
        assert_eq!(series(&[1.0, 1.0, 1.0]).eval_at(c(0.0, 0.0)), c(1.0, 0.0));
        assert_eq!(series(&[0.0, 1.0]).eval_at(c(0.0, 0.5)), c(0.0, 0.5));
        let v = mobius(0.5, 64).unwrap().eval_at(c(0.3, 0.0));
        assert!((v.re - 0.2 / 0.85).abs() < 1e-10);
        assert!((v.re - 0.235294).abs() < 1e-6);
    }

    #[test]
    fn tags_and_json() {
        let s = series(&[0.6, 0.8]).with_bounded_by_one().unwrap();
        assert!(s.is_bounded_by_one());
        assert!(series(&[0.8, 0.8]).with_bounded_by_one().is_err());
        assert!(series(&[0.1, 0.5]).with_schwarz().is_err());
        let z = series(&[0.0, 1.0]).with_schwarz().unwrap();
        assert!(z.is_schwarz() && z.is_bounded_by_one());

        let text = r#"{"coeffs":[[0.5,0.0],[0.0,-0.75]],"tags":["bounded-by-one"]}"#;
        let f = PowerSeries::from_json(text).unwrap();
        assert_eq!(f.coeffs()[1], c(0.0, -0.75));
        assert!(f.is_bounded_by_one());
        assert_eq!(PowerSeries::from_json(&f.to_json()).unwrap(), f);

        let bad = r#"{"coeffs":[[0.9,0.0],[0.9,0.0]],"tags":["bounded-by-one"]}"#;
        assert!(matches!(PowerSeries::from_json(bad), Err(Error::Precondition(_))));
        let unknown = r#"{"coeffs":[[0.1,0.0]],"tags":["entire"]}"#;
        assert!(matches!(PowerSeries::from_json(unknown), Err(Error::Input(_))));
        assert!(PowerSeries::new(vec![]).is_err());
    }

    #[test]
    fn substitute_power_spreads_coefficients() {
        let f = series(&[1.0, 2.0, 3.0]).substitute_power(2).unwrap();
        assert_eq!(real(&f), vec![1.0, 0.0, 2.0, 0.0, 3.0, 0.0]);
    }
}
