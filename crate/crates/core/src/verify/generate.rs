//! Seeded generators for the test-function families.
//!
//! Every family is assembled as an exact rational function and expanded to the
//! requested order, so a `(family, seed, degree, params)` tuple always yields the
//! same coefficient prefix.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::series::{PowerSeries, RationalFunction, SeriesTags};
use crate::{Error, Result};

/// Zeros are drawn uniformly from the disk of this radius.
pub const ZERO_RADIUS: f64 = 0.95;
pub const MAX_DEGREE: usize = 8;
pub const MIN_ORDER: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// Finite Blaschke product.
    Blaschke,
    /// `(a - z)/(1 - az)` with real `a ∈ [0, 1)`.
    Mobius,
    /// `z · B(z)`.
    Schwarz,
    /// `(f, g)` with `f = g ∘ ω`, `ω = z · B`.
    SubordinatePair,
    /// `(f, g, W, ω)` with `f = W · (g ∘ ω)`.
    QuasiSubTriple,
    /// `(h, g)` with `Re h ≤ 1`, `h(0) = a_0 > 0`, `g' = k s h'`, `g(0) = 0`.
    HarmonicPair,
    /// `(f, g)` with `g = z B(z²)` odd and `f = t(z²) g`.
    OddPair,
    /// `(f, g)` with `g = z B(z)` and `f = h g`, so `|f| ≤ |g|`.
    ModulusPair,
}

impl Family {
    pub const ALL: [Self; 8] = [
        Self::Blaschke,
        Self::Mobius,
        Self::Schwarz,
        Self::SubordinatePair,
        Self::QuasiSubTriple,
        Self::HarmonicPair,
        Self::OddPair,
        Self::ModulusPair,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Self::Blaschke => "blaschke",
            Self::Mobius => "mobius",
            Self::Schwarz => "schwarz",
            Self::SubordinatePair => "subordinate_pair",
            Self::QuasiSubTriple => "quasi_sub_triple",
            Self::HarmonicPair => "harmonic_pair",
            Self::OddPair => "odd_pair",
            Self::ModulusPair => "modulus_pair",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|f| f.name() == name)
            .ok_or_else(|| Error::Input(format!("unknown family {name:?}")))
    }
}

/// Optional fixed parameters; anything left `None` is drawn from the seed.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct FamilyParams {
    /// Möbius parameter.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    /// `h(0)` for harmonic pairs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a0: Option<f64>,
    /// Dilatation bound for harmonic pairs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TestFunctionSpec {
    pub family: Family,
    pub seed: u64,
    pub degree: usize,
    #[serde(default)]
    pub params: FamilyParams,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Generated {
    Single(PowerSeries),
    Pair { f: PowerSeries, g: PowerSeries },
    Triple { f: PowerSeries, g: PowerSeries, w: PowerSeries, omega: PowerSeries },
    Harmonic { h: PowerSeries, g: PowerSeries },
}

impl Generated {
    /// The function whose functional is bounded (`f`, or `h` for harmonic pairs).
    pub fn primary(&self) -> &PowerSeries {
        match self {
            Self::Single(f) | Self::Pair { f, .. } | Self::Triple { f, .. } => f,
            Self::Harmonic { h, .. } => h,
        }
    }

    /// The dominating function `g` of a pair or triple.
    pub fn dominant(&self) -> Option<&PowerSeries> {
        match self {
            Self::Single(_) => None,
            Self::Pair { g, .. } | Self::Triple { g, .. } | Self::Harmonic { g, .. } => Some(g),
        }
    }
}

/// Derives the seed of sample `index` from a base seed (SplitMix64 finaliser),
/// so results do not depend on evaluation order.
pub fn sample_seed(base: u64, index: u64) -> u64 {
    let mut z = base ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn rotation(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * rng.gen::<f64>())
}

fn disk_point(rng: &mut ChaCha8Rng) -> Complex64 {
    let radius = ZERO_RADIUS * rng.gen::<f64>().sqrt();
    Complex64::from_polar(radius, 2.0 * PI * rng.gen::<f64>())
}

fn zeros(rng: &mut ChaCha8Rng, degree: usize) -> Vec<Complex64> {
    (0..degree).map(|_| disk_point(rng)).collect()
}

/// Möbius parameter `1 - 10^{-4u}`, concentrating near the extremal end.
fn extremal_parameter(rng: &mut ChaCha8Rng) -> f64 {
    1.0 - 10f64.powf(-4.0 * rng.gen::<f64>())
}

fn random_blaschke(rng: &mut ChaCha8Rng, degree: usize) -> Result<(Vec<Complex64>, Complex64)> {
    let z = zeros(rng, degree);
    Ok((z, rotation(rng)))
}

/// Outer function of a subordinate pair: a random Blaschke product, or with
/// probability 1/4 a near-extremal Möbius map.
fn outer(rng: &mut ChaCha8Rng, degree: usize) -> Result<(Vec<Complex64>, Complex64)> {
    if rng.gen_bool(0.25) {
        let a = extremal_parameter(rng).min(0.999);
        Ok((vec![Complex64::new(a, 0.0)], rotation(rng)))
    } else {
        random_blaschke(rng, degree)
    }
}

/// `ω = z · B` with a Blaschke factor `B` of degree 0 to 2.
fn inner(rng: &mut ChaCha8Rng) -> Result<RationalFunction> {
    let degree = rng.gen_range(0..=2);
    let (z, rot) = random_blaschke(rng, degree)?;
    Ok(RationalFunction::blaschke(&z, rot)?.mul_z())
}

/// A member of the unit ball: `t · B` with `t ∈ [1/2, 1]`.
fn scaled_ball_element(rng: &mut ChaCha8Rng, max_degree: usize) -> Result<RationalFunction> {
    let degree = rng.gen_range(0..=max_degree);
    let (z, rot) = random_blaschke(rng, degree)?;
    let t = 0.5 + 0.5 * rng.gen::<f64>();
    Ok(RationalFunction::blaschke(&z, rot)?.mul(&RationalFunction::constant(Complex64::new(t, 0.0))))
}

/// `f = W · (g ∘ ω)` for a Blaschke `g`, `ω = z·(inner Blaschke)` and a rational `W` in the unit ball.
pub fn quasi_subordinate(
    g_zeros: &[Complex64],
    g_rotation: Complex64,
    w: &RationalFunction,
    omega: &RationalFunction,
    order: usize,
) -> Result<Generated> {
    let g = RationalFunction::blaschke(g_zeros, g_rotation)?;
    let composed = RationalFunction::compose_blaschke(g_zeros, g_rotation, omega)?;
    Ok(Generated::Triple {
        f: composed.mul(w).expand(order, SeriesTags::BOUNDED),
        g: g.expand(order, SeriesTags::BOUNDED),
        w: w.expand(order, SeriesTags::BOUNDED),
        omega: omega.expand(order, SeriesTags::SCHWARZ),
    })
}

/// Harmonic pair `(h, g)` with `h = 1 - (1-a_0)(1+zb)/(1-zb)` for a Blaschke `b`
/// and `g' = k s h'`, `g(0) = 0`, for a Blaschke factor `s`.
pub fn harmonic_pair(
    a0: f64,
    k: f64,
    b: &RationalFunction,
    s: &RationalFunction,
    order: usize,
) -> Result<Generated> {
    if !(a0 > 0.0 && a0 < 1.0) {
        return Err(Error::Domain(format!("a0 = {a0} is outside (0, 1)")));
    }
    if !(0.0..=1.0).contains(&k) {
        return Err(Error::Domain(format!("k = {k} is outside [0, 1]")));
    }
    let zb = b.mul_z();
    let (p, q) = (zb.numerator(), zb.denominator());
    let len = p.len().max(q.len());
    let at = |v: &[Complex64], i: usize| v.get(i).copied().unwrap_or_default();
    // h = ((q - p) - (1-a_0)(q + p)) / (q - p)
    let den: Vec<Complex64> = (0..len).map(|i| at(q, i) - at(p, i)).collect();
    let num: Vec<Complex64> = (0..len)
        .map(|i| (at(q, i) - at(p, i)) - (at(q, i) + at(p, i)) * (1.0 - a0))
        .collect();
    let h_rational = RationalFunction::new(num, den)?;
    let mut h_coeffs = h_rational.expand(order + 1, SeriesTags::NONE).coeffs().to_vec();
    h_coeffs[0] = Complex64::new(a0, 0.0);
    let h_long = PowerSeries::new(h_coeffs)?;
    let g_prime = h_long
        .derivative()
        .cauchy_product(&s.expand(order, SeriesTags::BOUNDED))
        .scale(Complex64::new(k, 0.0));
    let mut g = vec![Complex64::new(0.0, 0.0); order + 1];
    for n in 1..=order {
        g[n] = g_prime.coeffs()[n - 1] / n as f64;
    }
    Ok(Generated::Harmonic {
        h: h_long.truncate(order),
        g: PowerSeries::new(g)?,
    })
}

pub fn gen(spec: &TestFunctionSpec, order: usize) -> Result<Generated> {
    if spec.degree > MAX_DEGREE {
        return Err(Error::Domain(format!("degree {} exceeds {MAX_DEGREE}", spec.degree)));
    }
    if order < MIN_ORDER {
        return Err(Error::Domain(format!("order {order} is below {MIN_ORDER}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let d = spec.degree;
    let bounded = SeriesTags::BOUNDED;
    Ok(match spec.family {
        Family::Blaschke => {
            let (z, rot) = random_blaschke(&mut rng, d)?;
            Generated::Single(RationalFunction::blaschke(&z, rot)?.expand(order, bounded))
        }
        Family::Mobius => {
            let a = match spec.params.a {
                Some(a) => a,
                None => extremal_parameter(&mut rng),
            };
            Generated::Single(crate::series::mobius(a, order)?)
        }
        Family::Schwarz => {
            let (z, rot) = random_blaschke(&mut rng, d.saturating_sub(1))?;
            Generated::Single(RationalFunction::blaschke(&z, rot)?.mul_z().expand(order, SeriesTags::SCHWARZ))
        }
        Family::SubordinatePair => {
            let (z, rot) = outer(&mut rng, d)?;
            let omega = inner(&mut rng)?;
            let g = RationalFunction::blaschke(&z, rot)?;
            let f = RationalFunction::compose_blaschke(&z, rot, &omega)?;
            Generated::Pair {
                f: f.expand(order, bounded),
                g: g.expand(order, bounded),
            }
        }
        Family::QuasiSubTriple => {
            let (z, rot) = outer(&mut rng, d)?;
            let omega = inner(&mut rng)?;
            let w = scaled_ball_element(&mut rng, 2)?;
            quasi_subordinate(&z, rot, &w, &omega, order)?
        }
        Family::HarmonicPair => {
            let a0 = match spec.params.a0 {
                Some(a0) => a0,
                None => 0.001 + 0.998 * rng.gen::<f64>(),
            };
            let k = match spec.params.k {
                Some(k) => k,
                None => rng.gen::<f64>(),
            };
            // Degree 0 gives the extremal h = 1 - (1-a_0)(1+cz)/(1-cz).
            let (bz, brot) = random_blaschke(&mut rng, d.saturating_sub(1))?;
            let b = RationalFunction::blaschke(&bz, brot)?;
            let (sz, srot) = random_blaschke(&mut rng, 1)?;
            let s = RationalFunction::blaschke(&sz, srot)?;
            harmonic_pair(a0, k, &b, &s, order)?
        }
        Family::OddPair => {
            let (z, rot) = random_blaschke(&mut rng, d.saturating_sub(1).min(4))?;
            let g = RationalFunction::blaschke(&z, rot)?.substitute_power(2).mul_z();
            let t = scaled_ball_element(&mut rng, 2)?.substitute_power(2);
            Generated::Pair {
                f: g.mul(&t).expand(order, SeriesTags::SCHWARZ),
                g: g.expand(order, SeriesTags::SCHWARZ),
            }
        }
        Family::ModulusPair => {
            let (z, rot) = random_blaschke(&mut rng, d.saturating_sub(1))?;
            let g = RationalFunction::blaschke(&z, rot)?.mul_z();
            let h = scaled_ball_element(&mut rng, 3)?;
            Generated::Pair {
                f: g.mul(&h).expand(order, SeriesTags::SCHWARZ),
                g: g.expand(order, SeriesTags::SCHWARZ),
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn spec(family: Family, seed: u64, degree: usize) -> TestFunctionSpec {
        TestFunctionSpec {
            family,
            seed,
            degree,
            params: FamilyParams::default(),
        }
    }

    #[test]
    fn mobius_at_zero_is_minus_z() {
        let s = TestFunctionSpec {
            params: FamilyParams {
                a: Some(0.0),
                ..Default::default()
            },
            ..spec(Family::Mobius, 1, 0)
        };
        let Generated::Single(f) = gen(&s, 64).unwrap() else { panic!() };
        assert_eq!(f.coeffs()[0], c(0.0, 0.0));
        assert_eq!(f.coeffs()[1], c(-1.0, 0.0));
        assert!(f.coeffs()[2..].iter().all(|a| a.norm() == 0.0));
    }

    #[test]
    fn identity_quasi_subordination_returns_g() {
        let zeros = [c(0.3, 0.2), c(-0.5, 0.6)];
        let rot = c(0.0, 1.0);
        let one = RationalFunction::constant(c(1.0, 0.0));
        let z = RationalFunction::blaschke(&[], c(1.0, 0.0)).unwrap().mul_z();
        let Generated::Triple { f, g, .. } = quasi_subordinate(&zeros, rot, &one, &z, 64).unwrap() else {
            panic!()
        };
        for (a, b) in f.coeffs().iter().zip(g.coeffs()) {
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn harmonic_with_zero_dilatation_has_vanishing_g() {
        let s = TestFunctionSpec {
            params: FamilyParams {
                k: Some(0.0),
                ..Default::default()
            },
            ..spec(Family::HarmonicPair, 9, 3)
        };
        let Generated::Harmonic { h, g } = gen(&s, 64).unwrap() else { panic!() };
        assert!(g.coeffs().iter().all(|b| b.norm() == 0.0));
        assert!(h.coeffs()[0].im == 0.0 && h.coeffs()[0].re > 0.0);
    }

    #[test]
    fn harmonic_pair_satisfies_its_hypotheses() {
        for seed in 0..20 {
            let Generated::Harmonic { h, g } = gen(&spec(Family::HarmonicPair, seed, 4), 128).unwrap() else {
                panic!()
            };
            let a0 = h.coeffs()[0].re;
            let mut sup_ratio: f64 = 0.0;
            for j in 0..32 {
                let z = Complex64::from_polar(0.5, 2.0 * PI * j as f64 / 32.0);
                assert!(h.eval_at(z).re <= 1.0 + 1e-12);
                let hp = h.derivative().eval_at(z).norm();
                let gp = g.derivative().eval_at(z).norm();
                sup_ratio = sup_ratio.max(gp / hp);
            }
            assert!(sup_ratio <= 1.0 + 1e-9);
            for a in &h.coeffs()[1..] {
                assert!(a.norm() <= 2.0 * (1.0 - a0) + 1e-12);
            }
        }
    }

    #[test]
    fn generation_is_reproducible() {
        for family in Family::ALL {
            let s = spec(family, 77, 5);
            assert_eq!(gen(&s, 80).unwrap(), gen(&s, 80).unwrap());
            assert_ne!(gen(&s, 80).unwrap(), gen(&spec(family, 78, 5), 80).unwrap(), "{family:?}");
        }
    }

    #[test]
    fn doubled_order_extends_the_prefix() {
        for family in Family::ALL {
            let s = spec(family, 5, 6);
            let short = gen(&s, 64).unwrap();
            let long = gen(&s, 128).unwrap();
            let (a, b) = (short.primary().coeffs(), long.primary().coeffs());
            for (x, y) in a.iter().zip(b) {
                assert!((x - y).norm() <= 1e-14, "{family:?}");
            }
        }
    }

    #[test]
    fn generated_members_are_bounded_on_a_circle() {
        for family in Family::ALL {
            for seed in 0..10 {
                let out = gen(&spec(family, seed, 8), 256).unwrap();
                let mut series = vec![out.primary()];
                if family != Family::HarmonicPair {
                    series.extend(out.dominant());
                }
                for s in series {
                    for j in 0..64 {
                        let z = Complex64::from_polar(0.7, 2.0 * PI * j as f64 / 64.0);
                        assert!(s.eval_at(z).norm() <= 1.0 + 1e-8, "{family:?} seed {seed}");
                    }
                }
            }
        }
    }

    #[test]
    fn pair_relations_hold_pointwise() {
        for seed in 0..10 {
            let Generated::Pair { f, g } = gen(&spec(Family::OddPair, seed, 8), 256).unwrap() else { panic!() };
            for j in 0..16 {
                let z = Complex64::from_polar(0.6, 2.0 * PI * j as f64 / 16.0);
                assert!(f.eval_at(z).norm() <= g.eval_at(z).norm() + 1e-12);
                assert!((g.eval_at(-z) + g.eval_at(z)).norm() < 1e-12);
            }
            let Generated::Pair { f, g } = gen(&spec(Family::ModulusPair, seed, 8), 256).unwrap() else { panic!() };
            for j in 0..16 {
                let z = Complex64::from_polar(0.6, 2.0 * PI * j as f64 / 16.0);
                assert!(f.eval_at(z).norm() <= g.eval_at(z).norm() + 1e-12);
            }
        }
    }

    #[test]
    fn subordinate_pair_matches_horner_composition() {
        // The generator composes exactly; the truncated Horner route is independent.
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (z, rot) = random_blaschke(&mut rng, 5).unwrap();
        let omega = inner(&mut rng).unwrap();
        let exact = RationalFunction::compose_blaschke(&z, rot, &omega).unwrap().expand(96, SeriesTags::BOUNDED);
        let g = RationalFunction::blaschke(&z, rot).unwrap().expand(96, SeriesTags::BOUNDED);
        let horner = g.compose(&omega.expand(96, SeriesTags::SCHWARZ)).unwrap();
        for (a, b) in exact.coeffs().iter().zip(horner.coeffs()) {
            assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn invalid_specs_are_rejected() {
        assert!(matches!(gen(&spec(Family::Blaschke, 0, 9), 64), Err(Error::Domain(_))));
        assert!(matches!(gen(&spec(Family::Blaschke, 0, 3), 32), Err(Error::Domain(_))));
        let bad = TestFunctionSpec {
            params: FamilyParams {
                a0: Some(1.2),
                ..Default::default()
            },
            ..spec(Family::HarmonicPair, 0, 2)
        };
        assert!(matches!(gen(&bad, 64), Err(Error::Domain(_))));
    }

    #[test]
    fn sample_seeds_are_distinct() {
        let seeds: std::collections::HashSet<u64> = (0..10_000).map(|i| sample_seed(42, i)).collect();
        assert_eq!(seeds.len(), 10_000);
        assert_ne!(sample_seed(1, 0), sample_seed(2, 0));
    }
}
