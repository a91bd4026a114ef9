//! Compensated summation of nonnegative series with a ratio-comparison stopping rule.

use crate::{Error, Result};

/// Hard cap on the number of summed terms.
pub(crate) const MAX_TERMS: usize = 1_000_000;

/// Summation stops once the remainder bound falls below this fraction of the partial sum.
pub(crate) const STOP_FRACTION: f64 = 1e-15;

/// Relative rounding allowance for a summed tail (term evaluation plus compensated summation).
pub(crate) const SUM_ROUNDING: f64 = 32.0 * f64::EPSILON;

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// A nonnegative series `Σ term(k)` over `k = start, start + stride, ...`.
pub(crate) struct Tail<T, Q> {
    pub start: usize,
    pub stride: usize,
    /// Last index with a possibly nonzero term, if the series is finite.
    pub last: Option<usize>,
    /// No stopping decision is taken before this index (e.g. an explicit prefix).
    pub stop_from: usize,
    pub term: T,
    /// Upper bound on `term(j + stride) / term(j)` valid for every `j >= k`.
    pub ratio_sup: Q,
}

impl<T, Q> Tail<T, Q>
where
    T: Fn(usize) -> f64,
    Q: Fn(usize) -> f64,
{
    /// Returns `(value, error_bound)`.
    pub(crate) fn sum(&self) -> Result<(f64, f64)> {
        let mut acc = Neumaier::default();
        let mut k = self.start;
        let mut count = 0usize;
        loop {
            if self.last.is_some_and(|l| k > l) {
                let v = acc.value();
                return Ok((v, SUM_ROUNDING * v));
            }
            acc.add((self.term)(k));
            count += 1;
            let next_k = k + self.stride;
            if self.last.is_some_and(|l| next_k > l) {
                let v = acc.value();
                return Ok((v, SUM_ROUNDING * v));
            }
            if next_k >= self.stop_from {
                let q = (self.ratio_sup)(next_k);
                if q < 1.0 {
                    let next = (self.term)(next_k);
                    let remainder = next / (1.0 - q);
                    let v = acc.value();
                    if remainder <= STOP_FRACTION * v || remainder == 0.0 {
                        return Ok((v, remainder + SUM_ROUNDING * v));
                    }
                }
            }
            if count >= MAX_TERMS {
                return Err(Error::Capability(format!(
                    "series did not reach its stopping bound within {MAX_TERMS} terms"
                )));
            }
            k = next_k;
        }
    }
}
