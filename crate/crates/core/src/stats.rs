//! Mergeable summary statistics: mean, exact median, extrema, population
//! variance and standardized skewness.
//!
//! Moments are updated in a single pass (Welford/Terriberry) and combined with
//! the pairwise formulas of Chan and Pébay, so per-chunk accumulators can be
//! reduced in any grouping. Raw values are retained for the exact median.

use serde::{Deserialize, Serialize};

use crate::{Error, Result, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct SummaryStats<T> {
    count: u64,
    mean: T,
    m2: T,
    m3: T,
    min: T,
    max: T,
    values: Vec<T>,
}

/// Finalized statistics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Summary<T> {
    pub mean: T,
    pub median: T,
    pub min: T,
    pub max: T,
    pub variance: T,
    pub skewness: T,
}

impl<T: Scalar> Default for SummaryStats<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Scalar> SummaryStats<T> {
    pub fn new() -> Self {
        Self {
            count: 0,
            mean: T::zero(),
            m2: T::zero(),
            m3: T::zero(),
            min: T::infinity(),
            max: T::neg_infinity(),
            values: Vec::new(),
        }
    }

    pub fn with_capacity(capacity: usize) -> Self {
        Self {
            values: Vec::with_capacity(capacity),
            ..Self::new()
        }
    }

    pub fn accumulate(&mut self, x: T) -> Result<()> {
        if !x.is_finite() {
            return Err(Error::NonFinite);
        }
        let n1 = T::count(self.count);
        self.count += 1;
        let n = T::count(self.count);
        let delta = x - self.mean;
        let delta_n = delta / n;
        let term = delta * delta_n * n1;
        self.mean = self.mean + delta_n;
        self.m3 = self.m3 + term * delta_n * (n - T::lit(2.0)) - T::lit(3.0) * delta_n * self.m2;
        self.m2 = self.m2 + term;
        self.min = self.min.min(x);
        self.max = self.max.max(x);
        self.values.push(x);
        Ok(())
    }

    /// Folds `other` into `self`; equivalent to accumulating `other`'s values.
    pub fn merge(&mut self, other: &Self) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = other.clone();
            return;
        }
        let na = T::count(self.count);
        let nb = T::count(other.count);
        let n = na + nb;
        let delta = other.mean - self.mean;
        let three = T::lit(3.0);

        let m3 = self.m3
            + other.m3
            + delta.powi(3) * na * nb * (na - nb) / (n * n)
            + three * delta * (na * other.m2 - nb * self.m2) / n;
        let m2 = self.m2 + other.m2 + delta * delta * na * nb / n;
        let mean = self.mean + delta * nb / n;

        self.count += other.count;
        self.mean = mean;
        self.m2 = m2;
        self.m3 = m3;
        self.min = self.min.min(other.min);
        self.max = self.max.max(other.max);
        self.values.extend_from_slice(&other.values);
    }

    pub fn merged(mut self, other: &Self) -> Self {
        self.merge(other);
        self
    }

    #[inline]
    pub fn count(&self) -> u64 {
        self.count
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn mean(&self) -> Option<T> {
        (self.count > 0).then_some(self.mean)
    }

    pub fn min(&self) -> Option<T> {
        (self.count > 0).then_some(self.min)
    }

    pub fn max(&self) -> Option<T> {
        (self.count > 0).then_some(self.max)
    }

    pub fn median(&self) -> Option<T> {
        if self.values.is_empty() {
            return None;
        }
        let mut v = self.values.clone();
        let n = v.len();
        let mid = n / 2;
        let (lower, upper, _) = v.select_nth_unstable_by(mid, |a, b| a.partial_cmp(b).unwrap());
        let upper = *upper;
        if n % 2 == 1 {
            Some(upper)
        } else {
            let below = lower
                .iter()
                .copied()
                .fold(T::neg_infinity(), |acc, x| acc.max(x));
            Some((below + upper) / T::lit(2.0))
        }
    }

    /// Population variance `m2 / n`.
    pub fn variance(&self) -> Result<T> {
        self.require(2)?;
        Ok((self.m2 / T::count(self.count)).max(T::zero()))
    }

    /// Standardized skewness g1; zero for a constant sample.
    pub fn skewness(&self) -> Result<T> {
        self.require(3)?;
        let n = T::count(self.count);
        let var = self.m2 / n;
        if var <= T::zero() {
            return Ok(T::zero());
        }
        Ok((self.m3 / n) / var.powf(T::lit(1.5)))
    }

    pub fn finalize(&self) -> Result<Summary<T>> {
        self.require(3)?;
        Ok(Summary {
            mean: self.mean,
            median: self.median().expect("non-empty"),
            min: self.min,
            max: self.max,
            variance: self.variance()?,
            skewness: self.skewness()?,
        })
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    fn require(&self, needed: u64) -> Result<()> {
        if self.count < needed {
            Err(Error::InsufficientData {
                needed,
                have: self.count,
            })
        } else {
            Ok(())
        }
    }
}

impl<T: Scalar> Extend<T> for SummaryStats<T> {
    /// Non-finite values are skipped.
    fn extend<I: IntoIterator<Item = T>>(&mut self, iter: I) {
        for x in iter {
            let _ = self.accumulate(x);
        }
    }
}

impl<T: Scalar> FromIterator<T> for SummaryStats<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        let mut s = Self::new();
        s.extend(iter);
        s
    }
}
