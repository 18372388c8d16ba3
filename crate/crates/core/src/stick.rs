//! Broken-stick problem: a unit stick cut twice, either with both cut points
//! chosen at once or with the second cut made on one of the two first pieces.
//!
//! With parallel cuts the pieces form a triangle with probability 1/4. With
//! sequential cuts, given the smaller first piece has length `x`, the second cut
//! lands in the favourable stretch of the larger piece with probability
//! `x / (1 - x)`. The smaller piece's length has density 2 on [0, 1/2], so
//! always cutting the larger piece succeeds with `2 * int_0^{1/2} x/(1-x) dx =
//! 2 ln 2 - 1`, and picking a piece by a fair coin halves that to `ln 2 - 1/2`
//! (about 0.193147). Cutting the smaller piece never yields a triangle.

use serde::{Deserialize, Serialize};

use crate::rng::RngStream;
use crate::samplers::MAX_REJECTIONS;
use crate::{Error, Result, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StickPieces {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl StickPieces {
    /// Returns `None` unless every piece is strictly positive.
    pub fn new(a: f64, b: f64, c: f64) -> Option<Self> {
        (a > 0.0 && b > 0.0 && c > 0.0).then_some(Self { a, b, c })
    }

    pub fn longest(&self) -> f64 {
        self.a.max(self.b).max(self.c)
    }

    pub fn total(&self) -> f64 {
        self.a + self.b + self.c
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CutPolicy {
    /// Fair coin between the two first pieces.
    RandomPiece,
    LargerPiece,
    SmallerPiece,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StickMode {
    Parallel,
    Sequential(CutPolicy),
}

/// Pieces produced by cutting the unit stick at `u1` and `u2` (any order).
pub fn pieces_from_cuts(u1: f64, u2: f64) -> Option<StickPieces> {
    let (lo, hi) = if u1 <= u2 { (u1, u2) } else { (u2, u1) };
    StickPieces::new(lo, hi - lo, 1.0 - hi)
}

pub fn cut_parallel(rng: &mut RngStream) -> Result<StickPieces> {
    for _ in 0..MAX_REJECTIONS {
        if let Some(p) = pieces_from_cuts(rng.uniform(), rng.uniform()) {
            return Ok(p);
        }
    }
    Err(Error::NonConvergence {
        attempts: MAX_REJECTIONS,
    })
}

/// Second cut at fraction `v` of the piece chosen by `policy` after a first cut
/// at `u`; `coin` is only consulted by [`CutPolicy::RandomPiece`] (true picks the
/// left piece).
pub fn pieces_from_sequential(policy: CutPolicy, u: f64, coin: bool, v: f64) -> Option<StickPieces> {
    let (left, right) = (u, 1.0 - u);
    let cut_left = match policy {
        CutPolicy::RandomPiece => coin,
        CutPolicy::LargerPiece => left >= right,
        CutPolicy::SmallerPiece => left < right,
    };
    let (chosen, other) = if cut_left { (left, right) } else { (right, left) };
    let first = v * chosen;
    StickPieces::new(other, first, chosen - first)
}

pub fn cut_sequential(policy: CutPolicy, rng: &mut RngStream) -> Result<StickPieces> {
    for _ in 0..MAX_REJECTIONS {
        let u = rng.uniform();
        let coin = match policy {
            CutPolicy::RandomPiece => rng.coin(),
            _ => false,
        };
        let v = rng.uniform();
        if let Some(p) = pieces_from_sequential(policy, u, coin, v) {
            return Ok(p);
        }
    }
    Err(Error::NonConvergence {
        attempts: MAX_REJECTIONS,
    })
}

/// Triangle inequality for pieces of a unit stick: every piece below 1/2.
#[inline]
pub fn forms_triangle(p: &StickPieces) -> bool {
    p.longest() < 0.5
}

pub fn trial(mode: StickMode, rng: &mut RngStream) -> Result<bool> {
    let pieces = match mode {
        StickMode::Parallel => cut_parallel(rng)?,
        StickMode::Sequential(policy) => cut_sequential(policy, rng)?,
    };
    Ok(forms_triangle(&pieces))
}

pub fn estimate_probability(mode: StickMode, trials: u64, rng: &mut RngStream) -> Result<f64> {
    if trials == 0 {
        return Err(Error::Domain("trials must be at least 1".into()));
    }
    let mut hits = 0u64;
    for _ in 0..trials {
        hits += trial(mode, rng)? as u64;
    }
    Ok(hits as f64 / trials as f64)
}

/// Conditional success probability `x / (1 - x)` of the second cut, given the
/// smaller first piece has length `x` in [0, 1/2].
pub fn pdf_second_cut<T: Scalar>(x: T) -> Result<T> {
    let half = T::lit(0.5);
    if !(x >= T::zero() && x <= half) {
        return Err(Error::Domain(format!("x = {x} outside [0, 1/2]")));
    }
    Ok(x / (T::one() - x))
}

/// Composite Simpson's rule over `steps` (even) subintervals.
#[allow(clippy::neg_cmp_op_on_partial_ord)] // NaN must fail the check
pub fn simpson<T: Scalar, F: Fn(T) -> T>(f: F, lo: T, hi: T, steps: usize) -> Result<T> {
    if steps < 2 || !steps.is_multiple_of(2) {
        return Err(Error::Domain(format!("Simpson needs an even step count >= 2, got {steps}")));
    }
    if !(lo < hi) {
        return Err(Error::Domain(format!("empty interval [{lo}, {hi}]")));
    }
    let n = T::count(steps as u64);
    let h = (hi - lo) / n;
    let (two, four) = (T::lit(2.0), T::lit(4.0));
    let mut odd = T::zero();
    let mut even = T::zero();
    for i in 1..steps {
        let x = lo + h * T::count(i as u64);
        if i % 2 == 1 {
            odd = odd + f(x);
        } else {
            even = even + f(x);
        }
    }
    Ok(h / T::lit(3.0) * (f(lo) + f(hi) + four * odd + two * even))
}

/// Integral of [`pdf_second_cut`] over [lo, hi] within [0, 1/2].
pub fn integrate_success<T: Scalar>(lo: T, hi: T, steps: usize) -> Result<T> {
    let half = T::lit(0.5);
    if !(lo >= T::zero() && lo < hi && hi <= half) {
        return Err(Error::Domain(format!(
            "bounds [{lo}, {hi}] must satisfy 0 <= lo < hi <= 1/2"
        )));
    }
    simpson(|x: T| x / (T::one() - x), lo, hi, steps)
}

pub fn analytic_probability<T: Scalar>(mode: StickMode) -> T {
    let ln2 = T::LN_2();
    match mode {
        StickMode::Parallel => T::lit(0.25),
        // (1/2) * (2 * int_0^{1/2} x/(1-x) dx)
        StickMode::Sequential(CutPolicy::RandomPiece) => ln2 - T::lit(0.5),
        StickMode::Sequential(CutPolicy::LargerPiece) => T::lit(2.0) * ln2 - T::one(),
        StickMode::Sequential(CutPolicy::SmallerPiece) => T::zero(),
    }
}
