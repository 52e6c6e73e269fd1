//! Numeric abstractions shared by the CRF and the scoring code.
//!
//! Inference and training are written once against [`Real`] and instantiated
//! for `f32` and `f64`. Metric arithmetic is written against [`Scalar`], which
//! additionally admits exact rationals so that percentages can be computed
//! without rounding until they are displayed.

use std::fmt::Debug;
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_rational::Ratio;
use num_traits::{Float, FromPrimitive, Num, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Floating point type used for CRF weights and log-space inference.
pub trait Real:
    Float
    + FromPrimitive
    + ToPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Sum
    + Debug
    + Default
    + Send
    + Sync
    + Serialize
    + DeserializeOwned
    + 'static
{
    /// Converts an `f64` literal, panicking only for types that cannot hold it.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Numeric type for ratios such as precision and recall.
pub trait Scalar:
    Num + Copy + PartialOrd + FromPrimitive + ToPrimitive + Debug + Send + Sync
{
    /// Rounds to the nearest integer, halves away from zero.
    fn round_half_away(self) -> Self;

    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }
}

impl Scalar for f32 {
    fn round_half_away(self) -> Self {
        self.round()
    }
}

impl Scalar for f64 {
    fn round_half_away(self) -> Self {
        self.round()
    }
}

impl Scalar for Ratio<i64> {
    fn round_half_away(self) -> Self {
        self.round()
    }
}

/// `100 * num / den`, or zero when `den` is zero.
pub fn percent<S: Scalar>(num: usize, den: usize) -> S {
    if den == 0 {
        return S::zero();
    }
    S::from_count(num) * S::from_count(100) / S::from_count(den)
}

/// Harmonic mean `2PR / (P + R)`, zero when both are zero.
pub fn f_measure<S: Scalar>(precision: S, recall: S) -> S {
    let sum = precision + recall;
    if sum == S::zero() {
        return S::zero();
    }
    (S::one() + S::one()) * precision * recall / sum
}

/// Formats a value with exactly two decimals, rounding once at the end.
pub fn format_2dp<S: Scalar>(x: S) -> String {
    let hundredths = (x * S::from_count(100)).round_half_away();
    let h = hundredths
        .to_i64()
        .expect("percentage fits in i64 after scaling");
    let sign = if h < 0 { "-" } else { "" };
    let h = h.unsigned_abs();
    format!("{sign}{}.{:02}", h / 100, h % 100)
}

/// Numerically stable `ln(sum(exp(x)))`. Returns negative infinity on empty input.
pub fn log_sum_exp<F: Real>(values: impl IntoIterator<Item = F> + Clone) -> F {
    let max = values
        .clone()
        .into_iter()
        .fold(F::neg_infinity(), |m, v| if v > m { v } else { m });
    if max == F::neg_infinity() {
        return max;
    }
    let sum: F = values.into_iter().map(|v| (v - max).exp()).sum();
    max + sum.ln()
}
