//! Scalar abstraction for the discounting kernels.
//!
//! All present-value recurrences are written once, generically, over
//! [`PvScalar`]; the crate then instantiates them at `f64` for working
//! precision and at [`BigRational`](num_rational::BigRational) for the
//! exact-arithmetic oracle. `f32` satisfies the bound too, which is handy
//! for demonstrating the same instabilities at lower precision.

use num_traits::{FromPrimitive, Num, Signed};

/// Arithmetic required by the discounting kernels: ring operations with
/// division, signs, ordering, and lifting of small integers (period
/// numbers). Satisfied by `f32`, `f64`, and the arbitrary-precision
/// rationals used as the oracle.
pub trait PvScalar: Num + Signed + PartialOrd + FromPrimitive + Clone {}

impl<T: Num + Signed + PartialOrd + FromPrimitive + Clone> PvScalar for T {}

/// Unit in the last place of `x`: the gap between `|x|` and the next
/// representable number above it. `ulp(0)` is the smallest positive
/// subnormal.
pub fn ulp(x: f64) -> f64 {
    let a = x.abs();
    if a.is_finite() {
        a.next_up() - a
    } else {
        f64::NAN
    }
}
