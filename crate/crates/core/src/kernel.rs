//! Generic discounting kernels.
//!
//! Every scheme is written once over [`PvScalar`] and instantiated at `f64`
//! by the public modules and at `BigRational` by the oracle. The operation
//! order inside each loop is part of the crate contract: tests freeze values
//! that depend on it, so do not "simplify" the arithmetic.

use crate::scalar::PvScalar;

/// Present value of `flows` at per-period rate `rate`:
/// sum of C_m / (1+r)^m for m = 1..=N, accumulated in ascending m with the
/// discount factor maintained by repeated division.
pub fn pv<S: PvScalar>(flows: &[S], rate: &S) -> S {
    let onepr = S::one() + rate.clone();
    let mut d = S::one();
    let mut acc = S::zero();
    for c in flows {
        d = d / onepr.clone();
        acc = acc + c.clone() * d.clone();
    }
    acc
}

/// Partial present value at period `k`: the value *as seen from period k*
/// of the flows strictly after k, sum of C_m / (1+r)^(m-k) for m = k+1..=N.
/// `k = 0` reproduces [`pv`] bit for bit; `k = N` is an empty sum.
pub fn partial_pv<S: PvScalar>(flows: &[S], rate: &S, k: usize) -> S {
    let onepr = S::one() + rate.clone();
    let mut d = S::one();
    let mut acc = S::zero();
    for c in &flows[k..] {
        d = d / onepr.clone();
        acc = acc + c.clone() * d.clone();
    }
    acc
}

/// Forward recursion PV_k = (1+r) * PV_{k-1} - C_k seeded with `pv0`.
/// Returns the full series PV_0..PV_N (N+1 values).
pub fn forward_series<S: PvScalar>(flows: &[S], rate: &S, pv0: S) -> Vec<S> {
    let onepr = S::one() + rate.clone();
    let mut values = Vec::with_capacity(flows.len() + 1);
    let mut v = pv0;
    values.push(v.clone());
    for c in flows {
        v = onepr.clone() * v - c.clone();
        values.push(v.clone());
    }
    values
}

/// Backward recursion PV_{k-1} = (PV_k + C_k) / (1+r) anchored at PV_N = 0.
/// Returns the full series PV_0..PV_N (N+1 values).
pub fn backward_series<S: PvScalar>(flows: &[S], rate: &S) -> Vec<S> {
    let onepr = S::one() + rate.clone();
    let n = flows.len();
    let mut values = vec![S::zero(); n + 1];
    let mut v = S::zero();
    for k in (1..=n).rev() {
        v = (v + flows[k - 1].clone()) / onepr.clone();
        values[k - 1] = v.clone();
    }
    values
}

/// Derivative of NPV with respect to the rate:
/// sum of -m * C_m / (1+r)^(m+1) for m = 1..=N.
pub fn npv_derivative<S: PvScalar>(flows: &[S], rate: &S) -> S {
    let onepr = S::one() + rate.clone();
    let mut d = S::one() / onepr.clone();
    let mut acc = S::zero();
    for (i, c) in flows.iter().enumerate() {
        d = d / onepr.clone();
        let m = S::from_usize(i + 1).expect("period count representable");
        acc = acc - m * c.clone() * d.clone();
    }
    acc
}
