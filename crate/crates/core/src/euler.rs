//! Euler transformation of `a_1 - a_2 + a_3 - ...`:
//!
//! ```text
//! E_n = a_1/2 + Δa_1/2^2 + ... + Δ^{n-1} a_1 / 2^n
//! 0 < L - E_n <= Δ^n a_1 / 2^n
//! ```
//!
//! `E_n` coincides with the ladder value `T^(n-1)_0`. The hybrid scheme sums
//! the first `m` terms directly and applies the transform to the tail
//! `b_n = a_{m+n}`, whose signed sum is `(-1)^m (b_1 - b_2 + ...)`.
//!
//! For sampled sources the monotone-differences hypothesis is checked on a
//! finite window only; the result is certified relative to that check.

use crate::differences::{check_order, require_monotone, ORDER_GUARD};
use crate::error::{Error, Result};
use crate::numerics::ExactRational;
use crate::terms::{partial_sum, Backend, Scalar, TermSource};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AccelerationMethod {
    Euler { n: u32 },
    Hybrid { head: u64, tail: u32 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct AccelerationResult {
    pub method: AccelerationMethod,
    pub value: Scalar,
    pub error_upper: Scalar,
    /// Whether `value < L` is guaranteed.
    pub underestimates: bool,
    pub terms_consumed: u64,
    pub backend: Backend,
}

/// `Δ^r a_1` for `r = 0..=order`, from the recurrence on `a_1..a_{order+1}`.
fn leading_differences(src: &TermSource, order: u32) -> Result<Vec<ExactRational>> {
    let mut row = (1..=order as u64 + 1)
        .map(|j| src.spec.exact_term(j))
        .collect::<Result<Vec<_>>>()?;
    let mut leading = Vec::with_capacity(row.len());
    while !row.is_empty() {
        leading.push(row[0].clone());
        row = row.windows(2).map(|w| &w[0] - &w[1]).collect();
    }
    Ok(leading)
}

fn leading_differences_f64(src: &TermSource, order: u32) -> Result<Vec<f64>> {
    let mut row = (1..=order as u64 + 1)
        .map(|j| src.spec.float_term(j))
        .collect::<Result<Vec<_>>>()?;
    let mut leading = Vec::with_capacity(row.len());
    while !row.is_empty() {
        leading.push(row[0]);
        row = row.windows(2).map(|w| w[0] - w[1]).collect();
    }
    Ok(leading)
}

fn check_euler_order(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "the Euler partial sum needs n >= 1".into(),
        ));
    }
    check_order(n)
}

/// `E_n` and its error bound `Δ^n a_1 / 2^n`.
pub fn euler_partial_sum(src: &TermSource, n: u32) -> Result<AccelerationResult> {
    check_euler_order(n)?;
    require_monotone(src, n, (1, 1))?;
    let (value, error_upper) = match src.backend {
        Backend::Exact => {
            let d = leading_differences(src, n)?;
            let value: ExactRational = (0..n).map(|r| d[r as usize].halve(r + 1)).sum();
            (Scalar::Exact(value), Scalar::Exact(d[n as usize].halve(n)))
        }
        Backend::Float64 => {
            let d = leading_differences_f64(src, n)?;
            let value: f64 = (0..n)
                .map(|r| d[r as usize] / 2f64.powi(r as i32 + 1))
                .sum();
            (
                Scalar::Float(value),
                Scalar::Float(d[n as usize] / 2f64.powi(n as i32)),
            )
        }
    };
    Ok(AccelerationResult {
        method: AccelerationMethod::Euler { n },
        value,
        error_upper,
        underestimates: true,
        terms_consumed: n as u64,
        backend: src.backend,
    })
}

/// `(E_n, E_n + Δ^n a_1 / 2^n)`, an interval holding the limit strictly inside
/// on the left.
pub fn euler_enclosure(src: &TermSource, n: u32) -> Result<(ExactRational, ExactRational)> {
    let exact = euler_partial_sum(&TermSource::exact(src.spec.clone()), n)?;
    let value = exact.value.into_exact().expect("exact backend");
    let width = exact.error_upper.into_exact().expect("exact backend");
    let upper = &value + &width;
    Ok((value, upper))
}

/// Smallest `n` with `Δ^n a_1 / 2^n <= eps`.
pub fn first_n_euler(src: &TermSource, eps: &ExactRational) -> Result<u32> {
    if !eps.is_positive() {
        return Err(Error::InvalidArgument(format!(
            "eps = {eps} must be positive"
        )));
    }
    let certified = src.spec.certified_by_family();
    let d = if certified {
        Some(leading_differences(src, ORDER_GUARD)?)
    } else {
        None
    };
    for n in 1..=ORDER_GUARD {
        let bound = match &d {
            Some(d) => d[n as usize].halve(n),
            None => {
                require_monotone(src, n, (1, 1))?;
                leading_differences(src, n)?
                    .swap_remove(n as usize)
                    .halve(n)
            }
        };
        if &bound <= eps {
            return Ok(n);
        }
    }
    Err(Error::Unreachable {
        eps: eps.to_string(),
        limit: ORDER_GUARD as u64,
    })
}

/// `S_m + (-1)^m E_j[b]` with `b_n = a_{m+n}`.
pub fn hybrid_sum(src: &TermSource, head: u64, tail: u32) -> Result<AccelerationResult> {
    let shifted = src.shifted(head);
    let euler = euler_partial_sum(&shifted, tail)?;
    let partial = partial_sum(src, head)?;
    let value = match (partial, euler.value) {
        (Scalar::Exact(s), Scalar::Exact(e)) => Scalar::Exact(s + e.alternate(head)),
        (s, e) => {
            let e = e.to_f64();
            Scalar::Float(s.to_f64() + if head.is_multiple_of(2) { e } else { -e })
        }
    };
    Ok(AccelerationResult {
        method: AccelerationMethod::Hybrid { head, tail },
        value,
        error_upper: euler.error_upper,
        underestimates: head.is_multiple_of(2),
        terms_consumed: head + tail as u64,
        backend: src.backend,
    })
}
