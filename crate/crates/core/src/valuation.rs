//! Exact p-adic valuations of integers, factorials, and hyperfactorials.
//!
//! The hyperfactorial H_f(n) = 1^1 2^2 3^3 ... n^n admits several routes to
//! the same valuation, all implemented here:
//!
//! * [`vp_hyperfactorial_direct`] — the defining sum `sum i * v_p(i)` over
//!   multiples of p,
//! * [`vp_hyperfactorial_closed_form`] — the factorial-valuation closed form
//!   `p * floor(n/p) * v_p(n!) - p * sum_{i=1}^{floor(n/p)-1} v_p((p*i)!)`,
//! * [`vp_hyperfactorial_double_sum`] — the same closed form with every
//!   factorial valuation expanded into its floor-division series,
//! * [`vp_hyperfactorial_recurrence_step`] — the one-step recurrence
//!   `v_p[H_f(n)] = v_p[H_f(n-1)] + n * v_p(n)` for incremental table builds.
//!
//! All results are [`Valuation`]s (`u128`) and every product or sum that
//! could conceivably wrap is overflow-checked; an overflow reports
//! [`Error::Overflow`] rather than wrapping silently. For any `n: u64` the
//! hyperfactorial valuation itself fits comfortably: the largest case is
//! p = 2, where `v_2[H_f(n)] < n^2 / 2 + n * 64 < 2^128`, and the closed
//! form's leading term is bounded by `n * v_p(n!) <= n * (n - 1) < 2^128`.
//! The checks therefore never fire for valid inputs; they exist to keep the
//! exactness contract unconditional.

use crate::error::{Error, Result};
use crate::primes::Prime;

/// An exact non-negative valuation exponent. 128 bits cover any `u64` input.
pub type Valuation = u128;

/// Both terms of the factorial-valuation closed form, exposed so callers can
/// inspect the decomposition (e.g. 80 - 30 = 50 for p = 2, n = 10).
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct ClosedFormTerms {
    /// `p * floor(n/p) * v_p(n!)`
    pub leading: Valuation,
    /// `p * sum_{i=1}^{floor(n/p)-1} v_p((p*i)!)`
    pub correction: Valuation,
    /// `leading - correction`
    pub value: Valuation,
}

/// Largest e such that p^e divides m. Errors on m = 0, where no finite
/// exponent exists.
pub fn vp_int(p: Prime, m: u64) -> Result<Valuation> {
    if m == 0 {
        return Err(Error::ValuationOfZero);
    }
    let p = p.get();
    let mut m = m;
    let mut exponent: Valuation = 0;
    while m.is_multiple_of(p) {
        m /= p;
        exponent += 1;
    }
    Ok(exponent)
}

/// v_p(n!) by the floor-division series `sum_{k>=1} floor(n / p^k)`.
///
/// Computed with a running quotient (`q <- floor(q/p)` until zero) so no
/// power p^k is ever materialized. Total: the sum is strictly below n.
pub fn vp_factorial(p: Prime, n: u64) -> Valuation {
    let p = p.get();
    let mut quotient = n;
    let mut total: Valuation = 0;
    while quotient > 0 {
        quotient /= p;
        total += quotient as Valuation;
    }
    total
}

/// v_p(n!) by the base-p digit-sum identity `(n - s_p(n)) / (p - 1)`.
///
/// Kept as an independent cross-check of [`vp_factorial`]; the two must
/// agree on every input.
pub fn vp_factorial_digitsum(p: Prime, n: u64) -> Valuation {
    let p = p.get();
    let mut quotient = n;
    let mut digit_sum: u64 = 0;
    while quotient > 0 {
        digit_sum += quotient % p;
        quotient /= p;
    }
    debug_assert_eq!((n - digit_sum) % (p - 1), 0);
    ((n - digit_sum) / (p - 1)) as Valuation
}

/// v_p[H_f(n)] by the defining sum `sum_{i=1}^{n} i * v_p(i)`.
///
/// Only multiples of p contribute (v_p of everything else is zero), so the
/// loop walks them in ascending order — deterministic output for golden
/// files and O(n/p) valuation calls.
pub fn vp_hyperfactorial_direct(p: Prime, n: u64) -> Result<Valuation> {
    const CONTEXT: &str = "hyperfactorial direct sum";
    let step = p.get();
    let mut total: Valuation = 0;
    let mut m = step;
    while m <= n {
        let term = (m as Valuation)
            .checked_mul(vp_int(p, m)?)
            .ok_or(Error::Overflow { context: CONTEXT })?;
        total = total
            .checked_add(term)
            .ok_or(Error::Overflow { context: CONTEXT })?;
        match m.checked_add(step) {
            Some(next) => m = next,
            None => break,
        }
    }
    Ok(total)
}

/// v_p[H_f(n)] by the factorial-valuation closed form.
pub fn vp_hyperfactorial_closed_form(p: Prime, n: u64) -> Result<Valuation> {
    Ok(vp_hyperfactorial_closed_form_terms(p, n)?.value)
}

/// The closed form with its two terms reported separately.
///
/// `v_p[H_f(n)] = p * floor(n/p) * v_p(n!) - p * sum_{i=1}^{floor(n/p)-1} v_p((p*i)!)`,
/// with the empty-sum convention: for `floor(n/p) <= 1` the correction is 0,
/// and for `floor(n/p) = 0` both terms vanish.
pub fn vp_hyperfactorial_closed_form_terms(p: Prime, n: u64) -> Result<ClosedFormTerms> {
    const CONTEXT: &str = "hyperfactorial closed form";
    let base = p.get();
    let quotient = n / base;
    if quotient == 0 {
        return Ok(ClosedFormTerms {
            leading: 0,
            correction: 0,
            value: 0,
        });
    }
    // base * quotient <= n, so the first factor fits u64; the product with
    // v_p(n!) is the quantity that needs 128 bits.
    let leading = ((base * quotient) as Valuation)
        .checked_mul(vp_factorial(p, n))
        .ok_or(Error::Overflow { context: CONTEXT })?;
    let mut correction_sum: Valuation = 0;
    for i in 1..quotient {
        correction_sum = correction_sum
            .checked_add(vp_factorial(p, base * i))
            .ok_or(Error::Overflow { context: CONTEXT })?;
    }
    let correction = (base as Valuation)
        .checked_mul(correction_sum)
        .ok_or(Error::Overflow { context: CONTEXT })?;
    let value = leading
        .checked_sub(correction)
        .ok_or(Error::Overflow { context: CONTEXT })?;
    Ok(ClosedFormTerms {
        leading,
        correction,
        value,
    })
}

/// v_p[H_f(n)] with every factorial valuation expanded into floor divisions:
///
/// `p * floor(n/p) * sum_k floor(n/p^k) - p * sum_{i=1}^{floor(n/p)-1} sum_k floor(i/p^(k-1))`.
///
/// Evaluated literally: the inner exponent is k - 1, so each inner series
/// starts at the term i itself. Series truncate once a quotient reaches zero.
pub fn vp_hyperfactorial_double_sum(p: Prime, n: u64) -> Result<Valuation> {
    const CONTEXT: &str = "hyperfactorial double sum";
    let base = p.get();
    let outer_factor = n / base;
    if outer_factor == 0 {
        return Ok(0);
    }
    let mut outer_series: Valuation = 0;
    let mut quotient = n;
    while quotient > 0 {
        quotient /= base;
        outer_series += quotient as Valuation;
    }
    let minuend = ((base * outer_factor) as Valuation)
        .checked_mul(outer_series)
        .ok_or(Error::Overflow { context: CONTEXT })?;
    let mut inner_total: Valuation = 0;
    for i in 1..outer_factor {
        let mut series: Valuation = i as Valuation; // k = 1 term: floor(i / p^0)
        let mut quotient = i / base;
        while quotient > 0 {
            series += quotient as Valuation;
            quotient /= base;
        }
        inner_total = inner_total
            .checked_add(series)
            .ok_or(Error::Overflow { context: CONTEXT })?;
    }
    let subtrahend = (base as Valuation)
        .checked_mul(inner_total)
        .ok_or(Error::Overflow { context: CONTEXT })?;
    minuend
        .checked_sub(subtrahend)
        .ok_or(Error::Overflow { context: CONTEXT })
}

/// One step of the recurrence `v_p[H_f(n)] = v_p[H_f(n-1)] + n * v_p(n)`.
///
/// `previous` must be v_p[H_f(n-1)]. When p does not divide n the step adds
/// nothing. Errors on n = 0 (the step would need v_p(0)).
pub fn vp_hyperfactorial_recurrence_step(
    p: Prime,
    n: u64,
    previous: Valuation,
) -> Result<Valuation> {
    const CONTEXT: &str = "hyperfactorial recurrence step";
    if n == 0 {
        return Err(Error::ValuationOfZero);
    }
    if !n.is_multiple_of(p.get()) {
        return Ok(previous);
    }
    let term = (n as Valuation)
        .checked_mul(vp_int(p, n)?)
        .ok_or(Error::Overflow { context: CONTEXT })?;
    previous
        .checked_add(term)
        .ok_or(Error::Overflow { context: CONTEXT })
}
