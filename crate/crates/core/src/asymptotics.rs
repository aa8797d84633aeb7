//! First-order growth estimates and the limit ratios linking v_p(n!) to
//! v_p[H_f(n)].
//!
//! The two point estimates are `v_p(n!) ~ n/(p-1)` and
//! `v_p[H_f(n)] ~ n(n+p)/(2(p-1))`. Both are kept as exact rationals first
//! and floats second: the printed value 83917 for p = 7, n = 1000 is the
//! half-up rounding of 1007000/12, and tests pin the rational, not a float
//! artifact. The logarithmic correction to the factorial estimate is known
//! to exist but comes with no usable constant, so it is never added to the
//! point value.
//!
//! Two limits follow from the estimates and are exposed as finite-n ratios:
//! `v_p(n!)/v_p[H_f(n)] -> 0` and `[v_p(n!)]^2 / v_p[H_f(n)] -> 2/(p-1)`.
//! Inverting the second gives the mutual estimators
//! [`estimate_factorial_from_hyper`] and [`estimate_hyper_from_factorial`].

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::primes::Prime;
use crate::valuation::{vp_factorial, vp_hyperfactorial_closed_form, Valuation};

/// Default sampling schedule for convergence reports: powers of ten at
/// desk-scale runtimes with visible trends.
pub const DEFAULT_SCHEDULE: [u64; 4] = [100, 1_000, 10_000, 100_000];

/// An exact non-negative rational, stored in lowest terms. Float and
/// rounded renderings are derived on demand so they can never go stale.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Estimate {
    num: u128,
    den: u128,
}

impl Estimate {
    /// Reduce num/den to lowest terms. `den` must be nonzero.
    pub fn new(num: u128, den: u128) -> Self {
        assert!(den != 0, "rational denominator must be nonzero");
        let g = num.gcd(&den);
        if g == 0 {
            // num == 0 and den == 0 is excluded; num == 0 normalizes to 0/1.
            return Estimate { num: 0, den: 1 };
        }
        Estimate {
            num: num / g,
            den: den / g,
        }
    }

    pub fn numerator(&self) -> u128 {
        self.num
    }

    pub fn denominator(&self) -> u128 {
        self.den
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    /// Binary floating render of the exact value.
    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Nearest integer with halves rounding up (83916.67 -> 83917,
    /// 2.5 -> 3).
    pub fn rounded_half_up(&self) -> u128 {
        let (quotient, remainder) = self.num.div_rem(&self.den);
        if remainder >= self.den - remainder {
            quotient + 1
        } else {
            quotient
        }
    }
}

impl std::fmt::Display for Estimate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Which of the two limit ratios a report tracks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RatioKind {
    /// v_p(n!) / v_p[H_f(n)], limit 0.
    Linear,
    /// [v_p(n!)]^2 / v_p[H_f(n)], limit 2/(p-1).
    Quadratic,
}

/// One sampled ratio.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sample {
    pub n: u64,
    pub ratio: f64,
}

/// Ratio samples along an ascending schedule, with the limit they approach.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub p: Prime,
    pub kind: RatioKind,
    pub samples: Vec<Sample>,
    pub target: Estimate,
    /// |ratio - target| at the largest sampled n; `None` for an empty
    /// schedule.
    pub max_abs_error_tail: Option<f64>,
}

/// The factorial point estimate n/(p-1), exact.
pub fn factorial_asymptote(p: Prime, n: u64) -> Estimate {
    Estimate::new(n as u128, (p.get() - 1) as u128)
}

/// The hyperfactorial point estimate n(n+p)/(2(p-1)), exact.
pub fn hyperfactorial_asymptote(p: Prime, n: u64) -> Result<Estimate> {
    let n = n as u128;
    let p = p.get() as u128;
    let num = n
        .checked_mul(n + p)
        .ok_or(Error::Overflow {
            context: "hyperfactorial asymptote numerator",
        })?;
    Ok(Estimate::new(num, 2 * (p - 1)))
}

pub(crate) fn linear_ratio_value(fact: Valuation, hyper: Valuation) -> f64 {
    fact as f64 / hyper as f64
}

pub(crate) fn quadratic_ratio_value(fact: Valuation, hyper: Valuation) -> f64 {
    (fact as f64) * (fact as f64) / hyper as f64
}

/// v_p(n!) / v_p[H_f(n)] at a single n, rendered as a float.
/// Errors for n < p, where the denominator valuation is zero.
pub fn ratio_linear(p: Prime, n: u64) -> Result<f64> {
    let hyper = vp_hyperfactorial_closed_form(p, n)?;
    if hyper == 0 {
        return Err(Error::RatioUndefined { p: p.get(), n });
    }
    Ok(linear_ratio_value(vp_factorial(p, n), hyper))
}

/// [v_p(n!)]^2 / v_p[H_f(n)] at a single n. The limit this approaches is
/// [`quadratic_target`]. Errors for n < p.
pub fn ratio_quadratic(p: Prime, n: u64) -> Result<f64> {
    let hyper = vp_hyperfactorial_closed_form(p, n)?;
    if hyper == 0 {
        return Err(Error::RatioUndefined { p: p.get(), n });
    }
    Ok(quadratic_ratio_value(vp_factorial(p, n), hyper))
}

/// The quadratic ratio's limit, 2/(p-1), exact.
pub fn quadratic_target(p: Prime) -> Estimate {
    Estimate::new(2, (p.get() - 1) as u128)
}

/// Recover v_p(n!) from a hyperfactorial valuation: sqrt(2h/(p-1)).
pub fn estimate_factorial_from_hyper(p: Prime, hyper: Valuation) -> f64 {
    (2.0 * hyper as f64 / (p.get() - 1) as f64).sqrt()
}

/// Recover v_p[H_f(n)] from a factorial valuation: (p-1) f^2 / 2, exact.
pub fn estimate_hyper_from_factorial(p: Prime, fact: Valuation) -> Result<Estimate> {
    const CONTEXT: &str = "hyperfactorial estimate from factorial valuation";
    let squared = fact
        .checked_mul(fact)
        .ok_or(Error::Overflow { context: CONTEXT })?;
    let num = ((p.get() - 1) as u128)
        .checked_mul(squared)
        .ok_or(Error::Overflow { context: CONTEXT })?;
    Ok(Estimate::new(num, 2))
}

/// Evaluate the chosen ratio along `schedule` (strictly increasing, every
/// entry at least p). The target is 0 for the linear ratio and 2/(p-1) for
/// the quadratic one.
pub fn convergence_report(p: Prime, schedule: &[u64], kind: RatioKind) -> Result<ConvergenceReport> {
    if !schedule.windows(2).all(|pair| pair[0] < pair[1]) {
        return Err(Error::UnsortedSchedule);
    }
    let target = match kind {
        RatioKind::Linear => Estimate::new(0, 1),
        RatioKind::Quadratic => quadratic_target(p),
    };
    let mut samples = Vec::with_capacity(schedule.len());
    for &n in schedule {
        let ratio = match kind {
            RatioKind::Linear => ratio_linear(p, n)?,
            RatioKind::Quadratic => ratio_quadratic(p, n)?,
        };
        samples.push(Sample { n, ratio });
    }
    let max_abs_error_tail = samples
        .last()
        .map(|sample| (sample.ratio - target.as_f64()).abs());
    Ok(ConvergenceReport {
        p,
        kind,
        samples,
        target,
        max_abs_error_tail,
    })
}
