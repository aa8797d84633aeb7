//! Timing comparison of the valuation algorithms with built-in agreement
//! checking.
//!
//! Every (algorithm, n) cell is cross-checked for value equality before any
//! timing is recorded: a disagreement aborts the whole run with
//! [`Error::Disagreement`] instead of reporting the speed of a wrong answer.
//! The headline statistic is the median of the timed runs, which is robust
//! to scheduler noise at desk scale; timestamps come from the monotonic
//! [`Instant`] clock at nanosecond resolution.

use std::fmt;
use std::hint::black_box;
use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::oracle::{hyperfactorial_big_bounded, vp_big, DEFAULT_ORACLE_CEILING};
use crate::primes::Prime;
use crate::valuation::{
    vp_hyperfactorial_closed_form, vp_hyperfactorial_direct, vp_hyperfactorial_double_sum,
    Valuation,
};

/// The hyperfactorial valuation algorithms the harness can time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Algorithm {
    #[serde(rename = "direct")]
    Direct,
    #[serde(rename = "theorem1")]
    ClosedForm,
    #[serde(rename = "doublesum")]
    DoubleSum,
    #[serde(rename = "oracle")]
    Oracle,
}

impl Algorithm {
    /// The three closed-form (non-oracle) algorithms, in canonical order.
    pub const CLOSED_FORMS: [Algorithm; 3] =
        [Algorithm::Direct, Algorithm::ClosedForm, Algorithm::DoubleSum];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Direct => "direct",
            Algorithm::ClosedForm => "theorem1",
            Algorithm::DoubleSum => "doublesum",
            Algorithm::Oracle => "oracle",
        }
    }

    fn evaluate(self, p: Prime, n: u64, oracle_ceiling: u64) -> Result<Valuation> {
        match self {
            Algorithm::Direct => vp_hyperfactorial_direct(p, n),
            Algorithm::ClosedForm => vp_hyperfactorial_closed_form(p, n),
            Algorithm::DoubleSum => vp_hyperfactorial_double_sum(p, n),
            Algorithm::Oracle => vp_big(p, &hyperfactorial_big_bounded(n, oracle_ceiling)?),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Timing record for one (algorithm, n) cell. `agreement` is true in every
/// emitted report; a disagreement never produces a report at all.
#[derive(Debug, Clone, Serialize)]
pub struct BenchReport {
    pub algorithm: Algorithm,
    pub p: u64,
    pub n: u64,
    pub repetitions: u32,
    pub median_ns: u128,
    pub min_ns: u128,
    pub agreement: bool,
}

/// Harness configuration.
#[derive(Debug, Clone)]
pub struct BenchOptions {
    /// Timed runs per cell, at least 3. One additional warm-up run per
    /// algorithm doubles as the agreement check.
    pub repetitions: u32,
    /// Run (p, n) cells on separate threads. Timing within each cell stays
    /// single-threaded either way.
    pub parallel: bool,
    /// Cap for the big-integer oracle.
    pub oracle_ceiling: u64,
}

impl Default for BenchOptions {
    fn default() -> Self {
        BenchOptions {
            repetitions: 5,
            parallel: false,
            oracle_ceiling: DEFAULT_ORACLE_CEILING,
        }
    }
}

/// Check that every algorithm produced the same value for one input.
/// Used internally before timing; public so harnesses can validate
/// externally produced result sets the same way.
pub fn verify_agreement(p: u64, n: u64, values: &[(Algorithm, Valuation)]) -> Result<()> {
    for pair in values.windows(2) {
        let (left, left_value) = pair[0];
        let (right, right_value) = pair[1];
        if left_value != right_value {
            return Err(Error::Disagreement {
                p,
                n,
                left: left.name(),
                right: right.name(),
                left_value,
                right_value,
            });
        }
    }
    Ok(())
}

/// Time each algorithm at each n. Reports appear in (n, algorithm) order,
/// deterministic in everything except the timing fields.
pub fn run_bench(
    p: Prime,
    ns: &[u64],
    algorithms: &[Algorithm],
    options: &BenchOptions,
) -> Result<Vec<BenchReport>> {
    if options.repetitions < 3 {
        return Err(Error::TooFewRepetitions(options.repetitions));
    }
    if algorithms.contains(&Algorithm::Oracle) {
        if let Some(&n) = ns.iter().find(|&&n| n > options.oracle_ceiling) {
            return Err(Error::OracleCeiling {
                n,
                ceiling: options.oracle_ceiling,
            });
        }
    }

    if options.parallel {
        let mut cells: Vec<Option<Result<Vec<BenchReport>>>> = ns.iter().map(|_| None).collect();
        std::thread::scope(|scope| {
            for (cell, &n) in cells.iter_mut().zip(ns) {
                scope.spawn(move || {
                    *cell = Some(bench_cell(p, n, algorithms, options));
                });
            }
        });
        let mut reports = Vec::new();
        for cell in cells {
            reports.extend(cell.expect("every cell thread ran")?);
        }
        Ok(reports)
    } else {
        let mut reports = Vec::new();
        for &n in ns {
            reports.extend(bench_cell(p, n, algorithms, options)?);
        }
        Ok(reports)
    }
}

fn bench_cell(
    p: Prime,
    n: u64,
    algorithms: &[Algorithm],
    options: &BenchOptions,
) -> Result<Vec<BenchReport>> {
    // Warm-up pass: evaluates each algorithm once and cross-checks the
    // values before anything is timed.
    let values = algorithms
        .iter()
        .map(|&algorithm| Ok((algorithm, algorithm.evaluate(p, n, options.oracle_ceiling)?)))
        .collect::<Result<Vec<_>>>()?;
    verify_agreement(p.get(), n, &values)?;

    let mut reports = Vec::with_capacity(algorithms.len());
    for &algorithm in algorithms {
        let mut times_ns = Vec::with_capacity(options.repetitions as usize);
        for _ in 0..options.repetitions {
            let start = Instant::now();
            black_box(algorithm.evaluate(black_box(p), black_box(n), options.oracle_ceiling)?);
            times_ns.push(start.elapsed().as_nanos());
        }
        times_ns.sort_unstable();
        let mid = times_ns.len() / 2;
        let median_ns = if times_ns.len() % 2 == 0 {
            (times_ns[mid - 1] + times_ns[mid]) / 2
        } else {
            times_ns[mid]
        };
        reports.push(BenchReport {
            algorithm,
            p: p.get(),
            n,
            repetitions: options.repetitions,
            median_ns,
            min_ns: times_ns[0],
            agreement: true,
        });
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prime(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    #[test]
    fn two_algorithms_one_input() {
        let reports = run_bench(
            prime(2),
            &[10],
            &[Algorithm::Direct, Algorithm::ClosedForm],
            &BenchOptions::default(),
        )
        .unwrap();
        assert_eq!(reports.len(), 2);
        assert!(reports.iter().all(|r| r.agreement));
        assert!(reports.iter().all(|r| r.p == 2 && r.n == 10));
    }

    #[test]
    fn empty_input_list() {
        let reports = run_bench(
            prime(2),
            &[],
            &Algorithm::CLOSED_FORMS,
            &BenchOptions::default(),
        )
        .unwrap();
        assert!(reports.is_empty());
    }

    #[test]
    fn three_agreeing_reports() {
        let reports = run_bench(
            prime(7),
            &[1000],
            &Algorithm::CLOSED_FORMS,
            &BenchOptions::default(),
        )
        .unwrap();
        assert_eq!(reports.len(), 3);
        assert!(reports.iter().all(|r| r.agreement));
    }

    #[test]
    fn repetition_floor() {
        let options = BenchOptions {
            repetitions: 2,
            ..BenchOptions::default()
        };
        let err = run_bench(prime(2), &[10], &Algorithm::CLOSED_FORMS, &options).unwrap_err();
        assert_eq!(err, Error::TooFewRepetitions(2));
    }

    #[test]
    fn oracle_ceiling_guard() {
        let err = run_bench(
            prime(2),
            &[10, 1000],
            &[Algorithm::Direct, Algorithm::Oracle],
            &BenchOptions::default(),
        )
        .unwrap_err();
        assert_eq!(
            err,
            Error::OracleCeiling {
                n: 1000,
                ceiling: DEFAULT_ORACLE_CEILING
            }
        );
    }

    #[test]
    fn oracle_within_ceiling_agrees() {
        let mut algorithms = Algorithm::CLOSED_FORMS.to_vec();
        algorithms.push(Algorithm::Oracle);
        let options = BenchOptions {
            repetitions: 3,
            ..BenchOptions::default()
        };
        let reports = run_bench(prime(5), &[60], &algorithms, &options).unwrap();
        assert_eq!(reports.len(), 4);
        assert!(reports.iter().all(|r| r.agreement));
    }

    #[test]
    fn parallel_matches_sequential_shape() {
        let options = BenchOptions {
            parallel: true,
            repetitions: 3,
            ..BenchOptions::default()
        };
        let reports = run_bench(prime(3), &[50, 100], &Algorithm::CLOSED_FORMS, &options).unwrap();
        let cells: Vec<(u64, Algorithm)> = reports.iter().map(|r| (r.n, r.algorithm)).collect();
        assert_eq!(
            cells,
            vec![
                (50, Algorithm::Direct),
                (50, Algorithm::ClosedForm),
                (50, Algorithm::DoubleSum),
                (100, Algorithm::Direct),
                (100, Algorithm::ClosedForm),
                (100, Algorithm::DoubleSum),
            ]
        );
    }

    #[test]
    fn injected_fault_is_a_correctness_error() {
        let err = verify_agreement(
            2,
            1000,
            &[
                (Algorithm::Direct, 250_458),
                (Algorithm::ClosedForm, 250_459),
            ],
        )
        .unwrap_err();
        match err {
            Error::Disagreement {
                left,
                right,
                left_value,
                right_value,
                ..
            } => {
                assert_eq!(left, "direct");
                assert_eq!(right, "theorem1");
                assert_eq!(left_value, 250_458);
                assert_eq!(right_value, 250_459);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }
}
