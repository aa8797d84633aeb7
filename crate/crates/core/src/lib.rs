//! Exact p-adic valuations of the hyperfactorial H_f(n) = 1^1 2^2 3^3 ... n^n.
//!
//! The valuation v_p[H_f(n)] — the largest e with p^e dividing H_f(n) — is
//! computed by several independent algorithms that are cross-validated
//! against each other and against a brute-force big-integer oracle:
//!
//! * [`valuation`] — the defining sum, a factorial-valuation closed form,
//!   its fully expanded double sum, and an incremental recurrence step;
//! * [`oracle`] — H_f(n) and n! as exact big integers, valuations by
//!   repeated division (tiny n only, by design);
//! * [`asymptotics`] — the first-order estimates n/(p-1) and
//!   n(n+p)/(2(p-1)) as exact rationals, the limit ratios they imply, and
//!   the mutual estimators between v_p(n!) and v_p[H_f(n)];
//! * [`tables`] — deterministic (n, value) series with byte-exact CSV/JSON
//!   output, including the data behind the three reference figures;
//! * [`bench`] — a timing harness that refuses to report timings of
//!   disagreeing algorithms;
//! * [`primes`] — validated prime bases and a sieve for test sweeps.
//!
//! ```
//! use hyperval::{Prime, vp_hyperfactorial_closed_form, vp_hyperfactorial_direct};
//!
//! let p = Prime::new(5)?;
//! assert_eq!(vp_hyperfactorial_closed_form(p, 60)?, 465);
//! assert_eq!(vp_hyperfactorial_direct(p, 60)?, 465);
//! # Ok::<(), hyperval::Error>(())
//! ```

pub mod asymptotics;
pub mod bench;
pub mod error;
pub mod oracle;
pub mod primes;
pub mod tables;
pub mod valuation;

pub use asymptotics::{
    convergence_report, estimate_factorial_from_hyper, estimate_hyper_from_factorial,
    factorial_asymptote, hyperfactorial_asymptote, quadratic_target, ratio_linear,
    ratio_quadratic, ConvergenceReport, Estimate, RatioKind, Sample, DEFAULT_SCHEDULE,
};
pub use bench::{run_bench, verify_agreement, Algorithm, BenchOptions, BenchReport};
pub use error::{Error, Result};
pub use oracle::{
    factorial_big, factorial_big_bounded, hyperfactorial_big, hyperfactorial_big_bounded, vp_big,
    DEFAULT_ORACLE_CEILING,
};
pub use primes::{is_prime, primes_up_to, primes_up_to_bounded, Prime, DEFAULT_SIEVE_CEILING};
pub use tables::{
    build_table, build_table_capped, format_significant, parse_json, serialize, Cell, Column,
    Format, Row, SeriesTable, DEFAULT_ROW_CAP,
};
pub use valuation::{
    vp_factorial, vp_factorial_digitsum, vp_hyperfactorial_closed_form,
    vp_hyperfactorial_closed_form_terms, vp_hyperfactorial_direct, vp_hyperfactorial_double_sum,
    vp_hyperfactorial_recurrence_step, vp_int, ClosedFormTerms, Valuation,
};
