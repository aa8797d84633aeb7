use thiserror::Error;

/// Errors shared by every module of the crate.
///
/// Variants fall into four groups, which the CLI maps to distinct exit
/// codes: domain errors (invalid mathematical input), resource bounds
/// (configured ceilings and the 128-bit valuation width), and internal
/// disagreement between algorithms that must produce equal values.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A base that failed primality validation.
    #[error("p must be prime: {0} is not prime")]
    NotPrime(u64),

    /// v_p(0) has no finite value.
    #[error("v_p(0) is undefined")]
    ValuationOfZero,

    /// A checked 128-bit operation overflowed.
    #[error("valuation arithmetic overflowed 128 bits in {context}")]
    Overflow { context: &'static str },

    /// `primes_up_to` called past the configured sieve ceiling.
    #[error("sieve limit {limit} exceeds the ceiling {ceiling}")]
    SieveCeiling { limit: u64, ceiling: u64 },

    /// Big-integer oracle called past its ceiling.
    #[error("n = {n} exceeds the oracle ceiling {ceiling}")]
    OracleCeiling { n: u64, ceiling: u64 },

    /// Table range larger than the configured row cap.
    #[error("table of {rows} rows exceeds the cap {cap}")]
    RowCap { rows: u128, cap: u64 },

    /// Table range with start past end.
    #[error("invalid range: start {start} > end {end}")]
    InvalidRange { start: u64, end: u64 },

    /// Ratios v_p(n!)/v_p[H_f(n)] need a nonzero denominator, i.e. n >= p.
    #[error("ratio undefined for p = {p}, n = {n}: v_p[H_f(n)] = 0 when n < p")]
    RatioUndefined { p: u64, n: u64 },

    /// Convergence schedules must be strictly increasing in n.
    #[error("schedule must be strictly increasing")]
    UnsortedSchedule,

    /// Benchmark repetition counts below the supported minimum.
    #[error("repetitions must be at least 3, got {0}")]
    TooFewRepetitions(u32),

    /// Two algorithms produced different values for the same input.
    /// Reported instead of ever timing a wrong answer.
    #[error("algorithms disagree at p = {p}, n = {n}: {left} = {left_value}, {right} = {right_value}")]
    Disagreement {
        p: u64,
        n: u64,
        left: &'static str,
        right: &'static str,
        left_value: u128,
        right_value: u128,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
