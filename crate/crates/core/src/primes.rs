//! Prime validation and enumeration.
//!
//! Primality is decided exactly for the full `u64` range: trial division
//! below a small threshold, deterministic Miller-Rabin above it. No
//! probabilistic acceptance anywhere, so tests built on these functions
//! never flake.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Default upper bound accepted by [`primes_up_to`].
pub const DEFAULT_SIEVE_CEILING: u64 = 10_000_000;

/// Below this, plain trial division beats the Miller-Rabin setup cost.
const TRIAL_DIVISION_LIMIT: u64 = 1 << 20;

/// Small primes used both as trial divisors and as Miller-Rabin witnesses.
/// The witness set {2, 3, ..., 37} is deterministic for every m < 3.3 * 10^24,
/// which covers all of u64.
const SMALL_PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// A validated prime base.
///
/// Construction verifies primality, so a `Prime` can never hold 0, 1, or a
/// composite. Every valuation entry point takes `Prime` rather than a raw
/// integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prime(u64);

impl Prime {
    pub fn new(value: u64) -> Result<Self> {
        if is_prime(value) {
            Ok(Prime(value))
        } else {
            Err(Error::NotPrime(value))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    /// Skip re-verification for values the sieve already proved prime.
    fn from_sieve(value: u64) -> Self {
        debug_assert!(is_prime(value));
        Prime(value)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl TryFrom<u64> for Prime {
    type Error = Error;

    fn try_from(value: u64) -> Result<Self> {
        Prime::new(value)
    }
}

impl Serialize for Prime {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_u64(self.0)
    }
}

impl<'de> Deserialize<'de> for Prime {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let value = u64::deserialize(deserializer)?;
        Prime::new(value).map_err(serde::de::Error::custom)
    }
}

/// Exact primality test, total on all of `u64`.
pub fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    for &q in &SMALL_PRIMES {
        if m.is_multiple_of(q) {
            return m == q;
        }
    }
    // m has no factor <= 37 here, so anything below 41^2 is prime.
    if m < 41 * 41 {
        return true;
    }
    if m < TRIAL_DIVISION_LIMIT {
        return trial_division(m);
    }
    miller_rabin(m)
}

fn trial_division(m: u64) -> bool {
    let mut d = 41u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn miller_rabin(m: u64) -> bool {
    let s = (m - 1).trailing_zeros();
    let d = (m - 1) >> s;
    'witness: for &a in &SMALL_PRIMES {
        let mut x = pow_mod(a, d, m);
        if x == 1 || x == m - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, m);
            if x == m - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut result = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod(result, base, m);
        }
        exp >>= 1;
        base = mul_mod(base, base, m);
    }
    result
}

/// All primes `<= limit`, ascending, using the default sieve ceiling.
pub fn primes_up_to(limit: u64) -> Result<Vec<Prime>> {
    primes_up_to_bounded(limit, DEFAULT_SIEVE_CEILING)
}

/// All primes `<= limit`, ascending, with a caller-chosen ceiling bounding
/// the sieve allocation.
pub fn primes_up_to_bounded(limit: u64, ceiling: u64) -> Result<Vec<Prime>> {
    if limit > ceiling {
        return Err(Error::SieveCeiling { limit, ceiling });
    }
    if limit < 2 {
        return Ok(Vec::new());
    }
    let size = limit as usize;
    let mut composite = vec![false; size + 1];
    let mut primes = Vec::new();
    for m in 2..=size {
        if composite[m] {
            continue;
        }
        primes.push(Prime::from_sieve(m as u64));
        let mut multiple = (m as u64) * (m as u64);
        while multiple <= limit {
            composite[multiple as usize] = true;
            multiple += m as u64;
        }
    }
    Ok(primes)
}
