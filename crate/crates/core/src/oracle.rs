//! Brute-force ground truth at tiny scale.
//!
//! Builds H_f(n) and n! as exact big integers and extracts valuations by
//! repeated division. Deliberately slow and obvious: this module anchors
//! every closed form to the definition, so it avoids every shortcut the
//! rest of the crate uses.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};
use crate::primes::Prime;
use crate::valuation::Valuation;

/// Default cap on oracle inputs. H_f(200) already has ~10^5 decimal digits;
/// anything much larger stops being a useful test fixture.
pub const DEFAULT_ORACLE_CEILING: u64 = 200;

/// H_f(n) = product of i^i for i in 1..=n, exactly. H_f(0) = 1 (empty
/// product). Uses the default ceiling.
pub fn hyperfactorial_big(n: u64) -> Result<BigUint> {
    hyperfactorial_big_bounded(n, DEFAULT_ORACLE_CEILING)
}

/// H_f(n) with a caller-chosen ceiling.
pub fn hyperfactorial_big_bounded(n: u64, ceiling: u64) -> Result<BigUint> {
    if n > ceiling {
        return Err(Error::OracleCeiling { n, ceiling });
    }
    let mut product = BigUint::one();
    for i in 1..=n {
        product *= Pow::pow(BigUint::from(i), i);
    }
    Ok(product)
}

/// n! as an exact big integer, by iterative product. Uses the default ceiling.
pub fn factorial_big(n: u64) -> Result<BigUint> {
    factorial_big_bounded(n, DEFAULT_ORACLE_CEILING)
}

/// n! with a caller-chosen ceiling.
pub fn factorial_big_bounded(n: u64, ceiling: u64) -> Result<BigUint> {
    if n > ceiling {
        return Err(Error::OracleCeiling { n, ceiling });
    }
    let mut product = BigUint::one();
    for i in 2..=n {
        product *= i;
    }
    Ok(product)
}

/// Valuation by counting exact divisions: divides by p until the remainder
/// is nonzero. Errors on zero, which no power of p divides exactly.
pub fn vp_big(p: Prime, value: &BigUint) -> Result<Valuation> {
    if value.is_zero() {
        return Err(Error::ValuationOfZero);
    }
    let divisor = BigUint::from(p.get());
    let mut current = value.clone();
    let mut count: Valuation = 0;
    loop {
        let (quotient, remainder) = current.div_rem(&divisor);
        if !remainder.is_zero() {
            return Ok(count);
        }
        current = quotient;
        count += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prime(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    #[test]
    fn empty_product() {
        assert_eq!(hyperfactorial_big(0).unwrap(), BigUint::one());
    }

    #[test]
    fn small_values() {
        assert_eq!(hyperfactorial_big(3).unwrap(), BigUint::from(108u32));
        assert_eq!(hyperfactorial_big(4).unwrap(), BigUint::from(27648u32));
    }

    #[test]
    fn ceiling_enforced() {
        assert_eq!(
            hyperfactorial_big(201),
            Err(Error::OracleCeiling {
                n: 201,
                ceiling: 200
            })
        );
        assert_eq!(
            factorial_big_bounded(11, 10),
            Err(Error::OracleCeiling { n: 11, ceiling: 10 })
        );
    }

    #[test]
    fn factorial_small_values() {
        assert_eq!(factorial_big(0).unwrap(), BigUint::one());
        assert_eq!(factorial_big(1).unwrap(), BigUint::one());
        assert_eq!(factorial_big(5).unwrap(), BigUint::from(120u32));
    }

    #[test]
    fn valuation_by_division() {
        // 27648 = 2^10 * 27, and v_2[H_f(4)] = 2*1 + 4*2 = 10.
        assert_eq!(vp_big(prime(2), &BigUint::from(27648u32)).unwrap(), 10);
        assert_eq!(vp_big(prime(3), &BigUint::from(108u32)).unwrap(), 3);
        assert_eq!(vp_big(prime(5), &BigUint::from(108u32)).unwrap(), 0);
    }

    #[test]
    fn valuation_of_zero_rejected() {
        assert_eq!(
            vp_big(prime(2), &BigUint::zero()),
            Err(Error::ValuationOfZero)
        );
    }
}
