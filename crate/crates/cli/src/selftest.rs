//! Reduced-scale verification suites behind `hyperval selftest`.
//!
//! Exit 0 means: the big-integer oracle agrees with every fast algorithm,
//! the factorial identities hold, and the three hyperfactorial algorithms
//! agree, on grids small enough to finish in seconds. Any mismatch surfaces
//! as a disagreement error and a nonzero exit.

use num_bigint::BigUint;
use num_traits::{One, Pow};

use hyperval::{
    hyperfactorial_big_bounded, primes_up_to, verify_agreement, vp_big, vp_factorial,
    vp_factorial_digitsum, vp_hyperfactorial_closed_form, vp_hyperfactorial_direct,
    vp_hyperfactorial_double_sum, Algorithm, Error, Prime,
};

use crate::CliError;

struct Scale {
    primes_limit: u64,
    oracle_exhaustive_n: u64,
    oracle_spot_ns: &'static [u64],
    factorial_n: u64,
    equivalence_n: u64,
}

const FULL: Scale = Scale {
    primes_limit: 13,
    oracle_exhaustive_n: 60,
    oracle_spot_ns: &[100, 150, 200],
    factorial_n: 200,
    equivalence_n: 200,
};

const QUICK: Scale = Scale {
    primes_limit: 7,
    oracle_exhaustive_n: 40,
    oracle_spot_ns: &[],
    factorial_n: 80,
    equivalence_n: 80,
};

pub fn run(quick: bool) -> Result<(), CliError> {
    let scale = if quick { QUICK } else { FULL };
    let primes = primes_up_to(scale.primes_limit)?;

    hyperfactorial_oracle_suite(&primes, &scale)?;
    factorial_suite(&primes, &scale)?;
    equivalence_suite(&primes, &scale)?;

    println!("selftest: ok");
    Ok(())
}

/// Compare every algorithm, oracle included, on one (p, n) cell.
fn check_cell(p: Prime, n: u64, hyper_big: &BigUint) -> Result<(), Error> {
    let values = [
        (Algorithm::Oracle, vp_big(p, hyper_big)?),
        (Algorithm::Direct, vp_hyperfactorial_direct(p, n)?),
        (Algorithm::ClosedForm, vp_hyperfactorial_closed_form(p, n)?),
        (Algorithm::DoubleSum, vp_hyperfactorial_double_sum(p, n)?),
    ];
    verify_agreement(p.get(), n, &values)
}

fn hyperfactorial_oracle_suite(primes: &[Prime], scale: &Scale) -> Result<(), CliError> {
    let mut hyper = BigUint::one();
    let mut cells = 0usize;
    for n in 0..=scale.oracle_exhaustive_n {
        if n >= 1 {
            hyper *= Pow::pow(BigUint::from(n), n);
        }
        for &p in primes {
            check_cell(p, n, &hyper)?;
            cells += 1;
        }
    }
    for &n in scale.oracle_spot_ns {
        let hyper = hyperfactorial_big_bounded(n, n)?;
        for &p in primes {
            check_cell(p, n, &hyper)?;
            cells += 1;
        }
    }
    println!(
        "ok: hyperfactorial oracle agreement ({cells} cells, n <= {}, spot checks {:?})",
        scale.oracle_exhaustive_n, scale.oracle_spot_ns
    );
    Ok(())
}

fn factorial_suite(primes: &[Prime], scale: &Scale) -> Result<(), CliError> {
    let mut factorial = BigUint::one();
    let mut cells = 0usize;
    for n in 0..=scale.factorial_n {
        if n >= 1 {
            factorial *= n;
        }
        for &p in primes {
            let series = vp_factorial(p, n);
            let digitsum = vp_factorial_digitsum(p, n);
            let oracle = vp_big(p, &factorial)?;
            if series != digitsum || series != oracle {
                return Err(Error::Disagreement {
                    p: p.get(),
                    n,
                    left: "legendre",
                    right: if series != digitsum { "digitsum" } else { "oracle" },
                    left_value: series,
                    right_value: if series != digitsum { digitsum } else { oracle },
                }
                .into());
            }
            cells += 1;
        }
    }
    println!(
        "ok: factorial identities ({cells} cells, n <= {})",
        scale.factorial_n
    );
    Ok(())
}

fn equivalence_suite(primes: &[Prime], scale: &Scale) -> Result<(), CliError> {
    let mut cells = 0usize;
    for n in 0..=scale.equivalence_n {
        for &p in primes {
            let values = [
                (Algorithm::Direct, vp_hyperfactorial_direct(p, n)?),
                (Algorithm::ClosedForm, vp_hyperfactorial_closed_form(p, n)?),
                (Algorithm::DoubleSum, vp_hyperfactorial_double_sum(p, n)?),
            ];
            verify_agreement(p.get(), n, &values)?;
            cells += 1;
        }
    }
    println!(
        "ok: hyperfactorial algorithm equivalence ({cells} cells, n <= {})",
        scale.equivalence_n
    );
    Ok(())
}
