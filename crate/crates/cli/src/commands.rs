//! Command handlers and their machine-readable output shapes.

use std::io::Write;
use std::path::PathBuf;

use serde::Serialize;

use hyperval::{
    build_table, convergence_report, factorial_asymptote, factorial_big_bounded,
    format_significant, hyperfactorial_asymptote, hyperfactorial_big_bounded, run_bench,
    serialize, verify_agreement, vp_big, vp_factorial, vp_factorial_digitsum,
    vp_hyperfactorial_closed_form_terms, vp_hyperfactorial_direct, vp_hyperfactorial_double_sum,
    vp_int, Algorithm, BenchOptions, BenchReport, ClosedFormTerms, Column, Estimate, Format,
    Prime, RatioKind, Valuation, DEFAULT_SCHEDULE,
};

use crate::{
    oracle_ceiling, AlgorithmChoice, BenchAlgorithm, CliError, FactMethod, OutputFormat,
    RatioChoice,
};

fn parse_prime(p: u64) -> Result<Prime, CliError> {
    Ok(Prime::new(p)?)
}

fn reject_csv(format: OutputFormat, command: &str) -> Result<(), CliError> {
    if format == OutputFormat::Csv {
        return Err(CliError::Usage(format!(
            "csv output is not supported for `{command}`"
        )));
    }
    Ok(())
}

fn print_json<T: Serialize>(value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string(value).expect("output serialization is infallible");
    println!("{text}");
    Ok(())
}

#[derive(Serialize)]
struct VpOutput {
    p: u64,
    m: u64,
    valuation: Valuation,
}

pub fn vp(p: u64, m: u64, format: OutputFormat) -> Result<(), CliError> {
    reject_csv(format, "vp")?;
    let base = parse_prime(p)?;
    let valuation = vp_int(base, m)?;
    match format {
        OutputFormat::Plain => println!("{valuation}"),
        OutputFormat::Json => print_json(&VpOutput { p, m, valuation })?,
        OutputFormat::Csv => unreachable!(),
    }
    Ok(())
}

#[derive(Serialize)]
struct VpFactOutput {
    p: u64,
    n: u64,
    method: &'static str,
    valuation: Valuation,
}

pub fn vpfact(p: u64, n: u64, method: FactMethod, format: OutputFormat) -> Result<(), CliError> {
    reject_csv(format, "vpfact")?;
    let base = parse_prime(p)?;
    let (name, valuation) = match method {
        FactMethod::Legendre => ("legendre", vp_factorial(base, n)),
        FactMethod::Digitsum => ("digitsum", vp_factorial_digitsum(base, n)),
        FactMethod::Oracle => {
            let factorial = factorial_big_bounded(n, oracle_ceiling()?)?;
            ("oracle", vp_big(base, &factorial)?)
        }
    };
    match format {
        OutputFormat::Plain => println!("{valuation}"),
        OutputFormat::Json => print_json(&VpFactOutput {
            p,
            n,
            method: name,
            valuation,
        })?,
        OutputFormat::Csv => unreachable!(),
    }
    Ok(())
}

#[derive(Serialize)]
struct AlgorithmValue {
    algorithm: &'static str,
    valuation: Valuation,
}

#[derive(Serialize)]
struct VpHyperOutput {
    p: u64,
    n: u64,
    results: Vec<AlgorithmValue>,
    /// Term decomposition of the closed form, present whenever it ran.
    #[serde(skip_serializing_if = "Option::is_none")]
    breakdown: Option<ClosedFormTerms>,
}

fn evaluate_hyper(
    algorithm: Algorithm,
    base: Prime,
    n: u64,
    ceiling: u64,
) -> Result<Valuation, CliError> {
    Ok(match algorithm {
        Algorithm::Direct => vp_hyperfactorial_direct(base, n)?,
        Algorithm::ClosedForm => vp_hyperfactorial_closed_form_terms(base, n)?.value,
        Algorithm::DoubleSum => vp_hyperfactorial_double_sum(base, n)?,
        Algorithm::Oracle => vp_big(base, &hyperfactorial_big_bounded(n, ceiling)?)?,
    })
}

pub fn vphyper(
    p: u64,
    n: u64,
    algorithm: AlgorithmChoice,
    format: OutputFormat,
) -> Result<(), CliError> {
    reject_csv(format, "vphyper")?;
    let base = parse_prime(p)?;
    let ceiling = oracle_ceiling()?;

    let selected: Vec<Algorithm> = match algorithm {
        AlgorithmChoice::Direct => vec![Algorithm::Direct],
        AlgorithmChoice::Theorem1 => vec![Algorithm::ClosedForm],
        AlgorithmChoice::Doublesum => vec![Algorithm::DoubleSum],
        AlgorithmChoice::Oracle => vec![Algorithm::Oracle],
        AlgorithmChoice::All => {
            // Every permitted algorithm: the oracle joins only within its ceiling.
            let mut all = Algorithm::CLOSED_FORMS.to_vec();
            if n <= ceiling {
                all.push(Algorithm::Oracle);
            }
            all
        }
    };

    let mut results = Vec::with_capacity(selected.len());
    let mut breakdown = None;
    for &alg in &selected {
        let valuation = if alg == Algorithm::ClosedForm {
            let terms = vp_hyperfactorial_closed_form_terms(base, n)?;
            breakdown = Some(terms);
            terms.value
        } else {
            evaluate_hyper(alg, base, n, ceiling)?
        };
        results.push((alg, valuation));
    }
    verify_agreement(p, n, &results)?;

    match format {
        OutputFormat::Plain => {
            if results.len() == 1 {
                println!("{}", results[0].1);
            } else {
                for (alg, valuation) in &results {
                    println!("{} {}", alg.name(), valuation);
                }
            }
        }
        OutputFormat::Json => print_json(&VpHyperOutput {
            p,
            n,
            results: results
                .iter()
                .map(|&(alg, valuation)| AlgorithmValue {
                    algorithm: alg.name(),
                    valuation,
                })
                .collect(),
            breakdown,
        })?,
        OutputFormat::Csv => unreachable!(),
    }
    Ok(())
}

#[derive(Serialize)]
struct AsymQuantity {
    exact: Valuation,
    asymptote: Estimate,
    float: f64,
    rounded: u128,
    /// |exact - asymptote| / exact; absent when the exact value is 0.
    relative_error: Option<f64>,
}

impl AsymQuantity {
    fn new(exact: Valuation, asymptote: Estimate) -> Self {
        let float = asymptote.as_f64();
        let relative_error = if exact == 0 {
            None
        } else {
            Some((exact as f64 - float).abs() / exact as f64)
        };
        AsymQuantity {
            exact,
            asymptote,
            float,
            rounded: asymptote.rounded_half_up(),
            relative_error,
        }
    }

    fn plain_line(&self, label: &str) -> String {
        let error = match self.relative_error {
            Some(value) => format!("{}%", format_significant(value * 100.0, 4)),
            None => "-".to_string(),
        };
        format!(
            "{label} {} {} {} {} {error}",
            self.exact,
            self.asymptote,
            format_significant(self.float, 6),
            self.rounded,
        )
    }
}

#[derive(Serialize)]
struct AsymOutput {
    p: u64,
    n: u64,
    factorial: AsymQuantity,
    hyperfactorial: AsymQuantity,
}

pub fn asym(p: u64, n: u64, format: OutputFormat) -> Result<(), CliError> {
    reject_csv(format, "asym")?;
    let base = parse_prime(p)?;
    let factorial = AsymQuantity::new(vp_factorial(base, n), factorial_asymptote(base, n));
    let hyperfactorial = AsymQuantity::new(
        vp_hyperfactorial_closed_form_terms(base, n)?.value,
        hyperfactorial_asymptote(base, n)?,
    );
    match format {
        OutputFormat::Plain => {
            println!("quantity exact asymptote float rounded rel_error");
            println!("{}", factorial.plain_line("factorial"));
            println!("{}", hyperfactorial.plain_line("hyperfactorial"));
        }
        OutputFormat::Json => print_json(&AsymOutput {
            p,
            n,
            factorial,
            hyperfactorial,
        })?,
        OutputFormat::Csv => unreachable!(),
    }
    Ok(())
}

pub fn limits(
    p: u64,
    schedule: Option<Vec<u64>>,
    which: RatioChoice,
    format: OutputFormat,
) -> Result<(), CliError> {
    let base = parse_prime(p)?;
    let schedule = schedule.unwrap_or_else(|| DEFAULT_SCHEDULE.to_vec());
    let kind = match which {
        RatioChoice::Linear => RatioKind::Linear,
        RatioChoice::Quadratic => RatioKind::Quadratic,
    };
    let report = convergence_report(base, &schedule, kind)?;
    match format {
        OutputFormat::Plain => {
            println!("target {}", report.target);
            for sample in &report.samples {
                println!("{} {}", sample.n, format_significant(sample.ratio, 6));
            }
            if let Some(tail) = report.max_abs_error_tail {
                println!("tail_error {}", format_significant(tail, 6));
            }
        }
        OutputFormat::Json => print_json(&report)?,
        OutputFormat::Csv => {
            let mut out = String::from("n,ratio\n");
            for sample in &report.samples {
                out.push_str(&format!(
                    "{},{}\n",
                    sample.n,
                    format_significant(sample.ratio, 6)
                ));
            }
            print!("{out}");
        }
    }
    Ok(())
}

pub fn figure(which: u8, out: Option<PathBuf>) -> Result<(), CliError> {
    let column = match which {
        1 => Column::ExactHyper,
        2 => Column::AsymHyper,
        3 => Column::FactSquaredHalf,
        _ => unreachable!("clap bounds the range"),
    };
    let base = Prime::new(2).expect("2 is prime");
    let table = build_table(base, 1, 1000, &[column])?;
    let bytes = serialize(&table, Format::Csv);
    match out {
        Some(path) => std::fs::write(path, bytes)?,
        None => std::io::stdout().write_all(&bytes)?,
    }
    Ok(())
}

pub fn bench(
    p: u64,
    ns: &[u64],
    algorithms: &[BenchAlgorithm],
    repetitions: u32,
    parallel: bool,
    format: OutputFormat,
) -> Result<(), CliError> {
    reject_csv(format, "bench")?;
    let base = parse_prime(p)?;
    let algorithms: Vec<Algorithm> = algorithms
        .iter()
        .map(|choice| match choice {
            BenchAlgorithm::Direct => Algorithm::Direct,
            BenchAlgorithm::Theorem1 => Algorithm::ClosedForm,
            BenchAlgorithm::Doublesum => Algorithm::DoubleSum,
            BenchAlgorithm::Oracle => Algorithm::Oracle,
        })
        .collect();
    let options = BenchOptions {
        repetitions,
        parallel,
        oracle_ceiling: oracle_ceiling()?,
    };
    let reports = run_bench(base, ns, &algorithms, &options)?;
    match format {
        OutputFormat::Plain => print_bench_table(&reports),
        OutputFormat::Json => print_json(&reports)?,
        OutputFormat::Csv => unreachable!(),
    }
    Ok(())
}

fn print_bench_table(reports: &[BenchReport]) {
    println!(
        "{:<10} {:>6} {:>10} {:>6} {:>14} {:>14} {:>10}",
        "algorithm", "p", "n", "reps", "median_ns", "min_ns", "agreement"
    );
    for report in reports {
        println!(
            "{:<10} {:>6} {:>10} {:>6} {:>14} {:>14} {:>10}",
            report.algorithm.name(),
            report.p,
            report.n,
            report.repetitions,
            report.median_ns,
            report.min_ns,
            report.agreement
        );
    }
}
