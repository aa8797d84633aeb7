//! Sequence tables behind the three reference figures, plus arbitrary
//! comparison tables, with deterministic CSV and JSON serialization.
//!
//! Exact columns are built incrementally through the recurrence step
//! (`v_p[H_f(n)] = v_p[H_f(n-1)] + n * v_p(n)`), seeded one step before the
//! range by a closed-form evaluation, so a table costs O(rows) valuation
//! work instead of O(rows * n/p). The equivalence with per-row direct
//! evaluation is pinned by tests.
//!
//! Serialization is a byte-exact contract:
//!
//! * CSV: header `n,<columns>`, LF line endings, no trailing whitespace.
//!   Integers render unpadded; rationals render as integers when the
//!   denominator is 1 and otherwise as floats with 6 significant digits;
//!   the half-integer column renders with an exact `.0`/`.5` suffix;
//!   ratio columns render as floats with 6 significant digits.
//! * JSON: `{"p", "range", "columns", "rows"}` with each row an array
//!   `[n, cell, ...]`. Parsing the JSON back yields an identical table.

use serde::de::{SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::asymptotics::{
    factorial_asymptote, hyperfactorial_asymptote, linear_ratio_value, quadratic_ratio_value,
};
use crate::error::{Error, Result};
use crate::primes::Prime;
use crate::valuation::{
    vp_hyperfactorial_closed_form, vp_hyperfactorial_recurrence_step, vp_int, vp_factorial,
    Valuation,
};

/// Default cap on table sizes.
pub const DEFAULT_ROW_CAP: u64 = 10_000_000;

/// Output encodings supported by [`serialize`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

/// Table columns. Exact columns hold integers; asymptotic columns hold
/// exact rationals; ratio columns hold floats.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Column {
    /// v_p[H_f(n)], exact.
    ExactHyper,
    /// v_p(n!), exact.
    ExactFact,
    /// n(n+p)/(2(p-1)), exact rational.
    AsymHyper,
    /// n/(p-1), exact rational.
    AsymFact,
    /// [v_p(n!)]^2 / 2, an exact half-integer.
    FactSquaredHalf,
    /// v_p(n!) / v_p[H_f(n)] as a float.
    RatioLinear,
    /// [v_p(n!)]^2 / v_p[H_f(n)] as a float.
    RatioQuadratic,
}

impl Column {
    pub fn name(self) -> &'static str {
        match self {
            Column::ExactHyper => "exact_hyper",
            Column::ExactFact => "exact_fact",
            Column::AsymHyper => "asym_hyper",
            Column::AsymFact => "asym_fact",
            Column::FactSquaredHalf => "fact_squared_half",
            Column::RatioLinear => "ratio_linear",
            Column::RatioQuadratic => "ratio_quadratic",
        }
    }

    fn needs_ratio(self) -> bool {
        matches!(self, Column::RatioLinear | Column::RatioQuadratic)
    }
}

/// One table value. JSON keeps the three shapes distinguishable: integers
/// serialize without a decimal point, rationals as `{"num", "den"}`
/// objects, floats with a decimal point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Int(u128),
    Rational { num: u128, den: u128 },
    Float(f64),
}

// Hand-written: serde's untagged machinery buffers through a content type
// with no u128 support, so the Int arm would never match.
impl<'de> Deserialize<'de> for Cell {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct CellVisitor;

        impl<'de> Visitor<'de> for CellVisitor {
            type Value = Cell;

            fn expecting(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
                f.write_str("an integer, a float, or a {num, den} object")
            }

            fn visit_u64<E: serde::de::Error>(self, v: u64) -> std::result::Result<Cell, E> {
                Ok(Cell::Int(v as u128))
            }

            fn visit_u128<E: serde::de::Error>(self, v: u128) -> std::result::Result<Cell, E> {
                Ok(Cell::Int(v))
            }

            fn visit_i64<E: serde::de::Error>(self, v: i64) -> std::result::Result<Cell, E> {
                u128::try_from(v)
                    .map(Cell::Int)
                    .map_err(|_| E::custom("table cells are non-negative"))
            }

            fn visit_f64<E: serde::de::Error>(self, v: f64) -> std::result::Result<Cell, E> {
                Ok(Cell::Float(v))
            }

            fn visit_map<A: serde::de::MapAccess<'de>>(
                self,
                mut map: A,
            ) -> std::result::Result<Cell, A::Error> {
                let mut num: Option<u128> = None;
                let mut den: Option<u128> = None;
                while let Some(key) = map.next_key::<String>()? {
                    match key.as_str() {
                        "num" => num = Some(map.next_value()?),
                        "den" => den = Some(map.next_value()?),
                        other => {
                            return Err(serde::de::Error::unknown_field(other, &["num", "den"]))
                        }
                    }
                }
                let num = num.ok_or_else(|| serde::de::Error::missing_field("num"))?;
                let den = den.ok_or_else(|| serde::de::Error::missing_field("den"))?;
                Ok(Cell::Rational { num, den })
            }
        }

        deserializer.deserialize_any(CellVisitor)
    }
}

/// One row: the index n followed by one cell per requested column.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub n: u64,
    pub cells: Vec<Cell>,
}

impl Serialize for Row {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(1 + self.cells.len()))?;
        seq.serialize_element(&self.n)?;
        for cell in &self.cells {
            seq.serialize_element(cell)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Row {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct RowVisitor;

        impl<'de> Visitor<'de> for RowVisitor {
            type Value = Row;

            fn expecting(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
                f.write_str("a row array [n, cell, ...]")
            }

            fn visit_seq<A: SeqAccess<'de>>(
                self,
                mut seq: A,
            ) -> std::result::Result<Row, A::Error> {
                let n: u64 = seq
                    .next_element()?
                    .ok_or_else(|| serde::de::Error::invalid_length(0, &self))?;
                let mut cells = Vec::new();
                while let Some(cell) = seq.next_element::<Cell>()? {
                    cells.push(cell);
                }
                Ok(Row { n, cells })
            }
        }

        deserializer.deserialize_seq(RowVisitor)
    }
}

/// A columnar (n, value) table over an inclusive n-range.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesTable {
    pub p: Prime,
    pub range: (u64, u64),
    pub columns: Vec<Column>,
    pub rows: Vec<Row>,
}

/// Build a table over `n_start..=n_end` with the default row cap.
pub fn build_table(p: Prime, n_start: u64, n_end: u64, columns: &[Column]) -> Result<SeriesTable> {
    build_table_capped(p, n_start, n_end, columns, DEFAULT_ROW_CAP)
}

/// Build a table with a caller-chosen row cap.
///
/// Ratio columns require `n_start >= p`: below p the hyperfactorial
/// valuation is zero and the ratios are undefined.
pub fn build_table_capped(
    p: Prime,
    n_start: u64,
    n_end: u64,
    columns: &[Column],
    cap: u64,
) -> Result<SeriesTable> {
    if n_start > n_end {
        return Err(Error::InvalidRange {
            start: n_start,
            end: n_end,
        });
    }
    let row_count = (n_end - n_start) as u128 + 1;
    if row_count > cap as u128 {
        return Err(Error::RowCap {
            rows: row_count,
            cap,
        });
    }
    if columns.iter().any(|c| c.needs_ratio()) && n_start < p.get() {
        return Err(Error::RatioUndefined {
            p: p.get(),
            n: n_start,
        });
    }

    // Seed the running valuations one step before the range.
    let mut hyper: Valuation = if n_start > 1 {
        vp_hyperfactorial_closed_form(p, n_start - 1)?
    } else {
        0
    };
    let mut fact: Valuation = if n_start > 1 {
        vp_factorial(p, n_start - 1)
    } else {
        0
    };

    let mut rows = Vec::with_capacity(row_count as usize);
    for n in n_start..=n_end {
        if n >= 1 {
            hyper = vp_hyperfactorial_recurrence_step(p, n, hyper)?;
            fact += vp_int(p, n)?;
        }
        let cells = columns
            .iter()
            .map(|&column| cell_value(column, p, n, hyper, fact))
            .collect::<Result<Vec<Cell>>>()?;
        rows.push(Row { n, cells });
    }
    Ok(SeriesTable {
        p,
        range: (n_start, n_end),
        columns: columns.to_vec(),
        rows,
    })
}

fn cell_value(column: Column, p: Prime, n: u64, hyper: Valuation, fact: Valuation) -> Result<Cell> {
    Ok(match column {
        Column::ExactHyper => Cell::Int(hyper),
        Column::ExactFact => Cell::Int(fact),
        Column::AsymHyper => {
            let estimate = hyperfactorial_asymptote(p, n)?;
            Cell::Rational {
                num: estimate.numerator(),
                den: estimate.denominator(),
            }
        }
        Column::AsymFact => {
            let estimate = factorial_asymptote(p, n);
            Cell::Rational {
                num: estimate.numerator(),
                den: estimate.denominator(),
            }
        }
        Column::FactSquaredHalf => {
            let squared = fact.checked_mul(fact).ok_or(Error::Overflow {
                context: "squared factorial valuation column",
            })?;
            if squared % 2 == 0 {
                Cell::Rational {
                    num: squared / 2,
                    den: 1,
                }
            } else {
                Cell::Rational {
                    num: squared,
                    den: 2,
                }
            }
        }
        Column::RatioLinear => Cell::Float(linear_ratio_value(fact, hyper)),
        Column::RatioQuadratic => Cell::Float(quadratic_ratio_value(fact, hyper)),
    })
}

/// Render `x` with the given number of significant digits, in plain decimal
/// notation. Deterministic: the same input yields the same bytes on every
/// platform.
pub fn format_significant(x: f64, digits: u32) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (digits as i32 - 1 - magnitude).max(0) as usize;
    format!("{:.*}", decimals, x)
}

fn render_csv_cell(column: Column, cell: &Cell) -> String {
    match cell {
        Cell::Int(value) => value.to_string(),
        Cell::Rational { num, den } => match column {
            // Half-integers render exactly.
            Column::FactSquaredHalf => {
                if *den == 1 {
                    format!("{num}.0")
                } else {
                    format!("{}.5", num / 2)
                }
            }
            _ => {
                if *den == 1 {
                    num.to_string()
                } else {
                    format_significant(*num as f64 / *den as f64, 6)
                }
            }
        },
        Cell::Float(value) => format_significant(*value, 6),
    }
}

/// Serialize a table to bytes. Byte-exact across runs and platforms.
pub fn serialize(table: &SeriesTable, format: Format) -> Vec<u8> {
    match format {
        Format::Json => serde_json::to_vec(table).expect("table serialization is infallible"),
        Format::Csv => {
            let mut out = String::new();
            out.push('n');
            for column in &table.columns {
                out.push(',');
                out.push_str(column.name());
            }
            out.push('\n');
            for row in &table.rows {
                out.push_str(&row.n.to_string());
                for (column, cell) in table.columns.iter().zip(&row.cells) {
                    out.push(',');
                    out.push_str(&render_csv_cell(*column, cell));
                }
                out.push('\n');
            }
            out.into_bytes()
        }
    }
}

/// Parse a table back from its JSON serialization.
pub fn parse_json(bytes: &[u8]) -> std::result::Result<SeriesTable, serde_json::Error> {
    serde_json::from_slice(bytes)
}
