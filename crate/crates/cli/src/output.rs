use std::io::Write;

use clap::ValueEnum;
use serde::Serialize;

use weylriordan::rational::format_rational;
use weylriordan::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

/// Something that can be printed in each output format.
pub trait Render: Serialize {
    fn pretty(&self) -> String;
    fn csv(&self) -> String;
}

pub fn emit<T: Render>(value: &T, format: Format) {
    let text = match format {
        Format::Json => serde_json::to_string_pretty(value).expect("serializable output"),
        Format::Csv => value.csv(),
        Format::Pretty => value.pretty(),
    };
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = writeln!(std::io::stdout().lock(), "{}", text.trim_end());
}

pub fn join(values: &[Rational], sep: &str) -> String {
    values.iter().map(format_rational).collect::<Vec<_>>().join(sep)
}

/// Right-aligned columns, one row per line.
pub fn table(rows: &[Vec<Rational>]) -> String {
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| r.iter().map(format_rational).collect())
        .collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    cells
        .iter()
        .map(|r| {
            r.iter()
                .map(|c| format!("{c:>width$}"))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn csv_rows(rows: &[Vec<Rational>]) -> String {
    rows.iter().map(|r| join(r, ",")).collect::<Vec<_>>().join("\n")
}

pub fn verdict(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "FAIL"
    }
}
