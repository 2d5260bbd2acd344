//! Reproduction of the published tables: Markov degrees against predicted
//! degrees for every complex on four vertices, and histograms of the number
//! of unpredicted degrees per complex.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::{check_conjecture_with, ConjectureReport, Verdict};
use crate::complex::{enumerate_complexes, parse_complex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::homology::FieldSpec;
use crate::markov::{Completeness, MarkovOptions};
use crate::model::Levels;

pub type PrintedRow = (&'static str, &'static str, &'static [u64], &'static [u64], bool);

/// The printed four-vertex table: facets as printed, the complex in text
/// form, printed binary Markov degrees, printed predicted degrees, and
/// whether the row is printed in bold.
pub const TABLE2: [PrintedRow; 16] = [
    ("1,2,3,4", "n=4; 1 2 3 4", &[2], &[2], false),
    ("12,3,4", "n=4; 12 3 4", &[2], &[2], false),
    ("12,23,4", "n=4; 12 23 4", &[2], &[2], false),
    ("123,4", "n=4; 123 4", &[2], &[2], false),
    ("12,23,34", "n=4; 12 23 34", &[2], &[2], false),
    ("12,23,34,41", "n=4; 12 23 34 14", &[2, 4], &[2, 4], false),
    ("12,23,31,34", "n=4; 12 23 13 34", &[2, 4], &[2, 4], false),
    ("12,23,31,4", "n=4; 12 23 13 4", &[2, 4], &[2, 4], false),
    ("12,23,34,41,13", "n=4; 12 23 34 14 13", &[2, 4], &[2, 4], false),
    ("12,13,14,23,24,34", "n=4; 12 13 14 23 24 34", &[4, 6], &[4], true),
    ("123,34", "n=4; 123 34", &[2], &[2], false),
    ("123,24,34", "n=4; 123 24 34", &[2, 4], &[2, 4], false),
    ("123,234", "n=4; 123 234", &[2], &[2], false),
    ("123,124,134,234", "n=4; 123 124 134 234", &[8], &[4], false),
    ("123,24,34,14", "n=4; 123 24 34 14", &[4, 6], &[4], true),
    ("123,234,14", "n=4; 123 234 14", &[4], &[4], false),
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table2Row {
    pub facets: String,
    pub printed_actual: BTreeSet<u64>,
    pub printed_predicted: BTreeSet<u64>,
    pub printed_bold: bool,
    pub report: ConjectureReport,
}

impl Table2Row {
    pub fn actual(&self) -> &BTreeSet<u64> {
        &self.report.actual_degrees
    }

    pub fn predicted(&self) -> &BTreeSet<u64> {
        &self.report.predicted_degrees
    }

    /// Computed counterpart of the bold marking: some degree is unpredicted.
    pub fn bold(&self) -> bool {
        !self.report.unpredicted.is_empty()
    }

    pub fn actual_matches(&self) -> bool {
        self.report.completeness.is_complete() && *self.actual() == self.printed_actual
    }

    pub fn predicted_matches(&self) -> bool {
        *self.predicted() == self.printed_predicted
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table2 {
    pub rows: Vec<Table2Row>,
}

impl Table2 {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

fn list(s: &BTreeSet<u64>) -> String {
    s.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for Table2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<(String, String, String, String)> = self
            .rows
            .iter()
            .map(|r| {
                let name = if r.bold() { format!("*{}*", r.facets) } else { r.facets.clone() };
                let mut actual = list(r.actual());
                if !r.report.completeness.is_complete() {
                    actual.push_str(" (partial)");
                }
                if *r.actual() != r.printed_actual {
                    actual.push_str(&format!(" (printed: {})", list(&r.printed_actual)));
                }
                let mut predicted = list(r.predicted());
                if !r.predicted_matches() {
                    predicted.push_str(&format!(" (printed: {})", list(&r.printed_predicted)));
                }
                let note = match (r.actual_matches(), r.predicted_matches()) {
                    (true, true) => String::new(),
                    _ => "differs from print".to_string(),
                };
                (name, actual, predicted, note)
            })
            .collect();
        let w0 = cells.iter().map(|c| c.0.len()).max().unwrap_or(0).max("facets".len());
        let w1 = cells.iter().map(|c| c.1.len()).max().unwrap_or(0).max("binary Markov degrees".len());
        let w2 = cells.iter().map(|c| c.2.len()).max().unwrap_or(0).max("predicted degrees".len());
        writeln!(f, "{:w0$} | {:w1$} | {:w2$} |", "facets", "binary Markov degrees", "predicted degrees")?;
        writeln!(f, "{}", "-".repeat(w0 + w1 + w2 + 8))?;
        for (a, b, c, note) in &cells {
            writeln!(f, "{a:w0$} | {b:w1$} | {c:w2$} | {note}")?;
        }
        write!(f, "(*facets*: some Markov degree is not predicted)")
    }
}

/// The parsed complexes of [`TABLE2`], in printed order.
pub fn table2_rows() -> Vec<(&'static str, SimplicialComplex)> {
    TABLE2
        .iter()
        .map(|&(label, text, ..)| (label, parse_complex(text).expect("valid table entry")))
        .collect()
}

/// Binary Markov degrees and predictions over the rationals for each printed
/// row, computed in parallel.
pub fn reproduce_table2(opts: &MarkovOptions) -> Result<Table2> {
    let rows = TABLE2
        .par_iter()
        .map(|&(label, text, actual, predicted, bold)| {
            let complex = parse_complex(text)?;
            let report = check_conjecture_with(&complex, &Levels::binary(4), &[FieldSpec::Rationals], opts)?;
            Ok(Table2Row {
                facets: label.to_string(),
                printed_actual: actual.iter().copied().collect(),
                printed_predicted: predicted.iter().copied().collect(),
                printed_bold: bold,
                report,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Table2 { rows })
}

/// Which complexes on `[n]` a histogram counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Universe {
    /// Every complex on `[n]` using all vertices, the full simplex included.
    Labeled,
    /// One representative per isomorphism class of those complexes.
    Unlabeled,
}

impl FromStr for Universe {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "labeled" | "labelled" => Ok(Universe::Labeled),
            "unlabeled" | "unlabelled" | "iso" => Ok(Universe::Unlabeled),
            _ => Err(Error::Parse(format!("unknown universe `{s}` (labeled or unlabeled)"))),
        }
    }
}

impl fmt::Display for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Universe::Labeled => "labeled",
            Universe::Unlabeled => "unlabeled",
        })
    }
}

/// Histogram of the number of unpredicted binary Markov degrees per complex,
/// with predictions over the rationals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table1 {
    pub n: usize,
    pub universe: Universe,
    pub complexes: usize,
    /// Number of unpredicted degrees to number of complexes.
    pub histogram: BTreeMap<usize, usize>,
    /// Complexes with a predicted degree known to be absent.
    pub failures: Vec<String>,
    /// Complexes whose Markov computation stopped early; their counts are
    /// lower bounds.
    pub partial: Vec<String>,
    /// Complexes whose computation failed, with the error.
    pub errors: Vec<(String, String)>,
}

impl Table1 {
    pub fn is_partial(&self) -> bool {
        !self.partial.is_empty() || !self.errors.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

impl fmt::Display for Table1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let top = self.histogram.keys().max().copied().unwrap_or(0);
        writeln!(f, "universe: {}, {} complexes", self.universe, self.complexes)?;
        writeln!(f, "number of degrees not predicted")?;
        let header: Vec<String> = (0..=top).map(|k| format!("{k:>5}")).collect();
        writeln!(f, "{:>3} |{}", "n", header.join(""))?;
        let row: Vec<String> = (0..=top)
            .map(|k| match self.histogram.get(&k) {
                Some(c) => format!("{c:>5}"),
                None => format!("{:>5}", ""),
            })
            .collect();
        write!(f, "{:>3} |{}", self.n, row.join(""))?;
        if !self.failures.is_empty() {
            write!(f, "\nfailing complexes: {}", self.failures.join("; "))?;
        }
        if !self.partial.is_empty() {
            write!(f, "\npartial (lower bounds): {}", self.partial.join("; "))?;
        }
        for (c, e) in &self.errors {
            write!(f, "\nerror on {c}: {e}")?;
        }
        Ok(())
    }
}

pub fn reproduce_table1(n: usize, universe: Universe, opts: &MarkovOptions) -> Result<Table1> {
    let complexes = enumerate_complexes(n, universe == Universe::Unlabeled, true)?;
    let results: Vec<(String, Result<ConjectureReport>)> = complexes
        .par_iter()
        .map(|c| {
            let r = check_conjecture_with(c, &Levels::binary(n), &[FieldSpec::Rationals], opts);
            (c.to_string(), r)
        })
        .collect();
    let mut table = Table1 {
        n,
        universe,
        complexes: complexes.len(),
        histogram: BTreeMap::new(),
        failures: Vec::new(),
        partial: Vec::new(),
        errors: Vec::new(),
    };
    for (name, r) in results {
        match r {
            Ok(report) => {
                *table.histogram.entry(report.unpredicted.len()).or_insert(0) += 1;
                if report.verdict == Verdict::Fails {
                    table.failures.push(name.clone());
                }
                if let Completeness::Partial { .. } = report.completeness {
                    table.partial.push(name);
                }
            }
            Err(e) => table.errors.push((name, e.to_string())),
        }
    }
    Ok(table)
}
