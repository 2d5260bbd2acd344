//! Checking "nonzero Betti row `j` implies a minimal Markov generator of
//! degree `2^j`" on concrete complexes, classifying which known theorem
//! covers a complex, reproducing the small-`n` tables and caching results.

mod cache;
mod tables;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::error::Result;
use crate::homology::FieldSpec;
use crate::markov::{degrees_present_with, Completeness, MarkovOptions};
use crate::model::{marginal_matrix, Levels};
use crate::stanley_reisner::{betti_diagram, is_gorenstein, ConjecturePrediction};

pub use cache::{ResultCache, ENGINE_VERSION};
pub use tables::{
    reproduce_table1, reproduce_table2, table2_rows, Table1, Table2, Table2Row, Universe, TABLE2,
};

/// The fields used when none are requested.
pub const DEFAULT_FIELDS: [FieldSpec; 2] = [FieldSpec::Rationals, FieldSpec::Prime(2)];

/// The strongest known result that settles the relation for a complex,
/// strongest first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremStatus {
    VertexDecomposable,
    DecomposableOrReducible,
    #[serde(rename = "rows_le_2")]
    RowsLe2,
    GorensteinDim2,
    Open,
}

impl TheoremStatus {
    pub fn is_open(self) -> bool {
        self == TheoremStatus::Open
    }

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremStatus::VertexDecomposable => "vertex_decomposable",
            TheoremStatus::DecomposableOrReducible => "decomposable_or_reducible",
            TheoremStatus::RowsLe2 => "rows_le_2",
            TheoremStatus::GorensteinDim2 => "gorenstein_dim2",
            TheoremStatus::Open => "open",
        }
    }
}

impl fmt::Display for TheoremStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Whether every predicted degree was found.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
    /// Some predicted degree lies beyond the degrees the Markov computation
    /// covered, and no predicted degree below that is missing.
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub complex: String,
    pub levels: Vec<usize>,
    pub fields: Vec<String>,
    pub predicted_degrees: BTreeSet<u64>,
    pub actual_degrees: BTreeSet<u64>,
    /// Actual degrees that no nonzero Betti row predicts.
    pub unpredicted: BTreeSet<u64>,
    /// Predicted degrees known to be absent.
    pub missing: BTreeSet<u64>,
    /// Predicted degrees beyond the range the Markov computation covered.
    pub undetermined: BTreeSet<u64>,
    pub completeness: Completeness,
    pub theorem_status: TheoremStatus,
    pub verdict: Verdict,
}

impl ConjectureReport {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

impl fmt::Display for ConjectureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let set = |s: &BTreeSet<u64>| {
            let v: Vec<String> = s.iter().map(|d| d.to_string()).collect();
            format!("{{{}}}", v.join(", "))
        };
        writeln!(f, "complex:        {}", self.complex)?;
        writeln!(f, "levels:         {:?}", self.levels)?;
        writeln!(f, "fields:         {}", self.fields.join(", "))?;
        writeln!(f, "predicted:      {}", set(&self.predicted_degrees))?;
        writeln!(f, "actual:         {}", set(&self.actual_degrees))?;
        writeln!(f, "unpredicted:    {}", set(&self.unpredicted))?;
        writeln!(f, "missing:        {}", set(&self.missing))?;
        if !self.undetermined.is_empty() {
            writeln!(f, "undetermined:   {}", set(&self.undetermined))?;
        }
        if let Completeness::Partial { complete_below, reason } = &self.completeness {
            writeln!(f, "partial:        complete below degree {complete_below} ({reason})")?;
        }
        writeln!(f, "theorem status: {}", self.theorem_status)?;
        let verdict = match self.verdict {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Undetermined => "undetermined",
        };
        write!(f, "verdict:        {verdict}")
    }
}

pub fn check_conjecture(complex: &SimplicialComplex, levels: &Levels, fields: &[FieldSpec]) -> Result<ConjectureReport> {
    check_conjecture_with(complex, levels, fields, &MarkovOptions::default())
}

/// Predictions are unioned over `fields` (the default pair when empty); the
/// theorem status is the weakest one over those fields.
pub fn check_conjecture_with(
    complex: &SimplicialComplex,
    levels: &Levels,
    fields: &[FieldSpec],
    opts: &MarkovOptions,
) -> Result<ConjectureReport> {
    let fields: Vec<FieldSpec> = if fields.is_empty() {
        DEFAULT_FIELDS.to_vec()
    } else {
        let set: BTreeSet<FieldSpec> = fields.iter().copied().collect();
        set.into_iter().collect()
    };
    let prediction = fields
        .iter()
        .map(|&k| ConjecturePrediction::from_rows(betti_diagram(complex, k).nonzero_rows()))
        .reduce(|a, b| a.union(&b))
        .expect("at least one field");
    let theorem_status = fields
        .iter()
        .map(|&k| classify_theorem_coverage(complex, k))
        .max()
        .expect("at least one field");
    let m = marginal_matrix(complex, levels)?;
    let summary = degrees_present_with(&m, opts)?;
    let predicted = prediction.predicted_degrees;
    let actual = summary.degrees;
    let covered = |d: u64| match &summary.completeness {
        Completeness::Complete => true,
        Completeness::Partial { complete_below, .. } => d < *complete_below,
    };
    let unpredicted = actual.difference(&predicted).copied().collect();
    let absent: Vec<u64> = predicted.difference(&actual).copied().collect();
    let missing: BTreeSet<u64> = absent.iter().copied().filter(|&d| covered(d)).collect();
    let undetermined: BTreeSet<u64> = absent.iter().copied().filter(|&d| !covered(d)).collect();
    let verdict = if !missing.is_empty() {
        Verdict::Fails
    } else if !undetermined.is_empty() {
        Verdict::Undetermined
    } else {
        Verdict::Holds
    };
    Ok(ConjectureReport {
        complex: complex.to_string(),
        levels: levels.as_slice().to_vec(),
        fields: fields.iter().map(|k| k.to_string()).collect(),
        predicted_degrees: predicted,
        actual_degrees: actual,
        unpredicted,
        missing,
        undetermined,
        completeness: summary.completeness,
        theorem_status,
        verdict,
    })
}

/// The strongest theorem that settles the relation for `complex` over `field`.
///
/// A reducible complex counts as covered when it splits into two pieces
/// meeting in a simplex and both pieces are covered, recursively.
pub fn classify_theorem_coverage(complex: &SimplicialComplex, field: FieldSpec) -> TheoremStatus {
    classify(complex, field, &mut HashMap::new())
}

fn classify(
    complex: &SimplicialComplex,
    field: FieldSpec,
    memo: &mut HashMap<SimplicialComplex, TheoremStatus>,
) -> TheoremStatus {
    if let Some(&s) = memo.get(complex) {
        return s;
    }
    let status = if complex.is_vertex_decomposable() {
        TheoremStatus::VertexDecomposable
    } else if complex.is_decomposable()
        || complex
            .reducible_splits()
            .iter()
            .any(|s| !classify(&s.left, field, memo).is_open() && !classify(&s.right, field, memo).is_open())
    {
        TheoremStatus::DecomposableOrReducible
    } else if betti_diagram(complex, field).nonzero_rows().iter().all(|&j| j <= 2) {
        TheoremStatus::RowsLe2
    } else if complex.dimension() == 2 && is_gorenstein(complex, field) {
        TheoremStatus::GorensteinDim2
    } else {
        TheoremStatus::Open
    };
    memo.insert(complex.clone(), status);
    status
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::parse_complex;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn cx(s: &str) -> SimplicialComplex {
        parse_complex(s).unwrap()
    }

    fn set(v: &[u64]) -> BTreeSet<u64> {
        v.iter().copied().collect()
    }

    #[test]
    fn four_cycle_report() {
        let r = check_conjecture(&cx("n=4; 12 23 34 14"), &Levels::binary(4), &[]).unwrap();
        assert_eq!(r.predicted_degrees, set(&[2, 4]));
        assert_eq!(r.actual_degrees, set(&[2, 4]));
        assert!(r.missing.is_empty());
        assert_eq!(r.theorem_status, TheoremStatus::VertexDecomposable);
        assert!(r.holds());
        assert_eq!(r.fields, vec!["QQ", "F2"]);
    }

    #[test]
    fn complete_graph_has_unpredicted_six() {
        let r = check_conjecture(&cx("n=4; 12 13 14 23 24 34"), &Levels::binary(4), &[Q]).unwrap();
        assert_eq!(r.predicted_degrees, set(&[4]));
        assert_eq!(r.actual_degrees, set(&[4, 6]));
        assert_eq!(r.unpredicted, set(&[6]));
        assert!(r.holds());
    }

    #[test]
    fn partial_results_leave_high_predictions_undetermined() {
        let opts = MarkovOptions {
            degree_bound: Some(3),
            ..MarkovOptions::default()
        };
        let r = check_conjecture_with(&cx("n=4; 12 23 34 14"), &Levels::binary(4), &[Q], &opts).unwrap();
        assert_eq!(r.actual_degrees, set(&[2]));
        assert_eq!(r.undetermined, set(&[4]));
        assert!(r.missing.is_empty());
        assert_eq!(r.verdict, Verdict::Undetermined);
    }

    #[test]
    fn classification_examples() {
        assert_eq!(
            classify_theorem_coverage(&cx("n=5; 123 24 35"), Q),
            TheoremStatus::DecomposableOrReducible
        );
        let octahedron = cx("n=6; 135 136 145 146 235 236 245 246");
        // Gorenstein of dimension 2, but a join of 0-spheres and so already
        // vertex decomposable.
        assert!(is_gorenstein(&octahedron, Q));
        assert_eq!(classify_theorem_coverage(&octahedron, Q), TheoremStatus::VertexDecomposable);
        for g in ["n=4; 12 13 14 23 24 34", "n=5; 12 23 34 45 15", "n=4; 12 34"] {
            assert!(classify_theorem_coverage(&cx(g), Q) <= TheoremStatus::RowsLe2);
        }
        assert_eq!(
            classify_theorem_coverage(&cx("n=4; 12 13 14 23 24 34"), Q),
            TheoremStatus::VertexDecomposable
        );
        assert_eq!(classify_theorem_coverage(&cx("n=4; 123 24 34 14"), Q), TheoremStatus::RowsLe2);
        assert_eq!(
            classify_theorem_coverage(&cx("n=4; 12 23 31 4"), Q),
            TheoremStatus::DecomposableOrReducible
        );
    }

    #[test]
    fn reducible_pieces_must_be_covered() {
        // Two copies of a complex with a degree-3 row glued at a vertex.
        let c = cx("n=7; 123 124 134 234 45 56 57 67");
        let s = classify_theorem_coverage(&c, Q);
        assert_ne!(s, TheoremStatus::Open);
    }

    #[test]
    fn status_order_is_strength() {
        assert!(TheoremStatus::VertexDecomposable < TheoremStatus::Open);
        assert_eq!(
            serde_json::to_string(&TheoremStatus::RowsLe2).unwrap(),
            "\"rows_le_2\""
        );
    }
}
