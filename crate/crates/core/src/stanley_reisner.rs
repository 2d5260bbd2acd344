//! The Stanley–Reisner ideal `I_Δ` and its graded Betti numbers.
//!
//! Betti numbers come from Hochster's formula
//! `β_{i,i+j}(K[x]/I_Δ) = Σ_{|σ| = i+j} dim_K H̃^{j-1}(Δ|_σ; K)`,
//! summed over all `σ ⊆ [n]`. The subset `σ = ∅` contributes the entry
//! `β_{0,0} = 1` through `H̃^{-1}({∅}) = K`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::homology::{reduced_cohomology, FieldSpec};

/// A squarefree monomial ideal, stored by the supports of its minimal generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialIdealSF {
    pub n: usize,
    pub generators: Vec<Face>,
}

impl MonomialIdealSF {
    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// Smallest generator degree; `None` for the zero ideal.
    pub fn initial_degree(&self) -> Option<usize> {
        self.generators.iter().map(|g| g.len()).min()
    }
}

impl fmt::Display for MonomialIdealSF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (k, g) in self.generators.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            if g.is_empty() {
                write!(f, "1")?;
            }
            for v in g.vertices() {
                write!(f, "x{v}")?;
            }
        }
        write!(f, ">")
    }
}

/// Minimal non-faces of `Δ`, i.e. the generators of `I_Δ`.
pub fn minimal_nonfaces(complex: &SimplicialComplex) -> MonomialIdealSF {
    MonomialIdealSF {
        n: complex.n(),
        generators: complex.minimal_nonfaces(),
    }
}

/// `min{|F| : F ∉ Δ}`.
pub fn initial_degree_sr(complex: &SimplicialComplex) -> Result<usize> {
    minimal_nonfaces(complex).initial_degree().ok_or(Error::FullSimplex)
}

/// Graded Betti numbers `β_{i,i+j}`, keyed by `(i, j)`; zero entries are absent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BettiDiagram {
    pub field: FieldSpec,
    entries: BTreeMap<(usize, usize), usize>,
}

#[derive(Serialize, Deserialize)]
struct BettiJson {
    field: String,
    entries: Vec<(usize, usize, usize)>,
}

impl BettiDiagram {
    pub fn from_entries<I: IntoIterator<Item = ((usize, usize), usize)>>(field: FieldSpec, entries: I) -> Self {
        let mut map = BTreeMap::new();
        for (k, v) in entries {
            if v > 0 {
                *map.entry(k).or_insert(0) += v;
            }
        }
        BettiDiagram { field, entries: map }
    }

    /// `β_{i,i+j}`.
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), usize)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    /// Largest homological index with a nonzero entry.
    pub fn length(&self) -> usize {
        self.entries.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    /// Largest row index with a nonzero entry.
    pub fn regularity(&self) -> usize {
        self.entries.keys().map(|&(_, j)| j).max().unwrap_or(0)
    }

    /// Column sums `Σ_j β_{i,i+j}` for `i = 0..=length`.
    pub fn totals(&self) -> Vec<usize> {
        let mut t = vec![0; self.length() + 1];
        for (&(i, _), &v) in &self.entries {
            t[i] += v;
        }
        t
    }

    /// Rows `j` with a nonzero entry in some column `i ≥ 1`.
    pub fn nonzero_rows(&self) -> BTreeSet<usize> {
        self.entries
            .keys()
            .filter(|&&(i, _)| i >= 1)
            .map(|&(_, j)| j)
            .collect()
    }

    pub fn to_json(&self) -> String {
        let j = BettiJson {
            field: self.field.to_string(),
            entries: self.entries.iter().map(|(&(i, j), &v)| (i, j, v)).collect(),
        };
        serde_json::to_string(&j).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: BettiJson = serde_json::from_str(s)?;
        let field = j.field.parse()?;
        Ok(BettiDiagram::from_entries(
            field,
            j.entries.into_iter().map(|(i, jj, v)| ((i, jj), v)),
        ))
    }
}

impl fmt::Display for BettiDiagram {
    /// The usual layout: a header of column indices, a `total:` row, then one
    /// row per `j` with `.` for zero.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols = self.length() + 1;
        let rows = self.regularity() + 1;
        let totals = self.totals();
        let mut width = vec![1usize; cols];
        for (i, w) in width.iter_mut().enumerate() {
            *w = (*w).max(i.to_string().len()).max(totals[i].to_string().len());
        }
        let label = "total:".len().max(format!("{}:", rows - 1).len());
        let line = |f: &mut fmt::Formatter<'_>, head: &str, cells: Vec<String>| -> fmt::Result {
            write!(f, "{head:>label$}")?;
            for (i, c) in cells.iter().enumerate() {
                write!(f, " {c:>w$}", w = width[i])?;
            }
            writeln!(f)
        };
        line(f, "", (0..cols).map(|i| i.to_string()).collect())?;
        line(f, "total:", totals.iter().map(|t| t.to_string()).collect())?;
        for j in 0..rows {
            let cells = (0..cols)
                .map(|i| match self.get(i, j) {
                    0 => ".".to_string(),
                    v => v.to_string(),
                })
                .collect();
            line(f, &format!("{j}:"), cells)?;
        }
        Ok(())
    }
}

/// Betti diagram of `K[x_1..x_n]/I_Δ` over `field`, by Hochster's formula.
pub fn betti_diagram(complex: &SimplicialComplex, field: FieldSpec) -> BettiDiagram {
    let n = complex.n();
    assert!(n < 32, "Hochster evaluation is limited to fewer than 32 vertices");
    let contributions: Vec<((usize, usize), usize)> = (0u64..1 << n)
        .into_par_iter()
        .flat_map_iter(|bits| {
            let sigma = Face::from_bits(bits);
            let size = sigma.len();
            let ranks = reduced_cohomology(&complex.restriction(sigma), field);
            // ranks[k] is dim H̃^{k-1}, which lands in row j = k.
            ranks
                .into_iter()
                .enumerate()
                .filter(move |&(j, r)| r > 0 && j <= size)
                .map(move |(j, r)| ((size - j, j), r))
                .collect::<Vec<_>>()
        })
        .collect();
    BettiDiagram::from_entries(field, contributions)
}

/// Rows of the Betti diagram with an entry in some column `i ≥ 1`, and the
/// Markov degrees `2^j` they predict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjecturePrediction {
    pub rows: BTreeSet<usize>,
    pub predicted_degrees: BTreeSet<u64>,
}

impl ConjecturePrediction {
    pub fn from_rows(rows: BTreeSet<usize>) -> Self {
        let predicted_degrees = rows.iter().map(|&j| 1u64 << j).collect();
        ConjecturePrediction { rows, predicted_degrees }
    }

    pub fn union(&self, other: &Self) -> Self {
        ConjecturePrediction::from_rows(self.rows.union(&other.rows).copied().collect())
    }
}

pub fn predicted_degrees(complex: &SimplicialComplex, field: FieldSpec) -> ConjecturePrediction {
    ConjecturePrediction::from_rows(betti_diagram(complex, field).nonzero_rows())
}

/// The Alexander dual `{σ ⊆ [n] : [n] ∖ σ ∉ Δ}`.
pub fn alexander_dual(complex: &SimplicialComplex) -> Result<SimplicialComplex> {
    complex.alexander_dual()
}

/// Whether every link (the complex itself included) has the reduced
/// cohomology of a sphere of its own dimension over `field`.
pub fn is_gorenstein(complex: &SimplicialComplex, field: FieldSpec) -> bool {
    complex.all_faces().into_par_iter().all(|face| {
        let link = complex.link(face).expect("face of the complex");
        let top = (link.dimension() + 1) as usize;
        reduced_cohomology(&link, field)
            .iter()
            .enumerate()
            .all(|(k, &r)| r == usize::from(k == top))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::parse_complex;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn cx(s: &str) -> SimplicialComplex {
        parse_complex(s).unwrap()
    }

    fn gens(c: &SimplicialComplex) -> BTreeSet<Vec<u32>> {
        minimal_nonfaces(c).generators.iter().map(|f| f.to_vec()).collect()
    }

    #[test]
    fn nonfaces() {
        let c4 = cx("n=4; 12 23 34 14");
        assert_eq!(gens(&c4), BTreeSet::from([vec![1, 3], vec![2, 4]]));
        let g = cx("n=5; 12 13 14 15 23 24 25 34");
        let expected: BTreeSet<Vec<u32>> = [
            vec![4, 5],
            vec![3, 5],
            vec![1, 2, 5],
            vec![1, 3, 4],
            vec![2, 3, 4],
            vec![1, 2, 4],
            vec![1, 2, 3],
        ]
        .into_iter()
        .collect();
        assert_eq!(gens(&g), expected);
        assert_eq!(gens(&SimplicialComplex::simplex_boundary(4)), BTreeSet::from([vec![1, 2, 3, 4]]));
    }

    #[test]
    fn initial_degrees() {
        let k5 = cx("n=5; 12 13 14 15 23 24 25 34 35 45");
        assert_eq!(initial_degree_sr(&k5), Ok(3));
        assert_eq!(initial_degree_sr(&cx("n=4; 12 23")), Ok(1));
        assert_eq!(initial_degree_sr(&cx("n=4; 12 23 34 14")), Ok(2));
        assert_eq!(initial_degree_sr(&SimplicialComplex::simplex(3)), Err(Error::FullSimplex));
    }

    #[test]
    fn four_cycle_diagram() {
        let d = betti_diagram(&cx("n=4; 12 23 34 14"), Q);
        let entries: Vec<_> = d.entries().collect();
        assert_eq!(entries, vec![((0, 0), 1), ((1, 1), 2), ((2, 2), 1)]);
        assert_eq!(d.totals(), vec![1, 2, 1]);
        assert_eq!(d.regularity(), 2);
        assert_eq!(d.to_string(), "       0 1 2\ntotal: 1 2 1\n    0: 1 . .\n    1: . 2 .\n    2: . . 1\n");
    }

    #[test]
    fn graph_with_cubic_nonfaces() {
        let d = betti_diagram(&cx("n=5; 12 13 14 15 23 24 25 34"), Q);
        assert_eq!(d.totals(), vec![1, 7, 10, 4]);
        assert_eq!(d.get(1, 1), 2);
        assert_eq!(d.get(2, 1), 1);
        assert_eq!(d.get(1, 2), 5);
        assert_eq!(d.get(2, 2), 9);
        assert_eq!(d.get(3, 2), 4);
    }

    #[test]
    fn path_dual() {
        let path = cx("n=5; 12 23 34 45");
        let dual = alexander_dual(&path).unwrap();
        let expected: BTreeSet<Vec<u32>> =
            [vec![3, 4, 5], vec![1, 2, 5], vec![1, 4, 5], vec![1, 2, 3]].into_iter().collect();
        assert_eq!(gens(&dual), expected);
        assert_eq!(alexander_dual(&dual).unwrap(), path);
        for field in [Q, FieldSpec::Prime(2), FieldSpec::Prime(3)] {
            let d = betti_diagram(&dual, field);
            assert_eq!(d.totals(), vec![1, 4, 3]);
            assert_eq!(d.get(1, 2), 4);
            assert_eq!(d.get(2, 2), 3);
            assert_eq!(d.regularity(), 2);
        }
        assert_eq!(predicted_degrees(&dual, Q).predicted_degrees, BTreeSet::from([4]));
    }

    #[test]
    fn predictions() {
        let c4 = cx("n=4; 12 23 34 14");
        assert_eq!(predicted_degrees(&c4, Q).predicted_degrees, BTreeSet::from([2, 4]));
        let b = SimplicialComplex::simplex_boundary(4);
        let d = betti_diagram(&b, Q);
        assert_eq!(d.entries().collect::<Vec<_>>(), vec![((0, 0), 1), ((1, 3), 1)]);
        assert_eq!(predicted_degrees(&b, Q).predicted_degrees, BTreeSet::from([8]));
        let missing = cx("n=3; 12");
        assert!(predicted_degrees(&missing, Q).predicted_degrees.contains(&1));
    }

    #[test]
    fn zero_ideal_diagram() {
        let d = betti_diagram(&SimplicialComplex::simplex(3), Q);
        assert_eq!(d.regularity(), 0);
        assert_eq!(d.totals(), vec![1]);
    }

    #[test]
    fn dual_of_simplex_boundary_is_trivial() {
        // Brute force over all σ ⊆ [3]: σ is a face iff its complement is not.
        let b = SimplicialComplex::simplex_boundary(3);
        let full = Face::full(3);
        let faces: Vec<Face> = full.subsets().filter(|s| !b.contains_face(full.difference(*s))).collect();
        assert_eq!(faces, vec![Face::EMPTY]);
        assert!(alexander_dual(&b).unwrap().is_trivial());
    }

    #[test]
    fn gorenstein() {
        assert!(is_gorenstein(&cx("n=4; 12 23 34 14"), Q));
        assert!(!is_gorenstein(&cx("n=3; 12 23"), Q));
        let octahedron = cx("n=6; 123 126 153 156 423 426 453 456");
        assert!(is_gorenstein(&octahedron, Q));
        assert!(is_gorenstein(&octahedron, FieldSpec::Prime(2)));
    }

    #[test]
    fn json_round_trip() {
        let d = betti_diagram(&cx("n=4; 12 23 34 14"), FieldSpec::Prime(2));
        let j = d.to_json();
        assert_eq!(j, r#"{"field":"F2","entries":[[0,0,1],[1,1,2],[2,2,1]]}"#);
        assert_eq!(BettiDiagram::from_json(&j).unwrap(), d);
    }
}
