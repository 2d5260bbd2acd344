//! The design matrix `M(Δ, d)` of a hierarchical model.
//!
//! Conventions:
//!
//! * cells are 0-based coordinate tuples `(i_1, ..., i_n)` with
//!   `0 <= i_k < d_k`; column order is lexicographic with the last
//!   coordinate varying fastest;
//! * rows are grouped facet by facet in canonical facet order; within a
//!   facet block the assignments to the facet's vertices (in increasing
//!   label order) are lexicographic with the last vertex varying fastest.
//!
//! With these conventions the complex `{1},{2}` at `d = (2, 2)` yields the
//! familiar `4 × 4` matrix of row and column sums.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::complex::{Face, SimplicialComplex, Vertex};
use crate::error::{Error, Result};
use crate::homology::rank_rational;

/// Level counts `(d_1, ..., d_n)`, each at least 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Levels(Vec<usize>);

/// Cap on the number of cells `N`.
pub const MAX_CELLS: usize = 1 << 20;

impl Levels {
    pub fn new(d: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = d.iter().find(|&&x| x < 2) {
            return Err(Error::InvalidLevels(format!("level {bad} is below 2")));
        }
        let mut cells: usize = 1;
        for &x in &d {
            cells = cells
                .checked_mul(x)
                .filter(|&c| c <= MAX_CELLS)
                .ok_or_else(|| Error::InvalidLevels(format!("more than {MAX_CELLS} cells")))?;
        }
        Ok(Levels(d))
    }

    pub fn binary(n: usize) -> Self {
        Levels::new(vec![2; n]).expect("binary levels")
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_binary(&self) -> bool {
        self.0.iter().all(|&x| x == 2)
    }

    /// Number of cells `N = Π d_k`.
    pub fn cells(&self) -> usize {
        self.0.iter().product()
    }

    /// Levels of the coordinates in `face`, in increasing label order.
    pub fn restrict(&self, face: Face) -> Levels {
        Levels(face.vertices().map(|v| self.0[v as usize - 1]).collect())
    }

    /// Levels with coordinate `v` removed.
    pub fn without(&self, v: Vertex) -> Levels {
        let mut d = self.0.clone();
        d.remove(v as usize - 1);
        Levels(d)
    }

    /// Column index of a cell (last coordinate fastest).
    pub fn index(&self, coords: &[usize]) -> usize {
        debug_assert_eq!(coords.len(), self.0.len());
        coords
            .iter()
            .zip(&self.0)
            .fold(0, |acc, (&c, &d)| acc * d + c)
    }

    /// Cell coordinates of a column index.
    pub fn coords(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.0.len()];
        for k in (0..self.0.len()).rev() {
            out[k] = index % self.0[k];
            index /= self.0[k];
        }
        out
    }
}

impl FromStr for Levels {
    type Err = Error;

    /// Parses `2,2,3`.
    fn from_str(s: &str) -> Result<Self> {
        let d = s
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::InvalidLevels(format!("cannot parse `{s}`")))?;
        Levels::new(d)
    }
}

impl fmt::Display for Levels {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// An integer table indexed by the cells of `levels`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerTable {
    pub levels: Levels,
    pub values: Vec<i64>,
}

impl IntegerTable {
    pub fn new(levels: Levels, values: Vec<i64>) -> Result<Self> {
        if values.len() != levels.cells() {
            return Err(Error::Invalid(format!(
                "table has {} entries, expected {}",
                values.len(),
                levels.cells()
            )));
        }
        Ok(IntegerTable { levels, values })
    }

    pub fn get(&self, coords: &[usize]) -> i64 {
        self.values[self.levels.index(coords)]
    }
}

/// The `F`-margin of `table`: sums over all coordinates outside `face`.
pub fn margin(table: &IntegerTable, face: Face) -> IntegerTable {
    let sub = table.levels.restrict(face);
    let keep: Vec<usize> = face.vertices().map(|v| v as usize - 1).collect();
    let mut values = vec![0i64; sub.cells()];
    for (idx, &x) in table.values.iter().enumerate() {
        if x != 0 {
            let c = table.levels.coords(idx);
            let proj: Vec<usize> = keep.iter().map(|&k| c[k]).collect();
            values[sub.index(&proj)] += x;
        }
    }
    IntegerTable { levels: sub, values }
}

/// The 0/1 matrix of the map `T ↦ (T_{F_1}, ..., T_{F_s})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarginalMatrix {
    levels: Levels,
    facets: Vec<Face>,
    /// `(facet, assignment to the facet's vertices)` for every row.
    row_index: Vec<(Face, Vec<usize>)>,
    /// First row of each facet block.
    block_start: Vec<usize>,
    /// For every column, its row in each facet block.
    col_rows: Vec<Vec<usize>>,
}

pub fn marginal_matrix(complex: &SimplicialComplex, levels: &Levels) -> Result<MarginalMatrix> {
    if levels.len() != complex.n() {
        return Err(Error::InvalidLevels(format!(
            "{} levels given for {} vertices",
            levels.len(),
            complex.n()
        )));
    }
    let facets = complex.facets().to_vec();
    let mut row_index = Vec::new();
    let mut block_start = Vec::with_capacity(facets.len());
    for &f in &facets {
        block_start.push(row_index.len());
        let sub = levels.restrict(f);
        for a in 0..sub.cells() {
            row_index.push((f, sub.coords(a)));
        }
    }
    let col_rows = (0..levels.cells())
        .map(|col| {
            let c = levels.coords(col);
            facets
                .iter()
                .zip(&block_start)
                .map(|(&f, &start)| {
                    let proj: Vec<usize> = f.vertices().map(|v| c[v as usize - 1]).collect();
                    start + levels.restrict(f).index(&proj)
                })
                .collect()
        })
        .collect();
    Ok(MarginalMatrix {
        levels: levels.clone(),
        facets,
        row_index,
        block_start,
        col_rows,
    })
}

impl MarginalMatrix {
    pub fn levels(&self) -> &Levels {
        &self.levels
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn row_index(&self) -> &[(Face, Vec<usize>)] {
        &self.row_index
    }

    pub fn nrows(&self) -> usize {
        self.row_index.len()
    }

    /// Number of columns `N`.
    pub fn ncols(&self) -> usize {
        self.col_rows.len()
    }

    /// Row positions of the 1s in column `col`, one per facet block.
    pub fn column_support(&self, col: usize) -> &[usize] {
        &self.col_rows[col]
    }

    /// Row ranges of the facet blocks.
    pub fn blocks(&self) -> Vec<std::ops::Range<usize>> {
        let mut out = Vec::with_capacity(self.block_start.len());
        for (k, &s) in self.block_start.iter().enumerate() {
            let e = self.block_start.get(k + 1).copied().unwrap_or(self.nrows());
            out.push(s..e);
        }
        out
    }

    pub fn dense(&self) -> Vec<Vec<u8>> {
        let mut m = vec![vec![0u8; self.ncols()]; self.nrows()];
        for (c, rows) in self.col_rows.iter().enumerate() {
            for &r in rows {
                m[r][c] = 1;
            }
        }
        m
    }

    /// `M · u`.
    pub fn apply(&self, u: &[i64]) -> Vec<i64> {
        assert_eq!(u.len(), self.ncols());
        let mut out = vec![0i64; self.nrows()];
        for (c, &x) in u.iter().enumerate() {
            if x != 0 {
                for &r in &self.col_rows[c] {
                    out[r] += x;
                }
            }
        }
        out
    }

    pub fn in_kernel(&self, u: &[i64]) -> bool {
        u.len() == self.ncols() && self.apply(u).iter().all(|&x| x == 0)
    }

    pub fn rank(&self) -> usize {
        let dense: Vec<Vec<i64>> = self
            .dense()
            .into_iter()
            .map(|r| r.into_iter().map(i64::from).collect())
            .collect();
        rank_rational(&dense)
    }

    pub fn kernel_rank(&self) -> usize {
        self.ncols() - self.rank()
    }

    /// Stable text identifying the matrix (levels and facet list).
    pub fn fingerprint(&self) -> String {
        let facets: Vec<String> = self.facets.iter().map(|f| f.to_string()).collect();
        format!("d={};facets={}", self.levels, facets.join(""))
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Out<'a> {
            levels: &'a Levels,
            rows: Vec<(Vec<Vertex>, &'a [usize])>,
            entries: Vec<Vec<u8>>,
        }
        let out = Out {
            levels: &self.levels,
            rows: self.row_index.iter().map(|(f, a)| (f.to_vec(), a.as_slice())).collect(),
            entries: self.dense(),
        };
        serde_json::to_string(&out).expect("serializable")
    }
}

impl fmt::Display for MarginalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.dense() {
            let s: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", s.join(" "))?;
        }
        Ok(())
    }
}

/// The two blocks of `M(Δ, d)` with respect to vertex `v`: `A` for the link
/// of `v` and `B` for the facets avoiding `v` (absent when `Δ` is a cone
/// with apex `v`). Both live on the coordinates other than `v`.
pub fn block_split(
    complex: &SimplicialComplex,
    levels: &Levels,
    v: Vertex,
) -> Result<(MarginalMatrix, Option<MarginalMatrix>)> {
    let rest = levels.without(v);
    let link = complex.link(Face::singleton(v))?.drop_vertex(v)?;
    let a = marginal_matrix(&link, &rest)?;
    let b = match complex.facet_deletion(v) {
        Ok(del) => Some(marginal_matrix(&del.drop_vertex(v)?, &rest)?),
        Err(Error::ConeApex(_)) => None,
        Err(e) => return Err(e),
    };
    Ok((a, b))
}

/// A lattice basis of `ker_ℤ M`, in Hermite normal form.
pub fn kernel_lattice_basis(m: &MarginalMatrix) -> Result<Vec<Vec<i64>>> {
    let n = m.ncols();
    let r = m.nrows();
    // Rows of [Mᵀ | I_N]; unimodular row operations preserve the lattice
    // spanned by the identity part, and rows whose Mᵀ part vanishes span
    // the kernel.
    let mut rows: Vec<Vec<i128>> = (0..n)
        .map(|c| {
            let mut row = vec![0i128; r + n];
            for &k in m.column_support(c) {
                row[k] = 1;
            }
            row[r + c] = 1;
            row
        })
        .collect();
    let rank = echelonize(&mut rows, 0..r)?;
    let mut kernel: Vec<Vec<i128>> = rows[rank..].iter().map(|row| row[r..].to_vec()).collect();
    let k = echelonize(&mut kernel, 0..n)?;
    debug_assert_eq!(k, kernel.len());
    kernel
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|x| i64::try_from(x).map_err(|_| Error::Overflow("kernel lattice basis")))
                .collect()
        })
        .collect()
}

/// Integer row echelon form over the given columns, with positive pivots and
/// entries above each pivot reduced into `[0, pivot)`. Returns the rank.
pub(crate) fn echelonize(rows: &mut [Vec<i128>], cols: std::ops::Range<usize>) -> Result<usize> {
    let overflow = || Error::Overflow("integer row reduction");
    let mut rank = 0;
    for c in cols {
        if rank == rows.len() {
            break;
        }
        loop {
            let pivot = (rank..rows.len())
                .filter(|&i| rows[i][c] != 0)
                .min_by_key(|&i| rows[i][c].unsigned_abs());
            let Some(p) = pivot else { break };
            rows.swap(rank, p);
            let mut done = true;
            for i in rank + 1..rows.len() {
                if rows[i][c] != 0 {
                    let q = rows[i][c] / rows[rank][c];
                    let (head, tail) = rows.split_at_mut(i);
                    sub_multiple(&mut tail[0], &head[rank], q).ok_or_else(overflow)?;
                    if tail[0][c] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if rank == rows.len() || rows[rank][c] == 0 {
            continue;
        }
        if rows[rank][c] < 0 {
            for x in rows[rank].iter_mut() {
                *x = -*x;
            }
        }
        let piv = rows[rank][c];
        for i in 0..rank {
            let q = rows[i][c].div_euclid(piv);
            if q != 0 {
                let (head, tail) = rows.split_at_mut(rank);
                sub_multiple(&mut head[i], &tail[0], q).ok_or_else(overflow)?;
            }
        }
        rank += 1;
    }
    Ok(rank)
}

fn sub_multiple(target: &mut [i128], source: &[i128], q: i128) -> Option<()> {
    for (t, &s) in target.iter_mut().zip(source) {
        *t = t.checked_sub(s.checked_mul(q)?)?;
    }
    Some(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::parse_complex;

    fn cx(s: &str) -> SimplicialComplex {
        parse_complex(s).unwrap()
    }

    #[test]
    fn levels() {
        assert!(Levels::new(vec![2, 1]).is_err());
        let l: Levels = "2,3".parse().unwrap();
        assert_eq!(l.cells(), 6);
        assert_eq!(l.index(&[1, 2]), 5);
        assert_eq!(l.coords(4), vec![1, 1]);
        assert!("2,x".parse::<Levels>().is_err());
    }

    #[test]
    fn margins_of_two_by_two() {
        let t = IntegerTable::new(Levels::binary(2), vec![1, 2, 3, 4]).unwrap();
        assert_eq!(margin(&t, Face::singleton(1)).values, vec![3, 7]);
        assert_eq!(margin(&t, Face::singleton(2)).values, vec![4, 6]);
        assert_eq!(margin(&t, Face::EMPTY).values, vec![10]);
        assert_eq!(margin(&t, Face::full(2)), t);
    }

    #[test]
    fn segre_matrix() {
        let m = marginal_matrix(&cx("n=2; 1 2"), &Levels::binary(2)).unwrap();
        let expected = vec![vec![1, 1, 0, 0], vec![0, 0, 1, 1], vec![1, 0, 1, 0], vec![0, 1, 0, 1]];
        assert_eq!(m.dense(), expected);
        assert_eq!(kernel_lattice_basis(&m).unwrap(), vec![vec![1, -1, -1, 1]]);
    }

    #[test]
    fn trivial_complex_matrix() {
        let m = marginal_matrix(&SimplicialComplex::trivial(2), &Levels::binary(2)).unwrap();
        assert_eq!(m.dense(), vec![vec![1, 1, 1, 1]]);
        let k = kernel_lattice_basis(&m).unwrap();
        assert_eq!(k.len(), 3);
        assert!(k.iter().all(|u| m.in_kernel(u)));
    }

    #[test]
    fn full_simplex_has_no_kernel() {
        let m = marginal_matrix(&SimplicialComplex::simplex(3), &Levels::new(vec![2, 3, 2]).unwrap()).unwrap();
        assert!(kernel_lattice_basis(&m).unwrap().is_empty());
        assert_eq!(m.kernel_rank(), 0);
    }

    #[test]
    fn triangle_boundary_matrix() {
        let m = marginal_matrix(&cx("n=3; 12 13 23"), &Levels::binary(3)).unwrap();
        assert_eq!((m.nrows(), m.ncols()), (12, 8));
        assert_eq!(m.apply(&[1; 8]), vec![2; 12]);
        assert_eq!(kernel_lattice_basis(&m).unwrap(), vec![vec![1, -1, -1, 1, -1, 1, 1, -1]]);
    }

    #[test]
    fn blocks_of_four_cycle() {
        let c4 = cx("n=4; 12 23 34 14");
        let lv = Levels::binary(4);
        let (a, b) = block_split(&c4, &lv, 1).unwrap();
        let rest = Levels::binary(3);
        assert_eq!(a, marginal_matrix(&cx("n=3; 1 3"), &rest).unwrap());
        assert_eq!(b.unwrap(), marginal_matrix(&cx("n=3; 12 23"), &rest).unwrap());
        let (_, b) = block_split(&cx("n=3; 12 13"), &Levels::binary(3), 1).unwrap();
        assert!(b.is_none());
        let (a, b) = block_split(&cx("n=1; 1"), &Levels::binary(1), 1).unwrap();
        assert_eq!(a.dense(), vec![vec![1]]);
        assert!(b.is_none());
    }

    #[test]
    fn kernel_lattice_is_saturated() {
        // 2x3 independence: kernel rank 2 and the HNF basis has unit pivots.
        let m = marginal_matrix(&cx("n=2; 1 2"), &Levels::new(vec![2, 3]).unwrap()).unwrap();
        let k = kernel_lattice_basis(&m).unwrap();
        assert_eq!(k.len(), 2);
        assert_eq!(m.kernel_rank(), 2);
        for u in &k {
            assert!(m.in_kernel(u));
            assert_eq!(u.iter().find(|&&x| x != 0), Some(&1));
        }
    }
}
