//! Reduced simplicial cohomology over ℚ and prime fields.
//!
//! Ranks come from exact integer boundary matrices. Over ℚ the rank is found
//! by fraction-free (Bareiss) elimination, in `i128` with a big-integer
//! fallback on overflow; over `𝔽_p` by elimination mod `p`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};

/// Coefficient field: the rationals or a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub enum FieldSpec {
    #[default]
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    /// Characteristic; 0 for ℚ.
    pub fn characteristic(self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => p,
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut q = 2;
    while q * q <= p {
        if p.is_multiple_of(q) {
            return false;
        }
        q += 1;
    }
    true
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "QQ"),
            FieldSpec::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `q`, `QQ`, `rationals`, `f2`, `F3`, `gf5`, ...
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        if matches!(t.as_str(), "q" | "qq" | "rationals" | "rational") {
            return Ok(FieldSpec::Rationals);
        }
        let digits = t
            .strip_prefix("gf")
            .or_else(|| t.strip_prefix('f'))
            .unwrap_or(&t);
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::Parse(format!("unknown field `{s}`")))?;
        FieldSpec::prime(p)
    }
}

/// The simplicial boundary map `∂_k : C_k → C_{k-1}` as a dense integer matrix.
///
/// Rows are indexed by the `(k-1)`-faces and columns by the `k`-faces, both
/// in canonical order. `∂_0` is the augmentation onto the empty face.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryMatrix {
    pub k: isize,
    pub rows: Vec<Face>,
    pub cols: Vec<Face>,
    pub entries: Vec<Vec<i64>>,
}

impl BoundaryMatrix {
    pub fn shape(&self) -> (usize, usize) {
        (self.rows.len(), self.cols.len())
    }

    /// Matrix product `self * other`.
    pub fn compose(&self, other: &BoundaryMatrix) -> Vec<Vec<i64>> {
        assert_eq!(self.cols.len(), other.rows.len());
        let mut out = vec![vec![0i64; other.cols.len()]; self.rows.len()];
        for (i, row) in self.entries.iter().enumerate() {
            for (k, &a) in row.iter().enumerate() {
                if a != 0 {
                    for (j, &b) in other.entries[k].iter().enumerate() {
                        out[i][j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

fn boundary_from_faces(k: isize, rows: Vec<Face>, cols: Vec<Face>) -> BoundaryMatrix {
    let index: HashMap<Face, usize> = rows.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let mut entries = vec![vec![0i64; cols.len()]; rows.len()];
    for (c, &face) in cols.iter().enumerate() {
        for (pos, v) in face.vertices().enumerate() {
            let r = index[&face.without(v)];
            entries[r][c] = if pos % 2 == 0 { 1 } else { -1 };
        }
    }
    BoundaryMatrix { k, rows, cols, entries }
}

/// `∂_k` of `complex`; empty when `k` is outside `[-1, dim + 1]`.
pub fn boundary_matrix(complex: &SimplicialComplex, k: isize) -> BoundaryMatrix {
    boundary_from_faces(k, complex.faces(k - 1), complex.faces(k))
}

/// Rank of an integer matrix over the given field.
pub fn rank(entries: &[Vec<i64>], field: FieldSpec) -> usize {
    match field {
        FieldSpec::Rationals => rank_rational(entries),
        FieldSpec::Prime(p) => rank_mod_p(entries, p),
    }
}

/// Rank over ℚ by Bareiss elimination.
pub fn rank_rational(entries: &[Vec<i64>]) -> usize {
    let m: Vec<Vec<i128>> = entries
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    match bareiss_i128(m) {
        Some(r) => r,
        None => bareiss_big(
            entries
                .iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        ),
    }
}

fn bareiss_i128(mut m: Vec<Vec<i128>>) -> Option<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut prev: i128 = 1;
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][c];
        let (top, rest) = m.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in rest {
            let lead = row[c];
            for (x, &y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                let a = x.checked_mul(pivot)?;
                let b = y.checked_mul(lead)?;
                *x = a.checked_sub(b)? / prev;
            }
        }
        prev = pivot;
        rank += 1;
    }
    Some(rank)
}

fn bareiss_big(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        let (top, rest) = m.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in rest {
            let lead = row[c].clone();
            for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                *x = (&*x * &pivot - y * &lead) / &prev;
            }
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Rank over `𝔽_p`.
pub fn rank_mod_p(entries: &[Vec<i64>], p: u64) -> usize {
    let mut m: Vec<Vec<u64>> = entries
        .iter()
        .map(|r| r.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect())
        .collect();
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = pow_mod(m[rank][c], p - 2, p);
        for x in &mut m[rank][c..] {
            *x = mul_mod(*x, inv, p);
        }
        let (top, rest) = m.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in rest {
            let f = row[c];
            if f != 0 {
                for (x, &y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    *x = (*x + p - mul_mod(f, y, p)) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// `dim_K H̃^j(Δ; K)`; zero for `j` outside `[-1, dim Δ]`.
pub fn reduced_cohomology_rank(complex: &SimplicialComplex, j: isize, field: FieldSpec) -> usize {
    if j < -1 || j > complex.dimension() {
        return 0;
    }
    let lower = complex.faces(j - 1);
    let mid = complex.faces(j);
    let upper = complex.faces(j + 1);
    let f_j = mid.len();
    let r_j = rank(&boundary_from_faces(j, lower, mid.clone()).entries, field);
    let r_up = rank(&boundary_from_faces(j + 1, mid, upper).entries, field);
    f_j - r_j - r_up
}

/// All reduced cohomology ranks, indexed by `j + 1` for `j = -1..=dim Δ`.
pub fn reduced_cohomology(complex: &SimplicialComplex, field: FieldSpec) -> Vec<usize> {
    let dim = complex.dimension();
    let faces: Vec<Vec<Face>> = (-2..=dim + 1).map(|k| complex.faces(k)).collect();
    // faces[k + 2] holds the k-faces; ranks[k + 1] is rank ∂_k.
    let ranks: Vec<usize> = (-1..=dim + 1)
        .map(|k| {
            let i = (k + 2) as usize;
            let m = boundary_from_faces(k, faces[i - 1].clone(), faces[i].clone());
            rank(&m.entries, field)
        })
        .collect();
    (-1..=dim)
        .map(|j| {
            let i = (j + 1) as usize;
            faces[i + 1].len() - ranks[i] - ranks[i + 1]
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::parse_complex;

    fn cx(s: &str) -> SimplicialComplex {
        parse_complex(s).unwrap()
    }

    fn rp2() -> SimplicialComplex {
        cx("n=6; 123 134 145 156 126 235 346 245 356 246")
    }

    #[test]
    fn field_parsing() {
        assert_eq!("q".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert_eq!("f2".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(2));
        assert_eq!("F3".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(3));
        assert_eq!("f4".parse::<FieldSpec>(), Err(Error::NotPrime(4)));
        assert!("x".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn boundary_shapes() {
        let c4 = cx("n=4; 12 23 34 14");
        let d1 = boundary_matrix(&c4, 1);
        assert_eq!(d1.shape(), (4, 4));
        let d0 = boundary_matrix(&c4, 0);
        assert_eq!(d0.entries, vec![vec![1, 1, 1, 1]]);
        assert!(d0.compose(&d1).iter().flatten().all(|&x| x == 0));
        assert_eq!(boundary_matrix(&c4, -1).shape(), (0, 1));
        assert_eq!(boundary_matrix(&c4, 2).shape(), (4, 0));
    }

    #[test]
    fn boundary_signs() {
        let t = cx("n=3; 123");
        let d2 = boundary_matrix(&t, 2);
        // rows 12, 13, 23: removing 3, 2, 1 gives signs +, -, +
        assert_eq!(d2.entries, vec![vec![1], vec![-1], vec![1]]);
        let d1 = boundary_matrix(&t, 1);
        assert!(d1.compose(&d2).iter().flatten().all(|&x| x == 0));
    }

    #[test]
    fn small_cohomology() {
        let q = FieldSpec::Rationals;
        assert_eq!(reduced_cohomology_rank(&cx("n=2; 1 2"), 0, q), 1);
        let c4 = cx("n=4; 12 23 34 14");
        assert_eq!(reduced_cohomology_rank(&c4, 1, q), 1);
        assert_eq!(reduced_cohomology_rank(&c4, 0, q), 0);
        assert_eq!(reduced_cohomology_rank(&c4, -1, q), 0);
        let triv = SimplicialComplex::trivial(3);
        assert_eq!(reduced_cohomology_rank(&triv, -1, q), 1);
        assert_eq!(reduced_cohomology(&triv, q), vec![1]);
        assert_eq!(reduced_cohomology(&c4, q), vec![0, 0, 1]);
    }

    #[test]
    fn projective_plane_depends_on_characteristic() {
        let p = rp2();
        let f2 = FieldSpec::Prime(2);
        assert_eq!(reduced_cohomology(&p, FieldSpec::Rationals), vec![0, 0, 0, 0]);
        assert_eq!(reduced_cohomology(&p, f2), vec![0, 0, 1, 1]);
        assert_eq!(reduced_cohomology(&p, FieldSpec::Prime(3)), vec![0, 0, 0, 0]);
    }

    #[test]
    fn bareiss_matches_mod_p_on_full_rank() {
        let m = vec![vec![2, 0], vec![0, 3]];
        assert_eq!(rank_rational(&m), 2);
        assert_eq!(rank_mod_p(&m, 2), 1);
        assert_eq!(rank_mod_p(&m, 3), 1);
        assert_eq!(rank_mod_p(&m, 5), 2);
    }

    #[test]
    fn big_integer_fallback() {
        let big = i64::MAX / 3;
        let m = vec![vec![big, big - 1, 7], vec![big - 5, big, 3], vec![big, big, big]];
        assert_eq!(bareiss_big(m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()), 3);
        assert_eq!(rank_rational(&m), 3);
        let dep = vec![vec![big, big - 1], vec![big, big - 1]];
        assert_eq!(rank_rational(&dep), 1);
    }
}
