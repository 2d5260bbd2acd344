//! Explicit Markov moves for binary models, written as tableaux.
//!
//! A tableau `[u] - [v]` lists the cells of the two monomials of a binomial
//! as the rows of two 0/1 matrices with one column per vertex.

use std::fmt;

use crate::complex::{Face, SimplicialComplex, Vertex};
use crate::error::{Error, Result};
use crate::markov::{Move, MoveJson};
use crate::model::{Levels, MarginalMatrix};

/// A binomial in tableau form: rows of `u` minus rows of `v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tableau {
    u: Vec<Vec<u8>>,
    v: Vec<Vec<u8>>,
}

impl Tableau {
    /// Checks that both sides are 0/1 matrices of the same shape and that
    /// their row multisets differ.
    pub fn new(u: Vec<Vec<u8>>, v: Vec<Vec<u8>>) -> Result<Self> {
        let cols = u.first().map_or(0, Vec::len);
        if u.is_empty() || u.len() != v.len() {
            return Err(Error::Invalid("both sides need the same positive number of rows".into()));
        }
        if u.iter().chain(&v).any(|r| r.len() != cols || r.iter().any(|&x| x > 1)) {
            return Err(Error::Invalid("rows must be 0/1 vectors of equal length".into()));
        }
        let (mut a, mut b) = (u.clone(), v.clone());
        a.sort();
        b.sort();
        if a == b {
            return Err(Error::Invalid("the two sides have the same rows".into()));
        }
        Ok(Tableau { u, v })
    }

    /// The tableau of a move of a binary model: each cell appears as a row
    /// as often as its exponent, rows in increasing cell order.
    pub fn from_move(mv: &Move, levels: &Levels) -> Result<Self> {
        if !levels.is_binary() || mv.as_slice().len() != levels.cells() {
            return Err(Error::InvalidLevels("tableaux need binary levels matching the move".into()));
        }
        let side = |part: Vec<u32>| -> Vec<Vec<u8>> {
            part.iter()
                .enumerate()
                .flat_map(|(c, &e)| {
                    let row: Vec<u8> = levels.coords(c).iter().map(|&x| x as u8).collect();
                    std::iter::repeat_n(row, e as usize)
                })
                .collect()
        };
        Tableau::new(side(mv.plus()), side(mv.minus()))
    }

    pub fn left(&self) -> &[Vec<u8>] {
        &self.u
    }

    pub fn right(&self) -> &[Vec<u8>] {
        &self.v
    }

    /// Degree of the binomial: the number of rows.
    pub fn degree(&self) -> usize {
        self.u.len()
    }

    pub fn columns(&self) -> usize {
        self.u[0].len()
    }

    /// `u - v` as a vector indexed by cells.
    pub fn to_vector(&self) -> Vec<i64> {
        let levels = Levels::binary(self.columns());
        let mut w = vec![0i64; levels.cells()];
        for r in &self.u {
            w[levels.index(&to_usize(r))] += 1;
        }
        for r in &self.v {
            w[levels.index(&to_usize(r))] -= 1;
        }
        w
    }

    /// The move in the same JSON form as [`Move::to_json_parts`].
    pub fn to_json_parts(&self) -> MoveJson {
        let levels = Levels::binary(self.columns());
        Move::new(self.to_vector())
            .expect("tableau sides differ")
            .to_json_parts(&levels)
    }
}

fn to_usize(row: &[u8]) -> Vec<usize> {
    row.iter().map(|&x| x as usize).collect()
}

/// Two bracketed matrices separated by a minus sign on the middle row.
impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row = |r: &Vec<u8>| {
            let cells: Vec<String> = r.iter().map(u8::to_string).collect();
            format!("[{}]", cells.join(" "))
        };
        let mid = (self.u.len() - 1) / 2;
        for (i, (a, b)) in self.u.iter().zip(&self.v).enumerate() {
            let sep = if i == mid { " - " } else { "   " };
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{}{}{}", row(a), sep, row(b))?;
        }
        Ok(())
    }
}

/// `l` periods of `k/2` zeros followed by `k/2` ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlternatingVector {
    pub k: usize,
    pub l: usize,
    pub bits: Vec<u8>,
}

pub fn epsilon(k: usize, l: usize) -> Result<AlternatingVector> {
    if k == 0 || k % 2 == 1 || l == 0 {
        return Err(Error::Invalid(format!(
            "epsilon needs an even positive period and at least one repetition, got k={k}, l={l}"
        )));
    }
    let bits = (0..k * l).map(|i| u8::from(i % k >= k / 2)).collect();
    Ok(AlternatingVector { k, l, bits })
}

/// The first `m` terms of the Thue–Morse sequence starting at 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThueMorseVector {
    pub m: usize,
    pub bits: Vec<u8>,
}

impl ThueMorseVector {
    /// Entrywise `1 - x`.
    pub fn complement(&self) -> Vec<u8> {
        self.bits.iter().map(|&x| 1 - x).collect()
    }
}

pub fn alpha(m: usize) -> Result<ThueMorseVector> {
    if !m.is_power_of_two() {
        return Err(Error::Invalid(format!("alpha needs a power of two, got {m}")));
    }
    let bits = (0..m).map(|i: usize| (i.count_ones() % 2) as u8).collect();
    Ok(ThueMorseVector { m, bits })
}

/// All one-row tableaux `[u] - [v]` with `u` and `v` equal on the vertices
/// of `Δ`, `u` zero off them, and `v` differing from `u` somewhere off them.
/// These are the linear minimal generators for the binary model.
pub fn linear_moves(complex: &SimplicialComplex) -> Vec<Tableau> {
    let n = complex.n();
    let vertices = complex.vertex_set();
    let inside: Vec<usize> = vertices.vertices().map(|v| v as usize - 1).collect();
    let outside: Vec<usize> = (0..n).filter(|i| !vertices.contains(*i as Vertex + 1)).collect();
    let mut out = Vec::new();
    for common in 0u64..1 << inside.len() {
        let mut u = vec![0u8; n];
        for (k, &i) in inside.iter().enumerate() {
            u[i] = ((common >> (inside.len() - 1 - k)) & 1) as u8;
        }
        for flip in 1u64..1 << outside.len() {
            let mut v = u.clone();
            for (k, &i) in outside.iter().enumerate() {
                v[i] = ((flip >> (outside.len() - 1 - k)) & 1) as u8;
            }
            out.push(Tableau::new(vec![u.clone()], vec![v]).expect("rows differ"));
        }
    }
    out
}

/// `[u] - [v]` to `[0 u; 1 v] - [0 v; 1 u]`, doubling the degree.
pub fn lift_case_i(t: &Tableau) -> Tableau {
    let prepend = |bit: u8, rows: &[Vec<u8>]| -> Vec<Vec<u8>> {
        rows.iter()
            .map(|r| std::iter::once(bit).chain(r.iter().copied()).collect())
            .collect()
    };
    let mut u = prepend(0, &t.u);
    u.extend(prepend(1, &t.v));
    let mut v = prepend(0, &t.v);
    v.extend(prepend(1, &t.u));
    Tableau { u, v }
}

/// `[u] - [v]` to `[b u] - [b v]` for a constant new first column `b`.
pub fn lift_case_ii(t: &Tableau, bit: u8) -> Result<Tableau> {
    if bit > 1 {
        return Err(Error::Invalid(format!("a binary column holds 0 or 1, got {bit}")));
    }
    let prepend = |rows: &[Vec<u8>]| -> Vec<Vec<u8>> {
        rows.iter()
            .map(|r| std::iter::once(bit).chain(r.iter().copied()).collect())
            .collect()
    };
    Ok(Tableau {
        u: prepend(&t.u),
        v: prepend(&t.v),
    })
}

/// The `2^{n-d}` tableaux of degree `2^{d-1}` built from a minimal non-face
/// `m` of size `d` of a vertex decomposable complex.
///
/// The vertices of `m` are taken in the shedding order of
/// [`SimplicialComplex::vertex_decomposition`], followed by the labels that
/// are not vertices. The `j`-th of them (`j < d`) gets the column
/// `epsilon(2^{d-j}, 2^{j-1})` on both sides, the last gets `alpha(2^{d-1})`
/// on the left and its complement on the right. Every other column is
/// constant and the same on both sides, in all `2^{n-d}` ways.
pub fn recipe_moves(complex: &SimplicialComplex, m: Face) -> Result<Vec<Tableau>> {
    if !complex.minimal_nonfaces().contains(&m) {
        return Err(Error::Invalid(format!("{:?} is not a minimal non-face", m.to_vec())));
    }
    let mut order = complex
        .vertex_decomposition()
        .ok_or_else(|| Error::Invalid("the complex is not vertex decomposable".into()))?;
    order.extend((1..=complex.n() as Vertex).filter(|&v| !complex.vertex_set().contains(v)));
    let n = complex.n();
    let d = m.len();
    let rows = 1usize << (d - 1);
    let mut chosen: Vec<Vertex> = m.vertices().collect();
    chosen.sort_by_key(|v| order.iter().position(|w| w == v));

    let mut u = vec![vec![0u8; n]; rows];
    let mut v = vec![vec![0u8; n]; rows];
    for (j, &vertex) in chosen[..d - 1].iter().enumerate() {
        let col = epsilon(1 << (d - 1 - j), 1 << j)?.bits;
        for r in 0..rows {
            u[r][vertex as usize - 1] = col[r];
            v[r][vertex as usize - 1] = col[r];
        }
    }
    let last = chosen[d - 1] as usize - 1;
    let a = alpha(rows)?;
    let a_bar = a.complement();
    for r in 0..rows {
        u[r][last] = a.bits[r];
        v[r][last] = a_bar[r];
    }

    let free: Vec<usize> = (0..n).filter(|&i| !m.contains(i as Vertex + 1)).collect();
    let mut out = Vec::with_capacity(1 << free.len());
    for fill in 0u64..1 << free.len() {
        let (mut u, mut v) = (u.clone(), v.clone());
        for (k, &i) in free.iter().enumerate() {
            let bit = ((fill >> (free.len() - 1 - k)) & 1) as u8;
            for r in 0..rows {
                u[r][i] = bit;
                v[r][i] = bit;
            }
        }
        out.push(Tableau::new(u, v)?);
    }
    Ok(out)
}

/// The move of a tableau, checked against `M`.
pub fn tableau_to_move(t: &Tableau, m: &MarginalMatrix) -> Result<Move> {
    if !m.levels().is_binary() || m.levels().len() != t.columns() {
        return Err(Error::Invalid(format!(
            "a tableau with {} columns needs a binary model on {} variables",
            t.columns(),
            t.columns()
        )));
    }
    Move::for_matrix(t.to_vector(), m)
}
