//! Fibers: all nonnegative integer tables with a given margin vector.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::model::MarginalMatrix;

/// Default cap on the number of points in one fiber.
pub const DEFAULT_FIBER_BUDGET: usize = 1_000_000;

/// The nonnegative tables with margin vector `b`, in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fiber {
    pub b: Vec<i64>,
    pub points: Vec<Vec<u32>>,
}

impl Fiber {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Common total degree of the points.
    pub fn degree(&self) -> u64 {
        self.points
            .first()
            .map_or(0, |p| p.iter().map(|&x| x as u64).sum())
    }
}

/// Checks that `b` could be a margin vector of `m`: right length,
/// nonnegative, and equal grand totals across facet blocks. Returns the total.
pub fn check_margins(m: &MarginalMatrix, b: &[i64]) -> Result<u64> {
    if b.len() != m.nrows() {
        return Err(Error::InconsistentMargins(format!(
            "expected {} entries, got {}",
            m.nrows(),
            b.len()
        )));
    }
    if b.iter().any(|&x| x < 0) {
        return Err(Error::InconsistentMargins("negative entry".into()));
    }
    let totals: Vec<i64> = m.blocks().into_iter().map(|r| b[r].iter().sum()).collect();
    if totals.windows(2).any(|w| w[0] != w[1]) {
        return Err(Error::InconsistentMargins(format!("block totals differ: {totals:?}")));
    }
    Ok(totals.first().copied().unwrap_or(0) as u64)
}

pub fn enumerate_fiber(m: &MarginalMatrix, b: &[i64]) -> Result<Fiber> {
    enumerate_fiber_with_budget(m, b, DEFAULT_FIBER_BUDGET)
}

/// Backtracking over cells in column order. A cell that is the last one
/// covering some row has its value forced by that row's residual.
pub fn enumerate_fiber_with_budget(m: &MarginalMatrix, b: &[i64], budget: usize) -> Result<Fiber> {
    check_margins(m, b)?;
    let n = m.ncols();
    let mut last_cover = vec![0usize; m.nrows()];
    for c in 0..n {
        for &r in m.column_support(c) {
            last_cover[r] = c;
        }
    }
    let mut forced: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (r, &c) in last_cover.iter().enumerate() {
        forced[c].push(r);
    }
    let mut search = Search {
        m,
        forced: &forced,
        residual: b.to_vec(),
        current: vec![0u32; n],
        points: Vec::new(),
        budget,
    };
    search.go(0)?;
    Ok(Fiber {
        b: b.to_vec(),
        points: search.points,
    })
}

struct Search<'a> {
    m: &'a MarginalMatrix,
    forced: &'a [Vec<usize>],
    residual: Vec<i64>,
    current: Vec<u32>,
    points: Vec<Vec<u32>>,
    budget: usize,
}

impl Search<'_> {
    fn go(&mut self, c: usize) -> Result<()> {
        if c == self.current.len() {
            if self.points.len() >= self.budget {
                return Err(Error::Budget(format!("fiber has more than {} points", self.budget)));
            }
            self.points.push(self.current.clone());
            return Ok(());
        }
        let rows = self.m.column_support(c);
        let upper = rows.iter().map(|&r| self.residual[r]).min().unwrap_or(0);
        let (lo, hi) = match self.forced[c].first() {
            Some(&r) => {
                let v = self.residual[r];
                if self.forced[c].iter().any(|&s| self.residual[s] != v) || v > upper {
                    return Ok(());
                }
                (v, v)
            }
            None => (0, upper),
        };
        for v in lo..=hi {
            for &r in rows {
                self.residual[r] -= v;
            }
            self.current[c] = v as u32;
            let res = self.go(c + 1);
            for &r in rows {
                self.residual[r] += v;
            }
            res?;
        }
        self.current[c] = 0;
        Ok(())
    }
}

/// Margin vector `M · a` of a nonnegative table.
pub fn margins_of(m: &MarginalMatrix, a: &[u32]) -> Vec<i64> {
    let v: Vec<i64> = a.iter().map(|&x| x as i64).collect();
    m.apply(&v)
}

/// All nonnegative tables of total degree `degree`, grouped by margin
/// vector. Stops with a budget error once more than `budget` tables have
/// been generated.
pub fn tables_by_margins(
    m: &MarginalMatrix,
    degree: u32,
    budget: usize,
) -> Result<HashMap<Vec<i64>, Vec<Vec<u32>>>> {
    let mut out: HashMap<Vec<i64>, Vec<Vec<u32>>> = HashMap::new();
    let mut count = 0usize;
    for_each_table(m.ncols(), degree, &mut |t| {
        count += 1;
        if count > budget {
            return Err(Error::Budget(format!(
                "more than {budget} tables of degree {degree}"
            )));
        }
        out.entry(margins_of(m, t)).or_default().push(t.to_vec());
        Ok(())
    })?;
    Ok(out)
}

/// Calls `f` on every nonnegative integer vector of length `n` summing to
/// `degree`, in lexicographically decreasing order.
pub fn for_each_table<F>(n: usize, degree: u32, f: &mut F) -> Result<()>
where
    F: FnMut(&[u32]) -> Result<()>,
{
    if n == 0 {
        return if degree == 0 { f(&[]) } else { Ok(()) };
    }
    let mut t = vec![0u32; n];
    fill(&mut t, 0, degree, f)
}

fn fill<F>(t: &mut [u32], i: usize, left: u32, f: &mut F) -> Result<()>
where
    F: FnMut(&[u32]) -> Result<()>,
{
    if i + 1 == t.len() {
        t[i] = left;
        let r = f(t);
        t[i] = 0;
        return r;
    }
    for v in (0..=left).rev() {
        t[i] = v;
        fill(t, i + 1, left - v, f)?;
    }
    t[i] = 0;
    Ok(())
}
