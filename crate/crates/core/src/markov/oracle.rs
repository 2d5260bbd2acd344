//! Counting minimal generators from fibers alone.
//!
//! In multidegree `b` the number of minimal generators of `I_M` equals the
//! number of connected components of the fiber over `b`, minus one, where
//! two tables are adjacent when their supports meet (the monomials share a
//! variable). This is independent of the completion engine.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use super::completion::Mask;
use super::fiber::{enumerate_fiber_with_budget, for_each_table, margins_of};
use crate::error::{Error, Result};
use crate::model::MarginalMatrix;

/// Components of the support-intersection graph on `points`.
pub fn gcd_components(points: &[Vec<u32>]) -> usize {
    let mut comps: Vec<Mask> = Vec::new();
    for p in points {
        merge_support(&mut comps, Mask::of_positive(p));
    }
    comps.len()
}

/// The first point of each component of the support-intersection graph,
/// in order of first appearance.
pub(crate) fn gcd_component_leaders(points: &[Vec<u32>]) -> Vec<usize> {
    let mut comps: Vec<(Mask, usize)> = Vec::new();
    for (i, p) in points.iter().enumerate() {
        let s = Mask::of_positive(p);
        let mut merged = (s, i);
        comps.retain(|&(c, lead)| {
            if c.intersects(&s) {
                merged = (merged.0.union(&c), merged.1.min(lead));
                false
            } else {
                true
            }
        });
        comps.push(merged);
    }
    let mut leaders: Vec<usize> = comps.into_iter().map(|(_, i)| i).collect();
    leaders.sort_unstable();
    leaders
}

/// Adds a point with support `s`: every component it meets is merged with it.
fn merge_support(comps: &mut Vec<Mask>, s: Mask) {
    let mut merged = s;
    comps.retain(|c| {
        if c.intersects(&s) {
            merged = merged.union(c);
            false
        } else {
            true
        }
    });
    comps.push(merged);
}

/// Number of minimal generators per total degree, summed over the given
/// candidate multidegrees (margin vectors).
pub fn minimal_degree_multiset<I>(m: &MarginalMatrix, candidates: I, fiber_budget: usize) -> Result<BTreeMap<u64, usize>>
where
    I: IntoIterator<Item = Vec<i64>>,
{
    let mut bs: Vec<Vec<i64>> = candidates.into_iter().collect();
    bs.sort();
    bs.dedup();
    let counts: Vec<(u64, usize)> = bs
        .par_iter()
        .map(|b| {
            let f = enumerate_fiber_with_budget(m, b, fiber_budget)?;
            Ok((f.degree(), gcd_components(&f.points).saturating_sub(1)))
        })
        .collect::<Result<_>>()?;
    let mut out = BTreeMap::new();
    for (d, c) in counts {
        if c > 0 {
            *out.entry(d).or_insert(0) += c;
        }
    }
    Ok(out)
}

/// Result of a degree-by-degree sweep over all monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepResult {
    /// Minimal generator counts per degree, for degrees `1..=complete_through`.
    pub counts: BTreeMap<u64, usize>,
    pub complete_through: u64,
    /// Why the sweep stopped before `max_degree`, if it did.
    pub stopped: Option<String>,
}

/// Minimal generator counts in every degree up to `max_degree`, found by
/// enumerating all monomials of each degree and grouping them by margins.
/// A degree whose monomial count exceeds `budget` ends the sweep; the
/// degrees below it are still exact.
pub fn sweep_minimal_degrees(m: &MarginalMatrix, max_degree: u64, budget: usize) -> Result<SweepResult> {
    let mut counts = BTreeMap::new();
    let n = m.ncols();
    for d in 1..=max_degree {
        let monomials = binomial(n as u64 + d - 1, d);
        if monomials.is_none_or(|c| c > budget as u64) {
            return Ok(SweepResult {
                counts,
                complete_through: d - 1,
                stopped: Some(format!(
                    "degree {d} has more than {budget} monomials in {n} variables"
                )),
            });
        }
        let mut fibers: HashMap<Vec<i64>, Vec<Mask>> = HashMap::new();
        for_each_table(n, d as u32, &mut |t| {
            let comps = fibers.entry(margins_of(m, t)).or_default();
            merge_support(comps, Mask::of_positive(t));
            Ok(())
        })?;
        let c: usize = fibers.values().map(|v| v.len() - 1).sum();
        if c > 0 {
            counts.insert(d, c);
        }
    }
    Ok(SweepResult {
        counts,
        complete_through: max_degree,
        stopped: None,
    })
}

fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// Whether `moves` connect every fiber of total degree at most `degree_bound`.
pub fn is_markov_basis(m: &MarginalMatrix, moves: &[Vec<i64>], degree_bound: u64, budget: usize) -> Result<bool> {
    for u in moves {
        if !m.in_kernel(u) {
            return Err(Error::NotInKernel);
        }
    }
    for d in 1..=degree_bound {
        let groups = super::fiber::tables_by_margins(m, d as u32, budget)?;
        for points in groups.values() {
            if points.len() > 1 && !connected(points, moves) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn connected(points: &[Vec<u32>], moves: &[Vec<i64>]) -> bool {
    let index: HashMap<&[u32], usize> = points.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    let mut parent: Vec<usize> = (0..points.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut next = vec![0u32; points[0].len()];
    for (i, p) in points.iter().enumerate() {
        for u in moves {
            for sign in [1i64, -1] {
                let ok = p.iter().zip(u).all(|(&a, &x)| a as i64 - sign * x >= 0);
                if !ok {
                    continue;
                }
                for (k, (&a, &x)) in p.iter().zip(u).enumerate() {
                    next[k] = (a as i64 - sign * x) as u32;
                }
                if let Some(&j) = index.get(next.as_slice()) {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a] = b;
                }
            }
        }
    }
    let root = find(&mut parent, 0);
    (1..points.len()).all(|i| find(&mut parent, i) == root)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{parse_complex, SimplicialComplex};
    use crate::model::{marginal_matrix, Levels};

    #[test]
    fn component_leaders() {
        let pts = vec![vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 0], vec![0, 0, 1]];
        assert_eq!(gcd_component_leaders(&pts), vec![0, 3]);
        assert_eq!(gcd_components(&pts), 2);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(37, 6), Some(2_324_784));
        assert_eq!(binomial(5, 0), Some(1));
    }

    #[test]
    fn gcd_graph() {
        assert_eq!(gcd_components(&[vec![1, 0, 0, 1], vec![0, 1, 1, 0]]), 2);
        assert_eq!(gcd_components(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]), 1);
    }

    #[test]
    fn sweep_of_segre() {
        let m = marginal_matrix(&parse_complex("n=2; 1 2").unwrap(), &Levels::binary(2)).unwrap();
        let s = sweep_minimal_degrees(&m, 4, 10_000).unwrap();
        assert_eq!(s.counts, BTreeMap::from([(2, 1)]));
        assert_eq!(s.complete_through, 4);
    }

    #[test]
    fn sweep_of_trivial_complex() {
        let m = marginal_matrix(&SimplicialComplex::trivial(2), &Levels::binary(2)).unwrap();
        let s = sweep_minimal_degrees(&m, 3, 10_000).unwrap();
        assert_eq!(s.counts, BTreeMap::from([(1, 3)]));
    }

    #[test]
    fn sweep_stops_on_budget() {
        let m = marginal_matrix(&SimplicialComplex::trivial(2), &Levels::binary(2)).unwrap();
        let s = sweep_minimal_degrees(&m, 5, 20).unwrap();
        assert_eq!(s.complete_through, 3);
        assert!(s.stopped.is_some());
    }

    #[test]
    fn segre_markov_check() {
        let m = marginal_matrix(&parse_complex("n=2; 1 2").unwrap(), &Levels::binary(2)).unwrap();
        assert!(is_markov_basis(&m, &[vec![1, -1, -1, 1]], 3, 10_000).unwrap());
        assert!(!is_markov_basis(&m, &[], 3, 10_000).unwrap());
        assert!(is_markov_basis(&m, &[vec![1, 0, 0, 0]], 1, 10).is_err());
    }
}
