//! Markov bases: minimal generating sets of the toric ideal `I_M`.
//!
//! [`markov_basis`] runs the degree-by-degree completion engine, which
//! produces minimal generators directly and certifies when it has found
//! them all. [`oracle`] counts minimal generators from fibers alone and
//! serves as an independent check.

pub(crate) mod completion;
pub mod fiber;
pub mod oracle;

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{Levels, MarginalMatrix};

pub use fiber::{enumerate_fiber, enumerate_fiber_with_budget, Fiber, DEFAULT_FIBER_BUDGET};
pub use oracle::{gcd_components, minimal_degree_multiset, sweep_minimal_degrees, SweepResult};

/// Default cap on processed critical pairs in the completion engine.
pub const DEFAULT_PAIR_BUDGET: u64 = 50_000_000;

/// Default cap on standard monomials of one degree in the completion engine.
pub const DEFAULT_MONOMIAL_BUDGET: usize = 500_000;

/// An integer vector in `ker M`, standing for the binomial `x^{u+} - x^{u-}`.
///
/// Moves are kept sign-canonical: the first nonzero entry is positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Move {
    u: Vec<i64>,
}

impl Move {
    pub fn new(mut u: Vec<i64>) -> Result<Self> {
        match u.iter().find(|&&x| x != 0) {
            None => Err(Error::Invalid("the zero vector is not a move".into())),
            Some(&x) => {
                if x < 0 {
                    u.iter_mut().for_each(|y| *y = -*y);
                }
                Ok(Move { u })
            }
        }
    }

    /// Like [`Move::new`], additionally checking `M u = 0`.
    pub fn for_matrix(u: Vec<i64>, m: &MarginalMatrix) -> Result<Self> {
        if !m.in_kernel(&u) {
            return Err(Error::NotInKernel);
        }
        Move::new(u)
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.u
    }

    pub fn plus(&self) -> Vec<u32> {
        self.u.iter().map(|&x| x.max(0) as u32).collect()
    }

    pub fn minus(&self) -> Vec<u32> {
        self.u.iter().map(|&x| (-x).max(0) as u32).collect()
    }

    /// Degree of the binomial: the sum of the positive part.
    pub fn degree(&self) -> u64 {
        self.u.iter().filter(|&&x| x > 0).map(|&x| x as u64).sum()
    }

    /// Whether every entry is in `{-1, 0, 1}`.
    pub fn is_squarefree(&self) -> bool {
        self.u.iter().all(|&x| x.abs() <= 1)
    }

    /// Serializable form `{"plus": [[cell, exp], ...], "minus": [...]}`
    /// with cells as coordinate tuples.
    pub fn to_json_parts(&self, levels: &Levels) -> MoveJson {
        let part = |sign: i64| -> Vec<(Vec<usize>, i64)> {
            self.u
                .iter()
                .enumerate()
                .filter(|(_, &x)| x * sign > 0)
                .map(|(c, &x)| (levels.coords(c), x.abs()))
                .collect()
        };
        MoveJson {
            plus: part(1),
            minus: part(-1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MoveJson {
    pub plus: Vec<(Vec<usize>, i64)>,
    pub minus: Vec<(Vec<usize>, i64)>,
}

/// Whether a basis covers every degree or stops below some degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Completeness {
    Complete,
    /// Every minimal generator of degree below `complete_below` is present;
    /// nothing is claimed from that degree on.
    Partial { complete_below: u64, reason: String },
}

impl Completeness {
    pub fn is_complete(&self) -> bool {
        matches!(self, Completeness::Complete)
    }
}

/// A minimal Markov basis together with its degree multiset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkovBasis {
    pub fingerprint: String,
    pub moves: Vec<Move>,
    pub degree_multiset: BTreeMap<u64, usize>,
    pub completeness: Completeness,
}

impl MarkovBasis {
    pub fn degrees(&self) -> BTreeSet<u64> {
        self.degree_multiset.keys().copied().collect()
    }
}

/// Budgets and bounds for the Markov computations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkovOptions {
    /// Maximum points of one fiber read by the engine or the oracle checks.
    pub fiber_budget: usize,
    /// Maximum critical pairs processed by the completion engine.
    pub pair_budget: u64,
    /// Maximum standard monomials of a single degree in the completion engine.
    pub monomial_budget: usize,
    /// Stop above this degree (result flagged partial).
    pub degree_bound: Option<u64>,
}

impl MarkovOptions {
    fn limits(&self, first_only: bool) -> completion::Limits {
        completion::Limits {
            pair_budget: self.pair_budget,
            monomial_budget: self.monomial_budget,
            fiber_budget: self.fiber_budget,
            degree_bound: self.degree_bound,
            first_only,
        }
    }
}

impl Default for MarkovOptions {
    fn default() -> Self {
        MarkovOptions {
            fiber_budget: DEFAULT_FIBER_BUDGET,
            pair_budget: DEFAULT_PAIR_BUDGET,
            monomial_budget: DEFAULT_MONOMIAL_BUDGET,
            degree_bound: None,
        }
    }
}

pub fn markov_basis(m: &MarginalMatrix) -> Result<MarkovBasis> {
    markov_basis_with(m, &MarkovOptions::default())
}

/// A minimal Markov basis of `M`, moves sorted by degree and then
/// lexicographically. A budget or degree bound that stops the completion
/// yields a partial basis, flagged as such.
pub fn markov_basis_with(m: &MarginalMatrix, opts: &MarkovOptions) -> Result<MarkovBasis> {
    let c = completion::complete(m, &opts.limits(false))?;
    Ok(basis_from(m, c))
}

fn basis_from(m: &MarginalMatrix, c: completion::Completion) -> MarkovBasis {
    let mut moves: Vec<Move> = c
        .generators
        .into_iter()
        .map(|u| Move::new(u).expect("generators are nonzero"))
        .collect();
    moves.sort_by(|a, b| (a.degree(), &a.u).cmp(&(b.degree(), &b.u)));
    let mut degree_multiset = BTreeMap::new();
    for mv in &moves {
        *degree_multiset.entry(mv.degree()).or_insert(0) += 1;
    }
    MarkovBasis {
        fingerprint: m.fingerprint(),
        moves,
        degree_multiset,
        completeness: c.completeness,
    }
}

/// Degrees of minimal generators and the Markov width.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeSummary {
    pub degrees: BTreeSet<u64>,
    pub width: Option<u64>,
    pub completeness: Completeness,
}

pub fn degrees_present(m: &MarginalMatrix) -> Result<DegreeSummary> {
    degrees_present_with(m, &MarkovOptions::default())
}

pub fn degrees_present_with(m: &MarginalMatrix, opts: &MarkovOptions) -> Result<DegreeSummary> {
    let basis = markov_basis_with(m, opts)?;
    let degrees = basis.degrees();
    Ok(DegreeSummary {
        width: degrees.iter().max().copied(),
        degrees,
        completeness: basis.completeness,
    })
}

/// The smallest degree of a minimal generator of `I_M`.
pub fn initial_degree_toric(m: &MarginalMatrix) -> Result<u64> {
    let c = completion::complete(m, &MarkovOptions::default().limits(true))?;
    match (c.generators.first(), c.completeness) {
        (Some(u), _) => Ok(u.iter().filter(|&&x| x > 0).sum::<i64>() as u64),
        (None, Completeness::Complete) => Err(Error::ZeroIdeal),
        (None, Completeness::Partial { reason, .. }) => Err(Error::Budget(reason)),
    }
}

/// Whether `moves` connect every fiber of total degree at most `degree_bound`.
pub fn is_markov_basis(m: &MarginalMatrix, moves: &[Move], degree_bound: u64) -> Result<bool> {
    let vs: Vec<Vec<i64>> = moves.iter().map(|mv| mv.u.clone()).collect();
    oracle::is_markov_basis(m, &vs, degree_bound, 10 * DEFAULT_FIBER_BUDGET)
}

/// Margin vectors of the moves, as candidate multidegrees for the oracle.
pub fn multidegrees(m: &MarginalMatrix, moves: &[Move]) -> Vec<Vec<i64>> {
    moves
        .iter()
        .map(|mv| m.apply(&mv.plus().iter().map(|&x| x as i64).collect::<Vec<_>>()))
        .collect()
}
