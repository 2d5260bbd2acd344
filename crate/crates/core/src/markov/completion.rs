//! Degree-by-degree completion of the toric ideal `I_M`.
//!
//! A binomial `x^{u+} - x^{u-}` is stored as the vector `u`, with common
//! factors of the two monomials cancelled. Degree `d` is handled in two
//! steps. First the critical pairs of degree `d` are reduced, which completes
//! in degree `d` a Gröbner basis of the ideal generated by the lower-degree
//! generators. Then the standard monomials of degree `d` are grouped by
//! margin vector: a fiber holding `k > 1` of them needs exactly `k - 1` new
//! minimal generators, taken as differences with its smallest member.
//!
//! No leading monomial involves the cheapest variable `x_0`, so once the
//! pair queue is empty the ideal found so far is saturated with respect to
//! `x_0`. It is generated by all elements of `I_M` up to some degree, hence
//! invariant under permuting the levels of each variable, and these
//! permutations act transitively on cells. The ideal is then saturated with
//! respect to every variable, so it is the lattice ideal of the lattice its
//! generators span, and it equals `I_M` as soon as that lattice is `ker M`.

use std::cmp::{Ordering, Reverse};
use std::collections::{BTreeMap, BTreeSet, BinaryHeap, HashSet};

use rayon::prelude::*;

use super::fiber::enumerate_fiber_with_budget;
use super::oracle::gcd_component_leaders;
use super::Completeness;
use crate::error::{Error, Result};
use crate::model::{echelonize, kernel_lattice_basis, MarginalMatrix};

/// Support bit set over at most 256 cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub(crate) struct Mask([u64; 4]);

pub(crate) const MAX_ENGINE_CELLS: usize = 256;

impl Mask {
    #[inline]
    pub(crate) fn set(&mut self, i: usize) {
        self.0[i >> 6] |= 1 << (i & 63);
    }

    #[inline]
    pub(crate) fn is_subset(&self, other: &Mask) -> bool {
        (0..4).all(|k| self.0[k] & !other.0[k] == 0)
    }

    #[inline]
    pub(crate) fn intersects(&self, other: &Mask) -> bool {
        (0..4).any(|k| self.0[k] & other.0[k] != 0)
    }

    #[inline]
    pub(crate) fn union(&self, other: &Mask) -> Mask {
        Mask([
            self.0[0] | other.0[0],
            self.0[1] | other.0[1],
            self.0[2] | other.0[2],
            self.0[3] | other.0[3],
        ])
    }

    pub(crate) fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..4).flat_map(move |k| {
            let mut w = self.0[k];
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * 64 + b)
                }
            })
        })
    }

    pub(crate) fn of_positive<T: Copy + Default + PartialOrd>(v: &[T]) -> Mask {
        let mut m = Mask::default();
        for (i, &x) in v.iter().enumerate() {
            if x > T::default() {
                m.set(i);
            }
        }
        m
    }
}

/// A binomial as an integer vector with its positive part leading.
#[derive(Clone, Debug)]
struct Bin {
    v: Vec<i32>,
    pos: Mask,
    degree: u32,
}

impl Bin {
    /// Orients `v` so that its positive part leads; `None` for the zero vector.
    ///
    /// The order is graded reverse lexicographic with `x_0` cheapest: of two
    /// monomials of equal degree, the one with the smaller exponent at the
    /// first differing position of the scan `0, N-1, N-2, ..., 1` leads.
    fn new(mut v: Vec<i32>) -> Option<Bin> {
        let first = scan(v.len()).map(|i| v[i]).find(|&x| x != 0)?;
        if first > 0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
        let mut pos = Mask::default();
        let mut degree = 0;
        for (i, &x) in v.iter().enumerate() {
            if x > 0 {
                pos.set(i);
                degree += x as u32;
            }
        }
        Some(Bin { v, pos, degree })
    }

    #[inline]
    fn lead_divides(&self, w: &Bin) -> bool {
        self.degree <= w.degree && self.pos.is_subset(&w.pos) && self.pos.ones().all(|i| self.v[i] <= w.v[i])
    }
}

/// Positions in the order they are compared: `0`, then `N-1` down to `1`.
fn scan(n: usize) -> impl Iterator<Item = usize> {
    (0..n.min(1)).chain((1..n).rev())
}

/// Term order on monomials of equal degree.
fn term_cmp(a: &[u8], b: &[u8]) -> Ordering {
    scan(a.len())
        .find(|&i| a[i] != b[i])
        .map_or(Ordering::Equal, |i| b[i].cmp(&a[i]))
}

fn lcm(a: &Bin, b: &Bin) -> Vec<i32> {
    a.v.iter().zip(&b.v).map(|(&x, &y)| x.max(y).max(0)).collect()
}

/// Budgets and stopping rules for [`complete`].
#[derive(Clone, Debug)]
pub(crate) struct Limits {
    pub(crate) pair_budget: u64,
    /// Maximum standard monomials of a single degree; beyond it the engine
    /// switches to closing the Gröbner basis and reading fibers.
    pub(crate) monomial_budget: usize,
    /// Maximum points of one fiber read after the switch.
    pub(crate) fiber_budget: usize,
    pub(crate) degree_bound: Option<u64>,
    /// Stop after the first degree that has minimal generators.
    pub(crate) first_only: bool,
}

/// Minimal generators in order of degree, and how far they are complete.
#[derive(Clone, Debug)]
pub(crate) struct Completion {
    pub(crate) generators: Vec<Vec<i64>>,
    pub(crate) completeness: Completeness,
}

struct Engine {
    elems: Vec<Bin>,
    active: Vec<usize>,
    pairs: BinaryHeap<Reverse<(u32, usize, usize)>>,
    pairs_left: u64,
}

impl Engine {
    /// Lead reduction by the active elements; `None` if `w` reduces to zero.
    fn reduce(&self, mut w: Bin) -> Result<Option<Bin>> {
        'outer: loop {
            for &g in &self.active {
                let r = &self.elems[g];
                if r.lead_divides(&w) {
                    let v = w
                        .v
                        .iter()
                        .zip(&r.v)
                        .map(|(&x, &y)| x.checked_sub(y))
                        .collect::<Option<Vec<i32>>>()
                        .ok_or(Error::Overflow("binomial reduction"))?;
                    match Bin::new(v) {
                        Some(b) => w = b,
                        None => return Ok(None),
                    }
                    continue 'outer;
                }
            }
            return Ok(Some(w));
        }
    }

    /// Adds `h` with the Gebauer–Möller pair update.
    fn insert(&mut self, h: Bin) {
        let k = self.elems.len();
        let mut cand: Vec<(u32, bool, usize, Vec<i32>, Mask)> = self
            .active
            .iter()
            .map(|&g| {
                let e = &self.elems[g];
                let l = lcm(e, &h);
                let deg = l.iter().sum::<i32>() as u32;
                (deg, e.pos.intersects(&h.pos), g, l, e.pos.union(&h.pos))
            })
            .collect();
        // Coprime pairs sort first among equal degrees so that they absorb
        // pairs with the same lcm.
        cand.sort_by_key(|a| (a.0, a.1, a.2));
        let mut kept: Vec<usize> = Vec::new();
        let mut fresh = Vec::new();
        for a in 0..cand.len() {
            let (deg, shared, g, ref l, mask) = cand[a];
            let dominated = kept.iter().any(|&b| {
                let (_, _, _, ref lb, mb) = cand[b];
                mb.is_subset(&mask) && lb.iter().zip(l).all(|(x, y)| x <= y)
            });
            if !dominated {
                kept.push(a);
                if shared {
                    fresh.push(Reverse((deg, g, k)));
                }
            }
        }
        let elems = &self.elems;
        self.pairs.retain(|&Reverse((_, i, j))| {
            let (a, b) = (&elems[i], &elems[j]);
            if !h.pos.is_subset(&a.pos.union(&b.pos)) {
                return true;
            }
            let l = lcm(a, b);
            if !h.pos.ones().all(|c| h.v[c] <= l[c]) {
                return true;
            }
            lcm(a, &h) == l || lcm(b, &h) == l
        });
        self.pairs.extend(fresh);
        self.active.retain(|&g| !h.lead_divides(&elems[g]));
        self.active.push(k);
        self.elems.push(h);
    }

    /// Reduces the S-vector of the next pair; `None` once the queue is empty.
    /// The flag reports a remainder of lower degree than the pair.
    fn next_pair(&mut self) -> Result<Option<Option<(Bin, bool)>>> {
        let Some(Reverse((deg, i, j))) = self.pairs.pop() else {
            return Ok(None);
        };
        if self.pairs_left == 0 {
            return Err(Error::Budget("critical pair budget exhausted".into()));
        }
        self.pairs_left -= 1;
        let v: Vec<i32> = self.elems[i].v.iter().zip(&self.elems[j].v).map(|(&x, &y)| x - y).collect();
        Ok(Some(match Bin::new(v) {
            Some(s) => self.reduce(s)?.map(|r| {
                let dropped = r.degree < deg;
                (r, dropped)
            }),
            None => None,
        }))
    }

    /// Completes the Gröbner basis. Reduction may cancel a common factor,
    /// leaving an element of `I_M` outside the current ideal; its orbit under
    /// `shifts` is then added so that the ideal stays invariant. If the
    /// result does not span `ker M`, the orbits of the lattice basis are
    /// added and the completion resumes.
    fn close(&mut self, shifts: &[Vec<usize>], lattice: &[Vec<i64>], n: usize) -> Result<()> {
        let mut orbits: Vec<Vec<i32>> = Vec::new();
        let mut seeded = false;
        loop {
            while let Some(v) = orbits.pop() {
                for p in shifts {
                    let mut w = vec![0i32; v.len()];
                    for (c, &x) in v.iter().enumerate() {
                        w[p[c]] = x;
                    }
                    let Some(b) = Bin::new(w) else { continue };
                    let deg = b.degree;
                    if let Some(r) = self.reduce(b)? {
                        if r.degree < deg {
                            orbits.push(r.v.clone());
                        }
                        self.insert(r);
                    }
                }
            }
            match self.next_pair()? {
                Some(Some((r, dropped))) => {
                    if dropped {
                        orbits.push(r.v.clone());
                    }
                    self.insert(r);
                }
                Some(None) => {}
                None => {
                    if seeded {
                        return Ok(());
                    }
                    let active: Vec<Vec<i64>> = self
                        .active
                        .iter()
                        .map(|&g| self.elems[g].v.iter().map(|&x| x as i64).collect())
                        .collect();
                    if spans(&active, lattice, n)? {
                        return Ok(());
                    }
                    seeded = true;
                    orbits.extend(lattice.iter().map(|u| u.iter().map(|&x| x as i32).collect()));
                }
            }
        }
    }

    /// Reduces every pending pair of degree at most `d`.
    fn pairs_through(&mut self, d: u32) -> Result<()> {
        while self.pairs.peek().is_some_and(|&Reverse((deg, _, _))| deg <= d) {
            if let Some((r, dropped)) = self.next_pair()?.flatten() {
                debug_assert!(!dropped && r.degree == d);
                self.insert(r);
            }
        }
        Ok(())
    }
}

/// Runs the completion until it is certified complete or a limit stops it.
///
/// Degrees are handled through standard monomials while their number stays
/// within the monomial budget. From the first degree beyond it, the
/// Gröbner basis is closed instead and the remaining minimal generators are
/// read from the fibers over its multidegrees.
pub(crate) fn complete(m: &MarginalMatrix, limits: &Limits) -> Result<Completion> {
    let n = m.ncols();
    if n > MAX_ENGINE_CELLS {
        return Err(Error::Invalid(format!(
            "the completion engine supports at most {MAX_ENGINE_CELLS} cells, got {n}"
        )));
    }
    let lattice = kernel_lattice_basis(m)?;
    let mut engine = Engine {
        elems: Vec::new(),
        active: Vec::new(),
        pairs: BinaryHeap::new(),
        pairs_left: limits.pair_budget,
    };
    let mut generators: Vec<Vec<i64>> = Vec::new();
    let mut standard: HashSet<Vec<u8>> = HashSet::from([vec![0u8; n]]);
    let partial = |generators, d: u64, reason: String| {
        Ok(Completion {
            generators,
            completeness: Completeness::Partial {
                complete_below: d,
                reason,
            },
        })
    };
    for d in 1u64.. {
        if let Some(bound) = limits.degree_bound {
            if d > bound {
                return partial(generators, d, format!("degree bound {bound} reached"));
            }
        }
        if d > u8::MAX as u64 {
            return partial(generators, d, "exponents beyond the supported range".into());
        }
        let first_new = engine.elems.len();
        match engine.pairs_through(d as u32) {
            Ok(()) => {}
            Err(Error::Budget(reason)) => return partial(generators, d, reason),
            Err(e) => return Err(e),
        }
        let leads: HashSet<Vec<u8>> = engine.elems[first_new..]
            .iter()
            .map(|b| b.v.iter().map(|&x| x.max(0) as u8).collect())
            .collect();
        let Some(mut found) = standard_monomials(m, &standard, &leads, limits.monomial_budget) else {
            return finish_by_fibers(m, engine, generators, d, &lattice, limits);
        };
        let new_count = found.generators.len();
        for v in found.generators.drain(..) {
            generators.push(v.iter().map(|&x| x as i64).collect());
            let b = Bin::new(v).expect("distinct monomials");
            engine.insert(b);
        }
        standard = found.next;
        if limits.first_only && new_count > 0 {
            return partial(generators, d + 1, "stopped after the lowest degree".into());
        }
        if engine.pairs.is_empty() && spans(&generators, &lattice, n)? {
            return Ok(Completion {
                generators,
                completeness: Completeness::Complete,
            });
        }
    }
    unreachable!()
}

/// Completes the Gröbner basis, then finds the minimal generators of degree
/// `from` and up: every minimal generator's multidegree is the multidegree of
/// some basis element, and in each such fiber the components of the
/// support-intersection graph, less one, count the minimal generators.
fn finish_by_fibers(
    m: &MarginalMatrix,
    mut engine: Engine,
    mut generators: Vec<Vec<i64>>,
    from: u64,
    lattice: &[Vec<i64>],
    limits: &Limits,
) -> Result<Completion> {
    let partial = |generators, d: u64, reason: String| {
        Ok(Completion {
            generators,
            completeness: Completeness::Partial {
                complete_below: d,
                reason,
            },
        })
    };
    let shifts = level_shifts(m.levels().as_slice());
    match engine.close(&shifts, lattice, m.ncols()) {
        Ok(()) => {}
        Err(Error::Budget(reason)) => return partial(generators, from, reason),
        Err(e) => return Err(e),
    }
    let mut candidates: BTreeMap<u64, BTreeSet<Vec<i64>>> = BTreeMap::new();
    for &g in &engine.active {
        let e = &engine.elems[g];
        if e.degree as u64 >= from {
            let plus: Vec<i64> = e.v.iter().map(|&x| x.max(0) as i64).collect();
            candidates.entry(e.degree as u64).or_default().insert(m.apply(&plus));
        }
    }
    if limits.first_only && generators.is_empty() {
        if let Some((&d, bs)) = candidates.iter().next() {
            let b = bs.iter().next().expect("nonempty");
            let f = enumerate_fiber_with_budget(m, b, limits.fiber_budget);
            if let Ok(f) = f {
                generators.extend(connectors(&f.points).into_iter().take(1));
            }
            return partial(generators, d, "stopped after the lowest degree".into());
        }
    }
    for (d, bs) in candidates {
        if limits.degree_bound.is_some_and(|bound| d > bound) {
            return partial(generators, d, format!("degree bound {} reached", d - 1));
        }
        let bs: Vec<Vec<i64>> = bs.into_iter().collect();
        let found: Vec<Result<Vec<Vec<i64>>>> = bs
            .par_iter()
            .map(|b| enumerate_fiber_with_budget(m, b, limits.fiber_budget).map(|f| connectors(&f.points)))
            .collect();
        let mut new = Vec::new();
        for r in found {
            match r {
                Ok(vs) => new.extend(vs),
                Err(Error::Budget(reason)) => return partial(generators, d, reason),
                Err(e) => return Err(e),
            }
        }
        generators.extend(new);
        if limits.first_only && !generators.is_empty() {
            return partial(generators, d + 1, "stopped after the lowest degree".into());
        }
    }
    Ok(Completion {
        generators,
        completeness: Completeness::Complete,
    })
}

/// Differences between the first point of one component of the
/// support-intersection graph and the first point of each other component.
fn connectors(points: &[Vec<u32>]) -> Vec<Vec<i64>> {
    let leaders = gcd_component_leaders(points);
    let base = &points[leaders[0]];
    leaders[1..]
        .iter()
        .map(|&i| points[i].iter().zip(base).map(|(&x, &y)| x as i64 - y as i64).collect())
        .collect()
}

/// All cyclic level shifts, as permutations of cells: the group generated
/// by shifting the level of one coordinate by one. It acts transitively on
/// cells and maps `ker M` to itself.
fn level_shifts(levels: &[usize]) -> Vec<Vec<usize>> {
    let n: usize = levels.iter().product();
    let mut elements: Vec<Vec<usize>> = vec![(0..n).collect()];
    // Row-major cells, last coordinate fastest.
    let mut stride = n;
    for &d in levels {
        stride /= d;
        let shift: Vec<usize> = (0..n)
            .map(|c| {
                let x = (c / stride) % d;
                c - x * stride + ((x + 1) % d) * stride
            })
            .collect();
        let mut next = Vec::with_capacity(elements.len() * d);
        for e in &elements {
            let mut p = e.clone();
            for _ in 0..d {
                p = p.iter().map(|&c| shift[c]).collect();
                next.push(p.clone());
            }
        }
        elements = next;
    }
    elements
}

struct Found {
    next: HashSet<Vec<u8>>,
    generators: Vec<Vec<i32>>,
}

/// The standard monomials of the next degree, given those of the previous
/// degree and the leading monomials of the next degree. Fibers with several
/// standard monomials yield new generators and keep only their smallest.
/// `None` if there are more than `budget` candidates.
fn standard_monomials(
    m: &MarginalMatrix,
    prev: &HashSet<Vec<u8>>,
    leads: &HashSet<Vec<u8>>,
    budget: usize,
) -> Option<Found> {
    let n = m.ncols();
    let nrows = m.nrows();
    let prev_list: Vec<&Vec<u8>> = prev.iter().collect();
    let mut cands: Vec<(Vec<u8>, Vec<u8>)> = prev_list
        .par_iter()
        .flat_map_iter(|&mono| {
            let last = mono.iter().rposition(|&x| x > 0).unwrap_or(0);
            (last..n).filter_map(move |i| {
                let mut c = mono.clone();
                c[i] += 1;
                for j in 0..n {
                    if j != i && c[j] > 0 {
                        c[j] -= 1;
                        let ok = prev.contains(&c);
                        c[j] += 1;
                        if !ok {
                            return None;
                        }
                    }
                }
                if leads.contains(&c) {
                    return None;
                }
                let mut b = vec![0u8; nrows];
                for (j, &x) in c.iter().enumerate() {
                    if x > 0 {
                        for &r in m.column_support(j) {
                            b[r] += x;
                        }
                    }
                }
                Some((b, c))
            })
        })
        .collect();
    if cands.len() > budget {
        return None;
    }
    cands.par_sort_unstable_by(|x, y| x.0.cmp(&y.0).then_with(|| term_cmp(&x.1, &y.1)));
    let mut next = HashSet::with_capacity(cands.len());
    let mut generators = Vec::new();
    let mut start = 0;
    while start < cands.len() {
        let mut end = start + 1;
        while end < cands.len() && cands[end].0 == cands[start].0 {
            end += 1;
        }
        let low = &cands[start].1;
        for (_, c) in &cands[start + 1..end] {
            generators.push(c.iter().zip(low).map(|(&x, &y)| x as i32 - y as i32).collect());
        }
        next.insert(low.clone());
        start = end;
    }
    Some(Found { next, generators })
}

/// Whether the vectors span the lattice with Hermite normal form `hnf`.
fn spans(vectors: &[Vec<i64>], hnf: &[Vec<i64>], n: usize) -> Result<bool> {
    if vectors.len() < hnf.len() {
        return Ok(false);
    }
    let mut rows: Vec<Vec<i128>> = vectors.iter().map(|v| v.iter().map(|&x| x as i128).collect()).collect();
    let rank = echelonize(&mut rows, 0..n)?;
    if rank != hnf.len() {
        return Ok(false);
    }
    Ok(rows[..rank]
        .iter()
        .zip(hnf)
        .all(|(r, h)| r.iter().zip(h).all(|(&x, &y)| x == y as i128)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::parse_complex;
    use crate::model::{marginal_matrix, Levels};

    fn limits() -> Limits {
        Limits {
            pair_budget: 1_000_000,
            monomial_budget: 1_000_000,
            fiber_budget: 1_000_000,
            degree_bound: None,
            first_only: false,
        }
    }

    fn degrees(gens: &[Vec<i64>]) -> Vec<i64> {
        gens.iter().map(|u| u.iter().filter(|&&x| x > 0).sum()).collect()
    }

    #[test]
    fn masks() {
        let mut m = Mask::default();
        m.set(3);
        m.set(200);
        assert_eq!(m.ones().collect::<Vec<_>>(), vec![3, 200]);
        let mut n = Mask::default();
        n.set(3);
        assert!(n.is_subset(&m));
        assert!(!m.is_subset(&n));
        assert!(m.intersects(&n));
    }

    #[test]
    fn orientation() {
        // x_0 is cheapest, so the monomial avoiding it leads.
        assert_eq!(Bin::new(vec![1, -1, -1, 1]).unwrap().v, vec![-1, 1, 1, -1]);
        // Otherwise the last variable decides.
        assert_eq!(Bin::new(vec![0, 1, -1, 0]).unwrap().v, vec![0, 1, -1, 0]);
        assert!(Bin::new(vec![0, 0]).is_none());
        assert_eq!(term_cmp(&[1, 0, 1], &[0, 1, 1]), Ordering::Less);
        assert_eq!(term_cmp(&[0, 1, 0], &[0, 0, 1]), Ordering::Greater);
    }

    #[test]
    fn segre() {
        let m = marginal_matrix(&parse_complex("n=2; 1 2").unwrap(), &Levels::binary(2)).unwrap();
        let c = complete(&m, &limits()).unwrap();
        assert_eq!(c.generators.len(), 1);
        assert_eq!(c.generators[0].iter().map(|x| x.abs()).collect::<Vec<_>>(), vec![1, 1, 1, 1]);
        assert!(c.completeness.is_complete());
    }

    #[test]
    fn triangle_boundary_needs_degree_four() {
        let m = marginal_matrix(&parse_complex("n=3; 12 13 23").unwrap(), &Levels::binary(3)).unwrap();
        let c = complete(&m, &limits()).unwrap();
        assert_eq!(degrees(&c.generators), vec![4]);
        assert!(c.completeness.is_complete());
    }

    #[test]
    fn shifts_form_a_transitive_group() {
        let g = level_shifts(&[2, 3]);
        assert_eq!(g.len(), 6);
        let images: BTreeSet<usize> = g.iter().map(|p| p[0]).collect();
        assert_eq!(images.len(), 6);
        assert!(g.iter().any(|p| p.iter().enumerate().all(|(i, &c)| i == c)));
        let m = marginal_matrix(&parse_complex("n=2; 1 2").unwrap(), &Levels::new(vec![2, 3]).unwrap()).unwrap();
        for u in kernel_lattice_basis(&m).unwrap() {
            for p in &g {
                let mut w = vec![0; u.len()];
                for (c, &x) in u.iter().enumerate() {
                    w[p[c]] = x;
                }
                assert!(m.in_kernel(&w));
            }
        }
    }

    #[test]
    fn fiber_phase_agrees_with_standard_monomials() {
        for s in ["n=4; 12 13 14 23 24 34", "n=4; 12 23 34 14", "n=4; 123 124 134 234", "n=3; 12 3"] {
            let c = parse_complex(s).unwrap();
            let m = marginal_matrix(&c, &Levels::binary(c.n())).unwrap();
            let full = complete(&m, &limits()).unwrap();
            let mut l = limits();
            l.monomial_budget = 20;
            let switched = complete(&m, &l).unwrap();
            let mut a = degrees(&full.generators);
            let mut b = degrees(&switched.generators);
            a.sort();
            b.sort();
            assert_eq!(a, b, "{s}");
            assert!(full.completeness.is_complete() && switched.completeness.is_complete());
        }
    }

    #[test]
    fn limits_stop_early() {
        let m = marginal_matrix(&parse_complex("n=4; 12 23 34 14").unwrap(), &Levels::binary(4)).unwrap();
        let mut l = limits();
        l.degree_bound = Some(3);
        let c = complete(&m, &l).unwrap();
        assert_eq!(degrees(&c.generators), vec![2; 8]);
        assert!(matches!(c.completeness, Completeness::Partial { complete_below: 4, .. }));
        let mut l = limits();
        l.pair_budget = 0;
        let c = complete(&m, &l).unwrap();
        assert!(!c.completeness.is_complete());
        let mut l = limits();
        l.first_only = true;
        let c = complete(&m, &l).unwrap();
        assert_eq!(c.generators.len(), 8);
    }
}
