//! Property suites shared by the `properties` and `acceptance` targets.
//! Each suite runs a fixed number of random cases over complexes on at most
//! five vertices, with binary levels unless stated otherwise.

#![allow(dead_code)]

use std::collections::BTreeMap;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use betti_markov::complex::{enumerate_complexes, Face, SimplicialComplex, Vertex};
use betti_markov::homology::{reduced_cohomology, FieldSpec};
use betti_markov::markov::{
    enumerate_fiber, initial_degree_toric, markov_basis, minimal_degree_multiset, multidegrees,
    sweep_minimal_degrees, DEFAULT_FIBER_BUDGET,
};
use betti_markov::model::{block_split, marginal_matrix, Levels, MarginalMatrix};
use betti_markov::moves::{recipe_moves, tableau_to_move};
use betti_markov::stanley_reisner::{betti_diagram, initial_degree_sr, predicted_degrees};

pub const CASES: u32 = 256;
const FIELDS: [FieldSpec; 2] = [FieldSpec::Rationals, FieldSpec::Prime(2)];

type Check = fn(u32) -> Result<usize, String>;

/// Name and runner of every suite. A runner returns the number of cases run.
pub const SUITES: [(&str, Check); 8] = [
    ("initial-degree law (random)", initial_degree_law),
    ("initial-degree law (every complex)", initial_degree_law_exhaustive),
    ("engine agrees with fiber oracles", engine_agrees_with_fiber_oracles),
    ("design matrix laws", design_matrix_laws),
    ("Euler characteristic and cones", euler_characteristic_and_cones),
    ("Betti data invariant under relabeling", betti_data_is_invariant_under_relabeling),
    ("Markov degrees invariant under relabeling", markov_degrees_are_invariant_under_relabeling),
    ("recipe count, kernel and minimality", recipe_counts_kernel_and_minimality),
];

pub fn suite(name: &str) -> Check {
    SUITES.iter().find(|(n, _)| *n == name).expect("known suite").1
}

fn run<S, F>(cases: u32, strategy: S, test: F) -> Result<usize, String>
where
    S: Strategy,
    F: Fn(S::Value) -> Result<(), TestCaseError>,
{
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&strategy, test).map_err(|e| e.to_string())?;
    Ok(cases as usize)
}

fn complex(min_n: usize, max_n: usize) -> impl Strategy<Value = SimplicialComplex> {
    (min_n..=max_n)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(1u64..(1u64 << n), 1..=6)))
        .prop_map(|(n, masks)| SimplicialComplex::new(n, masks.into_iter().map(Face::from_bits)).unwrap())
}

fn with_permutation(c: impl Strategy<Value = SimplicialComplex>) -> impl Strategy<Value = (SimplicialComplex, Vec<Vertex>)> {
    c.prop_flat_map(|c| {
        let perm: Vec<Vertex> = (1..=c.n() as Vertex).collect();
        (Just(c), Just(perm).prop_shuffle())
    })
}

fn binary(c: &SimplicialComplex) -> MarginalMatrix {
    marginal_matrix(c, &Levels::binary(c.n())).unwrap()
}

/// Component labels of the graph on `points` joining tables with
/// overlapping support.
pub fn support_components(points: &[Vec<u32>]) -> Vec<usize> {
    let k = points.len();
    let mut comp: Vec<usize> = (0..k).collect();
    fn find(c: &mut [usize], mut x: usize) -> usize {
        while c[x] != x {
            x = c[x];
        }
        x
    }
    for i in 0..k {
        for j in i + 1..k {
            if points[i].iter().zip(&points[j]).any(|(&a, &b)| a > 0 && b > 0) {
                let (a, b) = (find(&mut comp, i), find(&mut comp, j));
                comp[a] = b;
            }
        }
    }
    (0..k).map(|i| find(&mut comp, i)).collect()
}

/// Whether `u` is a minimal generator: its two monomials lie in different
/// components of their fiber.
pub fn is_minimal_generator(m: &MarginalMatrix, plus: &[u32], minus: &[u32]) -> bool {
    let b: Vec<i64> = m.apply(&plus.iter().map(|&x| x as i64).collect::<Vec<_>>());
    let fiber = enumerate_fiber(m, &b).unwrap();
    let comps = support_components(&fiber.points);
    let at = |p: &[u32]| fiber.points.iter().position(|q| q == p).unwrap();
    comps[at(plus)] != comps[at(minus)]
}

fn initial_degree_law(cases: u32) -> Result<usize, String> {
    run(cases, complex(1, 5), |c| {
        prop_assume!(!c.is_simplex());
        let sr = initial_degree_sr(&c).unwrap();
        let toric = initial_degree_toric(&binary(&c)).unwrap();
        prop_assert_eq!(toric, 1u64 << (sr - 1));
        Ok(())
    })
}

fn initial_degree_law_exhaustive(_: u32) -> Result<usize, String> {
    let mut cases = 0;
    for n in 1..=5 {
        for c in enumerate_complexes(n, true, false).unwrap() {
            let sr = initial_degree_sr(&c).unwrap();
            let toric = initial_degree_toric(&binary(&c)).unwrap();
            if toric != 1u64 << (sr - 1) {
                return Err(format!("{c}: toric {toric}, Stanley-Reisner {sr}"));
            }
            cases += 1;
        }
    }
    Ok(cases)
}

fn engine_agrees_with_fiber_oracles(cases: u32) -> Result<usize, String> {
    run(cases, complex(1, 4), |c| {
        let m = binary(&c);
        let b = markov_basis(&m).unwrap();
        prop_assert!(b.completeness.is_complete());
        for mv in &b.moves {
            prop_assert!(m.in_kernel(mv.as_slice()));
        }
        let oracle = minimal_degree_multiset(&m, multidegrees(&m, &b.moves), DEFAULT_FIBER_BUDGET).unwrap();
        prop_assert_eq!(&oracle, &b.degree_multiset);
        // Exhaustive sweep: nothing is missing in low degrees.
        let sweep = sweep_minimal_degrees(&m, 6, 200_000).unwrap();
        let low: BTreeMap<u64, usize> = b
            .degree_multiset
            .iter()
            .filter(|(&d, _)| d <= sweep.complete_through)
            .map(|(&d, &k)| (d, k))
            .collect();
        prop_assert_eq!(sweep.counts, low);
        Ok(())
    })
}

fn design_matrix_laws(cases: u32) -> Result<usize, String> {
    let strategy = (
        complex(1, 5).prop_flat_map(|c| {
            let n = c.n();
            (Just(c), prop::collection::vec(2usize..=3, n), any::<prop::sample::Index>())
        }),
        prop::collection::vec(-3i64..=3, 243),
    );
    run(cases, strategy, |((c, d, pick), seed)| {
        let levels = Levels::new(d).unwrap();
        prop_assume!(levels.cells() <= 243);
        let m = marginal_matrix(&c, &levels).unwrap();
        let u = &seed[..m.ncols()];
        let mu = m.apply(u);
        // Homogeneity: every facet block of M u sums to the total of u, and
        // every column has one 1 per facet.
        let total: i64 = u.iter().sum();
        for r in m.blocks() {
            prop_assert_eq!(mu[r].iter().sum::<i64>(), total);
        }
        for col in 0..m.ncols() {
            prop_assert_eq!(m.column_support(col).len(), c.facets().len());
        }
        let vertices = c.vertex_set().to_vec();
        prop_assume!(!vertices.is_empty());
        let v = vertices[pick.index(vertices.len())];
        // Block structure at v: the slices u_a (x_v = a) meet the link block
        // separately and the facets avoiding v see their sum.
        let (a, b) = block_split(&c, &levels, v).unwrap();
        let rest = levels.without(v);
        let dv = levels.as_slice()[v as usize - 1];
        let mut slices = vec![vec![0i64; rest.cells()]; dv];
        for (cell, &x) in u.iter().enumerate() {
            let mut coords = levels.coords(cell);
            let level = coords.remove(v as usize - 1);
            slices[level][rest.index(&coords)] += x;
        }
        let mut expected: Vec<i64> = Vec::new();
        for s in &slices {
            expected.extend(a.apply(s));
        }
        if let Some(b) = b {
            let sum: Vec<i64> = (0..rest.cells()).map(|i| slices.iter().map(|s| s[i]).sum()).collect();
            expected.extend(b.apply(&sum));
        }
        let mut got = mu.clone();
        got.sort_unstable();
        expected.sort_unstable();
        prop_assert_eq!(got, expected);
        Ok(())
    })
}

fn alternating(v: &[usize]) -> i64 {
    v.iter()
        .enumerate()
        .map(|(i, &x)| if i % 2 == 0 { -(x as i64) } else { x as i64 })
        .sum()
}

fn euler_characteristic_and_cones(cases: u32) -> Result<usize, String> {
    run(cases, complex(1, 5), |c| {
        // Both vectors start at dimension -1.
        let euler = alternating(&c.f_vector());
        let cone = c.cone().unwrap();
        for k in FIELDS {
            prop_assert_eq!(alternating(&reduced_cohomology(&c, k)), euler);
            prop_assert!(reduced_cohomology(&cone, k).iter().all(|&x| x == 0));
        }
        Ok(())
    })
}

fn betti_data_is_invariant_under_relabeling(cases: u32) -> Result<usize, String> {
    run(cases, with_permutation(complex(1, 5)), |(c, perm)| {
        let r = c.relabel(&perm);
        for k in FIELDS {
            let (x, y) = (betti_diagram(&c, k), betti_diagram(&r, k));
            prop_assert_eq!(x.entries().collect::<Vec<_>>(), y.entries().collect::<Vec<_>>());
            prop_assert_eq!(predicted_degrees(&c, k), predicted_degrees(&r, k));
        }
        prop_assert_eq!(c.is_vertex_decomposable(), r.is_vertex_decomposable());
        prop_assert_eq!(c.canonical_form(), r.canonical_form());
        Ok(())
    })
}

fn markov_degrees_are_invariant_under_relabeling(cases: u32) -> Result<usize, String> {
    run(cases, with_permutation(complex(1, 4)), |(c, perm)| {
        let r = c.relabel(&perm);
        let x = markov_basis(&binary(&c)).unwrap();
        let y = markov_basis(&binary(&r)).unwrap();
        prop_assert_eq!(x.degree_multiset, y.degree_multiset);
        Ok(())
    })
}

fn vertex_decomposable_complexes() -> Vec<SimplicialComplex> {
    let mut out = Vec::new();
    for n in 1..=5 {
        out.extend(
            enumerate_complexes(n, n == 5, true)
                .unwrap()
                .into_iter()
                .filter(|c| c.is_vertex_decomposable() && !c.is_simplex()),
        );
    }
    out
}

fn recipe_counts_kernel_and_minimality(cases: u32) -> Result<usize, String> {
    let strategy = with_permutation(prop::sample::select(vertex_decomposable_complexes()));
    run(cases, strategy, |(c, perm)| {
        let c = c.relabel(&perm);
        let m = binary(&c);
        for nf in c.minimal_nonfaces() {
            let d = nf.len();
            let ts = recipe_moves(&c, nf).unwrap();
            prop_assert_eq!(ts.len(), 1usize << (c.n() - d));
            for t in &ts {
                prop_assert_eq!(t.degree(), 1usize << (d - 1));
                let mv = tableau_to_move(t, &m).unwrap();
                prop_assert!(is_minimal_generator(&m, &mv.plus(), &mv.minus()));
            }
        }
        Ok(())
    })
}
