//! Command-line front end: Betti diagrams, Markov bases, move recipes,
//! conjecture checks, enumeration and table reproduction.

use std::fs;
use std::io::Read;
use std::panic;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use betti_markov::complex::{enumerate_complexes, ComplexJson};
use betti_markov::harness::{
    check_conjecture_with, reproduce_table1, reproduce_table2, ResultCache, Universe,
};
use betti_markov::homology::FieldSpec;
use betti_markov::markov::{
    markov_basis_with, sweep_minimal_degrees, Completeness, MarkovOptions, DEFAULT_FIBER_BUDGET,
    DEFAULT_MONOMIAL_BUDGET, DEFAULT_PAIR_BUDGET,
};
use betti_markov::model::{marginal_matrix, Levels};
use betti_markov::moves::{recipe_moves, tableau_to_move, Tableau};
use betti_markov::stanley_reisner::betti_diagram;
use betti_markov::{parse_complex, Error, Face, SimplicialComplex};

#[derive(Parser, Debug)]
#[command(name = "betti-markov", version, about = "Betti diagrams of Stanley-Reisner rings and Markov bases of hierarchical models")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Cache results in this directory.
    #[arg(long, global = true, env = "MB_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Betti diagram of the Stanley-Reisner ring over each field.
    Betti {
        #[command(flatten)]
        input: Input,
        /// Coefficient fields: q, f2, f3, ...
        #[arg(long = "field", value_delimiter = ',', default_value = "q")]
        fields: Vec<FieldSpec>,
    },
    /// Minimal Markov basis of the hierarchical model.
    Markov {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        model: Model,
        #[command(flatten)]
        budgets: Budgets,
        /// Print only the degree multiset.
        #[arg(long)]
        degrees_only: bool,
        /// Count minimal generators by sweeping all fibers up to --degree-bound,
        /// without the completion engine.
        #[arg(long, requires = "degree_bound")]
        oracle_only: bool,
    },
    /// Recipe moves of a vertex decomposable complex, per minimal non-face.
    Moves {
        #[command(flatten)]
        input: Input,
        /// Only this minimal non-face, e.g. 123.
        #[arg(long)]
        nonface: Option<String>,
    },
    /// Compare predicted and actual Markov degrees.
    Check {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        model: Model,
        #[command(flatten)]
        budgets: Budgets,
        /// Fields whose predictions are combined (default q,f2).
        #[arg(long = "field", value_delimiter = ',')]
        fields: Vec<FieldSpec>,
    },
    /// List the complexes on [n] that use every vertex.
    Enumerate {
        n: usize,
        /// All labelings instead of one per isomorphism class.
        #[arg(long)]
        labeled: bool,
        /// Include the full simplex.
        #[arg(long)]
        include_simplex: bool,
    },
    /// Histogram of the number of unpredicted degrees per complex on [n].
    Table1 {
        n: usize,
        /// labeled or unlabeled
        #[arg(long, default_value = "unlabeled")]
        universe: Universe,
        #[command(flatten)]
        budgets: Budgets,
    },
    /// Markov and predicted degrees for every complex on four vertices.
    Table2 {
        #[command(flatten)]
        budgets: Budgets,
    },
}

#[derive(Args, Debug)]
struct Input {
    /// Complex file (JSON or `n=4; 12 23 34 14`), `-` for stdin, or the
    /// text form itself.
    complex: String,
}

#[derive(Args, Debug)]
struct Model {
    /// Levels per vertex, e.g. 2,2,3 (default: all 2).
    #[arg(long, value_delimiter = ',')]
    levels: Option<Vec<usize>>,
}

#[derive(Args, Debug)]
struct Budgets {
    /// Stop above this degree; the result is then marked partial.
    #[arg(long)]
    degree_bound: Option<u64>,
    /// Maximum points in one fiber.
    #[arg(long, default_value_t = DEFAULT_FIBER_BUDGET)]
    fiber_budget: usize,
    /// Maximum critical pairs processed by the completion engine.
    #[arg(long, default_value_t = DEFAULT_PAIR_BUDGET)]
    pair_budget: u64,
    /// Maximum standard monomials of one degree in the completion engine.
    #[arg(long, default_value_t = DEFAULT_MONOMIAL_BUDGET)]
    monomial_budget: usize,
}

impl Budgets {
    fn options(&self) -> MarkovOptions {
        MarkovOptions {
            fiber_budget: self.fiber_budget,
            pair_budget: self.pair_budget,
            monomial_budget: self.monomial_budget,
            degree_bound: self.degree_bound,
        }
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Lib(Error::Budget(_) | Error::EnumerationLimit { .. }) => 2,
            Failure::Lib(Error::NotInKernel | Error::Overflow(_) | Error::Io(_)) => 3,
            Failure::Lib(_) => 1,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) => m.clone(),
            Failure::Lib(e) => e.to_string(),
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn read_complex(input: &Input) -> Outcome<SimplicialComplex> {
    let arg = input.complex.trim();
    let text = if arg == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Usage(format!("reading stdin: {e}")))?;
        s
    } else if arg.starts_with("n=") || arg.starts_with('{') {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| Failure::Usage(format!("reading {arg}: {e}")))?
    };
    Ok(parse_complex(&text)?)
}

fn levels_for(model: &Model, complex: &SimplicialComplex) -> Outcome<Levels> {
    match &model.levels {
        None => Ok(Levels::binary(complex.n())),
        Some(d) if d.len() != complex.n() => Err(Failure::Usage(format!(
            "--levels has {} entries but the complex has n = {}",
            d.len(),
            complex.n()
        ))),
        Some(d) => Ok(Levels::new(d.clone())?),
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn completeness_text(c: &Completeness) -> String {
    match c {
        Completeness::Complete => "complete".into(),
        Completeness::Partial { complete_below, reason } => {
            format!("partial: complete below degree {complete_below} ({reason})")
        }
    }
}

fn multiset_text<K: std::fmt::Display, V: std::fmt::Display>(m: impl IntoIterator<Item = (K, V)>) -> String {
    let parts: Vec<String> = m.into_iter().map(|(d, c)| format!("{d}:{c}")).collect();
    if parts.is_empty() {
        "(none)".into()
    } else {
        parts.join(" ")
    }
}

fn betti(complex: &SimplicialComplex, fields: &[FieldSpec], as_json: bool) -> String {
    if as_json {
        let mut out = serde_json::Map::new();
        for &k in fields {
            let d: Value = serde_json::from_str(&betti_diagram(complex, k).to_json()).expect("valid json");
            out.insert(k.to_string(), d);
        }
        return pretty(&Value::Object(out));
    }
    fields
        .iter()
        .map(|&k| {
            let d = betti_diagram(complex, k);
            format!("over {k} (regularity {}):\n{d}", d.regularity())
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn markov(
    complex: &SimplicialComplex,
    levels: &Levels,
    opts: &MarkovOptions,
    degrees_only: bool,
    oracle_only: bool,
    as_json: bool,
) -> Outcome<Rendered> {
    let m = marginal_matrix(complex, levels)?;
    let (cells, rank) = (m.ncols(), m.rank());
    let header = format!("N = {cells}, rank = {rank}, kernel rank = {}", cells - rank);
    if oracle_only {
        let bound = opts.degree_bound.expect("required by the argument parser");
        let s = sweep_minimal_degrees(&m, bound, opts.fiber_budget)?;
        let stopped = s.stopped.is_some();
        if as_json {
            let text = pretty(&json!({
                "cells": cells,
                "rank": rank,
                "kernel_rank": cells - rank,
                "degree_multiset": s.counts,
                "complete_through": s.complete_through,
                "stopped": s.stopped,
            }));
            return Ok((text, stopped));
        }
        let mut out = format!(
            "{header}\ndegrees: {}\nexhaustive through degree {}",
            multiset_text(&s.counts),
            s.complete_through
        );
        if let Some(r) = s.stopped {
            out.push_str(&format!(" ({r})"));
        }
        return Ok((out, stopped));
    }
    let basis = markov_basis_with(&m, opts)?;
    let cut = budget_cut(&basis.completeness, opts);
    if as_json {
        let mut v = json!({
            "cells": cells,
            "rank": rank,
            "kernel_rank": cells - rank,
            "degree_multiset": basis.degree_multiset,
            "completeness": basis.completeness,
        });
        if !degrees_only {
            let moves: Vec<_> = basis.moves.iter().map(|mv| mv.to_json_parts(levels)).collect();
            v["moves"] = json!(moves);
        }
        return Ok((pretty(&v), cut));
    }
    let mut out = format!(
        "{header}\ndegrees: {}\n{}",
        multiset_text(&basis.degree_multiset),
        completeness_text(&basis.completeness)
    );
    if !degrees_only {
        for mv in &basis.moves {
            out.push_str("\n\n");
            if levels.is_binary() {
                out.push_str(&Tableau::from_move(mv, levels)?.to_string());
            } else {
                out.push_str(&serde_json::to_string(&mv.to_json_parts(levels)).expect("serializable"));
            }
        }
    }
    Ok((out, cut))
}

fn parse_face(s: &str, n: usize) -> Outcome<Face> {
    let mut face = Face::EMPTY;
    for ch in s.trim().chars().filter(|c| *c != ',') {
        let v = ch
            .to_digit(10)
            .filter(|&v| v >= 1 && v as usize <= n)
            .ok_or_else(|| Failure::Usage(format!("bad non-face `{s}`")))?;
        face = face.with(v);
    }
    Ok(face)
}

fn recipe(complex: &SimplicialComplex, nonface: Option<&str>, as_json: bool) -> Outcome<String> {
    let targets = match nonface {
        Some(s) => vec![parse_face(s, complex.n())?],
        None => complex.minimal_nonfaces(),
    };
    let levels = Levels::binary(complex.n());
    let m = marginal_matrix(complex, &levels)?;
    let mut groups = Vec::new();
    for f in targets {
        let tableaux = recipe_moves(complex, f)?;
        for t in &tableaux {
            tableau_to_move(t, &m)?;
        }
        groups.push((f, tableaux));
    }
    if as_json {
        let v: Vec<Value> = groups
            .iter()
            .map(|(f, ts)| {
                json!({
                    "nonface": f.to_vec(),
                    "moves": ts.iter().map(|t| t.to_json_parts()).collect::<Vec<_>>(),
                })
            })
            .collect();
        return Ok(pretty(&json!(v)));
    }
    let parts: Vec<String> = groups
        .iter()
        .map(|(f, ts)| {
            let degree = ts.first().map_or(0, |t| t.degree());
            let mut s = format!("non-face {f}: {} tableaux of degree {degree}", ts.len());
            for t in ts {
                s.push_str(&format!("\n\n{t}"));
            }
            s
        })
        .collect();
    Ok(parts.join("\n\n"))
}

fn enumerate(n: usize, labeled: bool, include_simplex: bool, as_json: bool) -> Outcome<String> {
    let cs = enumerate_complexes(n, !labeled, include_simplex)?;
    if as_json {
        let v: Vec<ComplexJson> = cs.iter().map(ComplexJson::from).collect();
        return Ok(serde_json::to_string_pretty(&v).expect("serializable"));
    }
    let mut out: Vec<String> = cs.iter().map(|c| c.to_string()).collect();
    out.push(format!("{} complexes", cs.len()));
    Ok(out.join("\n"))
}

/// Output text, and whether a budget cut the computation short.
type Rendered = (String, bool);

/// Whether a partial result stopped below the requested degree bound.
fn budget_cut(c: &Completeness, opts: &MarkovOptions) -> bool {
    match c {
        Completeness::Complete => false,
        Completeness::Partial { complete_below, .. } => opts.degree_bound.is_none_or(|b| *complete_below <= b),
    }
}

/// Runs `compute` through the cache when one is configured. Results cut
/// short by a budget are not stored.
fn cached<F>(cache: Option<&ResultCache>, key: impl FnOnce() -> String, compute: F) -> Outcome<Rendered>
where
    F: FnOnce() -> Outcome<Rendered>,
{
    let Some(cache) = cache else {
        return compute();
    };
    let key = key();
    if let Some(s) = cache.get(&key)? {
        return Ok((s, false));
    }
    let (s, cut) = compute()?;
    if !cut {
        cache.put(&key, &s)?;
    }
    Ok((s, cut))
}

fn run(cli: Cli) -> Outcome<Rendered> {
    let cache = match &cli.cache_dir {
        Some(d) => Some(ResultCache::new(d)?),
        None => None,
    };
    let cache = cache.as_ref();
    let as_json = cli.json;
    match &cli.command {
        Command::Betti { input, fields } => {
            let c = read_complex(input)?;
            Ok((betti(&c, fields, as_json), false))
        }
        Command::Markov {
            input,
            model,
            budgets,
            degrees_only,
            oracle_only,
        } => {
            let c = read_complex(input)?;
            let levels = levels_for(model, &c)?;
            let opts = budgets.options();
            cached(
                cache,
                || ResultCache::key(&c, &levels, &format!("markov {opts:?} {degrees_only} {oracle_only} {as_json}")),
                || markov(&c, &levels, &opts, *degrees_only, *oracle_only, as_json),
            )
        }
        Command::Moves { input, nonface } => {
            let c = read_complex(input)?;
            Ok((recipe(&c, nonface.as_deref(), as_json)?, false))
        }
        Command::Check {
            input,
            model,
            budgets,
            fields,
        } => {
            let c = read_complex(input)?;
            let levels = levels_for(model, &c)?;
            let opts = budgets.options();
            cached(
                cache,
                || ResultCache::key(&c, &levels, &format!("check {opts:?} {fields:?} {as_json}")),
                || {
                    let r = check_conjecture_with(&c, &levels, fields, &opts)?;
                    let cut = budget_cut(&r.completeness, &opts);
                    Ok((if as_json { r.to_json() } else { r.to_string() }, cut))
                },
            )
        }
        Command::Enumerate {
            n,
            labeled,
            include_simplex,
        } => Ok((enumerate(*n, *labeled, *include_simplex, as_json)?, false)),
        Command::Table1 { n, universe, budgets } => {
            let opts = budgets.options();
            cached(
                cache,
                || ResultCache::key_for(&[&format!("table1 {n} {universe} {opts:?} {as_json}")]),
                || {
                    let t = reproduce_table1(*n, *universe, &opts)?;
                    let cut = t.is_partial();
                    Ok((if as_json { t.to_json() } else { t.to_string() }, cut))
                },
            )
        }
        Command::Table2 { budgets } => {
            let opts = budgets.options();
            cached(
                cache,
                || ResultCache::key_for(&[&format!("table2 {opts:?} {as_json}")]),
                || {
                    let t = reproduce_table2(&opts)?;
                    let cut = t.rows.iter().any(|r| budget_cut(&r.report.completeness, &opts));
                    Ok((if as_json { t.to_json() } else { t.to_string() }, cut))
                },
            )
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match panic::catch_unwind(|| run(cli)) {
        Ok(Ok((out, cut))) => {
            println!("{out}");
            if cut {
                eprintln!("budget exceeded: the result above is partial");
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Ok(Err(f)) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
        Err(_) => {
            eprintln!("error: internal assertion failed");
            ExitCode::from(3)
        }
    }
}
