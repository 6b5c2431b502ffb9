//! Coupling-count scaling and solution-quality comparison experiments.
//!
//! Each (size, replicate) pair gets its own formula seed derived from the
//! base seed, so records do not depend on execution order. Work runs on the
//! rayon pool; records are sorted by `(n, m, method, replicate)` before they
//! are returned.

use std::fmt::Write as _;
use std::io::{self, Write};

use rayon::prelude::*;
use serde::Serialize;

use qubosat_core::formula::{
    clause_count_for_ratio, maxsat_bruteforce_with_cap, random_3sat, CRITICAL_RATIO,
};
use qubosat_core::solve::{solve_exhaustive_with_cap, solve_sa};
use qubosat_core::{Formula, Method, MethodKind, SaParams, SolveError, TranslateError};

/// SplitMix64 finalizer.
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed for one experiment cell, derived from the base seed and the cell's
/// coordinates.
pub fn derive_seed(base: u64, parts: &[u64]) -> u64 {
    parts.iter().fold(mix64(base), |acc, &p| {
        mix64(acc ^ p.wrapping_add(0x9e37_79b9_7f4a_7c15))
    })
}

#[derive(Debug, thiserror::Error)]
pub enum ExperimentError {
    #[error(transparent)]
    Translate(#[from] TranslateError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("formula generation failed: {0}")]
    Formula(#[from] qubosat_core::FormulaError),
    #[error("{0}")]
    Config(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScalingRecord {
    pub n: usize,
    pub m: usize,
    pub method: &'static str,
    pub replicate: usize,
    pub seed: u64,
    pub logical_qubits: usize,
    pub couplings: usize,
    /// Non-zero cells including the diagonal.
    pub nonzeros: usize,
}

impl ScalingRecord {
    pub const HEADER: [&'static str; 8] = [
        "n",
        "m",
        "method",
        "replicate",
        "seed",
        "logical_qubits",
        "couplings",
        "nonzeros",
    ];
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScalingConfig {
    pub n_values: Vec<usize>,
    pub replicates: usize,
    pub methods: Vec<Method>,
    /// Clauses per variable; `m = ⌈ratio·n⌉`.
    pub ratio: f64,
    pub seed: u64,
}

impl Default for ScalingConfig {
    fn default() -> Self {
        Self {
            n_values: (20..=200).step_by(20).collect(),
            replicates: 20,
            methods: vec![
                Method::from(MethodKind::Chancellor),
                Method::from(MethodKind::NuessleinNm),
            ],
            ratio: CRITICAL_RATIO,
            seed: 0,
        }
    }
}

fn method_rank(kind: MethodKind) -> usize {
    MethodKind::ALL.iter().position(|&k| k == kind).unwrap()
}

pub fn run_scaling(config: &ScalingConfig) -> Result<Vec<ScalingRecord>, ExperimentError> {
    if config.n_values.is_empty() {
        return Err(ExperimentError::Config("no variable counts given".into()));
    }
    let cells: Vec<(usize, usize)> = config
        .n_values
        .iter()
        .flat_map(|&n| (0..config.replicates).map(move |r| (n, r)))
        .collect();
    let per_cell: Vec<Vec<ScalingRecord>> = cells
        .par_iter()
        .map(|&(n, replicate)| {
            let m = clause_count_for_ratio(n, config.ratio);
            let seed = derive_seed(config.seed, &[n as u64, m as u64, replicate as u64]);
            let f = random_3sat(n, m, seed)?;
            config
                .methods
                .iter()
                .map(|method| {
                    let t = method.translate(&f)?;
                    Ok(ScalingRecord {
                        n,
                        m,
                        method: method.kind().name(),
                        replicate,
                        seed,
                        logical_qubits: t.k(),
                        couplings: t.qubo.coupling_count(),
                        nonzeros: t.qubo.nonzero_count(),
                    })
                })
                .collect::<Result<Vec<_>, ExperimentError>>()
        })
        .collect::<Result<_, _>>()?;
    let mut records: Vec<ScalingRecord> = per_cell.into_iter().flatten().collect();
    records.sort_by_key(|r| (r.n, r.m, rank_of_name(r.method), r.replicate));
    Ok(records)
}

fn rank_of_name(name: &str) -> usize {
    method_rank(name.parse().expect("records carry valid method names"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonRecord {
    pub n: usize,
    pub m: usize,
    pub method: &'static str,
    pub replicate: usize,
    pub seed: u64,
    pub energy: i64,
    pub satisfied: usize,
    pub maxsat_opt: Option<usize>,
}

impl ComparisonRecord {
    pub const HEADER: [&'static str; 8] = [
        "n",
        "m",
        "method",
        "replicate",
        "seed",
        "energy",
        "satisfied",
        "maxsat_opt",
    ];
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Solver {
    Anneal(SaParams),
    Exhaustive { cap: usize },
}

impl Default for Solver {
    fn default() -> Self {
        Solver::Anneal(SaParams::default())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComparisonConfig {
    pub sizes: Vec<(usize, usize)>,
    pub replicates: usize,
    pub methods: Vec<Method>,
    pub solver: Solver,
    /// Largest `n` for which the brute-force MAX-3-SAT optimum is computed.
    pub oracle_cap: usize,
    pub seed: u64,
}

impl Default for ComparisonConfig {
    fn default() -> Self {
        Self {
            sizes: vec![(5, 21), (10, 42), (12, 50)],
            replicates: 20,
            methods: MethodKind::ALL.iter().map(|&k| Method::from(k)).collect(),
            solver: Solver::default(),
            oracle_cap: 24,
            seed: 0,
        }
    }
}

fn compare_one(
    f: &Formula,
    method: &Method,
    solver: Solver,
    seed: u64,
) -> Result<(i64, usize), ExperimentError> {
    let t = method.translate(f)?;
    let result = match solver {
        Solver::Anneal(params) => solve_sa(&t.qubo, &SaParams { seed, ..params })?,
        Solver::Exhaustive { cap } => solve_exhaustive_with_cap(&t.qubo, cap)?,
    };
    let assignment = t.decode(&result.best)?;
    Ok((result.best_energy, f.satisfied_count(&assignment)))
}

/// Generates `replicates` formulas per size, solves every method's
/// translation with the same solver budget and records the satisfied clause
/// count of the decoded best vector.
pub fn run_comparison(config: &ComparisonConfig) -> Result<Vec<ComparisonRecord>, ExperimentError> {
    if config.sizes.is_empty() {
        return Err(ExperimentError::Config("no sizes given".into()));
    }
    let cells: Vec<(usize, usize, usize)> = config
        .sizes
        .iter()
        .flat_map(|&(n, m)| (0..config.replicates).map(move |r| (n, m, r)))
        .collect();
    let formulas: Vec<(usize, usize, usize, u64, Formula, Option<usize>)> = cells
        .par_iter()
        .map(|&(n, m, replicate)| {
            let seed = derive_seed(config.seed, &[n as u64, m as u64, replicate as u64]);
            let f = random_3sat(n, m, seed)?;
            let opt = (n <= config.oracle_cap)
                .then(|| maxsat_bruteforce_with_cap(&f, config.oracle_cap).map(|(best, _)| best))
                .transpose()?;
            Ok((n, m, replicate, seed, f, opt))
        })
        .collect::<Result<_, ExperimentError>>()?;
    let jobs: Vec<(usize, &Method)> = (0..formulas.len())
        .flat_map(|i| config.methods.iter().map(move |method| (i, method)))
        .collect();
    let mut records: Vec<ComparisonRecord> = jobs
        .par_iter()
        .map(|&(i, method)| {
            let (n, m, replicate, seed, ref f, maxsat_opt) = formulas[i];
            let (energy, satisfied) = compare_one(f, method, config.solver, seed)?;
            Ok(ComparisonRecord {
                n,
                m,
                method: method.kind().name(),
                replicate,
                seed,
                energy,
                satisfied,
                maxsat_opt,
            })
        })
        .collect::<Result<_, ExperimentError>>()?;
    records.sort_by_key(|r| (r.n, r.m, rank_of_name(r.method), r.replicate));
    Ok(records)
}

/// Header row, then one row per record.
pub fn write_csv<W: Write, T: Serialize>(
    header: &[&str],
    records: &[T],
    writer: W,
) -> io::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(writer);
    w.write_record(header)?;
    for r in records {
        w.serialize(r)?;
    }
    w.flush()
}

pub fn scaling_csv(records: &[ScalingRecord]) -> String {
    let mut out = Vec::new();
    write_csv(&ScalingRecord::HEADER, records, &mut out).expect("in-memory write");
    String::from_utf8(out).expect("utf-8")
}

pub fn comparison_csv(records: &[ComparisonRecord]) -> String {
    let mut out = Vec::new();
    write_csv(&ComparisonRecord::HEADER, records, &mut out).expect("in-memory write");
    String::from_utf8(out).expect("utf-8")
}

/// Linear-interpolated quantile of an unsorted sample, `p ∈ [0, 1]`.
pub fn quantile(values: &[f64], p: f64) -> f64 {
    assert!(!values.is_empty(), "quantile of an empty sample");
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let pos = p.clamp(0.0, 1.0) * (v.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    v[lo] + (v[hi] - v[lo]) * (pos - lo as f64)
}

pub fn median(values: &[f64]) -> f64 {
    quantile(values, 0.5)
}

/// Least-squares line through `(x, y)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

pub fn linear_fit(xs: &[f64], ys: &[f64]) -> LinearFit {
    assert_eq!(xs.len(), ys.len());
    assert!(xs.len() >= 2, "a line needs at least two points");
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - (intercept + slope * x)).powi(2))
        .sum();
    let r_squared = if syy == 0.0 { 1.0 } else { 1.0 - ss_res / syy };
    LinearFit {
        slope,
        intercept,
        r_squared,
    }
}

/// Per-`n` statistics of a scaling run.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalingRow {
    pub n: usize,
    pub m: usize,
    /// `(method, q1, median, q3)` of the coupling counts.
    pub couplings: Vec<(&'static str, f64, f64, f64)>,
    /// Median over replicates of `couplings(numerator) / couplings(denominator)`.
    pub ratio_median: Option<f64>,
}

/// Groups scaling records by `n`, reporting coupling quartiles per method and
/// the median per-formula ratio `numerator / denominator`.
pub fn scaling_summary(
    records: &[ScalingRecord],
    numerator: MethodKind,
    denominator: MethodKind,
) -> Vec<ScalingRow> {
    let mut ns: Vec<(usize, usize)> = records.iter().map(|r| (r.n, r.m)).collect();
    ns.dedup();
    ns.into_iter()
        .map(|(n, m)| {
            let at_n: Vec<&ScalingRecord> = records.iter().filter(|r| r.n == n && r.m == m).collect();
            let mut methods: Vec<&'static str> = at_n.iter().map(|r| r.method).collect();
            methods.sort_by_key(|name| rank_of_name(name));
            methods.dedup();
            let couplings = methods
                .iter()
                .map(|&name| {
                    let v: Vec<f64> = at_n
                        .iter()
                        .filter(|r| r.method == name)
                        .map(|r| r.couplings as f64)
                        .collect();
                    (name, quantile(&v, 0.25), median(&v), quantile(&v, 0.75))
                })
                .collect();
            let ratios: Vec<f64> = at_n
                .iter()
                .filter(|r| r.method == numerator.name())
                .filter_map(|num| {
                    at_n.iter()
                        .find(|d| d.method == denominator.name() && d.replicate == num.replicate)
                        .map(|den| num.couplings as f64 / den.couplings as f64)
                })
                .collect();
            ScalingRow {
                n,
                m,
                couplings,
                ratio_median: (!ratios.is_empty()).then(|| median(&ratios)),
            }
        })
        .collect()
}

/// Fit of coupling count against `n` over all records of one method.
pub fn coupling_fit(records: &[ScalingRecord], method: MethodKind) -> Option<LinearFit> {
    let (xs, ys): (Vec<f64>, Vec<f64>) = records
        .iter()
        .filter(|r| r.method == method.name())
        .map(|r| (r.n as f64, r.couplings as f64))
        .unzip();
    let mut distinct = xs.clone();
    distinct.dedup();
    (distinct.len() >= 2).then(|| linear_fit(&xs, &ys))
}

/// Whitespace-separated table, one line per `n`, loadable by gnuplot.
pub fn gnuplot_table(rows: &[ScalingRow]) -> String {
    let mut out = String::new();
    let Some(first) = rows.first() else {
        return out;
    };
    out.push_str("# n m");
    for (name, ..) in &first.couplings {
        write!(out, " {name}_q1 {name}_median {name}_q3").unwrap();
    }
    out.push_str(" ratio_median\n");
    for row in rows {
        write!(out, "{} {}", row.n, row.m).unwrap();
        for (_, q1, med, q3) in &row.couplings {
            write!(out, " {q1} {med} {q3}").unwrap();
        }
        match row.ratio_median {
            Some(r) => writeln!(out, " {r:.4}").unwrap(),
            None => out.push_str(" NaN\n"),
        }
    }
    out
}

/// Mean satisfied clauses per method and size, methods in
/// [`MethodKind::ALL`] order.
#[derive(Clone, Debug, PartialEq)]
pub struct ComparisonTable {
    pub sizes: Vec<(usize, usize)>,
    pub rows: Vec<(MethodKind, Vec<Option<f64>>)>,
    /// Mean MAX-3-SAT optimum per size, when the oracle ran for every formula.
    pub optimum: Vec<Option<f64>>,
}

impl ComparisonTable {
    pub fn mean(&self, method: MethodKind, size: (usize, usize)) -> Option<f64> {
        let col = self.sizes.iter().position(|&s| s == size)?;
        self.rows.iter().find(|(k, _)| *k == method)?.1[col]
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let headers: Vec<String> = self
            .sizes
            .iter()
            .map(|(n, m)| format!("(V={n}, C={m})"))
            .collect();
        write!(out, "{:<16}", "").unwrap();
        for h in &headers {
            write!(out, " {h:>14}").unwrap();
        }
        out.push('\n');
        let cell = |v: &Option<f64>| v.map_or_else(|| "-".to_string(), |x| format!("{x:.2}"));
        for (kind, means) in &self.rows {
            write!(out, "{:<16}", kind.label()).unwrap();
            for v in means {
                write!(out, " {:>14}", cell(v)).unwrap();
            }
            out.push('\n');
        }
        if self.optimum.iter().any(Option::is_some) {
            write!(out, "{:<16}", "optimum").unwrap();
            for v in &self.optimum {
                write!(out, " {:>14}", cell(v)).unwrap();
            }
            out.push('\n');
        }
        out
    }
}

pub fn comparison_table(records: &[ComparisonRecord]) -> ComparisonTable {
    let mut sizes: Vec<(usize, usize)> = records.iter().map(|r| (r.n, r.m)).collect();
    sizes.sort_unstable();
    sizes.dedup();
    let mean = |v: &[f64]| (!v.is_empty()).then(|| v.iter().sum::<f64>() / v.len() as f64);
    let rows = MethodKind::ALL
        .iter()
        .filter(|k| records.iter().any(|r| r.method == k.name()))
        .map(|&kind| {
            let means = sizes
                .iter()
                .map(|&(n, m)| {
                    let v: Vec<f64> = records
                        .iter()
                        .filter(|r| r.n == n && r.m == m && r.method == kind.name())
                        .map(|r| r.satisfied as f64)
                        .collect();
                    mean(&v)
                })
                .collect();
            (kind, means)
        })
        .collect();
    let optimum = sizes
        .iter()
        .map(|&(n, m)| {
            let at: Vec<&ComparisonRecord> =
                records.iter().filter(|r| r.n == n && r.m == m).collect();
            let first_method = at.first()?.method;
            let opts: Option<Vec<f64>> = at
                .iter()
                .filter(|r| r.method == first_method)
                .map(|r| r.maxsat_opt.map(|o| o as f64))
                .collect();
            mean(&opts?)
        })
        .collect();
    ComparisonTable {
        sizes,
        rows,
        optimum,
    }
}
