//! Oracle-equivalence harness.
//!
//! For random small formulas it checks, per method, that
//! - the qubit count follows the method's size law,
//! - the exhaustive QUBO minimum equals [`Method::expected_min_energy`] at the
//!   brute-force MAX-3-SAT optimum, and
//! - every exhaustive argmin decodes to an optimal assignment.
//!
//! The translator is injectable so the harness itself can be tested against
//! deliberately broken translations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use qubosat_core::formula::{maxsat_bruteforce, random_3sat};
use qubosat_core::solve::{ground_states, DEFAULT_EXHAUSTIVE_CAP};
use qubosat_core::{Formula, Method, MethodKind, TranslateError, Translation};

use crate::dimacs::write_dimacs;
use crate::experiment::derive_seed;

/// Upper bound on stored ground states per QUBO.
const GROUND_STATE_LIMIT: usize = 1 << 16;

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyConfig {
    /// Inclusive variable-count range.
    pub n_range: (usize, usize),
    /// Inclusive clause-count range.
    pub m_range: (usize, usize),
    pub count: usize,
    pub methods: Vec<Method>,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            n_range: (3, 6),
            m_range: (1, 8),
            count: 50,
            methods: MethodKind::ALL.iter().map(|&k| Method::from(k)).collect(),
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub index: usize,
    pub method: MethodKind,
    pub reason: String,
    /// The offending formula in DIMACS form.
    pub dimacs: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub formulas: usize,
    pub checks: usize,
    pub failures: Vec<Counterexample>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Qubit count the method must produce for `n` variables and `m` clauses,
/// and whether it is exact (with shared aux qubits it is only an upper bound).
pub fn expected_qubits(method: &Method, n: usize, m: usize) -> (usize, bool) {
    match method {
        Method::Choi(_) => (3 * m, true),
        Method::Chancellor(_) => (n + m, true),
        Method::Nuesslein2nm => (2 * n + m, true),
        Method::NuessleinNm { share_aux } => (n + m, !share_aux),
    }
}

/// Formula `index` of the suite described by `config`.
pub fn suite_formula(config: &VerifyConfig, index: usize) -> Formula {
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(config.seed, &[index as u64]));
    let n = rng.gen_range(config.n_range.0..=config.n_range.1);
    let m = rng.gen_range(config.m_range.0..=config.m_range.1);
    random_3sat(n, m, rng.gen()).expect("n_range starts at 3 or more")
}

/// Runs every check for one formula and method, returning the first failure.
pub fn check_method<F>(f: &Formula, opt: usize, method: &Method, translate: &F) -> Result<(), String>
where
    F: Fn(&Method, &Formula) -> Result<Translation, TranslateError>,
{
    let t = translate(method, f).map_err(|e| format!("translation failed: {e}"))?;
    let (k, exact) = expected_qubits(method, f.num_vars(), f.num_clauses());
    if (exact && t.k() != k) || t.k() > k {
        return Err(format!("{} qubits, expected {k}", t.k()));
    }
    if t.roles.len() != t.k() {
        return Err(format!("{} roles for {} qubits", t.roles.len(), t.k()));
    }
    let expected = method
        .expected_min_energy(f, opt)
        .map_err(|e| format!("no expected energy: {e}"))?;
    let (min, states) = ground_states(&t.qubo, DEFAULT_EXHAUSTIVE_CAP, GROUND_STATE_LIMIT)
        .map_err(|e| format!("exhaustive search failed: {e}"))?;
    if min != expected {
        return Err(format!("minimum energy {min}, expected {expected} (opt = {opt})"));
    }
    for x in &states {
        let a = t.decode(x).map_err(|e| format!("decoding {x} failed: {e}"))?;
        let sat = f.satisfied_count(&a);
        if sat != opt {
            return Err(format!("ground state {x} decodes to {sat} satisfied clauses, optimum is {opt}"));
        }
    }
    Ok(())
}

/// The oracle suite with the library's own translations.
pub fn run_verify(config: &VerifyConfig) -> VerifyReport {
    run_verify_with(config, &|method: &Method, f: &Formula| method.translate(f))
}

pub fn run_verify_with<F>(config: &VerifyConfig, translate: &F) -> VerifyReport
where
    F: Fn(&Method, &Formula) -> Result<Translation, TranslateError> + Sync,
{
    let per_formula: Vec<Vec<Counterexample>> = (0..config.count)
        .into_par_iter()
        .map(|index| {
            let f = suite_formula(config, index);
            let opt = maxsat_bruteforce(&f).expect("suite formulas are small").0;
            config
                .methods
                .iter()
                .filter_map(|method| {
                    check_method(&f, opt, method, translate)
                        .err()
                        .map(|reason| Counterexample {
                            index,
                            method: method.kind(),
                            reason,
                            dimacs: write_dimacs(&f),
                        })
                })
                .collect()
        })
        .collect();
    VerifyReport {
        formulas: config.count,
        checks: config.count * config.methods.len(),
        failures: per_formula.into_iter().flatten().collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qubosat_core::QuboMatrix;

    #[test]
    fn default_suite_passes() {
        let report = run_verify(&VerifyConfig {
            count: 10,
            ..VerifyConfig::default()
        });
        assert!(report.passed(), "{:?}", report.failures);
        assert_eq!(report.checks, 40);
    }

    #[test]
    fn corrupted_translator_is_caught() {
        let config = VerifyConfig {
            count: 5,
            methods: vec![Method::Nuesslein2nm],
            ..VerifyConfig::default()
        };
        // right size, but every state has energy 0
        let corrupt = |method: &Method, f: &Formula| {
            let mut t = method.translate(f)?;
            t.qubo = QuboMatrix::new(t.k());
            Ok(t)
        };
        let report = run_verify_with(&config, &corrupt);
        assert!(!report.passed());
        let first = &report.failures[0];
        assert!(first.dimacs.starts_with("p cnf "));
        assert_eq!(first.method, MethodKind::Nuesslein2nm);
    }

    #[test]
    fn empty_suite() {
        let report = run_verify(&VerifyConfig {
            count: 0,
            ..VerifyConfig::default()
        });
        assert!(report.passed());
        assert_eq!(report.checks, 0);
    }
}
