use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{SolveError, SolveResult};
use crate::qubo::{BitVector, LocalFields, QuboMatrix};

/// Simulated annealing budget and geometric temperature schedule.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SaParams {
    /// Full passes over all qubits per restart.
    pub sweeps: usize,
    pub restarts: usize,
    pub t_initial: f64,
    pub t_final: f64,
    pub seed: u64,
}

impl Default for SaParams {
    fn default() -> Self {
        Self {
            sweeps: 1000,
            restarts: 20,
            t_initial: 10.0,
            t_final: 0.1,
            seed: 0,
        }
    }
}

impl SaParams {
    pub fn validate(&self) -> Result<(), SolveError> {
        if self.sweeps == 0 {
            return Err(SolveError::InvalidParams("sweeps must be at least 1"));
        }
        if self.restarts == 0 {
            return Err(SolveError::InvalidParams("restarts must be at least 1"));
        }
        if !(self.t_final > 0.0 && self.t_initial >= self.t_final && self.t_initial.is_finite()) {
            return Err(SolveError::InvalidParams(
                "temperatures must satisfy t_initial >= t_final > 0",
            ));
        }
        Ok(())
    }

    /// Temperature of sweep `s`, falling geometrically from `t_initial` to `t_final`.
    pub fn temperature(&self, sweep: usize) -> f64 {
        if self.sweeps <= 1 {
            return self.t_initial;
        }
        let frac = sweep as f64 / (self.sweeps - 1) as f64;
        self.t_initial * libm::pow(self.t_final / self.t_initial, frac)
    }
}

/// One annealing run from a random start.
///
/// The random stream is selected by `(params.seed, restart)` alone, so
/// restarts can run in any order or in parallel.
pub fn solve_sa_restart(
    q: &QuboMatrix,
    params: &SaParams,
    restart: usize,
) -> Result<SolveResult, SolveError> {
    params.validate()?;
    let k = q.k();
    if k == 0 {
        return Err(SolveError::Empty);
    }
    let lf: LocalFields = q.local_fields();
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    rng.set_stream(restart as u64);

    let mut x: Vec<bool> = (0..k).map(|_| rng.gen_bool(0.5)).collect();
    let mut fields = lf.fields_for(&x);
    let mut energy: i64 = (0..k)
        .filter(|&i| x[i])
        .map(|i| lf.diag(i) + lf.neighbors(i).iter().filter(|(j, _)| x[*j] && *j > i).map(|(_, w)| w).sum::<i64>())
        .sum();
    let mut best_energy = energy;
    let mut best = x.clone();

    for sweep in 0..params.sweeps {
        let t = params.temperature(sweep);
        for i in 0..k {
            let delta = if x[i] { -fields[i] } else { fields[i] };
            let accept = delta <= 0 || rng.gen::<f64>() < libm::exp(-(delta as f64) / t);
            if !accept {
                continue;
            }
            x[i] = !x[i];
            energy += delta;
            let sign = if x[i] { 1 } else { -1 };
            for &(j, w) in lf.neighbors(i) {
                fields[j] += sign * w;
            }
            if energy < best_energy || (energy == best_energy && x < best) {
                best_energy = energy;
                best.clone_from(&x);
            }
        }
    }

    Ok(SolveResult {
        best: BitVector::new(best),
        best_energy,
        evaluations: (params.sweeps * k) as u64,
        restarts_used: 1,
    })
}

/// Best of `params.restarts` annealing runs, never worse than the all-zero vector.
pub fn solve_sa(q: &QuboMatrix, params: &SaParams) -> Result<SolveResult, SolveError> {
    solve_sa_with_trace(q, params).map(|(r, _)| r)
}

/// Like [`solve_sa`], also returning the running best energy after each restart.
pub fn solve_sa_with_trace(
    q: &QuboMatrix,
    params: &SaParams,
) -> Result<(SolveResult, Vec<i64>), SolveError> {
    params.validate()?;
    if q.k() == 0 {
        return Err(SolveError::Empty);
    }
    let mut best = SolveResult {
        best: BitVector::zeros(q.k()),
        best_energy: 0,
        evaluations: 0,
        restarts_used: 0,
    };
    let mut trace = Vec::with_capacity(params.restarts);
    for r in 0..params.restarts {
        let run = solve_sa_restart(q, params, r)?;
        let evaluations = best.evaluations + run.evaluations;
        if run.beats(&best) {
            best = run;
        }
        best.evaluations = evaluations;
        best.restarts_used = r + 1;
        trace.push(best.best_energy);
    }
    Ok((best, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solve::solve_exhaustive;

    fn frustrated() -> QuboMatrix {
        QuboMatrix::from_entries(
            8,
            [
                (0, 0, -2),
                (1, 1, -2),
                (2, 2, -1),
                (3, 3, 3),
                (4, 4, -1),
                (5, 5, -2),
                (6, 6, 1),
                (7, 7, -1),
                (0, 1, 3),
                (1, 2, -2),
                (2, 3, -2),
                (3, 4, 4),
                (4, 5, -1),
                (5, 6, 2),
                (6, 7, -3),
                (0, 7, 2),
                (2, 6, -1),
            ],
        )
        .unwrap()
    }

    #[test]
    fn finds_exact_minimum_on_small_matrix() {
        let q = frustrated();
        let exact = solve_exhaustive(&q).unwrap();
        let sa = solve_sa(&q, &SaParams::default()).unwrap();
        assert_eq!(sa.best_energy, exact.best_energy);
        assert_eq!(q.energy(&sa.best).unwrap(), sa.best_energy);
    }

    #[test]
    fn deterministic_per_seed() {
        let q = frustrated();
        let p = SaParams {
            sweeps: 20,
            restarts: 3,
            seed: 42,
            ..SaParams::default()
        };
        assert_eq!(solve_sa(&q, &p), solve_sa(&q, &p));
    }

    #[test]
    fn trace_is_non_increasing() {
        let q = frustrated();
        let p = SaParams {
            sweeps: 5,
            restarts: 10,
            t_initial: 50.0,
            t_final: 20.0,
            seed: 3,
        };
        let (r, trace) = solve_sa_with_trace(&q, &p).unwrap();
        assert_eq!(trace.len(), 10);
        assert!(trace.windows(2).all(|w| w[1] <= w[0]));
        assert!(r.best_energy <= 0);
        assert_eq!(r.restarts_used, 10);
        assert_eq!(r.evaluations, 10 * 5 * 8);
    }

    #[test]
    fn never_worse_than_zero_vector() {
        // every flip away from zero costs energy
        let q = QuboMatrix::from_entries(3, [(0, 0, 5), (1, 1, 5), (2, 2, 5)]).unwrap();
        let p = SaParams {
            sweeps: 1,
            restarts: 1,
            t_initial: 1e6,
            t_final: 1e6,
            seed: 9,
        };
        let r = solve_sa(&q, &p).unwrap();
        assert_eq!(r.best_energy, 0);
        assert_eq!(r.best, BitVector::zeros(3));
    }

    #[test]
    fn parameter_validation() {
        let q = frustrated();
        for bad in [
            SaParams { sweeps: 0, ..SaParams::default() },
            SaParams { restarts: 0, ..SaParams::default() },
            SaParams { t_final: 0.0, ..SaParams::default() },
            SaParams { t_initial: 0.05, ..SaParams::default() },
        ] {
            assert!(matches!(solve_sa(&q, &bad), Err(SolveError::InvalidParams(_))));
        }
        assert_eq!(solve_sa(&QuboMatrix::new(0), &SaParams::default()), Err(SolveError::Empty));
    }

    #[test]
    fn schedule_endpoints() {
        let p = SaParams::default();
        assert!((p.temperature(0) - 10.0).abs() < 1e-12);
        assert!((p.temperature(999) - 0.1).abs() < 1e-12);
    }
}
