//! `n+m` translation through a per-clause Ising Hamiltonian with one ancilla.
//!
//! With gauged spins `s_i = c(i) σ_i` (`c(i) = -1` for a negated literal) a
//! clause is penalised by `h (-Σ s_i + Σ_{i<j} s_i s_j - s_1 s_2 s_3)`, which
//! is `-h` on the seven satisfying assignments and `7h` on the falsifying
//! one. The linear and pairwise parts are written directly. The triple
//! product comes from an ancilla `σ_a` coupled with `J^a = 2J` to all three
//! spins and biased by `h^a = 2h`, which after minimising over `σ_a` leaves
//! `-h s_1 s_2 s_3 - J Σ_{i<j} s_i s_j - 3J`; the stray pair term is
//! cancelled by adding `J Σ_{i<j} s_i s_j`. Per clause, in spin variables:
//!
//! | term                    | weight               |
//! |-------------------------|----------------------|
//! | `σ_i`                   | `-2h c(i)`           |
//! | `σ_i σ_j`               | `(h + J) c(i) c(j)`  |
//! | `σ_i σ_a`               | `J^a c(i) c(a)`      |
//! | `σ_a`                   | `-h^a c(a)`          |
//!
//! where the ancilla gauge `c(a)` is the majority sign of the clause. The
//! spin model is mapped to QUBO with `σ = 2x - 1`, constants dropped, and
//! rescaled by `g / 8h` so that the falsifying assignment sits exactly `g`
//! above the satisfying level.

use alloc::vec::Vec;

use super::{require_strict, Method, QubitRole, TranslateError, Translation};
use crate::formula::{Clause, Formula};
use crate::qubo::QuboMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChancellorParams {
    /// Linear field strength.
    pub h: i64,
    /// Energy gap between a satisfied and a falsified clause.
    pub g: i64,
    /// Ancilla field, `2h`.
    pub h_a: i64,
    /// Pair coupling of the triple-term gadget.
    pub j: i64,
    /// Variable-ancilla coupling, `2J`.
    pub j_a: i64,
}

impl Default for ChancellorParams {
    fn default() -> Self {
        Self {
            h: 1,
            g: 1,
            h_a: 2,
            j: 5,
            j_a: 10,
        }
    }
}

impl ChancellorParams {
    /// Default field strengths left unscaled, i.e. with `g = 8h`.
    pub fn unscaled() -> Self {
        Self {
            g: 8,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<(), TranslateError> {
        if self.h <= 0 || self.g <= 0 {
            return Err(TranslateError::ChancellorParams("h and g must be positive"));
        }
        if self.h_a != 2 * self.h || self.j_a != 2 * self.j {
            return Err(TranslateError::ChancellorParams(
                "the gadget needs h_a = 2h and J_a = 2J",
            ));
        }
        if self.j < self.h {
            return Err(TranslateError::ChancellorParams("the gadget needs J >= h"));
        }
        let divisor = 8 * self.h;
        for pattern in 0..8u8 {
            let gauges = core::array::from_fn(|i| if pattern >> i & 1 == 1 { -1 } else { 1 });
            let raw = raw_clause_qubo(self, gauges);
            if raw.iter().any(|&(_, _, w)| (w * self.g) % divisor != 0) {
                return Err(TranslateError::ChancellorParams(
                    "g / 8h rescaling does not yield integer weights",
                ));
            }
        }
        Ok(())
    }
}

/// Unscaled QUBO of one clause. Local indices 0..3 are the clause's
/// variables in clause order, 3 is the ancilla.
fn raw_clause_qubo(p: &ChancellorParams, gauges: [i64; 3]) -> Vec<(usize, usize, i64)> {
    let ancilla_gauge = if gauges.iter().sum::<i64>() > 0 { 1 } else { -1 };
    let mut linear = [0i64; 4];
    let mut couplings = Vec::with_capacity(6);
    for i in 0..3 {
        linear[i] = -2 * p.h * gauges[i];
        for j in i + 1..3 {
            couplings.push((i, j, (p.h + p.j) * gauges[i] * gauges[j]));
        }
        couplings.push((i, 3, p.j_a * gauges[i] * ancilla_gauge));
    }
    linear[3] = -p.h_a * ancilla_gauge;

    // σ = 2x - 1:  hσ -> 2h x,  Jσσ' -> 4J xx' - 2J x - 2J x'
    let mut diag = linear.map(|h| 2 * h);
    let mut out = Vec::with_capacity(10);
    for &(i, j, w) in &couplings {
        out.push((i, j, 4 * w));
        diag[i] -= 2 * w;
        diag[j] -= 2 * w;
    }
    out.extend(diag.iter().enumerate().map(|(i, &d)| (i, i, d)));
    out
}

fn clause_qubo(p: &ChancellorParams, clause: &Clause) -> Vec<(usize, usize, i64)> {
    let gauges = clause.lits().map(|l| if l.is_negated() { -1 } else { 1 });
    let mut cells = raw_clause_qubo(p, gauges);
    for cell in &mut cells {
        cell.2 = cell.2 * p.g / (8 * p.h);
    }
    cells
}

/// Satisfied and falsified energy levels of a single clause gadget, found by
/// enumerating its 16 states and minimising over the ancilla.
///
/// Returns `(min over satisfying assignments, falsifying assignment)`.
pub fn chancellor_clause_levels(
    clause: &Clause,
    p: &ChancellorParams,
) -> Result<(i64, i64), TranslateError> {
    p.validate()?;
    let cells = clause_qubo(p, clause);
    let energy = |state: u8| -> i64 {
        cells
            .iter()
            .filter(|&&(i, j, _)| state >> i & 1 == 1 && state >> j & 1 == 1)
            .map(|&(_, _, w)| w)
            .sum()
    };
    let mut sat = i64::MAX;
    let mut unsat = i64::MAX;
    for vars in 0..8u8 {
        let level = energy(vars).min(energy(vars | 8));
        let satisfied = clause
            .lits()
            .iter()
            .enumerate()
            .any(|(i, l)| (vars >> i & 1 == 1) != l.is_negated());
        if satisfied {
            sat = sat.min(level);
        } else {
            unsat = level;
        }
    }
    Ok((sat, unsat))
}

pub fn translate_chancellor(
    f: &Formula,
    params: ChancellorParams,
) -> Result<Translation, TranslateError> {
    require_strict(f)?;
    params.validate()?;
    let n = f.num_vars();
    let k = n + f.num_clauses();
    let mut q = QuboMatrix::new(k);
    for (c, clause) in f.clauses().iter().enumerate() {
        let lits = clause.lits();
        let global = |local: usize| if local == 3 { n + c } else { lits[local].var() };
        for (i, j, w) in clause_qubo(&params, clause) {
            q.add_sym(global(i), global(j), w)?;
        }
    }
    let roles = (0..n)
        .map(QubitRole::Variable)
        .chain((0..f.num_clauses()).map(QubitRole::ClauseAux))
        .collect();
    Ok(Translation::new(Method::Chancellor(params), f, q, roles))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::Literal;

    fn cl(a: i64, b: i64, c: i64) -> Clause {
        let l = |x| Literal::from_dimacs(x).unwrap();
        Clause::new([l(a), l(b), l(c)])
    }

    #[test]
    fn unscaled_matches_reference_gadget() {
        // (¬a ∨ ¬b ∨ ¬c) ∧ (a ∨ b ∨ c)
        let f = Formula::new(3, alloc::vec![cl(-1, -2, -3), cl(1, 2, 3)]).unwrap();
        let t = translate_chancellor(&f, ChancellorParams::unscaled()).unwrap();
        let expected = [
            [-88, 48, 48, 40, 40],
            [0, -88, 48, 40, 40],
            [0, 0, -88, 40, 40],
            [0, 0, 0, -56, 0],
            [0, 0, 0, 0, -64],
        ];
        assert_eq!(t.qubo.to_dense(), expected.map(|r| r.to_vec()).to_vec());
    }

    #[test]
    fn default_is_table_over_eight() {
        let f = Formula::new(3, alloc::vec![cl(-1, -2, -3), cl(1, 2, 3)]).unwrap();
        let t = translate_chancellor(&f, ChancellorParams::default()).unwrap();
        assert_eq!(t.qubo.get(0, 0), -11);
        assert_eq!(t.qubo.get(0, 1), 6);
        assert_eq!(t.qubo.get(0, 3), 5);
        assert_eq!(t.qubo.get(3, 3), -7);
        assert_eq!(t.qubo.get(4, 4), -8);
        assert_eq!(t.k(), 5);
    }

    #[test]
    fn levels_have_gap_g() {
        for g in [1, 2, 8] {
            let p = ChancellorParams { g, ..ChancellorParams::default() };
            for c in [cl(1, 2, 3), cl(1, 2, -3), cl(1, -2, -3), cl(-1, -2, -3), cl(-1, 2, -3)] {
                let (sat, unsat) = chancellor_clause_levels(&c, &p).unwrap();
                assert_eq!(unsat - sat, g, "{c}");
            }
        }
    }

    #[test]
    fn parameter_checks() {
        let p = ChancellorParams { h_a: 3, ..ChancellorParams::default() };
        assert!(p.validate().is_err());
        let p = ChancellorParams { j: 0, j_a: 0, ..ChancellorParams::default() };
        assert!(p.validate().is_err());
        let p = ChancellorParams { g: 0, ..ChancellorParams::default() };
        assert!(p.validate().is_err());
        assert!(ChancellorParams::unscaled().validate().is_ok());
    }
}
