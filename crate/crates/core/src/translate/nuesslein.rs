//! The `2n+m` and `n+m` translations.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{require_strict, AuxKey, Method, QubitRole, TranslateError, Translation};
use crate::formula::{Assignment, Clause, Formula, Literal};
use crate::qubo::{BitVector, QuboMatrix};

/// `2n+m` translation.
///
/// Qubit `i < 2n` stands for literal `L_i` of `(v0, ¬v0, v1, ¬v1, ...)` and
/// qubit `2n + k` for clause `k`. The cell rules are applied in order, the
/// first matching one wins:
///
/// 1. literal diagonal: `-R(L_i)`, the number of clauses containing `L_i`;
/// 2. clause diagonal: `2`;
/// 3. `(v_j, ¬v_j)`: `m + 1`;
/// 4. two literals: `R(L_i, L_j)`, the number of clauses containing both;
/// 5. literal `L_i` and a clause containing it: `-1`.
pub fn translate_nuesslein2nm(f: &Formula) -> Result<Translation, TranslateError> {
    require_strict(f)?;
    let n = f.num_vars();
    let m = f.num_clauses();
    let lits = 2 * n;
    let k = lits + m;

    let mut single = alloc::vec![0i64; lits];
    let mut pair: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    for clause in f.clauses() {
        let mut idx = clause.lits().map(Literal::index);
        idx.sort_unstable();
        for (a, &i) in idx.iter().enumerate() {
            single[i] += 1;
            for &j in &idx[a + 1..] {
                *pair.entry((i, j)).or_insert(0) += 1;
            }
        }
    }

    let mut q = QuboMatrix::new(k);
    #[allow(clippy::needless_range_loop)] // walks matrix cells, not `single`
    for i in 0..k {
        for j in i..k {
            let w = if i == j && j < lits {
                -single[i]
            } else if i == j {
                2
            } else if j < lits && j - i == 1 && i % 2 == 0 {
                m as i64 + 1
            } else if j < lits {
                pair.get(&(i, j)).copied().unwrap_or(0)
            } else if i < lits && f.clauses()[j - lits].contains(Literal::from_index(i)) {
                -1
            } else {
                0
            };
            q.add(i, j, w)?;
        }
    }

    let roles = (0..lits)
        .map(|i| QubitRole::Literal(Literal::from_index(i)))
        .chain((0..m).map(QubitRole::ClauseAux))
        .collect();
    Ok(Translation::new(Method::Nuesslein2nm, f, q, roles))
}

/// `v_j = ⊤` iff `x_{2j} = 1`.
pub fn decode_nuesslein2nm(t: &Translation, x: &BitVector) -> Result<Assignment, TranslateError> {
    if t.method != Method::Nuesslein2nm {
        return Err(TranslateError::MethodMismatch {
            op: "literal-pair decoding",
            method: t.kind(),
        });
    }
    t.check_len(x)?;
    Ok(Assignment::new((0..t.num_vars).map(|j| x.get(2 * j)).collect()))
}

/// Clause shapes of the `n+m` translation after sorting negated literals to
/// the back, named by their number of negated literals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pattern {
    /// `(a ∨ b ∨ c)`, aux = `a ∨ b`, satisfied level `-1`.
    NoneNegated,
    /// `(a ∨ b ∨ ¬c)`, aux = `a ∨ b`, satisfied level `0`.
    OneNegated,
    /// `(a ∨ ¬b ∨ ¬c)`, aux = `a ∨ ¬b`, satisfied level `0`.
    TwoNegated,
    /// `(¬a ∨ ¬b ∨ ¬c)`, aux = `¬a ∧ ¬b ∧ ¬c`, satisfied level `-1`.
    AllNegated,
}

// slots 0, 1, 2 are the clause variables a, b, c; slot 3 is the aux qubit
const SLOT_AUX: usize = 3;

impl Pattern {
    pub fn of(clause: &Clause) -> Self {
        match clause.negated_count() {
            0 => Pattern::NoneNegated,
            1 => Pattern::OneNegated,
            2 => Pattern::TwoNegated,
            _ => Pattern::AllNegated,
        }
    }

    /// Non-zero cells `(slot, slot, weight)` of the 4×4 stencil.
    pub fn cells(self) -> &'static [(usize, usize, i64)] {
        match self {
            Pattern::NoneNegated => &[
                (0, 1, 2),
                (0, 3, -2),
                (1, 3, -2),
                (2, 2, -1),
                (2, 3, 1),
                (3, 3, 1),
            ],
            Pattern::OneNegated => &[
                (0, 1, 2),
                (0, 3, -2),
                (1, 3, -2),
                (2, 2, 1),
                (2, 3, -1),
                (3, 3, 2),
            ],
            Pattern::TwoNegated => &[
                (0, 0, 2),
                (0, 1, -2),
                (0, 3, -2),
                (1, 3, 2),
                (2, 2, 1),
                (2, 3, -1),
            ],
            Pattern::AllNegated => &[
                (0, 0, -1),
                (0, 1, 1),
                (0, 2, 1),
                (0, 3, 1),
                (1, 1, -1),
                (1, 2, 1),
                (1, 3, 1),
                (2, 2, -1),
                (2, 3, 1),
                (3, 3, -1),
            ],
        }
    }

    /// Energy of a satisfied clause with the best aux value.
    pub fn satisfied_level(self) -> i64 {
        match self {
            Pattern::NoneNegated | Pattern::AllNegated => -1,
            Pattern::OneNegated | Pattern::TwoNegated => 0,
        }
    }

    /// Sub-formula the aux qubit encodes, for a normalized clause.
    fn aux_key(self, sorted: &Clause) -> AuxKey {
        let [a, b, c] = *sorted.lits();
        match self {
            Pattern::AllNegated => {
                let mut lits = [a, b, c];
                lits.sort_unstable();
                AuxKey::Triple(lits)
            }
            _ => AuxKey::Pair(a.min(b), a.max(b)),
        }
    }
}

/// Pattern of `clause` and the clause with negated literals moved to the back.
pub fn pattern_for(clause: &Clause) -> (Pattern, Clause) {
    let sorted = clause.normalized();
    (Pattern::of(&sorted), sorted)
}

/// `n+m` translation: one qubit per variable plus one aux qubit per clause,
/// or per distinct aux sub-formula when `share_aux` is set.
pub fn translate_nuessleinnm(f: &Formula, share_aux: bool) -> Result<Translation, TranslateError> {
    require_strict(f)?;
    let n = f.num_vars();

    let mut roles: Vec<QubitRole> = (0..n).map(QubitRole::Variable).collect();
    let mut aux_of_key: BTreeMap<AuxKey, usize> = BTreeMap::new();
    let mut stencils = Vec::with_capacity(f.num_clauses());
    for (c, clause) in f.clauses().iter().enumerate() {
        let (pattern, sorted) = pattern_for(clause);
        let aux = if share_aux {
            let key = pattern.aux_key(&sorted);
            *aux_of_key.entry(key).or_insert_with(|| {
                roles.push(QubitRole::SharedAux(key));
                roles.len() - 1
            })
        } else {
            roles.push(QubitRole::ClauseAux(c));
            roles.len() - 1
        };
        stencils.push((pattern, sorted, aux));
    }

    let mut q = QuboMatrix::new(roles.len());
    for (pattern, sorted, aux) in stencils {
        let lits = sorted.lits();
        let global = |slot: usize| if slot == SLOT_AUX { aux } else { lits[slot].var() };
        for &(i, j, w) in pattern.cells() {
            q.add_sym(global(i), global(j), w)?;
        }
    }
    Ok(Translation::new(Method::NuessleinNm { share_aux }, f, q, roles))
}
