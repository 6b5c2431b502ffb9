//! `3m` translation: one qubit per literal occurrence.
//!
//! Setting a slot rewards `-X`, two slots of the same clause cost `Y` and two
//! slots holding complementary literals cost `Z`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{require_strict, Method, QubitRole, TranslateError, Translation};
use crate::formula::{Assignment, Formula};
use crate::qubo::{BitVector, QuboMatrix};

/// Incentive `X` and penalties `Y`, `Z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChoiParams {
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

impl Default for ChoiParams {
    /// Smallest integers with `Y > 2|X|` and `Z > 2|X|`.
    fn default() -> Self {
        Self { x: 1, y: 3, z: 3 }
    }
}

impl ChoiParams {
    pub fn validate(&self) -> Result<(), TranslateError> {
        let ok = self.x > 0 && self.y > 2 * self.x.abs() && self.z > 2 * self.x.abs();
        if ok {
            Ok(())
        } else {
            Err(TranslateError::ChoiParams {
                x: self.x,
                y: self.y,
                z: self.z,
            })
        }
    }
}

pub fn translate_choi(f: &Formula, params: ChoiParams) -> Result<Translation, TranslateError> {
    require_strict(f)?;
    params.validate()?;
    let k = 3 * f.num_clauses();
    let mut q = QuboMatrix::new(k);
    let mut roles = Vec::with_capacity(k);
    let mut slots_by_literal: BTreeMap<usize, Vec<usize>> = BTreeMap::new();

    for (c, clause) in f.clauses().iter().enumerate() {
        for (i, &lit) in clause.lits().iter().enumerate() {
            let slot = 3 * c + i;
            roles.push(QubitRole::LiteralSlot {
                clause: c,
                position: i,
                literal: lit,
            });
            slots_by_literal.entry(lit.index()).or_default().push(slot);
            q.add(slot, slot, -params.x)?;
            for j in i + 1..3 {
                q.add(slot, 3 * c + j, params.y)?;
            }
        }
    }

    // positive literal index is even, its complement follows it
    for (&index, slots) in slots_by_literal.range(..).filter(|(i, _)| *i % 2 == 0) {
        let Some(complements) = slots_by_literal.get(&(index + 1)) else {
            continue;
        };
        for &s in slots {
            for &t in complements {
                if s / 3 != t / 3 {
                    q.add_sym(s, t, params.z)?;
                }
            }
        }
    }

    Ok(Translation::new(Method::Choi(params), f, q, roles))
}

/// Slots set to 1 assign their literal's variable; the first set slot (by
/// index) wins on conflicts and untouched variables stay ⊥.
pub fn decode_choi(t: &Translation, x: &BitVector) -> Result<Assignment, TranslateError> {
    if !matches!(t.method, Method::Choi(_)) {
        return Err(TranslateError::MethodMismatch {
            op: "slot decoding",
            method: t.kind(),
        });
    }
    t.check_len(x)?;
    let mut values = alloc::vec![false; t.num_vars];
    let mut assigned = alloc::vec![false; t.num_vars];
    for (bit, role) in x.bits().iter().zip(&t.roles) {
        if let (true, QubitRole::LiteralSlot { literal, .. }) = (bit, role) {
            let v = literal.var();
            if !assigned[v] {
                assigned[v] = true;
                values[v] = !literal.is_negated();
            }
        }
    }
    Ok(Assignment::new(values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{Clause, Literal};

    fn cl(a: i64, b: i64, c: i64) -> Clause {
        let l = |x| Literal::from_dimacs(x).unwrap();
        Clause::new([l(a), l(b), l(c)])
    }

    #[test]
    fn worked_matrix() {
        // (a ∨ b ∨ c) ∧ (a ∨ b ∨ ¬c)
        let f = Formula::new(3, alloc::vec![cl(1, 2, 3), cl(1, 2, -3)]).unwrap();
        let t = translate_choi(&f, ChoiParams::default()).unwrap();
        let mut expected: Vec<(usize, usize, i64)> = (0..6).map(|i| (i, i, -1)).collect();
        for (i, j) in [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)] {
            expected.push((i, j, 3));
        }
        expected.push((2, 5, 3));
        expected.sort();
        assert_eq!(t.qubo.entries().collect::<Vec<_>>(), expected);
        assert_eq!(t.k(), 6);
    }

    #[test]
    fn single_and_empty() {
        let f = Formula::new(3, alloc::vec![cl(1, 2, 3)]).unwrap();
        let t = translate_choi(&f, ChoiParams::default()).unwrap();
        assert_eq!(t.k(), 3);
        assert_eq!(t.qubo.coupling_count(), 3);
        let empty = Formula::new(2, alloc::vec![]).unwrap();
        assert_eq!(translate_choi(&empty, ChoiParams::default()).unwrap().k(), 0);
    }

    #[test]
    fn rejects_weak_penalties() {
        let f = Formula::new(3, alloc::vec![cl(1, 2, 3)]).unwrap();
        let weak = ChoiParams { x: 1, y: 2, z: 3 };
        assert!(matches!(
            translate_choi(&f, weak),
            Err(TranslateError::ChoiParams { .. })
        ));
    }

    #[test]
    fn decoding_rules() {
        let f = Formula::new(3, alloc::vec![cl(1, 2, 3), cl(1, 2, -3)]).unwrap();
        let t = translate_choi(&f, ChoiParams::default()).unwrap();
        let x: BitVector = "100000".parse().unwrap();
        assert_eq!(decode_choi(&t, &x).unwrap().values(), &[true, false, false]);
        assert_eq!(
            decode_choi(&t, &BitVector::zeros(6)).unwrap(),
            Assignment::all_false(3)
        );
        // c in slot 2 and ¬c in slot 5: the earlier slot decides
        let x: BitVector = "001001".parse().unwrap();
        assert_eq!(decode_choi(&t, &x).unwrap().values(), &[false, false, true]);
        assert!(decode_choi(&t, &BitVector::zeros(5)).is_err());
    }
}
