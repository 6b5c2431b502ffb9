//! 3-SAT / MAX-3-SAT instances.
//!
//! Variables are 0-based internally. A [`Formula`] keeps its clauses in input
//! order because translators bind clause `k` to specific qubits.

use alloc::vec::Vec;
use core::fmt;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Largest variable count accepted by [`maxsat_bruteforce`] by default.
pub const DEFAULT_BRUTEFORCE_CAP: usize = 24;

/// Clause-to-variable ratio of the random 3-SAT phase transition.
pub const CRITICAL_RATIO: f64 = 4.2;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormulaError {
    #[error("literal refers to variable {var} but the formula has {n} variables")]
    VarOutOfRange { var: usize, n: usize },
    #[error("clause {clause} repeats a variable (strict mode requires three distinct variables)")]
    RepeatedVariable { clause: usize },
    #[error("strict random 3-SAT needs at least 3 variables, got {0}")]
    TooFewVariables(usize),
    #[error("brute force over {n} variables exceeds the cap of {cap}")]
    OverCap { n: usize, cap: usize },
    #[error("assignment has {got} values but the formula has {expected} variables")]
    AssignmentLength { expected: usize, got: usize },
}

/// A variable or its negation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    var: usize,
    negated: bool,
}

impl Literal {
    pub const fn new(var: usize, negated: bool) -> Self {
        Self { var, negated }
    }

    pub const fn pos(var: usize) -> Self {
        Self::new(var, false)
    }

    pub const fn neg(var: usize) -> Self {
        Self::new(var, true)
    }

    pub const fn var(self) -> usize {
        self.var
    }

    pub const fn is_negated(self) -> bool {
        self.negated
    }

    #[must_use]
    pub const fn negate(self) -> Self {
        Self::new(self.var, !self.negated)
    }

    /// Position in the literal list `(v0, ¬v0, v1, ¬v1, ...)`.
    pub const fn index(self) -> usize {
        2 * self.var + self.negated as usize
    }

    /// Inverse of [`Literal::index`].
    pub const fn from_index(index: usize) -> Self {
        Self::new(index / 2, index % 2 == 1)
    }

    /// Signed 1-based DIMACS id.
    pub fn to_dimacs(self) -> i64 {
        let id = self.var as i64 + 1;
        if self.negated {
            -id
        } else {
            id
        }
    }

    /// Returns `None` for id 0.
    pub fn from_dimacs(id: i64) -> Option<Self> {
        if id == 0 {
            return None;
        }
        Some(Self::new((id.unsigned_abs() - 1) as usize, id < 0))
    }

    /// Truth value of the literal under `assignment`.
    pub fn eval(self, assignment: &Assignment) -> bool {
        assignment.get(self.var) != self.negated
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "¬v{}", self.var)
        } else {
            write!(f, "v{}", self.var)
        }
    }
}

/// Disjunction of exactly three literals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Clause([Literal; 3]);

impl Clause {
    pub const fn new(lits: [Literal; 3]) -> Self {
        Self(lits)
    }

    pub const fn lits(&self) -> &[Literal; 3] {
        &self.0
    }

    /// True when the three literals use pairwise distinct variables.
    pub fn is_strict(&self) -> bool {
        let [a, b, c] = self.0;
        a.var != b.var && a.var != c.var && b.var != c.var
    }

    pub fn contains(&self, lit: Literal) -> bool {
        self.0.contains(&lit)
    }

    pub fn negated_count(&self) -> usize {
        self.0.iter().filter(|l| l.negated).count()
    }

    pub fn is_satisfied(&self, assignment: &Assignment) -> bool {
        self.0.iter().any(|l| l.eval(assignment))
    }

    /// Stable polarity sort: positive literals first, negated ones last.
    #[must_use]
    pub fn normalized(&self) -> Self {
        let mut lits = self.0;
        // insertion sort is stable and the array is tiny
        for i in 1..3 {
            let mut j = i;
            while j > 0 && lits[j - 1].negated && !lits[j].negated {
                lits.swap(j - 1, j);
                j -= 1;
            }
        }
        Self(lits)
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.0;
        write!(f, "({a} ∨ {b} ∨ {c})")
    }
}

/// See [`Clause::normalized`].
pub fn normalize_clause(clause: &Clause) -> Clause {
    clause.normalized()
}

/// See [`Literal::index`].
pub fn literal_index(lit: Literal) -> usize {
    lit.index()
}

/// Conjunction of 3-literal clauses over `n` variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Formula {
    n: usize,
    clauses: Vec<Clause>,
}

impl Formula {
    /// Builds a strict formula: every clause must use three distinct variables.
    pub fn new(n: usize, clauses: Vec<Clause>) -> Result<Self, FormulaError> {
        let f = Self::new_permissive(n, clauses)?;
        if let Some(k) = f.clauses.iter().position(|c| !c.is_strict()) {
            return Err(FormulaError::RepeatedVariable { clause: k });
        }
        Ok(f)
    }

    /// Like [`Formula::new`] but admits repeated variables inside a clause.
    pub fn new_permissive(n: usize, clauses: Vec<Clause>) -> Result<Self, FormulaError> {
        for clause in &clauses {
            for lit in clause.lits() {
                if lit.var >= n {
                    return Err(FormulaError::VarOutOfRange { var: lit.var, n });
                }
            }
        }
        Ok(Self { n, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn is_strict(&self) -> bool {
        self.clauses.iter().all(Clause::is_strict)
    }

    /// Number of clauses containing `lit`.
    pub fn count_single(&self, lit: Literal) -> usize {
        self.clauses.iter().filter(|c| c.contains(lit)).count()
    }

    /// Number of clauses containing both `a` and `b`.
    pub fn count_pair(&self, a: Literal, b: Literal) -> usize {
        self.clauses
            .iter()
            .filter(|c| c.contains(a) && c.contains(b))
            .count()
    }

    /// Number of clauses with at least one true literal.
    pub fn satisfied_count(&self, assignment: &Assignment) -> usize {
        assert_eq!(assignment.len(), self.n, "assignment length mismatch");
        self.clauses
            .iter()
            .filter(|c| c.is_satisfied(assignment))
            .count()
    }

    /// Checked variant of [`Formula::satisfied_count`].
    pub fn try_satisfied_count(&self, assignment: &Assignment) -> Result<usize, FormulaError> {
        if assignment.len() != self.n {
            return Err(FormulaError::AssignmentLength {
                expected: self.n,
                got: assignment.len(),
            });
        }
        Ok(self.satisfied_count(assignment))
    }

    /// Clauses whose literals are all positive (`p`) and all negated (`q`).
    pub fn polarity_extremes(&self) -> (usize, usize) {
        let p = self.clauses.iter().filter(|c| c.negated_count() == 0).count();
        let q = self.clauses.iter().filter(|c| c.negated_count() == 3).count();
        (p, q)
    }

    /// Renames variables: variable `j` becomes `perm[j]`.
    ///
    /// # Panics
    /// If `perm` is not a permutation of `0..n`.
    #[must_use]
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        let mut seen = alloc::vec![false; self.n];
        for &p in perm {
            assert!(p < self.n && !seen[p], "not a permutation");
            seen[p] = true;
        }
        let clauses = self
            .clauses
            .iter()
            .map(|c| Clause(c.0.map(|l| Literal::new(perm[l.var], l.negated))))
            .collect();
        Self { n: self.n, clauses }
    }
}

/// Truth values for variables `0..n`.
///
/// Ordering is lexicographic with `false < true` and index 0 most significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment(Vec<bool>);

impl Assignment {
    pub fn new(values: Vec<bool>) -> Self {
        Self(values)
    }

    pub fn all_false(n: usize) -> Self {
        Self(alloc::vec![false; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, var: usize) -> bool {
        self.0[var]
    }

    pub fn set(&mut self, var: usize, value: bool) {
        self.0[var] = value;
    }

    pub fn values(&self) -> &[bool] {
        &self.0
    }

    /// Decodes `mask` with variable 0 stored in the most significant of `n` bits.
    fn from_lex_mask(mask: u64, n: usize) -> Self {
        Self((0..n).map(|j| (mask >> (n - 1 - j)) & 1 == 1).collect())
    }
}

impl From<Vec<bool>> for Assignment {
    fn from(values: Vec<bool>) -> Self {
        Self(values)
    }
}

/// Exact MAX-3-SAT optimum by enumerating all `2^n` assignments.
///
/// Ties resolve to the lexicographically smallest assignment.
pub fn maxsat_bruteforce(f: &Formula) -> Result<(usize, Assignment), FormulaError> {
    maxsat_bruteforce_with_cap(f, DEFAULT_BRUTEFORCE_CAP)
}

pub fn maxsat_bruteforce_with_cap(
    f: &Formula,
    cap: usize,
) -> Result<(usize, Assignment), FormulaError> {
    let n = f.n;
    if n > cap || n >= 64 {
        return Err(FormulaError::OverCap { n, cap });
    }
    // variable j lives at bit n-1-j so that numeric order is lexicographic order
    let masks: Vec<(u64, u64)> = f
        .clauses
        .iter()
        .map(|c| {
            c.0.iter().fold((0u64, 0u64), |(pos, neg), l| {
                let bit = 1u64 << (n - 1 - l.var);
                if l.negated {
                    (pos, neg | bit)
                } else {
                    (pos | bit, neg)
                }
            })
        })
        .collect();
    let m = masks.len();
    let full = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
    let mut best = (0usize, 0u64);
    let mut found = false;
    for mask in 0..=full {
        let sat = masks
            .iter()
            .filter(|&&(pos, neg)| mask & pos != 0 || !mask & neg != 0)
            .count();
        if !found || sat > best.0 {
            best = (sat, mask);
            found = true;
            if sat == m {
                break;
            }
        }
    }
    Ok((best.0, Assignment::from_lex_mask(best.1, n)))
}

/// `⌈ratio · n⌉`, tolerant of floating-point noise in the product.
pub fn clause_count_for_ratio(n: usize, ratio: f64) -> usize {
    let m = libm::ceil(ratio * n as f64 - 1e-9);
    if m <= 0.0 {
        0
    } else {
        m as usize
    }
}

/// Uniform random strict 3-SAT formula.
///
/// Each clause draws three distinct variables without replacement and negates
/// each with probability 1/2. The output depends only on `(n, m, seed)`.
pub fn random_3sat(n: usize, m: usize, seed: u64) -> Result<Formula, FormulaError> {
    if n < 3 {
        return Err(FormulaError::TooFewVariables(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let clauses = (0..m)
        .map(|_| {
            let vars = index::sample(&mut rng, n, 3);
            let mut lits = [Literal::pos(0); 3];
            for (slot, var) in lits.iter_mut().zip(vars.iter()) {
                *slot = Literal::new(var, rng.gen_bool(0.5));
            }
            Clause(lits)
        })
        .collect();
    Ok(Formula { n, clauses })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cl(a: i64, b: i64, c: i64) -> Clause {
        let l = |x| Literal::from_dimacs(x).unwrap();
        Clause::new([l(a), l(b), l(c)])
    }

    /// (a ∨ b ∨ ¬c) ∧ (a ∨ ¬b ∨ ¬c)
    fn two_clause() -> Formula {
        Formula::new(3, alloc::vec![cl(1, 2, -3), cl(1, -2, -3)]).unwrap()
    }

    #[test]
    fn literal_indexing() {
        assert_eq!(literal_index(Literal::pos(0)), 0);
        assert_eq!(literal_index(Literal::neg(0)), 1);
        assert_eq!(literal_index(Literal::neg(2)), 5);
        for i in 0..10 {
            assert_eq!(Literal::from_index(i).index(), i);
        }
    }

    #[test]
    fn dimacs_ids() {
        assert_eq!(Literal::from_dimacs(-3), Some(Literal::neg(2)));
        assert_eq!(Literal::from_dimacs(0), None);
        assert_eq!(Literal::neg(2).to_dimacs(), -3);
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(cl(-1, 2, 3).normalized(), cl(2, 3, -1));
        assert_eq!(cl(1, 2, 3).normalized(), cl(1, 2, 3));
        assert_eq!(cl(-1, -2, -3).normalized(), cl(-1, -2, -3));
        assert_eq!(cl(-3, 1, -2).normalized(), cl(1, -3, -2));
    }

    #[test]
    fn occurrence_counts() {
        let f = two_clause();
        assert_eq!(f.count_single(Literal::pos(0)), 2);
        assert_eq!(f.count_single(Literal::neg(0)), 0);
        assert_eq!(f.count_pair(Literal::pos(0), Literal::neg(2)), 2);
        assert_eq!(f.count_pair(Literal::pos(0), Literal::pos(1)), 1);
        for other in 0..6 {
            assert_eq!(f.count_pair(Literal::pos(2), Literal::from_index(other)), 0);
        }
        let empty = Formula::new(3, alloc::vec![]).unwrap();
        assert_eq!(empty.count_single(Literal::pos(1)), 0);
    }

    #[test]
    fn count_single_dedups_repeated_literal() {
        let f = Formula::new_permissive(2, alloc::vec![cl(1, 1, 2)]).unwrap();
        assert_eq!(f.count_single(Literal::pos(0)), 1);
    }

    #[test]
    fn satisfied_count_examples() {
        // (a ∨ b ∨ c) ∧ (a ∨ ¬c ∨ ¬d) under (⊥, ⊤, ⊤, ⊥)
        let f = Formula::new(4, alloc::vec![cl(1, 2, 3), cl(1, -3, -4)]).unwrap();
        let a = Assignment::new(alloc::vec![false, true, true, false]);
        assert_eq!(f.satisfied_count(&a), 2);
        let empty = Formula::new(4, alloc::vec![]).unwrap();
        assert_eq!(empty.satisfied_count(&a), 0);
        let pos = Formula::new(4, alloc::vec![cl(1, 2, 3), cl(2, 3, 4)]).unwrap();
        assert_eq!(pos.satisfied_count(&Assignment::new(alloc::vec![true; 4])), 2);
        assert!(f.try_satisfied_count(&Assignment::all_false(3)).is_err());
    }

    #[test]
    fn strict_mode_rejects_repeats() {
        assert_eq!(
            Formula::new(3, alloc::vec![cl(1, -1, 2)]),
            Err(FormulaError::RepeatedVariable { clause: 0 })
        );
        assert!(Formula::new_permissive(3, alloc::vec![cl(1, -1, 2)]).is_ok());
        assert_eq!(
            Formula::new(2, alloc::vec![cl(1, 2, 3)]),
            Err(FormulaError::VarOutOfRange { var: 2, n: 2 })
        );
    }

    #[test]
    fn bruteforce_examples() {
        let f = Formula::new(4, alloc::vec![cl(1, 2, 3), cl(1, -3, -4)]).unwrap();
        let (best, w) = maxsat_bruteforce(&f).unwrap();
        assert_eq!(best, 2);
        assert_eq!(f.satisfied_count(&w), 2);
        // lexicographically smallest satisfying assignment
        assert_eq!(w.values(), &[false, false, true, false]);

        let single = Formula::new(3, alloc::vec![cl(1, 2, 3)]).unwrap();
        assert_eq!(maxsat_bruteforce(&single).unwrap().0, 1);
    }

    #[test]
    fn bruteforce_all_sign_patterns() {
        // every assignment falsifies exactly one of the 8 clauses
        let mut clauses = alloc::vec![];
        for s in 0..8 {
            let sign = |b: i64, id: i64| if s >> b & 1 == 1 { -id } else { id };
            clauses.push(cl(sign(0, 1), sign(1, 2), sign(2, 3)));
        }
        let f = Formula::new(3, clauses).unwrap();
        for mask in 0..8u64 {
            let a = Assignment::from_lex_mask(mask, 3);
            assert_eq!(f.satisfied_count(&a), 7);
        }
        assert_eq!(maxsat_bruteforce(&f).unwrap().0, 7);
    }

    #[test]
    fn bruteforce_cap() {
        let f = Formula::new(25, alloc::vec![]).unwrap();
        assert_eq!(
            maxsat_bruteforce(&f),
            Err(FormulaError::OverCap { n: 25, cap: 24 })
        );
        let zero = Formula::new(0, alloc::vec![]).unwrap();
        assert_eq!(maxsat_bruteforce(&zero).unwrap(), (0, Assignment::all_false(0)));
    }

    #[test]
    fn random_generation() {
        let f = random_3sat(12, 50, 7).unwrap();
        assert_eq!((f.num_vars(), f.num_clauses()), (12, 50));
        assert!(f.is_strict());
        assert_eq!(random_3sat(5, clause_count_for_ratio(5, CRITICAL_RATIO), 1).unwrap().num_clauses(), 21);
        assert_eq!(random_3sat(3, 0, 1).unwrap().num_clauses(), 0);
        assert_eq!(random_3sat(2, 1, 1), Err(FormulaError::TooFewVariables(2)));
        assert_eq!(random_3sat(9, 30, 99), random_3sat(9, 30, 99));
        assert_ne!(random_3sat(9, 30, 99), random_3sat(9, 30, 100));
    }

    #[test]
    fn ratio_ceiling() {
        assert_eq!(clause_count_for_ratio(5, 4.2), 21);
        assert_eq!(clause_count_for_ratio(10, 4.2), 42);
        assert_eq!(clause_count_for_ratio(12, 4.2), 51);
        assert_eq!(clause_count_for_ratio(20, 4.2), 84);
    }
}
