//! Sparse upper-triangular QUBO matrices.
//!
//! Only cells with `i <= j` are stored and a cell whose accumulated weight
//! reaches zero is removed, so the number of stored off-diagonal cells is
//! exactly the number of couplings.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuboError {
    #[error("cell ({i}, {j}) lies in the lower triangle")]
    LowerTriangle { i: usize, j: usize },
    #[error("cell ({i}, {j}) is outside a {k}x{k} matrix")]
    OutOfRange { i: usize, j: usize, k: usize },
    #[error("bit-vector has length {got}, matrix has {expected} variables")]
    LengthMismatch { expected: usize, got: usize },
    #[error("invalid bit character {0:?}")]
    InvalidBit(char),
}

/// A binary vector `x ∈ {0,1}^k`.
///
/// Ordering is lexicographic with index 0 most significant.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector(Vec<bool>);

impl BitVector {
    pub fn new(bits: Vec<bool>) -> Self {
        Self(bits)
    }

    pub fn zeros(k: usize) -> Self {
        Self(alloc::vec![false; k])
    }

    pub fn ones(k: usize) -> Self {
        Self(alloc::vec![true; k])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> bool {
        self.0[i]
    }

    pub fn set(&mut self, i: usize, bit: bool) {
        self.0[i] = bit;
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    /// Bit `i` taken from bit `i` of `mask`.
    pub fn from_mask(mask: u64, k: usize) -> Self {
        Self((0..k).map(|i| (mask >> i) & 1 == 1).collect())
    }
}

impl From<Vec<bool>> for BitVector {
    fn from(bits: Vec<bool>) -> Self {
        Self(bits)
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitVector {
    type Err = QuboError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(QuboError::InvalidBit(other)),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Self)
    }
}

/// Sparse upper-triangular `k × k` matrix with integer weights.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QuboMatrix {
    k: usize,
    entries: BTreeMap<(usize, usize), i64>,
}

impl QuboMatrix {
    pub fn new(k: usize) -> Self {
        Self {
            k,
            entries: BTreeMap::new(),
        }
    }

    /// Builds a matrix by accumulating `(i, j, w)` triples.
    pub fn from_entries<I>(k: usize, entries: I) -> Result<Self, QuboError>
    where
        I: IntoIterator<Item = (usize, usize, i64)>,
    {
        let mut q = Self::new(k);
        for (i, j, w) in entries {
            q.add(i, j, w)?;
        }
        Ok(q)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Adds `w` to cell `(i, j)`; the cell disappears when it sums to zero.
    pub fn add(&mut self, i: usize, j: usize, w: i64) -> Result<(), QuboError> {
        if i > j {
            return Err(QuboError::LowerTriangle { i, j });
        }
        if j >= self.k {
            return Err(QuboError::OutOfRange { i, j, k: self.k });
        }
        if w == 0 {
            return Ok(());
        }
        let cell = self.entries.entry((i, j)).or_insert(0);
        *cell += w;
        if *cell == 0 {
            self.entries.remove(&(i, j));
        }
        Ok(())
    }

    /// Like [`QuboMatrix::add`] but accepts the pair in either order.
    pub(crate) fn add_sym(&mut self, a: usize, b: usize, w: i64) -> Result<(), QuboError> {
        self.add(a.min(b), a.max(b), w)
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Stored cells in `(i, j)` order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.entries.iter().map(|(&(i, j), &w)| (i, j, w))
    }

    /// Cellwise sum; both matrices must have the same size.
    pub fn add_matrix(&mut self, other: &QuboMatrix) -> Result<(), QuboError> {
        for (i, j, w) in other.entries() {
            self.add(i, j, w)?;
        }
        Ok(())
    }

    /// `H(x) = Σ_i Q_ii x_i + Σ_{i<j} Q_ij x_i x_j`.
    pub fn energy(&self, x: &BitVector) -> Result<i64, QuboError> {
        if x.len() != self.k {
            return Err(QuboError::LengthMismatch {
                expected: self.k,
                got: x.len(),
            });
        }
        Ok(self
            .entries
            .iter()
            .filter(|(&(i, j), _)| x.get(i) && x.get(j))
            .map(|(_, &w)| w)
            .sum())
    }

    /// Non-zero strictly off-diagonal cells.
    pub fn coupling_count(&self) -> usize {
        self.entries.keys().filter(|(i, j)| i < j).count()
    }

    /// All non-zero cells, diagonal included.
    pub fn nonzero_count(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Dense rendering, mostly for diagnostics and documentation.
    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut dense = alloc::vec![alloc::vec![0; self.k]; self.k];
        for (i, j, w) in self.entries() {
            dense[i][j] = w;
        }
        dense
    }

    /// Plain-text table with one row per line, lower triangle left blank.
    pub fn render(&self) -> String {
        use core::fmt::Write;
        let mut out = String::new();
        for i in 0..self.k {
            for j in 0..self.k {
                if j < i {
                    let _ = write!(out, "{:>6}", "");
                } else {
                    let _ = write!(out, "{:>6}", self.get(i, j));
                }
            }
            out.push('\n');
        }
        out
    }

    /// Adjacency form used by the solvers.
    pub fn local_fields(&self) -> LocalFields {
        LocalFields::new(self)
    }
}

/// Compressed neighbour lists of a [`QuboMatrix`].
///
/// Flipping bit `i` changes the energy by `(1 - 2 x_i) · field_i` where
/// `field_i = Q_ii + Σ_j Q_ij x_j` over the neighbours `j` of `i`.
#[derive(Clone, Debug)]
pub struct LocalFields {
    diag: Vec<i64>,
    offsets: Vec<usize>,
    neighbors: Vec<(usize, i64)>,
}

impl LocalFields {
    fn new(q: &QuboMatrix) -> Self {
        let k = q.k;
        let mut degree = alloc::vec![0usize; k];
        let mut diag = alloc::vec![0i64; k];
        for (i, j, w) in q.entries() {
            if i == j {
                diag[i] = w;
            } else {
                degree[i] += 1;
                degree[j] += 1;
            }
        }
        let mut offsets = Vec::with_capacity(k + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut cursor = offsets[..k].to_vec();
        let mut neighbors = alloc::vec![(0usize, 0i64); offsets[k]];
        for (i, j, w) in q.entries().filter(|(i, j, _)| i != j) {
            neighbors[cursor[i]] = (j, w);
            cursor[i] += 1;
            neighbors[cursor[j]] = (i, w);
            cursor[j] += 1;
        }
        Self {
            diag,
            offsets,
            neighbors,
        }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    pub fn diag(&self, i: usize) -> i64 {
        self.diag[i]
    }

    pub fn neighbors(&self, i: usize) -> &[(usize, i64)] {
        &self.neighbors[self.offsets[i]..self.offsets[i + 1]]
    }

    /// Field vector for the state `x`.
    pub fn fields_for(&self, x: &[bool]) -> Vec<i64> {
        (0..self.len())
            .map(|i| {
                self.diag[i]
                    + self
                        .neighbors(i)
                        .iter()
                        .filter(|(j, _)| x[*j])
                        .map(|(_, w)| w)
                        .sum::<i64>()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(s: &str) -> BitVector {
        s.parse().unwrap()
    }

    #[test]
    fn add_and_cancel() {
        let mut q = QuboMatrix::new(3);
        q.add(0, 1, 2).unwrap();
        assert_eq!(q.entries().collect::<Vec<_>>(), [(0, 1, 2)]);
        q.add(0, 1, -2).unwrap();
        assert!(q.is_empty());
        q.add(2, 2, 0).unwrap();
        assert!(q.is_empty());
    }

    #[test]
    fn stacking_on_shared_cell() {
        let mut q = QuboMatrix::new(4);
        q.add(3, 3, 1).unwrap();
        q.add(3, 3, 2).unwrap();
        assert_eq!(q.get(3, 3), 3);
    }

    #[test]
    fn triangle_discipline() {
        let mut q = QuboMatrix::new(3);
        assert_eq!(q.add(2, 1, 1), Err(QuboError::LowerTriangle { i: 2, j: 1 }));
        assert_eq!(q.add(1, 3, 1), Err(QuboError::OutOfRange { i: 1, j: 3, k: 3 }));
    }

    #[test]
    fn energy_examples() {
        let q = QuboMatrix::from_entries(1, [(0, 0, -3)]).unwrap();
        assert_eq!(q.energy(&bits("1")), Ok(-3));
        assert_eq!(q.energy(&bits("0")), Ok(0));
        assert!(q.energy(&bits("01")).is_err());

        // two-clause n+m worked example; optimum ⟨1,0,0,1,1⟩
        let q = QuboMatrix::from_entries(
            5,
            [
                (0, 0, 2),
                (0, 3, -2),
                (0, 4, -2),
                (1, 3, -2),
                (1, 4, 2),
                (2, 3, 1),
                (2, 4, -1),
                (3, 3, 1),
            ],
        )
        .unwrap();
        assert_eq!(q.energy(&bits("10011")), Ok(-1));
        assert_eq!(q.energy(&BitVector::zeros(5)), Ok(0));
        assert_eq!(q.coupling_count(), 6);
        assert_eq!(q.nonzero_count(), 8);
    }

    #[test]
    fn bitvector_text() {
        let b = bits("0110");
        assert_eq!(alloc::format!("{b}"), "0110");
        assert!("01x".parse::<BitVector>().is_err());
        assert_eq!(BitVector::from_mask(0b0110, 4), b);
        assert!(bits("0011") < bits("0100"));
    }

    #[test]
    fn local_fields_match_energy_delta() {
        let q = QuboMatrix::from_entries(4, [(0, 0, -1), (0, 1, 3), (1, 3, -2), (2, 2, 5), (0, 3, 1)])
            .unwrap();
        let lf = q.local_fields();
        let x = bits("1101");
        let fields = lf.fields_for(x.bits());
        for (i, &field) in fields.iter().enumerate() {
            let mut y = x.clone();
            y.set(i, !x.get(i));
            let delta = q.energy(&y).unwrap() - q.energy(&x).unwrap();
            let sign = if x.get(i) { -1 } else { 1 };
            assert_eq!(delta, sign * field);
        }
    }

    #[test]
    fn render_blanks_lower_triangle() {
        let q = QuboMatrix::from_entries(2, [(0, 0, -2), (0, 1, 3)]).unwrap();
        assert_eq!(q.render(), "    -2     3\n           0\n");
    }
}
