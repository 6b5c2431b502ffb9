use alloc::vec::Vec;

use super::{SolveError, SolveResult};
use crate::qubo::{BitVector, LocalFields, QuboMatrix};

pub const DEFAULT_EXHAUSTIVE_CAP: usize = 24;

/// Walks all `2^k` states in Gray-code order, calling `visit(mask, energy)`
/// for each. Bit `i` of `mask` is `x_i`.
fn gray_walk(q: &QuboMatrix, mut visit: impl FnMut(u64, i64)) {
    let k = q.k();
    let lf: LocalFields = q.local_fields();
    let mut fields: Vec<i64> = (0..k).map(|i| lf.diag(i)).collect();
    let mut mask = 0u64;
    let mut energy = 0i64;
    visit(mask, energy);
    for step in 1..(1u64 << k) {
        let b = step.trailing_zeros() as usize;
        let on = mask >> b & 1 == 0;
        if on {
            energy += fields[b];
        } else {
            energy -= fields[b];
        }
        mask ^= 1 << b;
        for &(j, w) in lf.neighbors(b) {
            if on {
                fields[j] += w;
            } else {
                fields[j] -= w;
            }
        }
        visit(mask, energy);
    }
}

/// Sort key under which numeric order is lexicographic order of `x_0 x_1 ...`.
fn lex_key(mask: u64, k: usize) -> u64 {
    if k == 0 {
        0
    } else {
        mask.reverse_bits() >> (64 - k)
    }
}

fn check_cap(q: &QuboMatrix, cap: usize) -> Result<(), SolveError> {
    let k = q.k();
    if k > cap || k >= 63 {
        return Err(SolveError::OverCap { k, cap });
    }
    Ok(())
}

/// Global minimum by enumeration, capped at [`DEFAULT_EXHAUSTIVE_CAP`] qubits.
pub fn solve_exhaustive(q: &QuboMatrix) -> Result<SolveResult, SolveError> {
    solve_exhaustive_with_cap(q, DEFAULT_EXHAUSTIVE_CAP)
}

pub fn solve_exhaustive_with_cap(q: &QuboMatrix, cap: usize) -> Result<SolveResult, SolveError> {
    check_cap(q, cap)?;
    let k = q.k();
    let mut best = (i64::MAX, u64::MAX);
    gray_walk(q, |mask, energy| {
        let key = (energy, lex_key(mask, k));
        if key < best {
            best = key;
        }
    });
    let mask = lex_key(best.1, k);
    Ok(SolveResult {
        best: BitVector::from_mask(mask, k),
        best_energy: best.0,
        evaluations: 1u64 << k,
        restarts_used: 0,
    })
}

/// Minimum energy and every bit-vector attaining it, in lexicographic order.
///
/// Fails if more than `limit` states share the minimum.
pub fn ground_states(
    q: &QuboMatrix,
    cap: usize,
    limit: usize,
) -> Result<(i64, Vec<BitVector>), SolveError> {
    check_cap(q, cap)?;
    let k = q.k();
    let mut best = i64::MAX;
    let mut states: Vec<u64> = Vec::new();
    let mut overflow = false;
    gray_walk(q, |mask, energy| {
        if energy < best {
            best = energy;
            states.clear();
            overflow = false;
        }
        if energy == best {
            if states.len() < limit {
                states.push(lex_key(mask, k));
            } else {
                overflow = true;
            }
        }
    });
    if overflow {
        return Err(SolveError::TooManyGroundStates { limit });
    }
    states.sort_unstable();
    let states = states
        .into_iter()
        .map(|key| BitVector::from_mask(lex_key(key, k), k))
        .collect();
    Ok((best, states))
}
