//! Brute-force assignment over all permutations.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub const ASSIGNMENT_CAP: usize = 8;

/// Minimum `Σ_i cost[i][perm[i]]` over all permutations, enumerated in
/// lexicographic order; the first minimizer wins ties.
pub fn exhaustive_min_assignment<T: Scalar>(cost: &[Vec<T>]) -> Result<(T, Vec<usize>)> {
    let n = cost.len();
    if n > ASSIGNMENT_CAP {
        return Err(Error::TooLarge { what: "assignment size", size: n, cap: ASSIGNMENT_CAP });
    }
    if cost.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidParameter("cost matrix must be square".into()));
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let value = |p: &[usize]| p.iter().enumerate().fold(T::zero(), |acc, (i, &j)| acc + cost[i][j]);
    let mut best = (value(&perm), perm.clone());
    while next_permutation(&mut perm) {
        let v = value(&perm);
        if v < best.0 {
            best = (v, perm.clone());
        }
    }
    Ok(best)
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("pivot has a successor");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
