//! Minimum-cost perfect assignment by successive shortest augmenting paths
//! with vertex potentials, O(n^3).

use crate::scalar::Real;

/// Returns `(total cost, assignment)` with `assignment[row] = column`.
/// Columns are scanned in index order, so ties resolve deterministically.
pub fn min_cost_assignment<T: Real>(cost: &[Vec<T>]) -> (T, Vec<usize>) {
    let n = cost.len();
    if n == 0 {
        return (T::zero(), Vec::new());
    }
    debug_assert!(cost.iter().all(|row| row.len() == n));
    let inf = T::infinity();
    // 1-based arrays with a virtual column 0.
    let mut u = vec![T::zero(); n + 1];
    let mut v = vec![T::zero(); n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        let mut minv = vec![inf; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = inf;
            let mut j1 = 0;
            for j in 1..=n {
                if !used[j] {
                    let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] = u[p[j]] + delta;
                    v[j] = v[j] - delta;
                } else {
                    minv[j] = minv[j] - delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut assignment = vec![0usize; n];
    for j in 1..=n {
        assignment[p[j] - 1] = j - 1;
    }
    let total = assignment.iter().enumerate().fold(T::zero(), |acc, (i, &j)| acc + cost[i][j]);
    (total, assignment)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classic_instance() {
        let c = vec![vec![4.0, 1.0, 3.0], vec![2.0, 0.0, 5.0], vec![3.0, 2.0, 2.0]];
        let (total, a) = min_cost_assignment(&c);
        assert_eq!(total, 5.0);
        assert_eq!(a, vec![1, 0, 2]);
    }

    #[test]
    fn crossed_two_by_two() {
        let c = vec![vec![5.0f64, 1.0], vec![1.0, 5.0]];
        assert_eq!(min_cost_assignment(&c), (2.0, vec![1, 0]));
    }
}
