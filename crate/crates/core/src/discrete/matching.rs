//! Hopcroft–Karp maximum-cardinality bipartite matching and the König
//! alternating-reachability sets that certify its optimality.

use std::collections::VecDeque;

const INF: usize = usize::MAX;

pub(crate) struct Matching {
    pub match_left: Vec<Option<usize>>,
    pub match_right: Vec<Option<usize>>,
    pub size: usize,
}

/// `adj[u]` lists the right vertices adjacent to left vertex `u`; their order
/// fixes which maximum matching is returned.
pub(crate) fn hopcroft_karp(n_right: usize, adj: &[Vec<usize>]) -> Matching {
    let n_left = adj.len();
    let mut ml: Vec<Option<usize>> = vec![None; n_left];
    let mut mr: Vec<Option<usize>> = vec![None; n_right];
    let mut dist = vec![INF; n_left];
    let mut size = 0;
    loop {
        // Layer the graph from all free left vertices.
        let mut queue = VecDeque::new();
        for u in 0..n_left {
            if ml[u].is_none() {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = INF;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                match mr[v] {
                    None => found = true,
                    Some(w) if dist[w] == INF => {
                        dist[w] = dist[u] + 1;
                        queue.push_back(w);
                    }
                    _ => {}
                }
            }
        }
        if !found {
            break;
        }
        let mut it = vec![0usize; n_left];
        for root in 0..n_left {
            if ml[root].is_none() && augment(root, adj, &mut ml, &mut mr, &mut dist, &mut it) {
                size += 1;
            }
        }
    }
    Matching { match_left: ml, match_right: mr, size }
}

/// Iterative layered DFS from `root`; flips the path when a free right
/// vertex is reached.
fn augment(
    root: usize,
    adj: &[Vec<usize>],
    ml: &mut [Option<usize>],
    mr: &mut [Option<usize>],
    dist: &mut [usize],
    it: &mut [usize],
) -> bool {
    let mut stack = vec![root];
    while let Some(&u) = stack.last() {
        if it[u] < adj[u].len() {
            let v = adj[u][it[u]];
            match mr[v] {
                None => {
                    for &x in &stack {
                        let vx = adj[x][it[x]];
                        ml[x] = Some(vx);
                        mr[vx] = Some(x);
                    }
                    return true;
                }
                Some(w) if dist[w] != INF && dist[w] == dist[u] + 1 => stack.push(w),
                _ => it[u] += 1,
            }
        } else {
            dist[u] = INF;
            stack.pop();
            if let Some(&p) = stack.last() {
                it[p] += 1;
            }
        }
    }
    false
}

/// Vertices reachable from free left vertices along alternating paths.
/// The left set `S` satisfies `|S| - |N(S)| = n_left - size`.
pub(crate) fn konig_reachable(n_right: usize, adj: &[Vec<usize>], m: &Matching) -> (Vec<bool>, Vec<bool>) {
    let mut left = vec![false; adj.len()];
    let mut right = vec![false; n_right];
    let mut queue: VecDeque<usize> = (0..adj.len()).filter(|&u| m.match_left[u].is_none()).collect();
    for &u in &queue {
        left[u] = true;
    }
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if !right[v] {
                right[v] = true;
                if let Some(w) = m.match_right[v] {
                    if !left[w] {
                        left[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
    }
    (left, right)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_matching_on_a_path() {
        let adj = vec![vec![0, 1], vec![1, 2], vec![2]];
        let m = hopcroft_karp(3, &adj);
        assert_eq!(m.size, 3);
        assert_eq!(m.match_left, vec![Some(0), Some(1), Some(2)]);
    }

    #[test]
    fn hall_violator_is_found() {
        // Left 0 and 1 both only see right 0.
        let adj = vec![vec![0], vec![0], vec![1, 2]];
        let m = hopcroft_karp(3, &adj);
        assert_eq!(m.size, 2);
        let (left, right) = konig_reachable(3, &adj, &m);
        let s = left.iter().filter(|&&b| b).count();
        let ns = right.iter().filter(|&&b| b).count();
        assert_eq!(s - ns, 1);
        assert!(left[0] && left[1] && !left[2]);
    }

    #[test]
    fn empty_adjacency() {
        let adj = vec![vec![], vec![]];
        let m = hopcroft_karp(2, &adj);
        assert_eq!(m.size, 0);
    }
}
