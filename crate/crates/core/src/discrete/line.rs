//! Transport on the line with an interval admissibility structure.
//!
//! With sources and targets sorted, each source reaches a contiguous block
//! of targets whose endpoints are nondecreasing in the source position.
//! Filling every source from the leftmost target that still has demand is
//! then a maximum flow: the targets it consumes are the least useful ones
//! for every later source.

use crate::scalar::{pmin, Scalar};

pub(crate) struct LineFlow<C> {
    pub value: C,
    /// `(source position, target position, mass)` in sorted coordinates.
    pub flows: Vec<(usize, usize, C)>,
    pub reach_src: Vec<bool>,
}

/// `ranges[p] = [lo, hi)` block of target positions admissible for source
/// position `p`; both ends nondecreasing in `p`.
pub(crate) fn line_transport<C: Scalar>(supply: &[C], demand: &[C], ranges: &[(usize, usize)]) -> LineFlow<C> {
    let tol = C::feasibility_tol();
    let n = supply.len();
    let m = demand.len();
    let mut rem_s = supply.to_vec();
    let mut rem_d = demand.to_vec();
    let mut flows = Vec::new();
    let mut value = C::zero();
    let mut ptr = 0;
    for p in 0..n {
        let (lo, hi) = ranges[p];
        ptr = ptr.max(lo);
        while rem_s[p] > tol && ptr < hi {
            let f = pmin(rem_s[p], rem_d[ptr]);
            if f > tol {
                flows.push((p, ptr, f));
                value = value + f;
                rem_s[p] = rem_s[p] - f;
                rem_d[ptr] = rem_d[ptr] - f;
            }
            if rem_d[ptr] <= tol {
                rem_d[ptr] = C::zero();
                ptr += 1;
            }
        }
        if rem_s[p] <= tol {
            rem_s[p] = C::zero();
        }
    }

    // Residual reachability from the super-source. Targets are visited at
    // most once through a next-unvisited pointer forest.
    let mut inflow: Vec<Vec<usize>> = vec![Vec::new(); m];
    for &(p, q, _) in &flows {
        inflow[q].push(p);
    }
    let mut next: Vec<usize> = (0..=m).collect();
    let mut reach_src = vec![false; n];
    let mut stack: Vec<usize> = (0..n).filter(|&p| rem_s[p] > tol).collect();
    for &p in &stack {
        reach_src[p] = true;
    }
    while let Some(p) = stack.pop() {
        let (lo, hi) = ranges[p];
        let mut q = find(&mut next, lo);
        while q < hi {
            next[q] = q + 1;
            for &p2 in &inflow[q] {
                if !reach_src[p2] {
                    reach_src[p2] = true;
                    stack.push(p2);
                }
            }
            q = find(&mut next, q + 1);
        }
    }
    LineFlow { value, flows, reach_src }
}

fn find(next: &mut [usize], mut q: usize) -> usize {
    let mut root = q;
    while next[root] != root {
        root = next[root];
    }
    while next[q] != root {
        let up = next[q];
        next[q] = root;
        q = up;
    }
    root
}
